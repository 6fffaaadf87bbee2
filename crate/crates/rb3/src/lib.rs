//! Exact-arithmetic computer algebra for Rota-Baxter 3-Lie algebras of
//! arbitrary weight: validation of the defining identities, descendent
//! algebras, representation constructions, the cochain complexes and their
//! coboundary operators, matched pairs and Manin triples, Nijenhuis and
//! O-operators, formal deformations, abelian extensions, and brute-force
//! search over structure-constant families.
//!
//! All arithmetic is over the rationals with arbitrary precision, so every
//! reported identity check is exact.

pub mod algebra;
pub mod cohomology;
pub mod deform;
pub mod io;
pub mod linalg;
pub mod rep;
pub mod search;
pub mod structures;

pub use algebra::Report;
