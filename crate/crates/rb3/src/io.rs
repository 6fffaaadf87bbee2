//! File formats: JSON schemas for algebras, operators, representations,
//! cochains, matched pairs, Manin triples, Nijenhuis and O-operator data,
//! extensions, and deformations.
//!
//! All indices in files are 1-based (matching the usual subscript
//! conventions); the in-memory types are 0-based. Rationals travel as
//! canonical strings `"p"` or `"p/q"`, so emitted files re-parse to equal
//! objects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{RotaBaxterOperator, SkewTrilinear, ThreeLieAlgebra};
use crate::linalg::{Matrix, Rational};
use crate::rep::{RBRepresentation, Representation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("indices must be strictly increasing and 1-based, got ({0},{1},{2})")]
    UnorderedTriple(usize, usize, usize),
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("malformed file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    s.parse().map_err(|_| IoError::BadRational(s.to_string()))
}

fn parse_index(i: usize, max: usize) -> Result<usize, IoError> {
    if i == 0 || i > max {
        return Err(IoError::IndexOutOfRange(i, max));
    }
    Ok(i - 1)
}

pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<String>]) -> Result<Matrix, IoError> {
    let parsed: Result<Vec<Vec<Rational>>, IoError> = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect())
        .collect();
    Matrix::from_rows(parsed?).map_err(|_| IoError::RaggedMatrix)
}

fn vector_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn strings_to_vector(v: &[String]) -> Result<Vec<Rational>, IoError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

/// `{"dim": n, "brackets": [{"i":1,"j":2,"k":3,"value":{"1":"1"}}]}`:
/// structure constants on strictly increasing 1-based triples, each value
/// a sparse map from 1-based output component to rational.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: BTreeMap<String, String>,
}

pub fn algebra_to_file(alg: &ThreeLieAlgebra) -> AlgebraFile {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = alg.bracket_basis(i, j, k);
                let mut value = BTreeMap::new();
                for (comp, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        value.insert((comp + 1).to_string(), x.to_string());
                    }
                }
                if !value.is_empty() {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value,
                    });
                }
            }
        }
    }
    AlgebraFile { dim: n, brackets }
}

pub fn algebra_from_file(f: &AlgebraFile) -> Result<ThreeLieAlgebra, IoError> {
    let n = f.dim;
    let mut entries = Vec::new();
    for e in &f.brackets {
        if !(e.i < e.j && e.j < e.k) {
            return Err(IoError::UnorderedTriple(e.i, e.j, e.k));
        }
        let (i, j, k) = (
            parse_index(e.i, n)?,
            parse_index(e.j, n)?,
            parse_index(e.k, n)?,
        );
        let mut v = vec![Rational::zero(); n];
        for (comp, val) in &e.value {
            let c: usize = comp
                .parse()
                .map_err(|_| IoError::Malformed(format!("bad component index {comp:?}")))?;
            v[parse_index(c, n)?] = parse_rational(val)?;
        }
        entries.push(((i, j, k), v));
    }
    let table = SkewTrilinear::new(n, n, entries)
        .map_err(|e| IoError::Malformed(e.to_string()))?;
    Ok(ThreeLieAlgebra::from_bracket(table))
}

/// `{"weight": "-1", "matrix": [["1","0"],["0","1"]]}`: row-major, the
/// j-th column is the image of the j-th basis vector.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OperatorFile {
    pub weight: String,
    pub matrix: Vec<Vec<String>>,
}

pub fn operator_to_file(r: &RotaBaxterOperator) -> OperatorFile {
    OperatorFile {
        weight: r.weight.to_string(),
        matrix: matrix_to_rows(&r.matrix),
    }
}

pub fn operator_from_file(f: &OperatorFile) -> Result<RotaBaxterOperator, IoError> {
    Ok(RotaBaxterOperator::new(
        parse_rational(&f.weight)?,
        rows_to_matrix(&f.matrix)?,
    ))
}

/// `{"vdim": m, "rho": [{"i":1,"j":2,"matrix":[[...]]}], "RV": [[...]]}`:
/// action matrices on strictly increasing 1-based basis pairs of the
/// ambient algebra (omitted pairs act as zero), plus the module operator.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepresentationFile {
    pub vdim: usize,
    pub rho: Vec<RhoEntry>,
    #[serde(rename = "RV")]
    pub rv: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RhoEntry {
    pub i: usize,
    pub j: usize,
    pub matrix: Vec<Vec<String>>,
}

pub fn rho_entries(rep: &Representation) -> Vec<RhoEntry> {
    let n = rep.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = rep.rho_basis(i, j);
            if !m.is_zero() {
                out.push(RhoEntry {
                    i: i + 1,
                    j: j + 1,
                    matrix: matrix_to_rows(&m),
                });
            }
        }
    }
    out
}

pub fn representation_to_file(rbrep: &RBRepresentation) -> RepresentationFile {
    RepresentationFile {
        vdim: rbrep.rep.vdim(),
        rho: rho_entries(&rbrep.rep),
        rv: matrix_to_rows(&rbrep.rv),
    }
}

pub fn action_from_entries(
    ambient: ThreeLieAlgebra,
    vdim: usize,
    entries: &[RhoEntry],
) -> Result<Representation, IoError> {
    let n = ambient.dim();
    let mut table: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
    for e in entries {
        if e.i >= e.j {
            return Err(IoError::Malformed(format!(
                "rho pair ({},{}) must be strictly increasing",
                e.i, e.j
            )));
        }
        let (i, j) = (parse_index(e.i, n)?, parse_index(e.j, n)?);
        let m = rows_to_matrix(&e.matrix)?;
        if m.rows() != vdim || m.cols() != vdim {
            return Err(IoError::ShapeMismatch(format!(
                "rho({},{}) must be {vdim}x{vdim}",
                e.i, e.j
            )));
        }
        table.insert((i, j), m);
    }
    Ok(Representation::from_fn(ambient, vdim, |i, j| {
        table
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(vdim, vdim))
    }))
}

pub fn representation_from_file(
    ambient: ThreeLieAlgebra,
    weight: Rational,
    f: &RepresentationFile,
) -> Result<RBRepresentation, IoError> {
    let rep = action_from_entries(ambient, f.vdim, &f.rho)?;
    let rv = rows_to_matrix(&f.rv)?;
    RBRepresentation::new(rep, rv, weight).map_err(|e| IoError::ShapeMismatch(e.to_string()))
}

/// A trilinear entry with an explicit value vector, used for extension
/// 2-cochains and deformation bracket terms:
/// `{"i":1,"j":2,"k":3,"value":["1","0","0"]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TrilinearEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Vec<String>,
}

pub fn skew_to_entries(t: &SkewTrilinear) -> Vec<TrilinearEntry> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = t.eval_basis(i, j, k);
                if !v.iter().all(|x| x.is_zero()) {
                    out.push(TrilinearEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value: vector_to_strings(&v),
                    });
                }
            }
        }
    }
    out
}

pub fn skew_from_entries(
    n: usize,
    m: usize,
    entries: &[TrilinearEntry],
) -> Result<SkewTrilinear, IoError> {
    let mut parsed = Vec::new();
    for e in entries {
        if !(e.i < e.j && e.j < e.k) {
            return Err(IoError::UnorderedTriple(e.i, e.j, e.k));
        }
        let v = strings_to_vector(&e.value)?;
        if v.len() != m {
            return Err(IoError::ShapeMismatch(format!(
                "value at ({},{},{}) must have {m} components",
                e.i, e.j, e.k
            )));
        }
        parsed.push((
            (
                parse_index(e.i, n)?,
                parse_index(e.j, n)?,
                parse_index(e.k, n)?,
            ),
            v,
        ));
    }
    SkewTrilinear::new(n, m, parsed).map_err(|e| IoError::Malformed(e.to_string()))
}

/// `{"degree": p, "entries": [{"pairs": [[1,2]], "arg": 3, "value": [...]}]}`:
/// a cochain given on basis tuples (p−1 strictly increasing pairs, one
/// argument index); omitted tuples are zero.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CochainFile {
    pub degree: usize,
    pub entries: Vec<CochainEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CochainEntry {
    pub pairs: Vec<Vec<usize>>,
    pub arg: usize,
    pub value: Vec<String>,
}

pub fn cochain_coords_from_entries(
    n: usize,
    m: usize,
    p: usize,
    entries: &[CochainEntry],
) -> Result<Vec<Rational>, IoError> {
    use crate::cohomology::{cochain_space_dim, pair_index, tuple_encode};
    let mut coords = vec![Rational::zero(); cochain_space_dim(n, m, p)];
    for e in entries {
        if e.pairs.len() != p - 1 {
            return Err(IoError::ShapeMismatch(format!(
                "degree {p} entries need {} pairs, got {}",
                p - 1,
                e.pairs.len()
            )));
        }
        let mut qs = Vec::with_capacity(p - 1);
        for pr in &e.pairs {
            let [i, j] = pr.as_slice() else {
                return Err(IoError::Malformed("each pair must have two indices".into()));
            };
            if i >= j {
                return Err(IoError::Malformed(format!(
                    "pair ({i},{j}) must be strictly increasing"
                )));
            }
            qs.push(pair_index(n, parse_index(*i, n)?, parse_index(*j, n)?));
        }
        let k = parse_index(e.arg, n)?;
        let v = strings_to_vector(&e.value)?;
        if v.len() != m {
            return Err(IoError::ShapeMismatch(format!(
                "cochain values must have {m} components"
            )));
        }
        let base = tuple_encode(n, &qs, k) * m;
        for (off, x) in v.into_iter().enumerate() {
            coords[base + off] = x;
        }
    }
    Ok(coords)
}

pub fn cochain_entries_from_coords(
    n: usize,
    m: usize,
    p: usize,
    coords: &[Rational],
) -> Vec<CochainEntry> {
    use crate::cohomology::{pair_list, tuple_count, tuple_decode};
    let pairs = pair_list(n);
    let mut out = Vec::new();
    for t in 0..tuple_count(n, p) {
        let v = &coords[t * m..(t + 1) * m];
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let (qs, k) = tuple_decode(n, p, t);
        out.push(CochainEntry {
            pairs: qs
                .iter()
                .map(|&q| vec![pairs[q].0 + 1, pairs[q].1 + 1])
                .collect(),
            arg: k + 1,
            value: vector_to_strings(v),
        });
    }
    out
}

/// A degree-p element of the combined Rota-Baxter complex: a plain
/// degree-p cochain and a descendent degree-(p−1) cochain (empty for
/// p = 1, where the combined space is just the plain one).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RBCochainFile {
    pub degree: usize,
    #[serde(default)]
    pub plain: Vec<CochainEntry>,
    #[serde(default)]
    pub descendent: Vec<CochainEntry>,
}

/// Coordinates of an [`RBCochainFile`] in the combined degree-p space:
/// the plain block followed by the descendent block.
pub fn rb_cochain_coords(n: usize, m: usize, f: &RBCochainFile) -> Result<Vec<Rational>, IoError> {
    let p = f.degree;
    if p == 0 {
        return Err(IoError::Malformed("degree must be at least 1".into()));
    }
    let mut coords = cochain_coords_from_entries(n, m, p, &f.plain)?;
    if p == 1 {
        if !f.descendent.is_empty() {
            return Err(IoError::ShapeMismatch(
                "degree-1 elements have no descendent block".into(),
            ));
        }
    } else {
        coords.extend(cochain_coords_from_entries(n, m, p - 1, &f.descendent)?);
    }
    Ok(coords)
}

/// A matched-pair file: both constituents with their operators and the
/// two actions (pairs of A on B, pairs of B on A).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatchedPairFile {
    pub a: AlgebraFile,
    pub ra: OperatorFile,
    pub b: AlgebraFile,
    pub rb: OperatorFile,
    pub a_on_b: Vec<RhoEntry>,
    pub b_on_a: Vec<RhoEntry>,
}

/// A Manin-triple file: the ambient pair, the split point (dimension of
/// the first summand) and the Gram matrix of the form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ManinFile {
    pub algebra: AlgebraFile,
    pub rb: OperatorFile,
    pub split: usize,
    pub form: Vec<Vec<String>>,
}

/// A Nijenhuis candidate: the pair plus the candidate matrix.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NijenhuisFile {
    pub algebra: AlgebraFile,
    pub rb: OperatorFile,
    pub n: Vec<Vec<String>>,
}

/// An O-operator candidate: the pair, the coefficient representation and
/// the candidate matrix K (columns indexed by V, rows by A).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OOperatorFile {
    pub algebra: AlgebraFile,
    pub rb: OperatorFile,
    pub rep: RepresentationFile,
    pub k: Vec<Vec<String>>,
}

/// Extension data: the module operator, the trilinear twist ψ and the
/// operator twist χ (rows indexed by V, columns by A). Zero ψ and χ give
/// the direct-sum extension.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExtensionFile {
    #[serde(rename = "RV")]
    pub rv: Vec<Vec<String>>,
    #[serde(default)]
    pub psi: Vec<TrilinearEntry>,
    #[serde(default)]
    pub chi: Vec<Vec<String>>,
}

/// `{"order": N, "pis": [...], "rs": [...]}`: per-order bracket terms
/// (trilinear entries) and operator terms (matrices).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DeformationFile {
    pub order: usize,
    pub pis: Vec<Vec<TrilinearEntry>>,
    pub rs: Vec<Vec<Vec<String>>>,
}

pub fn deformation_to_file(d: &crate::deform::FormalDeformation) -> DeformationFile {
    DeformationFile {
        order: d.order(),
        pis: d.pis.iter().map(skew_to_entries).collect(),
        rs: d.rs.iter().map(matrix_to_rows).collect(),
    }
}

pub fn deformation_from_file(
    algebra: ThreeLieAlgebra,
    operator: RotaBaxterOperator,
    f: &DeformationFile,
) -> Result<crate::deform::FormalDeformation, IoError> {
    if f.pis.len() != f.order || f.rs.len() != f.order {
        return Err(IoError::ShapeMismatch(
            "pis and rs must each have one block per order".into(),
        ));
    }
    let n = algebra.dim();
    let pis: Result<Vec<SkewTrilinear>, IoError> = f
        .pis
        .iter()
        .map(|entries| skew_from_entries(n, n, entries))
        .collect();
    let rs: Result<Vec<Matrix>, IoError> = f.rs.iter().map(|rows| rows_to_matrix(rows)).collect();
    crate::deform::FormalDeformation::new(algebra, operator, pis?, rs?)
        .map_err(|e| IoError::ShapeMismatch(e.to_string()))
}

/// Canonical JSON emission: pretty-printed with a trailing newline.
/// Key order is fixed by the struct definitions and sorted maps, so
/// emission is deterministic and round-trips to an equal object.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a3, b4, rbm1, rbm2};
    use crate::cohomology::cochain_space_dim;
    use crate::rep::adjoint_rep;
    use proptest::prelude::*;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    #[test]
    fn algebra_round_trip() {
        for alg in [a3(), b4(), ThreeLieAlgebra::abelian(2)] {
            let f = algebra_to_file(&alg);
            let json = to_canonical_json(&f);
            let parsed: AlgebraFile = serde_json::from_str(&json).unwrap();
            assert_eq!(parsed, f);
            assert_eq!(algebra_from_file(&parsed).unwrap(), alg);
        }
    }

    #[test]
    fn operator_round_trip_keeps_weight_and_fractions() {
        let r = RotaBaxterOperator::new(
            Rational::new(-2, 3),
            Matrix::diagonal(&[Rational::new(1, 2), q(0), q(5)]),
        );
        let f = operator_to_file(&r);
        assert_eq!(f.weight, "-2/3");
        let back = operator_from_file(&f).unwrap();
        assert_eq!(back.weight, r.weight);
        assert_eq!(back.matrix, r.matrix);
    }

    #[test]
    fn representation_round_trip() {
        let r = rbm1(q(1), q(2), q(3), q(4));
        let ad = adjoint_rep(&a3(), &r);
        let f = representation_to_file(&ad);
        let back = representation_from_file(a3(), r.weight.clone(), &f).unwrap();
        assert_eq!(back.rep, ad.rep);
        assert_eq!(back.rv, ad.rv);
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(
            parse_rational("1/0"),
            Err(IoError::BadRational(_))
        ));
        let f = OperatorFile {
            weight: "1/0".into(),
            matrix: vec![vec!["1".into()]],
        };
        assert!(operator_from_file(&f).is_err());
    }

    #[test]
    fn cochain_entries_round_trip() {
        let (n, m, p) = (3usize, 2usize, 2usize);
        let dim = cochain_space_dim(n, m, p);
        let coords: Vec<Rational> = (0..dim).map(|i| q((i as i64 % 7) - 3)).collect();
        let entries = cochain_entries_from_coords(n, m, p, &coords);
        let back = cochain_coords_from_entries(n, m, p, &entries).unwrap();
        assert_eq!(back, coords);
    }

    #[test]
    fn unordered_indices_are_rejected() {
        let f = AlgebraFile {
            dim: 3,
            brackets: vec![BracketEntry {
                i: 2,
                j: 1,
                k: 3,
                value: BTreeMap::new(),
            }],
        };
        assert!(matches!(
            algebra_from_file(&f),
            Err(IoError::UnorderedTriple(2, 1, 3))
        ));
    }

    #[test]
    fn deformation_round_trip() {
        let alg = a3();
        let r = rbm2(q(1), q(0), q(2), q(0));
        let d = crate::deform::FormalDeformation::new(
            alg.clone(),
            r.clone(),
            vec![alg.bracket_table().scale(&q(2))],
            vec![Matrix::identity(3)],
        )
        .unwrap();
        let f = deformation_to_file(&d);
        let back = deformation_from_file(alg, r, &f).unwrap();
        assert_eq!(back.pis, d.pis);
        assert_eq!(back.rs, d.rs);
    }

    proptest! {
        #[test]
        fn matrix_rows_round_trip(rows in proptest::collection::vec(
            proptest::collection::vec(-20i64..20, 3), 3)
        ) {
            let m = Matrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| Rational::new(x, 7)).collect())
                    .collect(),
            )
            .unwrap();
            let f = matrix_to_rows(&m);
            prop_assert_eq!(rows_to_matrix(&f).unwrap(), m);
        }
    }
}
