//! Formal one-parameter deformations of Rota-Baxter 3-Lie algebras:
//! order-by-order validation of the deformation equations, the cocycle
//! criterion for infinitesimals, and trivial-deformation checks.

use thiserror::Error;

use crate::algebra::{RotaBaxterOperator, SkewTrilinear, ThreeLieAlgebra};
use crate::cohomology::{cochain_space_dim, coboundary_rb_matrix, pair_index, tuple_encode};
use crate::linalg::{basis_vector, vec_add, vec_is_zero, Matrix, Rational};
use crate::rep::adjoint_rep;

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("deformation must be given to order at least 1")]
    EmptyOrder,
}

/// Which of the two per-order deformation equations failed: the
/// deformation of the fundamental identity of the bracket family, or the
/// deformation of the Rota-Baxter identity of the operator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeformationEquation {
    Bracket,
    Operator,
}

impl std::fmt::Display for DeformationEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeformationEquation::Bracket => write!(f, "bracket equation"),
            DeformationEquation::Operator => write!(f, "operator equation"),
        }
    }
}

/// A formal deformation truncated at a finite order: the base pair plus
/// coefficient data π_1..π_N (totally skew trilinear maps) and R_1..R_N
/// (matrices) of the formal series π_t = Σ tⁱ π_i, R_t = Σ tⁱ R_i, with
/// π_0 the base bracket and R_0 the base operator.
#[derive(Debug, Clone)]
pub struct FormalDeformation {
    pub algebra: ThreeLieAlgebra,
    pub operator: RotaBaxterOperator,
    /// Higher bracket terms π_1..π_order.
    pub pis: Vec<SkewTrilinear>,
    /// Higher operator terms R_1..R_order.
    pub rs: Vec<Matrix>,
}

impl FormalDeformation {
    pub fn new(
        algebra: ThreeLieAlgebra,
        operator: RotaBaxterOperator,
        pis: Vec<SkewTrilinear>,
        rs: Vec<Matrix>,
    ) -> Result<Self, DeformError> {
        let n = algebra.dim();
        if operator.dim() != n {
            return Err(DeformError::DimensionMismatch(
                "operator size must match the algebra".into(),
            ));
        }
        if pis.len() != rs.len() {
            return Err(DeformError::DimensionMismatch(
                "bracket and operator term lists must have equal length".into(),
            ));
        }
        if pis.is_empty() {
            return Err(DeformError::EmptyOrder);
        }
        for pi in &pis {
            if pi.dim() != n || pi.vdim() != n {
                return Err(DeformError::DimensionMismatch(
                    "each bracket term must be a trilinear map on the algebra".into(),
                ));
            }
        }
        for r in &rs {
            if r.rows() != n || r.cols() != n {
                return Err(DeformError::DimensionMismatch(
                    "each operator term must be square of the algebra dimension".into(),
                ));
            }
        }
        Ok(FormalDeformation {
            algebra,
            operator,
            pis,
            rs,
        })
    }

    pub fn order(&self) -> usize {
        self.pis.len()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// π_i as a map, with π_0 the base bracket and indices beyond the
    /// truncation treated as zero.
    fn pi_eval(&self, i: usize, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        if i == 0 {
            self.algebra.bracket(x, y, z)
        } else if i <= self.order() {
            self.pis[i - 1].eval(x, y, z)
        } else {
            vec![Rational::zero(); n]
        }
    }

    /// R_i applied to a vector, with R_0 the base operator and indices
    /// beyond the truncation treated as zero.
    fn r_eval(&self, i: usize, x: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        if i == 0 {
            self.operator.matrix.mul_vec(x).unwrap()
        } else if i <= self.order() {
            self.rs[i - 1].mul_vec(x).unwrap()
        } else {
            vec![Rational::zero(); n]
        }
    }

    /// Truncates the deformation to a lower order.
    pub fn truncate(&self, order: usize) -> FormalDeformation {
        let order = order.min(self.order()).max(1);
        FormalDeformation {
            algebra: self.algebra.clone(),
            operator: self.operator.clone(),
            pis: self.pis[..order].to_vec(),
            rs: self.rs[..order].to_vec(),
        }
    }
}

fn vec_sub_assign(acc: &mut [Rational], other: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a -= b;
    }
}

/// Whether the bracket-family equation holds at the given order: for all
/// basis choices v < w and x < y < z,
///
/// ```text
/// Σ_{i+j=order} ( π_i(π_j(v,w,x),y,z) + π_i(x,π_j(v,w,y),z)
///              + π_i(x,y,π_j(v,w,z)) − π_i(v,w,π_j(x,y,z)) ) = 0.
/// ```
fn bracket_equation_holds(d: &FormalDeformation, order: usize) -> bool {
    let n = d.dim();
    let e = |i: usize| basis_vector(n, i);
    for v in 0..n {
        for w in v + 1..n {
            for x in 0..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let mut total = vec![Rational::zero(); n];
                        for i in 0..=order {
                            let j = order - i;
                            let inner_x = d.pi_eval(j, &e(v), &e(w), &e(x));
                            let inner_y = d.pi_eval(j, &e(v), &e(w), &e(y));
                            let inner_z = d.pi_eval(j, &e(v), &e(w), &e(z));
                            let inner_full = d.pi_eval(j, &e(x), &e(y), &e(z));
                            total = vec_add(&total, &d.pi_eval(i, &inner_x, &e(y), &e(z)));
                            total = vec_add(&total, &d.pi_eval(i, &e(x), &inner_y, &e(z)));
                            total = vec_add(&total, &d.pi_eval(i, &e(x), &e(y), &inner_z));
                            vec_sub_assign(&mut total, &d.pi_eval(i, &e(v), &e(w), &inner_full));
                        }
                        if !vec_is_zero(&total) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Whether the operator-family equation holds at the given order: for all
/// basis choices x < y < z,
///
/// ```text
/// Σ_{i+j+k+l=order} π_i(R_j x, R_k y, R_l z)
///   = Σ_{i+j+k+l=order} R_i( π_j(R_k x, R_l y, z) + π_j(x, R_k y, R_l z)
///                          + π_j(R_k x, y, R_l z) )
///   + λ Σ_{i+j+k=order} R_i( π_j(R_k x, y, z) + π_j(x, R_k y, z)
///                          + π_j(x, y, R_k z) )
///   + λ² Σ_{i+j=order} R_i π_j(x, y, z),
/// ```
///
/// all subscripts ranging over the available terms with absent terms zero.
fn operator_equation_holds(d: &FormalDeformation, order: usize) -> bool {
    let n = d.dim();
    let lam = &d.operator.weight;
    let lam2 = lam * lam;
    let e = |i: usize| basis_vector(n, i);
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut lhs = vec![Rational::zero(); n];
                let mut rhs = vec![Rational::zero(); n];
                for i in 0..=order {
                    for j in 0..=order - i {
                        for k in 0..=order - i - j {
                            let l = order - i - j - k;
                            lhs = vec_add(
                                &lhs,
                                &d.pi_eval(i, &d.r_eval(j, &e(x)), &d.r_eval(k, &e(y)), &d.r_eval(l, &e(z))),
                            );
                            let mut inner = d.pi_eval(j, &d.r_eval(k, &e(x)), &d.r_eval(l, &e(y)), &e(z));
                            inner = vec_add(&inner, &d.pi_eval(j, &e(x), &d.r_eval(k, &e(y)), &d.r_eval(l, &e(z))));
                            inner = vec_add(&inner, &d.pi_eval(j, &d.r_eval(k, &e(x)), &e(y), &d.r_eval(l, &e(z))));
                            rhs = vec_add(&rhs, &d.r_eval(i, &inner));
                        }
                        let k = order - i - j;
                        let mut inner = d.pi_eval(j, &d.r_eval(k, &e(x)), &e(y), &e(z));
                        inner = vec_add(&inner, &d.pi_eval(j, &e(x), &d.r_eval(k, &e(y)), &e(z)));
                        inner = vec_add(&inner, &d.pi_eval(j, &e(x), &e(y), &d.r_eval(k, &e(z))));
                        let weighted: Vec<Rational> =
                            d.r_eval(i, &inner).into_iter().map(|t| lam * &t).collect();
                        rhs = vec_add(&rhs, &weighted);
                    }
                    let j = order - i;
                    let weighted: Vec<Rational> = d
                        .r_eval(i, &d.pi_eval(j, &e(x), &e(y), &e(z)))
                        .into_iter()
                        .map(|t| &lam2 * &t)
                        .collect();
                    rhs = vec_add(&rhs, &weighted);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Validates both deformation equations at every order from 0 through the
/// truncation order; order 0 reduces to the fundamental identity and the
/// Rota-Baxter identity of the base. Returns the violated
/// (equation, order) pairs; an empty list means the deformation is valid
/// to the given order.
pub fn validate_deformation_orders(d: &FormalDeformation) -> Vec<(DeformationEquation, usize)> {
    let mut violations = Vec::new();
    for order in 0..=d.order() {
        if !bracket_equation_holds(d, order) {
            violations.push((DeformationEquation::Bracket, order));
        }
        if !operator_equation_holds(d, order) {
            violations.push((DeformationEquation::Operator, order));
        }
    }
    violations
}

/// The coordinates of the infinitesimal (π₁, R₁) in the degree-2 space of
/// the Rota-Baxter complex with adjoint coefficients: the plain degree-2
/// block followed by the descendent degree-1 block.
pub fn infinitesimal_coords(d: &FormalDeformation) -> Vec<Rational> {
    let n = d.dim();
    let pi1 = &d.pis[0];
    let r1 = &d.rs[0];
    let mut coords = vec![Rational::zero(); cochain_space_dim(n, n, 2) + n * n];
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let base = tuple_encode(n, &[pair_index(n, i, j)], k) * n;
                for (off, val) in pi1.eval_basis(i, j, k).into_iter().enumerate() {
                    coords[base + off] = val;
                }
            }
        }
    }
    let r_base = cochain_space_dim(n, n, 2);
    for k in 0..n {
        for v in 0..n {
            coords[r_base + k * n + v] = r1.get(v, k).clone();
        }
    }
    coords
}

/// Whether the infinitesimal (π₁, R₁) is a 2-cocycle of the Rota-Baxter
/// complex with adjoint coefficients. Equals the order-1 verdict of
/// [`validate_deformation_orders`] whenever the base pair is valid.
pub fn infinitesimal_is_cocycle(d: &FormalDeformation) -> bool {
    let rbrep = adjoint_rep(&d.algebra, &d.operator);
    let d2 = coboundary_rb_matrix(&rbrep, &d.operator, 2).expect("adjoint coefficients are well-formed");
    d2.mul_vec(&infinitesimal_coords(d))
        .unwrap()
        .iter()
        .all(|x| x.is_zero())
}

/// Whether `n_op` realizes the deformation as trivial: N commutes with
/// the base operator and, with K_t = I + tN, the coefficients of tʲ in
/// K_t[x,y,z]_t and in [K_t x, K_t y, K_t z] agree as exact maps for all
/// j up to the truncation order.
pub fn trivial_deformation_check(d: &FormalDeformation, n_op: &Matrix) -> bool {
    let n = d.dim();
    if n_op.rows() != n || n_op.cols() != n {
        return false;
    }
    if n_op.matmul(&d.operator.matrix).unwrap() != d.operator.matrix.matmul(n_op).unwrap() {
        return false;
    }
    let e = |i: usize| basis_vector(n, i);
    let napply = |v: &[Rational]| n_op.mul_vec(v).unwrap();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let (nx, ny, nz) = (napply(&e(x)), napply(&e(y)), napply(&e(z)));
                for j in 0..=d.order() {
                    // K_t (Σ tⁱ π_i): coefficient of tʲ is π_j + N π_{j−1}
                    let mut lhs = d.pi_eval(j, &e(x), &e(y), &e(z));
                    if j >= 1 {
                        lhs = vec_add(&lhs, &napply(&d.pi_eval(j - 1, &e(x), &e(y), &e(z))));
                    }
                    // [K_t x, K_t y, K_t z]: N on each j-subset of slots
                    let rhs = match j {
                        0 => d.algebra.bracket(&e(x), &e(y), &e(z)),
                        1 => vec_add(
                            &vec_add(
                                &d.algebra.bracket(&nx, &e(y), &e(z)),
                                &d.algebra.bracket(&e(x), &ny, &e(z)),
                            ),
                            &d.algebra.bracket(&e(x), &e(y), &nz),
                        ),
                        2 => vec_add(
                            &vec_add(
                                &d.algebra.bracket(&nx, &ny, &e(z)),
                                &d.algebra.bracket(&nx, &e(y), &nz),
                            ),
                            &d.algebra.bracket(&e(x), &ny, &nz),
                        ),
                        3 => d.algebra.bracket(&nx, &ny, &nz),
                        _ => vec![Rational::zero(); n],
                    };
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}
