//! Representations of 3-Lie algebras and of Rota-Baxter 3-Lie algebras,
//! their validators, and the four constructions: adjoint, dual, and the
//! two induced representations on the descendent algebra.
//!
//! `rho` is stored for pairs `i < j` only and read skew, mirroring its
//! wedge-square domain.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{descendent_bracket, Report, RotaBaxterOperator, ThreeLieAlgebra};
use crate::linalg::{basis_vector, Matrix, Rational};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("pair indices ({0},{1}) are not strictly increasing")]
    UnorderedPair(usize, usize),
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("matrix for pair ({0},{1}) is {2}x{3}, expected {4}x{4}")]
    BadMatrixShape(usize, usize, usize, usize, usize),
    #[error("duplicate entry for pair ({0},{1})")]
    DuplicatePair(usize, usize),
    #[error("operator matrix is {0}x{1}, expected {2}x{2}")]
    OperatorShape(usize, usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A candidate representation `rho: A wedge A -> gl(V)` of a 3-Lie algebra
/// on an m-dimensional space, given by the matrices `rho(e_i, e_j)` for
/// `i < j`. The two representation axioms are checked by
/// [`validate_representation`], not at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    ambient: ThreeLieAlgebra,
    vdim: usize,
    rho: BTreeMap<(usize, usize), Matrix>,
}

impl Representation {
    pub fn new(
        ambient: ThreeLieAlgebra,
        vdim: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Matrix)>,
    ) -> Result<Self, RepError> {
        let n = ambient.dim();
        let mut rho = BTreeMap::new();
        for ((i, j), m) in entries {
            if i >= j {
                return Err(RepError::UnorderedPair(i, j));
            }
            if j >= n {
                return Err(RepError::IndexOutOfRange(j, n));
            }
            if m.rows() != vdim || m.cols() != vdim {
                return Err(RepError::BadMatrixShape(i, j, m.rows(), m.cols(), vdim));
            }
            if rho.insert((i, j), m).is_some() {
                return Err(RepError::DuplicatePair(i, j));
            }
        }
        rho.retain(|_, m| !m.is_zero());
        Ok(Representation { ambient, vdim, rho })
    }

    pub fn from_fn(
        ambient: ThreeLieAlgebra,
        vdim: usize,
        f: impl Fn(usize, usize) -> Matrix,
    ) -> Self {
        let n = ambient.dim();
        let mut rho = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = f(i, j);
                assert_eq!((m.rows(), m.cols()), (vdim, vdim));
                if !m.is_zero() {
                    rho.insert((i, j), m);
                }
            }
        }
        Representation { ambient, vdim, rho }
    }

    pub fn zero(ambient: ThreeLieAlgebra, vdim: usize) -> Self {
        Representation {
            ambient,
            vdim,
            rho: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> &ThreeLieAlgebra {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    /// `rho(e_i, e_j)` for arbitrary index order; zero on the diagonal.
    pub fn rho_basis(&self, i: usize, j: usize) -> Matrix {
        let m = self.vdim;
        if i == j {
            return Matrix::zeros(m, m);
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.rho.get(&key) {
            Some(mat) if flip => mat.scalar_mul(&Rational::from_int(-1)),
            Some(mat) => mat.clone(),
            None => Matrix::zeros(m, m),
        }
    }

    /// Bilinear skew extension `rho(x, y)` for coordinate vectors.
    pub fn rho_vec(&self, x: &[Rational], y: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let mut out = Matrix::zeros(self.vdim, self.vdim);
        for (&(i, j), mat) in &self.rho {
            let coeff = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if coeff.is_zero() {
                continue;
            }
            out = out.matadd(&mat.scalar_mul(&coeff)).unwrap();
        }
        out
    }
}

/// Both representation axioms on basis tuples. Axiom one is skew in
/// (x1,x2) and in (x3,x4) separately, axiom two is skew in (x1,x2,x3) with
/// x4 free, so ordered pairs/triples suffice; tuples with repeated indices
/// hold identically by skewness.
pub fn validate_representation(rep: &Representation) -> Report {
    let n = rep.dim();
    let mut report = Report::default();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for &(x1, x2) in &pairs {
        for &(x3, x4) in &pairs {
            let a = rep.rho_basis(x1, x2);
            let b = rep.rho_basis(x3, x4);
            let lhs = a.matmul(&b).unwrap().matsub(&b.matmul(&a).unwrap()).unwrap();
            let rhs = rep
                .rho_vec(&rep.ambient.bracket_basis(x1, x2, x3), &basis_vector(n, x4))
                .matsub(
                    &rep.rho_vec(&rep.ambient.bracket_basis(x1, x2, x4), &basis_vector(n, x3)),
                )
                .unwrap();
            if lhs != rhs {
                report.push(format!(
                    "first axiom fails on (e{},e{};e{},e{})",
                    x1 + 1,
                    x2 + 1,
                    x3 + 1,
                    x4 + 1
                ));
            }
        }
    }
    for x1 in 0..n {
        for x2 in x1 + 1..n {
            for x3 in x2 + 1..n {
                for x4 in 0..n {
                    let lhs = rep
                        .rho_vec(&rep.ambient.bracket_basis(x1, x2, x3), &basis_vector(n, x4));
                    let rhs = rep
                        .rho_basis(x1, x2)
                        .matmul(&rep.rho_basis(x3, x4))
                        .unwrap()
                        .matadd(&rep.rho_basis(x2, x3).matmul(&rep.rho_basis(x1, x4)).unwrap())
                        .unwrap()
                        .matadd(&rep.rho_basis(x3, x1).matmul(&rep.rho_basis(x2, x4)).unwrap())
                        .unwrap();
                    if lhs != rhs {
                        report.push(format!(
                            "second axiom fails on (e{},e{},e{};e{})",
                            x1 + 1,
                            x2 + 1,
                            x3 + 1,
                            x4 + 1
                        ));
                    }
                }
            }
        }
    }
    report
}

/// A representation of a Rota-Baxter 3-Lie algebra: a representation of
/// the underlying algebra plus an operator `R_V` on V. The weight is
/// always inherited from the ambient Rota-Baxter operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RBRepresentation {
    pub rep: Representation,
    pub rv: Matrix,
    pub weight: Rational,
}

impl RBRepresentation {
    pub fn new(rep: Representation, rv: Matrix, weight: Rational) -> Result<Self, RepError> {
        let m = rep.vdim();
        if rv.rows() != m || rv.cols() != m {
            return Err(RepError::OperatorShape(rv.rows(), rv.cols(), m));
        }
        Ok(RBRepresentation { rep, rv, weight })
    }
}

/// `rho(R x1, x2) + rho(x1, R x2) + lambda rho(x1, x2)` on a basis pair —
/// the linear-in-R block shared by the compatibility identity and by both
/// induced representations.
fn weighted_mid(rep: &Representation, r: &RotaBaxterOperator, lam: &Rational, i: usize, j: usize) -> Matrix {
    let n = rep.dim();
    let (ei, ej) = (basis_vector(n, i), basis_vector(n, j));
    let (ri, rj) = (r.apply(&ei), r.apply(&ej));
    rep.rho_vec(&ri, &ej)
        .matadd(&rep.rho_vec(&ei, &rj))
        .unwrap()
        .matadd(&rep.rho_basis(i, j).scalar_mul(lam))
        .unwrap()
}

/// The compatibility identity between `rho`, `R` and `R_V` on all basis
/// pairs `i < j` (both sides are bilinear and skew in the pair):
/// `rho(Rx1,Rx2) R_V = R_V rho(Rx1,Rx2)
///  + R_V (rho(Rx1,x2)+rho(x1,Rx2)+lambda rho(x1,x2)) R_V
///  + lambda R_V (rho(Rx1,x2)+rho(x1,Rx2)+lambda rho(x1,x2))`.
pub fn validate_rb_representation(
    rbrep: &RBRepresentation,
    r: &RotaBaxterOperator,
) -> Result<Report, RepError> {
    let rep = &rbrep.rep;
    let n = rep.dim();
    if r.matrix.rows() != n || r.matrix.cols() != n {
        return Err(RepError::OperatorShape(r.matrix.rows(), r.matrix.cols(), n));
    }
    let lam = &rbrep.weight;
    let rv = &rbrep.rv;
    let mut report = Report::default();
    for i in 0..n {
        for j in i + 1..n {
            let (ri, rj) = (
                r.apply(&basis_vector(n, i)),
                r.apply(&basis_vector(n, j)),
            );
            let rho_rr = rep.rho_vec(&ri, &rj);
            let mid = weighted_mid(rep, r, lam, i, j);
            let lhs = rho_rr.matmul(rv).unwrap();
            let rv_mid = rv.matmul(&mid).unwrap();
            let rhs = rv
                .matmul(&rho_rr)
                .unwrap()
                .matadd(&rv_mid.matmul(rv).unwrap())
                .unwrap()
                .matadd(&rv_mid.scalar_mul(lam))
                .unwrap();
            if lhs != rhs {
                report.push(format!(
                    "compatibility identity fails on (e{},e{})",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    Ok(report)
}

/// The adjoint representation `ad(x1,x2)(x3) = [x1,x2,x3]` with `R_V = R`.
pub fn adjoint_rep(algebra: &ThreeLieAlgebra, r: &RotaBaxterOperator) -> RBRepresentation {
    let n = algebra.dim();
    let rep = Representation::from_fn(algebra.clone(), n, |i, j| {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            for (row, value) in algebra.bracket_basis(i, j, k).into_iter().enumerate() {
                m.set(row, k, value);
            }
        }
        m
    });
    RBRepresentation {
        rep,
        rv: r.matrix.clone(),
        weight: r.weight.clone(),
    }
}

/// The dual representation on `V*`: `rho*(x1,x2) = -transpose(rho(x1,x2))`
/// with side operator `-lambda I - transpose(R_V)`. The canonical
/// coordinate pairing makes both plain transposes.
pub fn dual_rep(rbrep: &RBRepresentation) -> RBRepresentation {
    let rep = &rbrep.rep;
    let m = rep.vdim();
    let minus_one = Rational::from_int(-1);
    let dual = Representation::from_fn(rep.ambient().clone(), m, |i, j| {
        rep.rho_basis(i, j).transpose().scalar_mul(&minus_one)
    });
    let neg_lam = -rbrep.weight.clone();
    let rv = Matrix::identity(m)
        .scalar_mul(&neg_lam)
        .matsub(&rbrep.rv.transpose())
        .unwrap();
    RBRepresentation {
        rep: dual,
        rv,
        weight: rbrep.weight.clone(),
    }
}

fn induced_rep(
    rbrep: &RBRepresentation,
    r: &RotaBaxterOperator,
    bar: bool,
) -> Result<RBRepresentation, RepError> {
    let rep = &rbrep.rep;
    let n = rep.dim();
    if r.matrix.rows() != n || r.matrix.cols() != n {
        return Err(RepError::OperatorShape(r.matrix.rows(), r.matrix.cols(), n));
    }
    let lam = &rbrep.weight;
    let rv = &rbrep.rv;
    let derived = descendent_bracket(rep.ambient(), r);
    let new_rep = Representation::from_fn(derived, rep.vdim(), |i, j| {
        let (ri, rj) = (
            r.apply(&basis_vector(n, i)),
            r.apply(&basis_vector(n, j)),
        );
        let rho_rr = rep.rho_vec(&ri, &rj);
        let mid = weighted_mid(rep, r, lam, i, j);
        if bar {
            // rho(Rx1,Rx2) + mid . R_V + lambda . mid
            rho_rr
                .matadd(&mid.matmul(rv).unwrap())
                .unwrap()
                .matadd(&mid.scalar_mul(lam))
                .unwrap()
        } else {
            // rho(Rx1,Rx2) - R_V . mid
            rho_rr.matsub(&rv.matmul(&mid).unwrap()).unwrap()
        }
    });
    Ok(RBRepresentation {
        rep: new_rep,
        rv: rbrep.rv.clone(),
        weight: rbrep.weight.clone(),
    })
}

/// The induced representation
/// `rho~(x1,x2) = rho(Rx1,Rx2) - R_V(rho(Rx1,x2)+rho(x1,Rx2)+lambda rho(x1,x2))`
/// of the descendent algebra `(A_R, R)` on the same space.
pub fn induced_rep_tilde(
    rbrep: &RBRepresentation,
    r: &RotaBaxterOperator,
) -> Result<RBRepresentation, RepError> {
    induced_rep(rbrep, r, false)
}

/// The induced representation
/// `rho-(x1,x2) = rho(Rx1,Rx2) + (rho(Rx1,x2)+rho(x1,Rx2)+lambda rho(x1,x2))R_V
///  + lambda(rho(Rx1,x2)+rho(x1,Rx2)+lambda rho(x1,x2))`
/// of the descendent algebra `(A_R, R)` on the same space.
pub fn induced_rep_bar(
    rbrep: &RBRepresentation,
    r: &RotaBaxterOperator,
) -> Result<RBRepresentation, RepError> {
    induced_rep(rbrep, r, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a3, catalog_pairs, validate_rb, ThreeLieAlgebra};
    use crate::linalg::vec_from_ints;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn adjoint_of_a3_matrices() {
        let r = RotaBaxterOperator::identity(3, q(-1));
        let ad = adjoint_rep(&a3(), &r);
        // ad(e1,e2) sends e3 to e1
        let m12 = ad.rep.rho_basis(0, 1);
        assert_eq!(m12.column(2), vec_from_ints(&[1, 0, 0]));
        assert_eq!(m12.column(0), vec_from_ints(&[0, 0, 0]));
        // ad(e2,e3) sends e1 to e1
        let m23 = ad.rep.rho_basis(1, 2);
        assert_eq!(m23.column(0), vec_from_ints(&[1, 0, 0]));
        assert!(validate_representation(&ad.rep).is_valid());
    }

    #[test]
    fn zero_rep_is_valid() {
        let rep = Representation::zero(a3(), 2);
        assert!(validate_representation(&rep).is_valid());
    }

    #[test]
    fn scalar_rho_on_one_pair_is_invalid() {
        // rho(e1,e2) = 1 on a 1-dimensional space, all other pairs zero
        let rep = Representation::new(a3(), 1, [((0, 1), Matrix::identity(1))]).unwrap();
        let report = validate_representation(&rep);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("second axiom")));
    }

    #[test]
    fn rho_vec_is_skew_bilinear() {
        let r = rbm1_default();
        let ad = adjoint_rep(&a3(), &r);
        let x = vec_from_ints(&[1, 2, 3]);
        let y = vec_from_ints(&[-1, 0, 4]);
        let xy = ad.rep.rho_vec(&x, &y);
        let yx = ad.rep.rho_vec(&y, &x);
        assert_eq!(xy, yx.scalar_mul(&q(-1)));
        assert!(ad.rep.rho_vec(&x, &x).is_zero());
    }

    fn rbm1_default() -> RotaBaxterOperator {
        crate::algebra::rbm1(q(0), q(0), q(0), q(1))
    }

    #[test]
    fn adjoint_passes_compatibility_for_catalog() {
        for (name, alg, r) in catalog_pairs() {
            let ad = adjoint_rep(&alg, &r);
            assert!(
                validate_representation(&ad.rep).is_valid(),
                "{name}: adjoint axioms"
            );
            assert!(
                validate_rb_representation(&ad, &r).unwrap().is_valid(),
                "{name}: adjoint compatibility"
            );
        }
    }

    #[test]
    fn rb_compatibility_counterexample() {
        // adjoint of A3 with R = I (weight -1) but R_V = 2I
        let r = RotaBaxterOperator::identity(3, q(-1));
        let mut ad = adjoint_rep(&a3(), &r);
        ad.rv = Matrix::identity(3).scalar_mul(&q(2));
        let report = validate_rb_representation(&ad, &r).unwrap();
        assert_eq!(report.violations.len(), 3);
    }

    #[test]
    fn dual_rep_values() {
        // rho(e1,e2) = [[0,1],[0,0]] on an abelian ambient: dual is the
        // negative transpose; side operator at rv=0, weight -1 is I
        let ambient = ThreeLieAlgebra::abelian(3);
        let m = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let rep = Representation::new(ambient, 2, [((0, 1), m)]).unwrap();
        let rb = RBRepresentation::new(rep, Matrix::zeros(2, 2), q(-1)).unwrap();
        let dual = dual_rep(&rb);
        assert_eq!(
            dual.rep.rho_basis(0, 1),
            Matrix::from_int_rows(&[&[0, 0], &[-1, 0]])
        );
        assert_eq!(dual.rv, Matrix::identity(2));
    }

    #[test]
    fn dual_rep_is_an_involution() {
        for (name, alg, r) in catalog_pairs() {
            let ad = adjoint_rep(&alg, &r);
            let back = dual_rep(&dual_rep(&ad));
            assert_eq!(back.rep, ad.rep, "{name}: double dual rho");
            assert_eq!(back.rv, ad.rv, "{name}: double dual operator");
        }
    }

    #[test]
    fn dual_of_adjoint_passes_validators() {
        for (name, alg, r) in catalog_pairs() {
            let dual = dual_rep(&adjoint_rep(&alg, &r));
            assert!(
                validate_representation(&dual.rep).is_valid(),
                "{name}: dual axioms"
            );
            assert!(
                validate_rb_representation(&dual, &r).unwrap().is_valid(),
                "{name}: dual compatibility"
            );
        }
    }

    #[test]
    fn tilde_vanishes_when_all_operators_vanish() {
        let ambient = a3();
        let r = RotaBaxterOperator::zero(3, q(0));
        let ad_zero = RBRepresentation::new(
            adjoint_rep(&ambient, &RotaBaxterOperator::identity(3, q(0))).rep,
            Matrix::zeros(3, 3),
            q(0),
        )
        .unwrap();
        let tilde = induced_rep_tilde(&ad_zero, &r).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(tilde.rep.rho_basis(i, j).is_zero());
            }
        }
    }

    #[test]
    fn tilde_vanishes_for_identity_weight_minus_one() {
        // rho~ = rho - (rho + rho - rho) = 0 when R = R_V = I, weight -1
        let r = RotaBaxterOperator::identity(3, q(-1));
        let ad = adjoint_rep(&a3(), &r);
        let tilde = induced_rep_tilde(&ad, &r).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(tilde.rep.rho_basis(i, j).is_zero());
            }
        }
    }

    #[test]
    fn bar_fixes_rho_for_identity_weight_minus_one() {
        // rho- = rho + (rho + rho - rho) - (rho + rho - rho) = rho
        let r = RotaBaxterOperator::identity(3, q(-1));
        let ad = adjoint_rep(&a3(), &r);
        let bar = induced_rep_bar(&ad, &r).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(bar.rep.rho_basis(i, j), ad.rep.rho_basis(i, j));
            }
        }
    }

    #[test]
    fn induced_reps_pass_validators_on_descendent() {
        for (name, alg, r) in catalog_pairs() {
            assert!(validate_rb(&alg, &r).unwrap().is_valid());
            let ad = adjoint_rep(&alg, &r);
            for (label, built) in [
                ("tilde", induced_rep_tilde(&ad, &r).unwrap()),
                ("bar", induced_rep_bar(&ad, &r).unwrap()),
            ] {
                assert!(
                    validate_representation(&built.rep).is_valid(),
                    "{name}: {label} axioms on descendent"
                );
                assert!(
                    validate_rb_representation(&built, &r).unwrap().is_valid(),
                    "{name}: {label} compatibility"
                );
            }
        }
    }
}
