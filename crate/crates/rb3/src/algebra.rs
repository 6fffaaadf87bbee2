//! 3-Lie algebras given by structure constants, Rota-Baxter operators of
//! arbitrary weight, validation of the defining identities, descendent
//! algebras and a small built-in catalog of examples.
//!
//! Structure constants are stored only for ordered triples `i < j < k` and
//! extended to arbitrary arguments by total skew-symmetry, so non-skew
//! input is unrepresentable. Operator matrices use the column convention:
//! column `c` is the image of the basis vector `e_c`, so applying the
//! operator to a coordinate vector is left multiplication.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{basis_vector, vec_add, vec_is_zero, vec_scale, Matrix, Rational};

pub type Element = Vec<Rational>;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("bracket indices ({0},{1},{2}) are not strictly increasing")]
    UnorderedTriple(usize, usize, usize),
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("value vector has length {0}, expected {1}")]
    BadValueLength(usize, usize),
    #[error("duplicate bracket entry for ({0},{1},{2})")]
    DuplicateTriple(usize, usize, usize),
    #[error("element has length {0}, expected {1}")]
    ElementLength(usize, usize),
    #[error("operator matrix is {0}x{1}, expected {2}x{2}")]
    OperatorShape(usize, usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown catalog name {0:?}")]
    UnknownCatalogName(String),
}

/// Outcome of an identity check: the list of violated instances.
/// Empty means valid. Violations are data, not errors.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub violations: Vec<String>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: String) {
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// A totally skew-symmetric trilinear map `A^3 -> V` stored on ordered
/// basis triples. `vdim` is the dimension of the target space; a 3-Lie
/// bracket is the special case `vdim == dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewTrilinear {
    dim: usize,
    vdim: usize,
    entries: BTreeMap<(usize, usize, usize), Vec<Rational>>,
}

impl SkewTrilinear {
    pub fn zero(dim: usize, vdim: usize) -> Self {
        SkewTrilinear {
            dim,
            vdim,
            entries: BTreeMap::new(),
        }
    }

    pub fn new(
        dim: usize,
        vdim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), Vec<Rational>)>,
    ) -> Result<Self, AlgebraError> {
        let mut map = BTreeMap::new();
        for ((i, j, k), value) in entries {
            if !(i < j && j < k) {
                return Err(AlgebraError::UnorderedTriple(i, j, k));
            }
            if k >= dim {
                return Err(AlgebraError::IndexOutOfRange(k, dim));
            }
            if value.len() != vdim {
                return Err(AlgebraError::BadValueLength(value.len(), vdim));
            }
            if map.insert((i, j, k), value).is_some() {
                return Err(AlgebraError::DuplicateTriple(i, j, k));
            }
        }
        map.retain(|_, v| !vec_is_zero(v));
        Ok(SkewTrilinear {
            dim,
            vdim,
            entries: map,
        })
    }

    pub fn from_fn(dim: usize, vdim: usize, f: impl Fn(usize, usize, usize) -> Vec<Rational>) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let v = f(i, j, k);
                    assert_eq!(v.len(), vdim);
                    if !vec_is_zero(&v) {
                        entries.insert((i, j, k), v);
                    }
                }
            }
        }
        SkewTrilinear { dim, vdim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize, usize), Vec<Rational>> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value on basis vectors in any order; repeated indices give zero.
    pub fn eval_basis(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        if i == j || j == k || i == k {
            return vec![Rational::zero(); self.vdim];
        }
        let (sorted, sign) = sort3(i, j, k);
        match self.entries.get(&sorted) {
            Some(v) if sign > 0 => v.clone(),
            Some(v) => vec_scale(v, &Rational::from_int(-1)),
            None => vec![Rational::zero(); self.vdim],
        }
    }

    /// Trilinear skew extension to arbitrary coordinate vectors.
    /// The coefficient on a stored triple (i,j,k) is the 3x3 determinant of
    /// the (i,j,k)-coordinates of the arguments.
    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        assert_eq!(z.len(), self.dim);
        let mut out = vec![Rational::zero(); self.vdim];
        for (&(i, j, k), value) in &self.entries {
            let coeff = det3(
                [&x[i], &x[j], &x[k]],
                [&y[i], &y[j], &y[k]],
                [&z[i], &z[j], &z[k]],
            );
            if coeff.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(value) {
                let term = v * &coeff;
                *o += &term;
            }
        }
        out
    }

    pub fn add(&self, other: &SkewTrilinear) -> SkewTrilinear {
        assert_eq!((self.dim, self.vdim), (other.dim, other.vdim));
        SkewTrilinear::from_fn(self.dim, self.vdim, |i, j, k| {
            vec_add(&self.eval_basis(i, j, k), &other.eval_basis(i, j, k))
        })
    }

    pub fn scale(&self, s: &Rational) -> SkewTrilinear {
        SkewTrilinear::from_fn(self.dim, self.vdim, |i, j, k| {
            vec_scale(&self.eval_basis(i, j, k), s)
        })
    }
}

fn sort3(i: usize, j: usize, k: usize) -> ((usize, usize, usize), i32) {
    let mut idx = [i, j, k];
    let mut sign = 1;
    // three-element bubble sort, tracking parity
    for pass in 0..2 {
        for t in 0..2 - pass {
            if idx[t] > idx[t + 1] {
                idx.swap(t, t + 1);
                sign = -sign;
            }
        }
    }
    ((idx[0], idx[1], idx[2]), sign)
}

fn det3(r0: [&Rational; 3], r1: [&Rational; 3], r2: [&Rational; 3]) -> Rational {
    let m01 = &(r1[1] * r2[2]) - &(r1[2] * r2[1]);
    let m11 = &(r1[0] * r2[2]) - &(r1[2] * r2[0]);
    let m21 = &(r1[0] * r2[1]) - &(r1[1] * r2[0]);
    &(&(r0[0] * &m01) - &(r0[1] * &m11)) + &(r0[2] * &m21)
}

/// A finite-dimensional 3-Lie algebra candidate: a dimension plus a totally
/// skew trilinear bracket `[e_i, e_j, e_k] = sum_l c_{ijk}^l e_l`.
/// The fundamental identity is checked by [`ThreeLieAlgebra::validate`],
/// not at construction, so the same type also carries deformed brackets
/// whose validity is the question being asked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeLieAlgebra {
    bracket: SkewTrilinear,
}

impl ThreeLieAlgebra {
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), Vec<Rational>)>,
    ) -> Result<Self, AlgebraError> {
        Ok(ThreeLieAlgebra {
            bracket: SkewTrilinear::new(dim, dim, entries)?,
        })
    }

    pub fn from_bracket(bracket: SkewTrilinear) -> Self {
        assert_eq!(bracket.dim(), bracket.vdim());
        ThreeLieAlgebra { bracket }
    }

    pub fn abelian(dim: usize) -> Self {
        ThreeLieAlgebra {
            bracket: SkewTrilinear::zero(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn bracket_table(&self) -> &SkewTrilinear {
        &self.bracket
    }

    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        self.bracket.eval_basis(i, j, k)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        self.bracket.eval(x, y, z)
    }

    /// Checked trilinear evaluation.
    pub fn bracket_eval(
        &self,
        x: &[Rational],
        y: &[Rational],
        z: &[Rational],
    ) -> Result<Vec<Rational>, AlgebraError> {
        for v in [x, y, z] {
            if v.len() != self.dim() {
                return Err(AlgebraError::ElementLength(v.len(), self.dim()));
            }
        }
        Ok(self.bracket(x, y, z))
    }

    /// Fundamental identity on all basis 5-tuples. Both sides are skew in
    /// (x1,x2) and in (y1,y2,y3), so ordered tuples suffice.
    pub fn validate(&self) -> Report {
        let n = self.dim();
        let mut report = Report::default();
        for x1 in 0..n {
            for x2 in x1 + 1..n {
                for y1 in 0..n {
                    for y2 in y1 + 1..n {
                        for y3 in y2 + 1..n {
                            let inner = self.bracket_basis(y1, y2, y3);
                            let lhs = self.bracket(
                                &basis_vector(n, x1),
                                &basis_vector(n, x2),
                                &inner,
                            );
                            let mut rhs = self.bracket(
                                &self.bracket_basis(x1, x2, y1),
                                &basis_vector(n, y2),
                                &basis_vector(n, y3),
                            );
                            rhs = vec_add(
                                &rhs,
                                &self.bracket(
                                    &basis_vector(n, y1),
                                    &self.bracket_basis(x1, x2, y2),
                                    &basis_vector(n, y3),
                                ),
                            );
                            rhs = vec_add(
                                &rhs,
                                &self.bracket(
                                    &basis_vector(n, y1),
                                    &basis_vector(n, y2),
                                    &self.bracket_basis(x1, x2, y3),
                                ),
                            );
                            if lhs != rhs {
                                report.push(format!(
                                    "fundamental identity fails on (e{},e{};e{},e{},e{})",
                                    x1 + 1,
                                    x2 + 1,
                                    y1 + 1,
                                    y2 + 1,
                                    y3 + 1
                                ));
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

/// A linear operator `R` together with its weight, attached to an algebra
/// of matching dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotaBaxterOperator {
    pub weight: Rational,
    pub matrix: Matrix,
}

impl RotaBaxterOperator {
    pub fn new(weight: Rational, matrix: Matrix) -> Self {
        RotaBaxterOperator { weight, matrix }
    }

    pub fn identity(n: usize, weight: Rational) -> Self {
        RotaBaxterOperator::new(weight, Matrix::identity(n))
    }

    pub fn zero(n: usize, weight: Rational) -> Self {
        RotaBaxterOperator::new(weight, Matrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x).expect("operator dimension mismatch")
    }
}

/// The weight-λ Rota-Baxter expression
/// `[R(x),R(y),z] + [R(x),y,R(z)] + [x,R(y),R(z)]
///  + λ([R(x),y,z] + [x,R(y),z] + [x,y,R(z)]) + λ^2 [x,y,z]`,
/// i.e. the descendent bracket `[x,y,z]_R`. The defining identity states
/// that `R` applied to this expression equals `[R(x),R(y),R(z)]`.
pub fn bracket_r(
    algebra: &ThreeLieAlgebra,
    r: &RotaBaxterOperator,
    x: &[Rational],
    y: &[Rational],
    z: &[Rational],
) -> Vec<Rational> {
    let (rx, ry, rz) = (r.apply(x), r.apply(y), r.apply(z));
    let lam = &r.weight;
    let mut acc = algebra.bracket(&rx, &ry, z);
    acc = vec_add(&acc, &algebra.bracket(&rx, y, &rz));
    acc = vec_add(&acc, &algebra.bracket(x, &ry, &rz));
    let mut linear = algebra.bracket(&rx, y, z);
    linear = vec_add(&linear, &algebra.bracket(x, &ry, z));
    linear = vec_add(&linear, &algebra.bracket(x, y, &rz));
    acc = vec_add(&acc, &vec_scale(&linear, lam));
    let lam2 = lam * lam;
    vec_add(&acc, &vec_scale(&algebra.bracket(x, y, z), &lam2))
}

fn check_operator_shape(
    algebra: &ThreeLieAlgebra,
    r: &RotaBaxterOperator,
) -> Result<(), AlgebraError> {
    let n = algebra.dim();
    if r.matrix.rows() != n || r.matrix.cols() != n {
        return Err(AlgebraError::OperatorShape(
            r.matrix.rows(),
            r.matrix.cols(),
            n,
        ));
    }
    Ok(())
}

/// Rota-Baxter identity on all basis triples `i < j < k`; both sides are
/// trilinear and skew, so ordered triples suffice.
pub fn validate_rb(
    algebra: &ThreeLieAlgebra,
    r: &RotaBaxterOperator,
) -> Result<Report, AlgebraError> {
    check_operator_shape(algebra, r)?;
    let n = algebra.dim();
    let mut report = Report::default();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (basis_vector(n, i), basis_vector(n, j), basis_vector(n, k));
                let lhs = algebra.bracket(&r.apply(&x), &r.apply(&y), &r.apply(&z));
                let rhs = r.apply(&bracket_r(algebra, r, &x, &y, &z));
                if lhs != rhs {
                    report.push(format!(
                        "Rota-Baxter identity fails on (e{},e{},e{}): lhs {:?}, rhs {:?}",
                        i + 1,
                        j + 1,
                        k + 1,
                        lhs,
                        rhs
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// The descendent algebra `(A_R, R)`: same space, bracket `[.,.,.]_R`.
/// Requires a valid Rota-Baxter pair; the output again satisfies both the
/// fundamental identity and the Rota-Baxter identity with the same weight.
pub fn descendent_algebra(
    algebra: &ThreeLieAlgebra,
    r: &RotaBaxterOperator,
) -> Result<(ThreeLieAlgebra, RotaBaxterOperator), AlgebraError> {
    let report = validate_rb(algebra, r)?;
    if !report.is_valid() {
        return Err(AlgebraError::Precondition(format!(
            "descendent_algebra requires a valid Rota-Baxter pair; {report}"
        )));
    }
    Ok((descendent_bracket(algebra, r), r.clone()))
}

/// The descendent bracket table itself, without the validity precondition.
pub fn descendent_bracket(algebra: &ThreeLieAlgebra, r: &RotaBaxterOperator) -> ThreeLieAlgebra {
    let n = algebra.dim();
    ThreeLieAlgebra::from_bracket(SkewTrilinear::from_fn(n, n, |i, j, k| {
        bracket_r(
            algebra,
            r,
            &basis_vector(n, i),
            &basis_vector(n, j),
            &basis_vector(n, k),
        )
    }))
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

/// The 3-dimensional algebra with `[e1,e2,e3] = e1`.
pub fn a3() -> ThreeLieAlgebra {
    let mut e1 = vec![Rational::zero(); 3];
    e1[0] = Rational::one();
    ThreeLieAlgebra::new(3, [((0, 1, 2), e1)]).unwrap()
}

/// The 4-dimensional algebra with `[e1,e2,e3] = e4` and all other brackets zero.
pub fn b4() -> ThreeLieAlgebra {
    let mut e4 = vec![Rational::zero(); 4];
    e4[3] = Rational::one();
    ThreeLieAlgebra::new(4, [((0, 1, 2), e4)]).unwrap()
}

/// Weight −1 family on `a3`: matrix `[[1,a,b],[0,1,c],[0,d,1]]`.
pub fn rbm1(a: Rational, b: Rational, c: Rational, d: Rational) -> RotaBaxterOperator {
    let one = Rational::one();
    let zero = Rational::zero();
    let matrix = Matrix::from_rows(vec![
        vec![one.clone(), a, b],
        vec![zero.clone(), one.clone(), c],
        vec![zero, d, one],
    ])
    .unwrap();
    RotaBaxterOperator::new(Rational::from_int(-1), matrix)
}

/// Second family on `a3`: matrix `[[4,a,b],[0,1,c],[0,d,3]]`.
///
/// The weight is −4, not the −2 sometimes quoted for this family: solving
/// the defining identity symbolically on `a3` shows the matrix satisfies
/// it at weight −4 for every (a,b,c,d) and at weight −2 for none (scaling
/// R by c scales the weight by c, the likely source of the factor-2 slip).
/// A unit test pins both facts.
pub fn rbm2(a: Rational, b: Rational, c: Rational, d: Rational) -> RotaBaxterOperator {
    let zero = Rational::zero();
    let matrix = Matrix::from_rows(vec![
        vec![Rational::from_int(4), a, b],
        vec![zero.clone(), Rational::one(), c],
        vec![zero, d, Rational::from_int(3)],
    ])
    .unwrap();
    RotaBaxterOperator::new(Rational::from_int(-4), matrix)
}

/// A diagonal weight −1 operator on `b4`: diag(2, 3, 4, 4/3).
pub fn b4_rb() -> RotaBaxterOperator {
    RotaBaxterOperator::new(
        Rational::from_int(-1),
        Matrix::diagonal(&[
            Rational::from_int(2),
            Rational::from_int(3),
            Rational::from_int(4),
            Rational::new(4, 3),
        ]),
    )
}

/// Look up a named instance: `A3`, `A3-rbm1(a,b,c,d)`, `A3-rbm2(a,b,c,d)`,
/// `abelian(n)`, `B4`, `B4-rb`.
pub fn catalog(name: &str) -> Result<(ThreeLieAlgebra, Option<RotaBaxterOperator>), AlgebraError> {
    let name = name.trim();
    let unknown = || AlgebraError::UnknownCatalogName(name.to_string());
    if name == "A3" {
        return Ok((a3(), None));
    }
    if name == "B4" {
        return Ok((b4(), None));
    }
    if name == "B4-rb" {
        return Ok((b4(), Some(b4_rb())));
    }
    if let Some(args) = parse_call(name, "abelian") {
        let n: usize = args
            .first()
            .filter(|_| args.len() == 1)
            .and_then(|s| s.parse().ok())
            .ok_or_else(unknown)?;
        return Ok((ThreeLieAlgebra::abelian(n), None));
    }
    for (prefix, family) in [
        ("A3-rbm1", rbm1 as fn(Rational, Rational, Rational, Rational) -> RotaBaxterOperator),
        ("A3-rbm2", rbm2),
    ] {
        if let Some(args) = parse_call(name, prefix) {
            if args.len() != 4 {
                return Err(unknown());
            }
            let mut params = Vec::with_capacity(4);
            for s in &args {
                params.push(s.parse::<Rational>().map_err(|_| unknown())?);
            }
            let [a, b, c, d]: [Rational; 4] = params.try_into().unwrap();
            return Ok((a3(), Some(family(a, b, c, d))));
        }
    }
    Err(unknown())
}

fn parse_call(name: &str, prefix: &str) -> Option<Vec<String>> {
    let rest = name.strip_prefix(prefix)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(|s| s.trim().to_string()).collect())
}

/// Validated (algebra, operator) pairs used by the property-style tests:
/// a spread of weights, triangular and diagonal operators, and both the
/// 3- and 4-dimensional catalog algebras.
pub fn catalog_pairs() -> Vec<(String, ThreeLieAlgebra, RotaBaxterOperator)> {
    let q = Rational::from_int;
    vec![
        (
            "A3-rbm1(1,2,3,4)".into(),
            a3(),
            rbm1(q(1), q(2), q(3), q(4)),
        ),
        (
            "A3-rbm1(0,0,0,1)".into(),
            a3(),
            rbm1(q(0), q(0), q(0), q(1)),
        ),
        (
            "A3-rbm2(0,0,0,0)".into(),
            a3(),
            rbm2(q(0), q(0), q(0), q(0)),
        ),
        (
            "A3-rbm2(1,-1,2,1/2)".into(),
            a3(),
            rbm2(q(1), q(-1), q(2), Rational::new(1, 2)),
        ),
        (
            "A3 identity weight -1".into(),
            a3(),
            RotaBaxterOperator::identity(3, q(-1)),
        ),
        ("A3 zero weight 5".into(), a3(), RotaBaxterOperator::zero(3, q(5))),
        ("B4-rb".into(), b4(), b4_rb()),
        (
            "B4 identity weight -1".into(),
            b4(),
            RotaBaxterOperator::identity(4, q(-1)),
        ),
        (
            "abelian(2) generic".into(),
            ThreeLieAlgebra::abelian(2),
            RotaBaxterOperator::new(q(3), Matrix::from_int_rows(&[&[1, 2], &[3, 4]])),
        ),
    ]
}
