//! Dense linear operators on the algebra.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};

/// Operator on `V` stored as a `d x d` matrix whose column `j` is the image of `e_j`.
#[derive(Clone)]
pub struct LinOp {
    alg: Algebra,
    m: DMatrix<f64>,
}

impl LinOp {
    pub fn from_matrix(alg: &Algebra, m: DMatrix<f64>) -> Result<Self> {
        let d = alg.dim();
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: if m.nrows() != d { m.nrows() } else { m.ncols() },
            });
        }
        Ok(LinOp { alg: alg.clone(), m })
    }

    pub(crate) fn wrap(alg: &Algebra, m: DMatrix<f64>) -> Self {
        debug_assert_eq!(m.nrows(), alg.dim());
        LinOp { alg: alg.clone(), m }
    }

    fn with(&self, m: DMatrix<f64>) -> Self {
        LinOp {
            alg: self.alg.clone(),
            m,
        }
    }

    pub fn identity(alg: &Algebra) -> Self {
        Self::wrap(alg, DMatrix::identity(alg.dim(), alg.dim()))
    }

    pub fn zeros(alg: &Algebra) -> Self {
        Self::wrap(alg, DMatrix::zeros(alg.dim(), alg.dim()))
    }

    /// Builds the operator column by column from its action on the basis.
    pub fn from_fn(alg: &Algebra, f: impl Fn(&Element) -> Element) -> Self {
        let d = alg.dim();
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            m.set_column(j, f(&alg.basis(j)).coords());
        }
        Self::wrap(alg, m)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert!(self.alg.same(x.algebra()), "operator applied across algebras");
        Element::from_parts(self.alg.clone(), &self.m * x.coords())
    }

    /// `L_x: y ↦ x∘y`.
    pub fn l_op(x: &Element) -> Self {
        Self::from_fn(x.algebra(), |e| x.circ(e))
    }

    /// `U_x = 2L_x² − L_{x²}`.
    pub fn u_op(x: &Element) -> Self {
        let l = Self::l_op(x);
        let l2 = Self::l_op(&x.square());
        l.with(2.0 * &l.m * &l.m - l2.m)
    }

    /// `U_{x,y} = L_xL_y + L_yL_x − L_{x∘y}`, the polarization of `U`.
    pub fn u_bilinear(x: &Element, y: &Element) -> Self {
        let lx = Self::l_op(x);
        let ly = Self::l_op(y);
        let lxy = Self::l_op(&x.circ(y));
        lx.with(&lx.m * &ly.m + &ly.m * &lx.m - lxy.m)
    }

    /// `V_{x,y} = [L_x, L_y] + L_{x∘y}`, so that `V_{x,y}(z) = U_{x,z}(y)`.
    pub fn v_op(x: &Element, y: &Element) -> Self {
        let lx = Self::l_op(x);
        let ly = Self::l_op(y);
        let lxy = Self::l_op(&x.circ(y));
        lx.with(&lx.m * &ly.m - &ly.m * &lx.m + lxy.m)
    }

    pub fn compose(&self, other: &LinOp) -> LinOp {
        self.with(&self.m * &other.m)
    }

    pub fn commutator(&self, other: &LinOp) -> LinOp {
        self.with(&self.m * &other.m - &other.m * &self.m)
    }

    pub fn scale(&self, s: f64) -> LinOp {
        self.with(&self.m * s)
    }

    pub fn transpose(&self) -> LinOp {
        self.with(self.m.transpose())
    }

    /// Adjoint with respect to the trace form: `W⁻¹MᵀW`.
    pub fn adjoint(&self) -> LinOp {
        let w = self.alg.trace_weights();
        let d = self.dim();
        self.with(DMatrix::from_fn(d, d, |i, j| self.m[(j, i)] * w[j] / w[i]))
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    /// Frobenius norm of the coordinate matrix.
    pub fn frobenius(&self) -> f64 {
        self.m.norm()
    }

    /// Frobenius norm in trace-orthonormal coordinates.
    pub fn trace_frobenius(&self) -> f64 {
        let w = self.alg.trace_weights();
        let mut s = 0.0;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                s += self.m[(i, j)] * self.m[(i, j)] * w[i] / w[j];
            }
        }
        s.sqrt()
    }

    pub fn amax(&self) -> f64 {
        self.m.amax()
    }

    /// Largest entry of `self − other` in modulus.
    pub fn distance(&self, other: &LinOp) -> f64 {
        (&self.m - &other.m).amax()
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }

    pub fn inverse(&self) -> Result<LinOp> {
        self.m
            .clone()
            .try_inverse()
            .map(|m| self.with(m))
            .ok_or(Error::SingularOperator)
    }

    /// `e^H` by scaling and squaring.
    pub fn exp(&self) -> LinOp {
        self.with(expm(&self.m))
    }

    /// Row-major CSV block, one operator row per line.
    pub fn to_csv_block(&self) -> String {
        let mut s = String::new();
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| format!("{:.16e}", self.m[(i, j)]))
                .collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

pub fn op_exp(h: &LinOp) -> LinOp {
    h.exp()
}

pub fn commutator(a: &LinOp, b: &LinOp) -> LinOp {
    a.commutator(b)
}

fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential: Taylor series on `A/2^s` with `‖A/2^s‖₁ ≤ 1/2`, then squaring.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let nrm = norm1(a);
    let s = if nrm > 0.5 {
        (nrm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = a / 2f64.powi(s);
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..=30 {
        term = &term * &b / k as f64;
        sum += &term;
        if term.amax() <= 1e-18 * sum.amax() {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Returns `(e^A, L(A, E))` where `L` is the Fréchet derivative of `exp` at `A`
/// in direction `E`, read off the block exponential of `[[A, E], [0, A]]`.
pub fn expm_frechet(a: &DMatrix<f64>, e: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut big = DMatrix::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(a);
    big.view_mut((n, n), (n, n)).copy_from(a);
    big.view_mut((0, n), (n, n)).copy_from(e);
    let x = expm(&big);
    (
        x.view((0, 0), (n, n)).into_owned(),
        x.view((0, n), (n, n)).into_owned(),
    )
}

impl PartialEq for LinOp {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same(&other.alg) && self.m == other.m
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinOp[{}]{}", self.alg, self.m)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&LinOp> for &LinOp {
            type Output = LinOp;
            fn $m(self, rhs: &LinOp) -> LinOp {
                assert!(self.alg.same(&rhs.alg), "operator arithmetic across algebras");
                self.with(&self.m $op &rhs.m)
            }
        }
        impl $tr<LinOp> for LinOp {
            type Output = LinOp;
            fn $m(self, rhs: LinOp) -> LinOp {
                &self $op &rhs
            }
        }
        impl $tr<&LinOp> for LinOp {
            type Output = LinOp;
            fn $m(self, rhs: &LinOp) -> LinOp {
                &self $op rhs
            }
        }
        impl $tr<LinOp> for &LinOp {
            type Output = LinOp;
            fn $m(self, rhs: LinOp) -> LinOp {
                self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl AddAssign<&LinOp> for LinOp {
    fn add_assign(&mut self, rhs: &LinOp) {
        self.m += &rhs.m;
    }
}

impl SubAssign<&LinOp> for LinOp {
    fn sub_assign(&mut self, rhs: &LinOp) {
        self.m -= &rhs.m;
    }
}

impl Mul<f64> for &LinOp {
    type Output = LinOp;
    fn mul(self, s: f64) -> LinOp {
        self.scale(s)
    }
}

impl Mul<f64> for LinOp {
    type Output = LinOp;
    fn mul(mut self, s: f64) -> LinOp {
        self.m *= s;
        self
    }
}

impl Mul<&LinOp> for f64 {
    type Output = LinOp;
    fn mul(self, h: &LinOp) -> LinOp {
        h.scale(self)
    }
}

impl Mul<LinOp> for f64 {
    type Output = LinOp;
    fn mul(self, h: LinOp) -> LinOp {
        h * self
    }
}

impl Neg for &LinOp {
    type Output = LinOp;
    fn neg(self) -> LinOp {
        self.scale(-1.0)
    }
}

impl Neg for LinOp {
    type Output = LinOp;
    fn neg(self) -> LinOp {
        self * -1.0
    }
}

impl Mul<&Element> for &LinOp {
    type Output = Element;
    fn mul(self, x: &Element) -> Element {
        self.apply(x)
    }
}
