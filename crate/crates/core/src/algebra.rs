//! Concrete finite-dimensional Euclidean Jordan algebras.
//!
//! Three families are supported together with binary direct sums:
//!
//! * `sym:n` real symmetric `n x n` matrices with `x∘y = (xy + yx)/2`,
//!   coordinates in the trace-orthonormal basis `E_ii`, `(E_ij + E_ji)/√2`;
//! * `spin:k` the spin factor `ℝ × ℝ^{k-1}` with
//!   `(x₀, x̄)∘(y₀, ȳ) = (x₀y₀ + x̄·ȳ, x₀ȳ + y₀x̄)`;
//! * `rn:k` the associative algebra `ℝ^k` with componentwise product.
//!
//! Every algebra carries its dense structure constants so that a generic
//! product is always available next to the specialized kernels.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DVector;

use crate::element::Element;
use crate::error::{Error, Result};

pub const MAX_SYM: usize = 6;
pub const MAX_SPIN: usize = 16;
pub const MAX_RN: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Sym(usize),
    Spin(usize),
    Rn(usize),
    Sum(Box<AlgebraKind>, Box<AlgebraKind>),
}

impl AlgebraKind {
    pub fn dim(&self) -> usize {
        match self {
            AlgebraKind::Sym(n) => n * (n + 1) / 2,
            AlgebraKind::Spin(k) | AlgebraKind::Rn(k) => *k,
            AlgebraKind::Sum(a, b) => a.dim() + b.dim(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            AlgebraKind::Sym(n) => *n,
            AlgebraKind::Spin(_) => 2,
            AlgebraKind::Rn(k) => *k,
            AlgebraKind::Sum(a, b) => a.rank() + b.rank(),
        }
    }

    fn validate(&self, spec: &str) -> Result<()> {
        let bad = |reason: String| Error::InvalidAlgebra {
            spec: spec.to_string(),
            reason,
        };
        match self {
            AlgebraKind::Sym(n) if *n == 0 || *n > MAX_SYM => {
                Err(bad(format!("sym order must be in 1..={MAX_SYM}")))
            }
            AlgebraKind::Spin(k) if *k < 2 || *k > MAX_SPIN => {
                Err(bad(format!("spin dimension must be in 2..={MAX_SPIN}")))
            }
            AlgebraKind::Rn(k) if *k == 0 || *k > MAX_RN => {
                Err(bad(format!("rn dimension must be in 1..={MAX_RN}")))
            }
            AlgebraKind::Sum(a, b) => {
                if matches!(**a, AlgebraKind::Sum(..)) || matches!(**b, AlgebraKind::Sum(..)) {
                    return Err(bad("only binary sums of simple algebras are supported".into()));
                }
                a.validate(spec)?;
                b.validate(spec)
            }
            _ => Ok(()),
        }
    }

    /// Specialized product kernel: `out = a∘b`.
    pub(crate) fn product_into(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        match self {
            AlgebraKind::Sym(n) => sym_product(*n, a, b, out),
            AlgebraKind::Spin(_) => {
                let dot: f64 = a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum();
                out[0] = a[0] * b[0] + dot;
                for i in 1..a.len() {
                    out[i] = a[0] * b[i] + b[0] * a[i];
                }
            }
            AlgebraKind::Rn(_) => {
                for i in 0..a.len() {
                    out[i] = a[i] * b[i];
                }
            }
            AlgebraKind::Sum(x, y) => {
                let dx = x.dim();
                let (oa, ob) = out.split_at_mut(dx);
                x.product_into(&a[..dx], &b[..dx], oa);
                y.product_into(&a[dx..], &b[dx..], ob);
            }
        }
    }

    fn unit_into(&self, out: &mut [f64]) {
        match self {
            AlgebraKind::Sym(n) => {
                out.fill(0.0);
                out[..*n].fill(1.0);
            }
            AlgebraKind::Spin(_) => {
                out.fill(0.0);
                out[0] = 1.0;
            }
            AlgebraKind::Rn(_) => out.fill(1.0),
            AlgebraKind::Sum(x, y) => {
                let dx = x.dim();
                let (oa, ob) = out.split_at_mut(dx);
                x.unit_into(oa);
                y.unit_into(ob);
            }
        }
    }

    fn trace_weights_into(&self, out: &mut Vec<f64>) {
        match self {
            AlgebraKind::Spin(k) => out.extend(std::iter::repeat_n(2.0, *k)),
            AlgebraKind::Sum(x, y) => {
                x.trace_weights_into(out);
                y.trace_weights_into(out);
            }
            other => out.extend(std::iter::repeat_n(1.0, other.dim())),
        }
    }

    fn labels_into(&self, prefix: &str, out: &mut Vec<String>) {
        match self {
            AlgebraKind::Sym(n) => {
                for i in 1..=*n {
                    out.push(format!("{prefix}E{i}{i}"));
                }
                for i in 1..=*n {
                    for j in i + 1..=*n {
                        out.push(format!("{prefix}(E{i}{j}+E{j}{i})/√2"));
                    }
                }
            }
            AlgebraKind::Spin(k) => out.extend((0..*k).map(|i| format!("{prefix}e{i}"))),
            AlgebraKind::Rn(k) => out.extend((1..=*k).map(|i| format!("{prefix}e{i}"))),
            AlgebraKind::Sum(x, y) => {
                x.labels_into(&format!("{prefix}a."), out);
                y.labels_into(&format!("{prefix}b."), out);
            }
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Sym(n) => write!(f, "sym:{n}"),
            AlgebraKind::Spin(k) => write!(f, "spin:{k}"),
            AlgebraKind::Rn(k) => write!(f, "rn:{k}"),
            AlgebraKind::Sum(a, b) => write!(f, "sum:{a}+{b}"),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let bad = |reason: &str| Error::InvalidAlgebra {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let kind = if let Some(rest) = spec.strip_prefix("sum:") {
            let (a, b) = rest
                .split_once('+')
                .ok_or_else(|| bad("sum needs two summands joined by '+'"))?;
            AlgebraKind::Sum(Box::new(parse_simple(a, spec)?), Box::new(parse_simple(b, spec)?))
        } else {
            parse_simple(spec, spec)?
        };
        kind.validate(spec)?;
        Ok(kind)
    }
}

fn parse_simple(part: &str, spec: &str) -> Result<AlgebraKind> {
    let bad = |reason: &str| Error::InvalidAlgebra {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let (family, size) = part
        .split_once(':')
        .ok_or_else(|| bad("expected FAMILY:SIZE"))?;
    let size: usize = size
        .trim()
        .parse()
        .map_err(|_| bad("size is not a non-negative integer"))?;
    match family.trim() {
        "sym" => Ok(AlgebraKind::Sym(size)),
        "spin" => Ok(AlgebraKind::Spin(size)),
        "rn" => Ok(AlgebraKind::Rn(size)),
        "sum" => Err(bad("nested sums are not supported")),
        other => Err(bad(&format!("unknown family `{other}`"))),
    }
}

struct Inner {
    kind: AlgebraKind,
    dim: usize,
    rank: usize,
    labels: Vec<String>,
    /// `structure[(i * d + j) * d + l]` is the `e_l` coefficient of `e_i∘e_j`.
    structure: Vec<f64>,
    unit: Vec<f64>,
    trace_weights: Vec<f64>,
}

/// Shared handle to an algebra. Cloning is cheap.
#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

impl Algebra {
    pub fn new(kind: AlgebraKind) -> Result<Self> {
        kind.validate(&kind.to_string())?;
        let dim = kind.dim();
        let rank = kind.rank();
        let mut labels = Vec::with_capacity(dim);
        kind.labels_into("", &mut labels);
        let mut unit = vec![0.0; dim];
        kind.unit_into(&mut unit);
        let mut trace_weights = Vec::with_capacity(dim);
        kind.trace_weights_into(&mut trace_weights);

        let mut structure = vec![0.0; dim * dim * dim];
        let mut ei = vec![0.0; dim];
        let mut ej = vec![0.0; dim];
        let mut out = vec![0.0; dim];
        for i in 0..dim {
            ei.fill(0.0);
            ei[i] = 1.0;
            for j in 0..dim {
                ej.fill(0.0);
                ej[j] = 1.0;
                kind.product_into(&ei, &ej, &mut out);
                let base = (i * dim + j) * dim;
                structure[base..base + dim].copy_from_slice(&out);
            }
        }

        Ok(Algebra(Arc::new(Inner {
            kind,
            dim,
            rank,
            labels,
            structure,
            unit,
            trace_weights,
        })))
    }

    /// Parses `"sym:3"`, `"spin:4"`, `"rn:5"` or `"sum:sym:2+spin:3"`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::new(spec.parse()?)
    }

    pub fn sym(n: usize) -> Result<Self> {
        Self::new(AlgebraKind::Sym(n))
    }

    pub fn spin(k: usize) -> Result<Self> {
        Self::new(AlgebraKind::Spin(k))
    }

    pub fn rn(k: usize) -> Result<Self> {
        Self::new(AlgebraKind::Rn(k))
    }

    pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Self> {
        Self::new(AlgebraKind::Sum(
            Box::new(a.kind().clone()),
            Box::new(b.kind().clone()),
        ))
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.0.kind
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn structure_constants(&self) -> &[f64] {
        &self.0.structure
    }

    /// Diagonal Gram weights of the trace form `(x|y) = tr(x∘y)` in coordinates.
    pub fn trace_weights(&self) -> &[f64] {
        &self.0.trace_weights
    }

    pub fn same(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }

    pub(crate) fn ensure_same(&self, other: &Algebra) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub fn unit(&self) -> Element {
        Element::from_parts(self.clone(), DVector::from_column_slice(&self.0.unit))
    }

    pub fn zero(&self) -> Element {
        Element::from_parts(self.clone(), DVector::zeros(self.dim()))
    }

    pub fn basis(&self, j: usize) -> Element {
        let mut c = DVector::zeros(self.dim());
        c[j] = 1.0;
        Element::from_parts(self.clone(), c)
    }

    pub fn element(&self, coords: &[f64]) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        Ok(Element::from_parts(
            self.clone(),
            DVector::from_column_slice(coords),
        ))
    }

    /// Symmetric matrix as an element of `sym:n`, reading only the upper triangle.
    pub fn from_symmetric(&self, rows: &[&[f64]]) -> Result<Element> {
        let AlgebraKind::Sym(n) = *self.kind() else {
            return Err(Error::InvalidArgument(format!(
                "{self} is not a symmetric-matrix algebra"
            )));
        };
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("expected a {n}x{n} matrix")));
        }
        let mut m = [0.0; MAX_SYM * MAX_SYM];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = rows[i.min(j)][i.max(j)];
            }
        }
        let mut c = vec![0.0; self.dim()];
        mat_to_sym(n, &m, &mut c);
        self.element(&c)
    }

    /// Checked Jordan product through the specialized kernel.
    pub fn jordan_product(&self, a: &Element, b: &Element) -> Result<Element> {
        self.ensure_same(a.algebra())?;
        self.ensure_same(b.algebra())?;
        Ok(a.circ(b))
    }

    /// Jordan product from the dense structure constants.
    pub fn product_generic(&self, a: &Element, b: &Element) -> Result<Element> {
        self.ensure_same(a.algebra())?;
        self.ensure_same(b.algebra())?;
        let d = self.dim();
        let c = &self.0.structure;
        let mut out = DVector::zeros(d);
        for i in 0..d {
            let ai = a.coords()[i];
            if ai == 0.0 {
                continue;
            }
            for j in 0..d {
                let w = ai * b.coords()[j];
                if w == 0.0 {
                    continue;
                }
                let base = (i * d + j) * d;
                for l in 0..d {
                    out[l] += w * c[base + l];
                }
            }
        }
        Ok(Element::from_parts(self.clone(), out))
    }

    /// Trace form `(a|b) = tr(a∘b)`.
    pub fn inner(&self, a: &Element, b: &Element) -> f64 {
        self.0
            .trace_weights
            .iter()
            .zip(a.coords().iter().zip(b.coords().iter()))
            .map(|(w, (x, y))| w * x * y)
            .sum()
    }

    /// Jordan trace (sum of eigenvalues).
    pub fn trace(&self, a: &Element) -> f64 {
        self.inner(a, &self.unit())
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.kind.fmt(f)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.0.kind)
    }
}

/// Parses an algebra specification string.
pub fn make_algebra(spec: &str) -> Result<Algebra> {
    Algebra::parse(spec)
}

pub(crate) fn sym_to_mat(n: usize, c: &[f64], m: &mut [f64]) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        m[i * n + i] = c[i];
    }
    let mut idx = n;
    for i in 0..n {
        for j in i + 1..n {
            let v = c[idx] * r;
            m[i * n + j] = v;
            m[j * n + i] = v;
            idx += 1;
        }
    }
}

/// Reads the symmetric part of `m` into coordinates.
pub(crate) fn mat_to_sym(n: usize, m: &[f64], c: &mut [f64]) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        c[i] = m[i * n + i];
    }
    let mut idx = n;
    for i in 0..n {
        for j in i + 1..n {
            c[idx] = (m[i * n + j] + m[j * n + i]) * r;
            idx += 1;
        }
    }
}

fn sym_product(n: usize, a: &[f64], b: &[f64], out: &mut [f64]) {
    let mut ma = [0.0; MAX_SYM * MAX_SYM];
    let mut mb = [0.0; MAX_SYM * MAX_SYM];
    let mut ab = [0.0; MAX_SYM * MAX_SYM];
    sym_to_mat(n, a, &mut ma);
    sym_to_mat(n, b, &mut mb);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += ma[i * n + k] * mb[k * n + j];
            }
            ab[i * n + j] = s;
        }
    }
    // ba = (ab)ᵀ for symmetric a, b, so the product is the symmetric part of ab.
    mat_to_sym(n, &ab, out);
}
