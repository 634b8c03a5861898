//! Spectral decomposition and continuous functional calculus.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{mat_to_sym, sym_to_mat, AlgebraKind, Algebra, MAX_SYM};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::gauge::GaugeFunction;

pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 50;
/// Relative gap below which eigenvalues are treated as one multiple eigenvalue.
pub const GROUPING_TOL: f64 = 1e-9;

/// Scale-aware cutoff `1e-12·(1 + max|λ|)` used for invertibility and positivity.
pub fn positivity_threshold(eigenvalues: &[f64]) -> f64 {
    let m = eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    1e-12 * (1.0 + m)
}

/// Cyclic Jacobi on a row-major symmetric `n x n` matrix.
///
/// On return the diagonal of `a` holds the eigenvalues and, if requested,
/// column `i` of `v` (row-major) is the matching unit eigenvector.
pub fn jacobi(n: usize, a: &mut [f64], mut v: Option<&mut [f64]>) -> Result<()> {
    if let Some(v) = v.as_deref_mut() {
        v[..n * n].fill(0.0);
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
    }
    let fro = a[..n * n].iter().map(|x| x * x).sum::<f64>().sqrt();
    if fro == 0.0 {
        return Ok(());
    }
    if !fro.is_finite() {
        return Err(Error::NoConvergence {
            sweeps: 0,
            off_diagonal: fro,
        });
    }
    let mut off = f64::INFINITY;
    for sweep in 0..=JACOBI_MAX_SWEEPS {
        off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        off = off.sqrt();
        if off <= JACOBI_TOL * fro || off < f64::MIN_POSITIVE {
            return Ok(());
        }
        if sweep == JACOBI_MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let gp = g - s * (h + g * tau);
                    let hq = h + s * (g - h * tau);
                    a[r * n + p] = gp;
                    a[p * n + r] = gp;
                    a[r * n + q] = hq;
                    a[q * n + r] = hq;
                }
                if let Some(v) = v.as_deref_mut() {
                    for r in 0..n {
                        let g = v[r * n + p];
                        let h = v[r * n + q];
                        v[r * n + p] = g - s * (h + g * tau);
                        v[r * n + q] = h + s * (g - h * tau);
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
        off_diagonal: off,
    })
}

/// Eigenvalues `λ_1 ≥ … ≥ λ_n` and a complete system of orthogonal primitive
/// idempotents `c_i` with `x = Σ λ_i c_i`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    alg: Algebra,
    eigenvalues: Vec<f64>,
    /// Column `i` holds the coordinates of `c_i`.
    frames: DMatrix<f64>,
}

impl Spectrum {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn idempotent(&self, i: usize) -> Element {
        Element::from_parts(self.alg.clone(), self.frames.column(i).into_owned())
    }

    pub fn idempotents(&self) -> Vec<Element> {
        (0..self.rank()).map(|i| self.idempotent(i)).collect()
    }

    pub fn threshold(&self) -> f64 {
        positivity_threshold(&self.eigenvalues)
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, l| m.max(l.abs()))
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("rank is at least one")
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `Σ f(λ_i) c_i`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Element {
        let w = DVector::from_iterator(self.rank(), self.eigenvalues.iter().map(|&l| f(l)));
        Element::from_parts(self.alg.clone(), &self.frames * w)
    }

    pub fn reconstruct(&self) -> Element {
        self.apply(|l| l)
    }

    /// Spectral projections: eigenvalues closer than `rel_tol·(1 + max|λ|)`
    /// are merged and their idempotents summed.
    pub fn grouped(&self, rel_tol: f64) -> Vec<(f64, Element)> {
        let tol = rel_tol * (1.0 + self.max_abs());
        let mut out: Vec<(f64, Element, usize)> = Vec::new();
        for i in 0..self.rank() {
            let l = self.eigenvalues[i];
            match out.last_mut() {
                Some((mean, proj, count)) if (*mean - l).abs() <= tol => {
                    *mean = (*mean * *count as f64 + l) / (*count as f64 + 1.0);
                    *proj += &self.idempotent(i);
                    *count += 1;
                }
                _ => out.push((l, self.idempotent(i), 1)),
            }
        }
        out.into_iter().map(|(l, p, _)| (l, p)).collect()
    }

    /// Eigenvalues ordered by modulus, decreasing, ties broken by signed value.
    pub fn gauge_ordered(&self) -> Vec<f64> {
        gauge_order(&self.eigenvalues)
    }
}

pub(crate) fn gauge_order(eigenvalues: &[f64]) -> Vec<f64> {
    let mut v = eigenvalues.to_vec();
    v.sort_by(|a, b| b.abs().total_cmp(&a.abs()).then(b.total_cmp(a)));
    v
}

fn push_sym(n: usize, coords: &[f64], offset: usize, d: usize, out: &mut Vec<(f64, DVector<f64>)>) -> Result<()> {
    let mut a = [0.0; MAX_SYM * MAX_SYM];
    let mut v = [0.0; MAX_SYM * MAX_SYM];
    sym_to_mat(n, coords, &mut a);
    jacobi(n, &mut a, Some(&mut v))?;
    let mut proj = [0.0; MAX_SYM * MAX_SYM];
    let mut c = [0.0; MAX_SYM * (MAX_SYM + 1) / 2];
    let local = n * (n + 1) / 2;
    for i in 0..n {
        for r in 0..n {
            for s in 0..n {
                proj[r * n + s] = v[r * n + i] * v[s * n + i];
            }
        }
        mat_to_sym(n, &proj, &mut c);
        let mut full = DVector::zeros(d);
        full.rows_mut(offset, local).copy_from_slice(&c[..local]);
        out.push((a[i * n + i], full));
    }
    Ok(())
}

fn push_spin(coords: &[f64], offset: usize, d: usize, out: &mut Vec<(f64, DVector<f64>)>) {
    let k = coords.len();
    let r = coords[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut u = vec![0.0; k - 1];
    if r > 0.0 {
        for (ui, xi) in u.iter_mut().zip(&coords[1..]) {
            *ui = xi / r;
        }
    } else {
        u[0] = 1.0;
    }
    for sign in [1.0, -1.0] {
        let mut full = DVector::zeros(d);
        full[offset] = 0.5;
        for (i, ui) in u.iter().enumerate() {
            full[offset + 1 + i] = 0.5 * sign * ui;
        }
        out.push((coords[0] + sign * r, full));
    }
}

fn push_parts(kind: &AlgebraKind, coords: &[f64], offset: usize, d: usize, out: &mut Vec<(f64, DVector<f64>)>) -> Result<()> {
    match kind {
        AlgebraKind::Sym(n) => push_sym(*n, coords, offset, d, out)?,
        AlgebraKind::Spin(_) => push_spin(coords, offset, d, out),
        AlgebraKind::Rn(k) => {
            for i in 0..*k {
                let mut full = DVector::zeros(d);
                full[offset + i] = 1.0;
                out.push((coords[i], full));
            }
        }
        AlgebraKind::Sum(a, b) => {
            let da = a.dim();
            push_parts(a, &coords[..da], offset, d, out)?;
            push_parts(b, &coords[da..], offset + da, d, out)?;
        }
    }
    Ok(())
}

fn eigenvalues_into(kind: &AlgebraKind, coords: &[f64], out: &mut Vec<f64>) -> Result<()> {
    match kind {
        AlgebraKind::Sym(n) => {
            let mut a = [0.0; MAX_SYM * MAX_SYM];
            sym_to_mat(*n, coords, &mut a);
            jacobi(*n, &mut a, None)?;
            out.extend((0..*n).map(|i| a[i * n + i]));
        }
        AlgebraKind::Spin(_) => {
            let r = coords[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
            out.push(coords[0] + r);
            out.push(coords[0] - r);
        }
        AlgebraKind::Rn(_) => out.extend_from_slice(coords),
        AlgebraKind::Sum(a, b) => {
            let da = a.dim();
            eigenvalues_into(a, &coords[..da], out)?;
            eigenvalues_into(b, &coords[da..], out)?;
        }
    }
    Ok(())
}

pub fn spectral_decompose(x: &Element) -> Result<Spectrum> {
    let alg = x.algebra().clone();
    let d = alg.dim();
    let mut parts = Vec::with_capacity(alg.rank());
    push_parts(alg.kind(), x.coords().as_slice(), 0, d, &mut parts)?;
    parts.sort_by(|a, b| b.0.total_cmp(&a.0));
    let eigenvalues = parts.iter().map(|p| p.0).collect();
    let cols: Vec<_> = parts.into_iter().map(|p| p.1).collect();
    Ok(Spectrum {
        alg,
        eigenvalues,
        frames: DMatrix::from_columns(&cols),
    })
}

/// `Σ f(λ_i) c_i` for the spectral decomposition of `x`.
pub fn functional_calculus(x: &Element, f: impl Fn(f64) -> f64) -> Result<Element> {
    Ok(spectral_decompose(x)?.apply(f))
}

fn require_positive(s: &Spectrum, op: &'static str) -> Result<()> {
    let threshold = s.threshold();
    let min = s.min();
    if min > threshold {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            eigenvalue: min,
            threshold,
        })
    }
}

fn require_invertible(s: &Spectrum) -> Result<()> {
    let threshold = s.threshold();
    let worst = s
        .eigenvalues
        .iter()
        .copied()
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
        .expect("rank is at least one");
    if worst.abs() > threshold {
        Ok(())
    } else {
        Err(Error::Singular {
            eigenvalue: worst,
            threshold,
        })
    }
}

impl Spectrum {
    pub fn exp(&self) -> Element {
        self.apply(f64::exp)
    }

    pub fn log(&self) -> Result<Element> {
        require_positive(self, "log")?;
        Ok(self.apply(f64::ln))
    }

    pub fn sqrt(&self) -> Result<Element> {
        require_positive(self, "sqrt")?;
        Ok(self.apply(f64::sqrt))
    }

    pub fn inv_sqrt(&self) -> Result<Element> {
        require_positive(self, "inverse square root")?;
        Ok(self.apply(|l| 1.0 / l.sqrt()))
    }

    pub fn inverse(&self) -> Result<Element> {
        require_invertible(self)?;
        Ok(self.apply(|l| 1.0 / l))
    }

    pub fn powf(&self, p: f64) -> Result<Element> {
        require_positive(self, "power")?;
        Ok(self.apply(|l| l.powf(p)))
    }
}

impl Spectrum {
    /// Directional derivative of `y ↦ f(y)` at the decomposed element in
    /// direction `h`, through the Peirce decomposition of the Jordan frame:
    /// `Σ_i f'(λ_i) U_{c_i}h + Σ_{i<j} f[λ_i,λ_j]·4c_i∘(c_j∘h)`.
    pub fn frechet(
        &self,
        f: impl Fn(f64) -> f64,
        df: impl Fn(f64) -> f64,
        h: &Element,
    ) -> Element {
        let c = self.idempotents();
        let l = &self.eigenvalues;
        let mut out = self.alg.zero();
        for i in 0..c.len() {
            out += &(c[i].u_apply(h) * df(l[i]));
            for j in i + 1..c.len() {
                let dd = if (l[i] - l[j]).abs() <= 1e-9 * (1.0 + l[i].abs().max(l[j].abs())) {
                    df(0.5 * (l[i] + l[j]))
                } else {
                    (f(l[i]) - f(l[j])) / (l[i] - l[j])
                };
                out += &(c[i].circ(&c[j].circ(h)) * (4.0 * dd));
            }
        }
        out
    }

    /// Derivative of `exp` with a cancellation-free divided difference.
    pub fn exp_frechet(&self, h: &Element) -> Element {
        let c = self.idempotents();
        let l = &self.eigenvalues;
        let mut out = self.alg.zero();
        for i in 0..c.len() {
            out += &(c[i].u_apply(h) * l[i].exp());
            for j in i + 1..c.len() {
                let (a, b) = (l[i].max(l[j]), l[i].min(l[j]));
                let dd = if a == b {
                    a.exp()
                } else {
                    b.exp() * (a - b).exp_m1() / (a - b)
                };
                out += &(c[i].circ(&c[j].circ(h)) * (4.0 * dd));
            }
        }
        out
    }
}

impl Element {
    pub fn spectrum(&self) -> Result<Spectrum> {
        spectral_decompose(self)
    }

    /// Eigenvalues in decreasing order, without computing idempotents.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.algebra().rank());
        eigenvalues_into(self.algebra().kind(), self.coords().as_slice(), &mut out)?;
        out.sort_by(|a, b| b.total_cmp(a));
        Ok(out)
    }

    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<Element> {
        functional_calculus(self, f)
    }

    pub fn exp(&self) -> Result<Element> {
        Ok(self.spectrum()?.exp())
    }

    pub fn log(&self) -> Result<Element> {
        self.spectrum()?.log()
    }

    pub fn sqrt(&self) -> Result<Element> {
        self.spectrum()?.sqrt()
    }

    pub fn inv_sqrt(&self) -> Result<Element> {
        self.spectrum()?.inv_sqrt()
    }

    pub fn inverse(&self) -> Result<Element> {
        self.spectrum()?.inverse()
    }

    pub fn powf(&self, p: f64) -> Result<Element> {
        self.spectrum()?.powf(p)
    }

    /// Spectral sign with `sign(0) = +1`; always a symmetry (`s² = 1`).
    pub fn sign(&self) -> Result<Element> {
        Ok(self.spectrum()?.apply(|l| if l >= 0.0 { 1.0 } else { -1.0 }))
    }

    pub fn is_invertible(&self) -> Result<bool> {
        let e = self.eigenvalues()?;
        let t = positivity_threshold(&e);
        Ok(e.iter().all(|l| l.abs() > t))
    }

    /// Membership in the open positive cone: every eigenvalue above the threshold.
    pub fn in_cone(&self) -> bool {
        match self.eigenvalues() {
            Ok(e) => *e.last().unwrap() > positivity_threshold(&e),
            Err(_) => false,
        }
    }

    /// Order-unit norm `inf{λ > 0 : −λ1 ≤ x ≤ λ1}`, i.e. the spectral sup norm.
    pub fn jb_norm(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().fold(0.0, |m, l| m.max(l.abs())))
    }

    pub fn gauge_norm(&self, phi: &GaugeFunction) -> Result<f64> {
        Ok(phi.apply_ordered(&gauge_order(&self.eigenvalues()?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{algebra_and_coords, SPECS};
    use proptest::prelude::*;

    fn diag2(a: f64, b: f64) -> Element {
        Algebra::sym(2).unwrap().element(&[a, b, 0.0]).unwrap()
    }

    #[test]
    fn unit_has_unit_eigenvalues() {
        for spec in SPECS {
            let alg = Algebra::parse(spec).unwrap();
            assert!(alg.unit().eigenvalues().unwrap().iter().all(|l| (l - 1.0).abs() < 1e-15));
        }
    }

    #[test]
    fn spin_closed_form() {
        let alg = Algebra::spin(3).unwrap();
        let x = alg.element(&[2.0, 1.0, 0.0]).unwrap();
        assert_eq!(x.eigenvalues().unwrap(), vec![3.0, 1.0]);
        let inv = x.inverse().unwrap();
        let want = alg.element(&[2.0 / 3.0, -1.0 / 3.0, 0.0]).unwrap();
        assert!(inv.distance(&want) < 1e-15);
    }

    #[test]
    fn sym_offdiagonal_eigenvalues() {
        let alg = Algebra::sym(2).unwrap();
        let x = alg.from_symmetric(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = x.eigenvalues().unwrap();
        assert!((e[0] - 1.0).abs() < 1e-15 && (e[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_calculus() {
        assert!(diag2(4.0, 9.0).sqrt().unwrap().distance(&diag2(2.0, 3.0)) < 1e-15);
        assert!(diag2(2.0, 3.0).inverse().unwrap().distance(&diag2(0.5, 1.0 / 3.0)) < 1e-16);
        assert_eq!(diag2(2.0, -3.0).jb_norm().unwrap(), 3.0);
        assert_eq!(diag2(2.0, -3.0).gauge_norm(&GaugeFunction::lp(1.0).unwrap()).unwrap(), 5.0);
        let z = Algebra::sym(2).unwrap().zero();
        assert!(z.exp().unwrap().distance(&z.algebra().unit()) < 1e-16);
    }

    #[test]
    fn domain_errors_report_eigenvalue() {
        let err = diag2(1.0, -1.0).log().unwrap_err();
        assert!(matches!(err, Error::Domain { op: "log", eigenvalue, .. } if eigenvalue == -1.0));
        assert!(matches!(diag2(1.0, 0.0).inverse(), Err(Error::Singular { .. })));
        assert!(!diag2(1.0, -1.0).in_cone());
        assert!(diag2(1.0, 1e-3).in_cone());
    }

    #[test]
    fn jacobi_matches_nalgebra() {
        let mut state = 7_u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for n in 1..=MAX_SYM {
            let mut a = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let x = next();
                    a[i * n + j] = x;
                    a[j * n + i] = x;
                }
            }
            let oracle = DMatrix::from_row_slice(n, n, &a).symmetric_eigen();
            let mut want: Vec<f64> = oracle.eigenvalues.iter().copied().collect();
            want.sort_by(|x, y| y.total_cmp(x));
            let mut v = vec![0.0; n * n];
            jacobi(n, &mut a, Some(&mut v)).unwrap();
            let mut got: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            got.sort_by(|x, y| y.total_cmp(x));
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-14, "n={n}: {g} vs {w}");
            }
            let vm = DMatrix::from_row_slice(n, n, &v);
            assert!((vm.transpose() * &vm - DMatrix::identity(n, n)).amax() < 1e-14);
        }
    }

    #[test]
    fn repeated_eigenvalues_group() {
        let alg = Algebra::sym(3).unwrap();
        let x = alg.element(&[2.0, 2.0, 5.0, 0.0, 0.0, 0.0]).unwrap();
        let g = x.spectrum().unwrap().grouped(GROUPING_TOL);
        assert_eq!(g.len(), 2);
        assert!((g[1].0 - 2.0).abs() < 1e-15);
        assert!((g[1].1.trace() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauge_order_breaks_ties_by_sign() {
        assert_eq!(gauge_order(&[1.0, -3.0, 3.0, -1.0]), vec![3.0, -3.0, 1.0, -1.0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn exp_derivative_matches_block_exponential((alg, c) in algebra_and_coords(1.0), seed in any::<u64>()) {
            let x = alg.element(&c).unwrap();
            let h = crate::random::random_element(&alg, seed, 1.0);
            let lx = crate::linop::LinOp::l_op(&x);
            let lh = crate::linop::LinOp::l_op(&h);
            // exp(x) = e^{L_x}(1), so its derivative is the Fréchet derivative of e^{L} applied to 1
            let (_, dl) = crate::linop::expm_frechet(lx.matrix(), lh.matrix());
            let want = alg.element((dl * alg.unit().coords()).as_slice()).unwrap();
            let s = x.spectrum().unwrap();
            prop_assert!(s.exp_frechet(&h).distance(&want) < 1e-11 * want.coord_norm().max(1.0));
            prop_assert!(s.frechet(f64::exp, f64::exp, &h).distance(&want) < 1e-9 * want.coord_norm().max(1.0));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn spectrum_invariants((alg, c) in algebra_and_coords(3.0)) {
            let x = alg.element(&c).unwrap();
            let s = x.spectrum().unwrap();
            prop_assert!(s.reconstruct().distance(&x) < 1e-8);
            let idem = s.idempotents();
            let mut sum = alg.zero();
            for (i, ci) in idem.iter().enumerate() {
                sum += ci;
                for (j, cj) in idem.iter().enumerate() {
                    let want = if i == j { ci.clone() } else { alg.zero() };
                    prop_assert!(ci.circ(cj).distance(&want) < 1e-8);
                }
            }
            prop_assert!(sum.distance(&alg.unit()) < 1e-8);
            prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn log_inverts_exp((alg, c) in algebra_and_coords(2.0 / 6.0)) {
            let x = alg.element(&c).unwrap();
            let y = x.exp().unwrap();
            prop_assert!(y.in_cone());
            prop_assert!(y.log().unwrap().distance(&x) < 1e-9);
        }

        #[test]
        fn inverse_agrees_with_u_criterion((alg, c) in algebra_and_coords(3.0)) {
            let x = alg.element(&c).unwrap();
            prop_assume!(x.eigenvalues().unwrap().iter().all(|l| l.abs() > 0.1));
            let inv = x.inverse().unwrap();
            let scale = x.jb_norm().unwrap().max(1.0);
            prop_assert!(x.u_apply(&inv).distance(&x) < 1e-9 * scale);
            prop_assert!(x.u_apply(&inv.square()).distance(&alg.unit()) < 1e-9 * scale);
        }

        #[test]
        fn jb_norm_axioms((alg, c) in algebra_and_coords(3.0), seed in any::<u64>()) {
            let x = alg.element(&c).unwrap();
            let y = crate::random::random_element(&alg, seed, 1.0);
            let nx = x.jb_norm().unwrap();
            let ny = y.jb_norm().unwrap();
            let x2 = x.square();
            prop_assert!(x.circ(&y).jb_norm().unwrap() <= nx * ny * (1.0 + 1e-12) + 1e-12);
            prop_assert!((x2.jb_norm().unwrap() - nx * nx).abs() <= 1e-10 * (1.0 + nx * nx));
            prop_assert!(x2.jb_norm().unwrap() <= (&x2 + &y.square()).jb_norm().unwrap() * (1.0 + 1e-12) + 1e-12);
        }
    }
}
