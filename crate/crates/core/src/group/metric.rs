use super::element::GroupElement;
use crate::error::{Error, Result};
use crate::linop::LinOp;
use crate::opnorm::{op_norm, op_norm_with, OpNormEstimate, OpNormOptions};
use crate::structure::{dagger, split_str};

/// Restarts of the operator-norm search used for path speeds.
pub const PATH_OPNORM_STARTS: usize = 8;

/// `⟨L_x + D, L_y + D̃⟩ = Tr(L_xL_y) − Tr(DD̃)` on bodies in `str`.
pub fn euclidean_inner(v: &LinOp, w: &LinOp) -> Result<f64> {
    let (sv, sw) = (split_str(v), split_str(w));
    sv.gate()?;
    sw.gate()?;
    Ok((sv.l_op() * sw.l_op()).trace() - (&sv.der_part * &sw.der_part).trace())
}

/// Left-invariant metric at `g` on tangent vectors `gV`, `gW`.
pub fn euclidean_metric(g: &GroupElement, gv: &LinOp, gw: &LinOp) -> Result<f64> {
    euclidean_inner(&(g.inverse() * gv), &(g.inverse() * gw))
}

/// Body of the covariant derivative along a path with body velocity `v` of
/// the field with body `x`: `x' − ½([x, v] + [v†, x] + [x†, v])`.
pub fn covariant_derivative_body(v: &LinOp, x: &LinOp, x_dot: &LinOp) -> Result<LinOp> {
    let (vd, xd) = (dagger(v)?, dagger(x)?);
    Ok(x_dot - (x.commutator(v) + vd.commutator(x) + xd.commutator(v)) * 0.5)
}

/// `‖H‖_g = ‖g⁻¹H‖`.
pub fn finsler_norm_at(g: &GroupElement, h: &LinOp) -> OpNormEstimate {
    op_norm(&(g.inverse() * h))
}

fn speed(g: &LinOp, dg: &LinOp) -> Result<f64> {
    let opts = OpNormOptions {
        starts: PATH_OPNORM_STARTS,
        ..OpNormOptions::default()
    };
    let body = g.inverse()? * dg;
    Ok(op_norm_with(&body, &opts).estimate)
}

/// A group path sampled on a uniform grid of `[0, 1]` with derivatives.
#[derive(Clone, Debug)]
pub struct GroupPath {
    pub grid: Vec<f64>,
    pub points: Vec<LinOp>,
    pub derivatives: Vec<LinOp>,
}

impl GroupPath {
    pub fn from_fn(f: impl Fn(f64) -> Result<(LinOp, LinOp)>, intervals: usize) -> Result<Self> {
        if intervals == 0 || intervals % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "need an even, positive number of intervals, got {intervals}"
            )));
        }
        let grid: Vec<f64> = (0..=intervals).map(|i| i as f64 / intervals as f64).collect();
        let (points, derivatives) = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?.into_iter().unzip();
        Ok(GroupPath {
            grid,
            points,
            derivatives,
        })
    }

    /// `‖γ(t)⁻¹γ'(t)‖` at each grid time.
    pub fn speeds(&self) -> Result<Vec<f64>> {
        self.points.iter().zip(&self.derivatives).map(|(g, dg)| speed(g, dg)).collect()
    }
}

/// Simpson quadrature of the estimated Finsler speed.
pub fn group_path_length(path: &GroupPath) -> Result<f64> {
    let s = path.speeds()?;
    Ok(crate::quadrature::simpson(&s, 1.0 / (s.len() - 1) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::random::Sampler;
    use crate::testutil::algebra_and_seed;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let alg = Algebra::sym(3).unwrap();
        let one = alg.unit();
        let l1 = LinOp::l_op(&one);
        assert!((euclidean_inner(&l1, &l1).unwrap() - 6.0).abs() < 1e-12);
        let g = GroupElement::exp(&LinOp::l_op(&Sampler::new(2).element(&alg, 0.5)));
        let r = finsler_norm_at(&g, g.op());
        assert!((r.estimate - 1.0).abs() < 1e-12);

        let v = Sampler::new(5).element(&alg, 1.0);
        let lv = LinOp::l_op(&v);
        let path = GroupPath::from_fn(|t| {
            let e = (&lv * t).exp();
            Ok((e.clone(), &e * &lv))
        }, 64).unwrap();
        let want = v.jb_norm().unwrap();
        assert!((group_path_length(&path).unwrap() - want).abs() < 1e-6 * want);
    }

    #[test]
    fn aut_path_length_is_norm_of_d() {
        let alg = Algebra::spin(4).unwrap();
        let d = Sampler::new(6).derivation(&alg, 2, 0.3);
        let path = GroupPath::from_fn(|t| {
            let e = (&d * t).exp();
            Ok((e.clone(), &e * &d))
        }, 32).unwrap();
        let want = op_norm(&d).estimate;
        assert!((group_path_length(&path).unwrap() - want).abs() < 1e-9 * want);
    }

    fn poly(c: &[LinOp], t: f64) -> (LinOp, LinOp) {
        let mut x = LinOp::zeros(c[0].algebra());
        let mut dx = x.clone();
        for (k, ck) in c.iter().enumerate() {
            x += &(ck * t.powi(k as i32));
            if k > 0 {
                dx += &(ck * (k as f64 * t.powi(k as i32 - 1)));
            }
        }
        (x, dx)
    }

    fn random_str(s: &mut Sampler, alg: &Algebra) -> LinOp {
        LinOp::l_op(&s.element(alg, 1.0)) + s.derivation(alg, 2, 1.0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn positive_definite((alg, seed) in algebra_and_seed()) {
            let mut s = Sampler::new(seed);
            let v = random_str(&mut s, &alg);
            prop_assert!(euclidean_inner(&v, &v).unwrap() > 0.0);
            let d = s.derivation(&alg, 2, 1.0);
            prop_assert!(-(&d * &d).trace() >= 0.0);
            let x = s.element(&alg, 1.0);
            let c = euclidean_inner(&LinOp::l_op(&x), &d).unwrap();
            prop_assert!(c.abs() < 1e-12 * (LinOp::l_op(&x).frobenius() * d.frobenius()).max(1.0));
            prop_assert!((&LinOp::l_op(&x) * &d).trace().abs() < 1e-12 * (LinOp::l_op(&x).frobenius() * d.frobenius()).max(1.0));
        }

        #[test]
        fn metric_compatibility((alg, seed) in algebra_and_seed(), t in 0.1..0.9f64) {
            let mut s = Sampler::new(seed);
            let cv: Vec<LinOp> = (0..3).map(|_| random_str(&mut s, &alg)).collect();
            let cx: Vec<LinOp> = (0..3).map(|_| random_str(&mut s, &alg)).collect();
            let cy: Vec<LinOp> = (0..3).map(|_| random_str(&mut s, &alg)).collect();
            let h = 1e-5;
            let m = |t: f64| euclidean_inner(&poly(&cx, t).0, &poly(&cy, t).0).unwrap();
            let lhs = (m(t + h) - m(t - h)) / (2.0 * h);
            let v = poly(&cv, t).0;
            let (x, dx) = poly(&cx, t);
            let (y, dy) = poly(&cy, t);
            let rhs = euclidean_inner(&covariant_derivative_body(&v, &x, &dx).unwrap(), &y).unwrap()
                + euclidean_inner(&x, &covariant_derivative_body(&v, &y, &dy).unwrap()).unwrap();
            let scale = x.frobenius() * y.frobenius() * (1.0 + v.frobenius()) + dx.frobenius() * y.frobenius();
            prop_assert!((lhs - rhs).abs() < 2e-6 * scale.max(1.0), "{lhs} vs {rhs}");
        }

        #[test]
        fn finsler_invariances((alg, seed) in algebra_and_seed()) {
            let mut s = Sampler::new(seed);
            let g = GroupElement::exp(&random_str(&mut s, &alg));
            let f = GroupElement::exp(&random_str(&mut s, &alg));
            let h = g.op() * &random_str(&mut s, &alg);
            let a = finsler_norm_at(&g, &h);
            let b = finsler_norm_at(&f.compose(&g), &(f.op() * &h));
            prop_assert!((a.estimate - b.estimate).abs() < 1e-6 * a.estimate.max(1.0));
            let k = GroupElement::exp(&s.derivation(&alg, 2, 1.0));
            let c = finsler_norm_at(&g.compose(&k), &(&h * k.op()));
            prop_assert!(c.estimate >= a.lower_bound * (1.0 - 1e-3) && a.estimate >= c.lower_bound * (1.0 - 1e-3));
        }
    }
}
