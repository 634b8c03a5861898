use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::cone::{geodesic_between, velocity_norms, thompson_distance, ConePoint, SampledPath};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::gauge::GaugeFunction;
use crate::linop::LinOp;
use crate::opnorm::{op_norm_with, OpNormOptions};
use crate::quadrature::simpson;
use crate::structure::automorphism_residual;

use super::metric::PATH_OPNORM_STARTS;

pub const LIFT_STEPS: usize = 1000;
/// Residual beyond which integration is aborted.
pub const LIFT_ABORT_TOL: f64 = 1e-3;

/// A horizontal lift `Λ_t = U_{γ_t^{1/2}} k_t` sampled on the RK4 grid.
#[derive(Clone, Debug)]
pub struct LiftResult {
    pub grid: Vec<f64>,
    pub lift: Vec<LinOp>,
    pub automorphisms: Vec<LinOp>,
    pub automorphism_residuals: Vec<f64>,
    /// `‖der-part of Λ⁻¹Λ'‖_F / max(1, ‖Λ⁻¹Λ'‖_F)`.
    pub horizontality_residuals: Vec<f64>,
    /// `‖Λ_t(1) − γ_t‖ / ‖γ_t‖`.
    pub base_residuals: Vec<f64>,
    pub speeds: Vec<f64>,
    pub length: f64,
    /// Order-norm length of the base path on the same grid.
    pub base_length: f64,
}

impl LiftResult {
    /// CSV `t,horizontality_residual,automorphism_residual,speed_estimate`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,horizontality_residual,automorphism_residual,speed_estimate\n");
        for i in 0..self.grid.len() {
            writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                self.grid[i], self.horizontality_residuals[i], self.automorphism_residuals[i], self.speeds[i]
            )
            .unwrap();
        }
        s
    }

    pub fn max_horizontality_residual(&self) -> f64 {
        self.horizontality_residuals.iter().fold(0.0, |m, &r| m.max(r))
    }

    pub fn max_automorphism_residual(&self) -> f64 {
        self.automorphism_residuals.iter().fold(0.0, |m, &r| m.max(r))
    }

    pub fn max_base_residual(&self) -> f64 {
        self.base_residuals.iter().fold(0.0, |m, &r| m.max(r))
    }
}

struct Frame {
    gamma: Element,
    s: Element,
    s_dot: Element,
    velocity: Element,
    /// `2[L_{s'}, L_{s⁻¹}]`
    generator: DMatrix<f64>,
}

fn frame(gamma: Element, velocity: Element) -> Result<Frame> {
    let sp = gamma.spectrum()?;
    if sp.min() <= sp.threshold() {
        return Err(Error::NotInCone {
            min_eigenvalue: sp.min(),
        });
    }
    let s = sp.apply(f64::sqrt);
    let s_inv = sp.apply(|l| 1.0 / l.sqrt());
    let s_dot = sp.frechet(f64::sqrt, |l| 0.5 / l.sqrt(), &velocity);
    let generator = (LinOp::l_op(&s_dot).commutator(&LinOp::l_op(&s_inv)) * 2.0).into_matrix();
    Ok(Frame {
        gamma,
        s,
        s_dot,
        velocity,
        generator,
    })
}

/// Horizontal lift of `t ↦ γ(t)` on `[0, 1]` starting at `U_{γ_0^{1/2}}`,
/// from the transport `k' = 2[L_{(γ^{1/2})'}, L_{γ^{-1/2}}] k`, `k_0 = 1`,
/// integrated by RK4 with `steps` (even) steps; `curve(t) = (γ(t), γ'(t))`.
pub fn horizontal_lift(curve: impl Fn(f64) -> Result<(Element, Element)>, steps: usize) -> Result<LiftResult> {
    let samples = (0..=2 * steps)
        .map(|i| curve(i as f64 / (2 * steps) as f64))
        .collect::<Result<Vec<_>>>()?;
    lift_samples(samples, steps)
}

/// Horizontal lift of a sampled cone path with `2N` intervals, integrated
/// with `N` RK4 steps that take their midpoints from the odd samples.
pub fn horizontal_lift_path(path: &SampledPath) -> Result<LiftResult> {
    let n = path.intervals();
    if !n.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "lifting needs a multiple of 4 intervals, got {n}"
        )));
    }
    let samples = path
        .points()
        .iter()
        .cloned()
        .zip(path.derivatives().iter().cloned())
        .collect();
    lift_samples(samples, n / 2)
}

fn lift_samples(samples: Vec<(Element, Element)>, steps: usize) -> Result<LiftResult> {
    if steps == 0 || steps % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "need an even, positive number of steps, got {steps}"
        )));
    }
    let frames = samples
        .into_iter()
        .map(|(g, v)| frame(g, v))
        .collect::<Result<Vec<_>>>()?;
    let alg = frames[0].gamma.algebra().clone();
    let dim = alg.dim();
    let h = 1.0 / steps as f64;

    let mut k = DMatrix::<f64>::identity(dim, dim);
    let mut ks = Vec::with_capacity(steps + 1);
    ks.push(k.clone());
    for i in 0..steps {
        let (a0, am, a1) = (&frames[2 * i].generator, &frames[2 * i + 1].generator, &frames[2 * i + 2].generator);
        let k1 = a0 * &k;
        let k2 = am * (&k + &k1 * (0.5 * h));
        let k3 = am * (&k + &k2 * (0.5 * h));
        let k4 = a1 * (&k + &k3 * h);
        k += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        ks.push(k.clone());
    }

    let opts = OpNormOptions {
        starts: PATH_OPNORM_STARTS,
        ..OpNormOptions::default()
    };
    let mut out = LiftResult {
        grid: Vec::with_capacity(steps + 1),
        lift: Vec::with_capacity(steps + 1),
        automorphisms: Vec::with_capacity(steps + 1),
        automorphism_residuals: Vec::with_capacity(steps + 1),
        horizontality_residuals: Vec::with_capacity(steps + 1),
        base_residuals: Vec::with_capacity(steps + 1),
        speeds: Vec::with_capacity(steps + 1),
        length: 0.0,
        base_length: 0.0,
    };
    let mut base_speeds = Vec::with_capacity(steps + 1);
    let one = alg.unit();
    for (i, km) in ks.into_iter().enumerate() {
        let t = i as f64 * h;
        let f = &frames[2 * i];
        let k = LinOp::from_matrix(&alg, km)?;
        let us = LinOp::u_op(&f.s);
        let lam = &us * &k;
        let lam_dot = LinOp::u_bilinear(&f.s, &f.s_dot) * &k * 2.0
            + &us * &LinOp::from_matrix(&alg, &f.generator * k.matrix())?;
        let body = lam.inverse()? * &lam_dot;
        let der = &body - LinOp::l_op(&body.apply(&one));
        let horizontality = der.frobenius() / body.frobenius().max(1.0);
        let aut = automorphism_residual(&k);
        for residual in [horizontality, aut] {
            if residual.is_nan() || residual > LIFT_ABORT_TOL {
                return Err(Error::LiftDiverged {
                    time: t,
                    residual,
                    tolerance: LIFT_ABORT_TOL,
                });
            }
        }
        out.base_residuals.push(lam.apply(&one).distance(&f.gamma) / f.gamma.coord_norm());
        out.speeds.push(op_norm_with(&body, &opts).estimate);
        base_speeds.push(velocity_norms(&f.gamma, &f.velocity, &[GaugeFunction::Sup])?[0]);
        out.grid.push(t);
        out.lift.push(lam);
        out.automorphisms.push(k);
        out.automorphism_residuals.push(aut);
        out.horizontality_residuals.push(horizontality);
    }
    out.length = simpson(&out.speeds, h);
    out.base_length = simpson(&base_speeds, h);
    Ok(out)
}

/// Horizontal lift of the cone geodesic from `x` to `y`, which in closed
/// form is `U_{x^{1/2}} e^{tL_z}` with `z = log(U_{x^{-1/2}} y)`.
pub fn geodesic_lift(x: &ConePoint, y: &ConePoint, steps: usize) -> Result<LiftResult> {
    let z = x.u_inv_sqrt(y.point()).log()?;
    horizontal_lift(
        |t| {
            let g = geodesic_between(x, y, t)?;
            let v = x.u_sqrt(&z.circ(&(&z * t).exp()?));
            Ok((g.into_point(), v))
        },
        steps,
    )
}

/// Two-sided bounds on the quotient distance between `x` and `y`: the
/// Thompson distance below, and the length of the horizontal lift of the
/// cone geodesic above.
pub fn quotient_distance_bounds(x: &ConePoint, y: &ConePoint) -> Result<(f64, f64)> {
    Ok((thompson_distance(x, y)?, geodesic_lift(x, y, LIFT_STEPS)?.length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::cone::{geodesic, geodesic_velocity, SinePerturbation};
    use crate::random::Sampler;
    use crate::testutil::algebra_and_seed;
    use proptest::prelude::*;

    #[test]
    fn geodesic_from_unit_has_trivial_transport() {
        let alg = Algebra::sym(3).unwrap();
        let v = Sampler::new(2).element(&alg, 0.7);
        let r = horizontal_lift(|t| Ok(((&v * t).exp()?, v.circ(&(&v * t).exp()?))), 200).unwrap();
        let id = LinOp::identity(&alg);
        for (i, k) in r.automorphisms.iter().enumerate() {
            assert!(k.distance(&id) < 1e-8);
            let want = (LinOp::l_op(&v) * r.grid[i]).exp();
            assert!(r.lift[i].distance(&want) < 1e-8);
        }
        assert!((r.length - v.jb_norm().unwrap()).abs() < 1e-9);
    }

    #[test]
    fn constant_path_has_constant_lift() {
        let alg = Algebra::spin(4).unwrap();
        let p = Sampler::new(3).positive(&alg, 0.5);
        let r = horizontal_lift(|_| Ok((p.clone(), alg.zero())), 20).unwrap();
        assert!(r.lift.iter().all(|l| l.distance(&r.lift[0]) == 0.0));
        assert_eq!(r.length, 0.0);
        assert!(r.to_csv().starts_with("t,horizontality_residual,automorphism_residual,speed_estimate\n"));
    }

    #[test]
    fn bounds_examples() {
        let alg = Algebra::sym(2).unwrap();
        let x = ConePoint::new(Sampler::new(4).positive(&alg, 0.5)).unwrap();
        let (lo, hi) = quotient_distance_bounds(&x, &x).unwrap();
        assert!(lo < 1e-14 && hi < 1e-14);
        let v = Sampler::new(5).element(&alg, 0.5);
        let y = ConePoint::exp(&v).unwrap();
        let (lo, hi) = quotient_distance_bounds(&ConePoint::unit(&alg), &y).unwrap();
        let n = v.jb_norm().unwrap();
        assert!((lo - n).abs() < 1e-12 && (hi - n).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn geodesic_lift_closed_form((alg, seed) in algebra_and_seed()) {
            let mut s = Sampler::new(seed);
            let p = ConePoint::new(s.positive(&alg, 0.5)).unwrap();
            let v = s.element(&alg, 0.5);
            let z = p.u_inv_sqrt(&v);
            let r = horizontal_lift(|t| Ok((geodesic(&p, &v, t)?.into_point(), geodesic_velocity(&p, &v, t)?)), 200).unwrap();
            let up = LinOp::u_op(p.sqrt());
            for (i, lam) in r.lift.iter().enumerate() {
                let want = &up * &(LinOp::l_op(&z) * r.grid[i]).exp();
                prop_assert!(lam.distance(&want) < 1e-6 * want.amax());
            }
        }

        #[test]
        fn random_path_lift_is_horizontal_and_isometric((alg, seed) in algebra_and_seed()) {
            let mut s = Sampler::new(seed);
            let p = ConePoint::new(s.positive(&alg, 0.4)).unwrap();
            let z = s.element(&alg, 0.6);
            let pert = SinePerturbation::random(&mut s, &z).unwrap();
            let r = horizontal_lift(|t| pert.cone_path(&p, &z, t), 400).unwrap();
            prop_assert!(r.max_horizontality_residual() < 1e-6);
            prop_assert!(r.max_automorphism_residual() < 1e-6);
            prop_assert!(r.max_base_residual() < 1e-7);
            prop_assert!((r.length - r.base_length).abs() < 1e-5 * r.base_length.max(1.0));
            let path = SampledPath::analytic(|t| Ok(pert.cone_path(&p, &z, t)?.0), |t| Ok(pert.cone_path(&p, &z, t)?.1), 800).unwrap();
            let q = horizontal_lift_path(&path).unwrap();
            prop_assert!(q.lift[400].distance(&r.lift[400]) < 1e-12 * r.lift[400].amax());
        }

        #[test]
        fn body_matches_closed_form((alg, seed) in algebra_and_seed()) {
            let mut s = Sampler::new(seed);
            let p = ConePoint::new(s.positive(&alg, 0.4)).unwrap();
            let z = s.element(&alg, 0.6);
            let pert = SinePerturbation::random(&mut s, &z).unwrap();
            let r = horizontal_lift(|t| pert.cone_path(&p, &z, t), 200).unwrap();
            let i = 77;
            let (g, v) = pert.cone_path(&p, &z, r.grid[i]).unwrap();
            let f = frame(g, v).unwrap();
            let k = &r.automorphisms[i];
            let w = f.s.inverse().unwrap().circ(&f.s_dot);
            let want = k.inverse().unwrap() * LinOp::l_op(&w) * k * 2.0;
            let lam_dot = LinOp::u_bilinear(&f.s, &f.s_dot) * k * 2.0
                + LinOp::u_op(&f.s) * LinOp::from_matrix(&alg, &f.generator * k.matrix()).unwrap();
            let body = r.lift[i].inverse().unwrap() * lam_dot;
            prop_assert!(body.distance(&want) < 1e-8 * want.amax().max(1.0));
        }
    }
}
