//! Operator norm of `H: (V, ‖·‖) → (V, ‖·‖)` for the order-unit norm.
//!
//! `v ↦ ‖Hv‖` is convex, so its maximum over the unit ball is attained at an
//! extreme point, i.e. at a symmetry `s` (`s² = 1`). The search walks between
//! symmetries with a conditional-gradient step: for `u = Hv` take the
//! eigenvalue `λ_j` of largest modulus with idempotent `c_j`; the functional
//! `w ↦ sign(λ_j)(c_j|w)` is a norming functional at `u`, and it is maximized
//! over the ball at `sgn(sign(λ_j)H^†c_j)`. Each step never decreases `‖Hv‖`.

use crate::element::Element;
use crate::linop::LinOp;
use crate::random::Sampler;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpNormEstimate {
    pub estimate: f64,
    /// `max ‖Hv‖/‖v‖` over the evaluated points; always a valid lower bound.
    pub lower_bound: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct OpNormOptions {
    pub starts: usize,
    pub max_iter: usize,
    pub step_tol: f64,
    pub seed: u64,
}

impl Default for OpNormOptions {
    fn default() -> Self {
        OpNormOptions {
            starts: 64,
            max_iter: 200,
            step_tol: 1e-10,
            seed: 0x0b_5e55,
        }
    }
}

pub fn op_norm(h: &LinOp) -> OpNormEstimate {
    op_norm_with(h, &OpNormOptions::default())
}

/// Certified upper bound `√rank·‖H‖_F` with the Frobenius norm taken in
/// trace-orthonormal coordinates.
pub fn op_norm_upper_bound(h: &LinOp) -> f64 {
    (h.algebra().rank() as f64).sqrt() * h.trace_frobenius()
}

fn sym_sign(x: &Element) -> Element {
    x.sign().expect("finite input")
}

pub fn op_norm_with(h: &LinOp, opts: &OpNormOptions) -> OpNormEstimate {
    let alg = h.algebra();
    let adj = h.adjoint();
    let mut sampler = Sampler::new(opts.seed);
    let mut best = 0.0_f64;
    let mut lower = 0.0_f64;

    for start in 0..opts.starts.max(1) {
        let v = if start == 0 {
            alg.unit()
        } else {
            sym_sign(&sampler.element(alg, 1.0))
        };
        let mut spec = h.apply(&v).spectrum().expect("finite input");
        let mut val = spec.max_abs();
        lower = lower.max(val / v.jb_norm().expect("finite input"));
        for _ in 0..opts.max_iter {
            let ev = spec.eigenvalues();
            let j = (0..ev.len())
                .max_by(|&a, &b| ev[a].abs().total_cmp(&ev[b].abs()))
                .unwrap();
            let s = if ev[j] < 0.0 { -1.0 } else { 1.0 };
            let g = adj.apply(&spec.idempotent(j)) * s;
            let v_new = sym_sign(&g);
            let u_new = h.apply(&v_new);
            let spec_new = u_new.spectrum().expect("finite input");
            let val_new = spec_new.max_abs();
            lower = lower.max(val_new / v_new.jb_norm().expect("finite input"));
            if val_new <= val + opts.step_tol * val.max(1.0) {
                break;
            }
            spec = spec_new;
            val = val_new;
        }
        best = best.max(val);
    }
    OpNormEstimate {
        estimate: best.max(lower),
        lower_bound: lower,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::testutil::{algebra_and_seed, SPECS};
    use proptest::prelude::*;

    #[test]
    fn identity_has_norm_one() {
        for spec in SPECS {
            let alg = Algebra::parse(spec).unwrap();
            let r = op_norm(&LinOp::identity(&alg));
            assert!((r.estimate - 1.0).abs() < 1e-14 && (r.lower_bound - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn l_operator_norm_is_element_norm() {
        for spec in SPECS {
            let alg = Algebra::parse(spec).unwrap();
            let mut s = Sampler::new(12);
            for _ in 0..5 {
                let v = s.element(&alg, 1.0);
                let r = op_norm(&LinOp::l_op(&v));
                let want = v.jb_norm().unwrap();
                assert!((r.lower_bound - want).abs() < 1e-12 * want, "{spec}");
                assert!((r.estimate - want).abs() < 1e-12 * want, "{spec}");
            }
        }
    }

    #[test]
    fn rn_operator_norm_is_max_row_sum() {
        let alg = Algebra::rn(4).unwrap();
        let h = Sampler::new(5).operator(&alg, 1.0);
        let want = h
            .matrix()
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let r = op_norm(&h);
        assert!((r.estimate - want).abs() < 1e-12 * want);
    }

    #[test]
    fn sym2_estimate_matches_dense_search() {
        // symmetries of sym(2): ±1 and rotations cos θ·E11 − cos θ·E22 + √2 sin θ·E12
        let alg = Algebra::sym(2).unwrap();
        let mut s = Sampler::new(77);
        for _ in 0..5 {
            let h = s.operator(&alg, 1.0);
            let mut best = 0.0_f64;
            for sign in [1.0, -1.0] {
                best = best.max(h.apply(&(alg.unit() * sign)).jb_norm().unwrap());
            }
            for k in 0..20000 {
                let th = k as f64 * std::f64::consts::TAU / 20000.0;
                let v = alg.element(&[th.cos(), -th.cos(), std::f64::consts::SQRT_2 * th.sin()]).unwrap();
                best = best.max(h.apply(&v).jb_norm().unwrap());
            }
            let r = op_norm(&h);
            assert!(r.estimate >= best - 1e-6, "{} < {best}", r.estimate);
            assert!(r.estimate <= op_norm_upper_bound(&h) * (1.0 + 1e-12));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bounds_are_ordered_and_homogeneous((alg, seed) in algebra_and_seed(), c in -3.0..3.0f64) {
            let h = Sampler::new(seed).operator(&alg, 1.0);
            let r = op_norm(&h);
            prop_assert!(r.estimate >= r.lower_bound);
            prop_assert!(r.lower_bound <= op_norm_upper_bound(&h) * (1.0 + 1e-12));
            let rc = op_norm(&(&h * c));
            prop_assert!((rc.estimate - c.abs() * r.estimate).abs() <= 1e-9 * (1.0 + r.estimate));
        }
    }
}
