use std::f64::consts::{FRAC_PI_2, PI};

use super::metric::{group_path_length, GroupPath};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linop::{expm_frechet, LinOp};
use crate::opnorm::{op_norm, op_norm_upper_bound};
use crate::random::Sampler;

/// Radius `π/2` below which one-parameter groups `e^{tD}` in `Aut` are minimal.
pub const AUT_RADIUS: f64 = FRAC_PI_2;

/// Scales `d` so its certified norm bound is below `radius`; returns it unchanged if it already is.
pub fn rescale_derivation(d: &LinOp, radius: f64) -> LinOp {
    let bound = op_norm_upper_bound(d);
    if bound < radius {
        d.clone()
    } else {
        d * (0.99 * radius / bound)
    }
}

/// A random inner derivation with certified norm below `radius`.
pub fn derivation_below(sampler: &mut Sampler, alg: &Algebra, radius: f64) -> LinOp {
    rescale_derivation(&sampler.derivation(alg, 2, 1.0), radius)
}

/// Right factor `P(t) = exp(Σ_j sin(jπt) S_j)` with `S_j ∈ str`; `P(0) = P(1) = 1`.
#[derive(Clone, Debug)]
pub struct GroupPerturbation {
    pub modes: Vec<LinOp>,
}

impl GroupPerturbation {
    pub const MODES: usize = 3;

    /// Modes `S_j = L_x + D` rescaled so `Σ_j ‖S_j‖_F = u·amplitude`, `u ~ U(0,1)`.
    pub fn random(sampler: &mut Sampler, alg: &Algebra, amplitude: f64) -> Self {
        let raw: Vec<LinOp> = (0..Self::MODES)
            .map(|_| LinOp::l_op(&sampler.element(alg, 1.0)) + sampler.derivation(alg, 2, 1.0))
            .collect();
        let total: f64 = raw.iter().map(LinOp::trace_frobenius).sum();
        let c = if total > 0.0 { sampler.uniform() * amplitude / total } else { 0.0 };
        GroupPerturbation {
            modes: raw.into_iter().map(|s| s * c).collect(),
        }
    }

    /// `(P(t), P'(t))`.
    pub fn factor(&self, t: f64) -> (LinOp, LinOp) {
        let alg = self.modes[0].algebra();
        let mut a = LinOp::zeros(alg);
        let mut da = LinOp::zeros(alg);
        for (j, s) in self.modes.iter().enumerate() {
            let k = (j + 1) as f64 * PI;
            a += &(s * (k * t).sin());
            da += &(s * (k * (k * t).cos()));
        }
        let (e, de) = expm_frechet(a.matrix(), da.matrix());
        (LinOp::from_matrix(alg, e).unwrap(), LinOp::from_matrix(alg, de).unwrap())
    }

    /// `(ΛP, Λ'P + ΛP')` for a base point `(Λ, Λ')`.
    pub fn apply(&self, base: (LinOp, LinOp), t: f64) -> (LinOp, LinOp) {
        let (p, dp) = self.factor(t);
        let (l, dl) = base;
        (&l * &p, &dl * &p + &l * &dp)
    }
}

/// `(competitor, length, length − base length)`.
pub type CompetitorLength = (usize, f64, f64);

/// Lengths of `t ↦ e^{tD}` and of `competitors` perturbed paths with the
/// same endpoints, on a grid of `intervals`. Rows are
/// `(competitor, length, length − base length)`.
pub fn explore_aut_path(
    d: &LinOp,
    competitors: usize,
    intervals: usize,
    sampler: &mut Sampler,
) -> Result<(f64, Vec<CompetitorLength>)> {
    let norm = op_norm(d).estimate;
    if norm >= AUT_RADIUS {
        return Err(Error::InvalidArgument(format!(
            "the minimality statement for e^(tD) requires ||D|| < pi/2, got ||D|| = {norm}"
        )));
    }
    let base = |t: f64| {
        let e = (d * t).exp();
        let de = &e * d;
        (e, de)
    };
    let base_len = group_path_length(&GroupPath::from_fn(|t| Ok(base(t)), intervals)?)?;
    let mut rows = Vec::with_capacity(competitors);
    for i in 0..competitors {
        let pert = GroupPerturbation::random(sampler, d.algebra(), norm);
        let path = GroupPath::from_fn(|t| Ok(pert.apply(base(t), t)), intervals)?;
        let len = group_path_length(&path)?;
        rows.push((i, len, len - base_len));
    }
    Ok((base_len, rows))
}
