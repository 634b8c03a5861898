use super::point::ConePoint;
use crate::analytic::sinh_ad_apply;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::gauge::GaugeFunction;
use crate::spectral::gauge_order;

/// `|v|_p = φ(U_{p^{-1/2}} v)`; `GaugeFunction::Sup` gives the order norm.
pub fn finsler_norm(p: &ConePoint, v: &Element, phi: &GaugeFunction) -> Result<f64> {
    p.u_inv_sqrt(v).gauge_norm(phi)
}

/// Thompson distance `‖log(U_{p^{-1/2}} q)‖`.
pub fn thompson_distance(p: &ConePoint, q: &ConePoint) -> Result<f64> {
    p.u_inv_sqrt(q.point()).log()?.jb_norm()
}

/// The same distance written from the other endpoint, `‖log(U_{q^{-1/2}} p)‖`.
pub fn thompson_distance_reverse(p: &ConePoint, q: &ConePoint) -> Result<f64> {
    thompson_distance(q, p)
}

/// `φ(U_{γ^{-1/2}} γ')` for each gauge, sharing one decomposition of `γ`
/// and one eigenvalue computation of the pulled-back velocity.
pub fn velocity_norms(gamma: &Element, velocity: &Element, norms: &[GaugeFunction]) -> Result<Vec<f64>> {
    let s = gamma.spectrum()?;
    if s.min() <= s.threshold() {
        return Err(Error::NotInCone {
            min_eigenvalue: s.min(),
        });
    }
    let w = s.apply(|l| 1.0 / l.sqrt()).u_apply(velocity);
    let ev = gauge_order(&w.eigenvalues()?);
    Ok(norms.iter().map(|phi| phi.apply_ordered(&ev)).collect())
}

/// `U_{γ^{-1/2}}γ'` for `γ = exp(Γ)` as `{G(ad L_Γ) L_{Γ'}}(1)`, `G(λ) = sinh λ / λ`.
pub fn lie_velocity(gamma_log: &Element, gamma_log_dot: &Element) -> Element {
    sinh_ad_apply(gamma_log, gamma_log_dot)
}

const DIRECT_STEP: f64 = 1e-3;

/// `U_{γ^{-1/2}}γ'` for `γ = exp(Γ)` computed directly: a five-point central
/// difference of `s ↦ exp(Γ + sΓ')` at `s = 0`, then `U_{exp(-Γ/2)}`.
pub fn lie_velocity_direct(gamma_log: &Element, gamma_log_dot: &Element) -> Result<Element> {
    let h = DIRECT_STEP;
    let at = |s: f64| (gamma_log + &(gamma_log_dot * s)).exp();
    let d = (at(-2.0 * h)? - at(2.0 * h)? + (at(h)? - at(-h)?) * 8.0) * (1.0 / (12.0 * h));
    Ok((gamma_log * -0.5).exp()?.u_apply(&d))
}
