use nalgebra::DVector;

use super::point::{ConePoint, Tangent};
use crate::element::Element;
use crate::error::Result;
use crate::linop::LinOp;
use crate::ode::rk4;

pub const TRANSPORT_RK4_STEPS: usize = 1000;

/// Symmetric-space product `x·y = U_x(y⁻¹)`.
pub fn mu(x: &ConePoint, y: &ConePoint) -> Element {
    x.point().u_apply(y.inverse())
}

/// Differential of `μ`: `μ_*((x,v),(y,w)) = 2U_{x,v}(y⁻¹) − U_xU_{y⁻¹}w`.
pub fn mu_star(v: &Tangent, w: &Tangent) -> Element {
    let x = v.base.point();
    let yi = w.base.inverse();
    x.u_bilinear_apply(&v.vec, yi) * 2.0 - x.u_apply(&yi.u_apply(&w.vec))
}

/// `F_x(v) = U_v(x⁻¹)`.
pub fn spray(x: &ConePoint, v: &Element) -> Element {
    v.u_apply(x.inverse())
}

/// `Γ_x(v, w) = U_{v,w}(x⁻¹)`.
pub fn christoffel(x: &ConePoint, v: &Element, w: &Element) -> Element {
    v.u_bilinear_apply(w, x.inverse())
}

/// `α(t) = U_{p^{1/2}} exp(t U_{p^{-1/2}} v)`.
pub fn geodesic(p: &ConePoint, v: &Element, t: f64) -> Result<ConePoint> {
    let z = p.u_inv_sqrt(v);
    ConePoint::new(p.u_sqrt(&(z * t).exp()?))
}

/// `α'(t) = U_{p^{1/2}}(z∘exp(tz))` with `z = U_{p^{-1/2}} v`.
pub fn geodesic_velocity(p: &ConePoint, v: &Element, t: f64) -> Result<Element> {
    let z = p.u_inv_sqrt(v);
    Ok(p.u_sqrt(&z.circ(&(&z * t).exp()?)))
}

fn log_ratio(x: &ConePoint, y: &ConePoint) -> Result<Element> {
    x.u_inv_sqrt(y.point()).log()
}

/// `α_{x,y}(t) = U_{x^{1/2}} exp(t log(U_{x^{-1/2}} y))`.
pub fn geodesic_between(x: &ConePoint, y: &ConePoint, t: f64) -> Result<ConePoint> {
    let z = log_ratio(x, y)?;
    ConePoint::new(x.u_sqrt(&(z * t).exp()?))
}

/// `exp_x^{-1}(y) = U_{x^{1/2}} log(U_{x^{-1/2}} y)`.
pub fn log_map(x: &ConePoint, y: &ConePoint) -> Result<Element> {
    Ok(x.u_sqrt(&log_ratio(x, y)?))
}

/// Transport of `w ∈ T_xΩ` along `α_{x,y}` to time `t`:
/// `U_{x^{1/2}} U_{exp(t/2·z)} U_{x^{-1/2}} w` with `z = log(U_{x^{-1/2}} y)`.
pub fn parallel_transport(x: &ConePoint, y: &ConePoint, t: f64, w: &Element) -> Result<Element> {
    let z = log_ratio(x, y)?;
    let half = (z * (0.5 * t)).exp()?;
    Ok(x.u_sqrt(&half.u_apply(&x.u_inv_sqrt(w))))
}

/// RK4 integration of `η' = U_{γ',η}(γ⁻¹)` along `γ = α_{x,y}` on `[0, t]`.
pub fn parallel_transport_rk4(
    x: &ConePoint,
    y: &ConePoint,
    t: f64,
    w: &Element,
    steps: usize,
) -> Result<Element> {
    let alg = w.algebra().clone();
    let z = log_ratio(x, y)?;
    let zs = z.spectrum()?;
    let out = rk4(
        |s, eta: &DVector<f64>| {
            let e = Element::new(&alg, eta.clone()).expect("state has algebra dimension");
            let vel = x.u_sqrt(&z.circ(&zs.apply(|l| (s * l).exp())));
            let inv = x.inv_sqrt().u_apply(&zs.apply(|l| (-s * l).exp()));
            vel.u_bilinear_apply(&e, &inv).into_coords()
        },
        0.0,
        t,
        w.coords().clone(),
        steps,
    );
    Element::new(&alg, out)
}

/// `R_p(V,W)Z = Γ_p(V, Γ_p(W, Z)) − Γ_p(W, Γ_p(V, Z))`.
pub fn curvature(p: &ConePoint, v: &Element, w: &Element, z: &Element) -> Element {
    christoffel(p, v, &christoffel(p, w, z)) - christoffel(p, w, &christoffel(p, v, z))
}

/// Curvature through the bracket: `U_{p^{1/2}}[L_v, L_w](z)` with
/// `v, w, z` pulled back to the unit by `U_{p^{-1/2}}`.
pub fn curvature_bracket(p: &ConePoint, v: &Element, w: &Element, z: &Element) -> Element {
    let (v, w, z) = (p.u_inv_sqrt(v), p.u_inv_sqrt(w), p.u_inv_sqrt(z));
    p.u_sqrt(&(v.circ(&w.circ(&z)) - w.circ(&v.circ(&z))))
}

/// Flow `ρ_t(p) = e^{tL_x}(p)` of the Killing field `p ↦ p∘x`.
pub fn killing_flow(x: &Element, p: &ConePoint, t: f64) -> Result<ConePoint> {
    ConePoint::new((LinOp::l_op(x) * t).exp().apply(p.point()))
}

pub fn killing_field(x: &Element, p: &ConePoint) -> Element {
    p.point().circ(x)
}
