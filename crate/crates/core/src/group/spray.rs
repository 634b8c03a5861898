use super::element::GroupElement;
use crate::element::Element;
use crate::error::Result;
use crate::linop::LinOp;
use crate::structure::{dagger, ensure_derivation};

/// Body of the left-invariant spray: `V² + V†V − VV†`.
pub fn spray_body(v: &LinOp) -> Result<LinOp> {
    let vd = dagger(v)?;
    Ok(v * v + &vd * v - v * &vd)
}

/// `F_g(gV) = g(V² + [V†, V])` for a body `V ∈ str`.
pub fn group_spray(g: &GroupElement, v: &LinOp) -> Result<LinOp> {
    Ok(g.op() * &spray_body(v)?)
}

/// `(L_x + D)² − 2L_{Dx}`.
pub fn spray_body_split(x: &Element, d: &LinOp) -> LinOp {
    let v = LinOp::l_op(x) + d;
    &v * &v - LinOp::l_op(&d.apply(x)) * 2.0
}

/// Body of the Christoffel operator as the polarization of the spray:
/// `½(VW + WV + [V†, W] + [W†, V])`.
pub fn christoffel_body(v: &LinOp, w: &LinOp) -> Result<LinOp> {
    let (vd, wd) = (dagger(v)?, dagger(w)?);
    Ok((v * w + w * v + vd.commutator(w) + wd.commutator(v)) * 0.5)
}

pub fn group_christoffel(g: &GroupElement, v: &LinOp, w: &LinOp) -> Result<LinOp> {
    Ok(g.op() * &christoffel_body(v, w)?)
}

/// Christoffel body written out for `V = L_x + D`, `W = L_y + d`:
/// `½(L_yL_x + L_xL_y + 3L_xd + 3L_yD − DL_y − dL_x + dD + Dd)`.
pub fn christoffel_body_split(x: &Element, big_d: &LinOp, y: &Element, d: &LinOp) -> LinOp {
    let (lx, ly) = (LinOp::l_op(x), LinOp::l_op(y));
    (&ly * &lx + &lx * &ly + (&lx * d) * 3.0 + (&ly * big_d) * 3.0
        - big_d * &ly
        - d * &lx
        + d * big_d
        + big_d * d)
        * 0.5
}

/// `γ(t) = g e^{t(L_x − D)} e^{2tD}`, the geodesic with `γ(0) = g`, `γ'(0) = g(L_x + D)`.
pub fn group_geodesic(g: &GroupElement, x: &Element, d: &LinOp, t: f64) -> Result<GroupElement> {
    ensure_derivation(d)?;
    let a = GroupElement::exp(&((LinOp::l_op(x) - d) * t));
    let b = GroupElement::exp(&(d * (2.0 * t)));
    Ok(g.compose(&a).compose(&b))
}

/// Body of `γ'(t)`: `e^{-2tD} L_x e^{2tD} + D`.
pub fn group_geodesic_body(x: &Element, d: &LinOp, t: f64) -> LinOp {
    let e = (d * (2.0 * t)).exp();
    let ei = (d * (-2.0 * t)).exp();
    &ei * &LinOp::l_op(x) * &e + d
}

/// `γ'(t) = γ(t)·(e^{-2tD} L_x e^{2tD} + D)`.
pub fn group_geodesic_velocity(g: &GroupElement, x: &Element, d: &LinOp, t: f64) -> Result<LinOp> {
    Ok(group_geodesic(g, x, d, t)?.op() * &group_geodesic_body(x, d, t))
}
