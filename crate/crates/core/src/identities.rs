//! Residuals of the algebraic identities satisfied by Jordan algebras and
//! their structure algebras. Each function returns a relative residual that
//! vanishes up to rounding when the identity holds.

use crate::element::Element;
use crate::error::Result;
use crate::linop::LinOp;
use crate::structure::{in_structure_algebra, overline, split_str};

fn rel(diff: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// `‖x∘y − y∘x‖ / (‖x‖‖y‖)`.
pub fn commutativity(x: &Element, y: &Element) -> f64 {
    rel(x.circ(y).distance(&y.circ(x)), x.coord_norm() * y.coord_norm())
}

/// `‖x²∘(x∘y) − x∘(x²∘y)‖ / (‖x‖³‖y‖)`.
pub fn jordan_identity(x: &Element, y: &Element) -> f64 {
    let x2 = x.square();
    let lhs = x2.circ(&x.circ(y));
    let rhs = x.circ(&x2.circ(y));
    rel(lhs.distance(&rhs), x.coord_norm().powi(3) * y.coord_norm())
}

/// `‖1∘x − x‖ / ‖x‖`.
pub fn unit_law(x: &Element) -> f64 {
    rel(x.algebra().unit().circ(x).distance(x), x.coord_norm())
}

/// `U_{U_x y} = U_x U_y U_x`, relative to `‖U_x‖²‖U_y‖` (Frobenius).
pub fn fundamental_formula(x: &Element, y: &Element) -> f64 {
    let ux = LinOp::u_op(x);
    let uy = LinOp::u_op(y);
    let lhs = LinOp::u_op(&ux.apply(y));
    let rhs = &ux * &uy * &ux;
    rel(
        (lhs - rhs).frobenius(),
        ux.frobenius().powi(2) * uy.frobenius(),
    )
}

/// `U_{x⁻¹}U_{x,y} = V_{x⁻¹,y}` for invertible `x`.
pub fn v_inverse_identity(x: &Element, y: &Element) -> Result<f64> {
    let xi = x.inverse()?;
    let lhs = LinOp::u_op(&xi) * LinOp::u_bilinear(x, y);
    let rhs = LinOp::v_op(&xi, y);
    let scale = LinOp::u_op(&xi).frobenius() * LinOp::u_bilinear(x, y).frobenius();
    Ok(rel((lhs - rhs).frobenius(), scale))
}

/// `V_{a,b} + V_{b,a} = L_{2a∘b}`.
pub fn v_symmetric_part(a: &Element, b: &Element) -> f64 {
    let lhs = LinOp::v_op(a, b) + LinOp::v_op(b, a);
    let rhs = LinOp::l_op(&(a.circ(b) * 2.0));
    rel((lhs - rhs).frobenius(), a.coord_norm() * b.coord_norm())
}

/// `V_{a,b} − V_{b,a} = c·[L_a, L_b]`; the identity holds with `c = 2`.
pub fn v_antisymmetric_part(a: &Element, b: &Element, c: f64) -> f64 {
    let lhs = LinOp::v_op(a, b) - LinOp::v_op(b, a);
    let rhs = LinOp::l_op(a).commutator(&LinOp::l_op(b)) * c;
    rel((lhs - rhs).frobenius(), a.coord_norm() * b.coord_norm())
}

/// `V̄_{x,y} = −V_{y,x}`.
pub fn v_overline(x: &Element, y: &Element) -> f64 {
    let lhs = overline(&LinOp::v_op(x, y));
    let rhs = -LinOp::v_op(y, x);
    rel((lhs - rhs).frobenius(), x.coord_norm() * y.coord_norm())
}

/// Cartan relations `[𝕃,𝕃] ⊂ der`, `[𝕃,der] ⊂ 𝕃`, `[der,der] ⊂ der`:
/// the largest wrong-component norm over the three brackets, relative to
/// the product of the operand norms. `d1`, `d2` must be derivations.
pub fn cartan_relations(a: &Element, b: &Element, v: &Element, d1: &LinOp, d2: &LinOp) -> f64 {
    let (la, lb, lv) = (LinOp::l_op(a), LinOp::l_op(b), LinOp::l_op(v));

    let s1 = split_str(&la.commutator(&lb));
    let scale1 = la.frobenius() * lb.frobenius();
    let r1 = rel(LinOp::l_op(&s1.l_part).frobenius(), scale1)
        .max(rel(s1.derivation_residual, scale1));

    let s2 = split_str(&lv.commutator(d1));
    let r2 = rel(s2.der_part.frobenius(), lv.frobenius() * d1.frobenius());

    let s3 = split_str(&d1.commutator(d2));
    let scale3 = d1.frobenius() * d2.frobenius();
    let r3 = rel(LinOp::l_op(&s3.l_part).frobenius(), scale3)
        .max(rel(s3.derivation_residual, scale3));
    r1.max(r2).max(r3)
}

/// Membership residual of `L_v + D` in `str`.
pub fn str_membership(v: &Element, d: &LinOp) -> f64 {
    in_structure_algebra(&(LinOp::l_op(v) + d))
}
