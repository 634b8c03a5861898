//! Analytic functions of `ad L_x` applied to `L` operators.

use crate::element::Element;
use crate::linop::LinOp;
use crate::quadrature::gauss_legendre;

pub const SINH_AD_NODES: usize = 32;
pub const SINH_AD_TOL: f64 = 1e-11;
const SINH_AD_MAX_NODES: usize = 1024;

fn sinh_ad_rule(lx: &LinOp, xs: &crate::spectral::Spectrum, y: &Element, n: usize) -> Element {
    let (nodes, weights) = gauss_legendre(n);
    let mut acc = y.algebra().zero();
    for (tau, w) in nodes.iter().zip(&weights) {
        // s = (1 + τ)/2, so 2s − 1 = τ and ds = dτ/2
        let inner = y.circ(&xs.apply(|l| (-tau * l).exp()));
        acc += &((lx * *tau).exp().apply(&inner) * (0.5 * w));
    }
    acc
}

/// `{G(ad L_x)L_y}(1)` with `G(λ) = sinh(λ)/λ`, as the integral
/// `∫₀¹ e^{(2s−1)L_x} L_y e^{(1−2s)L_x}(1) ds` by Gauss–Legendre quadrature,
/// doubling the node count until successive values agree to `1e-11`.
pub fn sinh_ad_apply(x: &Element, y: &Element) -> Element {
    let lx = LinOp::l_op(x);
    let xs = x.spectrum().expect("finite input");
    let mut n = SINH_AD_NODES;
    let mut prev = sinh_ad_rule(&lx, &xs, y, n);
    while n < SINH_AD_MAX_NODES {
        n *= 2;
        let next = sinh_ad_rule(&lx, &xs, y, n);
        let change = next.distance(&prev);
        prev = next;
        if change < SINH_AD_TOL * prev.coord_norm().max(1.0) {
            break;
        }
    }
    prev
}
