use nalgebra::{DMatrix, DVector};

use super::element::GroupElement;
use super::spray::group_geodesic;
use crate::element::Element;
use crate::error::Result;
use crate::linop::{expm, LinOp};
use crate::ode::rk4;
use crate::structure::{ensure_derivation, split_str};

pub const GROUP_RK4_STEPS: usize = 1000;

/// Matrix of `A ↦ XA − AX` on column-major `vec(A)`.
fn ad_matrix(x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = x.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    id.kronecker(x) - x.transpose().kronecker(&id)
}

/// `M = ½ [[ad d₀, ad L_{y₀}], [−ad L_{y₀}, 3 ad d₀]]` on pairs `(L_z, D̃)`.
pub fn transport_generator(y0: &Element, d0: &LinOp) -> DMatrix<f64> {
    let ad_d = ad_matrix(d0.matrix());
    let ad_l = ad_matrix(LinOp::l_op(y0).matrix());
    let m = ad_d.nrows();
    let mut out = DMatrix::zeros(2 * m, 2 * m);
    out.view_mut((0, 0), (m, m)).copy_from(&(&ad_d * 0.5));
    out.view_mut((0, m), (m, m)).copy_from(&(&ad_l * 0.5));
    out.view_mut((m, 0), (m, m)).copy_from(&(&ad_l * -0.5));
    out.view_mut((m, m), (m, m)).copy_from(&(&ad_d * 1.5));
    out
}

fn stack(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(a.len() + b.len(), a.iter().chain(b.iter()).copied())
}

/// Parallel transport of `μ₀ ∈ T_gG` along the geodesic from `g` with initial
/// body `L_{x₀} + d₀`: `μ_t = γ_t e^{-2t ad d₀}(e^{tM}ε₀)` with `ε₀ = g⁻¹μ₀`
/// split as `(L_z, D̃)`.
pub fn group_parallel_transport(
    g: &GroupElement,
    x0: &Element,
    d0: &LinOp,
    t: f64,
    mu0: &LinOp,
) -> Result<LinOp> {
    ensure_derivation(d0)?;
    let alg = g.algebra();
    let n = alg.dim();
    let eps = split_str(&(g.inverse() * mu0));
    eps.gate()?;
    let v = stack(eps.l_op().matrix(), eps.der_part.matrix());
    let w = expm(&(transport_generator(x0, d0) * t)) * v;
    let body = DMatrix::from_column_slice(n, n, &w.as_slice()[..n * n])
        + DMatrix::from_column_slice(n, n, &w.as_slice()[n * n..]);
    let body = LinOp::from_matrix(alg, body)?;
    let e = (d0 * (2.0 * t)).exp();
    let ei = (d0 * (-2.0 * t)).exp();
    let gamma = group_geodesic(g, x0, d0, t)?;
    Ok(gamma.op() * &(&ei * &body * &e))
}

/// RK4 oracle for the same transport: integrates
/// `L_x' = −3/2[d, L_x] + 1/2[L_y, D]`, `D' = −1/2[L_y, L_x] − 1/2[d, D]`
/// with `L_y + d = e^{-2t ad d₀}(L_{y₀} + d₀)`.
pub fn group_parallel_transport_rk4(
    g: &GroupElement,
    x0: &Element,
    d0: &LinOp,
    t: f64,
    mu0: &LinOp,
    steps: usize,
) -> Result<LinOp> {
    ensure_derivation(d0)?;
    let alg = g.algebra();
    let eps = split_str(&(g.inverse() * mu0));
    eps.gate()?;
    let ly0 = LinOp::l_op(x0);
    let dm = d0.matrix().clone();
    let br = |a: &DMatrix<f64>, b: &DMatrix<f64>| a * b - b * a;
    let (lx, dd) = rk4(
        |s, st: &(DMatrix<f64>, DMatrix<f64>)| {
            let e = expm(&(&dm * (2.0 * s)));
            let ei = expm(&(&dm * (-2.0 * s)));
            let ly = &ei * ly0.matrix() * &e;
            let a = br(&dm, &st.0) * -1.5 + br(&ly, &st.1) * 0.5;
            let b = br(&ly, &st.0) * -0.5 + br(&dm, &st.1) * -0.5;
            (a, b)
        },
        0.0,
        t,
        (eps.l_op().into_matrix(), eps.der_part.matrix().clone()),
        steps,
    );
    let gamma = group_geodesic(g, x0, d0, t)?;
    Ok(gamma.op() * &LinOp::from_matrix(alg, lx + dd)?)
}
