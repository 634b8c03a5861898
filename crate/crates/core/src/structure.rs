//! The structure algebra `str = 𝕃 ⊕ der`, its involutions and membership residuals.

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linop::LinOp;
use crate::random::Sampler;

/// Random pairs used by sampled derivation and automorphism residuals.
pub const RESIDUAL_SAMPLES: usize = 64;
/// Random points used by the structure-algebra membership residual.
pub const STR_SAMPLES: usize = 32;
const RESIDUAL_SEED: u64 = 0x5eed_d3a1;

/// Relative tolerance gating `dagger` and friends: residual ≤ `STR_TOL·max(1, ‖D‖_F)`.
pub const STR_TOL: f64 = 1e-8;

/// `H = L_x + D` with `x = H(1)` and `D(1) = 0`.
#[derive(Clone, Debug)]
pub struct StrDecomposition {
    pub l_part: Element,
    pub der_part: LinOp,
    /// How far `der_part` is from being a derivation (zero for `H ∈ str`).
    pub derivation_residual: f64,
}

impl StrDecomposition {
    pub fn l_op(&self) -> LinOp {
        LinOp::l_op(&self.l_part)
    }

    pub fn reconstruct(&self) -> LinOp {
        self.l_op() + &self.der_part
    }

    /// `L_x − D`, without gating on the residual.
    pub fn dagger(&self) -> LinOp {
        self.l_op() - &self.der_part
    }

    fn tolerance(&self) -> f64 {
        STR_TOL * self.der_part.frobenius().max(1.0)
    }

    /// Fails unless the derivation residual is within tolerance.
    pub fn gate(&self) -> Result<&Self> {
        let tolerance = self.tolerance();
        if self.derivation_residual <= tolerance {
            Ok(self)
        } else {
            Err(Error::NotInStructureAlgebra {
                residual: self.derivation_residual,
                tolerance,
            })
        }
    }
}

fn pairs(alg: &Algebra) -> Vec<(Element, Element)> {
    let mut s = Sampler::new(RESIDUAL_SEED);
    (0..RESIDUAL_SAMPLES)
        .map(|_| (s.element(alg, 1.0), s.element(alg, 1.0)))
        .collect()
}

fn leibniz_defect(d: &LinOp, a: &Element, b: &Element) -> f64 {
    let lhs = d.apply(&a.circ(b));
    let rhs = d.apply(a).circ(b) + a.circ(&d.apply(b));
    lhs.distance(&rhs) / (a.coord_norm() * b.coord_norm())
}

/// `max ‖D(a∘b) − Da∘b − a∘Db‖ / (‖a‖‖b‖)` over a fixed set of random pairs.
pub fn derivation_residual(d: &LinOp) -> f64 {
    pairs(d.algebra())
        .iter()
        .map(|(a, b)| leibniz_defect(d, a, b))
        .fold(0.0, f64::max)
}

/// Same residual over every pair of basis vectors.
pub fn derivation_residual_strict(d: &LinOp) -> f64 {
    let alg = d.algebra();
    let mut worst = 0.0_f64;
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            worst = worst.max(leibniz_defect(d, &alg.basis(i), &alg.basis(j)));
        }
    }
    worst
}

fn split_with(h: &LinOp, residual: impl Fn(&LinOp) -> f64) -> StrDecomposition {
    let x = h.apply(&h.algebra().unit());
    let d = h - LinOp::l_op(&x);
    let derivation_residual = residual(&d);
    StrDecomposition {
        l_part: x,
        der_part: d,
        derivation_residual,
    }
}

/// `x = H(1)`, `D = H − L_x`, with the sampled derivation residual of `D`.
pub fn split_str(h: &LinOp) -> StrDecomposition {
    split_with(h, derivation_residual)
}

/// [`split_str`] with the residual taken over all basis pairs.
pub fn split_str_strict(h: &LinOp) -> StrDecomposition {
    split_with(h, derivation_residual_strict)
}

/// `(L_x + D)† = L_x − D`, gated on `H ∈ str`.
pub fn dagger(h: &LinOp) -> Result<LinOp> {
    Ok(split_str(h).gate()?.dagger())
}

/// `σ_*(H) = −H†`, the differential of `σ` at the identity.
pub fn sigma_star(h: &LinOp) -> Result<LinOp> {
    Ok(-dagger(h)?)
}

/// `H̄ = H − 2U_{H1,1}`.
pub fn overline(h: &LinOp) -> LinOp {
    let alg = h.algebra();
    let one = alg.unit();
    h - LinOp::u_bilinear(&h.apply(&one), &one) * 2.0
}

/// Fails unless `d` is a derivation up to the sampled tolerance.
pub fn ensure_derivation(d: &LinOp) -> Result<()> {
    let residual = derivation_residual(d);
    let tolerance = STR_TOL * d.frobenius().max(1.0);
    if residual <= tolerance {
        Ok(())
    } else {
        Err(Error::NotDerivation {
            residual,
            tolerance,
        })
    }
}

/// `max ‖2U_{x,Hx} − HU_x + U_xH̄‖_F / (‖H‖_F‖x‖²)` over random `x`.
///
/// Vanishes on `str`; of order one for a generic operator.
pub fn in_structure_algebra(h: &LinOp) -> f64 {
    let scale_h = h.frobenius();
    if scale_h == 0.0 {
        return 0.0;
    }
    let alg = h.algebra();
    let hbar = overline(h);
    let mut s = Sampler::new(RESIDUAL_SEED ^ 1);
    let mut worst = 0.0_f64;
    for _ in 0..STR_SAMPLES {
        let x = s.element(alg, 1.0);
        let ux = LinOp::u_op(&x);
        let r = LinOp::u_bilinear(&x, &h.apply(&x)) * 2.0 - h * &ux + &ux * &hbar;
        worst = worst.max(r.frobenius() / (scale_h * x.coord_norm().powi(2)));
    }
    worst
}

/// `max ‖k(a∘b) − ka∘kb‖ / (‖a‖‖b‖)` over a fixed set of random pairs.
pub fn automorphism_residual(k: &LinOp) -> f64 {
    pairs(k.algebra())
        .iter()
        .map(|(a, b)| {
            let lhs = k.apply(&a.circ(b));
            let rhs = k.apply(a).circ(&k.apply(b));
            lhs.distance(&rhs) / (a.coord_norm() * b.coord_norm())
        })
        .fold(0.0, f64::max)
}

/// `σ(g) = (g*)⁻¹ = U_{g1}⁻¹ g`.
pub fn sigma(g: &LinOp) -> Result<LinOp> {
    let g1 = g.apply(&g.algebra().unit());
    Ok(LinOp::u_op(&g1.inverse()?) * g)
}
