use crate::element::Element;
use crate::error::{Error, Result};

/// A point of the positive cone with its square root, inverse square root,
/// inverse and logarithm precomputed.
#[derive(Clone, Debug)]
pub struct ConePoint {
    p: Element,
    sqrt: Element,
    inv_sqrt: Element,
    inverse: Element,
    log: Element,
}

impl ConePoint {
    pub fn new(p: Element) -> Result<Self> {
        let s = p.spectrum()?;
        if s.min() <= s.threshold() {
            return Err(Error::NotInCone {
                min_eigenvalue: s.min(),
            });
        }
        Ok(ConePoint {
            sqrt: s.sqrt()?,
            inv_sqrt: s.inv_sqrt()?,
            inverse: s.inverse()?,
            log: s.log()?,
            p,
        })
    }

    pub fn unit(alg: &crate::algebra::Algebra) -> Self {
        ConePoint::new(alg.unit()).expect("the unit is positive")
    }

    /// `exp(x)`, always a cone point for finite `x`.
    pub fn exp(x: &Element) -> Result<Self> {
        ConePoint::new(x.exp()?)
    }

    pub fn point(&self) -> &Element {
        &self.p
    }

    pub fn into_point(self) -> Element {
        self.p
    }

    pub fn sqrt(&self) -> &Element {
        &self.sqrt
    }

    pub fn inv_sqrt(&self) -> &Element {
        &self.inv_sqrt
    }

    pub fn inverse(&self) -> &Element {
        &self.inverse
    }

    pub fn log(&self) -> &Element {
        &self.log
    }

    /// `U_{p^{1/2}} v`
    pub fn u_sqrt(&self, v: &Element) -> Element {
        self.sqrt.u_apply(v)
    }

    /// `U_{p^{-1/2}} v`
    pub fn u_inv_sqrt(&self, v: &Element) -> Element {
        self.inv_sqrt.u_apply(v)
    }

    /// `‖U_{p^{1/2}}(1) − p‖ / ‖p‖`; zero up to rounding.
    pub fn residual(&self) -> f64 {
        self.u_sqrt(&self.p.algebra().unit()).distance(&self.p) / self.p.coord_norm()
    }
}

/// A tangent vector `v ∈ T_pΩ ≅ V`.
#[derive(Clone, Debug)]
pub struct Tangent {
    pub base: ConePoint,
    pub vec: Element,
}

impl Tangent {
    pub fn new(base: ConePoint, vec: Element) -> Result<Self> {
        base.point().algebra().ensure_same(vec.algebra())?;
        Ok(Tangent { base, vec })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::random::Sampler;
    use crate::testutil::algebra_and_seed;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_positive() {
        let alg = Algebra::sym(2).unwrap();
        let x = alg.element(&[1.0, -1.0, 0.0]).unwrap();
        assert!(matches!(ConePoint::new(x), Err(Error::NotInCone { min_eigenvalue }) if min_eigenvalue == -1.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn cached_functions_are_consistent((alg, seed) in algebra_and_seed()) {
            let p = ConePoint::new(Sampler::new(seed).positive(&alg, 1.0)).unwrap();
            prop_assert!(p.residual() < 1e-9);
            prop_assert!(p.sqrt().square().distance(p.point()) < 1e-9 * p.point().coord_norm());
            prop_assert!(p.u_inv_sqrt(p.point()).distance(&alg.unit()) < 1e-9);
            prop_assert!(p.log().exp().unwrap().distance(p.point()) < 1e-9 * p.point().coord_norm());
        }
    }
}
