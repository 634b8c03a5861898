use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linop::LinOp;
use crate::random::Sampler;
use crate::structure::{in_structure_algebra, split_str, StrDecomposition, STR_TOL};

const CONE_SAMPLES: usize = 32;
const CONE_SEED: u64 = 0xc0_4e;

/// An invertible operator with its inverse.
#[derive(Clone, Debug)]
pub struct GroupElement {
    op: LinOp,
    inverse: LinOp,
}

impl GroupElement {
    pub fn new(op: LinOp) -> Result<Self> {
        let inverse = op.inverse()?;
        Ok(GroupElement { op, inverse })
    }

    pub fn identity(alg: &Algebra) -> Self {
        let id = LinOp::identity(alg);
        GroupElement {
            op: id.clone(),
            inverse: id,
        }
    }

    /// `e^H`, with inverse `e^{-H}`.
    pub fn exp(h: &LinOp) -> Self {
        GroupElement {
            op: h.exp(),
            inverse: (-h).exp(),
        }
    }

    pub fn op(&self) -> &LinOp {
        &self.op
    }

    pub fn into_op(self) -> LinOp {
        self.op
    }

    pub fn inverse(&self) -> &LinOp {
        &self.inverse
    }

    pub fn algebra(&self) -> &Algebra {
        self.op.algebra()
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            op: &self.op * &other.op,
            inverse: &other.inverse * &self.inverse,
        }
    }

    /// `‖g g⁻¹ − 1‖_max`.
    pub fn inverse_residual(&self) -> f64 {
        (&self.op * &self.inverse).distance(&LinOp::identity(self.algebra()))
    }

    /// How far `g` is from mapping sampled positives into the cone: the
    /// largest `max(0, −λ_min(gp)) / ‖gp‖` over random positive `p`.
    pub fn cone_residual(&self) -> f64 {
        let alg = self.algebra();
        let mut s = Sampler::new(CONE_SEED);
        (0..CONE_SAMPLES)
            .map(|_| {
                let gp = self.op.apply(&s.positive(alg, 1.0));
                let ev = gp.eigenvalues().expect("finite input");
                let scale = ev.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
                (-ev[ev.len() - 1]).max(0.0) / scale.max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }
}

/// A tangent vector `gV` with body `V ∈ str`.
#[derive(Clone, Debug)]
pub struct GroupTangent {
    pub base: GroupElement,
    pub body: LinOp,
    pub split: StrDecomposition,
}

impl GroupTangent {
    pub fn new(base: GroupElement, body: LinOp) -> Result<Self> {
        base.algebra().ensure_same(body.algebra())?;
        let residual = in_structure_algebra(&body);
        if residual > STR_TOL {
            return Err(Error::NotInStructureAlgebra {
                residual,
                tolerance: STR_TOL,
            });
        }
        let split = split_str(&body);
        split.gate()?;
        Ok(GroupTangent { base, body, split })
    }

    /// The tangent vector `gV` itself.
    pub fn vector(&self) -> LinOp {
        self.base.op() * &self.body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::algebra_and_seed;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_str_body() {
        let alg = Algebra::sym(2).unwrap();
        let h = Sampler::new(1).operator(&alg, 1.0);
        let r = GroupTangent::new(GroupElement::identity(&alg), h);
        assert!(matches!(r, Err(Error::NotInStructureAlgebra { .. })));
        let sing = LinOp::zeros(&alg);
        assert_eq!(GroupElement::new(sing).unwrap_err(), Error::SingularOperator);
    }

    #[test]
    fn flip_leaves_the_cone() {
        let alg = Algebra::rn(3).unwrap();
        let g = GroupElement::new(-LinOp::identity(&alg)).unwrap();
        assert!((g.cone_residual() - 1.0).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn exp_of_str_is_in_g_omega((alg, seed) in algebra_and_seed()) {
            let mut s = Sampler::new(seed);
            let v = LinOp::l_op(&s.element(&alg, 0.5)) + s.derivation(&alg, 2, 0.5);
            let g = GroupElement::exp(&v);
            prop_assert!(g.inverse_residual() < 1e-10);
            prop_assert_eq!(g.cone_residual(), 0.0);
            let h = GroupElement::new(g.op().clone()).unwrap();
            prop_assert!(h.inverse_residual() < 1e-10);
            let t = GroupTangent::new(g.clone(), v.clone()).unwrap();
            prop_assert!(t.split.reconstruct().distance(&v) < 1e-13);
            prop_assert!(g.compose(&h).inverse_residual() < 1e-9);
        }
    }
}
