use super::element::GroupElement;
use crate::cone::ConePoint;
use crate::error::Result;
use crate::linop::LinOp;

/// `q(g) = g(1)`.
pub fn quotient_map(g: &GroupElement) -> Result<ConePoint> {
    ConePoint::new(g.op().apply(&g.algebra().unit()))
}

/// Quotient Finsler norm of `Z ∈ T_gG`, `inf_D ‖Z − gD‖_g`, in closed form
/// `‖U_{p^{-1/2}} Z(1)‖` with `p = g(1)`.
pub fn quotient_norm(g: &GroupElement, z: &LinOp) -> Result<f64> {
    let p = quotient_map(g)?;
    p.u_inv_sqrt(&z.apply(&g.algebra().unit())).jb_norm()
}

/// `U_{p^{1/2}}`, a point of the fiber over `p`.
pub fn section(p: &ConePoint) -> Result<GroupElement> {
    GroupElement::new(LinOp::u_op(p.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::opnorm::op_norm;
    use crate::random::Sampler;
    use crate::structure::split_str;
    use crate::testutil::algebra_and_seed;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let alg = Algebra::sym(3).unwrap();
        let mut s = Sampler::new(1);
        let p = ConePoint::new(s.positive(&alg, 0.5)).unwrap();
        assert!(quotient_map(&section(&p).unwrap()).unwrap().point().distance(p.point()) < 1e-12);
        let x = s.element(&alg, 1.0);
        let one = GroupElement::identity(&alg);
        let n = quotient_norm(&one, &LinOp::l_op(&x)).unwrap();
        assert!((n - x.jb_norm().unwrap()).abs() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]

        #[test]
        fn closed_form_is_the_infimum((alg, seed) in algebra_and_seed()) {
            let mut s = Sampler::new(seed);
            let g = section(&ConePoint::new(s.positive(&alg, 0.5)).unwrap())
                .unwrap()
                .compose(&GroupElement::exp(&s.derivation(&alg, 2, 0.5)));
            let body = LinOp::l_op(&s.element(&alg, 1.0)) + s.derivation(&alg, 2, 1.0);
            let z = g.op() * &body;
            let closed = quotient_norm(&g, &z).unwrap();
            for _ in 0..20 {
                let d = s.derivation(&alg, 2, 1.0);
                let r = op_norm(&(&body - &d));
                prop_assert!(r.lower_bound >= closed * (1.0 - 1e-9));
            }
            let best = op_norm(&split_str(&body).l_op());
            prop_assert!((best.estimate - closed).abs() < 1e-9 * closed.max(1.0));
        }
    }
}
