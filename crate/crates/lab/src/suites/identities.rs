//! Jordan-algebra and operator-space identities.

use symcone::identities::*;
use symcone::opnorm::op_norm_upper_bound;
use symcone::structure::{derivation_residual_strict, in_structure_algebra};
use symcone::{op_norm, trial_seed, Result, Sampler};

use super::{rel, Tally};
use crate::config::{CheckSpec, SuiteConfig};
use crate::report::{Bound, SuiteReport};

use Bound::{Lower, Upper};

pub const CHECKS: &[CheckSpec] = &[
    ("commutativity", 1e-9, Upper),
    ("jordan_identity", 1e-9, Upper),
    ("unit_law", 1e-9, Upper),
    ("fundamental_formula", 1e-9, Upper),
    ("v_inverse_identity", 1e-9, Upper),
    ("v_symmetric_part", 1e-9, Upper),
    ("v_antisymmetric_part", 1e-9, Upper),
    ("v_overline", 1e-9, Upper),
    ("cartan_relations", 1e-9, Upper),
    ("derivation_generator", 1e-9, Upper),
    ("str_membership", 1e-9, Upper),
    ("str_rejects_generic", 1e-3, Lower),
    ("spectral_reconstruction", 1e-9, Upper),
    ("exp_log", 1e-9, Upper),
    ("jb_norm_square", 1e-9, Upper),
    ("op_norm_bracket", 1e-12, Upper),
];

pub fn run_identities(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let alg = cfg.algebra();
    let mut t = Tally::new(cfg, CHECKS);
    for i in 0..cfg.trials {
        let mut s = Sampler::new(trial_seed(cfg.seed, i as u64));
        let (x, y, v) = (s.element(&alg, 1.0), s.element(&alg, 1.0), s.element(&alg, 1.0));
        let p = s.positive(&alg, 1.0);
        let d1 = s.derivation(&alg, 2, 1.0);
        let d2 = s.derivation(&alg, 2, 1.0);
        let h = s.operator(&alg, 1.0);

        t.observe("commutativity", commutativity(&x, &y));
        t.observe("jordan_identity", jordan_identity(&x, &y));
        t.observe("unit_law", unit_law(&x));
        t.observe("fundamental_formula", fundamental_formula(&x, &y));
        t.observe("v_inverse_identity", v_inverse_identity(&p, &y)?);
        t.observe("v_symmetric_part", v_symmetric_part(&x, &y));
        t.observe("v_antisymmetric_part", v_antisymmetric_part(&x, &y, 2.0));
        t.observe("v_overline", v_overline(&x, &y));
        t.observe("cartan_relations", cartan_relations(&x, &y, &v, &d1, &d2));
        t.observe("derivation_generator", rel(derivation_residual_strict(&d1), d1.frobenius()));
        t.observe("str_membership", str_membership(&v, &d1));
        t.observe("str_rejects_generic", in_structure_algebra(&h));

        let sp = x.spectrum()?;
        t.observe("spectral_reconstruction", rel(sp.reconstruct().distance(&x), x.coord_norm()));
        t.observe("exp_log", rel(x.exp()?.log()?.distance(&x), x.coord_norm()));
        let n = x.jb_norm()?;
        t.observe("jb_norm_square", rel((x.square().jb_norm()? - n * n).abs(), n * n));
        let r = op_norm(&h);
        let ub = op_norm_upper_bound(&h);
        t.observe(
            "op_norm_bracket",
            rel((r.lower_bound - r.estimate).max(r.estimate - ub).max(0.0), ub),
        );
    }
    Ok(t.finish("identities", cfg, None))
}
