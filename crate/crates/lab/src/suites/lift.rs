//! Horizontal lifts of cone paths to the structure group, quotient
//! distances and norms.

use symcone::cone::{thompson_distance, ConePoint, SinePerturbation};
use symcone::group::{geodesic_lift, horizontal_lift, quotient_norm, section, GroupElement, LIFT_STEPS};
use symcone::{op_norm, split_str, trial_seed, Algebra, Element, LinOp, Result, Sampler};

use super::{rel, Tally};
use crate::config::{CheckSpec, SuiteConfig};
use crate::report::{Bound, Cell, DataTable, SuiteReport};

use Bound::Upper;

pub const CHECKS: &[CheckSpec] = &[
    ("lift_horizontality", 1e-6, Upper),
    ("lift_automorphism", 1e-6, Upper),
    ("lift_projection", 1e-7, Upper),
    ("lift_length_gap", 1e-5, Upper),
    ("geodesic_lift_closed_form", 1e-6, Upper),
    ("geodesic_lift_identity_transport", 1e-8, Upper),
    ("quotient_bounds_width", 1e-5, Upper),
    ("quotient_norm_infimum", 1e-9, Upper),
    ("orthogonality", 1e-12, Upper),
    ("rk4_order", 0.5, Upper),
];

/// Orthogonality pairs and derivations tried against the quotient norm, per trial.
const PAIRS: usize = 10;
/// Every how many grid points the geodesic lift is compared with its closed form.
const CLOSED_FORM_STRIDE: usize = 50;
/// Step counts for the convergence-order estimate.
const ORDER_STEPS: [usize; 3] = [20, 40, 80];
/// Discrepancy below which the integration counts as exact.
const EXACT: f64 = 1e-13;

/// A random smooth cone path between two random points.
fn random_path(s: &mut Sampler, alg: &Algebra) -> Result<(ConePoint, Element, SinePerturbation)> {
    let p = ConePoint::new(s.positive(alg, 0.5))?;
    let q = ConePoint::new(s.positive(alg, 0.5))?;
    let z = p.u_inv_sqrt(q.point()).log()?;
    let pert = SinePerturbation::random(s, &z)?;
    Ok((p, z, pert))
}

pub fn run_lift(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let alg = cfg.algebra();
    let mut t = Tally::new(cfg, CHECKS);
    let mut data = DataTable::new(&["trial", "t", "horizontality", "automorphism", "speed"]);

    if cfg.trials > 0 {
        // From the unit the geodesic needs no rotation at all.
        let mut s = Sampler::new(trial_seed(cfg.seed, u64::MAX));
        let v = s.element(&alg, 0.7);
        let one = ConePoint::unit(&alg);
        let r = geodesic_lift(&one, &ConePoint::exp(&v)?, LIFT_STEPS)?;
        let id = LinOp::identity(&alg);
        let dev = r.automorphisms.iter().fold(0.0_f64, |m, k| m.max(k.distance(&id)));
        t.observe("geodesic_lift_identity_transport", dev);

        let (p, z, pert) = random_path(&mut s, &alg)?;
        let ends: Vec<LinOp> = ORDER_STEPS
            .iter()
            .map(|&n| Ok(horizontal_lift(|t| pert.cone_path(&p, &z, t), n)?.automorphisms.pop().unwrap()))
            .collect::<Result<_>>()?;
        // Associative algebras are integrated exactly and have no order to measure.
        let (coarse, fine) = (ends[0].distance(&ends[2]), ends[1].distance(&ends[2]));
        if fine > EXACT {
            t.observe("rk4_order", ((coarse / fine).log2() - 4.0).abs());
        }
    }

    for i in 0..cfg.trials {
        let mut s = Sampler::new(trial_seed(cfg.seed, i as u64));
        let (p, z, pert) = random_path(&mut s, &alg)?;
        let r = horizontal_lift(|t| pert.cone_path(&p, &z, t), LIFT_STEPS)?;
        t.observe("lift_horizontality", r.max_horizontality_residual());
        t.observe("lift_automorphism", r.max_automorphism_residual());
        t.observe("lift_projection", r.max_base_residual());
        t.observe("lift_length_gap", (r.length - r.base_length).abs());
        for (j, &tt) in r.grid.iter().enumerate() {
            data.push(vec![
                Cell::Int(i as u64),
                Cell::Real(tt),
                Cell::Real(r.horizontality_residuals[j]),
                Cell::Real(r.automorphism_residuals[j]),
                Cell::Real(r.speeds[j]),
            ]);
        }

        // geodesic lift: closed form and the two-sided quotient bounds
        let x = ConePoint::new(s.positive(&alg, 0.5))?;
        let y = ConePoint::new(s.positive(&alg, 0.5))?;
        let g = geodesic_lift(&x, &y, LIFT_STEPS)?;
        let zx = x.u_inv_sqrt(y.point()).log()?;
        let ux = LinOp::u_op(x.sqrt());
        let mut cf = 0.0_f64;
        for j in (0..g.grid.len()).step_by(CLOSED_FORM_STRIDE) {
            let want = &ux * &(LinOp::l_op(&zx) * g.grid[j]).exp();
            cf = cf.max(rel(g.lift[j].distance(&want), want.frobenius()));
        }
        t.observe("geodesic_lift_closed_form", cf);
        let lower = thompson_distance(&x, &y)?;
        t.observe("quotient_bounds_width", (g.length - lower).abs());

        // quotient norm against derivative corrections
        let gp = section(&x)?.compose(&GroupElement::exp(&s.derivation(&alg, 2, 0.5)));
        let body = LinOp::l_op(&s.element(&alg, 1.0)) + s.derivation(&alg, 2, 1.0);
        let closed = quotient_norm(&gp, &(gp.op() * &body))?;
        let mut gap = (op_norm(&split_str(&body).l_op()).estimate - closed).abs();
        for _ in 0..PAIRS {
            let d = s.derivation(&alg, 2, 1.0);
            gap = gap.max(closed - op_norm(&(&body - &d)).lower_bound);
        }
        t.observe("quotient_norm_infimum", rel(gap, closed.max(1.0)));

        // ‖L_x + D‖ dominates both parts
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..PAIRS {
            let lx = LinOp::l_op(&s.element(&alg, 1.0));
            let d = s.derivation(&alg, 2, 1.0);
            let sum = op_norm(&(&lx + &d)).lower_bound;
            let parts = op_norm(&lx).lower_bound.max(op_norm(&d).lower_bound);
            worst = worst.max(rel(parts - sum, sum));
        }
        t.observe("orthogonality", worst);
    }
    Ok(t.finish("lift", cfg, Some(data)))
}
