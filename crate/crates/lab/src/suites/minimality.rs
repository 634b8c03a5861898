//! Geodesics against sine-perturbed competitors with the same endpoints.

use symcone::cone::{curve_lengths, ConePoint, SinePerturbation, SIMPSON_INTERVALS};
use symcone::{trial_seed, Result, Sampler};

use super::geometry::gauges;
use super::Tally;
use crate::config::{CheckSpec, SuiteConfig};
use crate::report::{Bound, Cell, DataTable, SuiteReport};

/// One minimality check per gauge, in the order of [`gauges`]; each
/// records the negated worst margin.
const MARGIN_CHECKS: [&str; 4] = ["minimality_order", "minimality_lp1", "minimality_lp2", "minimality_kyfan"];

pub const CHECKS: &[CheckSpec] = &[
    ("minimality_order", 1e-7, Bound::Upper),
    ("minimality_lp1", 1e-7, Bound::Upper),
    ("minimality_lp2", 1e-7, Bound::Upper),
    ("minimality_kyfan", 1e-7, Bound::Upper),
    ("geodesic_quadrature", 1e-9, Bound::Upper),
];

pub fn run_minimality(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let alg = cfg.algebra();
    let norms = gauges(&alg);
    let mut t = Tally::new(cfg, CHECKS);
    let mut data = DataTable::new(&[
        "trial",
        "competitor",
        "norm",
        "length_geodesic",
        "length_competitor",
        "margin",
    ]);
    for i in 0..cfg.trials {
        let mut s = Sampler::new(trial_seed(cfg.seed, i as u64));
        let p = ConePoint::new(s.positive(&alg, 0.5))?;
        let q = ConePoint::new(s.positive(&alg, 0.5))?;
        let z = p.u_inv_sqrt(q.point()).log()?;

        // The geodesic has constant speed φ(z); its quadrature must reproduce it.
        let exact: Vec<f64> = norms.iter().map(|phi| z.gauge_norm(phi)).collect::<Result<_>>()?;
        let flat = SinePerturbation {
            amplitudes: vec![0.0; SinePerturbation::MODES],
            directions: vec![alg.zero(); SinePerturbation::MODES],
        };
        let quad = curve_lengths(|t| flat.cone_path(&p, &z, t), SIMPSON_INTERVALS, &norms)?;
        let err = exact.iter().zip(&quad).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs() / a.max(1.0)));
        t.observe("geodesic_quadrature", err);

        let mut worst = [f64::INFINITY; 4];
        for c in 0..cfg.competitors {
            let pert = SinePerturbation::random(&mut s, &z)?;
            let lens = curve_lengths(|t| pert.cone_path(&p, &z, t), SIMPSON_INTERVALS, &norms)?;
            for (k, phi) in norms.iter().enumerate() {
                let margin = lens[k] - exact[k];
                worst[k] = worst[k].min(margin);
                data.push(vec![
                    Cell::Int(i as u64),
                    Cell::Int(c as u64),
                    Cell::Text(phi.to_string()),
                    Cell::Real(exact[k]),
                    Cell::Real(lens[k]),
                    Cell::Real(margin),
                ]);
            }
        }
        if cfg.competitors > 0 {
            for (name, w) in MARGIN_CHECKS.iter().zip(worst) {
                t.observe(name, -w);
            }
        }
    }
    Ok(t.finish("minimality", cfg, Some(data)))
}
