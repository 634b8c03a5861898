//! Data for the open question whether `t ↦ e^{tD}`, `D ∈ der`, is shortest
//! among all cone-preserving paths from `1` to `e^D`. No verdict is drawn.

use symcone::group::{explore_aut_path, AUT_RADIUS};
use symcone::{op_norm, trial_seed, Error, Result, Sampler};

use crate::config::SuiteConfig;
use crate::report::{Cell, DataTable};

/// Grid intervals for the group path lengths.
pub const EXPLORE_INTERVALS: usize = 64;

/// One random derivation of norm `norm` per trial, compared against
/// `cfg.competitors` perturbed paths. Rows are
/// `(trial, competitor, length, margin)`; competitor `0` is `e^{tD}` itself.
pub fn explore_open_question(cfg: &SuiteConfig, norm: f64) -> Result<DataTable> {
    if !(0.0..AUT_RADIUS).contains(&norm) {
        return Err(Error::InvalidArgument(format!(
            "the one-parameter group e^(tD) is only known to be minimal in Aut for ||D|| < pi/2; got {norm}"
        )));
    }
    let alg = cfg.algebra();
    let mut table = DataTable::new(&["trial", "competitor", "length", "margin"]);
    for i in 0..cfg.trials {
        let mut s = Sampler::new(trial_seed(cfg.seed, i as u64));
        let raw = s.derivation(&alg, 2, 1.0);
        let n = op_norm(&raw).estimate;
        let d = if n > 0.0 { raw * (norm / n) } else { raw };
        let (base, rows) = explore_aut_path(&d, cfg.competitors, EXPLORE_INTERVALS, &mut s)?;
        table.push(vec![Cell::Int(i as u64), Cell::Int(0), Cell::Real(base), Cell::Real(0.0)]);
        for (c, len, margin) in rows {
            table.push(vec![
                Cell::Int(i as u64),
                Cell::Int(c as u64 + 1),
                Cell::Real(len),
                Cell::Real(margin),
            ]);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Suite;

    fn cfg(spec: &str) -> SuiteConfig {
        SuiteConfig::new(Suite::Explore, spec, 1, 2, &[]).unwrap().with_competitors(4)
    }

    #[test]
    fn zero_derivation_gives_zero_lengths() {
        let t = explore_open_question(&cfg("sym:2"), 0.0).unwrap();
        assert_eq!(t.rows.len(), 5);
        for row in &t.rows {
            assert!(matches!(row[2], Cell::Real(l) if l.abs() < 1e-12));
        }
    }

    #[test]
    fn rejects_large_derivations() {
        let err = explore_open_question(&cfg("sym:3"), 1.6).unwrap_err();
        assert!(err.to_string().contains("pi/2"));
    }

    #[test]
    fn emits_one_row_per_competitor() {
        let t = explore_open_question(&cfg("sym:3"), 0.5).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert!(t.to_csv().starts_with("trial,competitor,length,margin\n"));
    }
}
