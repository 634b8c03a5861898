//! The property suites and experiments driven by the command line.

pub mod explore;
pub mod geometry;
pub mod identities;
pub mod lift;
pub mod minimality;

use std::time::Instant;

use crate::config::{CheckSpec, SuiteConfig};
use crate::report::{Check, DataTable, SuiteReport};

/// Named checks of one suite run.
pub(crate) struct Tally {
    checks: Vec<Check>,
    started: Instant,
}

impl Tally {
    pub(crate) fn new(cfg: &SuiteConfig, specs: &[CheckSpec]) -> Self {
        Tally {
            checks: cfg.checks(specs),
            started: Instant::now(),
        }
    }

    pub(crate) fn observe(&mut self, name: &str, v: f64) {
        self.checks
            .iter_mut()
            .find(|c| c.name() == name)
            .unwrap_or_else(|| panic!("unregistered check {name}"))
            .observe(v);
    }

    pub(crate) fn finish(self, suite: &str, cfg: &SuiteConfig, data: Option<DataTable>) -> SuiteReport {
        SuiteReport::new(suite, cfg, &self.checks, data, self.started.elapsed())
    }
}

/// `a / b`, or `a` when `b` vanishes.
pub(crate) fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a
    } else {
        a / b
    }
}
