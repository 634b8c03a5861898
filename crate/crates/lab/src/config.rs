use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;
use symcone::Algebra;
use thiserror::Error;

use crate::report::{Bound, Check};
use crate::suites;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{0}")]
    Algebra(String),
    #[error("malformed tolerance `{0}`, expected NAME=VALUE")]
    MalformedTolerance(String),
    #[error("unknown tolerance `{name}` for suite {suite}; known: {known}")]
    UnknownTolerance {
        name: String,
        suite: &'static str,
        known: String,
    },
    #[error("tolerance `{name}` must be a finite number, got `{value}`")]
    BadTolerance { name: String, value: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Geometry,
    Minimality,
    Lift,
    Explore,
}

/// Name, default threshold and bound direction of a check.
pub type CheckSpec = (&'static str, f64, Bound);

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Geometry => "geometry",
            Suite::Minimality => "minimality",
            Suite::Lift => "lift",
            Suite::Explore => "explore",
        }
    }

    pub fn checks(self) -> &'static [CheckSpec] {
        match self {
            Suite::Identities => suites::identities::CHECKS,
            Suite::Geometry => suites::geometry::CHECKS,
            Suite::Minimality => suites::minimality::CHECKS,
            Suite::Lift => suites::lift::CHECKS,
            Suite::Explore => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub algebra: String,
    pub trials: usize,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Competitor paths per trial (minimality and explore).
    pub competitors: usize,
}

pub const DEFAULT_COMPETITORS: usize = 200;

fn parse_tolerance(arg: &str) -> Result<(String, f64), ConfigError> {
    let (name, value) = arg
        .split_once('=')
        .ok_or_else(|| ConfigError::MalformedTolerance(arg.to_string()))?;
    let v: f64 = value.trim().parse().map_err(|_| ConfigError::BadTolerance {
        name: name.to_string(),
        value: value.to_string(),
    })?;
    if !v.is_finite() {
        return Err(ConfigError::BadTolerance {
            name: name.to_string(),
            value: value.to_string(),
        });
    }
    Ok((name.trim().to_string(), v))
}

impl SuiteConfig {
    /// Validates the algebra and every `NAME=VALUE` override against the suite's checks.
    pub fn new(suite: Suite, algebra: &str, trials: usize, seed: u64, tolerances: &[String]) -> Result<Self, ConfigError> {
        Algebra::parse(algebra).map_err(|e| ConfigError::Algebra(e.to_string()))?;
        let known = suite.checks();
        let mut map = BTreeMap::new();
        for arg in tolerances {
            let (name, v) = parse_tolerance(arg)?;
            if !known.iter().any(|c| c.0 == name) {
                return Err(ConfigError::UnknownTolerance {
                    name,
                    suite: suite.name(),
                    known: known.iter().map(|c| c.0).collect::<Vec<_>>().join(", "),
                });
            }
            map.insert(name, v);
        }
        Ok(SuiteConfig {
            algebra: algebra.to_string(),
            trials,
            seed,
            tolerances: map,
            out: None,
            competitors: DEFAULT_COMPETITORS,
        })
    }

    pub fn with_out(mut self, out: Option<PathBuf>) -> Self {
        self.out = out;
        self
    }

    pub fn with_competitors(mut self, competitors: usize) -> Self {
        self.competitors = competitors;
        self
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::parse(&self.algebra).expect("validated at construction")
    }

    /// The checks of a suite with overrides applied.
    pub fn checks(&self, specs: &[CheckSpec]) -> Vec<Check> {
        specs
            .iter()
            .map(|&(name, default, bound)| Check::new(name, *self.tolerances.get(name).unwrap_or(&default), bound))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_and_malformed_tolerances() {
        let ok = SuiteConfig::new(Suite::Identities, "sym:2", 1, 0, &["jordan_identity=1e-8".into()]).unwrap();
        assert_eq!(ok.tolerances["jordan_identity"], 1e-8);
        let err = SuiteConfig::new(Suite::Identities, "sym:2", 1, 0, &["nope=1".into()]).unwrap_err();
        assert!(matches!(err, ConfigError::UnknownTolerance { .. }));
        let err = SuiteConfig::new(Suite::Identities, "sym:2", 1, 0, &["jordan_identity".into()]).unwrap_err();
        assert!(matches!(err, ConfigError::MalformedTolerance(_)));
        let err = SuiteConfig::new(Suite::Identities, "sym:2", 1, 0, &["jordan_identity=x".into()]).unwrap_err();
        assert!(matches!(err, ConfigError::BadTolerance { .. }));
        assert!(SuiteConfig::new(Suite::Geometry, "sym:9", 1, 0, &[]).is_err());
    }

    #[test]
    fn overrides_apply() {
        let cfg = SuiteConfig::new(Suite::Identities, "rn:3", 1, 0, &["unit_law=0.5".into()]).unwrap();
        let checks = cfg.checks(suites::identities::CHECKS);
        let mut c = checks.into_iter().find(|c| c.record().name == "unit_law").unwrap();
        c.observe(0.4);
        assert!(c.record().pass && c.record().threshold == 0.5);
    }
}
