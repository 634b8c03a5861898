//! Property suites and experiments over Euclidean Jordan algebras, with
//! deterministic seeding and CSV/JSON reports.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{ConfigError, Suite, SuiteConfig, DEFAULT_COMPETITORS};
pub use report::{Bound, Cell, CheckRecord, DataTable, SuiteReport};
pub use suites::explore::explore_open_question;
pub use suites::geometry::run_geometry;
pub use suites::identities::run_identities;
pub use suites::lift::run_lift;
pub use suites::minimality::run_minimality;

/// Runs a checking suite; `Suite::Explore` has no checks and yields an empty passing report.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> symcone::Result<SuiteReport> {
    match suite {
        Suite::Identities => run_identities(cfg),
        Suite::Geometry => run_geometry(cfg),
        Suite::Minimality => run_minimality(cfg),
        Suite::Lift => run_lift(cfg),
        Suite::Explore => Ok(SuiteReport::new("explore", cfg, &[], None, Default::default())),
    }
}
