//! Acceptance run over the desk-scale algebras: one line per criterion,
//! non-zero exit when any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode, Output};

use symcone_lab::{run_suite, Bound, Suite, SuiteConfig, SuiteReport};

const ALGEBRAS: [&str; 4] = ["sym:2", "sym:3", "spin:4", "rn:4"];
const SEED: u64 = 1;

const IDENTITY_TRIALS: usize = 1000;
const GEOMETRY_TRIALS: usize = 100;
const MINIMALITY_PAIRS: usize = 20;
const COMPETITORS: usize = 200;
const LIFT_TRIALS: usize = 20;

/// `(suite, check, pinned threshold, direction)`.
type Pin = (Suite, &'static str, f64, Bound);

use Bound::{Lower, Upper};
use Suite::{Geometry, Identities, Lift, Minimality};

struct Criterion {
    id: u8,
    title: &'static str,
    pins: &'static [Pin],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "algebraic identities",
        pins: &[
            (Identities, "jordan_identity", 1e-9, Upper),
            (Identities, "fundamental_formula", 1e-9, Upper),
            (Identities, "v_inverse_identity", 1e-9, Upper),
            (Identities, "v_symmetric_part", 1e-9, Upper),
            (Identities, "v_antisymmetric_part", 1e-9, Upper),
            (Identities, "cartan_relations", 1e-9, Upper),
            (Identities, "str_membership", 1e-9, Upper),
            (Identities, "str_rejects_generic", 1e-3, Lower),
        ],
    },
    Criterion {
        id: 2,
        title: "cone connection",
        pins: &[
            (Geometry, "geodesic_ode", 1e-6, Upper),
            (Geometry, "exp_log_inversion", 1e-8, Upper),
            (Geometry, "transport_rk4", 1e-7, Upper),
            (Geometry, "transport_isometry", 1e-8, Upper),
            (Geometry, "curvature_two_routes", 1e-10, Upper),
            (Geometry, "curvature_flat", 1e-12, Upper),
        ],
    },
    Criterion {
        id: 3,
        title: "Thompson metric",
        pins: &[
            (Geometry, "thompson_symmetry", 1e-9, Upper),
            (Geometry, "thompson_invariance", 1e-8, Upper),
            (Geometry, "thompson_triangle", 1e-12, Upper),
            (Geometry, "thompson_example", 1e-10, Upper),
        ],
    },
    Criterion {
        id: 4,
        title: "minimality of geodesics",
        pins: &[
            (Minimality, "minimality_order", 1e-7, Upper),
            (Minimality, "minimality_lp1", 1e-7, Upper),
            (Minimality, "minimality_lp2", 1e-7, Upper),
            (Minimality, "minimality_kyfan", 1e-7, Upper),
        ],
    },
    Criterion {
        id: 5,
        title: "velocity identity",
        pins: &[(Geometry, "velocity_identity", 1e-7, Upper)],
    },
    Criterion {
        id: 6,
        title: "group geometry",
        pins: &[
            (Geometry, "group_geodesic_ode", 1e-6, Upper),
            (Geometry, "group_transport_rk4", 1e-7, Upper),
            (Geometry, "metric_positive_definite", 0.0, Lower),
            (Geometry, "metric_compatibility", 2e-6, Upper),
        ],
    },
    Criterion {
        id: 7,
        title: "lifts and quotient",
        pins: &[
            (Lift, "lift_horizontality", 1e-6, Upper),
            (Lift, "lift_automorphism", 1e-6, Upper),
            (Lift, "lift_length_gap", 1e-5, Upper),
            (Lift, "geodesic_lift_closed_form", 1e-6, Upper),
            (Lift, "quotient_bounds_width", 1e-5, Upper),
        ],
    },
    Criterion {
        id: 8,
        title: "orthogonality inequalities",
        pins: &[(Lift, "orthogonality", 1e-12, Upper)],
    },
];

fn trials(suite: Suite) -> usize {
    match suite {
        Identities => IDENTITY_TRIALS,
        Geometry => GEOMETRY_TRIALS,
        Minimality => MINIMALITY_PAIRS,
        _ => LIFT_TRIALS,
    }
}

/// Runs `suite` on `algebra` with every pinned threshold passed as an override.
fn run(suite: Suite, algebra: &str) -> SuiteReport {
    let tols: Vec<String> = CRITERIA
        .iter()
        .flat_map(|c| c.pins.iter())
        .filter(|p| p.0 == suite)
        .map(|p| format!("{}={:e}", p.1, p.2))
        .collect();
    let cfg = SuiteConfig::new(suite, algebra, trials(suite), SEED, &tols)
        .expect("valid configuration")
        .with_competitors(COMPETITORS);
    run_suite(suite, &cfg).unwrap_or_else(|e| panic!("{} on {algebra}: {e}", suite.name()))
}

fn holds(value: f64, threshold: f64, bound: Bound) -> bool {
    match bound {
        Upper => value < threshold,
        Lower => value > threshold,
    }
}

/// Checks every pin on every algebra; returns the verdict and a short detail.
fn judge(c: &Criterion, reports: &BTreeMap<(&str, &str), SuiteReport>) -> (bool, String) {
    let mut failures = Vec::new();
    let mut worst: Option<(f64, String)> = None;
    for &(suite, name, threshold, bound) in c.pins {
        for alg in ALGEBRAS {
            let report = &reports[&(suite.name(), alg)];
            let Some(r) = report.record(name) else {
                // the flatness check only exists on the associative algebra
                if name == "curvature_flat" && alg != "rn:4" {
                    continue;
                }
                failures.push(format!("{name} missing on {alg}"));
                continue;
            };
            if !holds(r.value, threshold, bound) || !r.pass {
                failures.push(format!("{name} on {alg}: {:e} vs {threshold:e}", r.value));
            }
            if bound == Upper && threshold > 0.0 {
                let ratio = r.value / threshold;
                if worst.as_ref().is_none_or(|w| ratio > w.0) {
                    worst = Some((ratio, format!("{name} on {alg} = {:.3e} (limit {threshold:e})", r.value)));
                }
            }
        }
    }
    if failures.is_empty() {
        (true, worst.map(|w| format!("worst {}", w.1)).unwrap_or_default())
    } else {
        (false, failures.join("; "))
    }
}

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcone-lab"))
        .args(args)
        .output()
        .expect("lab binary runs")
}

/// Runs a set of CLI invocations twice and compares stdout and written files byte for byte.
fn determinism() -> (bool, String) {
    let dir = std::env::temp_dir().join(format!("symcone-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("temp dir");
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let runs: Vec<(Vec<String>, Vec<String>)> = vec![
        (
            vec!["identities", "--algebra", "spin:4", "--trials", "200", "--seed", "9", "--out"]
                .into_iter()
                .map(String::from)
                .chain([path("identities.json")])
                .collect(),
            vec![path("identities.json")],
        ),
        (
            [
                "minimality", "--algebra", "sym:2", "--trials", "2", "--competitors", "10", "--seed", "9",
            ]
            .into_iter()
            .map(String::from)
            .chain(["--out".into(), path("minimality.csv"), "--data".into(), path("margins.csv")])
            .collect(),
            vec![path("minimality.csv"), path("margins.csv")],
        ),
        (
            ["lift", "--algebra", "sym:2", "--trials", "2", "--seed", "9", "--data"]
                .into_iter()
                .map(String::from)
                .chain([path("lift.csv")])
                .collect(),
            vec![path("lift.csv")],
        ),
        (
            ["explore", "--algebra", "sym:3", "--trials", "1", "--competitors", "5", "--norm", "0.5"]
                .into_iter()
                .map(String::from)
                .collect(),
            vec![],
        ),
    ];
    let mut problems = Vec::new();
    let mut compared = 0;
    for (args, files) in &runs {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut snapshots = Vec::new();
        for _ in 0..2 {
            let out = lab(&argv);
            if !out.status.success() {
                problems.push(format!("`{}` exited with {}", argv[0], out.status));
            }
            let mut bytes = vec![out.stdout];
            for f in files {
                bytes.push(fs::read(Path::new(f)).unwrap_or_default());
                let _ = fs::remove_file(f);
            }
            snapshots.push(bytes);
        }
        compared += snapshots[0].len();
        if snapshots[0] != snapshots[1] {
            problems.push(format!("`{}` output differs between runs", argv[0]));
        }
        if snapshots[0].iter().any(Vec::is_empty) {
            problems.push(format!("`{}` produced an empty output", argv[0]));
        }
    }
    let _ = fs::remove_dir_all(&dir);
    if problems.is_empty() {
        (true, format!("{compared} outputs byte-identical across repeated runs"))
    } else {
        (false, problems.join("; "))
    }
}

fn main() -> ExitCode {
    let mut reports = BTreeMap::new();
    for suite in [Identities, Geometry, Minimality, Lift] {
        for alg in ALGEBRAS {
            let r = run(suite, alg);
            eprintln!("{:>10} {:<7} {:>8.2?}", suite.name(), alg, r.wall_time);
            reports.insert((suite.name(), alg), r);
        }
    }

    let mut all = true;
    for c in CRITERIA {
        let (ok, detail) = judge(c, &reports);
        all &= ok;
        println!("[{}] criterion {}: {} ({detail})", if ok { "PASS" } else { "FAIL" }, c.id, c.title);
    }
    let (ok, detail) = determinism();
    all &= ok;
    println!("[{}] criterion 9: determinism ({detail})", if ok { "PASS" } else { "FAIL" });

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
