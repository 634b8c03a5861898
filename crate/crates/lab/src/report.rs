use std::time::Duration;

use serde::Serialize;

use crate::config::SuiteConfig;

/// Which side of the threshold a check must land on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Passes when the largest observed value is strictly below the threshold.
    Upper,
    /// Passes when the smallest observed value is strictly above the threshold.
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub trials: usize,
    /// Maximum residual for upper bounds, minimum value for lower bounds.
    pub value: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub pass: bool,
}

/// Running maximum (or minimum) of one check; a NaN observation sticks.
#[derive(Clone, Debug)]
pub struct Check {
    name: &'static str,
    threshold: f64,
    bound: Bound,
    trials: usize,
    value: f64,
}

impl Check {
    pub fn new(name: &'static str, threshold: f64, bound: Bound) -> Self {
        let value = match bound {
            Bound::Upper => f64::NEG_INFINITY,
            Bound::Lower => f64::INFINITY,
        };
        Check {
            name,
            threshold,
            bound,
            trials: 0,
            value,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn observe(&mut self, v: f64) {
        self.trials += 1;
        if self.value.is_nan() {
            return;
        }
        self.value = if v.is_nan() {
            f64::NAN
        } else {
            match self.bound {
                Bound::Upper => self.value.max(v),
                Bound::Lower => self.value.min(v),
            }
        };
    }

    pub fn record(&self) -> CheckRecord {
        let pass = match self.bound {
            Bound::Upper => self.value < self.threshold,
            Bound::Lower => self.value > self.threshold,
        };
        CheckRecord {
            name: self.name.to_string(),
            trials: self.trials,
            value: self.value,
            threshold: self.threshold,
            bound: self.bound,
            pass,
        }
    }
}

/// A table of experiment output written as CSV.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DataTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt_real(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// 17 significant digits, `.` decimal separator.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

impl DataTable {
    pub fn new(header: &[&str]) -> Self {
        DataTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    /// Not serialized, so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
    #[serde(skip)]
    pub data: Option<DataTable>,
}

impl SuiteReport {
    pub fn new(suite: &str, config: &SuiteConfig, checks: &[Check], data: Option<DataTable>, wall_time: Duration) -> Self {
        let records: Vec<CheckRecord> = checks.iter().filter(|c| c.trials > 0).map(Check::record).collect();
        SuiteReport {
            suite: suite.to_string(),
            config: config.clone(),
            pass: records.iter().all(|r| r.pass),
            records,
            wall_time,
            data,
        }
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// CSV with header `check,trials,value,threshold,bound,pass`.
    pub fn to_csv(&self) -> String {
        let mut t = DataTable::new(&["check", "trials", "value", "threshold", "bound", "pass"]);
        for r in &self.records {
            t.push(vec![
                Cell::Text(r.name.clone()),
                Cell::Int(r.trials as u64),
                Cell::Real(r.value),
                Cell::Real(r.threshold),
                Cell::Text(match r.bound {
                    Bound::Upper => "upper".into(),
                    Bound::Lower => "lower".into(),
                }),
                Cell::Text(r.pass.to_string()),
            ]);
        }
        t.to_csv()
    }

    /// One line per record, for terminals.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let op = match r.bound {
                Bound::Upper => '<',
                Bound::Lower => '>',
            };
            s += &format!(
                "{} {:<34} {:>12.4e} {op} {:<10.1e} ({} trials)\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.name,
                r.value,
                r.threshold,
                r.trials
            );
        }
        s += &format!("{}: {}\n", self.suite, if self.pass { "pass" } else { "FAIL" });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_tracks_extremes_and_nan() {
        let mut c = Check::new("a", 1.0, Bound::Upper);
        c.observe(0.2);
        c.observe(0.5);
        assert!(c.record().pass && c.record().value == 0.5);
        c.observe(f64::NAN);
        c.observe(0.1);
        assert!(!c.record().pass && c.record().trials == 4);

        let mut l = Check::new("b", 0.0, Bound::Lower);
        l.observe(3.0);
        l.observe(0.5);
        assert!(l.record().pass && l.record().value == 0.5);
        l.observe(0.0);
        assert!(!l.record().pass);
    }

    #[test]
    fn csv_uses_seventeen_digits() {
        let mut t = DataTable::new(&["i", "x"]);
        t.push(vec![Cell::Int(3), Cell::Real(0.1)]);
        assert_eq!(t.to_csv(), "i,x\n3,1.0000000000000001e-1\n");
        let back: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(back, 0.1);
    }
}
