//! Symmetric gauge functions applied to ordered eigenvalue moduli.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GaugeFunction {
    /// Largest modulus; recovers the order norm.
    Sup,
    /// `(Σ |s_i|^p)^{1/p}` with `p ≥ 1`.
    Lp(f64),
    /// Sum of the `k` largest moduli (clamped to the rank).
    KyFan(usize),
}

impl GaugeFunction {
    pub fn lp(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(GaugeFunction::Lp(p))
        } else if p == f64::INFINITY {
            Ok(GaugeFunction::Sup)
        } else {
            Err(Error::InvalidGauge(format!("lp needs p >= 1, got {p}")))
        }
    }

    pub fn kyfan(k: usize) -> Result<Self> {
        if k >= 1 {
            Ok(GaugeFunction::KyFan(k))
        } else {
            Err(Error::InvalidGauge("kyfan needs k >= 1".into()))
        }
    }

    /// Applies the gauge to arbitrary reals (signs and order are ignored).
    pub fn apply(&self, values: &[f64]) -> f64 {
        let mut m: Vec<f64> = values.iter().map(|v| v.abs()).collect();
        m.sort_by(|a, b| b.total_cmp(a));
        self.apply_ordered(&m)
    }

    /// Applies the gauge to values already ordered by decreasing modulus.
    pub fn apply_ordered(&self, ordered: &[f64]) -> f64 {
        match *self {
            GaugeFunction::Sup => ordered.first().map_or(0.0, |v| v.abs()),
            GaugeFunction::Lp(p) => lp(ordered.iter().map(|v| v.abs()), p),
            GaugeFunction::KyFan(k) => ordered.iter().take(k).map(|v| v.abs()).sum(),
        }
    }
}

fn lp(moduli: impl Iterator<Item = f64> + Clone, p: f64) -> f64 {
    if p == 1.0 {
        return moduli.sum();
    }
    if p == 2.0 {
        return moduli.map(|v| v * v).sum::<f64>().sqrt();
    }
    let scale = moduli.clone().fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    scale * moduli.map(|v| (v / scale).powf(p)).sum::<f64>().powf(1.0 / p)
}

impl fmt::Display for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeFunction::Sup => write!(f, "sup"),
            GaugeFunction::Lp(p) => write!(f, "lp:{p}"),
            GaugeFunction::KyFan(k) => write!(f, "kyfan:{k}"),
        }
    }
}

impl FromStr for GaugeFunction {
    type Err = Error;

    /// Accepts `sup`, `lp:P` and `kyfan:K`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGauge(s.to_string());
        match s.trim().split_once(':') {
            None if s.trim() == "sup" => Ok(GaugeFunction::Sup),
            Some(("lp", p)) => GaugeFunction::lp(p.trim().parse().map_err(|_| bad())?),
            Some(("kyfan", k)) => GaugeFunction::kyfan(k.trim().parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        let v = [2.0, -3.0];
        assert_eq!(GaugeFunction::Sup.apply(&v), 3.0);
        assert_eq!(GaugeFunction::Lp(1.0).apply(&v), 5.0);
        assert!((GaugeFunction::Lp(2.0).apply(&v) - 13f64.sqrt()).abs() < 1e-15);
        assert_eq!(GaugeFunction::KyFan(1).apply(&v), 3.0);
        assert_eq!(GaugeFunction::KyFan(5).apply(&v), 5.0);
        assert!((GaugeFunction::Lp(3.0).apply(&v) - 35f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["sup", "lp:1", "lp:2.5", "kyfan:2"] {
            assert_eq!(s.parse::<GaugeFunction>().unwrap().to_string(), s);
        }
        for s in ["lp:0.5", "kyfan:0", "max", "lp:x"] {
            assert!(s.parse::<GaugeFunction>().is_err(), "{s}");
        }
    }

    fn gauges() -> impl Strategy<Value = GaugeFunction> {
        prop_oneof![
            Just(GaugeFunction::Sup),
            (1.0..6.0f64).prop_map(GaugeFunction::Lp),
            (1usize..6).prop_map(GaugeFunction::KyFan),
        ]
    }

    proptest! {
        #[test]
        fn permutation_and_sign_invariant(
            phi in gauges(),
            v in prop::collection::vec(-10.0..10.0f64, 1..8),
            flips in prop::collection::vec(any::<bool>(), 8),
            rot in 0usize..8,
        ) {
            let base = phi.apply(&v);
            let mut w: Vec<f64> = v.iter().zip(&flips).map(|(x, f)| if *f { -x } else { *x }).collect();
            let r = rot % w.len();
            w.rotate_left(r);
            prop_assert!((phi.apply(&w) - base).abs() <= 1e-12 * (1.0 + base));
        }

        #[test]
        fn absolutely_homogeneous(phi in gauges(), v in prop::collection::vec(-10.0..10.0f64, 1..8), c in -5.0..5.0f64) {
            let w: Vec<f64> = v.iter().map(|x| c * x).collect();
            let lhs = phi.apply(&w);
            let rhs = c.abs() * phi.apply(&v);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }
    }
}
