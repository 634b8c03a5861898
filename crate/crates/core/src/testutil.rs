//! Shared proptest strategies.

use proptest::prelude::*;

use crate::algebra::Algebra;

pub const SPECS: [&str; 5] = ["sym:2", "sym:3", "spin:4", "rn:4", "sum:sym:2+spin:3"];

pub fn algebra() -> impl Strategy<Value = Algebra> {
    prop::sample::select(SPECS.to_vec()).prop_map(|s| Algebra::parse(s).unwrap())
}

pub fn algebra_and_seed() -> impl Strategy<Value = (Algebra, u64)> {
    (algebra(), any::<u64>())
}

/// An algebra together with coordinates drawn uniformly from `[-r, r]`.
pub fn algebra_and_coords(r: f64) -> impl Strategy<Value = (Algebra, Vec<f64>)> {
    algebra().prop_flat_map(move |alg| {
        let d = alg.dim();
        (Just(alg), prop::collection::vec(-r..=r, d))
    })
}
