//! Fixed-step classical Runge–Kutta integration.

use nalgebra::{DMatrix, DVector};

/// States that RK4 can combine linearly.
pub trait OdeState: Clone {
    /// `self + h·k`
    fn axpy(&self, h: f64, k: &Self) -> Self;
}

impl OdeState for DVector<f64> {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        self + k * h
    }
}

impl OdeState for DMatrix<f64> {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        self + k * h
    }
}

impl<A: OdeState, B: OdeState> OdeState for (A, B) {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        (self.0.axpy(h, &k.0), self.1.axpy(h, &k.1))
    }
}

/// One RK4 step of `y' = f(t, y)` from `t` to `t + h`.
pub fn rk4_step<S: OdeState>(f: &mut impl FnMut(f64, &S) -> S, t: f64, y: &S, h: f64) -> S {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &y.axpy(0.5 * h, &k1));
    let k3 = f(t + 0.5 * h, &y.axpy(0.5 * h, &k2));
    let k4 = f(t + h, &y.axpy(h, &k3));
    y.axpy(h / 6.0, &k1)
        .axpy(h / 3.0, &k2)
        .axpy(h / 3.0, &k3)
        .axpy(h / 6.0, &k4)
}

/// Integrates from `t0` to `t1` in `steps` equal steps and returns the final state.
pub fn rk4<S: OdeState>(mut f: impl FnMut(f64, &S) -> S, t0: f64, t1: f64, y0: S, steps: usize) -> S {
    let h = (t1 - t0) / steps as f64;
    let mut y = y0;
    for i in 0..steps {
        y = rk4_step(&mut f, t0 + i as f64 * h, &y, h);
    }
    y
}

/// Like [`rk4`] but keeps the `steps + 1` states on the grid.
pub fn rk4_trajectory<S: OdeState>(mut f: impl FnMut(f64, &S) -> S, t0: f64, t1: f64, y0: S, steps: usize) -> Vec<S> {
    let h = (t1 - t0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(y0);
    for i in 0..steps {
        let next = rk4_step(&mut f, t0 + i as f64 * h, out.last().unwrap(), h);
        out.push(next);
    }
    out
}
