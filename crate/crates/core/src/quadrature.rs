//! Gauss–Legendre and composite Simpson quadrature.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Integrates over `[a, b]` with an `n`-point Gauss–Legendre rule.
pub fn gauss_legendre_integrate<T, F>(f: F, a: f64, b: f64, n: usize, zero: T) -> T
where
    F: Fn(f64) -> T,
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter()
        .zip(&w)
        .fold(zero, |acc, (xi, wi)| acc + f(mid + half * xi) * (wi * half))
}

/// Composite Simpson rule on uniformly spaced samples (odd count, even intervals).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 3 && n % 2 == 1, "Simpson needs an even number of intervals");
    let mut s = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}

/// Composite Simpson of `f` on `[a, b]` with `intervals` (even) subintervals.
pub fn simpson_fn(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let v: Vec<f64> = (0..=intervals).map(|i| f(a + i as f64 * h)).collect();
    simpson(&v, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        for n in [1, 2, 5, 32, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n={n}");
            for deg in 0..(2 * n).min(40) {
                let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn gauss_legendre_on_interval() {
        let v = gauss_legendre_integrate(f64::exp, 0.0, 1.0, 16, 0.0);
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn simpson_exact_on_cubics() {
        let v = simpson_fn(|t| t * t * t - 2.0 * t + 1.0, 0.0, 2.0, 4);
        assert!((v - 2.0).abs() < 1e-14);
        let s = simpson_fn(f64::sin, 0.0, PI, 2048);
        assert!((s - 2.0).abs() < 1e-12);
    }
}
