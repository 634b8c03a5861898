use std::fmt::Write as _;

use super::metric::velocity_norms;
use super::point::ConePoint;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::gauge::GaugeFunction;
use crate::random::Sampler;

pub const SIMPSON_INTERVALS: usize = 2048;
pub const FD_STEP: f64 = 1e-5;

/// How the derivative samples of a [`SampledPath`] were obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Derivative {
    Analytic,
    Central { step: f64 },
}

/// A path sampled on a uniform grid of `[0, 1]`, with derivatives.
#[derive(Clone, Debug)]
pub struct SampledPath {
    grid: Vec<f64>,
    points: Vec<Element>,
    derivatives: Vec<Element>,
    mode: Derivative,
    cone: bool,
}

fn uniform_grid(intervals: usize) -> Result<Vec<f64>> {
    if intervals == 0 || intervals % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "need an even, positive number of intervals, got {intervals}"
        )));
    }
    Ok((0..=intervals).map(|i| i as f64 / intervals as f64).collect())
}

impl SampledPath {
    /// Samples `f` and its derivative `df`.
    pub fn analytic(
        f: impl Fn(f64) -> Result<Element>,
        df: impl Fn(f64) -> Result<Element>,
        intervals: usize,
    ) -> Result<Self> {
        let grid = uniform_grid(intervals)?;
        let points = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        let derivatives = grid.iter().map(|&t| df(t)).collect::<Result<Vec<_>>>()?;
        Ok(SampledPath {
            grid,
            points,
            derivatives,
            mode: Derivative::Analytic,
            cone: false,
        })
    }

    /// Samples `f` and differentiates by central differences with step `h`;
    /// `f` is evaluated at `t ± h`, slightly outside `[0, 1]` at the ends.
    pub fn central(f: impl Fn(f64) -> Result<Element>, intervals: usize, h: f64) -> Result<Self> {
        let grid = uniform_grid(intervals)?;
        let points = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        let derivatives = grid
            .iter()
            .map(|&t| Ok((f(t + h)? - f(t - h)?) * (0.5 / h)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SampledPath {
            grid,
            points,
            derivatives,
            mode: Derivative::Central { step: h },
            cone: false,
        })
    }

    /// Flags the path as lying in the cone after checking every sample.
    pub fn into_cone_path(mut self) -> Result<Self> {
        for p in &self.points {
            ConePoint::new(p.clone())?;
        }
        self.cone = true;
        Ok(self)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn points(&self) -> &[Element] {
        &self.points
    }

    pub fn derivatives(&self) -> &[Element] {
        &self.derivatives
    }

    pub fn mode(&self) -> Derivative {
        self.mode
    }

    pub fn is_cone_path(&self) -> bool {
        self.cone
    }

    pub fn intervals(&self) -> usize {
        self.grid.len() - 1
    }

    /// CSV with header `t,x0,x1,...` and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let d = self.points.first().map_or(0, Element::dim);
        let mut s = String::from("t");
        for i in 0..d {
            write!(s, ",x{i}").unwrap();
        }
        s.push('\n');
        for (t, p) in self.grid.iter().zip(&self.points) {
            write!(s, "{t:.16e}").unwrap();
            for c in p.coords().iter() {
                write!(s, ",{c:.16e}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

fn simpson_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i == n {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    }
}

/// Lengths of a sampled cone path under each gauge (Simpson quadrature).
pub fn path_lengths(path: &SampledPath, norms: &[GaugeFunction]) -> Result<Vec<f64>> {
    let n = path.intervals();
    let h = 1.0 / n as f64;
    let mut acc = vec![0.0; norms.len()];
    for (i, (p, dp)) in path.points.iter().zip(&path.derivatives).enumerate() {
        let w = simpson_weight(i, n);
        for (a, v) in acc.iter_mut().zip(velocity_norms(p, dp, norms)?) {
            *a += w * v;
        }
    }
    Ok(acc.into_iter().map(|a| a * h / 3.0).collect())
}

pub fn path_length(path: &SampledPath, norm: &GaugeFunction) -> Result<f64> {
    Ok(path_lengths(path, std::slice::from_ref(norm))?[0])
}

/// Lengths of `t ↦ γ(t)` on `[0, 1]` where `curve(t) = (γ(t), γ'(t))`,
/// accumulated on the fly without storing samples.
pub fn curve_lengths(
    curve: impl Fn(f64) -> Result<(Element, Element)>,
    intervals: usize,
    norms: &[GaugeFunction],
) -> Result<Vec<f64>> {
    let grid = uniform_grid(intervals)?;
    let mut acc = vec![0.0; norms.len()];
    for (i, &t) in grid.iter().enumerate() {
        let (g, dg) = curve(t)?;
        let w = simpson_weight(i, intervals);
        for (a, v) in acc.iter_mut().zip(velocity_norms(&g, &dg, norms)?) {
            *a += w * v;
        }
    }
    let h = 1.0 / intervals as f64;
    Ok(acc.into_iter().map(|a| a * h / 3.0).collect())
}

/// `Γ(t) = t z + Σ_j a_j sin(jπt) w_j` in exponential coordinates at a base
/// point; endpoints `Γ(0) = 0` and `Γ(1) = z` are preserved.
#[derive(Clone, Debug)]
pub struct SinePerturbation {
    pub amplitudes: Vec<f64>,
    pub directions: Vec<Element>,
}

impl SinePerturbation {
    pub const MODES: usize = 4;

    /// Random unit-norm directions and amplitudes with `‖a‖₂ = u·‖z‖`, `u ~ U(0,1)`.
    pub fn random(sampler: &mut Sampler, z: &Element) -> Result<Self> {
        let alg = z.algebra();
        let mut directions = Vec::with_capacity(Self::MODES);
        while directions.len() < Self::MODES {
            let w = sampler.element(alg, 1.0);
            let n = w.jb_norm()?;
            if n > 1e-12 {
                directions.push(w * (1.0 / n));
            }
        }
        let a = sampler.normal_vec(Self::MODES);
        let target = sampler.uniform() * z.jb_norm()?;
        let norm = a.norm();
        let amplitudes = if norm > 0.0 {
            a.iter().map(|v| v * target / norm).collect()
        } else {
            vec![0.0; Self::MODES]
        };
        Ok(SinePerturbation { amplitudes, directions })
    }

    /// `(Γ(t), Γ'(t))` for the chord `z`.
    pub fn log_path(&self, z: &Element, t: f64) -> (Element, Element) {
        let pi = std::f64::consts::PI;
        let mut g = z * t;
        let mut dg = z.clone();
        for (j, (a, w)) in self.amplitudes.iter().zip(&self.directions).enumerate() {
            let k = (j + 1) as f64 * pi;
            g += &(w * (a * (k * t).sin()));
            dg += &(w * (a * k * (k * t).cos()));
        }
        (g, dg)
    }

    /// The competitor `γ(t) = U_{p^{1/2}} exp(Γ(t))` with its exact velocity.
    pub fn cone_path(&self, p: &ConePoint, z: &Element, t: f64) -> Result<(Element, Element)> {
        let (g, dg) = self.log_path(z, t);
        let s = g.spectrum()?;
        Ok((p.u_sqrt(&s.exp()), p.u_sqrt(&s.exp_frechet(&dg))))
    }
}
