//! Connections and metrics: the cone as a symmetric space and the
//! structure group with its left-invariant spray.

use symcone::cone::*;
use symcone::group::*;
use symcone::structure::automorphism_residual;
use symcone::{trial_seed, Algebra, AlgebraKind, Element, GaugeFunction, LinOp, Result, Sampler};

use super::{rel, Tally};
use crate::config::{CheckSpec, SuiteConfig};
use crate::report::{Bound, SuiteReport};

use Bound::{Lower, Upper};

pub const CHECKS: &[CheckSpec] = &[
    ("mu_axioms", 1e-8, Upper),
    ("mu_str_invariance", 1e-8, Upper),
    ("mu_star_finite_difference", 2e-6, Upper),
    ("spray_polarization", 1e-10, Upper),
    ("geodesic_ode", 1e-6, Upper),
    ("geodesic_endpoints", 1e-9, Upper),
    ("exp_log_inversion", 1e-8, Upper),
    ("transport_rk4", 1e-7, Upper),
    ("transport_isometry", 1e-8, Upper),
    ("curvature_two_routes", 1e-10, Upper),
    ("curvature_antisymmetry", 1e-10, Upper),
    ("curvature_transported", 1e-8, Upper),
    ("curvature_flat", 1e-12, Upper),
    ("killing_flow", 1e-8, Upper),
    ("thompson_symmetry", 1e-9, Upper),
    ("thompson_invariance", 1e-8, Upper),
    ("thompson_triangle", 1e-12, Upper),
    ("thompson_example", 1e-10, Upper),
    ("finsler_invariance", 1e-8, Upper),
    ("velocity_identity", 1e-7, Upper),
    ("geodesic_length", 1e-6, Upper),
    ("midpoint_convexity", 1e-8, Upper),
    ("group_spray_forms", 1e-10, Upper),
    ("group_christoffel_polarization", 1e-10, Upper),
    ("group_geodesic_ode", 1e-6, Upper),
    ("aut_totally_geodesic", 1e-7, Upper),
    ("cone_preserving_geodesic", 1e-7, Upper),
    ("group_transport_rk4", 1e-7, Upper),
    ("metric_positive_definite", 0.0, Lower),
    ("metric_compatibility", 2e-6, Upper),
];

/// Triangle-inequality triples per trial.
const TRIPLES: usize = 10;
/// Metric positivity samples per trial.
const METRIC_SAMPLES: usize = 10;
/// Grid for the geodesic-length quadrature check.
const LENGTH_INTERVALS: usize = 256;

fn cp(e: Element) -> Result<ConePoint> {
    ConePoint::new(e)
}

pub(crate) fn gauges(alg: &Algebra) -> Vec<GaugeFunction> {
    vec![
        GaugeFunction::Sup,
        GaugeFunction::Lp(1.0),
        GaugeFunction::Lp(2.0),
        GaugeFunction::KyFan(alg.rank().min(2)),
    ]
}

/// Two points at Thompson distance `log 4`: `diag(1,4,1,…)`, `diag(4,1,1,…)`
/// or the spin/sum analogue built from a Jordan frame.
fn thompson_pair(alg: &Algebra) -> Result<Option<(Element, Element)>> {
    if alg.rank() < 2 {
        return Ok(None);
    }
    let mut a = vec![0.0; alg.dim()];
    let mut b = vec![0.0; alg.dim()];
    match alg.kind() {
        AlgebraKind::Sym(n) | AlgebraKind::Rn(n) => {
            a[..*n].fill(1.0);
            b[..*n].fill(1.0);
            (a[0], a[1], b[0], b[1]) = (1.0, 4.0, 4.0, 1.0);
        }
        AlgebraKind::Spin(_) => {
            (a[0], a[1], b[0], b[1]) = (2.5, -1.5, 2.5, 1.5);
        }
        AlgebraKind::Sum(..) => {
            let c = Sampler::new(1).element(alg, 1.0).spectrum()?.idempotents();
            let one = alg.unit();
            return Ok(Some((&one + &(&c[1] * 3.0), &one + &(&c[0] * 3.0))));
        }
    }
    Ok(Some((alg.element(&a)?, alg.element(&b)?)))
}

fn poly(c: &[LinOp], t: f64) -> (LinOp, LinOp) {
    let mut x = LinOp::zeros(c[0].algebra());
    let mut dx = x.clone();
    for (k, ck) in c.iter().enumerate() {
        x += &(ck * t.powi(k as i32));
        if k > 0 {
            dx += &(ck * (k as f64 * t.powi(k as i32 - 1)));
        }
    }
    (x, dx)
}

/// Step of the five-point second difference.
const ODE_STEP: f64 = 1e-3;

/// Five-point central second difference at `0`.
fn second_difference<T>(f: impl Fn(f64) -> Result<T>) -> Result<T>
where
    T: std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let h = ODE_STEP;
    let outer = f(-2.0 * h)? + f(2.0 * h)?;
    let inner = f(-h)? + f(h)?;
    Ok((inner * 16.0 - outer - f(0.0)? * 30.0) * (1.0 / (12.0 * h * h)))
}

fn random_str(s: &mut Sampler, alg: &Algebra, scale: f64) -> LinOp {
    LinOp::l_op(&s.element(alg, scale)) + s.derivation(alg, 2, scale)
}

pub fn run_geometry(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let alg = cfg.algebra();
    let norms = gauges(&alg);
    let flat = matches!(alg.kind(), AlgebraKind::Rn(_));
    let mut t = Tally::new(cfg, CHECKS);
    if cfg.trials > 0 {
        if let Some((a, b)) = thompson_pair(&alg)? {
            let d = thompson_distance(&cp(a)?, &cp(b)?)?;
            t.observe("thompson_example", (d - 4f64.ln()).abs());
        }
    }
    for i in 0..cfg.trials {
        let mut s = Sampler::new(trial_seed(cfg.seed, i as u64));
        cone_trial(&mut s, &alg, &norms, flat, &mut t)?;
        group_trial(&mut s, &alg, &mut t)?;
    }
    Ok(t.finish("geometry", cfg, None))
}

fn cone_trial(s: &mut Sampler, alg: &Algebra, norms: &[GaugeFunction], flat: bool, t: &mut Tally) -> Result<()> {
    let x = cp(s.positive(alg, 0.5))?;
    let y = cp(s.positive(alg, 0.5))?;
    let z = cp(s.positive(alg, 0.5))?;
    let (v, w, u) = (s.element(alg, 0.5), s.element(alg, 0.5), s.element(alg, 0.5));
    let a = s.positive(alg, 0.5);

    // symmetric-space axioms
    let xy = cp(mu(&x, &y))?;
    let n = x.point().coord_norm().max(y.point().coord_norm());
    let s1 = mu(&x, &x).distance(x.point());
    let s2 = mu(&x, &xy).distance(y.point());
    let s3 = mu(&x, &cp(mu(&y, &z))?).distance(&mu(&xy, &cp(mu(&x, &z))?));
    t.observe("mu_axioms", rel(s1.max(s2).max(s3), n));
    let lhs = a.u_apply(&mu(&x, &y));
    let rhs = mu(&cp(a.u_apply(x.point()))?, &cp(a.u_apply(y.point()))?);
    t.observe("mu_str_invariance", rel(lhs.distance(&rhs), rhs.coord_norm()));

    let h = 1e-5;
    let at = |e: f64| -> Result<Element> { Ok(mu(&cp(x.point() + &(&v * e))?, &cp(y.point() + &(&w * e))?)) };
    let fd = (at(h)? - at(-h)?) * (0.5 / h);
    let ms = mu_star(&Tangent::new(x.clone(), v.clone())?, &Tangent::new(y.clone(), w.clone())?);
    t.observe("mu_star_finite_difference", rel(ms.distance(&fd), ms.coord_norm().max(1.0)));

    let pol = (spray(&x, &(&v + &w)) - spray(&x, &v) - spray(&x, &w)) * 0.5;
    let ch = christoffel(&x, &v, &w);
    t.observe("spray_polarization", rel(pol.distance(&ch), ch.coord_norm().max(1.0)));

    // geodesics
    let g = |tt: f64| -> Result<Element> { Ok(geodesic(&x, &v, tt)?.into_point()) };
    let mut ode = 0.0_f64;
    for k in 1..=11 {
        let tt = k as f64 / 12.0;
        let acc = second_difference(|e| g(tt + e))?;
        let f = spray(&cp(g(tt)?)?, &geodesic_velocity(&x, &v, tt)?);
        ode = ode.max(rel(acc.distance(&f), f.coord_norm().max(1.0)));
    }
    t.observe("geodesic_ode", ode);
    let e0 = geodesic_between(&x, &y, 0.0)?.point().distance(x.point());
    let e1 = geodesic_between(&x, &y, 1.0)?.point().distance(y.point());
    t.observe("geodesic_endpoints", rel(e0.max(e1), n));
    let back = geodesic(&x, &log_map(&x, &y)?, 1.0)?;
    t.observe("exp_log_inversion", rel(back.point().distance(y.point()), y.point().coord_norm()));

    // transport
    let closed = parallel_transport(&x, &y, 1.0, &u)?;
    let ode = parallel_transport_rk4(&x, &y, 1.0, &u, TRANSPORT_RK4_STEPS)?;
    t.observe("transport_rk4", rel(closed.distance(&ode), closed.coord_norm().max(1.0)));
    let tt = s.uniform();
    let at_t = geodesic_between(&x, &y, tt)?;
    let pu = parallel_transport(&x, &y, tt, &u)?;
    let mut iso = 0.0_f64;
    for phi in norms {
        let before = finsler_norm(&x, &u, phi)?;
        iso = iso.max(rel((finsler_norm(&at_t, &pu, phi)? - before).abs(), before.max(1.0)));
    }
    t.observe("transport_isometry", iso);

    // curvature
    let r = curvature(&x, &v, &w, &u);
    let scale = (v.coord_norm() * w.coord_norm() * u.coord_norm() * x.inverse().coord_norm().powi(2)).max(1e-300);
    t.observe("curvature_two_routes", r.distance(&curvature_bracket(&x, &v, &w, &u)) / scale);
    t.observe("curvature_antisymmetry", (&r + &curvature(&x, &w, &v, &u)).coord_norm() / scale);
    let pt = |e: &Element| parallel_transport(&x, &y, tt, e);
    let moved = curvature(&at_t, &pt(&v)?, &pt(&w)?, &pt(&u)?);
    t.observe("curvature_transported", rel(pt(&r)?.distance(&moved), moved.coord_norm().max(1.0)));
    if flat {
        t.observe("curvature_flat", r.coord_norm() / scale);
    }

    // Killing flow
    let h = 1e-5;
    let kf = |tt: f64| -> Result<Element> { Ok(killing_flow(&v, &x, tt)?.into_point()) };
    let field = killing_field(&v, &x);
    let d = rel(((kf(h)? - kf(-h)?) * (0.5 / h)).distance(&field), field.coord_norm().max(1.0));
    let composed = killing_flow(&v, &killing_flow(&v, &x, 0.4)?, 0.3)?;
    let flow = rel(kf(0.7)?.distance(composed.point()), composed.point().coord_norm());
    let lhs = killing_flow(&v, &xy, 0.6)?.into_point();
    let rhs = mu(&killing_flow(&v, &x, 0.6)?, &killing_flow(&v, &y, 0.6)?);
    let inv = rel(lhs.distance(&rhs), rhs.coord_norm());
    t.observe("killing_flow", d.max(flow).max(inv));

    // Thompson metric
    let dxy = thompson_distance(&x, &y)?;
    let sym = (dxy - thompson_distance_reverse(&x, &y)?).abs();
    t.observe("thompson_symmetry", rel(sym, dxy.max(1.0)));
    let ga = cp(a.u_apply(x.point()))?;
    let gb = cp(a.u_apply(y.point()))?;
    t.observe("thompson_invariance", rel((thompson_distance(&ga, &gb)? - dxy).abs(), dxy.max(1.0)));
    let mut tri = f64::NEG_INFINITY;
    for _ in 0..TRIPLES {
        let p = cp(s.positive(alg, 1.0))?;
        let q = cp(s.positive(alg, 1.0))?;
        let r = cp(s.positive(alg, 1.0))?;
        let direct = thompson_distance(&p, &q)?;
        let around = thompson_distance(&p, &r)? + thompson_distance(&r, &q)?;
        tri = tri.max(rel(direct - around, around.max(1.0)));
    }
    t.observe("thompson_triangle", tri);
    let mut fin = 0.0_f64;
    for phi in norms {
        let n0 = finsler_norm(&x, &v, phi)?;
        let n1 = finsler_norm(&ga, &a.u_apply(&v), phi)?;
        fin = fin.max(rel((n0 - n1).abs(), n0.max(1.0)));
    }
    t.observe("finsler_invariance", fin);

    // Lie velocity, two routes
    let gl = s.element(alg, 0.7);
    let gd = s.element(alg, 1.0);
    let a1 = lie_velocity(&gl, &gd);
    let a2 = lie_velocity_direct(&gl, &gd)?;
    t.observe("velocity_identity", rel(a1.distance(&a2), a1.coord_norm().max(1.0)));

    // length of a geodesic
    let path = SampledPath::analytic(
        |tt| Ok(geodesic(&x, &v, tt)?.into_point()),
        |tt| geodesic_velocity(&x, &v, tt),
        LENGTH_INTERVALS,
    )?
    .into_cone_path()?;
    let lens = path_lengths(&path, norms)?;
    let mut gl_err = 0.0_f64;
    for (phi, l) in norms.iter().zip(lens) {
        let want = finsler_norm(&x, &v, phi)?;
        gl_err = gl_err.max(rel((l - want).abs(), want.max(1.0)));
    }
    t.observe("geodesic_length", gl_err);

    // midpoint convexity of t ↦ dist(α(t), β(t)) at 9 interior points
    let dist = |tt: f64| -> Result<f64> {
        thompson_distance(&geodesic_between(&x, &y, tt)?, &geodesic_between(&z, &xy, tt)?)
    };
    let mut conv = f64::NEG_INFINITY;
    for k in 1..=9 {
        let m = k as f64 / 10.0;
        let r = m.min(1.0 - m);
        let mid = dist(m)?;
        let chord = 0.5 * (dist(m - r)? + dist(m + r)?);
        conv = conv.max(rel(mid - chord, chord.max(1.0)));
    }
    t.observe("midpoint_convexity", conv);
    Ok(())
}

fn group_trial(s: &mut Sampler, alg: &Algebra, t: &mut Tally) -> Result<()> {
    let g = GroupElement::exp(&random_str(s, alg, 0.4));
    let x = s.element(alg, 0.5);
    let d = s.derivation(alg, 2, 0.5);
    let lx = LinOp::l_op(&x);
    let v = &lx + &d;
    let vn = v.amax().max(1.0);

    let f = spray_body(&v)?;
    t.observe("group_spray_forms", rel(f.distance(&spray_body_split(&x, &d)), vn * vn));

    let y = s.element(alg, 0.5);
    let dd = s.derivation(alg, 2, 0.5);
    let w = LinOp::l_op(&y) + &dd;
    let pol = (spray_body(&(&v + &w))? - spray_body(&v)? - spray_body(&w)?) * 0.5;
    let c = christoffel_body(&v, &w)?;
    let c5 = christoffel_body_split(&x, &d, &y, &dd);
    let sc = vn * w.amax().max(1.0);
    t.observe("group_christoffel_polarization", rel(pol.distance(&c).max(c5.distance(&c)), sc));

    let at = |tt: f64| -> Result<LinOp> { Ok(group_geodesic(&g, &x, &d, tt)?.into_op()) };
    let mut ode = 0.0_f64;
    for k in 1..=11 {
        let tt = k as f64 / 12.0;
        let acc = second_difference(|e| at(tt + e))?;
        let fg = group_spray(&group_geodesic(&g, &x, &d, tt)?, &group_geodesic_body(&x, &d, tt))?;
        ode = ode.max(rel(acc.distance(&fg), fg.amax().max(1.0)));
    }
    t.observe("group_geodesic_ode", ode);

    let one = GroupElement::identity(alg);
    let (mut aut, mut cone) = (0.0_f64, 0.0_f64);
    for k in 0..=8 {
        let tt = k as f64 / 8.0;
        aut = aut.max(automorphism_residual(group_geodesic(&one, &alg.zero(), &d, tt)?.op()));
        cone = cone.max(group_geodesic(&g, &x, &d, tt)?.cone_residual());
    }
    t.observe("aut_totally_geodesic", aut);
    t.observe("cone_preserving_geodesic", cone);

    let mu0 = g.op() * &random_str(s, alg, 1.0);
    let closed = group_parallel_transport(&g, &x, &d, 1.0, &mu0)?;
    let rk = group_parallel_transport_rk4(&g, &x, &d, 1.0, &mu0, GROUP_RK4_STEPS)?;
    t.observe("group_transport_rk4", rel(closed.distance(&rk), closed.amax().max(1.0)));

    let mut pd = f64::INFINITY;
    for _ in 0..METRIC_SAMPLES {
        let v = random_str(s, alg, 1.0);
        pd = pd.min(euclidean_inner(&v, &v)? / v.frobenius().powi(2));
    }
    t.observe("metric_positive_definite", pd);

    let cv: Vec<LinOp> = (0..3).map(|_| random_str(s, alg, 1.0)).collect();
    let cx: Vec<LinOp> = (0..3).map(|_| random_str(s, alg, 1.0)).collect();
    let cy: Vec<LinOp> = (0..3).map(|_| random_str(s, alg, 1.0)).collect();
    let tt = 0.1 + 0.8 * s.uniform();
    let h = 1e-5;
    let m = |tt: f64| euclidean_inner(&poly(&cx, tt).0, &poly(&cy, tt).0);
    let lhs = (m(tt + h)? - m(tt - h)?) / (2.0 * h);
    let vb = poly(&cv, tt).0;
    let (xb, dxb) = poly(&cx, tt);
    let (yb, dyb) = poly(&cy, tt);
    let rhs = euclidean_inner(&covariant_derivative_body(&vb, &xb, &dxb)?, &yb)?
        + euclidean_inner(&xb, &covariant_derivative_body(&vb, &yb, &dyb)?)?;
    let scale = xb.frobenius() * yb.frobenius() * (1.0 + vb.frobenius())
        + dxb.frobenius() * yb.frobenius()
        + xb.frobenius() * dyb.frobenius();
    t.observe("metric_compatibility", rel((lhs - rhs).abs(), scale.max(1.0)));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Suite;

    #[test]
    fn small_runs_pass() {
        for spec in ["sym:2", "rn:4", "sum:sym:2+spin:3"] {
            let cfg = SuiteConfig::new(Suite::Geometry, spec, 3, 11, &[]).unwrap();
            let r = run_geometry(&cfg).unwrap();
            assert!(r.passed(), "{spec}\n{}", r.summary());
            assert_eq!(r.record("curvature_flat").is_some(), spec == "rn:4");
        }
    }
}
