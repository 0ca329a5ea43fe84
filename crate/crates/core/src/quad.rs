//! Adaptive Simpson quadrature, including a scaled half-line transform for
//! the tail integrals of the reference intercept-probability path.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;
const INITIAL_PANELS: usize = 16;

/// Integrate `f` over the finite interval `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || !(b > a) {
        return Err(Error::Domain(format!("integrate: bad interval [{a}, {b}]")));
    }
    let mut total = 0.0;
    let mut err = 0.0;
    let panel = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tol / INITIAL_PANELS as f64;
    for i in 0..INITIAL_PANELS {
        let x0 = a + i as f64 * panel;
        let x1 = x0 + panel;
        let (v, e) = simpson_panel(&f, x0, x1, panel_tol);
        total += v;
        err += e;
    }
    if !total.is_finite() || err > 100.0 * tol {
        return Err(Error::NonConvergence(format!(
            "adaptive Simpson on [{a}, {b}]: error estimate {err:e} for tolerance {tol:e}"
        )));
    }
    Ok(total)
}

/// Integrate `f` over the panels defined by an ascending knot sequence.
///
/// Each `[knots[i], knots[i+1]]` panel is refined adaptively; callers place
/// knots across any feature (a narrow density bump, a CDF transition) that a
/// uniform initial split could step over entirely.
pub fn integrate_with_knots<F: Fn(f64) -> f64>(f: F, knots: &[f64], tol: f64) -> Result<f64> {
    if knots.len() < 2 {
        return Err(Error::Domain("integrate_with_knots: need at least two knots".into()));
    }
    let panels = knots.len() - 1;
    let panel_tol = tol / panels as f64;
    let mut total = 0.0;
    let mut err = 0.0;
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            return Err(Error::Domain(format!("integrate_with_knots: bad panel [{a}, {b}]")));
        }
        let (v, e) = simpson_panel(&f, a, b, panel_tol);
        total += v;
        err += e;
    }
    if !total.is_finite() || err > 100.0 * tol {
        return Err(Error::NonConvergence(format!(
            "adaptive Simpson over {panels} panels: error estimate {err:e} for tolerance {tol:e}"
        )));
    }
    Ok(total)
}

/// Integrate `f` over `[a, ∞)` with the substitution `y = a + s·t/(1-t)`.
///
/// `scale` should be set near the bulk of the integrand's mass (for a Gamma
/// density, its mean) so the transformed peak lands mid-interval.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, a: f64, scale: f64, tol: f64) -> Result<f64> {
    let s = if scale.is_finite() && scale > 0.0 { scale } else { 1.0 };
    let g = move |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let u = 1.0 - t;
        let y = a + s * t / u;
        let v = f(y) * s / (u * u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, tol)
}

fn simpson_estimate<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
}

fn simpson_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson_estimate(f, a, fa, b, fb);
    simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let (left, lm, flm) = simpson_estimate(f, a, fa, m, fm);
    let (right, rm, frm) = simpson_estimate(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, delta.abs() / 15.0);
    }
    let (lv, le) = simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1);
    let (rv, re) = simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
    (lv + rv, le + re)
}
