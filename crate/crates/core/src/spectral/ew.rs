//! Evanescent-wave integrator.
//!
//! The outer integral runs over `v = ln u` so that the scale-invariant
//! low-frequency band (ω ≲ ω_τ(ω_c/ω_p)² for Drude metals) is resolved with
//! the same effort per decade as the thermal band. Below `u_min` the grid
//! is extended decade by decade until the newest decade is negligible.

use super::{bose, evanescent_kernel, normalization, Problem};
use crate::error::{Error, Result};
use crate::fresnel::{reflection, Regime, Response};
use crate::quadrature::{integrate as quad, integrate_vec, Tolerance};
use std::f64::consts::LN_10;

const INNER_REL_TOL: f64 = 1e-10;
const MAX_EXTRA_DECADES: usize = 20;

/// `H(u) = ∫_0^{y_max} y² Im K(R e^{−y}) dy` and its error.
fn inner(problem: &Problem, u: f64) -> (f64, f64, f64) {
    let omega = u * problem.scales.thermal_energy;
    let x = u * problem.scales.gap_ratio();
    let r1 = Response::at(problem.m1, omega);
    let r2 = Response::at(problem.m2, omega);
    if matches!((r1, r2), (Response::Ideal, Response::Ideal)) {
        // R is real: the imaginary part vanishes identically.
        return (0.0, 0.0, 0.0);
    }
    let pol = problem.pol;
    let y_max = problem.settings.y_max_ew;
    let integrand = |y: f64| {
        if y == 0.0 {
            return 0.0;
        }
        let r = reflection(r1, x, y, Regime::Evanescent, pol) * reflection(r2, x, y, Regime::Evanescent, pol);
        y * y * evanescent_kernel(r, y).im
    };
    let mut points = vec![0.0, 1.0_f64.min(0.5 * y_max)];
    for resp in [r1, r2] {
        if let Response::Finite(eps) = resp {
            // edge of total internal reflection / onset of the branch-point region
            let yc = x * (eps - 1.0).norm().sqrt();
            if yc > 0.0 && yc < y_max {
                points.push(yc);
            }
        }
    }
    points.push(y_max);
    points.sort_by(|a, b| a.total_cmp(b));
    points.dedup();
    let est = quad(integrand, &points, Tolerance::new(INNER_REL_TOL, 0.0).max_intervals(400));
    let r_end = reflection(r1, x, y_max, Regime::Evanescent, pol) * reflection(r2, x, y_max, Regime::Evanescent, pol);
    let q = r_end.norm() * (-y_max).exp();
    let tail = if q < 1.0 { y_max * y_max * q / (1.0 - q) * 2.0 } else { f64::INFINITY };
    (est.value, est.error + tail, est.abs_value)
}

/// Integral of `u n(u) H(u)` over `[ln u_lo, ln u_hi]`, with the inner
/// errors integrated alongside. Returns `(value, error, abs, converged)`.
fn outer(problem: &Problem, u_lo: f64, u_hi: f64, tol: Tolerance) -> (f64, f64, f64, bool) {
    let threshold = problem.settings.bose_series_threshold;
    let mut points = vec![u_lo.ln()];
    let mut v = u_lo.ln().ceil();
    // a node at least every decade
    while v < u_hi.ln() {
        if v > u_lo.ln() {
            points.push(v);
        }
        v += LN_10;
    }
    for u in problem.material_u_points() {
        if u > u_lo && u < u_hi {
            points.push(u.ln());
        }
    }
    points.push(u_hi.ln());
    points.sort_by(|a, b| a.total_cmp(b));
    points.dedup();
    let est = integrate_vec(
        |v, out: &mut [f64]| {
            let u = v.exp();
            let (h, err, _) = inner(problem, u);
            let w = u * bose(u, threshold);
            out[0] = w * h;
            out[1] = w * err;
        },
        2,
        &points,
        tol,
    );
    (est.value[0], est.error[0] + est.value[1].abs(), est.abs_value[0], est.converged)
}

/// Returns `(value, error)` in units of force_norm.
pub(super) fn integrate(problem: &Problem) -> Result<(f64, f64)> {
    let s = &problem.settings;
    let norm = normalization();
    let floor = 1e-6 / norm;
    let tol = Tolerance::new(0.25 * s.rel_tol, 0.25 * s.rel_tol * floor).max_intervals(3000);
    let (mut value, mut error, _, converged) = outer(problem, s.u_min, s.u_max, tol);
    if !converged {
        return Err(Error::NonConvergence {
            context: format!("evanescent {:?}-polarization", problem.pol),
            detail: format!("frequency integral error {error:.3e} on value {value:.3e}"),
        });
    }
    if s.tail_check {
        let mut u_lo = s.u_min;
        let mut settled = false;
        for _ in 0..MAX_EXTRA_DECADES {
            let (dv, de, _, _) = outer(problem, u_lo / 10.0, u_lo, tol);
            value += dv;
            error += de;
            u_lo /= 10.0;
            if dv.abs() <= 0.1 * s.rel_tol * value.abs().max(floor) {
                settled = true;
                break;
            }
        }
        if !settled {
            return Err(Error::NonConvergence {
                context: format!("evanescent {:?}-polarization", problem.pol),
                detail: format!("low-frequency tail still contributing below u = {u_lo:.1e}"),
            });
        }
    }
    Ok((norm * value, norm * error))
}

