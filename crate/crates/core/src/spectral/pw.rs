//! Propagating-wave integrator.
//!
//! The kernel is expanded in multiple reflections,
//! `R e^{iy}/(1 − R e^{iy}) = Σ_n R^n e^{iny}`, and the order of integration
//! is exchanged so that each term reads
//!
//! ```text
//! I_n = Re ∫_0^{u_max L} dy y² e^{iny} G_n(y),   G_n(y) = ∫_{y/L}^{u_max} du n(u) R(u, y)^n
//! ```
//!
//! `G_n` carries no oscillation, so each y-panel samples it once on Gauss
//! nodes (all n at once) and integrates the Legendre interpolant against
//! `e^{iny}` exactly through spherical Bessel moments. The terms decay like
//! `R₀^n/n³` (R₀ = ±1 is the grazing-incidence product); the remainder past
//! `n_reflect_max` is extrapolated from the last computed terms.

use super::{bose, normalization, Problem};
use crate::error::Result;
use crate::fresnel::{grazing_reflection, reflection, Polarization, Regime, Response};
use crate::quadrature::{integrate as quad, integrate_vec, legendre_moments, LegendrePanelRule, Tolerance};
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::OnceLock;

const PANEL_POINTS: usize = 16;
const INNER_REL_TOL: f64 = 1e-11;
const GEOMETRIC_LEVELS: i32 = 24;
const MAX_PANELS: usize = 6000;

fn panel_rule() -> &'static LegendrePanelRule {
    static RULE: OnceLock<LegendrePanelRule> = OnceLock::new();
    RULE.get_or_init(|| LegendrePanelRule::new(PANEL_POINTS))
}

struct Engine<'a> {
    problem: &'a Problem<'a>,
    terms: usize,
    gap: f64,
    u_points: Vec<f64>,
}

struct Panel {
    y0: f64,
    y1: f64,
    contrib: Vec<f64>,
    /// Interpolation error, reducible by splitting.
    trunc_err: f64,
    /// Error propagated from the u-integrals.
    inner_err: f64,
}

impl Engine<'_> {
    /// `G_n(y)` for n = 1..=terms and its per-term error.
    fn g_vector(&self, y: f64) -> (Vec<Complex64>, Vec<f64>) {
        let n = self.terms;
        let p = self.problem;
        let u_max = p.settings.u_max;
        let u_lo = y / self.gap;
        if u_lo >= u_max {
            return (vec![Complex64::new(0.0, 0.0); n], vec![0.0; n]);
        }
        let t = p.scales.thermal_energy;
        let threshold = p.settings.bose_series_threshold;
        let (m1, m2, pol, gap) = (p.m1, p.m2, p.pol, self.gap);
        let integrand = |v: f64, out: &mut [f64]| {
            let u = v.exp();
            let weight = u * bose(u, threshold);
            let x = u * gap;
            let omega = u * t;
            let r = reflection(Response::at(m1, omega), x, y, Regime::Propagating, pol)
                * reflection(Response::at(m2, omega), x, y, Regime::Propagating, pol);
            let mut power = Complex64::new(weight, 0.0);
            let cutoff = 1e-30 * weight;
            for k in 0..n {
                power *= r;
                out[2 * k] = power.re;
                out[2 * k + 1] = power.im;
                if power.norm_sqr() < cutoff * cutoff {
                    break;
                }
            }
        };
        let mut points = vec![u_lo.ln()];
        for &u in self.u_points.iter().chain([1.0].iter()) {
            if u > u_lo && u < u_max {
                points.push(u.ln());
            }
        }
        if pol == Polarization::P {
            points.extend(self.brewster_points(y, u_lo, u_max).into_iter().map(f64::ln));
        }
        points.push(u_max.ln());
        points.sort_by(|a, b| a.total_cmp(b));
        points.dedup();
        if points.len() < 2 {
            return (vec![Complex64::new(0.0, 0.0); n], vec![0.0; n]);
        }
        let est = integrate_vec(integrand, 2 * n, &points, Tolerance::new(INNER_REL_TOL, 0.0).max_intervals(1500).rule_points(20));
        let g = (0..n).map(|k| Complex64::new(est.value[2 * k], est.value[2 * k + 1])).collect();
        let e = (0..n).map(|k| est.error[2 * k].hypot(est.error[2 * k + 1])).collect();
        (g, e)
    }

    /// Frequencies in (u_lo, u_max) where `|ε y| = |x| √|ε − 1|`: around
    /// them r_p swings between its grazing and normal-incidence values.
    fn brewster_points(&self, y: f64, u_lo: f64, u_max: f64) -> Vec<f64> {
        const SAMPLES: usize = 48;
        let t = self.problem.scales.thermal_energy;
        let mut out = Vec::new();
        for m in [self.problem.m1, self.problem.m2] {
            let f = |u: f64| match m.eps_real_unchecked(u * t) {
                Some(eps) if eps != Complex64::new(1.0, 0.0) => {
                    let x = u * self.gap;
                    2.0 * (eps.norm() * y).ln() - (x * x * (eps - 1.0).norm()).ln()
                }
                _ => f64::NAN,
            };
            let ratio = (u_max / u_lo).powf(1.0 / SAMPLES as f64);
            let (mut a, mut fa) = (u_lo, f(u_lo));
            for _ in 0..SAMPLES {
                let b = a * ratio;
                let fb = f(b);
                if fa * fb < 0.0 {
                    let (mut lo, mut hi, mut flo) = (a, b, fa);
                    for _ in 0..40 {
                        let mid = (lo * hi).sqrt();
                        let fm = f(mid);
                        if (fm < 0.0) == (flo < 0.0) {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    out.push((lo * hi).sqrt());
                }
                a = b;
                fa = fb;
            }
        }
        out
    }

    fn panel(&self, y0: f64, y1: f64) -> Panel {
        let rule = panel_rule();
        let np = rule.points();
        let n = self.terms;
        let (c, h) = (0.5 * (y0 + y1), 0.5 * (y1 - y0));
        // samples[k][i] = y_i² G_{k+1}(y_i)
        let mut samples = vec![vec![Complex64::new(0.0, 0.0); np]; n];
        let mut inner_err = vec![0.0; n];
        for (i, (&xn, &w)) in rule.gauss.nodes.iter().zip(&rule.gauss.weights).enumerate() {
            let y = c + h * xn;
            let (g, e) = self.g_vector(y);
            for k in 0..n {
                samples[k][i] = g[k] * (y * y);
                inner_err[k] += h * w * y * y * e[k];
            }
        }
        let mut coef = vec![Complex64::new(0.0, 0.0); np];
        let mut bessel = vec![0.0; np];
        let mut moments = vec![Complex64::new(0.0, 0.0); np];
        let mut contrib = vec![0.0; n];
        let mut trunc_err = 0.0;
        for k in 0..n {
            let freq = (k + 1) as f64;
            rule.coefficients(&samples[k], &mut coef);
            legendre_moments(freq * h, &mut bessel, &mut moments);
            let integral: Complex64 = coef.iter().zip(&moments).map(|(a, b)| a * b).sum();
            let phase = Complex64::new(0.0, freq * c).exp();
            contrib[k] = (phase * integral * h).re;
            trunc_err += 2.0 * h * (coef[np - 1].norm() + coef[np - 2].norm());
        }
        Panel { y0, y1, contrib, trunc_err, inner_err: inner_err.iter().sum() }
    }

    fn initial_edges(&self) -> Vec<f64> {
        let y_end = self.problem.settings.u_max * self.gap;
        let y0 = self.gap.min(1.0);
        let mut edges: Vec<f64> = (0..=GEOMETRIC_LEVELS).rev().map(|k| y0 * 0.5f64.powi(k)).collect();
        let width = self.gap;
        let mut y = y0;
        while y < y_end {
            let step = y.min(width);
            y = (y + step).min(y_end);
            edges.push(y);
        }
        edges
    }
}

/// Estimated sum of the terms beyond the last one, assuming
/// `I_n ≈ r0^n (A/n³ + B/n⁴)`. Returns `(tail, uncertainty)`.
pub fn series_tail(terms: &[f64], r0: f64) -> (f64, f64) {
    let n = terms.len();
    if r0 == 0.0 || n < 6 {
        let last = terms.last().map_or(0.0, |v| v.abs());
        return (0.0, last);
    }
    let sign = |k: usize| if r0 < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
    // a_k = I_k / r0^k, index k is 1-based
    let a = |k: usize| terms[k - 1] * sign(k);
    let fit = |k1: usize, k2: usize| {
        let (n1, n2) = (k1 as f64, k2 as f64);
        // [1/n1³ 1/n1⁴; 1/n2³ 1/n2⁴] [A B]ᵀ = [a1 a2]ᵀ
        let (p1, q1, p2, q2) = (n1.powi(-3), n1.powi(-4), n2.powi(-3), n2.powi(-4));
        let det = p1 * q2 - q1 * p2;
        let aa = (a(k1) * q2 - q1 * a(k2)) / det;
        let bb = (p1 * a(k2) - a(k1) * p2) / det;
        (aa, bb)
    };
    let sum_tail = |aa: f64, bb: f64| {
        let extra = 200_000usize;
        let mut s = 0.0;
        for k in (n + 1..=n + extra).rev() {
            let kf = k as f64;
            s += sign(k) * (aa / (kf * kf * kf) + bb / (kf * kf * kf * kf));
        }
        if r0 > 0.0 {
            let m = (n + extra) as f64 + 0.5;
            s += aa / (2.0 * m * m) + bb / (3.0 * m * m * m);
        }
        s
    };
    let (a2, b2) = fit(n, n - 1);
    let best = sum_tail(a2, b2);
    let one_param = sum_tail(a(n) * (n as f64).powi(3), 0.0);
    let (a3, b3) = fit(n - 2, n - 3);
    let earlier = sum_tail(a3, b3);
    let spread = (best - one_param).abs().max((best - earlier).abs());
    (best, spread)
}

/// Below this gap ratio the y-range holds only a few oscillations and the
/// closed-form kernel is integrated directly.
const DIRECT_BELOW: f64 = 1.0;

/// Returns `(value, error)` in units of force_norm.
pub(super) fn integrate(problem: &Problem) -> Result<(f64, f64)> {
    if problem.m1.is_ideal() && problem.m2.is_ideal() {
        return Ok(ideal_pair(problem.scales.gap_ratio()));
    }
    if problem.scales.gap_ratio() < DIRECT_BELOW {
        return direct(problem);
    }
    series(problem)
}

/// Two ideal mirrors: R = 1, so `Re Σ e^{iny} = −1/2 + π Σ_k δ(y − 2πk)`
/// and both integrals are elementary,
/// `L³π⁴/90 − 4π³ Σ_k k² (−ln(1 − e^{−2πk/L}))`, times the normalization.
pub(super) fn ideal_pair(gap: f64) -> (f64, f64) {
    use std::f64::consts::PI;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        let q = (-2.0 * PI * k / gap).exp();
        let term = -k * k * (-q).ln_1p();
        sum += term;
        if !(term >= 1e-18 * sum) {
            break;
        }
        k += 1.0;
    }
    let volume = gap.powi(3) * PI.powi(4) / 90.0;
    let norm = normalization();
    (norm * (volume - 4.0 * PI.powi(3) * sum), norm * 16.0 * f64::EPSILON * volume)
}

/// `∫du n(u) ∫_0^{uL} dy y² Re K(R e^{iy})`, u outer.
fn direct(problem: &Problem) -> Result<(f64, f64)> {
    let p = problem;
    if p.m1.is_vacuum() || p.m2.is_vacuum() {
        return Ok((0.0, 0.0));
    }
    let gap = p.scales.gap_ratio();
    let t = p.scales.thermal_energy;
    let rel = p.settings.rel_tol;
    let threshold = p.settings.bose_series_threshold;
    let worst_inner = std::cell::Cell::new(0.0f64);
    let inner = |u: f64| {
        let x = u * gap;
        let omega = u * t;
        let (r1, r2) = (Response::at(p.m1, omega), Response::at(p.m2, omega));
        let f = |y: f64| {
            let r = reflection(r1, x, y, Regime::Propagating, p.pol) * reflection(r2, x, y, Regime::Propagating, p.pol);
            let z = r * Complex64::new(0.0, y).exp();
            let one = Complex64::new(1.0, 0.0);
            if z == one {
                return 0.0;
            }
            y * y * (z / (one - z)).re
        };
        let mut pts = vec![0.0];
        let mut k = 1.0;
        while k * std::f64::consts::PI < x {
            pts.push(k * std::f64::consts::PI);
            k += 1.0;
        }
        pts.push(x);
        let est = quad(f, &pts, Tolerance::new(1e-3 * rel, 1e-11 * rel).max_intervals(4000));
        if !est.converged {
            worst_inner.set(worst_inner.get().max(est.error / est.abs_value.max(1e-300)));
        }
        (est.value, est.error)
    };
    let u_min = p.settings.u_min;
    let u_max = p.settings.u_max;
    let mut pts: Vec<f64> = vec![u_min.ln(), u_max.ln()];
    let mut d = u_min.log10().ceil();
    while 10f64.powf(d) < u_max {
        pts.push(10f64.powf(d).ln());
        d += 1.0;
    }
    for u in p.material_u_points() {
        if u > u_min && u < u_max {
            pts.push(u.ln());
        }
    }
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();
    let inner_err = std::cell::Cell::new(0.0f64);
    let outer = |v: f64| {
        let u = v.exp();
        let w = u * bose(u, threshold);
        let (val, err) = inner(u);
        inner_err.set(inner_err.get().max(w * err));
        w * val
    };
    let est = quad(outer, &pts, Tolerance::new(0.1 * rel, 0.0).max_intervals(2000));
    let norm = normalization();
    let span = u_max.ln() - u_min.ln();
    let err = est.error + inner_err.get() * span;
    if !est.converged {
        return Err(crate::Error::NonConvergence {
            context: "propagating-wave integral".into(),
            detail: format!("outer u-integral: error {:e} on value {:e}", est.error, est.value),
        });
    }
    Ok((-norm * est.value, norm * err))
}

fn series(problem: &Problem) -> Result<(f64, f64)> {
    let r0 = grazing_reflection(problem.m1, problem.pol) * grazing_reflection(problem.m2, problem.pol);
    if problem.m1.is_vacuum() || problem.m2.is_vacuum() {
        return Ok((0.0, 0.0));
    }
    let engine = Engine {
        problem,
        terms: problem.settings.n_reflect_max,
        gap: problem.scales.gap_ratio(),
        u_points: problem.material_u_points(),
    };
    let norm = normalization();
    let floor = 1e-6 / norm;
    let edges = engine.initial_edges();
    let mut panels: Vec<Panel> = edges.par_windows(2).map(|w| engine.panel(w[0], w[1])).collect();

    // contribution below the smallest panel: |∫_0^b y² G dy| ≲ b³ (|G(b)| + 1)
    let bottom = edges[0];
    let (g_bottom, _) = engine.g_vector(bottom);
    let bottom_err: f64 = g_bottom.iter().map(|g| bottom.powi(3) * (g.norm() + 1.0)).sum();

    let terms_of = |panels: &[Panel]| {
        let mut t = vec![0.0; engine.terms];
        for p in panels {
            for (acc, v) in t.iter_mut().zip(&p.contrib) {
                *acc += v;
            }
        }
        t
    };
    loop {
        let terms = terms_of(&panels);
        let (tail, tail_err) = series_tail(&terms, r0);
        let sum: f64 = terms.iter().sum::<f64>() + tail;
        let trunc_err: f64 = panels.iter().map(|p| p.trunc_err).sum::<f64>() + bottom_err;
        let inner_err: f64 = panels.iter().map(|p| p.inner_err).sum();
        let quad_err = trunc_err + inner_err;
        let target = 0.25 * problem.settings.rel_tol * sum.abs().max(floor);
        if trunc_err <= target || panels.len() >= MAX_PANELS {
            return Ok((-norm * sum, norm * (quad_err + tail_err)));
        }
        let share = target / panels.len() as f64;
        let mut order: Vec<usize> = (0..panels.len()).filter(|&i| panels[i].trunc_err > share).collect();
        order.sort_by(|&i, &j| panels[j].trunc_err.total_cmp(&panels[i].trunc_err));
        order.truncate(32);
        if order.is_empty() {
            return Ok((-norm * sum, norm * (quad_err + tail_err)));
        }
        let split: Vec<(f64, f64)> = order
            .iter()
            .flat_map(|&i| {
                let (a, b) = (panels[i].y0, panels[i].y1);
                let m = 0.5 * (a + b);
                [(a, m), (m, b)]
            })
            .collect();
        order.sort_unstable_by(|a, b| b.cmp(a));
        for i in order {
            panels.swap_remove(i);
        }
        let fresh: Vec<Panel> = split.par_iter().map(|&(a, b)| engine.panel(a, b)).collect();
        panels.extend(fresh);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::ZETA3;

    #[test]
    fn tail_of_exact_power_law() {
        let n = 256;
        for r0 in [1.0, -1.0] {
            let terms: Vec<f64> = (1..=n)
                .map(|k| {
                    let kf = k as f64;
                    let s = if r0 < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                    s * (1.0 / kf.powi(3) + 0.3 / kf.powi(4))
                })
                .collect();
            let (tail, err) = series_tail(&terms, r0);
            let mut exact = 0.0;
            for k in (n + 1..4_000_000).rev() {
                let kf = k as f64;
                let s = if r0 < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                exact += s * (1.0 / kf.powi(3) + 0.3 / kf.powi(4));
            }
            assert!((tail - exact).abs() < 1e-12, "r0={r0}: {tail} vs {exact}");
            assert!(err >= (tail - exact).abs() && err < 1e-7, "err {err}");
        }
        // sanity: Σ 1/n³ reconstructed
        let terms: Vec<f64> = (1..=64).map(|k| 1.0 / (k as f64).powi(3)).collect();
        let (tail, _) = series_tail(&terms, 1.0);
        assert!((terms.iter().sum::<f64>() + tail - ZETA3).abs() < 1e-12);
    }
}
