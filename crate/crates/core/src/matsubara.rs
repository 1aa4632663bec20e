//! Imaginary-frequency (Matsubara) evaluation of the equilibrium force.
//!
//! Serves as an independent check of the real-frequency integrals in
//! [`crate::spectral`]: at equilibrium the two must agree once the
//! zero-temperature part is removed.
//!
//! All q-integrals use `x = 2κa`, so every term reads
//! `(1/8a³) ∫_{x_n}^∞ x² Σ_μ R^μ e^{−x}/(1 − R^μ e^{−x}) dx` with
//! `x_n = 2aξ_n/ħc`.

use crate::error::{domain, Error, Result};
use crate::materials::Material;
use crate::quadrature::{integrate, integrate_vec, Tolerance};
use crate::quantities::{ThermalScales, HBAR_C, UNITS};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Width of the x-window above `x_n`; `e^{−90}` is far below any tolerance.
const X_WINDOW: f64 = 90.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraSettings {
    /// Highest Matsubara index. `None` picks the smallest n with
    /// `ξ_n > 50·max(ω_c, T)`.
    pub n_max: Option<usize>,
    /// Relative tolerance of every x- and ξ-integral.
    pub q_quad_tol: f64,
    /// The zero-temperature ξ-integral stops where its integrand has
    /// fallen below this fraction of the peak.
    pub t0_cutoff: f64,
}

impl Default for MatsubaraSettings {
    fn default() -> Self {
        Self { n_max: None, q_quad_tol: 1e-9, t0_cutoff: 1e-12 }
    }
}

impl MatsubaraSettings {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if let Some(n) = self.n_max {
            if n < 10 {
                problems.push(format!("n_max must be at least 10, got {n}"));
            }
        }
        if !(self.q_quad_tol > 0.0 && self.q_quad_tol <= 1e-4) {
            problems.push(format!("q_quad_tol must lie in (0, 1e-4], got {}", self.q_quad_tol));
        }
        if !(self.t0_cutoff > 0.0 && self.t0_cutoff <= 1e-4) {
            problems.push(format!("t0_cutoff must lie in (0, 1e-4], got {}", self.t0_cutoff));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSettings(problems))
        }
    }
}

/// Reflection amplitudes `(r_s, r_p)` at imaginary frequency ξ (eV) and
/// `x = 2κa`. `gap` is `2a/ħc` in 1/eV. Ideal metals give (−1, +1); Drude
/// metals at ξ = 0 give (0, +1).
pub fn imag_axis_reflection(m: &Material, xi: f64, x: f64, gap: f64) -> (f64, f64) {
    if m.is_ideal() {
        return (-1.0, 1.0);
    }
    let chi = m.xi2_susceptibility(xi).expect("finite material");
    let s2 = gap * gap * chi;
    let k = (x * x + s2).sqrt();
    let rs = if x + k > 0.0 { -s2 / ((x + k) * (x + k)) } else { 0.0 };
    let rp = match m.eps_imag_or_static(xi) {
        None => 1.0,
        Some(eps) => {
            let den = eps * x + k;
            if den > 0.0 {
                (eps * x - k) / den
            } else {
                0.0
            }
        }
    };
    (rs, rp)
}

/// `x² Σ_μ R^μ/(e^x − R^μ)` at imaginary frequency ξ.
fn kernel(m1: &Material, m2: &Material, xi: f64, x: f64, gap: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let (s1, p1) = imag_axis_reflection(m1, xi, x, gap);
    let (s2, p2) = imag_axis_reflection(m2, xi, x, gap);
    let em1 = x.exp_m1();
    [s1 * s2, p1 * p2].iter().map(|&r| x * x * r / (em1 + (1.0 - r))).sum()
}

/// `∫_{x_n}^{x_n+90} kernel dx` and its error.
fn x_integral(m1: &Material, m2: &Material, xi: f64, gap: f64, tol: f64) -> (f64, f64) {
    let lo = gap * xi;
    let pts = [lo, lo + 1.0, lo + 4.0, lo + 15.0, lo + X_WINDOW];
    let est = integrate(|x| kernel(m1, m2, xi, x, gap), &pts, Tolerance::new(tol, 0.0).max_intervals(2000));
    (est.value, est.error)
}

fn check(m1: &Material, m2: &Material, a_um: f64, settings: &MatsubaraSettings) -> Result<()> {
    m1.validate()?;
    m2.validate()?;
    settings.validate()?;
    if !(a_um > 0.0 && a_um.is_finite()) {
        return Err(domain(format!("separation must be positive, got {a_um} µm")));
    }
    Ok(())
}

/// A pressure with its error estimate, both in Pa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    pub error: f64,
}

/// Full Matsubara sum at temperature T (zero-point part included), Pa.
pub fn matsubara_total(
    m1: &Material,
    m2: &Material,
    a_um: f64,
    t_kelvin: f64,
    settings: &MatsubaraSettings,
) -> Result<OracleValue> {
    check(m1, m2, a_um, settings)?;
    let scales = ThermalScales::new(a_um, t_kelvin)?;
    let t = scales.thermal_energy;
    let gap = 2.0 * a_um / HBAR_C;
    let step = 2.0 * PI * t;
    let n_max = settings
        .n_max
        .unwrap_or_else(|| ((50.0 * scales.omega_c.max(t) / step).ceil() as usize).max(10));
    let tol = settings.q_quad_tol;
    let terms: Vec<(f64, f64)> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let (v, e) = x_integral(m1, m2, n as f64 * step, gap, tol);
            if n == 0 {
                (0.5 * v, 0.5 * e)
            } else {
                (v, e)
            }
        })
        .collect();
    let sum: f64 = terms.iter().map(|t| t.0).sum();
    let err: f64 = terms.iter().map(|t| t.1).sum();
    let last = terms.last().map_or(0.0, |t| t.0.abs());
    if last > tol * sum.abs() {
        return Err(Error::NonConvergence {
            context: "Matsubara sum".into(),
            detail: format!("term n = {n_max} is {last:.3e} against a sum of {sum:.3e}"),
        });
    }
    let pref = t / (8.0 * PI * a_um.powi(3));
    Ok(OracleValue { value: UNITS.to_pascal(pref * sum), error: UNITS.to_pascal(pref * (err + last)) })
}

/// Zero-temperature pressure: the continuum limit of [`matsubara_total`], Pa.
pub fn zero_point_force(m1: &Material, m2: &Material, a_um: f64, settings: &MatsubaraSettings) -> Result<OracleValue> {
    check(m1, m2, a_um, settings)?;
    let omega_c = HBAR_C / (2.0 * a_um);
    let gap = 2.0 * a_um / HBAR_C;
    let tol = settings.q_quad_tol;
    // ∫_z^∞ (…) dx ≲ z² e^{−z} for large z; its peak is 4e^{−2}.
    let mut z_max: f64 = 2.0;
    while z_max * z_max * (-z_max).exp() > settings.t0_cutoff * 4.0 * (-2.0f64).exp() {
        z_max += 1.0;
    }
    let mut pts: Vec<f64> = vec![0.0, 1.0, 4.0, z_max];
    for w in m1.characteristic_frequencies().into_iter().chain(m2.characteristic_frequencies()) {
        let z = w / omega_c;
        if z > 0.0 && z < z_max {
            pts.push(z);
        }
    }
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();
    let est = integrate_vec(
        |z, out: &mut [f64]| {
            let (v, e) = x_integral(m1, m2, z * omega_c, gap, 0.1 * tol);
            out[0] = v;
            out[1] = e;
        },
        2,
        &pts,
        Tolerance::new(tol, 0.0).max_intervals(2000),
    );
    if !est.converged {
        return Err(Error::NonConvergence {
            context: "zero-point frequency integral".into(),
            detail: format!("error {:.3e} on value {:.3e}", est.error[0], est.value[0]),
        });
    }
    let pref = omega_c / (16.0 * PI * PI * a_um.powi(3));
    Ok(OracleValue {
        value: UNITS.to_pascal(pref * est.value[0]),
        error: UNITS.to_pascal(pref * (est.error[0] + est.value[1].abs())),
    })
}

/// Thermal part of the equilibrium force: Matsubara sum minus zero point, Pa.
pub fn thermal_force_oracle(
    m1: &Material,
    m2: &Material,
    a_um: f64,
    t_kelvin: f64,
    settings: &MatsubaraSettings,
) -> Result<OracleValue> {
    let (total, zero) = rayon::join(
        || matsubara_total(m1, m2, a_um, t_kelvin, settings),
        || zero_point_force(m1, m2, a_um, settings),
    );
    let (total, zero) = (total?, zero?);
    Ok(OracleValue { value: total.value - zero.value, error: total.error + zero.error })
}
