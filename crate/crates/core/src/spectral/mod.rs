//! Real-frequency thermal pressure split into propagating (PW) and
//! evanescent (EW) contributions per polarization.
//!
//! With `u = ħω/T`, `L = 2a/λ_T` (so ω/ω_c = uL) and `K(z) = z/(1 − z)`,
//! the four components in units of `Tζ(3)/8πa³` are
//!
//! ```text
//! PW^μ = −1/(πζ(3)) ∫du n(u) ∫_0^{uL} dy y² Re K(R^μ e^{iy})
//! EW^μ = +1/(πζ(3)) ∫du n(u) ∫_0^∞   dy y² Im K(R^μ e^{−y})
//! ```
//!
//! where `n(u) = 1/(e^u − 1)` and `R^μ` is the product of the two plate
//! reflection coefficients in the corresponding regime.

mod ew;
mod pw;

use crate::error::{domain, Error, Result};
use crate::fresnel::{pair_product, Polarization, Regime, SpectralPoint};
use crate::materials::Material;
use crate::quantities::{ThermalScales, HBAR_C, ZETA3};
use num_complex::Complex64;
use std::collections::hash_map::DefaultHasher;
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};

pub use pw::series_tail;

/// Controls for the spectral integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    /// Lower end of the initial logarithmic frequency grid (in u = ħω/T).
    pub u_min: f64,
    pub u_max: f64,
    /// Transverse cutoff for the evanescent y-integral.
    pub y_max_ew: f64,
    /// Number of multiple-reflection terms kept explicitly.
    pub n_reflect_max: usize,
    /// Below this u the Bose factor uses its Laurent expansion.
    pub bose_series_threshold: f64,
    /// Extend the evanescent frequency grid below `u_min` until converged.
    pub tail_check: bool,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            u_min: 1e-14,
            u_max: 60.0,
            y_max_ew: 60.0,
            n_reflect_max: 256,
            bose_series_threshold: 1e-4,
            tail_check: true,
        }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(0.0 < self.u_min && self.u_min < self.bose_series_threshold && self.bose_series_threshold < 1.0) {
            out.push("need 0 < u_min < bose_series_threshold < 1".into());
        }
        if !(self.u_max > 1.0 && self.u_max.is_finite()) {
            out.push("u_max must exceed 1".into());
        }
        if self.n_reflect_max < 1 {
            out.push("n_reflect_max must be ≥ 1".into());
        }
        if !(self.y_max_ew > 1.0 && self.y_max_ew.is_finite()) {
            out.push("y_max_ew must exceed 1".into());
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            out.push("rel_tol must lie in (0, 1e-2]".into());
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.problems();
        if p.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSettings(p))
        }
    }

    /// Stable fingerprint used to tag results.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for v in [self.rel_tol, self.u_min, self.u_max, self.y_max_ew, self.bose_series_threshold] {
            v.to_bits().hash(&mut h);
        }
        self.n_reflect_max.hash(&mut h);
        self.tail_check.hash(&mut h);
        h.finish()
    }
}

/// The four signed thermal pressures (Pa) with error estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceComponents {
    pub pw_s: f64,
    pub pw_p: f64,
    pub ew_s: f64,
    pub ew_p: f64,
    pub err_pw_s: f64,
    pub err_pw_p: f64,
    pub err_ew_s: f64,
    pub err_ew_p: f64,
    pub a_um: f64,
    pub t_kelvin: f64,
    pub materials: (String, String),
    pub settings_hash: u64,
    /// Tζ(3)/8πa³ in Pa.
    pub force_norm: f64,
    /// Every error estimate satisfies `err ≤ rel_tol · max(|value|, 1e-6 · force_norm)`.
    pub tolerance_met: bool,
    pub warnings: Vec<String>,
}

impl ForceComponents {
    pub fn pw_total(&self) -> f64 {
        self.pw_s + self.pw_p
    }

    pub fn ew_total(&self) -> f64 {
        self.ew_s + self.ew_p
    }

    pub fn total(&self) -> f64 {
        self.pw_s + self.pw_p + self.ew_s + self.ew_p
    }

    pub fn err_total(&self) -> f64 {
        self.err_pw_s + self.err_pw_p + self.err_ew_s + self.err_ew_p
    }

    /// `(pw_s, pw_p, ew_s, ew_p)` in units of `force_norm`.
    pub fn normalized(&self) -> [f64; 4] {
        [self.pw_s, self.pw_p, self.ew_s, self.ew_p].map(|v| v / self.force_norm)
    }
}

/// A single component with its error estimate, both in Pa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub value: f64,
    pub error: f64,
}

/// 1/(e^u − 1), switching to `1/u − 1/2 + u/12 − u³/720` below `threshold`.
pub(crate) fn bose(u: f64, threshold: f64) -> f64 {
    if u < threshold {
        1.0 / u - 0.5 + u / 12.0 - u * u * u / 720.0
    } else {
        1.0 / u.exp_m1()
    }
}

/// Bose–Einstein occupation `1/(e^u − 1)` with the default Laurent threshold.
pub fn bose_factor(u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(domain(format!("u must be positive, got {u}")));
    }
    Ok(bose(u, QuadratureSettings::default().bose_series_threshold))
}

/// `R/(e^y − R)`, i.e. `K(R e^{−y})`, without cancellation at small y.
pub(crate) fn evanescent_kernel(r: Complex64, y: f64) -> Complex64 {
    let den = y.exp_m1() + (1.0 - r);
    if den == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        r / den
    }
}

/// `y² Im[R e^{−y}/(1 − R e^{−y})]` at the evanescent point (u, y).
pub fn ew_integrand(
    m1: &Material,
    m2: &Material,
    u: f64,
    y: f64,
    pol: Polarization,
    a_um: f64,
    t_kelvin: f64,
) -> Result<f64> {
    let pt = SpectralPoint::new(u, y, Regime::Evanescent, a_um, t_kelvin)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    let r = pair_product(m1, m2, &pt, pol)?;
    Ok(y * y * evanescent_kernel(r, y).im)
}

/// Truncated multiple-reflection sum at one propagating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    /// `y² Re Σ_{n=1}^{N} R^n e^{iny}`.
    pub value: f64,
    /// `y² |R|^{N+1}/(1 − |R|)`; infinite when |R| ≥ 1.
    pub tail_bound: f64,
    pub terms: usize,
    pub capped: bool,
}

/// `y² Re Σ_n R^n e^{iny}` with N chosen so the geometric tail drops below
/// `rel_tol · 10⁻²`, capped at `n_reflect_max`.
#[allow(clippy::too_many_arguments)]
pub fn pw_integrand_series(
    m1: &Material,
    m2: &Material,
    u: f64,
    y: f64,
    pol: Polarization,
    a_um: f64,
    t_kelvin: f64,
    n_reflect_max: usize,
    rel_tol: f64,
) -> Result<SeriesValue> {
    let pt = SpectralPoint::new(u, y, Regime::Propagating, a_um, t_kelvin)?;
    let r = pair_product(m1, m2, &pt, pol)?;
    let z = r * Complex64::new(0.0, y).exp();
    let modulus = r.norm();
    let bound = |n: usize| {
        if modulus >= 1.0 {
            f64::INFINITY
        } else {
            modulus.powi(n as i32 + 1) / (1.0 - modulus)
        }
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut n = 0;
    while n < n_reflect_max.max(1) {
        n += 1;
        term *= z;
        sum += term;
        if bound(n) < rel_tol * 1e-2 {
            break;
        }
    }
    let tail = bound(n);
    Ok(SeriesValue {
        value: y * y * sum.re,
        tail_bound: y * y * tail,
        terms: n,
        capped: !(tail < rel_tol * 1e-2),
    })
}

pub(crate) fn check_inputs(m1: &Material, m2: &Material, a_um: f64, t_kelvin: f64, settings: &QuadratureSettings) -> Result<ThermalScales> {
    if t_kelvin == 0.0 {
        return Err(domain("T = 0: the thermal force vanishes identically"));
    }
    m1.validate()?;
    m2.validate()?;
    settings.validate()?;
    ThermalScales::new(a_um, t_kelvin)
}

/// Shared per-call data for the spectral engines.
pub(crate) struct Problem<'a> {
    pub m1: &'a Material,
    pub m2: &'a Material,
    pub pol: Polarization,
    pub scales: ThermalScales,
    pub settings: QuadratureSettings,
}

impl Problem<'_> {
    /// Normalized value (units of force_norm) → Pa.
    fn to_pascal(&self, normalized: f64) -> f64 {
        normalized * self.scales.force_norm
    }

    /// u values where either plate's response changes character.
    fn material_u_points(&self) -> Vec<f64> {
        let t = self.scales.thermal_energy;
        let mut pts: Vec<f64> = [self.m1, self.m2]
            .iter()
            .flat_map(|m| m.characteristic_frequencies())
            .map(|w| w / t)
            .collect();
        pts.sort_by(|a, b| a.total_cmp(b));
        pts
    }
}

/// Evanescent contribution for one polarization: `(value, error)` in Pa.
pub fn force_ew(
    m1: &Material,
    m2: &Material,
    a_um: f64,
    t_kelvin: f64,
    pol: Polarization,
    settings: &QuadratureSettings,
) -> Result<Component> {
    let scales = check_inputs(m1, m2, a_um, t_kelvin, settings)?;
    let problem = Problem { m1, m2, pol, scales, settings: *settings };
    let (value, error) = ew::integrate(&problem)?;
    Ok(Component { value: problem.to_pascal(value), error: problem.to_pascal(error).abs() })
}

/// Propagating contribution for one polarization: `(value, error)` in Pa.
pub fn force_pw(
    m1: &Material,
    m2: &Material,
    a_um: f64,
    t_kelvin: f64,
    pol: Polarization,
    settings: &QuadratureSettings,
) -> Result<Component> {
    let scales = check_inputs(m1, m2, a_um, t_kelvin, settings)?;
    let problem = Problem { m1, m2, pol, scales, settings: *settings };
    let (value, error) = pw::integrate(&problem)?;
    Ok(Component { value: problem.to_pascal(value), error: problem.to_pascal(error).abs() })
}

/// All four components at one (a, T).
pub fn force_components(
    m1: &Material,
    m2: &Material,
    a_um: f64,
    t_kelvin: f64,
    settings: &QuadratureSettings,
) -> Result<ForceComponents> {
    let scales = check_inputs(m1, m2, a_um, t_kelvin, settings)?;
    let ((pw_s, pw_p), (ew_s, ew_p)) = rayon::join(
        || {
            rayon::join(
                || force_pw(m1, m2, a_um, t_kelvin, Polarization::S, settings),
                || force_pw(m1, m2, a_um, t_kelvin, Polarization::P, settings),
            )
        },
        || {
            rayon::join(
                || force_ew(m1, m2, a_um, t_kelvin, Polarization::S, settings),
                || force_ew(m1, m2, a_um, t_kelvin, Polarization::P, settings),
            )
        },
    );
    let (pw_s, pw_p, ew_s, ew_p) = (pw_s?, pw_p?, ew_s?, ew_p?);

    let mut warnings = Vec::new();
    for m in [m1, m2] {
        if let Some(wp) = m.plasma_frequency() {
            let depth = HBAR_C / wp;
            if a_um < depth {
                warnings.push(format!(
                    "a = {a_um} µm is below the penetration depth c/ω_p = {depth:.4} µm of `{}`",
                    m.label
                ));
            }
        }
    }
    let floor = 1e-6 * scales.force_norm;
    let tolerance_met = [pw_s, pw_p, ew_s, ew_p]
        .iter()
        .all(|c| c.error <= settings.rel_tol * c.value.abs().max(floor));
    Ok(ForceComponents {
        pw_s: pw_s.value,
        pw_p: pw_p.value,
        ew_s: ew_s.value,
        ew_p: ew_p.value,
        err_pw_s: pw_s.error,
        err_pw_p: pw_p.error,
        err_ew_s: ew_s.error,
        err_ew_p: ew_p.error,
        a_um,
        t_kelvin,
        materials: (m1.label.clone(), m2.label.clone()),
        settings_hash: settings.fingerprint(),
        force_norm: scales.force_norm,
        tolerance_met,
        warnings,
    })
}

/// Prefactor turning the raw double integral into force_norm units.
pub(crate) const fn normalization() -> f64 {
    1.0 / (PI * ZETA3)
}
