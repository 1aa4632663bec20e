//! Closed-form limits of the thermal pressure.
//!
//! Each limit comes with the distance window in which it applies. The
//! windows use a factor 5 for "much larger/smaller than λ_T"-type
//! conditions and a factor 10 for the penetration depth c/ω_p; whether a
//! given (a, T) falls inside is computed and attached to every result.

use crate::error::{domain, Result};
use crate::materials::StaticPermittivity;
use crate::quadrature::{integrate, Tolerance};
use crate::quantities::{blackbody_pressure_per_polarization, ThermalScales, HBAR_C, UNITS, ZETA3};
use std::f64::consts::PI;

const LARGE: f64 = 5.0;
const PENETRATION: f64 = 10.0;

/// Distance window `lower_um < a < upper_um` (either side may be open).
#[derive(Debug, Clone, PartialEq)]
pub struct Validity {
    pub lower_um: Option<f64>,
    pub upper_um: Option<f64>,
    pub description: String,
}

impl Validity {
    fn new(lower_um: Option<f64>, upper_um: Option<f64>, description: impl Into<String>) -> Self {
        Self { lower_um, upper_um, description: description.into() }
    }

    pub fn holds(&self, a_um: f64) -> bool {
        self.lower_um.map_or(true, |l| a_um > l) && self.upper_um.map_or(true, |u| a_um < u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticResult {
    /// Pressure in Pa; positive is attractive.
    pub value: f64,
    /// `value` in units of force_norm.
    pub normalized: f64,
    pub validity: Validity,
    /// Whether `validity` holds at the (a, T) the result was computed for.
    pub valid: bool,
    pub formula_id: &'static str,
    /// Caveats that the window alone does not express.
    pub note: Option<&'static str>,
}

/// The four components of one limit.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSet {
    pub pw_s: AsymptoticResult,
    pub pw_p: AsymptoticResult,
    pub ew_s: AsymptoticResult,
    pub ew_p: AsymptoticResult,
}

impl AsymptoticSet {
    pub fn total(&self) -> f64 {
        self.pw_s.value + self.pw_p.value + self.ew_s.value + self.ew_p.value
    }

    pub fn components(&self) -> [&AsymptoticResult; 4] {
        [&self.pw_s, &self.pw_p, &self.ew_s, &self.ew_p]
    }

    /// True when every component is inside its window.
    pub fn all_valid(&self) -> bool {
        self.components().iter().all(|c| c.valid)
    }
}

fn result(
    scales: &ThermalScales,
    value: f64,
    validity: &Validity,
    formula_id: &'static str,
    note: Option<&'static str>,
) -> AsymptoticResult {
    AsymptoticResult {
        value,
        normalized: value / scales.force_norm,
        valid: validity.holds(scales.a_um),
        validity: validity.clone(),
        formula_id,
        note,
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps >= 1.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("static permittivity must be a finite number ≥ 1, got {eps}")))
    }
}

fn static_ratio(eps: StaticPermittivity) -> Result<f64> {
    match eps {
        StaticPermittivity::Infinite => Ok(1.0),
        StaticPermittivity::Finite(e) => {
            check_eps(e)?;
            Ok((e - 1.0) / (e + 1.0))
        }
    }
}

/// `∫_0^∞ x² Δ/(e^x − Δ) dx` for `0 ≤ Δ ≤ 1`; equals 2ζ(3) at Δ = 1.
pub fn lifshitz_x_integral(delta: f64) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    let f = |x: f64| {
        if x == 0.0 {
            0.0
        } else {
            x * x * delta / (x.exp_m1() + (1.0 - delta))
        }
    };
    integrate(f, &[0.0, 1.0, 4.0, 15.0, 50.0, 120.0], Tolerance::new(1e-14, 0.0)).value
}

/// Large-distance thermal pressure fixed by the static permittivities,
/// `T/(16πa³) ∫ x² Δ/(e^x − Δ) dx` with `Δ = Π (ε_i − 1)/(ε_i + 1)`. Pa.
pub fn lifshitz_limit(eps1: StaticPermittivity, eps2: StaticPermittivity, a_um: f64, t_kelvin: f64) -> Result<f64> {
    let scales = ThermalScales::new(a_um, t_kelvin)?;
    let delta = static_ratio(eps1)? * static_ratio(eps2)?;
    let t = scales.thermal_energy;
    if delta == 1.0 {
        return Ok(UNITS.to_pascal(t * ZETA3 / (8.0 * PI * a_um.powi(3))));
    }
    Ok(UNITS.to_pascal(t / (16.0 * PI * a_um.powi(3)) * lifshitz_x_integral(delta)))
}

/// Two good metals far apart: (+1, +1, −1, 0) in force_norm units.
pub fn metal_metal_large(a_um: f64, t_kelvin: f64) -> Result<AsymptoticSet> {
    let sc = ThermalScales::new(a_um, t_kelvin)?;
    let f = sc.force_norm;
    let w = Validity::new(Some(LARGE * sc.lambda_t), None, format!("a > {LARGE} λ_T"));
    let note = Some("the p evanescent term decays slowly toward zero");
    Ok(AsymptoticSet {
        pw_s: result(&sc, f, &w, "metal-metal/large/pw_s", None),
        pw_p: result(&sc, f, &w, "metal-metal/large/pw_p", note),
        ew_s: result(&sc, -f, &w, "metal-metal/large/ew_s", None),
        ew_p: result(&sc, 0.0, &w, "metal-metal/large/ew_p", note),
    })
}

/// Two Drude metals between the penetration depth and λ_T: propagating
/// waves give the black-body pressure, the s evanescent term a repulsion of
/// one force_norm. `omega_p` (eV) sets the lower edge of the window; without
/// it only the upper edge is checked.
pub fn metal_metal_small(a_um: f64, t_kelvin: f64, omega_p: Option<f64>) -> Result<AsymptoticSet> {
    let sc = ThermalScales::new(a_um, t_kelvin)?;
    if let Some(wp) = omega_p {
        if !(wp > 0.0 && wp.is_finite()) {
            return Err(domain(format!("plasma frequency must be positive, got {wp} eV")));
        }
    }
    let lower = omega_p.map(|wp| PENETRATION * HBAR_C / wp);
    let w = Validity::new(lower, Some(sc.lambda_t / LARGE), format!("{PENETRATION} c/ω_p < a < λ_T/{LARGE}"));
    let bb = blackbody_pressure_per_polarization(t_kelvin)?;
    Ok(AsymptoticSet {
        pw_s: result(&sc, bb, &w, "metal-metal/small/pw_s", None),
        pw_p: result(&sc, bb, &w, "metal-metal/small/pw_p", None),
        ew_s: result(&sc, -sc.force_norm, &w, "metal-metal/small/ew_s", None),
        ew_p: result(&sc, 0.0, &w, "metal-metal/small/ew_p", Some("small compared with ew_s; no closed form")),
    })
}

/// Ideal metal facing a dielectric with static ε₂, far apart:
/// (+1, −3/4, −1, +7/4) for (pw_s, pw_p, ew_s, ew_p).
pub fn metal_dielectric_large(eps2: f64, a_um: f64, t_kelvin: f64) -> Result<AsymptoticSet> {
    check_eps(eps2)?;
    let sc = ThermalScales::new(a_um, t_kelvin)?;
    let f = sc.force_norm;
    let root = eps2.sqrt();
    let ws = Validity::new(Some(LARGE * sc.lambda_t / root), None, format!("a > {LARGE} λ_T/√ε₂"));
    let wp = Validity::new(Some(LARGE * sc.lambda_t * root), None, format!("a > {LARGE} λ_T √ε₂"));
    let slow = Some("approached very slowly; distances ~100 λ_T √ε₂ may be needed");
    Ok(AsymptoticSet {
        pw_s: result(&sc, f, &ws, "metal-dielectric/large/pw_s", None),
        pw_p: result(&sc, -0.75 * f, &wp, "metal-dielectric/large/pw_p", slow),
        ew_s: result(&sc, -f, &ws, "metal-dielectric/large/ew_s", None),
        ew_p: result(&sc, 1.75 * f, &wp, "metal-dielectric/large/ew_p", slow),
    })
}

/// Ideal metal facing a dielectric with ε₂ ≫ 1 at short distance. The
/// s-terms and pw_p hold for a < λ_T/(5√ε₂); ew_p only in the intermediate
/// window 5λ_T ε₂^{−3/2} < a < λ_T/(5√ε₂), and is flagged invalid whenever
/// its logarithm is not positive.
pub fn metal_dielectric_small(eps2: f64, a_um: f64, t_kelvin: f64) -> Result<AsymptoticSet> {
    check_eps(eps2)?;
    let sc = ThermalScales::new(a_um, t_kelvin)?;
    let bb = blackbody_pressure_per_polarization(t_kelvin)?;
    let root = eps2.sqrt();
    let short = Validity::new(None, Some(sc.lambda_t / (LARGE * root)), format!("a < λ_T/({LARGE}√ε₂)"));
    let middle = Validity::new(
        Some(LARGE * sc.lambda_t / (eps2 * root)),
        Some(sc.lambda_t / (LARGE * root)),
        format!("{LARGE} λ_T ε₂^(-3/2) < a < λ_T/({LARGE}√ε₂)"),
    );
    let t = sc.thermal_energy;
    let log_arg = eps2 * root * a_um / sc.lambda_t;
    let ew_p = UNITS.to_pascal(t * t * log_arg.ln() / (24.0 * a_um * a_um * HBAR_C * root));
    let mut ew_p = result(&sc, ew_p, &middle, "metal-dielectric/small/ew_p", None);
    if log_arg <= 1.0 {
        ew_p.valid = false;
        ew_p.note = Some("logarithm argument ≤ 1: outside the intermediate regime");
    }
    Ok(AsymptoticSet {
        pw_s: result(&sc, -bb * 1.5 * root, &short, "metal-dielectric/small/pw_s", None),
        pw_p: result(&sc, -bb * 0.75 * root, &short, "metal-dielectric/small/pw_p", None),
        ew_s: result(&sc, -bb * eps2 * root, &short, "metal-dielectric/small/ew_s", None),
        ew_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::force_norm;

    fn li3(z: f64) -> f64 {
        (1..2_000_000).map(|k| z.powi(k) / (k as f64).powi(3)).take_while(|t| *t > 1e-20).sum()
    }

    #[test]
    fn x_integral_is_twice_trilog() {
        assert!((lifshitz_x_integral(1.0) / (2.0 * ZETA3) - 1.0).abs() < 1e-12);
        for d in [0.1, 0.5, 0.9, 99.0 / 101.0] {
            let exact = 2.0 * li3(d);
            assert!((lifshitz_x_integral(d) / exact - 1.0).abs() < 1e-11, "{d}");
        }
        assert_eq!(lifshitz_x_integral(0.0), 0.0);
    }

    #[test]
    fn lifshitz_examples() {
        let inf = StaticPermittivity::Infinite;
        let one = StaticPermittivity::Finite(1.0);
        let exact = force_norm(3.0, 300.0).unwrap();
        assert_eq!(lifshitz_limit(inf, inf, 3.0, 300.0).unwrap(), exact);
        assert_eq!(lifshitz_limit(one, one, 3.0, 300.0).unwrap(), 0.0);
        assert!(lifshitz_limit(StaticPermittivity::Finite(0.5), inf, 3.0, 300.0).is_err());
        assert!(lifshitz_limit(inf, inf, 3.0, 0.0).is_err());
    }

    #[test]
    fn metal_metal_large_sums_to_lifshitz() {
        let set = metal_metal_large(50.0, 300.0).unwrap();
        let n: Vec<f64> = set.components().iter().map(|c| c.normalized).collect();
        assert_eq!(n, vec![1.0, 1.0, -1.0, 0.0]);
        let lif = lifshitz_limit(StaticPermittivity::Infinite, StaticPermittivity::Infinite, 50.0, 300.0).unwrap();
        assert_eq!(set.total(), lif);
        assert!(set.all_valid());
        assert!(!metal_metal_large(2.0 * 7.633, 300.0).unwrap().pw_s.valid);
    }

    #[test]
    fn metal_metal_small_values() {
        let set = metal_metal_small(1.0, 300.0, Some(9.0)).unwrap();
        let pw = set.pw_s.value + set.pw_p.value;
        assert!((pw / 2.0e-6 - 1.0).abs() < 0.03, "{pw}");
        assert!((set.ew_s.value / -1.98e-4 - 1.0).abs() < 0.01);
        assert!(set.all_valid());
        let far = metal_metal_small(3.0, 300.0, Some(9.0)).unwrap();
        assert_eq!(far.pw_s.value, set.pw_s.value);
        assert!(!far.pw_s.valid);
        assert!(!metal_metal_small(0.1, 300.0, Some(9.0)).unwrap().pw_s.valid);
    }

    #[test]
    fn metal_dielectric_large_values() {
        let set = metal_dielectric_large(100.0, 500.0, 300.0).unwrap();
        let n: Vec<f64> = set.components().iter().map(|c| c.normalized).collect();
        assert_eq!(n, vec![1.0, -0.75, -1.0, 1.75]);
        assert!((set.total() / set.pw_s.value - 1.0).abs() < 1e-15);
        // p window at ε₂ = 100: 5 λ_T √ε₂ ≈ 382 µm
        assert!((set.pw_p.validity.lower_um.unwrap() - 5.0 * 76.33).abs() < 0.5);
        assert!(!metal_dielectric_large(100.0, 300.0, 300.0).unwrap().pw_p.valid);
    }

    #[test]
    fn metal_dielectric_large_total_matches_lifshitz_for_large_eps() {
        for eps in [150.0, 1000.0] {
            let set = metal_dielectric_large(eps, 500.0, 300.0).unwrap();
            let lif =
                lifshitz_limit(StaticPermittivity::Infinite, StaticPermittivity::Finite(eps), 500.0, 300.0).unwrap();
            assert!((set.total() / lif - 1.0).abs() < 0.02, "{eps}");
        }
    }

    #[test]
    fn metal_dielectric_small_values() {
        let set = metal_dielectric_small(100.0, 0.05, 300.0).unwrap();
        assert!((set.ew_s.value / set.pw_s.value - 200.0 / 3.0).abs() < 1e-9);
        assert!((set.ew_s.value / -1.02e-3 - 1.0).abs() < 0.01, "{}", set.ew_s.value);
        assert!(set.ew_s.valid);
        // T² ln(ε^{3/2} a/λ_T)/(24 a² ħc √ε) by hand: 1.0726e-3 force_norm
        assert!((set.ew_p.normalized / 1.0726e-3 - 1.0).abs() < 1e-4, "{}", set.ew_p.normalized);
        assert!(set.ew_p.valid);
        let tiny = metal_dielectric_small(100.0, 0.005, 300.0).unwrap();
        assert!(!tiny.ew_p.valid);
        assert!(tiny.ew_p.value.is_finite());
    }
}
