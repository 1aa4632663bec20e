//! Unit system, physical constants and the thermal scales shared by every
//! other module.
//!
//! Internally energies and frequencies are expressed in eV (ħ = 1), lengths
//! in µm and temperatures in K. Pressures are computed in eV/µm³ and
//! converted to Pa at the public boundary.

use crate::error::{domain, Result};
use std::f64::consts::PI;

/// ħc in eV·µm.
pub const HBAR_C: f64 = 0.1973269804;
/// Boltzmann constant in eV/K.
pub const K_B: f64 = 8.617333262e-5;
/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.2020569031595943;
/// One eV/µm³ expressed in Pa (1 eV = 1.602176634e-19 J, 1 µm³ = 1e-18 m³).
pub const PA_PER_EV_PER_UM3: f64 = 0.1602176634;

/// The fixed unit system. Not configurable; exposed so callers can inspect
/// the conversions in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar_c: f64,
    pub k_b: f64,
    pub pa_per_ev_per_um3: f64,
}

pub const UNITS: UnitSystem = UnitSystem {
    hbar_c: HBAR_C,
    k_b: K_B,
    pa_per_ev_per_um3: PA_PER_EV_PER_UM3,
};

impl UnitSystem {
    pub fn to_pascal(&self, ev_per_um3: f64) -> f64 {
        ev_per_um3 * self.pa_per_ev_per_um3
    }

    pub fn from_pascal(&self, pa: f64) -> f64 {
        pa / self.pa_per_ev_per_um3
    }
}

fn check_temperature(t_kelvin: f64) -> Result<()> {
    if t_kelvin > 0.0 && t_kelvin.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("temperature must be positive, got {t_kelvin} K")))
    }
}

fn check_distance(a_um: f64) -> Result<()> {
    if a_um > 0.0 && a_um.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("distance must be positive, got {a_um} µm")))
    }
}

/// k_B·T in eV.
pub fn thermal_energy(t_kelvin: f64) -> Result<f64> {
    check_temperature(t_kelvin)?;
    Ok(K_B * t_kelvin)
}

/// Thermal wavelength λ_T = ħc/(k_B T) in µm (no 2π factor).
pub fn thermal_wavelength(t_kelvin: f64) -> Result<f64> {
    Ok(HBAR_C / thermal_energy(t_kelvin)?)
}

/// Natural pressure scale k_B T ζ(3)/(8π a³), in Pa.
pub fn force_norm(a_um: f64, t_kelvin: f64) -> Result<f64> {
    check_distance(a_um)?;
    let t = thermal_energy(t_kelvin)?;
    Ok(UNITS.to_pascal(t * ZETA3 / (8.0 * PI * a_um.powi(3))))
}

/// Zero-temperature pressure between ideal metals, π²ħc/(240 a⁴), in Pa.
pub fn ideal_zero_temperature_pressure(a_um: f64) -> Result<f64> {
    check_distance(a_um)?;
    Ok(UNITS.to_pascal(PI * PI * HBAR_C / (240.0 * a_um.powi(4))))
}

/// Black-body pressure for one polarization, π²T⁴/(90 ħ³c³), in Pa.
pub fn blackbody_pressure_per_polarization(t_kelvin: f64) -> Result<f64> {
    let t = thermal_energy(t_kelvin)?;
    Ok(UNITS.to_pascal(PI * PI * t.powi(4) / (90.0 * HBAR_C.powi(3))))
}

/// Derived scales at one (a, T) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalScales {
    pub a_um: f64,
    pub t_kelvin: f64,
    /// k_B T in eV.
    pub thermal_energy: f64,
    /// λ_T in µm.
    pub lambda_t: f64,
    /// ω_c = ħc/2a in eV.
    pub omega_c: f64,
    /// Tζ(3)/8πa³ in Pa.
    pub force_norm: f64,
    pub zeta3: f64,
}

impl ThermalScales {
    pub fn new(a_um: f64, t_kelvin: f64) -> Result<Self> {
        check_distance(a_um)?;
        let thermal_energy = thermal_energy(t_kelvin)?;
        Ok(Self {
            a_um,
            t_kelvin,
            thermal_energy,
            lambda_t: HBAR_C / thermal_energy,
            omega_c: HBAR_C / (2.0 * a_um),
            force_norm: force_norm(a_um, t_kelvin)?,
            zeta3: ZETA3,
        })
    }

    /// ω/ω_c per unit of u = ħω/T, i.e. 2a/λ_T.
    pub fn gap_ratio(&self) -> f64 {
        2.0 * self.a_um / self.lambda_t
    }

    /// Ratio of `force_norm` to the ideal-metal T = 0 pressure,
    /// 30ζ(3)/π³ · a/λ_T ≈ 1.163 a/λ_T.
    pub fn ratio_to_zero_temperature(&self) -> f64 {
        30.0 * ZETA3 / PI.powi(3) * self.a_um / self.lambda_t
    }
}
