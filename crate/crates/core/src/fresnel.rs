//! Single-interface reflection coefficients for propagating (PW) and
//! evanescent (EW) waves in the dimensionless (u, y) variables.
//!
//! With X = ω/ω_c the longitudinal parameter is
//! `s = sqrt(X²(ε − 1) + Y²)` where `Y = y` for PW and `Y = iy` for EW, and
//! `r^s = (Y − s)/(Y + s)`, `r^p = (εY − s)/(εY + s)`. The square root is the
//! principal branch with `Im ≥ 0` on the negative real axis.

use crate::error::{domain, Result};
use crate::materials::Material;
use crate::quantities::ThermalScales;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    S,
    P,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::S, Polarization::P];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Propagating,
    Evanescent,
}

/// A point of the spectral integration domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    /// ħω/T.
    pub u: f64,
    /// 2a·k₀ (PW) or 2a·|k₀| (EW).
    pub y: f64,
    pub regime: Regime,
    pub a_um: f64,
    pub t_kelvin: f64,
    omega_over_omega_c: f64,
    omega: f64,
}

impl SpectralPoint {
    pub fn new(u: f64, y: f64, regime: Regime, a_um: f64, t_kelvin: f64) -> Result<Self> {
        let scales = ThermalScales::new(a_um, t_kelvin)?;
        if !(u > 0.0 && u.is_finite()) {
            return Err(domain(format!("u must be positive, got {u}")));
        }
        if !(y >= 0.0 && y.is_finite()) {
            return Err(domain(format!("y must be non-negative, got {y}")));
        }
        let x = u * scales.gap_ratio();
        if regime == Regime::Propagating && y > x * (1.0 + 1e-12) {
            return Err(domain(format!("propagating point needs y ≤ ω/ω_c = {x}, got {y}")));
        }
        Ok(Self {
            u,
            y,
            regime,
            a_um,
            t_kelvin,
            omega_over_omega_c: x,
            omega: u * scales.thermal_energy,
        })
    }

    /// ω in eV.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega_over_omega_c(&self) -> f64 {
        self.omega_over_omega_c
    }

    /// k₀ in µm⁻¹ (imaginary for EW).
    pub fn k0(&self) -> Complex64 {
        let k = self.y / (2.0 * self.a_um);
        match self.regime {
            Regime::Propagating => Complex64::new(k, 0.0),
            Regime::Evanescent => Complex64::new(0.0, k),
        }
    }
}

/// Principal square root with `Im ≥ 0` on the negative real axis.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    // -0.0 + 0.0 == +0.0 keeps the cut approached from above.
    let z = Complex64::new(z.re, z.im + 0.0);
    let r = z.sqrt();
    if r.re < 0.0 {
        -r
    } else {
        r
    }
}

fn transverse(y: f64, regime: Regime) -> Complex64 {
    match regime {
        Regime::Propagating => Complex64::new(y, 0.0),
        Regime::Evanescent => Complex64::new(0.0, y),
    }
}

/// `s = sqrt((ω/ω_c)²(ε − 1) ± y²)`, `+` for PW and `−` for EW.
pub fn longitudinal_param(eps: Complex64, omega_over_omega_c: f64, y: f64, regime: Regime) -> Complex64 {
    let chi = eps - 1.0;
    if chi == Complex64::new(0.0, 0.0) {
        return transverse(y, regime);
    }
    let x2 = omega_over_omega_c * omega_over_omega_c;
    let y2 = match regime {
        Regime::Propagating => y * y,
        Regime::Evanescent => -y * y,
    };
    principal_sqrt(chi * x2 + y2)
}

/// Reflective response of one plate at a given frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Response {
    Ideal,
    Finite(Complex64),
}

impl Response {
    pub(crate) fn at(material: &Material, omega: f64) -> Self {
        match material.eps_real_unchecked(omega) {
            Some(eps) => Response::Finite(eps),
            None => Response::Ideal,
        }
    }
}

/// Reflection coefficient of one plate for given ε, ω/ω_c and y.
pub(crate) fn reflection(response: Response, x: f64, y: f64, regime: Regime, pol: Polarization) -> Complex64 {
    let eps = match response {
        Response::Ideal => {
            return match pol {
                Polarization::S => Complex64::new(-1.0, 0.0),
                Polarization::P => Complex64::new(1.0, 0.0),
            }
        }
        Response::Finite(eps) => eps,
    };
    let big_y = transverse(y, regime);
    let s = longitudinal_param(eps, x, y, regime);
    match pol {
        // (Y − s)/(Y + s) = (Y² − s²)/(Y + s)², and Y² − s² = −X²(ε − 1)
        // exactly; Y and s share a half-plane so Y + s never cancels.
        Polarization::S => {
            let sum = big_y + s;
            if sum == Complex64::new(0.0, 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            -(eps - 1.0) * (x * x) / (sum * sum)
        }
        Polarization::P => {
            let ey = eps * big_y;
            let den = ey + s;
            if den == Complex64::new(0.0, 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            (ey - s) / den
        }
    }
}

/// Reflection coefficient of `m` at `pt`.
pub fn reflect(m: &Material, pt: &SpectralPoint, pol: Polarization) -> Result<Complex64> {
    m.validate()?;
    let response = Response::at(m, pt.omega());
    Ok(reflection(response, pt.omega_over_omega_c(), pt.y, pt.regime, pol))
}

/// R^μ = r₁^μ r₂^μ.
pub fn pair_product(m1: &Material, m2: &Material, pt: &SpectralPoint, pol: Polarization) -> Result<Complex64> {
    Ok(reflect(m1, pt, pol)? * reflect(m2, pt, pol)?)
}

/// Reflection coefficient at grazing incidence (y → 0) for finite ω:
/// `−1` for any real interface in either polarization, `+1` for the p-wave
/// on an ideal metal and `0` for vacuum.
pub(crate) fn grazing_reflection(m: &Material, pol: Polarization) -> f64 {
    if m.is_ideal() {
        match pol {
            Polarization::S => -1.0,
            Polarization::P => 1.0,
        }
    } else if m.is_vacuum() {
        0.0
    } else {
        -1.0
    }
}
