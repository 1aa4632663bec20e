//! Dielectric response of the plates.

use crate::error::{domain, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One Lorentz oscillator term, `strength · ω0² / (ω0² − ω² − iγω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Oscillator {
    pub strength: f64,
    #[serde(rename = "omega0_eV")]
    pub omega0: f64,
    #[serde(rename = "gamma_eV")]
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DielectricModel {
    /// ε(ω) = 1 − ω_p²/(ω(ω + iω_τ)), frequencies in eV.
    Drude { omega_p: f64, omega_tau: f64 },
    ConstantEps { eps: f64 },
    LorentzOscillators { eps_inf: f64, oscillators: Vec<Oscillator> },
    /// Perfect reflector. Resolved symbolically in the reflection
    /// coefficients and never evaluated as a permittivity.
    IdealMetal,
}

/// Static (ω → 0) permittivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticPermittivity {
    Finite(f64),
    Infinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub label: String,
    pub model: DielectricModel,
}

impl Material {
    pub fn new(label: impl Into<String>, model: DielectricModel) -> Self {
        Self { label: label.into(), model }
    }

    pub fn drude(omega_p: f64, omega_tau: f64) -> Self {
        Self::new("drude", DielectricModel::Drude { omega_p, omega_tau })
    }

    /// Gold with ω_p = 9.0 eV and ω_τ = 0.035 eV.
    pub fn gold() -> Self {
        Self::new("Au", DielectricModel::Drude { omega_p: 9.0, omega_tau: 0.035 })
    }

    pub fn constant(eps: f64) -> Self {
        Self::new(format!("eps{eps}"), DielectricModel::ConstantEps { eps })
    }

    pub fn lorentz(eps_inf: f64, oscillators: Vec<Oscillator>) -> Self {
        Self::new("lorentz", DielectricModel::LorentzOscillators { eps_inf, oscillators })
    }

    pub fn ideal_metal() -> Self {
        Self::new("ideal", DielectricModel::IdealMetal)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self.model, DielectricModel::IdealMetal)
    }

    /// All invariant violations; empty when the material is usable.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let bad = |v: f64| !v.is_finite();
        match &self.model {
            DielectricModel::Drude { omega_p, omega_tau } => {
                if bad(*omega_p) || *omega_p <= 0.0 {
                    out.push("omega_p must be strictly positive".to_string());
                }
                if bad(*omega_tau) || *omega_tau <= 0.0 {
                    out.push("omega_tau must be strictly positive".to_string());
                }
            }
            DielectricModel::ConstantEps { eps } => {
                if bad(*eps) || *eps < 1.0 {
                    out.push("eps must be ≥ 1".to_string());
                }
            }
            DielectricModel::LorentzOscillators { eps_inf, oscillators } => {
                if bad(*eps_inf) || *eps_inf < 1.0 {
                    out.push("eps_inf must be ≥ 1".to_string());
                }
                for (i, o) in oscillators.iter().enumerate() {
                    if bad(o.strength) || o.strength < 0.0 {
                        out.push(format!("oscillator {i}: strength must be ≥ 0"));
                    }
                    if bad(o.omega0) || o.omega0 <= 0.0 {
                        out.push(format!("oscillator {i}: omega0 must be strictly positive"));
                    }
                    if bad(o.gamma) || o.gamma < 0.0 {
                        out.push(format!("oscillator {i}: gamma must be ≥ 0"));
                    }
                }
            }
            DielectricModel::IdealMetal => {}
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let problems = self.problems();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMaterial { label: self.label.clone(), problems })
        }
    }

    /// ε(ω) on the real frequency axis, ω in eV.
    pub fn permittivity_real_axis(&self, omega: f64) -> Result<Complex64> {
        if !(omega > 0.0) {
            return Err(domain(format!("frequency must be positive, got {omega} eV")));
        }
        self.eps_real_unchecked(omega).ok_or(Error::UnsupportedEvaluation)
    }

    pub(crate) fn eps_real_unchecked(&self, omega: f64) -> Option<Complex64> {
        match &self.model {
            DielectricModel::Drude { omega_p, omega_tau } => {
                let denom = Complex64::new(omega * omega, omega * omega_tau);
                Some(1.0 - omega_p * omega_p / denom)
            }
            DielectricModel::ConstantEps { eps } => Some(Complex64::new(*eps, 0.0)),
            DielectricModel::LorentzOscillators { eps_inf, oscillators } => {
                let mut eps = Complex64::new(*eps_inf, 0.0);
                for o in oscillators {
                    let w02 = o.omega0 * o.omega0;
                    eps += o.strength * w02 / Complex64::new(w02 - omega * omega, -o.gamma * omega);
                }
                Some(eps)
            }
            DielectricModel::IdealMetal => None,
        }
    }

    /// ε(iξ) on the imaginary frequency axis, ξ in eV.
    pub fn permittivity_imag_axis(&self, xi: f64) -> Result<f64> {
        if !(xi > 0.0) {
            return Err(domain(format!("imaginary frequency must be positive, got {xi} eV")));
        }
        self.eps_imag_unchecked(xi).ok_or(Error::UnsupportedEvaluation)
    }

    pub(crate) fn eps_imag_unchecked(&self, xi: f64) -> Option<f64> {
        match &self.model {
            DielectricModel::Drude { omega_p, omega_tau } => {
                Some(1.0 + omega_p * omega_p / (xi * (xi + omega_tau)))
            }
            DielectricModel::ConstantEps { eps } => Some(*eps),
            DielectricModel::LorentzOscillators { eps_inf, oscillators } => Some(
                eps_inf
                    + oscillators
                        .iter()
                        .map(|o| {
                            let w02 = o.omega0 * o.omega0;
                            o.strength * w02 / (w02 + xi * xi + o.gamma * xi)
                        })
                        .sum::<f64>(),
            ),
            DielectricModel::IdealMetal => None,
        }
    }

    /// ξ²(ε(iξ) − 1) in eV², finite in the ξ → 0 limit for every model.
    pub(crate) fn xi2_susceptibility(&self, xi: f64) -> Option<f64> {
        match &self.model {
            DielectricModel::Drude { omega_p, omega_tau } => {
                Some(xi * omega_p * omega_p / (xi + omega_tau))
            }
            _ => self.eps_imag_or_static(xi).map(|e| xi * xi * (e - 1.0)),
        }
    }

    /// ε(iξ) with ξ = 0 mapped to the static value. `None` for ideal metals
    /// and for Drude at ξ = 0 (infinite).
    pub(crate) fn eps_imag_or_static(&self, xi: f64) -> Option<f64> {
        if xi > 0.0 {
            self.eps_imag_unchecked(xi)
        } else {
            match self.static_permittivity() {
                StaticPermittivity::Finite(e) => Some(e),
                StaticPermittivity::Infinite => None,
            }
        }
    }

    pub fn static_permittivity(&self) -> StaticPermittivity {
        match &self.model {
            DielectricModel::Drude { .. } | DielectricModel::IdealMetal => StaticPermittivity::Infinite,
            DielectricModel::ConstantEps { eps } => StaticPermittivity::Finite(*eps),
            DielectricModel::LorentzOscillators { eps_inf, oscillators } => {
                StaticPermittivity::Finite(eps_inf + oscillators.iter().map(|o| o.strength).sum::<f64>())
            }
        }
    }

    /// Frequencies (eV) where the response changes character: relaxation
    /// rates, resonances and their widths. Used to seed quadrature grids.
    pub fn characteristic_frequencies(&self) -> Vec<f64> {
        match &self.model {
            DielectricModel::Drude { omega_p, omega_tau } => vec![*omega_tau, *omega_p],
            DielectricModel::LorentzOscillators { oscillators, .. } => oscillators
                .iter()
                .flat_map(|o| {
                    let w = o.gamma.max(1e-6 * o.omega0);
                    [o.omega0 - w, o.omega0, o.omega0 + w]
                })
                .filter(|w| *w > 0.0)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Plasma frequency for Drude metals.
    pub fn plasma_frequency(&self) -> Option<f64> {
        match self.model {
            DielectricModel::Drude { omega_p, .. } => Some(omega_p),
            _ => None,
        }
    }

    /// Whether this plate is vacuum-like (ε ≡ 1), i.e. has no interface.
    pub(crate) fn is_vacuum(&self) -> bool {
        match &self.model {
            DielectricModel::ConstantEps { eps } => *eps == 1.0,
            DielectricModel::LorentzOscillators { eps_inf, oscillators } => {
                *eps_inf == 1.0 && oscillators.iter().all(|o| o.strength == 0.0)
            }
            _ => false,
        }
    }
}
