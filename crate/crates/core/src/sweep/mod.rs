//! Distance/temperature sweeps written as CSV.
//!
//! Points are evaluated in parallel; rows always come out ordered by T,
//! then by a, so the output is byte-for-byte reproducible.

mod config;

pub use config::{load_lorentz_file, parse_config, parse_config_in, parse_material, ConfigErrors, Normalization, SweepSpec};

use crate::asymptotics::{self, AsymptoticSet};
use crate::materials::{Material, StaticPermittivity};
use crate::matsubara::{thermal_force_oracle, MatsubaraSettings, OracleValue};
use crate::quantities::ThermalScales;
use crate::spectral::{force_components, ForceComponents};
use rayon::prelude::*;
use std::fmt::Write as _;

/// One (a, T) point.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub scales: ThermalScales,
    pub components: Result<ForceComponents, String>,
    pub asymptotics: Option<AsymptoticSet>,
    /// Thermal part from the Matsubara sum, when requested.
    pub oracle: Option<Result<OracleValue, String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// Values are present but the error estimate exceeds the tolerance.
    ToleranceNotMet,
    OracleError,
    IntegrationError,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::ToleranceNotMet => "tolerance_not_met",
            Self::OracleError => "oracle_error",
            Self::IntegrationError => "integration_error",
        }
    }
}

impl SweepRow {
    pub fn status(&self) -> RowStatus {
        match (&self.components, &self.oracle) {
            (Err(_), _) => RowStatus::IntegrationError,
            (Ok(_), Some(Err(_))) => RowStatus::OracleError,
            (Ok(c), _) if !c.tolerance_met => RowStatus::ToleranceNotMet,
            _ => RowStatus::Ok,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

impl SweepOutput {
    pub fn failures(&self) -> impl Iterator<Item = (&SweepRow, &str)> {
        self.rows.iter().filter_map(|r| match (&r.components, &r.oracle) {
            (Err(e), _) | (_, Some(Err(e))) => Some((r, e.as_str())),
            _ => None,
        })
    }

    pub fn to_csv(&self) -> String {
        to_csv(&self.spec, &self.rows)
    }
}

/// The limiting formulas that apply to this material pair at `a`, or
/// `None` when no closed form exists (two dielectrics).
///
/// Metal pairs switch from the short- to the long-distance set at
/// a = λ_T; a metal against a dielectric switches at λ_T/√ε.
pub fn asymptotics_for(m1: &Material, m2: &Material, a_um: f64, t_kelvin: f64) -> Option<AsymptoticSet> {
    let scales = ThermalScales::new(a_um, t_kelvin).ok()?;
    match (m1.static_permittivity(), m2.static_permittivity()) {
        (StaticPermittivity::Infinite, StaticPermittivity::Infinite) => {
            if a_um >= scales.lambda_t {
                asymptotics::metal_metal_large(a_um, t_kelvin).ok()
            } else {
                let wp = [m1, m2].iter().filter_map(|m| m.plasma_frequency()).reduce(f64::min);
                asymptotics::metal_metal_small(a_um, t_kelvin, wp).ok()
            }
        }
        (StaticPermittivity::Infinite, StaticPermittivity::Finite(eps))
        | (StaticPermittivity::Finite(eps), StaticPermittivity::Infinite) => {
            if a_um >= scales.lambda_t / eps.sqrt() {
                asymptotics::metal_dielectric_large(eps, a_um, t_kelvin).ok()
            } else {
                asymptotics::metal_dielectric_small(eps, a_um, t_kelvin).ok()
            }
        }
        _ => None,
    }
}

fn evaluate(spec: &SweepSpec, a: f64, t: f64) -> SweepRow {
    let scales = ThermalScales::new(a, t).expect("validated grid");
    let (m1, m2) = (&spec.material_1, &spec.material_2);
    let (components, oracle) = rayon::join(
        || force_components(m1, m2, a, t, &spec.settings).map_err(|e| e.to_string()),
        || {
            spec.include_oracle.then(|| {
                thermal_force_oracle(m1, m2, a, t, &MatsubaraSettings::default()).map_err(|e| e.to_string())
            })
        },
    );
    let asymptotics = if spec.include_asymptotics { asymptotics_for(m1, m2, a, t) } else { None };
    SweepRow { scales, components, asymptotics, oracle }
}

/// Runs every point of the grid. Fails only on an invalid spec; failures
/// at individual points are recorded in their rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput, ConfigErrors> {
    spec.validate()?;
    let grid: Vec<(f64, f64)> = spec
        .temperatures
        .iter()
        .flat_map(|&t| spec.distances().into_iter().map(move |a| (a, t)))
        .collect();
    let rows = grid.into_par_iter().map(|(a, t)| evaluate(spec, a, t)).collect();
    Ok(SweepOutput { spec: spec.clone(), rows })
}

/// Factor turning a pressure in Pa into the requested unit.
fn scale_factor(norm: Normalization, s: &ThermalScales) -> f64 {
    match norm {
        Normalization::Pascal => 1.0,
        Normalization::ForceNorm => 1.0 / s.force_norm,
        Normalization::RatioT0 => s.ratio_to_zero_temperature() / s.force_norm,
    }
}

/// Column names for a spec.
pub fn csv_header(spec: &SweepSpec) -> Vec<&'static str> {
    let mut h = vec!["a_um", "T_K", "pw_s", "pw_p", "ew_s", "ew_p", "pw_total", "ew_total", "total", "err_total"];
    if spec.include_asymptotics {
        h.extend(["asym_pw_s", "asym_pw_p", "asym_ew_s", "asym_ew_p", "asym_valid"]);
    }
    if spec.include_oracle {
        h.push("oracle_total");
    }
    h.push("status");
    h
}

fn num(out: &mut String, x: f64) {
    let _ = write!(out, ",{x:.8e}");
}

/// CSV with LF line endings. Failed values are written as `NaN`.
pub fn to_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut out = csv_header(spec).join(",");
    out.push('\n');
    for row in rows {
        let f = scale_factor(spec.normalization, &row.scales);
        let _ = write!(out, "{:.8e},{:.8e}", row.scales.a_um, row.scales.t_kelvin);
        let values = match &row.components {
            Ok(c) => [c.pw_s, c.pw_p, c.ew_s, c.ew_p, c.pw_total(), c.ew_total(), c.total(), c.err_total()],
            Err(_) => [f64::NAN; 8],
        };
        for v in values {
            num(&mut out, v * f);
        }
        if spec.include_asymptotics {
            match &row.asymptotics {
                Some(set) => {
                    for c in set.components() {
                        num(&mut out, c.value * f);
                    }
                    out.push_str(if set.all_valid() { ",true" } else { ",false" });
                }
                None => out.push_str(",NaN,NaN,NaN,NaN,false"),
            }
        }
        if spec.include_oracle {
            let v = match &row.oracle {
                Some(Ok(o)) => o.value,
                _ => f64::NAN,
            };
            num(&mut out, v * f);
        }
        out.push(',');
        out.push_str(row.status().as_str());
        out.push('\n');
    }
    out
}

/// Writes [`to_csv`] to `path`.
pub fn emit_csv(spec: &SweepSpec, rows: &[SweepRow], path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, to_csv(spec, rows))
}
