//! Sweep configuration: the TOML schema and the inline material shorthand.
//!
//! ```toml
//! [geometry]
//! a_min_um = 0.2
//! a_max_um = 200.0
//! points = 40
//! temperatures_K = [300.0]
//!
//! [materials]
//! plate1 = "drude:9.0,0.035"          # shorthand, or a table:
//! plate2 = { model = "eps", eps = 100.0 }
//!
//! [quadrature]                          # optional, any subset
//! rel_tol = 1e-6
//!
//! [output]                              # optional
//! normalize = "force_norm"              # pascal | force_norm | ratio_T0
//! asymptotics = true
//! oracle = false
//! path = "sweep.csv"
//! ```

use crate::materials::{Material, Oscillator};
use crate::spectral::QuadratureSettings;
use serde::Deserialize;
use std::fmt;
use std::path::{Path, PathBuf};

/// Every problem found while reading a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("\n"))
    }
}

impl std::error::Error for ConfigErrors {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Normalization {
    #[serde(rename = "pascal")]
    Pascal,
    #[serde(rename = "force_norm")]
    ForceNorm,
    /// force_norm units times 1.163 a/λ_T, i.e. relative to the ideal-metal
    /// pressure at T = 0.
    #[serde(rename = "ratio_T0")]
    RatioT0,
}

impl std::str::FromStr for Normalization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pascal" => Ok(Self::Pascal),
            "force_norm" => Ok(Self::ForceNorm),
            "ratio_T0" => Ok(Self::RatioT0),
            _ => Err(format!("unknown normalization `{s}` (expected pascal, force_norm or ratio_T0)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub a_min: f64,
    pub a_max: f64,
    pub points: usize,
    pub temperatures: Vec<f64>,
    pub material_1: Material,
    pub material_2: Material,
    pub normalization: Normalization,
    pub include_asymptotics: bool,
    pub include_oracle: bool,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
    pub settings: QuadratureSettings,
}

impl Default for SweepSpec {
    /// Gold against gold, 0.2 to 200 µm, 40 points, 300 K.
    fn default() -> Self {
        Self {
            a_min: 0.2,
            a_max: 200.0,
            points: 40,
            temperatures: vec![300.0],
            material_1: Material::gold(),
            material_2: Material::gold(),
            normalization: Normalization::ForceNorm,
            include_asymptotics: false,
            include_oracle: false,
            output_path: None,
            settings: QuadratureSettings::default(),
        }
    }
}

impl SweepSpec {
    /// Log-spaced distances, endpoints exact.
    pub fn distances(&self) -> Vec<f64> {
        let n = self.points;
        let ratio = (self.a_max / self.a_min).ln();
        (0..n)
            .map(|i| match i {
                0 => self.a_min,
                _ if i == n - 1 => self.a_max,
                _ => self.a_min * (ratio * i as f64 / (n - 1) as f64).exp(),
            })
            .collect()
    }

    /// All invariant violations, with the config key they belong to.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.a_min > 0.0 && self.a_min.is_finite()) {
            out.push(format!("geometry.a_min_um: a_min must be positive, got {}", self.a_min));
        }
        if !(self.a_max > self.a_min && self.a_max.is_finite()) {
            out.push(format!("geometry.a_max_um: a_max must exceed a_min, got {}", self.a_max));
        }
        if self.points < 2 {
            out.push(format!("geometry.points: need at least 2 points, got {}", self.points));
        }
        if self.temperatures.is_empty() {
            out.push("geometry.temperatures_K: at least one temperature is required".into());
        }
        for (i, t) in self.temperatures.iter().enumerate() {
            if !(*t > 0.0 && t.is_finite()) {
                out.push(format!("geometry.temperatures_K[{i}]: temperature must be positive, got {t}"));
            }
        }
        for (key, m) in [("materials.plate1", &self.material_1), ("materials.plate2", &self.material_2)] {
            out.extend(m.problems().into_iter().map(|p| format!("{key}: {p}")));
        }
        out.extend(self.settings.problems().into_iter().map(|p| format!("quadrature: {p}")));
        out
    }

    pub fn validate(&self) -> Result<(), ConfigErrors> {
        let p = self.problems();
        if p.is_empty() {
            Ok(())
        } else {
            Err(ConfigErrors(p))
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    geometry: Option<RawGeometry>,
    materials: Option<RawMaterials>,
    quadrature: Option<RawQuadrature>,
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    a_min_um: Option<f64>,
    a_max_um: Option<f64>,
    points: Option<usize>,
    #[serde(rename = "temperatures_K")]
    temperatures: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterials {
    plate1: Option<toml::Value>,
    plate2: Option<toml::Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuadrature {
    rel_tol: Option<f64>,
    u_min: Option<f64>,
    u_max: Option<f64>,
    y_max_ew: Option<f64>,
    n_reflect_max: Option<usize>,
    bose_series_threshold: Option<f64>,
    tail_check: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    normalize: Option<Normalization>,
    asymptotics: Option<bool>,
    oracle: Option<bool>,
    path: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "model", deny_unknown_fields)]
enum MaterialTable {
    #[serde(rename = "drude")]
    Drude {
        #[serde(rename = "omega_p_eV")]
        omega_p: f64,
        #[serde(rename = "omega_tau_eV")]
        omega_tau: f64,
        label: Option<String>,
    },
    #[serde(rename = "eps")]
    Eps { eps: f64, label: Option<String> },
    #[serde(rename = "ideal")]
    Ideal { label: Option<String> },
    #[serde(rename = "lorentz")]
    Lorentz {
        eps_inf: Option<f64>,
        oscillators: Option<Vec<Oscillator>>,
        /// Oscillator file, relative to the config file.
        file: Option<PathBuf>,
        label: Option<String>,
    },
}

/// Contents of a Lorentz oscillator file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LorentzFile {
    label: Option<String>,
    eps_inf: f64,
    oscillators: Vec<Oscillator>,
}

/// Reads a Lorentz oscillator file (`eps_inf`, `[[oscillators]]` with
/// `strength`, `omega0_eV`, `gamma_eV`, optional `label`).
pub fn load_lorentz_file(path: &Path) -> Result<Material, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let f: LorentzFile = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let label = f.label.unwrap_or_else(|| {
        path.file_stem().map_or("lorentz".into(), |s| s.to_string_lossy().into_owned())
    });
    Ok(Material::lorentz(f.eps_inf, f.oscillators).with_label(label))
}

fn number(s: &str, what: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("{what}: `{s}` is not a number"))
}

/// Inline material: `drude:<ω_p eV>,<ω_τ eV>`, `eps:<ε>`, `ideal`,
/// `gold`, or `lorentz:<file>` (relative to `base`).
pub fn parse_material(text: &str, base: &Path) -> Result<Material, String> {
    let (kind, args) = match text.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a)),
        None => (text.trim(), None),
    };
    match (kind, args) {
        ("ideal", None) => Ok(Material::ideal_metal()),
        ("gold" | "Au", None) => Ok(Material::gold()),
        ("eps", Some(a)) => Ok(Material::constant(number(a, "eps")?)),
        ("drude", Some(a)) => {
            let parts: Vec<&str> = a.split(',').collect();
            if parts.len() != 2 {
                return Err(format!("drude needs `drude:<omega_p>,<omega_tau>`, got `{text}`"));
            }
            let m = Material::drude(number(parts[0], "omega_p")?, number(parts[1], "omega_tau")?);
            Ok(m.with_label(format!("drude({},{})", parts[0].trim(), parts[1].trim())))
        }
        ("lorentz", Some(f)) => load_lorentz_file(&base.join(f.trim())),
        _ => Err(format!("unrecognised material `{text}` (expected drude:<wp>,<wt> | eps:<e> | ideal | lorentz:<file>)")),
    }
}

fn material_from_value(value: toml::Value, key: &str, base: &Path) -> Result<Material, String> {
    if let toml::Value::String(s) = &value {
        return parse_material(s, base).map_err(|e| format!("{key}: {e}"));
    }
    let table: MaterialTable = value.try_into().map_err(|e: toml::de::Error| format!("{key}: {}", e.message()))?;
    let m = match table {
        MaterialTable::Drude { omega_p, omega_tau, label } => {
            Material::drude(omega_p, omega_tau).with_label(label.unwrap_or_else(|| "drude".into()))
        }
        MaterialTable::Eps { eps, label } => {
            let m = Material::constant(eps);
            match label {
                Some(l) => m.with_label(l),
                None => m,
            }
        }
        MaterialTable::Ideal { label } => Material::ideal_metal().with_label(label.unwrap_or_else(|| "ideal".into())),
        MaterialTable::Lorentz { eps_inf, oscillators, file, label } => {
            let m = match (file, eps_inf, oscillators) {
                (Some(f), None, None) => load_lorentz_file(&base.join(f)).map_err(|e| format!("{key}.file: {e}"))?,
                (None, Some(e), Some(o)) => Material::lorentz(e, o),
                _ => return Err(format!("{key}: a lorentz material needs either `file` or both `eps_inf` and `oscillators`")),
            };
            match label {
                Some(l) => m.with_label(l),
                None => m,
            }
        }
    };
    Ok(m)
}

/// Parses a configuration. Relative file references are resolved against
/// `base` (normally the directory holding the config file).
pub fn parse_config_in(text: &str, base: &Path) -> Result<SweepSpec, ConfigErrors> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigErrors(vec![e.to_string().trim_end().to_string()]))?;
    let mut spec = SweepSpec::default();
    let mut errors = Vec::new();
    let g = raw.geometry.unwrap_or_default();
    spec.a_min = g.a_min_um.unwrap_or(spec.a_min);
    spec.a_max = g.a_max_um.unwrap_or(spec.a_max);
    spec.points = g.points.unwrap_or(spec.points);
    spec.temperatures = g.temperatures.unwrap_or(spec.temperatures);

    let m = raw.materials.unwrap_or_default();
    for (slot, value, key) in [
        (&mut spec.material_1, m.plate1, "materials.plate1"),
        (&mut spec.material_2, m.plate2, "materials.plate2"),
    ] {
        if let Some(v) = value {
            match material_from_value(v, key, base) {
                Ok(mat) => *slot = mat,
                Err(e) => errors.push(e),
            }
        }
    }

    let q = raw.quadrature.unwrap_or_default();
    let s = &mut spec.settings;
    s.rel_tol = q.rel_tol.unwrap_or(s.rel_tol);
    s.u_min = q.u_min.unwrap_or(s.u_min);
    s.u_max = q.u_max.unwrap_or(s.u_max);
    s.y_max_ew = q.y_max_ew.unwrap_or(s.y_max_ew);
    s.n_reflect_max = q.n_reflect_max.unwrap_or(s.n_reflect_max);
    s.bose_series_threshold = q.bose_series_threshold.unwrap_or(s.bose_series_threshold);
    s.tail_check = q.tail_check.unwrap_or(s.tail_check);

    let o = raw.output.unwrap_or_default();
    spec.normalization = o.normalize.unwrap_or(spec.normalization);
    spec.include_asymptotics = o.asymptotics.unwrap_or(spec.include_asymptotics);
    spec.include_oracle = o.oracle.unwrap_or(spec.include_oracle);
    spec.output_path = o.path.or(spec.output_path);

    if errors.is_empty() {
        errors = spec.problems();
    } else {
        errors.extend(spec.problems().into_iter().filter(|p| !p.starts_with("materials.")));
    }
    if errors.is_empty() {
        Ok(spec)
    } else {
        Err(ConfigErrors(errors))
    }
}

/// [`parse_config_in`] relative to the current directory.
pub fn parse_config(text: &str) -> Result<SweepSpec, ConfigErrors> {
    parse_config_in(text, Path::new("."))
}
