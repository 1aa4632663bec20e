//! Metal facing a high-permittivity dielectric: the pressure changes sign
//! and has a minimum, which deepens and moves out as T drops.

use std::path::Path;
use thermal_casimir::materials::Material;
use thermal_casimir::sweep::{load_lorentz_file, run_sweep, Normalization, SweepSpec};

fn minimum(spec: &SweepSpec) -> Result<(f64, f64), Box<dyn std::error::Error>> {
    let out = run_sweep(spec)?;
    let mut best = (f64::NAN, f64::INFINITY);
    for row in &out.rows {
        let c = row.components.as_ref().map_err(|e| e.clone())?;
        let scale = match spec.normalization {
            Normalization::RatioT0 => row.scales.ratio_to_zero_temperature() / c.force_norm,
            Normalization::ForceNorm => 1.0 / c.force_norm,
            Normalization::Pascal => 1.0,
        };
        if c.total() * scale < best.1 {
            best = (row.scales.a_um, c.total() * scale);
        }
    }
    Ok(best)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        a_min: 0.05,
        a_max: 3.0,
        points: 20,
        material_1: Material::ideal_metal(),
        material_2: Material::constant(100.0),
        ..SweepSpec::default()
    };
    let (a, v) = minimum(&spec)?;
    println!("ideal metal / eps=100 at 300 K: minimum {v:.4} force_norm at a = {a:.2} um");

    let lorentz = load_lorentz_file(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/lorentz_high_eps_320.toml"))?;
    for (t, a_max) in [(300.0, 3.6), (200.0, 5.5), (100.0, 10.0)] {
        let spec = SweepSpec {
            a_min: 0.3,
            a_max,
            points: 16,
            temperatures: vec![t],
            material_1: Material::gold(),
            material_2: lorentz.clone(),
            normalization: Normalization::RatioT0,
            ..SweepSpec::default()
        };
        let (a, v) = minimum(&spec)?;
        println!("Au / {} at {t} K: minimum {v:.4} (relative to the T = 0 ideal-metal pressure) at a = {a:.2} um", lorentz.label);
    }
    Ok(())
}
