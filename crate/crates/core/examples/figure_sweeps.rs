//! Writes the three standard sweeps as CSV files into a directory:
//! gold pair, ideal metal / eps=100, and gold / Lorentz eps(0)=320 at
//! three temperatures.
//!
//! Usage: `cargo run --release --example figure_sweeps [out_dir] [points]`
//!
//! The long-distance ends take a few seconds per point.

use std::path::{Path, PathBuf};
use thermal_casimir::materials::Material;
use thermal_casimir::sweep::{emit_csv, load_lorentz_file, run_sweep, Normalization, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "figures".into()));
    let points: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(24);
    std::fs::create_dir_all(&dir)?;
    let lorentz = load_lorentz_file(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/lorentz_high_eps_320.toml"))?;

    let runs = [
        ("gold_pair.csv", SweepSpec { a_min: 0.2, a_max: 100.0, points, include_asymptotics: true, ..SweepSpec::default() }),
        (
            "ideal_eps100.csv",
            SweepSpec {
                a_min: 0.05,
                a_max: 500.0,
                points,
                material_1: Material::ideal_metal(),
                material_2: Material::constant(100.0),
                include_asymptotics: true,
                ..SweepSpec::default()
            },
        ),
        (
            "gold_lorentz.csv",
            SweepSpec {
                a_min: 0.3,
                a_max: 10.0,
                points,
                temperatures: vec![300.0, 200.0, 100.0],
                material_2: lorentz,
                normalization: Normalization::RatioT0,
                ..SweepSpec::default()
            },
        ),
    ];
    for (name, spec) in runs {
        let started = std::time::Instant::now();
        let out = run_sweep(&spec)?;
        let path = dir.join(name);
        emit_csv(&spec, &out.rows, &path)?;
        println!("{} ({} rows, {:.0} s)", path.display(), out.rows.len(), started.elapsed().as_secs_f64());
        for (row, msg) in out.failures() {
            eprintln!("  a = {} um, T = {} K failed: {msg}", row.scales.a_um, row.scales.t_kelvin);
        }
    }
    Ok(())
}
