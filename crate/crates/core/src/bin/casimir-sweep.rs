//! Command-line front end for distance/temperature sweeps.
//!
//! Exit codes: 0 success, 2 configuration error, 3 integration failure,
//! 4 I/O failure.

use clap::Parser;
use thermal_casimir::sweep::{emit_csv, parse_config_in, parse_material, run_sweep, Normalization, SweepSpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "casimir-sweep", about = "Thermal Casimir pressure between two plates, split by wave type and polarization")]
struct Args {
    /// TOML configuration; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Smallest separation in µm.
    #[arg(long)]
    a_min: Option<f64>,
    /// Largest separation in µm.
    #[arg(long)]
    a_max: Option<f64>,
    /// Number of log-spaced separations.
    #[arg(long)]
    points: Option<usize>,
    /// Temperature in K; repeat for several.
    #[arg(long = "T", value_name = "KELVIN")]
    temperatures: Vec<f64>,
    /// drude:<ω_p>,<ω_τ> | eps:<ε> | ideal | gold | lorentz:<file>
    #[arg(long)]
    material1: Option<String>,
    #[arg(long)]
    material2: Option<String>,
    /// pascal | force_norm | ratio_T0
    #[arg(long)]
    normalize: Option<Normalization>,
    /// Add the limiting-formula columns.
    #[arg(long)]
    asymptotics: bool,
    /// Add the Matsubara-sum column.
    #[arg(long)]
    oracle: bool,
    /// Output file; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_spec(args: Args) -> Result<SweepSpec, Vec<String>> {
    let mut spec = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| vec![format!("{}: {e}", path.display())])?;
            let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
            let spec = parse_config_in(&text, &base)
                .map_err(|e| e.0.into_iter().map(|m| format!("{}: {m}", path.display())).collect::<Vec<_>>())?;
            spec
        }
        None => SweepSpec::default(),
    };
    spec.a_min = args.a_min.unwrap_or(spec.a_min);
    spec.a_max = args.a_max.unwrap_or(spec.a_max);
    spec.points = args.points.unwrap_or(spec.points);
    if !args.temperatures.is_empty() {
        spec.temperatures = args.temperatures;
    }
    let mut errors = Vec::new();
    // Flag materials are relative to the working directory, not the config.
    for (flag, value, slot) in [
        ("--material1", args.material1, &mut spec.material_1),
        ("--material2", args.material2, &mut spec.material_2),
    ] {
        if let Some(text) = value {
            match parse_material(&text, Path::new(".")) {
                Ok(m) => *slot = m,
                Err(e) => errors.push(format!("{flag}: {e}")),
            }
        }
    }
    spec.normalization = args.normalize.unwrap_or(spec.normalization);
    spec.include_asymptotics |= args.asymptotics;
    spec.include_oracle |= args.oracle;
    if args.out.is_some() {
        spec.output_path = args.out;
    }
    if errors.is_empty() {
        errors = spec.problems();
    }
    if errors.is_empty() {
        Ok(spec)
    } else {
        Err(errors)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let spec = match build_spec(args) {
        Ok(s) => s,
        Err(errors) => {
            for e in errors {
                eprintln!("config error: {e}");
            }
            return ExitCode::from(2);
        }
    };
    let output = match run_sweep(&spec) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &spec.output_path {
        Some(path) => emit_csv(&spec, &output.rows, path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(output.to_csv().as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("I/O error: {e}");
        return ExitCode::from(4);
    }
    let mut failed = false;
    for (row, msg) in output.failures() {
        eprintln!("a = {} µm, T = {} K: {msg}", row.scales.a_um, row.scales.t_kelvin);
        failed = true;
    }
    if failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
