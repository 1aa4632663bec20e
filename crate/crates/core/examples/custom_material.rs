//! Building materials: Drude, constant, Lorentz oscillators (inline or
//! from a file) and the inline shorthand used by the CLI.

use std::path::Path;
use thermal_casimir::materials::{Material, Oscillator};
use thermal_casimir::sweep::{load_lorentz_file, parse_material};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let materials = vec![
        Material::gold(),
        parse_material("drude:7.5,0.06", Path::new("."))?,
        parse_material("eps:11.7", Path::new("."))?,
        Material::lorentz(2.0, vec![Oscillator { strength: 8.0, omega0: 0.05, gamma: 0.002 }]).with_label("one-mode"),
        load_lorentz_file(&data.join("lorentz_high_eps_320.toml"))?,
    ];

    for m in &materials {
        m.validate()?;
        println!("{} (static {:?})", m.label, m.static_permittivity());
        for w in [0.005, 0.02, 0.1, 1.0] {
            let re = m.permittivity_real_axis(w)?;
            let im = m.permittivity_imag_axis(w)?;
            println!("  {w:>6} eV: eps(w) = {re:>22.4}   eps(i w) = {im:>12.4}");
        }
    }

    let bad = Material::drude(9.0, 0.0);
    println!("\n{} rejected: {}", bad.label, bad.validate().unwrap_err());
    Ok(())
}
