//! The four contributions to the thermal pressure between gold plates.
//!
//! Usage: `cargo run --release --example force_components [T_K]`

use thermal_casimir::materials::Material;
use thermal_casimir::spectral::{force_components, QuadratureSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(300.0);
    let gold = Material::gold();
    let settings = QuadratureSettings::default();

    println!("Au/Au at {t} K, in units of force_norm = T zeta(3) / 8 pi a^3");
    println!("{:>7} {:>9} {:>9} {:>9} {:>9} {:>9} {:>10}", "a_um", "pw_s", "pw_p", "ew_s", "ew_p", "total", "total_Pa");
    for a in [0.2, 0.5, 1.0, 2.0, 5.0, 20.0, 50.0] {
        let c = force_components(&gold, &gold, a, t, &settings)?;
        let [pw_s, pw_p, ew_s, ew_p] = c.normalized();
        println!(
            "{a:>7} {pw_s:>9.4} {pw_p:>9.4} {ew_s:>9.4} {ew_p:>9.4} {:>9.4} {:>10.3e}",
            c.total() / c.force_norm,
            c.total()
        );
        for w in &c.warnings {
            println!("        note: {w}");
        }
    }
    Ok(())
}
