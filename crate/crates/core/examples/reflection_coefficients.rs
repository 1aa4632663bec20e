//! Fresnel coefficients of a gold plate, in both regimes.
//!
//! Propagating waves (y ≤ ω/ω_c) stay inside the unit circle. Evanescent
//! p-waves do not: near the light line they can be far larger than 1.

use thermal_casimir::fresnel::{reflect, Polarization, Regime, SpectralPoint};
use thermal_casimir::materials::Material;
use thermal_casimir::quantities::ThermalScales;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gold = Material::gold();
    let (a, t) = (1.0, 300.0);
    let x_per_u = ThermalScales::new(a, t)?.gap_ratio();

    println!("gold, a = {a} um, T = {t} K");
    println!("{:>6} {:>8} {:>11} {:>24} {:>24}", "u", "y", "regime", "r_s", "r_p");
    for u in [0.1, 1.0, 5.0] {
        let x = u * x_per_u;
        for (regime, y) in [
            (Regime::Propagating, 0.0),
            (Regime::Propagating, 0.5 * x),
            (Regime::Propagating, x),
            (Regime::Evanescent, 1.01 * x),
            (Regime::Evanescent, 3.0 * x),
            (Regime::Evanescent, 20.0 * x),
        ] {
            let pt = SpectralPoint::new(u, y, regime, a, t)?;
            let rs = reflect(&gold, &pt, Polarization::S)?;
            let rp = reflect(&gold, &pt, Polarization::P)?;
            println!("{u:>6} {y:>8.4} {:>11} {:>24.6} {:>24.6}", format!("{regime:?}"), rs, rp);
        }
    }
    Ok(())
}
