//! Real-frequency total against the imaginary-frequency (Matsubara) sum.
//!
//! The two are independent routes to the same equilibrium pressure; the
//! spectral total is the Matsubara sum minus its zero-temperature part.

use thermal_casimir::materials::Material;
use thermal_casimir::matsubara::{matsubara_total, thermal_force_oracle, zero_point_force, MatsubaraSettings};
use thermal_casimir::spectral::{force_components, QuadratureSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (gold, eps) = (Material::gold(), Material::constant(100.0));
    let ms = MatsubaraSettings::default();
    let qs = QuadratureSettings::default();

    println!("{:>14} {:>6} {:>5} {:>13} {:>13} {:>10}", "pair", "a_um", "T_K", "spectral_Pa", "matsubara_Pa", "diff/norm");
    for (m1, m2, a, t) in [(&gold, &gold, 0.3, 300.0), (&gold, &gold, 2.0, 100.0), (&gold, &eps, 1.0, 300.0), (&gold, &gold, 10.0, 300.0)] {
        let c = force_components(m1, m2, a, t, &qs)?;
        let o = thermal_force_oracle(m1, m2, a, t, &ms)?;
        println!(
            "{:>14} {a:>6} {t:>5} {:>13.6e} {:>13.6e} {:>10.1e}",
            format!("{}/{}", m1.label, m2.label),
            c.total(),
            o.value,
            (c.total() - o.value) / c.force_norm
        );
    }

    let ideal = Material::ideal_metal();
    let a = 1.0;
    let total = matsubara_total(&ideal, &ideal, a, 300.0, &ms)?;
    let zero = zero_point_force(&ideal, &ideal, a, &ms)?;
    println!("\nideal metals at 1 um, 300 K: full {:.6e} Pa = zero point {:.6e} Pa + thermal {:.3e} Pa", total.value, zero.value, total.value - zero.value);
    Ok(())
}
