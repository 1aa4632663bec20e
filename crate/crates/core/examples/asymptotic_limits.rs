//! Numerical components next to their limiting closed forms.

use thermal_casimir::asymptotics::{self, AsymptoticSet};
use thermal_casimir::materials::Material;
use thermal_casimir::spectral::{force_components, ForceComponents, QuadratureSettings};

fn compare(title: &str, c: &ForceComponents, set: &AsymptoticSet) {
    println!("{title}");
    let names = ["pw_s", "pw_p", "ew_s", "ew_p"];
    for ((name, v), lim) in names.iter().zip(c.normalized()).zip(set.components()) {
        let window = if lim.valid { "inside" } else { "outside" };
        println!("  {name}: {v:>11.4e}   limit {:>11.4e}   ({window} {})", lim.normalized, lim.validity.description);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = QuadratureSettings::default();
    let t = 300.0;
    let (gold, ideal, eps) = (Material::gold(), Material::ideal_metal(), Material::constant(100.0));

    let c = force_components(&gold, &gold, 1.0, t, &s)?;
    compare("Au/Au, a = 1 um (short distance)", &c, &asymptotics::metal_metal_small(1.0, t, Some(9.0))?);

    let c = force_components(&gold, &gold, 50.0, t, &s)?;
    compare("Au/Au, a = 50 um (long distance)", &c, &asymptotics::metal_metal_large(50.0, t)?);

    let c = force_components(&ideal, &eps, 0.05, t, &s)?;
    compare("ideal/eps=100, a = 0.05 um", &c, &asymptotics::metal_dielectric_small(100.0, 0.05, t)?);

    let c = force_components(&ideal, &eps, 500.0, t, &s)?;
    compare("ideal/eps=100, a = 500 um", &c, &asymptotics::metal_dielectric_large(100.0, 500.0, t)?);
    Ok(())
}
