//! Forces on the cavity medium itself. With an index-matched slab (same
//! material as the cavity medium) the screened component vanishes and the
//! whole force is the medium-assisted part — the force on a layer of the
//! medium. That layer force equals the z-integral of the force density
//! across the layer, and for a dilute medium the density is the atomic
//! number density times the atom-mirror force.
//!
//! ```bash
//! cargo run --example medium_force
//! ```

use casimir_lorentz::forces::{
    atom_force_full, force_split, medium_force_density, medium_layer_force, CavityConfig, Side,
};
use casimir_lorentz::materials::{AtomPolarizability, Material};
use casimir_lorentz::optics::{MirrorSpec, SlabSpec};
use casimir_lorentz::quadrature::QuadratureSettings;

fn main() {
    let settings = QuadratureSettings::default().with_rel_tol(1e-6);

    // A dilute medium built from polarizable atoms: 4 pi N alpha0 = 1e-3.
    let atom = AtomPolarizability::electric(1.5e-30, 1.1e16);
    let number_density = 1e-3 / (4.0 * std::f64::consts::PI * atom.static_total());
    let medium = Material::dilute(number_density, &atom);
    let mirror = MirrorSpec::half_space(Material::constant(4.0, 1.0));

    let layer_thickness = 100e-9;
    let config = CavityConfig::semi_infinite(
        medium.clone(),
        SlabSpec::Real {
            material: medium.clone(),
            thickness: layer_thickness,
        },
        mirror.clone(),
        300e-9,
    );

    println!("index-matched layer (100 nm of the medium itself), dielectric mirror at 300 nm");
    println!("number density N = {number_density:.4e} 1/m^3 (4 pi N alpha0 = 1e-3)");
    println!();

    // Force density profile toward the mirror, against N * f_at.
    println!(
        "{:>10} {:>16} {:>16} {:>10}",
        "z (nm)", "f(z) (N/m^3)", "N*f_at (N/m^3)", "ratio"
    );
    for i in 0..6 {
        let z = 50e-9 * 10f64.powf(i as f64 / 5.0); // 50 nm .. 500 nm
        let density =
            medium_force_density(z, Side::Mirror2, &config, &settings).expect("index-matched");
        let atom_route =
            atom_force_full(z, &mirror, &medium, &atom, &settings).expect("valid inputs");
        let dilute = number_density * atom_route.value;
        println!(
            "{:>10.1} {:>16.6e} {:>16.6e} {:>10.6}",
            z * 1e9,
            density.value,
            dilute,
            density.value / dilute
        );
    }
    println!("(positive density: the medium is pulled toward the mirror)");
    println!();

    // Layer force: two routes.
    let layer = medium_layer_force(&config, &settings).expect("index-matched");
    let split = force_split(&config, &settings).expect("valid configuration");
    assert_eq!(
        split.f1(),
        0.0,
        "index matching kills the screened part exactly"
    );
    println!("layer force, density route : {:.8e} Pa", layer.value);
    println!("layer force, f2 of the split: {:.8e} Pa", split.f2());
    println!(
        "difference {:.2e} within combined error {:.2e}",
        (layer.value - split.f2()).abs(),
        layer.error_estimate + split.total_error()
    );
    println!(
        "f1 = {} exactly (r = 0 for an index-matched slab)",
        split.f1()
    );
}
