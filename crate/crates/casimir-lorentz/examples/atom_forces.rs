//! Atom-mirror force across its regimes. At small distances the force is of
//! the Coulomb type (∝ 1/z², not the van der Waals 1/z⁴); at large
//! distances it is a screened Casimir-Polder force (∝ 1/z⁵, one third of
//! the Casimir-Polder value for a perfect conductor). Near a dominantly
//! permeable mirror the sign flips — regardless of whether the atom's
//! polarizability is electric or magnetic.
//!
//! ```bash
//! cargo run --example atom_forces
//! ```

use casimir_lorentz::constants::SPEED_OF_LIGHT;
use casimir_lorentz::forces::{
    atom_force_far, atom_force_full, atom_force_nonretarded, transparency_frequency,
};
use casimir_lorentz::materials::{AtomPolarizability, DispersionSpec, LorentzOscillator, Material};
use casimir_lorentz::optics::MirrorSpec;
use casimir_lorentz::quadrature::QuadratureSettings;

fn main() {
    let settings = QuadratureSettings::default().with_rel_tol(1e-6);
    let atom = AtomPolarizability::electric(1e-30, 1.2e16);
    let vacuum = Material::vacuum();

    let oscillators = vec![LorentzOscillator::undamped(2.0, 9e15)];
    let dielectric = MirrorSpec::half_space(Material::new(
        DispersionSpec::LorentzSum(oscillators.clone()),
        DispersionSpec::vacuum(),
    ));
    let permeable = MirrorSpec::half_space(Material::new(
        DispersionSpec::vacuum(),
        DispersionSpec::LorentzSum(oscillators),
    ));

    let omega = transparency_frequency(&dielectric, &vacuum, &atom).expect("dispersive");
    println!(
        "Lorentz dielectric mirror, electric atom; c/Omega = {:.1} nm",
        SPEED_OF_LIGHT / omega * 1e9
    );
    println!();
    println!(
        "{:>10} {:>14} {:>14} {:>14} {:>11}",
        "z (nm)", "full (N)", "nonret. (N)", "far (N)", "full*z^2"
    );

    for i in 0..9 {
        let z = 1e-9 * 10f64.powf(i as f64 * 3.0 / 8.0); // 1 nm .. 1 um
        let full = atom_force_full(z, &dielectric, &vacuum, &atom, &settings).expect("valid");
        let nonret =
            atom_force_nonretarded(z, &dielectric, &vacuum, &atom, &settings).expect("valid");
        let far = atom_force_far(z, &dielectric, &vacuum, &atom).expect("static values");
        println!(
            "{:>10.1} {:>14.4e} {:>14.4e} {:>14.4e} {:>11.4e}",
            z * 1e9,
            full.value,
            nonret.value,
            far.value,
            full.value * z * z,
        );
    }
    println!();
    println!("small z: full -> nonretarded, and full*z^2 flattens (Coulomb-type 1/z^2).");
    println!("large z: full -> far (screened Casimir-Polder 1/z^5).");
    println!();

    println!("sign law at z = 100 nm (attraction > 0):");
    let z = 100e-9;
    for (label, atom) in [
        ("electric atom", AtomPolarizability::electric(1e-30, 1.2e16)),
        ("magnetic atom", AtomPolarizability::magnetic(1e-30, 1.2e16)),
    ] {
        let near_dielectric =
            atom_force_full(z, &dielectric, &vacuum, &atom, &settings).expect("valid");
        let near_permeable =
            atom_force_full(z, &permeable, &vacuum, &atom, &settings).expect("valid");
        println!(
            "  {label}: dielectric mirror {:+.3e} N, permeable mirror {:+.3e} N",
            near_dielectric.value, near_permeable.value
        );
    }
    println!("  the sign follows the mirror type, not the polarizability type.");
}
