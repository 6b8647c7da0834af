//! Comparison with the Zhou-Spruch forms (atom embedded in a medium, rather
//! than an atom of the medium). For a perfectly conducting mirror in an
//! empty cavity the ZS far force is the Casimir-Polder 3ħcα₀/2πz⁵, while
//! the medium-assisted route gives one third of it; at small distances ZS
//! yields the van der Waals 1/z⁴ against the Coulomb-type 1/z².
//!
//! ```bash
//! cargo run --example zs_compare
//! ```

use casimir_lorentz::constants::{HBAR, SPEED_OF_LIGHT};
use casimir_lorentz::forces::{
    atom_force_full, atom_force_nonretarded, zs_atom_force, AtomForceRegime,
};
use casimir_lorentz::materials::{AtomPolarizability, DispersionSpec, LorentzOscillator, Material};
use casimir_lorentz::optics::MirrorSpec;
use casimir_lorentz::quadrature::QuadratureSettings;

fn main() {
    let settings = QuadratureSettings::default().with_rel_tol(1e-6);
    let alpha0 = 1e-30;
    let atom = AtomPolarizability::electric(alpha0, 1e16);
    let vacuum = Material::vacuum();
    let conductor = MirrorSpec::IdealConductive;

    println!("ideal conductive mirror, empty cavity, electric atom");
    println!();
    println!("far regime (z = 1 um):");
    let z = 1e-6;
    let this_far = casimir_lorentz::forces::atom_force_far(z, &conductor, &vacuum, &atom)
        .expect("static values");
    let zs_far = zs_atom_force(
        z,
        &conductor,
        &vacuum,
        &atom,
        &settings,
        AtomForceRegime::Far,
    )
    .expect("valid");
    let casimir_polder =
        3.0 * HBAR * SPEED_OF_LIGHT * alpha0 / (2.0 * std::f64::consts::PI * z.powi(5));
    println!(
        "  this work: {:.6e} N  (hbar c alpha0/2 pi z^5 = {:.6e})",
        this_far.value,
        casimir_polder / 3.0
    );
    println!(
        "  ZS:        {:.6e} N  (Casimir-Polder 3 hbar c alpha0/2 pi z^5 = {casimir_polder:.6e})",
        zs_far.value
    );
    println!(
        "  ratio this/ZS = {:.6} (screening: one third)",
        this_far.value / zs_far.value
    );
    println!();

    println!("full routes vs distance (ratio -> 1/3 at large z):");
    println!(
        "{:>10} {:>14} {:>14} {:>9}",
        "z (nm)", "this (N)", "ZS (N)", "ratio"
    );
    for i in 0..6 {
        let z = 100e-9 * 10f64.powf(i as f64 / 2.5); // 0.1 um .. 10 um
        let this = atom_force_full(z, &conductor, &vacuum, &atom, &settings).expect("valid");
        let zs = zs_atom_force(
            z,
            &conductor,
            &vacuum,
            &atom,
            &settings,
            AtomForceRegime::Full,
        )
        .expect("valid");
        println!(
            "{:>10.0} {:>14.4e} {:>14.4e} {:>9.5}",
            z * 1e9,
            this.value,
            zs.value,
            this.value / zs.value
        );
    }
    println!();

    // Near regime needs a transparent (dispersive) mirror for this work's
    // nonretarded integral to converge.
    let lorentz_mirror = MirrorSpec::half_space(Material::new(
        DispersionSpec::LorentzSum(vec![LorentzOscillator::undamped(1.5, 9e15)]),
        DispersionSpec::vacuum(),
    ));
    println!("near regime, Lorentz mirror: scaling exponents over 1..10 nm");
    let scaling = |f: &dyn Fn(f64) -> f64| {
        let (z1, z2) = (1e-9, 10e-9);
        (f(z2) / f(z1)).ln() / (z2 / z1).ln()
    };
    let this_slope = scaling(&|z| {
        atom_force_nonretarded(z, &lorentz_mirror, &vacuum, &atom, &settings)
            .expect("valid")
            .value
    });
    let zs_slope = scaling(&|z| {
        zs_atom_force(
            z,
            &lorentz_mirror,
            &vacuum,
            &atom,
            &settings,
            AtomForceRegime::Nonretarded,
        )
        .expect("valid")
        .value
    });
    println!("  this work: slope {this_slope:.3} (Coulomb-type 1/z^2)");
    println!("  ZS:        slope {zs_slope:.3} (van der Waals 1/z^4)");
}
