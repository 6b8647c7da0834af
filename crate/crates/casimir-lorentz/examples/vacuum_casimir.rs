//! The classic Casimir geometry as a sanity check: an ideally conducting
//! slab facing an ideally conducting mirror across vacuum. The numerically
//! integrated force must reproduce the closed form π²ħc/240d⁴, and the
//! medium-assisted component vanishes identically in vacuum.
//!
//! ```bash
//! cargo run --example vacuum_casimir
//! ```

use casimir_lorentz::forces::{force_split, CavityConfig};
use casimir_lorentz::ideal::{ideal_total, IdealConfigTag};
use casimir_lorentz::materials::Material;
use casimir_lorentz::optics::{MirrorSpec, SlabSpec};
use casimir_lorentz::quadrature::QuadratureSettings;

fn main() {
    let settings = QuadratureSettings::default().with_rel_tol(1e-8);
    let exact_coefficient = std::f64::consts::PI.powi(2) / 240.0;

    println!("ideal conductive slab | vacuum | ideal conductive mirror (semi-infinite)");
    println!("exact coefficient: f d^4/(hbar c) = pi^2/240 = {exact_coefficient:.12}");
    println!();
    println!(
        "{:>10} {:>16} {:>16} {:>12} {:>10}",
        "d (um)", "F (Pa)", "coefficient", "rel. dev.", "evals"
    );

    for d in [0.1e-6, 0.5e-6, 1e-6, 5e-6] {
        let config = CavityConfig::semi_infinite(
            Material::vacuum(),
            SlabSpec::IdealConductive,
            MirrorSpec::IdealConductive,
            d,
        );
        let force = force_split(&config, &settings).expect("valid configuration");
        assert_eq!(
            force.f2(),
            0.0,
            "vacuum kills the medium-assisted part exactly"
        );

        let coefficient = force.coefficient(force.total());
        let deviation = (coefficient - exact_coefficient).abs() / exact_coefficient;
        let closed_form = ideal_total(d, IdealConfigTag::CC, 1.0, 1.0);
        assert!((force.total() - closed_form).abs() <= 1e-6 * closed_form);

        println!(
            "{:>10.2} {:>16.6e} {:>16.12} {:>12.2e} {:>10}",
            d * 1e6,
            force.total(),
            coefficient,
            deviation,
            force.evaluations()
        );
    }

    println!();
    println!("f2 = 0 exactly at every distance (n^2 - 1 = 0 in vacuum).");
}
