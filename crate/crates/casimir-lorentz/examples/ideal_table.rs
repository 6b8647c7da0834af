//! The four ideal conductive/permeable pairings in a static medium
//! (ε₀ = 2, μ₀ = 1): closed forms against the numerical integration route,
//! plus the ratios that characterize the family — pp/cc = (n₀²+2)/(2n₀²+1),
//! pc/cc = −7/8, and the f⁽²⁾/f⁽¹⁾ screening ratio that reaches 1/3 for
//! dense media.
//!
//! Tag letters read mirror first, slab second: "cp" = conductive mirror,
//! permeable slab.
//!
//! ```bash
//! cargo run --example ideal_table
//! ```

use casimir_lorentz::forces::{force_split, CavityConfig};
use casimir_lorentz::ideal::{ideal_f1, ideal_f2, ideal_total, IdealConfigTag, IdealKind};
use casimir_lorentz::materials::Material;
use casimir_lorentz::optics::{MirrorSpec, SlabSpec};
use casimir_lorentz::quadrature::QuadratureSettings;

fn reflector(kind: IdealKind) -> (SlabSpec, MirrorSpec) {
    match kind {
        IdealKind::Conductive => (SlabSpec::IdealConductive, MirrorSpec::IdealConductive),
        IdealKind::Permeable => (SlabSpec::IdealPermeable, MirrorSpec::IdealPermeable),
    }
}

fn main() {
    let (eps0, mu0, d) = (2.0, 1.0, 1e-6);
    let settings = QuadratureSettings::default().with_rel_tol(1e-7);

    println!(
        "ideal configurations at d = {} um, eps0 = {eps0}, mu0 = {mu0}",
        d * 1e6
    );
    println!();
    println!(
        "{:>4} {:>14} {:>14} {:>14} {:>12} {:>12}",
        "tag", "f1 (Pa)", "f2 (Pa)", "total (Pa)", "num/closed", "f2/f1"
    );

    let mut totals = std::collections::BTreeMap::new();
    for tag in IdealConfigTag::ALL {
        let f1 = ideal_f1(d, tag, eps0, mu0);
        let f2 = ideal_f2(d, tag, eps0, mu0);
        let total = ideal_total(d, tag, eps0, mu0);
        totals.insert(tag.to_string(), total);

        let (slab, _) = reflector(tag.slab);
        let (_, mirror) = reflector(tag.mirror);
        let config = CavityConfig::semi_infinite(Material::constant(eps0, mu0), slab, mirror, d);
        let numeric = force_split(&config, &settings).expect("valid configuration");

        println!(
            "{:>4} {:>14.6e} {:>14.6e} {:>14.6e} {:>12.8} {:>12.6}",
            tag.to_string(),
            f1,
            f2,
            total,
            numeric.total() / total,
            f2 / f1,
        );
    }

    let n0_sq = eps0 * mu0;
    println!();
    println!(
        "pp/cc = {:.6}  (closed form (n0^2+2)/(2n0^2+1) = {:.6})",
        totals["pp"] / totals["cc"],
        (n0_sq + 2.0) / (2.0 * n0_sq + 1.0)
    );
    println!(
        "pc/cc = {:.6}  (closed form -7/8 = {:.6})",
        totals["pc"] / totals["cc"],
        -7.0 / 8.0
    );
    println!(
        "cp/cc = {:.6}  (closed form -(7/8)(n0^2+2)/(2n0^2+1) = {:.6})",
        totals["cp"] / totals["cc"],
        -(7.0 / 8.0) * (n0_sq + 2.0) / (2.0 * n0_sq + 1.0)
    );

    println!();
    println!("screening ratio f2/f1 for the cc pairing vs medium density:");
    for n0_sq in [1.0, 2.0, 10.0, 100.0, 1e4] {
        let ratio = ideal_f2(d, IdealConfigTag::CC, n0_sq, 1.0)
            / ideal_f1(d, IdealConfigTag::CC, n0_sq, 1.0);
        println!("  n0^2 = {n0_sq:>8.0}: f2/f1 = {ratio:.6}");
    }
    println!("  (approaches 1/3: the assisted part is only three times smaller)");
}
