//! Property tests for the module invariants: passivity bounds on all
//! Fresnel coefficients, the change-of-variables identity, dispersion-model
//! monotonicity, and structural force identities.

use casimir_lorentz::constants::SPEED_OF_LIGHT;
use casimir_lorentz::forces::{force_split, g_difference, CavityConfig, CavityPoint};
use casimir_lorentz::materials::{DispersionSpec, LorentzOscillator, Material};
use casimir_lorentz::optics::{
    mirror_reflection, reflection_pform, rho_interface, slab_rt, InterfaceParams, Layer,
    MirrorSpec, Polarization, SlabSpec,
};
use casimir_lorentz::quadrature::QuadratureSettings;
use proptest::prelude::*;

fn dispersion_strategy() -> impl Strategy<Value = DispersionSpec> {
    prop_oneof![
        (1.0..6.0f64).prop_map(DispersionSpec::Constant),
        (0.05..3.0f64, 15.0..16.7f64, 0.0..0.05f64).prop_map(|(s, log_w, g)| {
            let resonance = 10f64.powf(log_w);
            DispersionSpec::LorentzSum(vec![LorentzOscillator {
                strength: s,
                resonance,
                damping: g * resonance,
            }])
        }),
        (15.5..16.5f64, 0.0..0.1f64).prop_map(|(log_wp, g)| {
            let plasma_frequency = 10f64.powf(log_wp);
            DispersionSpec::Drude {
                plasma_frequency,
                damping: g * plasma_frequency,
            }
        }),
    ]
}

fn material_strategy() -> impl Strategy<Value = Material> {
    (
        dispersion_strategy(),
        prop_oneof![Just(DispersionSpec::Constant(1.0)), dispersion_strategy()],
    )
        .prop_map(|(eps, mu)| Material::new(eps, mu))
}

fn mirror_strategy() -> impl Strategy<Value = MirrorSpec> {
    prop_oneof![
        Just(MirrorSpec::IdealConductive),
        Just(MirrorSpec::IdealPermeable),
        material_strategy().prop_map(MirrorSpec::half_space),
        (material_strategy(), material_strategy(), 10e-9..300e-9f64).prop_map(|(a, b, d)| {
            MirrorSpec::stack(vec![Layer::new(a, d), Layer::half_space(b)]).unwrap()
        }),
    ]
}

// Log-uniform (ξ, k) draws covering the force-integration region.
fn xi_strategy() -> impl Strategy<Value = f64> {
    (13.0..17.0f64).prop_map(|e| 10f64.powf(e))
}

fn k_strategy() -> impl Strategy<Value = f64> {
    (3.0..9.0f64).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn interface_coefficients_stay_inside_the_unit_disk(
        eps1 in 1.0..50.0f64, mu1 in 1.0..5.0f64, kappa1 in 1e3..1e9f64,
        eps2 in 1.0..50.0f64, mu2 in 1.0..5.0f64, kappa2 in 1e3..1e9f64,
    ) {
        let a = InterfaceParams { eps: eps1, mu: mu1, kappa: kappa1 };
        let b = InterfaceParams { eps: eps2, mu: mu2, kappa: kappa2 };
        for q in Polarization::BOTH {
            let rho = rho_interface(q, &a, &b);
            prop_assert!(rho.abs() < 1.0);
        }
    }

    #[test]
    fn slab_coefficients_are_passive(
        material in material_strategy(),
        cavity in material_strategy(),
        thickness in 1e-9..1e-6f64,
        xi in xi_strategy(),
        k in k_strategy(),
    ) {
        let spec = SlabSpec::Real { material, thickness };
        for q in Polarization::BOTH {
            let (r, t) = slab_rt(q, &spec, &cavity, xi, k).unwrap();
            prop_assert!(r.abs() <= 1.0, "|r| = {}", r.abs());
            prop_assert!((0.0..=1.0).contains(&t), "t = {t}");
            let rt = r * r - t * t;
            prop_assert!((-1.0..=1.0).contains(&rt), "r^2 - t^2 = {rt}");
        }
    }

    #[test]
    fn mirror_reflections_are_passive(
        mirror in mirror_strategy(),
        cavity in material_strategy(),
        xi in xi_strategy(),
        k in k_strategy(),
    ) {
        for q in Polarization::BOTH {
            let r = mirror_reflection(q, &mirror, &cavity, xi, k).unwrap();
            prop_assert!(r.abs() <= 1.0, "|r| = {}", r.abs());
        }
    }

    #[test]
    fn two_layer_stack_matches_slab_composition(
        film in material_strategy(),
        back in material_strategy(),
        cavity in material_strategy(),
        thickness in 5e-9..500e-9f64,
        xi in xi_strategy(),
        k in k_strategy(),
    ) {
        let stack = MirrorSpec::stack(vec![
            Layer::new(film.clone(), thickness),
            Layer::half_space(back.clone()),
        ])
        .unwrap();
        let slab = SlabSpec::Real { material: film, thickness };
        let eps_b = back.eval_eps(xi).unwrap();
        let mu_b = back.eval_mu(xi).unwrap();
        let eps_c = cavity.eval_eps(xi).unwrap();
        let mu_c = cavity.eval_mu(xi).unwrap();
        let w = xi / SPEED_OF_LIGHT;
        let cav_p = InterfaceParams {
            eps: eps_c,
            mu: mu_c,
            kappa: (eps_c * mu_c * w * w + k * k).sqrt(),
        };
        let back_p = InterfaceParams {
            eps: eps_b,
            mu: mu_b,
            kappa: (eps_b * mu_b * w * w + k * k).sqrt(),
        };
        for q in Polarization::BOTH {
            let direct = mirror_reflection(q, &stack, &cavity, xi, k).unwrap();
            let (r, t) = slab_rt(q, &slab, &cavity, xi, k).unwrap();
            let rho_b = rho_interface(q, &cav_p, &back_p);
            let composed = r + t * t * rho_b / (1.0 - r * rho_b);
            let scale = direct.abs().max(composed.abs()).max(1e-30);
            prop_assert!(
                (direct - composed).abs() / scale <= 1e-12,
                "direct {direct:e} vs composed {composed:e}"
            );
        }
    }

    #[test]
    fn pform_equals_kform_under_change_of_variables(
        mirror in mirror_strategy(),
        cavity in material_strategy(),
        xi in (14.0..16.0f64).prop_map(|e| 10f64.powf(e)),
        p in 1.0..4.0f64,
    ) {
        let n_sq = cavity.n_sq(xi).unwrap();
        let k = n_sq.sqrt() * (xi / SPEED_OF_LIGHT) * (p * p - 1.0).sqrt();
        for q in Polarization::BOTH {
            let a = reflection_pform(q, &mirror, &cavity, xi, p).unwrap();
            let b = mirror_reflection(q, &mirror, &cavity, xi, k).unwrap();
            // Relative where the coefficient is appreciable, absolute at the
            // unit coefficient scale otherwise.
            let scale = a.abs().max(b.abs()).max(1.0);
            prop_assert!((a - b).abs() / scale <= 1e-12, "pform {a:e} vs kform {b:e}");
        }
    }

    #[test]
    fn dispersion_models_are_monotone_and_at_least_one(
        spec in dispersion_strategy(),
        exponents in proptest::collection::vec(12.0..18.0f64, 2..20),
    ) {
        let mut xis: Vec<f64> = exponents.into_iter().map(|e| 10f64.powf(e)).collect();
        xis.sort_by(f64::total_cmp);
        let mut prev = f64::INFINITY;
        for xi in xis {
            let v = spec.eval(xi).unwrap();
            prop_assert!(v >= 1.0);
            prop_assert!(v <= prev * (1.0 + 1e-12));
            prev = v;
        }
    }

    #[test]
    fn g_difference_vanishes_for_symmetric_cavities(
        mirror in mirror_strategy(),
        medium in material_strategy(),
        slab_material in material_strategy(),
        d in 50e-9..2e-6f64,
        thickness in 10e-9..300e-9f64,
        xi in xi_strategy(),
        k in k_strategy(),
    ) {
        let config = CavityConfig {
            mirror1: mirror.clone(),
            mirror2: mirror,
            cavity_medium: medium,
            slab: SlabSpec::Real { material: slab_material, thickness },
            d1: d,
            d2: d,
        };
        for q in Polarization::BOTH {
            let pt = CavityPoint::evaluate(&config, q, xi, k).unwrap();
            prop_assert_eq!(g_difference(&pt).unwrap(), 0.0);
        }
    }
}

#[test]
fn index_matched_g_reduces_to_the_propagation_factor() {
    // With r = 0 and t = e^{-kappa d_s}, only the medium-assisted term
    // survives and (1 + r)^2 - t^2 = 1 - e^{-2 kappa d_s}.
    let medium = Material::constant(2.5, 1.2);
    let config = CavityConfig {
        mirror1: MirrorSpec::IdealConductive,
        mirror2: MirrorSpec::half_space(Material::constant(8.0, 1.0)),
        cavity_medium: medium.clone(),
        slab: SlabSpec::Real {
            material: medium,
            thickness: 0.2e-6,
        },
        d1: 0.5e-6,
        d2: 0.3e-6,
    };
    for q in Polarization::BOTH {
        let pt = CavityPoint::evaluate(&config, q, 8e14, 3e6).unwrap();
        assert_eq!(pt.slab.r, 0.0);
        let expected = 1.0 - (-2.0 * pt.kappa * 0.2e-6).exp();
        let got = pt.slab.one_plus_r_sq_minus_t_sq();
        assert!((got - expected).abs() <= 1e-14 * expected.abs());
    }
}

#[test]
fn semi_infinite_ideal_force_decays_monotonically() {
    // Positive and strictly decreasing over sampled decades.
    let settings = QuadratureSettings::default().with_rel_tol(1e-6);
    let mut previous = f64::INFINITY;
    for i in 0..9 {
        let d = 50e-9 * 10f64.powf(i as f64 / 4.0); // 50 nm .. 5 µm
        let config = CavityConfig::semi_infinite(
            Material::constant(2.0, 1.0),
            SlabSpec::IdealConductive,
            MirrorSpec::IdealConductive,
            d,
        );
        let f = force_split(&config, &settings).unwrap();
        assert!(f.total() > 0.0, "attractive at d = {d:e}");
        assert!(f.total() < previous, "decreasing at d = {d:e}");
        previous = f.total();
    }
}
