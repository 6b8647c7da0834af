//! Force integrands and integrated quantities: the total vacuum Lorentz
//! force on a slab in a planar cavity, its split into a medium-screened
//! component f⁽¹⁾ and a medium-assisted component f⁽²⁾, force densities on
//! the cavity medium, and atom-mirror forces in the full, nonretarded, and
//! far-field regimes (plus the Zhou-Spruch comparison forms).
//!
//! Sign conventions: per-area forces are positive toward mirror 2; atom and
//! medium forces are positive for attraction toward the mirror. Per-area
//! forces are in Pa, atom forces in N; dimensionless coefficients
//! C = f·d_ref⁴/(ħc) are available through [`ForceBreakdown`].
//!
//! A distance of `f64::INFINITY` removes that mirror exactly: every
//! e^{−2κd} term carrying it evaluates to zero, so the semi-infinite
//! geometry is an exact mode rather than a large-distance truncation.

use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::materials::{AtomPolarizability, Material};
use crate::optics::{
    exp_weighted_diff, kappa_unchecked, mirror_reflection, one_minus_exp_neg, one_minus_prod_exp,
    reflection_nonretarded, reflection_pform, MirrorSpec, Polarization, SlabCoeffs, SlabSpec,
};
use crate::quadrature::{
    integrate_double, integrate_tail_interval, IntegralResult, QuadratureSettings,
};

const PI: f64 = std::f64::consts::PI;

/// Threshold below which the multiple-reflection denominator is treated as
/// degenerate in the checked entry points.
const DENOMINATOR_GUARD: f64 = 1e-12;

/// A slab in a planar cavity: two mirrors, a cavity medium, and gap widths
/// d₁ (to mirror 1) and d₂ (to mirror 2). A gap of `f64::INFINITY` removes
/// that mirror exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    pub mirror1: MirrorSpec,
    pub mirror2: MirrorSpec,
    pub cavity_medium: Material,
    pub slab: SlabSpec,
    pub d1: f64,
    pub d2: f64,
}

impl CavityConfig {
    /// Semi-infinite geometry: mirror 1 removed (d₁ = ∞), mirror 2 at
    /// distance `d`.
    pub fn semi_infinite(
        cavity_medium: Material,
        slab: SlabSpec,
        mirror2: MirrorSpec,
        d: f64,
    ) -> Self {
        Self {
            mirror1: MirrorSpec::half_space(cavity_medium.clone()),
            mirror2,
            cavity_medium,
            slab,
            d1: f64::INFINITY,
            d2: d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.mirror1.validate()?;
        self.mirror2.validate()?;
        self.cavity_medium.validate()?;
        self.slab.validate()?;
        for (name, d) in [("d1", self.d1), ("d2", self.d2)] {
            if d.is_nan() || d <= 0.0 {
                return Err(Error::InvalidSpec(format!(
                    "{name} must be > 0 m (or infinite for a removed mirror), got {d}"
                )));
            }
        }
        Ok(())
    }

    /// Cavity length L = d₁ + d₂ + d_s, with d_s = 0 for ideal slabs.
    pub fn cavity_length(&self) -> f64 {
        self.d1 + self.d2 + self.slab.length_contribution()
    }

    /// Reference distance for dimensionless coefficients: min(d₁, d₂), which
    /// is d₂ in the semi-infinite geometry.
    pub fn d_ref(&self) -> f64 {
        self.d1.min(self.d2)
    }

    /// (mirror1, d1) ↔ (mirror2, d2); negates the total force.
    pub fn swap_mirrors(&self) -> Self {
        Self {
            mirror1: self.mirror2.clone(),
            mirror2: self.mirror1.clone(),
            cavity_medium: self.cavity_medium.clone(),
            slab: self.slab.clone(),
            d1: self.d2,
            d2: self.d1,
        }
    }

    /// Smallest finite gap, the decay scale for the quadrature maps.
    fn gap_scale(&self) -> f64 {
        let d = self.d1.min(self.d2);
        if d.is_finite() {
            d
        } else {
            1e-6 // no mirror left; integrands vanish identically
        }
    }

    fn is_index_matched(&self) -> Option<f64> {
        match &self.slab {
            SlabSpec::Real {
                material,
                thickness,
            } if *material == self.cavity_medium => Some(*thickness),
            _ => None,
        }
    }
}

/// All field coefficients of one polarization at one (ξ, k) point.
#[derive(Debug, Clone, Copy)]
pub struct CavityPoint {
    pub q: Polarization,
    pub xi: f64,
    pub k: f64,
    pub kappa: f64,
    pub eps: f64,
    pub mu: f64,
    pub n_sq: f64,
    pub slab: SlabCoeffs,
    /// Mirror reflections; exactly 0 for a removed mirror (infinite gap).
    pub r1: f64,
    pub r2: f64,
    pub d1: f64,
    pub d2: f64,
}

impl CavityPoint {
    pub fn evaluate(config: &CavityConfig, q: Polarization, xi: f64, k: f64) -> Result<Self> {
        let eps = config.cavity_medium.eval_eps(xi)?;
        let mu = config.cavity_medium.eval_mu(xi)?;
        let n_sq = eps * mu;
        let slab = SlabCoeffs::evaluate(q, &config.slab, &config.cavity_medium, xi, k)?;
        let r1 = if config.d1.is_finite() {
            mirror_reflection(q, &config.mirror1, &config.cavity_medium, xi, k)?
        } else {
            0.0
        };
        let r2 = if config.d2.is_finite() {
            mirror_reflection(q, &config.mirror2, &config.cavity_medium, xi, k)?
        } else {
            0.0
        };
        Ok(Self {
            q,
            xi,
            k,
            kappa: kappa_unchecked(n_sq, xi, k),
            eps,
            mu,
            n_sq,
            slab,
            r1,
            r2,
            d1: config.d1,
            d2: config.d2,
        })
    }

    /// r₂e^{−2κd₂} − r₁e^{−2κd₁}, the mirror-asymmetry factor of every force
    /// integrand, computed without cancellation even for sub-ulp gap
    /// asymmetries.
    pub fn mirror_difference(&self) -> f64 {
        exp_weighted_diff(
            self.r2,
            2.0 * self.kappa * self.d2,
            self.r1,
            2.0 * self.kappa * self.d1,
            2.0 * self.kappa * (self.d1 - self.d2),
        )
    }

    /// Multiple-reflection denominator
    /// N^q = 1 − r(r₁e^{−2κd₁} + r₂e^{−2κd₂}) + (r² − t²)r₁r₂e^{−2κ(d₁+d₂)},
    /// errors below the degeneracy guard.
    pub fn denominator(&self) -> Result<f64> {
        let n = self.denominator_stable();
        if n <= DENOMINATOR_GUARD {
            return Err(Error::DegenerateDenominator { value: n });
        }
        Ok(n)
    }

    /// Unguarded denominator for the integration path: provably positive for
    /// passive media, and legitimately of order κ·(d₁+d₂) near the κ → 0
    /// integration corner where the guarded form would refuse to divide.
    pub(crate) fn denominator_stable(&self) -> f64 {
        let x1 = 2.0 * self.kappa * self.d1;
        let x2 = 2.0 * self.kappa * self.d2;
        let s = &self.slab;
        if s.t == 0.0 {
            // Ideal slab: N = (1 − r·r₁e^{−x₁})(1 − r·r₂e^{−x₂}) exactly.
            one_minus_prod_exp(s.r * self.r1, x1) * one_minus_prod_exp(s.r * self.r2, x2)
        } else if s.r == 0.0 {
            // Transparent slab (t = e^{−κ_s d_s}): N = 1 − r₁r₂e^{−2κ(d₁+d₂)−2κ_s d_s}.
            one_minus_prod_exp(self.r1 * self.r2, x1 + x2 + 2.0 * s.optical_depth)
        } else {
            general_denominator(s.r, s.t, s.one_minus_t, self.r1, self.r2, x1, x2)
        }
    }
}

fn general_denominator(
    r: f64,
    t: f64,
    one_minus_t: f64,
    r1: f64,
    r2: f64,
    x1: f64,
    x2: f64,
) -> f64 {
    let alpha = r * r1 * (-x1).exp();
    let beta = r * r2 * (-x2).exp();
    let c = r1 * r2;
    let one_minus_t_sq = one_minus_t * (1.0 + t);
    // 1 − c·t²·e^{−x₁−x₂}, assembled from exact small pieces.
    let one_minus_ct2 = (1.0 - c) + c * one_minus_t_sq;
    let one_minus_big = one_minus_ct2 + c * (t * t) * one_minus_exp_neg(x1 + x2);
    one_minus_big - alpha - beta + alpha * beta
}

/// Standalone multiple-reflection denominator from raw coefficients; errors
/// if N ≤ 1e−12 (degenerate cavity — cannot occur for passive media).
pub fn denominator(r: f64, t: f64, r1: f64, r2: f64, kappa: f64, d1: f64, d2: f64) -> Result<f64> {
    let x1 = 2.0 * kappa * d1;
    let x2 = 2.0 * kappa * d2;
    let n = if t == 0.0 {
        one_minus_prod_exp(r * r1, x1) * one_minus_prod_exp(r * r2, x2)
    } else {
        general_denominator(r, t, 1.0 - t, r1, r2, x1, x2)
    };
    if n <= DENOMINATOR_GUARD {
        return Err(Error::DegenerateDenominator { value: n });
    }
    Ok(n)
}

/// The screened part of the g-difference:
/// −4κ²(δ_qs + δ_qp/n²)·r·(r₂e^{−2κd₂} − r₁e^{−2κd₁})/N.
fn g_screened(pt: &CavityPoint, denom: f64) -> f64 {
    let pol_weight = match pt.q {
        Polarization::TE => 1.0,
        Polarization::TM => 1.0 / pt.n_sq,
    };
    -4.0 * pt.kappa * pt.kappa * pol_weight * pt.slab.r * pt.mirror_difference() / denom
}

/// The medium-assisted part of the g-difference:
/// −(ξ²/c²)(n² − 1)[(1 + r)² − t²]Δ_q·(r₂e^{−2κd₂} − r₁e^{−2κd₁})/N.
fn g_assisted(pt: &CavityPoint, denom: f64) -> f64 {
    let w = pt.xi / SPEED_OF_LIGHT;
    -w * w
        * (pt.n_sq - 1.0)
        * pt.slab.one_plus_r_sq_minus_t_sq()
        * pt.q.delta()
        * pt.mirror_difference()
        / denom
}

/// g_{q2}(iξ,k;0) − g_{q1}(iξ,k;d₁): the bracketed difference in the total
/// force integrand, combining the screened and medium-assisted terms.
pub fn g_difference(point: &CavityPoint) -> Result<f64> {
    let denom = point.denominator()?;
    Ok(g_screened(point, denom) + g_assisted(point, denom))
}

/// One integrated force part with its quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForcePart {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl From<IntegralResult> for ForcePart {
    fn from(r: IntegralResult) -> Self {
        Self {
            value: r.value,
            error: r.error_estimate,
            evaluations: r.evaluations,
            converged: r.converged,
        }
    }
}

/// A force component resolved by polarization (q = s, p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizedComponent {
    pub s: ForcePart,
    pub p: ForcePart,
}

impl PolarizedComponent {
    pub fn value(&self) -> f64 {
        self.s.value + self.p.value
    }

    pub fn error(&self) -> f64 {
        self.s.error + self.p.error
    }

    pub fn evaluations(&self) -> u64 {
        self.s.evaluations + self.p.evaluations
    }

    pub fn converged(&self) -> bool {
        self.s.converged && self.p.converged
    }
}

/// Total per-area force (Pa) split into the screened component f⁽¹⁾ and the
/// medium-assisted component f⁽²⁾, each resolved by polarization. The total
/// is f1() + f2() by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceBreakdown {
    pub screened: PolarizedComponent,
    pub assisted: PolarizedComponent,
    /// Reference distance for dimensionless coefficients.
    pub d_ref: f64,
}

impl ForceBreakdown {
    pub fn f1(&self) -> f64 {
        self.screened.value()
    }

    pub fn f2(&self) -> f64 {
        self.assisted.value()
    }

    pub fn total(&self) -> f64 {
        self.f1() + self.f2()
    }

    pub fn total_error(&self) -> f64 {
        self.screened.error() + self.assisted.error()
    }

    pub fn evaluations(&self) -> u64 {
        self.screened.evaluations() + self.assisted.evaluations()
    }

    pub fn converged(&self) -> bool {
        self.screened.converged() && self.assisted.converged()
    }

    /// Dimensionless coefficient C = value·d_ref⁴/(ħc) for any per-area
    /// value from this breakdown (total, f1, f2, ...).
    pub fn coefficient(&self, value: f64) -> f64 {
        value * self.d_ref.powi(4) / (HBAR * SPEED_OF_LIGHT)
    }
}

fn part_settings(
    settings: &QuadratureSettings,
    gap: f64,
) -> (QuadratureSettings, QuadratureSettings) {
    // e^{−2κd} decays on ξ ~ c/2d and k ~ 1/2d.
    let outer = settings.with_scale(SPEED_OF_LIGHT / (2.0 * gap));
    let inner = settings.with_scale(1.0 / (2.0 * gap));
    (outer, inner)
}

fn integrate_part<G: Fn(f64, f64) -> f64>(
    kernel: G,
    prefactor: f64,
    settings: &QuadratureSettings,
    gap: f64,
) -> ForcePart {
    let (outer, inner) = part_settings(settings, gap);
    ForcePart::from(integrate_double(kernel, &outer, &inner).scaled(prefactor))
}

fn point_at(config: &CavityConfig, q: Polarization, xi: f64, k: f64) -> CavityPoint {
    CavityPoint::evaluate(config, q, xi, k).expect("material models are finite for xi > 0")
}

/// Force on the slab via the f⁽¹⁾/f⁽²⁾ split:
/// f⁽¹⁾ = (ħ/2π²)∫dξ∫dk·kκ Σ_q (μδ_qs + δ_qp/ε)·r·(r₂e^{−2κd₂} − r₁e^{−2κd₁})/N,
/// f⁽²⁾ = (ħ/8π²)∫dξ∫dk·(k/κ)(ξ²/c²)μ(n²−1) Σ_q [(1+r)²−t²]Δ_q·(...)/N.
/// Positive values point toward mirror 2.
pub fn force_split(config: &CavityConfig, settings: &QuadratureSettings) -> Result<ForceBreakdown> {
    config.validate()?;
    settings.validate()?;
    let gap = config.gap_scale();

    let screened_kernel = |q: Polarization| {
        move |xi: f64, k: f64| {
            let pt = point_at(config, q, xi, k);
            let weight = match q {
                Polarization::TE => pt.mu,
                Polarization::TM => 1.0 / pt.eps,
            };
            k * pt.kappa * weight * pt.slab.r * pt.mirror_difference() / pt.denominator_stable()
        }
    };
    let assisted_kernel = |q: Polarization| {
        move |xi: f64, k: f64| {
            let pt = point_at(config, q, xi, k);
            let w = xi / SPEED_OF_LIGHT;
            w * w
                * pt.mu
                * (pt.n_sq - 1.0)
                * (k / pt.kappa)
                * pt.slab.one_plus_r_sq_minus_t_sq()
                * q.delta()
                * pt.mirror_difference()
                / pt.denominator_stable()
        }
    };

    let pre1 = HBAR / (2.0 * PI * PI);
    let pre2 = HBAR / (8.0 * PI * PI);
    Ok(ForceBreakdown {
        screened: PolarizedComponent {
            s: integrate_part(screened_kernel(Polarization::TE), pre1, settings, gap),
            p: integrate_part(screened_kernel(Polarization::TM), pre1, settings, gap),
        },
        assisted: PolarizedComponent {
            s: integrate_part(assisted_kernel(Polarization::TE), pre2, settings, gap),
            p: integrate_part(assisted_kernel(Polarization::TM), pre2, settings, gap),
        },
        d_ref: config.d_ref(),
    })
}

/// Force on the slab via the direct route
/// f = −(ħ/8π²)∫dξ∫dk (k/κ)·μ·Σ_q [g_{q2} − g_{q1}],
/// integrating the g-difference kernel term by term. Cross-check path: the
/// total must equal `force_split`'s f1 + f2 within quadrature errors.
pub fn force_total_direct(
    config: &CavityConfig,
    settings: &QuadratureSettings,
) -> Result<ForceBreakdown> {
    config.validate()?;
    settings.validate()?;
    let gap = config.gap_scale();

    let kernel = |q: Polarization, assisted: bool| {
        move |xi: f64, k: f64| {
            let pt = point_at(config, q, xi, k);
            let denom = pt.denominator_stable();
            let g = if assisted {
                g_assisted(&pt, denom)
            } else {
                g_screened(&pt, denom)
            };
            (k / pt.kappa) * pt.mu * g
        }
    };

    let pre = -HBAR / (8.0 * PI * PI);
    Ok(ForceBreakdown {
        screened: PolarizedComponent {
            s: integrate_part(kernel(Polarization::TE, false), pre, settings, gap),
            p: integrate_part(kernel(Polarization::TM, false), pre, settings, gap),
        },
        assisted: PolarizedComponent {
            s: integrate_part(kernel(Polarization::TE, true), pre, settings, gap),
            p: integrate_part(kernel(Polarization::TM, true), pre, settings, gap),
        },
        d_ref: config.d_ref(),
    })
}

/// Which mirror a medium force density refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Mirror1,
    Mirror2,
}

fn require_index_matched(config: &CavityConfig) -> Result<f64> {
    config.is_index_matched().ok_or(Error::NotIndexMatched)
}

/// Force density f_i(z) (N/m³) on the cavity medium at distance z from the
/// chosen mirror:
/// f_i(z) = (ħ/4π²c²)∫dξ ξ²μ(n²−1)∫dk·k e^{−2κz} Σ_q Δ_q r^q_i/(1 − r^q₁r^q₂e^{−2κL}).
/// Positive means attraction toward that mirror. Requires an index-matched
/// slab; an absent far mirror drops the denominator term exactly.
pub fn medium_force_density(
    z: f64,
    side: Side,
    config: &CavityConfig,
    settings: &QuadratureSettings,
) -> Result<IntegralResult> {
    config.validate()?;
    settings.validate()?;
    let d_s = require_index_matched(config)?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!(
            "density position z must be finite and > 0, got {z}"
        )));
    }
    let length = config.d1 + config.d2 + d_s;

    let kernel = |xi: f64, k: f64| {
        let w = xi / SPEED_OF_LIGHT;
        let eps = config.cavity_medium.eval_eps(xi).expect("xi > 0");
        let mu = config.cavity_medium.eval_mu(xi).expect("xi > 0");
        let n_sq = eps * mu;
        let kap = kappa_unchecked(n_sq, xi, k);
        let mut pol_sum = 0.0;
        for q in Polarization::BOTH {
            let r1 = if config.d1.is_finite() {
                mirror_reflection(q, &config.mirror1, &config.cavity_medium, xi, k).expect("xi > 0")
            } else {
                0.0
            };
            let r2 = if config.d2.is_finite() {
                mirror_reflection(q, &config.mirror2, &config.cavity_medium, xi, k).expect("xi > 0")
            } else {
                0.0
            };
            let r_i = match side {
                Side::Mirror1 => r1,
                Side::Mirror2 => r2,
            };
            let denom = one_minus_prod_exp(r1 * r2, 2.0 * kap * length);
            pol_sum += q.delta() * r_i / denom;
        }
        w * w * mu * (n_sq - 1.0) * k * (-2.0 * kap * z).exp() * pol_sum
    };

    let (outer, inner) = part_settings(settings, z);
    Ok(integrate_double(kernel, &outer, &inner).scaled(HBAR / (4.0 * PI * PI)))
}

/// Force per unit area (Pa) on the index-matched medium layer occupying the
/// slab position, evaluated by integrating the force density analytically in
/// z across the layer on each side:
/// f = ∫_{d₂}^{d₂+d_s} f₂(z) dz − ∫_{d₁}^{d₁+d_s} f₁(z) dz.
/// Equals `force_split`'s f⁽²⁾ for the same configuration.
pub fn medium_layer_force(
    config: &CavityConfig,
    settings: &QuadratureSettings,
) -> Result<IntegralResult> {
    config.validate()?;
    settings.validate()?;
    let d_s = require_index_matched(config)?;
    let length = config.d1 + config.d2 + d_s;
    let gap = config.gap_scale();

    let kernel = |xi: f64, k: f64| {
        let w = xi / SPEED_OF_LIGHT;
        let eps = config.cavity_medium.eval_eps(xi).expect("xi > 0");
        let mu = config.cavity_medium.eval_mu(xi).expect("xi > 0");
        let n_sq = eps * mu;
        let kap = kappa_unchecked(n_sq, xi, k);
        // ∫_{d}^{d+d_s} e^{−2κz} dz = e^{−2κd}(1 − e^{−2κd_s})/2κ
        let layer_factor = one_minus_exp_neg(2.0 * kap * d_s) / (2.0 * kap);
        let mut pol_sum = 0.0;
        for q in Polarization::BOTH {
            let r1 = if config.d1.is_finite() {
                mirror_reflection(q, &config.mirror1, &config.cavity_medium, xi, k).expect("xi > 0")
            } else {
                0.0
            };
            let r2 = if config.d2.is_finite() {
                mirror_reflection(q, &config.mirror2, &config.cavity_medium, xi, k).expect("xi > 0")
            } else {
                0.0
            };
            let diff = exp_weighted_diff(
                r2,
                2.0 * kap * config.d2,
                r1,
                2.0 * kap * config.d1,
                2.0 * kap * (config.d1 - config.d2),
            );
            let denom = one_minus_prod_exp(r1 * r2, 2.0 * kap * length);
            pol_sum += q.delta() * diff / denom;
        }
        w * w * mu * (n_sq - 1.0) * k * layer_factor * pol_sum
    };

    let (outer, inner) = part_settings(settings, gap);
    Ok(integrate_double(kernel, &outer, &inner).scaled(HBAR / (4.0 * PI * PI)))
}

/// Asymptotic regime of an atom-mirror force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtomForceRegime {
    Full,
    Nonretarded,
    Far,
}

/// An atom-mirror force value (N); positive means attraction toward the
/// mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomForceResult {
    pub value: f64,
    pub regime: AtomForceRegime,
    pub error: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl AtomForceResult {
    fn from_integral(r: IntegralResult, regime: AtomForceRegime) -> Self {
        Self {
            value: r.value,
            regime,
            error: r.error_estimate,
            evaluations: r.evaluations,
            converged: r.converged,
        }
    }
}

fn validate_atom_inputs(
    z: f64,
    mirror: &MirrorSpec,
    cavity_medium: &Material,
    pol: &AtomPolarizability,
) -> Result<()> {
    mirror.validate()?;
    cavity_medium.validate()?;
    pol.validate()?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!(
            "atom-mirror distance must be finite and > 0, got {z}"
        )));
    }
    Ok(())
}

/// Full atom-mirror force at distance z in a semi-infinite geometry:
/// f_at(z) = (ħ/πc²)∫dξ ξ²μα ∫dk·k e^{−2κz}[r^p(iξ,k) − r^s(iξ,k)].
pub fn atom_force_full(
    z: f64,
    mirror: &MirrorSpec,
    cavity_medium: &Material,
    pol: &AtomPolarizability,
    settings: &QuadratureSettings,
) -> Result<AtomForceResult> {
    validate_atom_inputs(z, mirror, cavity_medium, pol)?;
    settings.validate()?;

    let kernel = |xi: f64, k: f64| {
        let w = xi / SPEED_OF_LIGHT;
        let mu = cavity_medium.eval_mu(xi).expect("xi > 0");
        let n_sq = cavity_medium.n_sq(xi).expect("xi > 0");
        let kap = kappa_unchecked(n_sq, xi, k);
        let rp = mirror_reflection(Polarization::TM, mirror, cavity_medium, xi, k).expect("xi > 0");
        let rs = mirror_reflection(Polarization::TE, mirror, cavity_medium, xi, k).expect("xi > 0");
        w * w * mu * pol.eval(xi) * k * (-2.0 * kap * z).exp() * (rp - rs)
    };

    let (outer, inner) = part_settings(settings, z);
    Ok(AtomForceResult::from_integral(
        integrate_double(kernel, &outer, &inner).scaled(HBAR / PI),
        AtomForceRegime::Full,
    ))
}

/// Dispersion scale for ξ-integrals whose convergence relies on material
/// transparency rather than retardation (nonretarded forms).
fn dispersion_scale(
    mirror: &MirrorSpec,
    cavity_medium: &Material,
    pol: &AtomPolarizability,
) -> f64 {
    transparency_frequency(mirror, cavity_medium, pol).unwrap_or(1e15)
}

/// Diagnostic transparency frequency Ω: the largest model resonance/plasma
/// frequency among the mirror stack, the cavity medium, and the atom. Used
/// only to pick asymptotic regimes (e.g. z ≫ c/Ω), never in the physics.
pub fn transparency_frequency(
    mirror: &MirrorSpec,
    cavity_medium: &Material,
    pol: &AtomPolarizability,
) -> Option<f64> {
    [
        mirror.largest_frequency_scale(),
        cavity_medium.largest_frequency_scale(),
        pol.largest_frequency_scale(),
    ]
    .into_iter()
    .flatten()
    .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w))))
}

/// Nonretarded atom-mirror force (κ → k in every medium, u = 2kz):
/// f_at(z) = (ħ/4πc²z²)∫dξ ξ²μα ∫du·u e^{−u}[r^p_nr − r^s_nr](iξ, u/2z).
/// For a single-medium mirror the reflections are u-independent and this
/// reduces to the closed 1/z² form. Diverges for ideal mirrors (no
/// transparency); the quadrature then reports `converged = false`.
pub fn atom_force_nonretarded(
    z: f64,
    mirror: &MirrorSpec,
    cavity_medium: &Material,
    pol: &AtomPolarizability,
    settings: &QuadratureSettings,
) -> Result<AtomForceResult> {
    validate_atom_inputs(z, mirror, cavity_medium, pol)?;
    settings.validate()?;

    let kernel = |xi: f64, u: f64| {
        let w = xi / SPEED_OF_LIGHT;
        let mu = cavity_medium.eval_mu(xi).expect("xi > 0");
        let k = u / (2.0 * z);
        let rp =
            reflection_nonretarded(Polarization::TM, mirror, cavity_medium, xi, k).expect("xi > 0");
        let rs =
            reflection_nonretarded(Polarization::TE, mirror, cavity_medium, xi, k).expect("xi > 0");
        w * w * mu * pol.eval(xi) * u * (-u).exp() * (rp - rs)
    };

    let outer = settings.with_scale(dispersion_scale(mirror, cavity_medium, pol));
    let inner = settings.with_scale(1.0);
    Ok(AtomForceResult::from_integral(
        integrate_double(kernel, &outer, &inner).scaled(HBAR / (4.0 * PI * z * z)),
        AtomForceRegime::Nonretarded,
    ))
}

fn far_prefactor(z: f64, cavity_medium: &Material, pol: &AtomPolarizability) -> Result<f64> {
    let statics = cavity_medium.static_values()?;
    Ok(3.0 * HBAR * SPEED_OF_LIGHT * pol.static_total()
        / (4.0 * PI * statics.n0 * statics.eps0 * z.powi(5)))
}

/// Large-distance (screened Casimir-Polder) atom force from the static
/// p-form reflections:
/// f_at(z) = (3ħcα₀/4πn₀ε₀z⁵)·∫₁^∞ dp/p⁴ [r^p(0,p) − r^s(0,p)].
/// Requires finite static values of the cavity medium and every mirror
/// material.
pub fn atom_force_far(
    z: f64,
    mirror: &MirrorSpec,
    cavity_medium: &Material,
    pol: &AtomPolarizability,
) -> Result<AtomForceResult> {
    validate_atom_inputs(z, mirror, cavity_medium, pol)?;
    mirror.static_evaluable()?;
    let prefactor = far_prefactor(z, cavity_medium, pol)?;

    let weight = |p: f64| {
        let rp = reflection_pform(Polarization::TM, mirror, cavity_medium, 0.0, p).expect("p >= 1");
        let rs = reflection_pform(Polarization::TE, mirror, cavity_medium, 0.0, p).expect("p >= 1");
        (rp - rs) / p.powi(4)
    };
    let integral = integrate_tail_interval(weight, 1.0, &QuadratureSettings::default());
    Ok(AtomForceResult::from_integral(
        integral.scaled(prefactor),
        AtomForceRegime::Far,
    ))
}

/// Zhou-Spruch comparison force (atom embedded in the medium rather than an
/// atom of the medium), obtained by the replacement
/// r^p → (2κ²c²/n²ξ² − 1)·r^p in the full integrand:
/// - `Full`: the full integral with the replaced TM weight;
/// - `Nonretarded`: the van der Waals form
///   (ħ/8πz⁴)∫dξ (α/ε)∫du u³e^{−u} r^p_nr(iξ, u/2z);
/// - `Far`: (3ħcα₀/4πn₀ε₀z⁵)·∫₁^∞ dp/p⁴ [(2p² − 1)r^p(0,p) − r^s(0,p)],
///   the Casimir-Polder result for a conductive mirror in an empty cavity.
pub fn zs_atom_force(
    z: f64,
    mirror: &MirrorSpec,
    cavity_medium: &Material,
    pol: &AtomPolarizability,
    settings: &QuadratureSettings,
    regime: AtomForceRegime,
) -> Result<AtomForceResult> {
    validate_atom_inputs(z, mirror, cavity_medium, pol)?;
    settings.validate()?;

    match regime {
        AtomForceRegime::Full => {
            let kernel = |xi: f64, k: f64| {
                let w = xi / SPEED_OF_LIGHT;
                let mu = cavity_medium.eval_mu(xi).expect("xi > 0");
                let n_sq = cavity_medium.n_sq(xi).expect("xi > 0");
                let kap = kappa_unchecked(n_sq, xi, k);
                let rp = mirror_reflection(Polarization::TM, mirror, cavity_medium, xi, k)
                    .expect("xi > 0");
                let rs = mirror_reflection(Polarization::TE, mirror, cavity_medium, xi, k)
                    .expect("xi > 0");
                // ξ²[(2κ²c²/n²ξ² − 1)r^p − r^s]/c² = (2κ²/n² − ξ²/c²)r^p − (ξ²/c²)r^s
                let zs_weight = 2.0 * kap * kap / n_sq - w * w;
                mu * pol.eval(xi) * k * (-2.0 * kap * z).exp() * (zs_weight * rp - w * w * rs)
            };
            let (outer, inner) = part_settings(settings, z);
            Ok(AtomForceResult::from_integral(
                integrate_double(kernel, &outer, &inner).scaled(HBAR / PI),
                AtomForceRegime::Full,
            ))
        }
        AtomForceRegime::Nonretarded => {
            let kernel = |xi: f64, u: f64| {
                let eps = cavity_medium.eval_eps(xi).expect("xi > 0");
                let k = u / (2.0 * z);
                let rp = reflection_nonretarded(Polarization::TM, mirror, cavity_medium, xi, k)
                    .expect("xi > 0");
                (pol.eval(xi) / eps) * u.powi(3) * (-u).exp() * rp
            };
            let outer = settings.with_scale(dispersion_scale(mirror, cavity_medium, pol));
            let inner = settings.with_scale(3.0); // u³e^{−u} peaks at u = 3
            Ok(AtomForceResult::from_integral(
                integrate_double(kernel, &outer, &inner).scaled(HBAR / (8.0 * PI * z.powi(4))),
                AtomForceRegime::Nonretarded,
            ))
        }
        AtomForceRegime::Far => {
            mirror.static_evaluable()?;
            let prefactor = far_prefactor(z, cavity_medium, pol)?;
            let weight = |p: f64| {
                let rp = reflection_pform(Polarization::TM, mirror, cavity_medium, 0.0, p)
                    .expect("p >= 1");
                let rs = reflection_pform(Polarization::TE, mirror, cavity_medium, 0.0, p)
                    .expect("p >= 1");
                ((2.0 * p * p - 1.0) * rp - rs) / p.powi(4)
            };
            let integral = integrate_tail_interval(weight, 1.0, &QuadratureSettings::default());
            Ok(AtomForceResult::from_integral(
                integral.scaled(prefactor),
                AtomForceRegime::Far,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ideal_f1, ideal_f2, IdealConfigTag};
    use crate::materials::DispersionSpec;
    use crate::quadrature::integrate_semi_infinite;
    use approx::assert_relative_eq;

    fn fast() -> QuadratureSettings {
        QuadratureSettings::default().with_rel_tol(1e-6)
    }

    fn ideal_cc_vacuum(d: f64) -> CavityConfig {
        CavityConfig::semi_infinite(
            Material::vacuum(),
            SlabSpec::IdealConductive,
            MirrorSpec::IdealConductive,
            d,
        )
    }

    #[test]
    fn denominator_examples() {
        // Index-matched slab between perfect mirrors: 1 − e^{−2κL}.
        let kappa: f64 = 2e6;
        let (d1, d2) = (0.7e-6, 0.4e-6);
        let t = (-kappa * 0.2e-6).exp(); // optical depth κd_s
        let n = denominator(0.0, t, 1.0, 1.0, kappa, d1, d2).unwrap();
        let expected = 1.0 - (-2.0 * kappa * (d1 + d2 + 0.2e-6)).exp();
        assert_relative_eq!(n, expected, max_relative = 1e-13);

        // No mirrors at all.
        assert_eq!(denominator(0.3, 0.5, 0.0, 0.0, kappa, d1, d2).unwrap(), 1.0);

        // Ideal slab, perfect mirrors: factorizes.
        let n = denominator(1.0, 0.0, 1.0, 1.0, kappa, d1, d2).unwrap();
        let e1 = (-2.0 * kappa * d1).exp();
        let e2 = (-2.0 * kappa * d2).exp();
        assert_relative_eq!(n, (1.0 - e1) * (1.0 - e2), max_relative = 1e-13);
        assert_relative_eq!(n, 1.0 - e1 - e2 + e1 * e2, max_relative = 1e-12);
    }

    #[test]
    fn denominator_guard_trips_on_degenerate_input() {
        // r·r1 = 1 with a vanishing gap is the degenerate limit.
        let err = denominator(1.0, 0.0, 1.0, 1.0, 1.0, 1e-14, 1e-14);
        assert!(matches!(err, Err(Error::DegenerateDenominator { .. })));
    }

    #[test]
    fn g_difference_symmetry_and_vacuum() {
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::IdealConductive,
            cavity_medium: Material::vacuum(),
            slab: SlabSpec::Real {
                material: Material::constant(2.0, 1.0),
                thickness: 0.3e-6,
            },
            d1: 0.5e-6,
            d2: 0.5e-6,
        };
        for q in Polarization::BOTH {
            let pt = CavityPoint::evaluate(&config, q, 1e15, 2e6).unwrap();
            // Symmetric cavity: the mirror difference vanishes identically.
            assert_eq!(pt.mirror_difference(), 0.0);
            assert_eq!(g_difference(&pt).unwrap(), 0.0);
            // Vacuum cavity: the assisted term carries the n²−1 factor.
            let denom = pt.denominator().unwrap();
            assert_eq!(g_assisted(&pt, denom), 0.0);
        }
    }

    #[test]
    fn split_structural_zeros() {
        // Vacuum cavity medium: f2 ≡ 0 exactly.
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::half_space(Material::constant(3.0, 1.0)),
            cavity_medium: Material::vacuum(),
            slab: SlabSpec::Real {
                material: Material::constant(2.0, 1.2),
                thickness: 0.2e-6,
            },
            d1: 0.4e-6,
            d2: 0.8e-6,
        };
        let f = force_split(&config, &fast()).unwrap();
        assert_eq!(f.f2(), 0.0);
        assert!(f.converged());

        // Index-matched slab: f1 ≡ 0 exactly (r = 0).
        let medium = Material::constant(2.0, 1.0);
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::IdealPermeable,
            cavity_medium: medium.clone(),
            slab: SlabSpec::Real {
                material: medium,
                thickness: 0.2e-6,
            },
            d1: 0.4e-6,
            d2: 0.8e-6,
        };
        let f = force_split(&config, &fast()).unwrap();
        assert_eq!(f.f1(), 0.0);
        assert!(f.f2() != 0.0);
    }

    #[test]
    fn near_degenerate_gap_asymmetry_converges() {
        // d2 − d1 smaller than one ulp of the exponents 2κd: the
        // mirror-difference factor must use the exact distance difference,
        // otherwise the integrand is ulp-staircase noise and the quadrature
        // can neither converge nor terminate cheaply.
        let d1 = 5e-7;
        #[allow(clippy::excessive_precision)] // the last digits ARE the asymmetry
        let d2 = 5.000_000_000_000_001_89e-7; // d2 − d1 ≈ +2.1e-22 m
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::IdealConductive,
            cavity_medium: Material::vacuum(),
            slab: SlabSpec::IdealConductive,
            d1,
            d2,
        };
        let f = force_split(&config, &fast()).unwrap();
        assert!(
            f.converged(),
            "sub-ulp asymmetry must not stall the quadrature"
        );
        // Antisymmetric around d2 = d1 and linear in the tiny asymmetry.
        assert!(f.total() < 0.0);
        assert!(f.total().abs() < 1e-15, "got {:e}", f.total());
        assert!(f.total().abs() > 1e-19, "got {:e}", f.total());
    }

    #[test]
    fn symmetric_cavity_force_vanishes() {
        let medium = Material::constant(1.5, 1.0);
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::IdealConductive,
            cavity_medium: medium.clone(),
            slab: SlabSpec::Real {
                material: Material::constant(4.0, 1.0),
                thickness: 0.25e-6,
            },
            d1: 0.6e-6,
            d2: 0.6e-6,
        };
        let f = force_split(&config, &fast()).unwrap();
        assert_eq!(f.total(), 0.0);
    }

    #[test]
    fn semi_infinite_ideal_cc_matches_closed_form() {
        let d = 1e-6;
        let f = force_split(&ideal_cc_vacuum(d), &fast()).unwrap();
        let expected = ideal_f1(d, IdealConfigTag::CC, 1.0, 1.0);
        assert!(f.converged());
        assert_relative_eq!(f.f1(), expected, max_relative = 1e-4);
        assert_eq!(f.f2(), 0.0);
    }

    #[test]
    fn split_matches_ideal_f2_in_a_medium() {
        let d = 1e-6;
        let (eps0, mu0) = (2.0, 1.0);
        let config = CavityConfig::semi_infinite(
            Material::constant(eps0, mu0),
            SlabSpec::IdealConductive,
            MirrorSpec::IdealPermeable,
            d,
        );
        let f = force_split(&config, &fast()).unwrap();
        // Mixed pair, permeable mirror: tag "pc" (mirror first).
        assert_relative_eq!(
            f.f1(),
            ideal_f1(d, IdealConfigTag::PC, eps0, mu0),
            max_relative = 1e-4
        );
        assert_relative_eq!(
            f.f2(),
            ideal_f2(d, IdealConfigTag::PC, eps0, mu0),
            max_relative = 1e-4
        );
    }

    #[test]
    fn direct_route_agrees_with_split() {
        let config = CavityConfig {
            mirror1: MirrorSpec::half_space(Material::constant(4.0, 1.0)),
            mirror2: MirrorSpec::IdealConductive,
            cavity_medium: Material::constant(1.3, 1.1),
            slab: SlabSpec::Real {
                material: Material::constant(2.5, 1.0),
                thickness: 0.15e-6,
            },
            d1: 0.3e-6,
            d2: 0.9e-6,
        };
        let split = force_split(&config, &fast()).unwrap();
        let direct = force_total_direct(&config, &fast()).unwrap();
        let tol = split.total_error() + direct.total_error();
        assert!(
            (split.total() - direct.total()).abs() <= tol,
            "split {} vs direct {} exceeds {}",
            split.total(),
            direct.total(),
            tol
        );
    }

    #[test]
    fn mirror_swap_negates_the_force() {
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::half_space(Material::constant(5.0, 1.0)),
            cavity_medium: Material::constant(1.2, 1.0),
            slab: SlabSpec::Real {
                material: Material::constant(3.0, 1.0),
                thickness: 0.2e-6,
            },
            d1: 0.5e-6,
            d2: 0.25e-6,
        };
        let f = force_split(&config, &fast()).unwrap();
        let g = force_split(&config.swap_mirrors(), &fast()).unwrap();
        let tol = f.total_error() + g.total_error();
        assert!((f.total() + g.total()).abs() <= tol.max(1e-12 * f.total().abs()));
    }

    #[test]
    fn layer_force_agrees_with_assisted_component() {
        let medium = Material::new(
            DispersionSpec::LorentzSum(vec![crate::materials::LorentzOscillator::undamped(
                0.8, 9e15,
            )]),
            DispersionSpec::vacuum(),
        );
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::half_space(Material::constant(6.0, 1.0)),
            cavity_medium: medium.clone(),
            slab: SlabSpec::Real {
                material: medium,
                thickness: 0.3e-6,
            },
            d1: 0.7e-6,
            d2: 0.4e-6,
        };
        let via_density = medium_layer_force(&config, &fast()).unwrap();
        let via_split = force_split(&config, &fast()).unwrap();
        let tol = via_density.error_estimate + via_split.total_error();
        assert!(
            (via_density.value - via_split.f2()).abs() <= tol,
            "layer {} vs f2 {} exceeds {}",
            via_density.value,
            via_split.f2(),
            tol
        );
        assert_eq!(via_split.f1(), 0.0);
    }

    #[test]
    fn layer_force_vanishes_in_a_symmetric_cavity() {
        let medium = Material::constant(1.8, 1.0);
        let config = CavityConfig {
            mirror1: MirrorSpec::half_space(Material::constant(5.0, 1.0)),
            mirror2: MirrorSpec::half_space(Material::constant(5.0, 1.0)),
            cavity_medium: medium.clone(),
            slab: SlabSpec::Real {
                material: medium,
                thickness: 0.2e-6,
            },
            d1: 0.5e-6,
            d2: 0.5e-6,
        };
        let r = medium_layer_force(&config, &fast()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn atom_forces_vanish_for_an_index_matched_mirror() {
        // r^p = r^s = 0 kills every regime pointwise.
        let medium = Material::constant(1.5, 1.0);
        let mirror = MirrorSpec::half_space(medium.clone());
        let atom = AtomPolarizability::electric(1e-30, 1e16);
        let z = 100e-9;
        let s = fast();
        assert_eq!(
            atom_force_full(z, &mirror, &medium, &atom, &s)
                .unwrap()
                .value,
            0.0
        );
        assert_eq!(
            atom_force_nonretarded(z, &mirror, &medium, &atom, &s)
                .unwrap()
                .value,
            0.0
        );
        assert_eq!(
            atom_force_far(z, &mirror, &medium, &atom).unwrap().value,
            0.0
        );
        // ZS near probes only r^p_nr, also zero here.
        let zs =
            zs_atom_force(z, &mirror, &medium, &atom, &s, AtomForceRegime::Nonretarded).unwrap();
        assert_eq!(zs.value, 0.0);
    }

    #[test]
    fn layer_force_requires_index_matching() {
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::IdealConductive,
            cavity_medium: Material::constant(2.0, 1.0),
            slab: SlabSpec::Real {
                material: Material::constant(3.0, 1.0),
                thickness: 0.3e-6,
            },
            d1: 0.7e-6,
            d2: 0.4e-6,
        };
        assert!(matches!(
            medium_layer_force(&config, &fast()),
            Err(Error::NotIndexMatched)
        ));
        assert!(matches!(
            medium_force_density(0.5e-6, Side::Mirror2, &config, &fast()),
            Err(Error::NotIndexMatched)
        ));
    }

    #[test]
    fn density_vanishes_for_vacuum_and_symmetric_mirrors() {
        // Vacuum medium: no force on nothing.
        let config = CavityConfig {
            mirror1: MirrorSpec::IdealConductive,
            mirror2: MirrorSpec::IdealConductive,
            cavity_medium: Material::vacuum(),
            slab: SlabSpec::Real {
                material: Material::vacuum(),
                thickness: 0.3e-6,
            },
            d1: 0.7e-6,
            d2: 0.4e-6,
        };
        let r = medium_force_density(0.5e-6, Side::Mirror1, &config, &fast()).unwrap();
        assert_eq!(r.value, 0.0);

        // Index-matched mirror (r^p = r^s = 0): Σ_q Δ_q r^q = 0.
        let medium = Material::constant(1.5, 1.0);
        let config = CavityConfig {
            mirror1: MirrorSpec::half_space(medium.clone()),
            mirror2: MirrorSpec::half_space(medium.clone()),
            cavity_medium: medium.clone(),
            slab: SlabSpec::Real {
                material: medium,
                thickness: 0.3e-6,
            },
            d1: 0.7e-6,
            d2: 0.4e-6,
        };
        let r = medium_force_density(0.5e-6, Side::Mirror2, &config, &fast()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn atom_far_ideal_conductor_is_the_screened_casimir_polder_value() {
        let alpha0 = 1e-30;
        let atom = AtomPolarizability::electric(alpha0, 1e16);
        let z = 1e-6;
        let f =
            atom_force_far(z, &MirrorSpec::IdealConductive, &Material::vacuum(), &atom).unwrap();
        let expected = HBAR * SPEED_OF_LIGHT * alpha0 / (2.0 * PI * z.powi(5));
        assert_relative_eq!(f.value, expected, max_relative = 1e-9);

        // Permeable mirror: same magnitude, opposite sign.
        let g = atom_force_far(z, &MirrorSpec::IdealPermeable, &Material::vacuum(), &atom).unwrap();
        assert_relative_eq!(g.value, -expected, max_relative = 1e-9);
    }

    #[test]
    fn zs_far_ideal_conductor_is_casimir_polder() {
        let alpha0 = 1e-30;
        let atom = AtomPolarizability::electric(alpha0, 1e16);
        let z = 1e-6;
        let f = zs_atom_force(
            z,
            &MirrorSpec::IdealConductive,
            &Material::vacuum(),
            &atom,
            &fast(),
            AtomForceRegime::Far,
        )
        .unwrap();
        let expected = 3.0 * HBAR * SPEED_OF_LIGHT * alpha0 / (2.0 * PI * z.powi(5));
        assert_relative_eq!(f.value, expected, max_relative = 1e-9);
    }

    #[test]
    fn nonretarded_matches_single_medium_closed_form() {
        // For a single-medium mirror the u-integral is Γ(2) = 1 and the
        // force reduces to (ħ/4πc²z²)∫dξ ξ²μα[(ε_m−ε)/(ε_m+ε) − (μ_m−μ)/(μ_m+μ)].
        let mirror_material = Material::new(
            DispersionSpec::LorentzSum(vec![crate::materials::LorentzOscillator::undamped(
                1.5, 8e15,
            )]),
            DispersionSpec::vacuum(),
        );
        let mirror = MirrorSpec::half_space(mirror_material.clone());
        let medium = Material::vacuum();
        let atom = AtomPolarizability::electric(2e-30, 1.2e16);
        let z = 5e-9;

        let f = atom_force_nonretarded(z, &mirror, &medium, &atom, &fast()).unwrap();

        let oracle_kernel = |xi: f64| {
            let em = mirror_material.eval_eps(xi).unwrap();
            let w = xi / SPEED_OF_LIGHT;
            w * w * atom.eval(xi) * ((em - 1.0) / (em + 1.0))
        };
        let oracle = integrate_semi_infinite(oracle_kernel, &fast().with_scale(1e16))
            .scaled(HBAR / (4.0 * PI * z * z));
        assert!(f.converged && oracle.converged);
        assert_relative_eq!(f.value, oracle.value, max_relative = 1e-4);
    }

    #[test]
    fn atom_full_sign_flips_with_mirror_type() {
        let atom = AtomPolarizability::electric(1e-30, 1e16);
        let n = 1e-3 / (4.0 * PI * atom.static_total());
        let medium = Material::dilute(n, &atom);
        let dielectric = MirrorSpec::half_space(Material::new(
            DispersionSpec::LorentzSum(vec![crate::materials::LorentzOscillator::undamped(
                2.0, 9e15,
            )]),
            DispersionSpec::vacuum(),
        ));
        let permeable = MirrorSpec::half_space(Material::new(
            DispersionSpec::vacuum(),
            DispersionSpec::LorentzSum(vec![crate::materials::LorentzOscillator::undamped(
                2.0, 9e15,
            )]),
        ));
        let z = 50e-9;
        let f_d = atom_force_full(z, &dielectric, &medium, &atom, &fast()).unwrap();
        let f_p = atom_force_full(z, &permeable, &medium, &atom, &fast()).unwrap();
        assert!(f_d.value > 0.0, "dielectric mirror attracts");
        assert!(f_p.value < 0.0, "permeable mirror repels");
    }

    #[test]
    fn atom_far_errors_without_static_values() {
        let atom = AtomPolarizability::electric(1e-30, 1e16);
        let drude_medium = Material::new(
            DispersionSpec::Drude {
                plasma_frequency: 1e16,
                damping: 1e14,
            },
            DispersionSpec::vacuum(),
        );
        assert!(atom_force_far(1e-6, &MirrorSpec::IdealConductive, &drude_medium, &atom).is_err());

        let drude_mirror = MirrorSpec::half_space(drude_medium);
        assert!(atom_force_far(1e-6, &drude_mirror, &Material::vacuum(), &atom).is_err());
    }

    #[test]
    fn config_validation() {
        let mut config = ideal_cc_vacuum(1e-6);
        assert!(config.validate().is_ok());
        config.d2 = 0.0;
        assert!(config.validate().is_err());
        config.d2 = f64::NAN;
        assert!(config.validate().is_err());
    }
}
