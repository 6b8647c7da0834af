//! Perpendicular wave vectors and Fresnel reflection/transmission
//! coefficients: single interface, whole slab, and layered mirrors, in the
//! standard, nonretarded, and p-substituted parameterizations.
//!
//! On the imaginary frequency axis every coefficient is real (real ε(iξ),
//! μ(iξ)), so all arithmetic here is real. Multilayer mirrors compose by the
//! inward Möbius recursion r ← (ρ + r′e^{−2κd})/(1 + ρr′e^{−2κd}), which is
//! numerically stable on this axis because every exponential decays.

use serde::{Deserialize, Serialize};

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::materials::Material;

/// 1 − e^{−x} without cancellation for small x.
#[inline]
pub(crate) fn one_minus_exp_neg(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// 1 − c·e^{−x} for |c| ≤ 1, stable for c near 1 and small x.
#[inline]
pub(crate) fn one_minus_prod_exp(c: f64, x: f64) -> f64 {
    (1.0 - c) + c * one_minus_exp_neg(x)
}

/// c₂e^{−x₂} − c₁e^{−x₁}, stable when c₁ ≈ c₂ and x₁ ≈ x₂. Infinite
/// exponents drop their term exactly.
///
/// `dx` must be x₁ − x₂ computed without cancellation by the caller (e.g.
/// 2κ(d₁ − d₂) from the exact distance difference): recovering it from the
/// rounded exponents would quantize sub-ulp asymmetries into a staircase
/// that adaptive quadrature cannot integrate.
#[inline]
pub(crate) fn exp_weighted_diff(c2: f64, x2: f64, c1: f64, x1: f64, dx: f64) -> f64 {
    if x1 == f64::INFINITY {
        return if x2 == f64::INFINITY {
            0.0
        } else {
            c2 * (-x2).exp()
        };
    }
    if x2 == f64::INFINITY {
        return -c1 * (-x1).exp();
    }
    if dx >= 0.0 {
        (-x2).exp() * ((c2 - c1) + c1 * one_minus_exp_neg(dx))
    } else {
        -((-x1).exp() * ((c1 - c2) + c2 * one_minus_exp_neg(-dx)))
    }
}

/// Field polarization; TE is the paper's q = s, TM is q = p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    TE,
    TM,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TE, Polarization::TM];

    /// Δ_q = δ_qp − δ_qs: +1 for TM (p), −1 for TE (s).
    pub fn delta(self) -> f64 {
        match self {
            Polarization::TM => 1.0,
            Polarization::TE => -1.0,
        }
    }

    /// Conventional one-letter label: "s" for TE, "p" for TM.
    pub fn label(self) -> &'static str {
        match self {
            Polarization::TE => "s",
            Polarization::TM => "p",
        }
    }
}

/// Perpendicular wave vector κ = √(n²ξ²/c² + k²) in a medium with squared
/// refraction index `n_sq`, at imaginary frequency ξ and in-plane wave
/// vector k.
pub fn kappa(n_sq: f64, xi: f64, k: f64) -> Result<f64> {
    if xi < 0.0 || k < 0.0 || n_sq < 1.0 {
        return Err(Error::Domain(format!(
            "kappa needs n_sq >= 1, xi >= 0, k >= 0 (got n_sq = {n_sq}, xi = {xi}, k = {k})"
        )));
    }
    if xi == 0.0 && k == 0.0 {
        return Err(Error::Domain("kappa undefined at xi = k = 0".into()));
    }
    Ok(kappa_unchecked(n_sq, xi, k))
}

#[inline]
pub(crate) fn kappa_unchecked(n_sq: f64, xi: f64, k: f64) -> f64 {
    let w = xi / SPEED_OF_LIGHT;
    (n_sq * w * w + k * k).sqrt()
}

/// (ε, μ, κ) of one medium at a fixed (ξ, k) point, the inputs of a
/// single-interface coefficient.
#[derive(Debug, Clone, Copy)]
pub struct InterfaceParams {
    pub eps: f64,
    pub mu: f64,
    pub kappa: f64,
}

/// Single-interface Fresnel reflection coefficient from medium `from` into
/// medium `into`:
/// ρ^p = (ε₂κ₁ − ε₁κ₂)/(ε₂κ₁ + ε₁κ₂), ρ^s the same with μ in place of ε.
pub fn rho_interface(q: Polarization, from: &InterfaceParams, into: &InterfaceParams) -> f64 {
    let (a1, a2) = match q {
        Polarization::TM => (from.eps, into.eps),
        Polarization::TE => (from.mu, into.mu),
    };
    (a2 * from.kappa - a1 * into.kappa) / (a2 * from.kappa + a1 * into.kappa)
}

/// A slab in the cavity: real material of finite thickness, or an ideally
/// reflecting (conductive/permeable) sheet with r = ±Δ_q, t = 0 exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SlabSpec {
    Real { material: Material, thickness: f64 },
    IdealConductive,
    IdealPermeable,
}

impl SlabSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SlabSpec::Real {
                material,
                thickness,
            } => {
                material.validate()?;
                if !(thickness.is_finite() && *thickness > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "slab thickness must be finite and > 0 m, got {thickness}"
                    )));
                }
                Ok(())
            }
            SlabSpec::IdealConductive | SlabSpec::IdealPermeable => Ok(()),
        }
    }

    /// Thickness entering the cavity-length accounting: d_s for real slabs,
    /// 0 for ideal sheets (t = 0 removes every thickness-dependent term).
    pub fn length_contribution(&self) -> f64 {
        match self {
            SlabSpec::Real { thickness, .. } => *thickness,
            _ => 0.0,
        }
    }
}

/// Whole-slab coefficients at one (q, ξ, k), with the cancellation-critical
/// combinations precomputed.
#[derive(Debug, Clone, Copy)]
pub struct SlabCoeffs {
    pub r: f64,
    pub t: f64,
    /// 1 − t without cancellation (→ 0 for a transparent slab).
    pub one_minus_t: f64,
    /// κ_s·d_s; +∞ for ideal slabs (consistent with t = 0).
    pub optical_depth: f64,
}

impl SlabCoeffs {
    /// Evaluates Fresnel coefficients of the whole slab embedded in the
    /// cavity medium:
    /// r = ρ(1 − e^{−2κ_s d_s})/(1 − ρ²e^{−2κ_s d_s}),
    /// t = (1 − ρ²)e^{−κ_s d_s}/(1 − ρ²e^{−2κ_s d_s}).
    pub fn evaluate(
        q: Polarization,
        spec: &SlabSpec,
        cavity: &Material,
        xi: f64,
        k: f64,
    ) -> Result<SlabCoeffs> {
        match spec {
            SlabSpec::IdealConductive => Ok(SlabCoeffs {
                r: q.delta(),
                t: 0.0,
                one_minus_t: 1.0,
                optical_depth: f64::INFINITY,
            }),
            SlabSpec::IdealPermeable => Ok(SlabCoeffs {
                r: -q.delta(),
                t: 0.0,
                one_minus_t: 1.0,
                optical_depth: f64::INFINITY,
            }),
            SlabSpec::Real {
                material,
                thickness,
            } => {
                let cav = interface_params(cavity, xi, k)?;
                let slab = interface_params(material, xi, k)?;
                let rho = rho_interface(q, &cav, &slab);
                let depth = slab.kappa * thickness;
                let e = (-depth).exp();
                let e2 = e * e;
                let denom = 1.0 - rho * rho * e2;
                // 1 − t = (1 − e)(1 + ρ²e)/(1 − ρ²e²), exact rearrangement.
                Ok(SlabCoeffs {
                    r: rho * one_minus_exp_neg(2.0 * depth) / denom,
                    t: (1.0 - rho * rho) * e / denom,
                    one_minus_t: one_minus_exp_neg(depth) * (1.0 + rho * rho * e) / denom,
                    optical_depth: depth,
                })
            }
        }
    }

    /// (1 + r)² − t², factored as (1 + r − t)(1 + r + t) to stay accurate
    /// for transparent slabs (r → 0, t → 1).
    #[inline]
    pub fn one_plus_r_sq_minus_t_sq(&self) -> f64 {
        (self.one_minus_t + self.r) * (1.0 + self.r + self.t)
    }
}

fn interface_params(material: &Material, xi: f64, k: f64) -> Result<InterfaceParams> {
    let eps = material.eval_eps(xi)?;
    let mu = material.eval_mu(xi)?;
    Ok(InterfaceParams {
        eps,
        mu,
        kappa: kappa_unchecked(eps * mu, xi, k),
    })
}

/// Fresnel coefficients (r, t) of the whole slab; ideal variants return
/// (±Δ_q, 0) exactly.
pub fn slab_rt(
    q: Polarization,
    spec: &SlabSpec,
    cavity: &Material,
    xi: f64,
    k: f64,
) -> Result<(f64, f64)> {
    let c = SlabCoeffs::evaluate(q, spec, cavity, xi, k)?;
    Ok((c.r, c.t))
}

/// One layer of a mirror stack. The terminating half-space has
/// `thickness = f64::INFINITY`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub material: Material,
    pub thickness: f64,
}

impl Layer {
    pub fn new(material: Material, thickness: f64) -> Self {
        Self {
            material,
            thickness,
        }
    }

    pub fn half_space(material: Material) -> Self {
        Self {
            material,
            thickness: f64::INFINITY,
        }
    }
}

/// A cavity mirror: ideal (r^q = ±Δ_q) or a finite layer stack terminated by
/// a half-space, listed from the cavity side inward.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MirrorSpec {
    IdealConductive,
    IdealPermeable,
    Stack(Vec<Layer>),
}

impl MirrorSpec {
    /// Single half-space mirror.
    pub fn half_space(material: Material) -> Self {
        MirrorSpec::Stack(vec![Layer::half_space(material)])
    }

    /// Validated stack: nonempty, finite layers first, exactly the last
    /// layer infinite.
    pub fn stack(layers: Vec<Layer>) -> Result<Self> {
        let spec = MirrorSpec::Stack(layers);
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MirrorSpec::IdealConductive | MirrorSpec::IdealPermeable => Ok(()),
            MirrorSpec::Stack(layers) => {
                let Some((last, finite)) = layers.split_last() else {
                    return Err(Error::InvalidSpec("mirror stack must be nonempty".into()));
                };
                if last.thickness != f64::INFINITY {
                    return Err(Error::InvalidSpec(
                        "the last stack layer must be an infinite half-space".into(),
                    ));
                }
                for (i, layer) in finite.iter().enumerate() {
                    if !(layer.thickness.is_finite() && layer.thickness >= 0.0) {
                        return Err(Error::InvalidSpec(format!(
                            "stack layer {i} thickness must be finite and >= 0 m, got {}",
                            layer.thickness
                        )));
                    }
                }
                for layer in layers {
                    layer.material.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Largest dispersion frequency scale among stack materials, if any
    /// (transparency diagnostic; ideal mirrors have none).
    pub fn largest_frequency_scale(&self) -> Option<f64> {
        match self {
            MirrorSpec::Stack(layers) => layers
                .iter()
                .filter_map(|l| l.material.largest_frequency_scale())
                .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w)))),
            _ => None,
        }
    }

    /// ξ → 0 limits must exist for every stack material (far-field forms).
    pub fn static_evaluable(&self) -> Result<()> {
        if let MirrorSpec::Stack(layers) = self {
            for layer in layers {
                layer.material.static_values()?;
            }
        }
        Ok(())
    }
}

/// Inward recursion over the stack. `kappa_of` supplies each medium's
/// perpendicular wave vector up to the common factor `exponent_scale`, which
/// multiplies it only inside the propagation exponents. Interface ratios are
/// invariant under that common factor, which keeps the p-form finite at
/// ξ = 0 where every κ_l vanishes.
fn stack_reflection<F: Fn(&Material) -> Result<f64>>(
    q: Polarization,
    layers: &[Layer],
    cavity: &Material,
    xi: f64,
    kappa_of: F,
    exponent_scale: f64,
) -> Result<f64> {
    let mut params = Vec::with_capacity(layers.len() + 1);
    for material in std::iter::once(cavity).chain(layers.iter().map(|l| &l.material)) {
        params.push(InterfaceParams {
            eps: material.eval_eps(xi)?,
            mu: material.eval_mu(xi)?,
            kappa: kappa_of(material)?,
        });
    }
    let n = layers.len();
    let mut r = rho_interface(q, &params[n - 1], &params[n]);
    for l in (1..n).rev() {
        let e = (-2.0 * exponent_scale * params[l].kappa * layers[l - 1].thickness).exp();
        let rho = rho_interface(q, &params[l - 1], &params[l]);
        r = (rho + r * e) / (1.0 + rho * r * e);
    }
    Ok(r)
}

/// Reflection coefficient of a mirror seen from the cavity at (ξ, k).
pub fn mirror_reflection(
    q: Polarization,
    spec: &MirrorSpec,
    cavity: &Material,
    xi: f64,
    k: f64,
) -> Result<f64> {
    match spec {
        MirrorSpec::IdealConductive => Ok(q.delta()),
        MirrorSpec::IdealPermeable => Ok(-q.delta()),
        MirrorSpec::Stack(layers) => stack_reflection(
            q,
            layers,
            cavity,
            xi,
            |m| Ok(kappa_unchecked(m.n_sq(xi)?, xi, k)),
            1.0,
        ),
    }
}

/// Nonretarded reflection coefficient: formally κ = k in every medium. For a
/// single-medium mirror this is (ε_m − ε)/(ε_m + ε) for p and
/// (μ_m − μ)/(μ_m + μ) for s, independent of k.
pub fn reflection_nonretarded(
    q: Polarization,
    spec: &MirrorSpec,
    cavity: &Material,
    xi: f64,
    k: f64,
) -> Result<f64> {
    match spec {
        MirrorSpec::IdealConductive => Ok(q.delta()),
        MirrorSpec::IdealPermeable => Ok(-q.delta()),
        MirrorSpec::Stack(layers) => stack_reflection(q, layers, cavity, xi, |_| Ok(k), 1.0),
    }
}

/// Reflection coefficient in the p-parameterization κ = nξp/c, p ≥ 1, where
/// each layer carries κ_l = n(ξ/c)s_l with s_l = √(p² − 1 + n_l²/n²). At
/// ξ = 0 the layer exponentials become 1 and finite thicknesses drop out.
pub fn reflection_pform(
    q: Polarization,
    spec: &MirrorSpec,
    cavity: &Material,
    xi: f64,
    p: f64,
) -> Result<f64> {
    if p < 1.0 {
        return Err(Error::Domain(format!(
            "p-form substitution needs p >= 1, got {p}"
        )));
    }
    match spec {
        MirrorSpec::IdealConductive => Ok(q.delta()),
        MirrorSpec::IdealPermeable => Ok(-q.delta()),
        MirrorSpec::Stack(layers) => {
            let n_sq = cavity.n_sq(xi)?;
            // κ_l = (ξ/c)·√(n²(p² − 1) + n_l²) = n(ξ/c)s_l. The ξ/c factor
            // goes into the propagation exponents only, so interfaces stay
            // finite at ξ = 0 where finite layers drop out exactly.
            stack_reflection(
                q,
                layers,
                cavity,
                xi,
                move |m| Ok((n_sq * (p * p - 1.0) + m.n_sq(xi)?).sqrt()),
                xi / SPEED_OF_LIGHT,
            )
        }
    }
}
