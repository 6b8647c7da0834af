//! Deterministic adaptive quadrature over semi-infinite intervals and nested
//! (outer, inner) double integrals.
//!
//! Semi-infinite integrals are mapped onto (0, 1) by u = λt/(1−t) and handled
//! by adaptive bisection of an embedded Gauss-7/Kronrod-15 pair; the G7/K15
//! difference supplies the per-segment error estimate. All nodes are fixed
//! (no randomization) and final sums run over segments in left-to-right
//! order, so identical inputs produce bit-identical results. Endpoints are
//! never evaluated: integrands may be singular at 0 in the limit sense
//! (e.g. Drude permittivities) as long as they are finite on (0, ∞).

use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and transform hints for one integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance; convergence requires error ≤ max(rel·|value|, abs).
    pub abs_tol: f64,
    /// Cap on integrand evaluations before giving up (flagged, not an error).
    pub max_evaluations: u64,
    /// Decay-scale hint λ > 0 for the u = λt/(1−t) map.
    pub scale: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_evaluations: 1_000_000,
            scale: 1.0,
        }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_max_evaluations(mut self, max_evaluations: u64) -> Self {
        self.max_evaluations = max_evaluations;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 0.0 && self.abs_tol >= 0.0)
            || (self.rel_tol == 0.0 && self.abs_tol == 0.0)
        {
            return Err(Error::InvalidSpec(
                "quadrature settings need rel_tol > 0 or abs_tol > 0".into(),
            ));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "quadrature scale hint must be finite and > 0, got {}",
                self.scale
            )));
        }
        Ok(())
    }
}

/// Value, error estimate, and diagnostics of one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    /// Estimated absolute error bound (≥ 0).
    pub error_estimate: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: u64,
    /// False if the tolerance was not met within `max_evaluations`.
    pub converged: bool,
}

impl IntegralResult {
    /// Result of integrating `factor * f` given the result for `f`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }
}

// 15-point Kronrod abscissas on [-1, 1]; odd indices are the embedded
// 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// One integrand evaluation: the value, a secondary channel accumulated
/// with the Kronrod weights (inner error estimates in double integrals),
/// and the work it cost (1 for plain integrands, the inner evaluation count
/// for nested ones).
#[derive(Debug, Clone, Copy)]
struct Sample {
    value: f64,
    aux: f64,
    cost: u64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    aux: f64,
    error: f64,
    cost: u64,
}

/// QUADPACK-style error rescaling: models the faster convergence of the
/// Kronrod rule and floors the estimate at the roundoff level of ∫|f|.
fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut scaled = err.abs();
    if resasc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / resasc).powf(1.5);
        scaled = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * resabs);
    }
    scaled
}

/// One G7/K15 evaluation of `f` on [a, b]. The aux channel is accumulated
/// with the Kronrod weights but takes no part in the error estimate.
fn gk15<F: FnMut(f64) -> Sample>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut fv = [0.0f64; 15];
    let mut aux_sum = 0.0;
    let mut cost = 0u64;
    for (i, &x) in XGK.iter().enumerate() {
        if x == 0.0 {
            let s = f(center);
            fv[7] = s.value;
            aux_sum += WGK[7] * s.aux;
            cost += s.cost;
        } else {
            let s1 = f(center - half * x);
            let s2 = f(center + half * x);
            fv[i] = s1.value;
            fv[14 - i] = s2.value;
            aux_sum += WGK[i] * (s1.aux + s2.aux);
            cost += s1.cost + s2.cost;
        }
    }

    let mut kronrod = WGK[7] * fv[7];
    let mut gauss = WG[3] * fv[7];
    let mut resabs = WGK[7] * fv[7].abs();
    for i in 0..7 {
        let pair = fv[i] + fv[14 - i];
        kronrod += WGK[i] * pair;
        resabs += WGK[i] * (fv[i].abs() + fv[14 - i].abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }

    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fv[7] - mean).abs();
    for i in 0..7 {
        resasc += WGK[i] * ((fv[i] - mean).abs() + (fv[14 - i] - mean).abs());
    }

    let err = ((kronrod - gauss) * half).abs();
    Segment {
        a,
        b,
        value: kronrod * half,
        aux: aux_sum * half,
        error: rescale_error(err, resabs * half.abs(), resasc * half.abs()),
        cost,
    }
}

/// Heap entry ordered by error (largest first), ties broken by left endpoint
/// so the refinement order is a pure function of the input.
struct HeapSeg(Segment);

impl PartialEq for HeapSeg {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for HeapSeg {}
impl PartialOrd for HeapSeg {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapSeg {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

#[derive(Debug, Clone, Copy)]
struct AdaptResult {
    value: f64,
    error: f64,
    aux: f64,
    evaluations: u64,
    converged: bool,
}

/// Adaptive bisection on the finite interval [a, b]. The work budget counts
/// integrand cost (node count for plain integrals, total inner evaluations
/// for nested ones) and may overshoot by at most one subdivision.
fn adapt<F: FnMut(f64) -> Sample>(
    mut f: F,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> AdaptResult {
    // Below this width a segment is no longer split; its error estimate
    // stays in the total.
    let min_width = (b - a).abs() * 1e-12;

    let first = gk15(&mut f, a, b);
    let mut evaluations = first.cost;
    let mut sum_value = first.value;
    let mut sum_error = first.error;

    let mut active = BinaryHeap::new();
    active.push(HeapSeg(first));
    let mut frozen: Vec<Segment> = Vec::new();

    let converged = loop {
        let tol = settings.abs_tol.max(settings.rel_tol * sum_value.abs());
        if sum_error <= tol {
            break true;
        }
        if evaluations >= settings.max_evaluations {
            break false;
        }
        let Some(HeapSeg(worst)) = active.pop() else {
            break false;
        };
        if (worst.b - worst.a).abs() <= min_width {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&mut f, worst.a, mid);
        let right = gk15(&mut f, mid, worst.b);
        evaluations += left.cost + right.cost;
        sum_value += left.value + right.value - worst.value;
        sum_error += left.error + right.error - worst.error;
        active.push(HeapSeg(left));
        active.push(HeapSeg(right));
    };

    // Deterministic final sums: left-to-right over all segments.
    let mut segments = frozen;
    segments.extend(active.into_iter().map(|h| h.0));
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = 0.0;
    let mut error = 0.0;
    let mut aux = 0.0;
    for s in &segments {
        value += s.value;
        error += s.error;
        aux += s.aux;
    }

    AdaptResult {
        value,
        error,
        aux,
        evaluations,
        converged,
    }
}

fn adapt_semi_infinite<F: FnMut(f64) -> Sample>(
    mut f: F,
    settings: &QuadratureSettings,
) -> AdaptResult {
    let lambda = settings.scale;
    let mapped = move |t: f64| {
        let one_minus = 1.0 - t;
        let x = lambda * t / one_minus;
        let jac = lambda / (one_minus * one_minus);
        let s = f(x);
        Sample {
            value: s.value * jac,
            aux: s.aux * jac,
            cost: s.cost,
        }
    };
    adapt(mapped, 0.0, 1.0, settings)
}

/// ∫₀^∞ f(x) dx by the u = λt/(1−t) substitution and adaptive G7/K15.
///
/// `f` must be finite on (0, ∞); the endpoints are never evaluated. If the
/// tolerance is not met within `max_evaluations`, the result is returned
/// with `converged = false` and the caller decides.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    settings: &QuadratureSettings,
) -> IntegralResult {
    let r = adapt_semi_infinite(
        |x| Sample {
            value: f(x),
            aux: 0.0,
            cost: 1,
        },
        settings,
    );
    IntegralResult {
        value: r.value,
        error_estimate: r.error,
        evaluations: r.evaluations,
        converged: r.converged,
    }
}

/// ∫ₐ^∞ f(p) dp via the p = a/u substitution onto (0, 1], a > 0.
pub fn integrate_tail_interval<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    settings: &QuadratureSettings,
) -> IntegralResult {
    debug_assert!(a > 0.0, "tail integral needs a > 0");
    let mapped = |u: f64| {
        let p = a / u;
        Sample {
            value: f(p) * a / (u * u),
            aux: 0.0,
            cost: 1,
        }
    };
    let r = adapt(mapped, 0.0, 1.0, settings);
    IntegralResult {
        value: r.value,
        error_estimate: r.error,
        evaluations: r.evaluations,
        converged: r.converged,
    }
}

/// ∫ₐᵇ f(x) dx on a finite interval, same adaptive engine.
pub fn integrate_interval<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> IntegralResult {
    let r = adapt(
        |x| Sample {
            value: f(x),
            aux: 0.0,
            cost: 1,
        },
        a,
        b,
        settings,
    );
    IntegralResult {
        value: r.value,
        error_estimate: r.error,
        evaluations: r.evaluations,
        converged: r.converged,
    }
}

/// Nested double integral ∫₀^∞ dξ ∫₀^∞ dk g(ξ, k).
///
/// The outer pass adapts over ξ; each outer node runs an inner integral over
/// k with a relative tolerance at least one order tighter than the outer
/// one. The reported error is the outer estimate plus the ξ-integral of the
/// inner error estimates (an upper bound), and `evaluations` counts calls to
/// `g` — which is also what the outer `max_evaluations` budgets, so the
/// total work stays bounded even when inner integrals run to their own cap.
/// Unconverged inner integrals propagate `converged = false`.
pub fn integrate_double<G: Fn(f64, f64) -> f64>(
    g: G,
    settings_outer: &QuadratureSettings,
    settings_inner: &QuadratureSettings,
) -> IntegralResult {
    // One outer subdivision costs 30 inner integrals; cap each inner so a
    // single subdivision cannot consume the whole budget.
    let inner_settings = QuadratureSettings {
        rel_tol: settings_inner.rel_tol.min(0.1 * settings_outer.rel_tol),
        max_evaluations: settings_inner
            .max_evaluations
            .min((settings_outer.max_evaluations / 30).max(465)),
        ..*settings_inner
    };
    let mut inner_converged = true;

    let outer = adapt_semi_infinite(
        |xi| {
            let r = integrate_semi_infinite(|k| g(xi, k), &inner_settings);
            inner_converged &= r.converged;
            Sample {
                value: r.value,
                aux: r.error_estimate,
                cost: r.evaluations,
            }
        },
        settings_outer,
    );

    IntegralResult {
        value: outer.value,
        error_estimate: outer.error + outer.aux.abs(),
        evaluations: outer.evaluations,
        converged: outer.converged && inner_converged,
    }
}
