//! Permittivity, permeability, and atomic polarizability models on the
//! imaginary frequency axis.
//!
//! Every model is causal and evaluates to a real number ≥ 1 for ξ > 0 (and
//! is monotonically nonincreasing in ξ), which is what keeps the force
//! integrands smooth and sign-definite. Only such closed-form models are
//! admitted; importing tabulated ε(iξ) data is a deliberate extension point,
//! not supported here, so that these invariants stay provable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One Lorentz oscillator contributing S·ω₀²/(ω₀² + ξ² + γξ) on the
/// imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzOscillator {
    /// Dimensionless oscillator strength S ≥ 0.
    pub strength: f64,
    /// Resonance frequency ω₀ > 0 (rad/s).
    pub resonance: f64,
    /// Damping rate γ ≥ 0 (rad/s).
    pub damping: f64,
}

impl LorentzOscillator {
    pub fn undamped(strength: f64, resonance: f64) -> Self {
        Self {
            strength,
            resonance,
            damping: 0.0,
        }
    }
}

/// A causal response model evaluated on the imaginary frequency axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DispersionSpec {
    /// Frequency-independent value ≥ 1.
    Constant(f64),
    /// Drude metal: 1 + ωp²/(ξ² + γξ). Diverges at ξ = 0.
    Drude { plasma_frequency: f64, damping: f64 },
    /// Collisionless plasma: 1 + ωp²/ξ². Diverges at ξ = 0.
    Plasma { plasma_frequency: f64 },
    /// Sum of Lorentz oscillators: 1 + Σⱼ Sⱼωⱼ²/(ωⱼ² + ξ² + γⱼξ).
    LorentzSum(Vec<LorentzOscillator>),
}

impl DispersionSpec {
    pub fn vacuum() -> Self {
        DispersionSpec::Constant(1.0)
    }

    /// Checks the parameter constraints of the variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            DispersionSpec::Constant(v) => {
                if !v.is_finite() || *v < 1.0 {
                    return Err(Error::InvalidSpec(format!(
                        "constant response must be a finite value >= 1, got {v}"
                    )));
                }
            }
            DispersionSpec::Drude {
                plasma_frequency,
                damping,
            } => {
                if !(plasma_frequency.is_finite() && *plasma_frequency > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "Drude plasma frequency must be finite and > 0, got {plasma_frequency}"
                    )));
                }
                if !(damping.is_finite() && *damping >= 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "Drude damping must be finite and >= 0, got {damping}"
                    )));
                }
            }
            DispersionSpec::Plasma { plasma_frequency } => {
                if !(plasma_frequency.is_finite() && *plasma_frequency > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "plasma frequency must be finite and > 0, got {plasma_frequency}"
                    )));
                }
            }
            DispersionSpec::LorentzSum(oscillators) => {
                for (i, osc) in oscillators.iter().enumerate() {
                    if !(osc.strength.is_finite() && osc.strength >= 0.0) {
                        return Err(Error::InvalidSpec(format!(
                            "oscillator {i}: strength must be finite and >= 0, got {}",
                            osc.strength
                        )));
                    }
                    if !(osc.resonance.is_finite() && osc.resonance > 0.0) {
                        return Err(Error::InvalidSpec(format!(
                            "oscillator {i}: resonance must be finite and > 0, got {}",
                            osc.resonance
                        )));
                    }
                    if !(osc.damping.is_finite() && osc.damping >= 0.0) {
                        return Err(Error::InvalidSpec(format!(
                            "oscillator {i}: damping must be finite and >= 0, got {}",
                            osc.damping
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates the model at imaginary frequency iξ, ξ ≥ 0 (rad/s).
    ///
    /// Drude and plasma variants have no finite static value and error at
    /// ξ = 0; every variant is real and ≥ 1 for ξ > 0.
    pub fn eval(&self, xi: f64) -> Result<f64> {
        debug_assert!(xi >= 0.0, "imaginary frequency must be >= 0");
        match self {
            DispersionSpec::Constant(v) => Ok(*v),
            DispersionSpec::Drude {
                plasma_frequency,
                damping,
            } => {
                if xi == 0.0 {
                    return Err(Error::StaticValueUndefined { model: "Drude" });
                }
                Ok(1.0 + plasma_frequency * plasma_frequency / (xi * (xi + damping)))
            }
            DispersionSpec::Plasma { plasma_frequency } => {
                if xi == 0.0 {
                    return Err(Error::StaticValueUndefined { model: "plasma" });
                }
                let r = plasma_frequency / xi;
                Ok(1.0 + r * r)
            }
            DispersionSpec::LorentzSum(oscillators) => {
                let mut value = 1.0;
                for osc in oscillators {
                    let w2 = osc.resonance * osc.resonance;
                    value += osc.strength * w2 / (w2 + xi * (xi + osc.damping));
                }
                Ok(value)
            }
        }
    }

    /// ξ → 0 limit, if finite.
    pub fn static_value(&self) -> Result<f64> {
        match self {
            DispersionSpec::Constant(v) => Ok(*v),
            DispersionSpec::Drude { .. } => Err(Error::StaticValueUndefined { model: "Drude" }),
            DispersionSpec::Plasma { .. } => Err(Error::StaticValueUndefined { model: "plasma" }),
            DispersionSpec::LorentzSum(oscillators) => {
                Ok(1.0 + oscillators.iter().map(|o| o.strength).sum::<f64>())
            }
        }
    }

    /// Largest resonance/plasma frequency of the model, if any; used only as
    /// a transparency-scale diagnostic.
    pub fn largest_frequency_scale(&self) -> Option<f64> {
        match self {
            DispersionSpec::Constant(_) => None,
            DispersionSpec::Drude {
                plasma_frequency, ..
            }
            | DispersionSpec::Plasma { plasma_frequency } => Some(*plasma_frequency),
            DispersionSpec::LorentzSum(oscillators) => oscillators
                .iter()
                .map(|o| o.resonance)
                .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w)))),
        }
    }

    fn is_vacuum(&self) -> bool {
        matches!(self, DispersionSpec::Constant(v) if *v == 1.0)
    }
}

/// Static (ξ → 0) values of a material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticValues {
    pub eps0: f64,
    pub mu0: f64,
    /// n₀ = √(ε₀μ₀).
    pub n0: f64,
}

/// Paired permittivity and permeability specs; n²(iξ) = ε(iξ)·μ(iξ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub eps: DispersionSpec,
    pub mu: DispersionSpec,
}

impl Material {
    pub fn new(eps: DispersionSpec, mu: DispersionSpec) -> Self {
        Self { eps, mu }
    }

    pub fn vacuum() -> Self {
        Self::new(DispersionSpec::vacuum(), DispersionSpec::vacuum())
    }

    /// Nondispersive material with the given ε and μ.
    pub fn constant(eps: f64, mu: f64) -> Self {
        Self::new(DispersionSpec::Constant(eps), DispersionSpec::Constant(mu))
    }

    /// Dilute medium of number density `n` (1/m³) built from atoms of the
    /// given polarizability: ε = 1 + 4πNα_e(iξ), μ = 1 + 4πNα_m(iξ), so
    /// n²(iξ) − 1 agrees with 4πNα(iξ) to first order in the density.
    pub fn dilute(number_density: f64, atom: &AtomPolarizability) -> Self {
        let osc = |p: &PolarizabilityOscillator| {
            if p.alpha0 == 0.0 {
                DispersionSpec::vacuum()
            } else {
                DispersionSpec::LorentzSum(vec![LorentzOscillator::undamped(
                    4.0 * std::f64::consts::PI * number_density * p.alpha0,
                    p.omega0,
                )])
            }
        };
        Self::new(osc(&atom.electric), osc(&atom.magnetic))
    }

    pub fn validate(&self) -> Result<()> {
        self.eps.validate()?;
        self.mu.validate()
    }

    /// ε(iξ).
    pub fn eval_eps(&self, xi: f64) -> Result<f64> {
        self.eps.eval(xi)
    }

    /// μ(iξ).
    pub fn eval_mu(&self, xi: f64) -> Result<f64> {
        self.mu.eval(xi)
    }

    /// n²(iξ) = ε(iξ)·μ(iξ) ≥ 1.
    pub fn n_sq(&self, xi: f64) -> Result<f64> {
        Ok(self.eval_eps(xi)? * self.eval_mu(xi)?)
    }

    /// (ε₀, μ₀, n₀), if the ξ → 0 limits are finite.
    pub fn static_values(&self) -> Result<StaticValues> {
        let eps0 = self.eps.static_value()?;
        let mu0 = self.mu.static_value()?;
        Ok(StaticValues {
            eps0,
            mu0,
            n0: (eps0 * mu0).sqrt(),
        })
    }

    /// True for the exact vacuum material (ε = μ = 1 identically).
    pub fn is_vacuum(&self) -> bool {
        self.eps.is_vacuum() && self.mu.is_vacuum()
    }

    /// Largest dispersion frequency scale of either response, if any.
    pub fn largest_frequency_scale(&self) -> Option<f64> {
        match (
            self.eps.largest_frequency_scale(),
            self.mu.largest_frequency_scale(),
        ) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

/// One polarizability oscillator: α(iξ) = α₀ω₀²/(ω₀² + ξ²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarizabilityOscillator {
    /// Static polarizability α₀ ≥ 0 in volume units (m³).
    pub alpha0: f64,
    /// Resonance frequency ω₀ > 0 (rad/s).
    pub omega0: f64,
}

impl PolarizabilityOscillator {
    pub fn eval(&self, xi: f64) -> f64 {
        let w2 = self.omega0 * self.omega0;
        self.alpha0 * w2 / (w2 + xi * xi)
    }
}

/// Electric plus magnetic one-oscillator atomic polarizability,
/// α(iξ) = α_e(iξ) + α_m(iξ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomPolarizability {
    pub electric: PolarizabilityOscillator,
    pub magnetic: PolarizabilityOscillator,
}

impl AtomPolarizability {
    pub fn new(electric: PolarizabilityOscillator, magnetic: PolarizabilityOscillator) -> Self {
        Self { electric, magnetic }
    }

    /// Purely electric atom (α_m ≡ 0).
    pub fn electric(alpha0: f64, omega0: f64) -> Self {
        Self {
            electric: PolarizabilityOscillator { alpha0, omega0 },
            magnetic: PolarizabilityOscillator {
                alpha0: 0.0,
                omega0,
            },
        }
    }

    /// Purely magnetic atom (α_e ≡ 0).
    pub fn magnetic(alpha0: f64, omega0: f64) -> Self {
        Self {
            electric: PolarizabilityOscillator {
                alpha0: 0.0,
                omega0,
            },
            magnetic: PolarizabilityOscillator { alpha0, omega0 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, osc) in [("electric", &self.electric), ("magnetic", &self.magnetic)] {
            if !(osc.alpha0.is_finite() && osc.alpha0 >= 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "{name} polarizability alpha0 must be finite and >= 0, got {}",
                    osc.alpha0
                )));
            }
            if osc.alpha0 > 0.0 && !(osc.omega0.is_finite() && osc.omega0 > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "{name} polarizability resonance must be finite and > 0, got {}",
                    osc.omega0
                )));
            }
        }
        Ok(())
    }

    /// α(iξ) = α_e(iξ) + α_m(iξ) > 0 (for a nonzero atom).
    pub fn eval(&self, xi: f64) -> f64 {
        self.electric.eval(xi) + self.magnetic.eval(xi)
    }

    /// α(0) = α_e0 + α_m0.
    pub fn static_total(&self) -> f64 {
        self.electric.alpha0 + self.magnetic.alpha0
    }

    /// Largest resonance of either oscillator (transparency diagnostic).
    pub fn largest_frequency_scale(&self) -> Option<f64> {
        let scales: Vec<f64> = [&self.electric, &self.magnetic]
            .iter()
            .filter(|o| o.alpha0 > 0.0)
            .map(|o| o.omega0)
            .collect();
        scales
            .into_iter()
            .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w))))
    }
}
