//! Error types shared by the physics modules.

use thiserror::Error;

/// Errors from material evaluation, optics, and force computations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A dispersion model diverges at zero frequency (Drude, plasma).
    #[error("static value undefined: {model} model diverges at xi = 0")]
    StaticValueUndefined { model: &'static str },

    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A spec fails its structural invariants (empty stack, bad thickness, ...).
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// The multiple-reflection denominator dropped below the guard threshold.
    /// Does not occur for passive media; guards the division in the cavity
    /// round-trip expressions.
    #[error("cavity resonance/degenerate denominator: N = {value:.6e}")]
    DegenerateDenominator { value: f64 },

    /// Medium force operations require the slab material to equal the cavity
    /// medium.
    #[error("configuration error: slab material must be index-matched to the cavity medium")]
    NotIndexMatched,
}

pub type Result<T> = std::result::Result<T, Error>;
