//! Vacuum Lorentz-force Casimir forces in material planar cavities.
//!
//! This crate computes the force on a slab inside a magnetodielectric planar
//! cavity from Lifshitz-type integrals over imaginary frequency, split into
//! its two physically distinct parts:
//!
//! - a **medium-screened Casimir force** f⁽¹⁾, in which the TE/TM
//!   contributions are multiplied by μ and 1/ε of the cavity medium, and
//! - a **medium-assisted force** f⁽²⁾ ∝ n² − 1, present only when the cavity
//!   holds a material medium; it also gives the force on the medium itself
//!   and, for dilute media, the atom-mirror force.
//!
//! Closed-form ideal-mirror results ([`ideal`]) act as built-in oracles for
//! the numerical routes, and atom-mirror forces come in full, nonretarded
//! (Coulomb-type 1/z²), and far-field (screened Casimir-Polder 1/z⁵)
//! regimes, alongside the Zhou-Spruch comparison forms.
//!
//! # Quick start
//!
//! ```
//! use casimir_lorentz::forces::{force_split, CavityConfig};
//! use casimir_lorentz::materials::Material;
//! use casimir_lorentz::optics::{MirrorSpec, SlabSpec};
//! use casimir_lorentz::quadrature::QuadratureSettings;
//!
//! // Ideally conducting slab facing an ideally conducting mirror across
//! // 1 µm of vacuum: the classic Casimir geometry.
//! let config = CavityConfig::semi_infinite(
//!     Material::vacuum(),
//!     SlabSpec::IdealConductive,
//!     MirrorSpec::IdealConductive,
//!     1e-6,
//! );
//! let settings = QuadratureSettings::default().with_rel_tol(1e-6);
//! let f = force_split(&config, &settings).unwrap();
//! let coefficient = f.coefficient(f.total()); // f·d⁴/(ħc)
//! assert!((coefficient - std::f64::consts::PI.powi(2) / 240.0).abs() < 1e-4);
//! ```
//!
//! Runnable examples for every major capability live in `examples/`; the
//! `casimir-lorentz` binary exposes the same functionality as subcommands
//! driven by a TOML config file (see [`config`]).
//!
//! Units: distances in m, frequencies in rad/s, per-area forces in Pa, atom
//! forces in N, polarizabilities in m³ (Gaussian volume units; the dilute
//! relation is n² − 1 = 4πNα). Positive slab forces point toward mirror 2;
//! positive atom/medium forces mean attraction toward the mirror.

pub mod config;
pub mod constants;
pub mod error;
pub mod forces;
pub mod ideal;
pub mod materials;
pub mod optics;
pub mod quadrature;
pub mod validate;

pub use error::{Error, Result};
