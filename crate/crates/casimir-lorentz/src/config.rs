//! Run configuration: TOML schema, validation, parameter sweeps, and
//! structured output.
//!
//! Configs are TOML with unknown keys rejected, and every physical quantity
//! carries its unit in the key name (`_m`, `_rad_per_s`, `_m3`). A distance
//! of `inf` removes that mirror (exact semi-infinite geometry). Outputs are
//! CSV with a commented header block (config hash, tolerances, unit
//! conventions) or JSON lines for machine consumption; identical configs
//! produce bit-identical output.

use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::forces::{
    atom_force_far, atom_force_full, atom_force_nonretarded, force_split, medium_force_density,
    zs_atom_force, AtomForceRegime, AtomForceResult, CavityConfig, Side,
};
use crate::ideal::{ideal_f1, ideal_f2, IdealConfigTag, IdealKind};
use crate::materials::{
    AtomPolarizability, DispersionSpec, LorentzOscillator, Material, PolarizabilityOscillator,
};
use crate::optics::{Layer, MirrorSpec, SlabSpec};
use crate::quadrature::QuadratureSettings;

/// Configuration errors, split into schema violations (malformed input,
/// missing/unknown keys, bad sweep bounds) and physically invalid values
/// (negative thickness, ε < 1, ...).
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config schema error: {0}")]
    Schema(String),
    #[error("invalid physical configuration: {0}")]
    Physical(String),
}

impl From<crate::Error> for ConfigError {
    fn from(e: crate::Error) -> Self {
        ConfigError::Physical(e.to_string())
    }
}

fn schema(msg: impl Into<String>) -> ConfigError {
    ConfigError::Schema(msg.into())
}

/// What the run computes; must match the CLI subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    SlabForce,
    Ideal,
    Density,
    AtomForce,
    ZsCompare,
    Validate,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::SlabForce => "slab-force",
            Mode::Ideal => "ideal",
            Mode::Density => "density",
            Mode::AtomForce => "atom-force",
            Mode::ZsCompare => "zs-compare",
            Mode::Validate => "validate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", tag = "model")]
pub enum DispersionSection {
    Constant {
        value: f64,
    },
    Drude {
        plasma_frequency_rad_per_s: f64,
        #[serde(default)]
        damping_rad_per_s: f64,
    },
    Plasma {
        plasma_frequency_rad_per_s: f64,
    },
    Lorentz {
        oscillators: Vec<OscillatorSection>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorSection {
    pub strength: f64,
    pub resonance_rad_per_s: f64,
    #[serde(default)]
    pub damping_rad_per_s: f64,
}

impl DispersionSection {
    fn vacuum() -> Self {
        DispersionSection::Constant { value: 1.0 }
    }

    fn to_spec(&self) -> DispersionSpec {
        match self {
            DispersionSection::Constant { value } => DispersionSpec::Constant(*value),
            DispersionSection::Drude {
                plasma_frequency_rad_per_s,
                damping_rad_per_s,
            } => DispersionSpec::Drude {
                plasma_frequency: *plasma_frequency_rad_per_s,
                damping: *damping_rad_per_s,
            },
            DispersionSection::Plasma {
                plasma_frequency_rad_per_s,
            } => DispersionSpec::Plasma {
                plasma_frequency: *plasma_frequency_rad_per_s,
            },
            DispersionSection::Lorentz { oscillators } => DispersionSpec::LorentzSum(
                oscillators
                    .iter()
                    .map(|o| LorentzOscillator {
                        strength: o.strength,
                        resonance: o.resonance_rad_per_s,
                        damping: o.damping_rad_per_s,
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSection {
    pub eps: DispersionSection,
    #[serde(default = "DispersionSection::vacuum")]
    pub mu: DispersionSection,
}

impl MaterialSection {
    fn vacuum() -> Self {
        Self {
            eps: DispersionSection::vacuum(),
            mu: DispersionSection::vacuum(),
        }
    }

    fn to_material(&self) -> Material {
        Material::new(self.eps.to_spec(), self.mu.to_spec())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", tag = "kind")]
pub enum MirrorSection {
    IdealConductive,
    IdealPermeable,
    Stack { layers: Vec<LayerSection> },
}

/// A stack layer; omit `thickness_m` on the last layer (the half-space).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSection {
    pub material: MaterialSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thickness_m: Option<f64>,
}

impl MirrorSection {
    fn to_spec(&self) -> Result<MirrorSpec, ConfigError> {
        match self {
            MirrorSection::IdealConductive => Ok(MirrorSpec::IdealConductive),
            MirrorSection::IdealPermeable => Ok(MirrorSpec::IdealPermeable),
            MirrorSection::Stack { layers } => {
                let layers = layers
                    .iter()
                    .map(|l| {
                        Layer::new(
                            l.material.to_material(),
                            l.thickness_m.unwrap_or(f64::INFINITY),
                        )
                    })
                    .collect();
                Ok(MirrorSpec::stack(layers)?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", tag = "kind")]
pub enum SlabSection {
    Real {
        material: MaterialSection,
        thickness_m: f64,
    },
    IdealConductive,
    IdealPermeable,
}

impl SlabSection {
    fn to_spec(&self) -> SlabSpec {
        match self {
            SlabSection::Real {
                material,
                thickness_m,
            } => SlabSpec::Real {
                material: material.to_material(),
                thickness: *thickness_m,
            },
            SlabSection::IdealConductive => SlabSpec::IdealConductive,
            SlabSection::IdealPermeable => SlabSpec::IdealPermeable,
        }
    }
}

/// Cavity geometry for `slab-force` and `density` modes. A swept distance
/// may be omitted; `inf` removes that mirror.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2_m: Option<f64>,
    #[serde(default = "MaterialSection::vacuum")]
    pub medium: MaterialSection,
    pub slab: SlabSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror1: Option<MirrorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror2: Option<MirrorSection>,
}

impl CavitySection {
    /// Builds the cavity with the given distances (already merged with the
    /// sweep variable). A missing mirror behind an infinite gap becomes an
    /// inert half-space of the cavity medium.
    fn to_config(&self, d1: f64, d2: f64) -> Result<CavityConfig, ConfigError> {
        let medium = self.medium.to_material();
        let mirror_for = |section: &Option<MirrorSection>, d: f64, name: &str| match section {
            Some(s) => s.to_spec(),
            None if d == f64::INFINITY => Ok(MirrorSpec::half_space(medium.clone())),
            None => Err(schema(format!(
                "cavity.{name} is required when the corresponding gap is finite"
            ))),
        };
        let config = CavityConfig {
            mirror1: mirror_for(&self.mirror1, d1, "mirror1")?,
            mirror2: mirror_for(&self.mirror2, d2, "mirror2")?,
            cavity_medium: medium,
            slab: self.slab.to_spec(),
            d1,
            d2,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Semi-infinite mirror geometry for the atom-force modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSection {
    pub mirror: MirrorSection,
    #[serde(default = "MaterialSection::vacuum")]
    pub medium: MaterialSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSection {
    #[serde(default)]
    pub alpha_e0_m3: f64,
    #[serde(default = "one")]
    pub omega_e_rad_per_s: f64,
    #[serde(default)]
    pub alpha_m0_m3: f64,
    #[serde(default = "one")]
    pub omega_m_rad_per_s: f64,
}

fn one() -> f64 {
    1.0
}

impl AtomSection {
    fn to_atom(&self) -> AtomPolarizability {
        AtomPolarizability::new(
            PolarizabilityOscillator {
                alpha0: self.alpha_e0_m3,
                omega0: self.omega_e_rad_per_s,
            },
            PolarizabilityOscillator {
                alpha0: self.alpha_m0_m3,
                omega0: self.omega_m_rad_per_s,
            },
        )
    }
}

/// Closed-form ideal-configuration mode: static media, conductive/permeable
/// slab and mirror kinds. Omit `mirror1` for the semi-infinite geometry; the
/// fixed distance opposite the swept one defaults to infinite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSection {
    #[serde(default = "one")]
    pub eps0: f64,
    #[serde(default = "one")]
    pub mu0: f64,
    pub slab: IdealKind,
    pub mirror2: IdealKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror1: Option<IdealKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2_m: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensitySection {
    #[serde(default = "default_side")]
    pub side: Side,
}

fn default_side() -> Side {
    Side::Mirror2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepVariable {
    D1,
    D2,
    Z,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::D1 => "d1",
            SweepVariable::D2 => "d2",
            SweepVariable::Z => "z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepSpacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start_m: f64,
    pub stop_m: f64,
    pub points: u32,
    #[serde(default = "default_spacing")]
    pub spacing: SweepSpacing,
}

fn default_spacing() -> SweepSpacing {
    SweepSpacing::Log
}

impl SweepSpec {
    fn validate(&self) -> Result<(), ConfigError> {
        if self.points < 1 {
            return Err(schema("sweep.points must be >= 1"));
        }
        if self.start_m.is_nan() || self.stop_m.is_nan() || self.start_m >= self.stop_m {
            return Err(schema(format!(
                "sweep.start_m must be < sweep.stop_m, got {} >= {}",
                self.start_m, self.stop_m
            )));
        }
        if !(self.start_m > 0.0 && self.stop_m.is_finite()) {
            return Err(ConfigError::Physical(format!(
                "sweep bounds must be finite and > 0 m, got [{}, {}]",
                self.start_m, self.stop_m
            )));
        }
        Ok(())
    }

    /// The sweep grid, in order.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points as usize;
        if n == 1 {
            return vec![self.start_m];
        }
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                match self.spacing {
                    SweepSpacing::Linear => self.start_m + f * (self.stop_m - self.start_m),
                    SweepSpacing::Log => {
                        (self.start_m.ln() + f * (self.stop_m.ln() - self.start_m.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default)]
    pub abs_tol: f64,
    #[serde(default = "default_max_evaluations")]
    pub max_evaluations: u64,
}

fn default_rel_tol() -> f64 {
    1e-8
}

fn default_max_evaluations() -> u64 {
    1_000_000
}

impl Default for QuadratureSection {
    fn default() -> Self {
        Self {
            rel_tol: default_rel_tol(),
            abs_tol: 0.0,
            max_evaluations: default_max_evaluations(),
        }
    }
}

impl QuadratureSection {
    pub fn to_settings(self) -> QuadratureSettings {
        QuadratureSettings::default()
            .with_rel_tol(self.rel_tol)
            .with_abs_tol(self.abs_tol)
            .with_max_evaluations(self.max_evaluations)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitsChoice {
    Si,
    Coef,
    Both,
}

impl UnitsChoice {
    pub fn si(self) -> bool {
        matches!(self, UnitsChoice::Si | UnitsChoice::Both)
    }

    pub fn coef(self) -> bool {
        matches!(self, UnitsChoice::Coef | UnitsChoice::Both)
    }
}

impl fmt::Display for UnitsChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitsChoice::Si => "si",
            UnitsChoice::Coef => "coef",
            UnitsChoice::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_units")]
    pub units: UnitsChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

fn default_units() -> UnitsChoice {
    UnitsChoice::Both
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            units: default_units(),
            path: None,
            format: default_format(),
        }
    }
}

/// A fully parsed and validated run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cavity: Option<CavitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom: Option<AtomSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensitySection>,
    /// Regime for atom-force and zs-compare modes (default: full).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<AtomForceRegime>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub quadrature: QuadratureSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// Parses and validates a TOML run configuration. Unknown keys are rejected
/// with the offending key named; physical invalidity is a distinct error
/// class from schema violations.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = toml::from_str(text).map_err(|e| schema(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

/// Renders a config back to TOML; `parse_config(render(c)) == c`.
pub fn render(config: &RunConfig) -> String {
    toml::to_string_pretty(config).expect("RunConfig serializes to TOML")
}

/// Short hash of the canonical rendering, recorded in output headers.
pub fn config_hash(config: &RunConfig) -> String {
    let mut hasher = Sha256::new();
    hasher.update(render(config).as_bytes());
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.quadrature.to_settings().validate()?;

        let sweep = || {
            self.sweep
                .as_ref()
                .ok_or_else(|| schema(format!("mode {} requires a [sweep] section", self.mode)))
        };
        let require_z = |sweep: &SweepSpec| {
            if sweep.variable != SweepVariable::Z {
                return Err(schema(format!(
                    "mode {} sweeps over z, got sweep.variable = {}",
                    self.mode, sweep.variable
                )));
            }
            Ok(())
        };

        match self.mode {
            Mode::Validate => Ok(()),
            Mode::SlabForce => {
                let sweep = sweep()?;
                sweep.validate()?;
                if sweep.variable == SweepVariable::Z {
                    return Err(schema(
                        "mode slab-force sweeps over d1 or d2, got sweep.variable = z",
                    ));
                }
                let cavity = self
                    .cavity
                    .as_ref()
                    .ok_or_else(|| schema("mode slab-force requires a [cavity] section"))?;
                let (d1, d2) = self.fixed_distances(cavity, sweep)?;
                // Probe the configuration once at the sweep endpoints.
                let (d1, d2) = match sweep.variable {
                    SweepVariable::D1 => (sweep.start_m, d2),
                    _ => (d1, sweep.stop_m),
                };
                cavity.to_config(d1, d2)?;
                Ok(())
            }
            Mode::Density => {
                let sweep = sweep()?;
                sweep.validate()?;
                require_z(sweep)?;
                let cavity = self
                    .cavity
                    .as_ref()
                    .ok_or_else(|| schema("mode density requires a [cavity] section"))?;
                let d1 = cavity
                    .d1_m
                    .ok_or_else(|| schema("density mode requires cavity.d1_m"))?;
                let d2 = cavity
                    .d2_m
                    .ok_or_else(|| schema("density mode requires cavity.d2_m"))?;
                let config = cavity.to_config(d1, d2)?;
                let matched = matches!(&config.slab, SlabSpec::Real { material, .. }
                    if *material == config.cavity_medium);
                if !matched {
                    return Err(ConfigError::Physical(
                        "density mode requires an index-matched slab (slab material equal to the \
                         cavity medium)"
                            .into(),
                    ));
                }
                Ok(())
            }
            Mode::Ideal => {
                let sweep = sweep()?;
                sweep.validate()?;
                if sweep.variable == SweepVariable::Z {
                    return Err(schema(
                        "mode ideal sweeps over d1 or d2, got sweep.variable = z",
                    ));
                }
                let ideal = self
                    .ideal
                    .as_ref()
                    .ok_or_else(|| schema("mode ideal requires an [ideal] section"))?;
                if !(ideal.eps0 >= 1.0
                    && ideal.mu0 >= 1.0
                    && ideal.eps0.is_finite()
                    && ideal.mu0.is_finite())
                {
                    return Err(ConfigError::Physical(format!(
                        "ideal static values must be finite and >= 1, got eps0 = {}, mu0 = {}",
                        ideal.eps0, ideal.mu0
                    )));
                }
                for (name, d) in [("d1_m", ideal.d1_m), ("d2_m", ideal.d2_m)] {
                    if let Some(d) = d {
                        if d.is_nan() || d <= 0.0 {
                            return Err(ConfigError::Physical(format!(
                                "ideal.{name} must be > 0 m, got {d}"
                            )));
                        }
                    }
                }
                if sweep.variable == SweepVariable::D1 && ideal.mirror1.is_none() {
                    return Err(schema("sweeping d1 in ideal mode requires ideal.mirror1"));
                }
                Ok(())
            }
            Mode::AtomForce | Mode::ZsCompare => {
                let sweep = sweep()?;
                sweep.validate()?;
                require_z(sweep)?;
                let surface = self.surface.as_ref().ok_or_else(|| {
                    schema(format!("mode {} requires a [surface] section", self.mode))
                })?;
                let atom_section = self.atom.as_ref().ok_or_else(|| {
                    schema(format!("mode {} requires an [atom] section", self.mode))
                })?;
                let mirror = surface.mirror.to_spec()?;
                let medium = surface.medium.to_material();
                let atom = atom_section.to_atom();
                mirror.validate().map_err(ConfigError::from)?;
                medium.validate().map_err(ConfigError::from)?;
                atom.validate().map_err(ConfigError::from)?;
                if atom.static_total() <= 0.0 {
                    return Err(ConfigError::Physical(
                        "atom polarizability must be nonzero for atom-force modes".into(),
                    ));
                }
                if self.regime.unwrap_or(AtomForceRegime::Full) == AtomForceRegime::Far {
                    // Far forms need static values of medium and mirror.
                    medium.static_values().map_err(ConfigError::from)?;
                    mirror.static_evaluable().map_err(ConfigError::from)?;
                }
                Ok(())
            }
        }
    }

    fn fixed_distances(
        &self,
        cavity: &CavitySection,
        sweep: &SweepSpec,
    ) -> Result<(f64, f64), ConfigError> {
        let d1 = match sweep.variable {
            SweepVariable::D1 => f64::NAN, // replaced per point
            _ => cavity
                .d1_m
                .ok_or_else(|| schema("cavity.d1_m is required (use inf to remove mirror 1)"))?,
        };
        let d2 = match sweep.variable {
            SweepVariable::D2 => f64::NAN,
            _ => cavity
                .d2_m
                .ok_or_else(|| schema("cavity.d2_m is required (use inf to remove mirror 2)"))?,
        };
        Ok((d1, d2))
    }
}

/// One output cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Float(v) => write!(f, "{v:e}"),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
        }
    }
}

impl Cell {
    fn to_json(self) -> serde_json::Value {
        match self {
            Cell::Float(v) if v.is_finite() => serde_json::Number::from_f64(v)
                .map_or(serde_json::Value::Null, serde_json::Value::Number),
            Cell::Float(_) => serde_json::Value::Null,
            Cell::Int(v) => serde_json::Value::Number(v.into()),
            Cell::Bool(v) => serde_json::Value::Bool(v),
        }
    }
}

/// A sweep result: named columns, one row per sweep point, and the commented
/// metadata block for the CSV header.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub comments: Vec<(String, String)>,
    /// Number of rows whose quadrature failed to converge.
    pub unconverged_points: usize,
}

impl SweepTable {
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (key, value) in &self.comments {
            writeln!(w, "# {key} = {value}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_jsonl<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for row in &self.rows {
            let mut record = serde_json::Map::new();
            for (name, cell) in self.columns.iter().zip(row) {
                record.insert(name.clone(), cell.to_json());
            }
            writeln!(w, "{}", serde_json::Value::Object(record))?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, w: &mut W, format: OutputFormat) -> io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(w),
            OutputFormat::Jsonl => self.write_jsonl(w),
        }
    }
}

struct TableBuilder {
    columns: Vec<String>,
    comments: Vec<(String, String)>,
}

impl TableBuilder {
    fn new(config: &RunConfig) -> Self {
        let q = &config.quadrature;
        Self {
            columns: Vec::new(),
            comments: vec![
                (
                    "generator".into(),
                    format!("casimir-lorentz v{}", env!("CARGO_PKG_VERSION")),
                ),
                ("config_hash".into(), config_hash(config)),
                ("mode".into(), config.mode.to_string()),
                ("rel_tol".into(), format!("{:e}", q.rel_tol)),
                ("abs_tol".into(), format!("{:e}", q.abs_tol)),
                ("max_evaluations".into(), q.max_evaluations.to_string()),
                ("units".into(), config.output.units.to_string()),
                (
                    "conventions".into(),
                    "per-area forces in Pa, positive toward mirror 2; atom/medium forces in N \
                     (N/m^3 for densities), positive toward the mirror; coefficients \
                     C = f*d_ref^4/(hbar*c)"
                        .into(),
                ),
            ],
        }
    }

    fn col(&mut self, name: impl Into<String>) {
        self.columns.push(name.into());
    }
}

const HBARC: f64 = HBAR * SPEED_OF_LIGHT;

/// Runs the configured sweep and returns one record per sweep point, in
/// sweep order. Per-point quadrature failures are recorded in-row (the
/// `converged` column) and the run continues.
pub fn run_sweep(config: &RunConfig) -> Result<SweepTable, ConfigError> {
    config.validate()?;
    match config.mode {
        Mode::SlabForce => run_slab_force(config),
        Mode::Ideal => run_ideal(config),
        Mode::Density => run_density(config),
        Mode::AtomForce => run_atom_force(config),
        Mode::ZsCompare => run_zs_compare(config),
        Mode::Validate => Err(schema(
            "validate mode has no sweep; run the validate subcommand (or validate::run_all)",
        )),
    }
}

fn run_slab_force(config: &RunConfig) -> Result<SweepTable, ConfigError> {
    let cavity = config.cavity.as_ref().expect("validated");
    let sweep = config.sweep.as_ref().expect("validated");
    let settings = config.quadrature.to_settings();
    let units = config.output.units;

    let mut b = TableBuilder::new(config);
    b.col(format!("{}_m", sweep.variable));
    if units.si() {
        for name in [
            "total_pa",
            "f1_pa",
            "f2_pa",
            "f1_s_pa",
            "f1_p_pa",
            "f2_s_pa",
            "f2_p_pa",
            "err_f1_pa",
            "err_f2_pa",
        ] {
            b.col(name);
        }
    }
    if units.coef() {
        for name in ["total_coef", "f1_coef", "f2_coef", "d_ref_m"] {
            b.col(name);
        }
    }
    b.col("evaluations");
    b.col("converged");

    let (d1_fixed, d2_fixed) = config.fixed_distances(cavity, sweep)?;
    let rows: Result<Vec<(Vec<Cell>, bool)>, ConfigError> = sweep
        .grid()
        .par_iter()
        .map(|&x| {
            let (d1, d2) = match sweep.variable {
                SweepVariable::D1 => (x, d2_fixed),
                _ => (d1_fixed, x),
            };
            let cav = cavity.to_config(d1, d2)?;
            let f = force_split(&cav, &settings)?;
            let mut row = vec![Cell::Float(x)];
            if units.si() {
                row.extend([
                    Cell::Float(f.total()),
                    Cell::Float(f.f1()),
                    Cell::Float(f.f2()),
                    Cell::Float(f.screened.s.value),
                    Cell::Float(f.screened.p.value),
                    Cell::Float(f.assisted.s.value),
                    Cell::Float(f.assisted.p.value),
                    Cell::Float(f.screened.error()),
                    Cell::Float(f.assisted.error()),
                ]);
            }
            if units.coef() {
                row.extend([
                    Cell::Float(f.coefficient(f.total())),
                    Cell::Float(f.coefficient(f.f1())),
                    Cell::Float(f.coefficient(f.f2())),
                    Cell::Float(f.d_ref),
                ]);
            }
            row.push(Cell::Int(f.evaluations()));
            row.push(Cell::Bool(f.converged()));
            Ok((row, f.converged()))
        })
        .collect();
    Ok(finish_table(b, rows?))
}

fn run_ideal(config: &RunConfig) -> Result<SweepTable, ConfigError> {
    let ideal = config.ideal.as_ref().expect("validated");
    let sweep = config.sweep.as_ref().expect("validated");
    let units = config.output.units;

    let mut b = TableBuilder::new(config);
    b.col(format!("{}_m", sweep.variable));
    if units.si() {
        for name in ["total_pa", "f1_pa", "f2_pa"] {
            b.col(name);
        }
    }
    if units.coef() {
        for name in ["total_coef", "f1_coef", "f2_coef", "d_ref_m"] {
            b.col(name);
        }
    }

    let tag2 = IdealConfigTag::new(ideal.mirror2, ideal.slab);
    let tag1 = ideal.mirror1.map(|m| IdealConfigTag::new(m, ideal.slab));
    let d1_fixed = ideal.d1_m.unwrap_or(f64::INFINITY);
    let d2_fixed = ideal.d2_m.unwrap_or(f64::INFINITY);

    let rows: Vec<(Vec<Cell>, bool)> = sweep
        .grid()
        .iter()
        .map(|&x| {
            let (d1, d2) = match sweep.variable {
                SweepVariable::D1 => (x, d2_fixed),
                _ => (d1_fixed, x),
            };
            let side = |d: f64, tag: Option<IdealConfigTag>| -> (f64, f64) {
                match tag {
                    Some(t) if d.is_finite() => (
                        ideal_f1(d, t, ideal.eps0, ideal.mu0),
                        ideal_f2(d, t, ideal.eps0, ideal.mu0),
                    ),
                    _ => (0.0, 0.0),
                }
            };
            let (f1_2, f2_2) = side(d2, Some(tag2));
            let (f1_1, f2_1) = side(d1, tag1);
            let (f1, f2) = (f1_2 - f1_1, f2_2 - f2_1);
            let d_ref = d1.min(d2);
            let coef = |v: f64| v * d_ref.powi(4) / HBARC;
            let mut row = vec![Cell::Float(x)];
            if units.si() {
                row.extend([Cell::Float(f1 + f2), Cell::Float(f1), Cell::Float(f2)]);
            }
            if units.coef() {
                row.extend([
                    Cell::Float(coef(f1 + f2)),
                    Cell::Float(coef(f1)),
                    Cell::Float(coef(f2)),
                    Cell::Float(d_ref),
                ]);
            }
            (row, true)
        })
        .collect();
    Ok(finish_table(b, rows))
}

fn run_density(config: &RunConfig) -> Result<SweepTable, ConfigError> {
    let cavity = config.cavity.as_ref().expect("validated");
    let sweep = config.sweep.as_ref().expect("validated");
    let side = config.density.as_ref().map_or(default_side(), |d| d.side);
    let settings = config.quadrature.to_settings();

    let mut b = TableBuilder::new(config);
    for name in ["z_m", "density_n_per_m3", "err_n_per_m3"] {
        b.col(name);
    }
    b.col("evaluations");
    b.col("converged");

    let d1 = cavity.d1_m.expect("validated");
    let d2 = cavity.d2_m.expect("validated");
    let cav = cavity.to_config(d1, d2)?;

    let rows: Result<Vec<(Vec<Cell>, bool)>, ConfigError> = sweep
        .grid()
        .par_iter()
        .map(|&z| {
            let r = medium_force_density(z, side, &cav, &settings)?;
            let row = vec![
                Cell::Float(z),
                Cell::Float(r.value),
                Cell::Float(r.error_estimate),
                Cell::Int(r.evaluations),
                Cell::Bool(r.converged),
            ];
            Ok((row, r.converged))
        })
        .collect();
    Ok(finish_table(b, rows?))
}

fn atom_force_at(
    z: f64,
    mirror: &MirrorSpec,
    medium: &Material,
    atom: &AtomPolarizability,
    settings: &QuadratureSettings,
    regime: AtomForceRegime,
) -> Result<AtomForceResult, crate::Error> {
    match regime {
        AtomForceRegime::Full => atom_force_full(z, mirror, medium, atom, settings),
        AtomForceRegime::Nonretarded => atom_force_nonretarded(z, mirror, medium, atom, settings),
        AtomForceRegime::Far => atom_force_far(z, mirror, medium, atom),
    }
}

fn run_atom_force(config: &RunConfig) -> Result<SweepTable, ConfigError> {
    let surface = config.surface.as_ref().expect("validated");
    let atom = config.atom.as_ref().expect("validated").to_atom();
    let sweep = config.sweep.as_ref().expect("validated");
    let regime = config.regime.unwrap_or(AtomForceRegime::Full);
    let settings = config.quadrature.to_settings();
    let units = config.output.units;

    let mirror = surface.mirror.to_spec()?;
    let medium = surface.medium.to_material();

    let mut b = TableBuilder::new(config);
    b.col("z_m");
    if units.si() {
        b.col("f_n");
        b.col("err_n");
    }
    if units.coef() {
        // f·z⁵/(ħcα₀): constant in the far regime.
        b.col("coef_hbar_c_alpha0_z5");
    }
    b.col("evaluations");
    b.col("converged");

    let alpha0 = atom.static_total();
    let rows: Result<Vec<(Vec<Cell>, bool)>, ConfigError> = sweep
        .grid()
        .par_iter()
        .map(|&z| {
            let r = atom_force_at(z, &mirror, &medium, &atom, &settings, regime)?;
            let mut row = vec![Cell::Float(z)];
            if units.si() {
                row.push(Cell::Float(r.value));
                row.push(Cell::Float(r.error));
            }
            if units.coef() {
                row.push(Cell::Float(r.value * z.powi(5) / (HBARC * alpha0)));
            }
            row.push(Cell::Int(r.evaluations));
            row.push(Cell::Bool(r.converged));
            Ok((row, r.converged))
        })
        .collect();
    Ok(finish_table(b, rows?))
}

fn run_zs_compare(config: &RunConfig) -> Result<SweepTable, ConfigError> {
    let surface = config.surface.as_ref().expect("validated");
    let atom = config.atom.as_ref().expect("validated").to_atom();
    let sweep = config.sweep.as_ref().expect("validated");
    let regime = config.regime.unwrap_or(AtomForceRegime::Full);
    let settings = config.quadrature.to_settings();

    let mirror = surface.mirror.to_spec()?;
    let medium = surface.medium.to_material();

    let mut b = TableBuilder::new(config);
    for name in [
        "z_m",
        "f_this_n",
        "f_zs_n",
        "ratio_this_over_zs",
        "err_this_n",
        "err_zs_n",
    ] {
        b.col(name);
    }
    b.col("converged");

    let rows: Result<Vec<(Vec<Cell>, bool)>, ConfigError> = sweep
        .grid()
        .par_iter()
        .map(|&z| {
            let this = atom_force_at(z, &mirror, &medium, &atom, &settings, regime)?;
            let zs = zs_atom_force(z, &mirror, &medium, &atom, &settings, regime)?;
            let converged = this.converged && zs.converged;
            let row = vec![
                Cell::Float(z),
                Cell::Float(this.value),
                Cell::Float(zs.value),
                Cell::Float(this.value / zs.value),
                Cell::Float(this.error),
                Cell::Float(zs.error),
                Cell::Bool(converged),
            ];
            Ok((row, converged))
        })
        .collect();
    Ok(finish_table(b, rows?))
}

fn finish_table(builder: TableBuilder, rows: Vec<(Vec<Cell>, bool)>) -> SweepTable {
    let unconverged_points = rows.iter().filter(|(_, ok)| !ok).count();
    SweepTable {
        columns: builder.columns,
        comments: builder.comments,
        rows: rows.into_iter().map(|(row, _)| row).collect(),
        unconverged_points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDEAL_CONFIG: &str = r#"
mode = "ideal"

[ideal]
slab = "conductive"
mirror2 = "conductive"

[sweep]
variable = "d2"
start_m = 1e-7
stop_m = 1e-5
points = 3
"#;

    #[test]
    fn minimal_ideal_config_fills_defaults() {
        let config = parse_config(IDEAL_CONFIG).unwrap();
        assert_eq!(config.mode, Mode::Ideal);
        assert_eq!(config.quadrature.rel_tol, 1e-8);
        assert_eq!(config.output.units, UnitsChoice::Both);
        let ideal = config.ideal.as_ref().unwrap();
        assert_eq!((ideal.eps0, ideal.mu0), (1.0, 1.0));
    }

    #[test]
    fn unknown_key_is_named() {
        let text = format!("{IDEAL_CONFIG}\n[quadrature]\ntemprature = 300.0\n");
        let err = parse_config(&text).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, ConfigError::Schema(_)));
        assert!(
            msg.contains("temprature"),
            "message must name the key: {msg}"
        );
    }

    #[test]
    fn zero_points_rejected() {
        let text = IDEAL_CONFIG.replace("points = 3", "points = 0");
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Schema(_)));
        assert!(err.to_string().contains("points"));
    }

    #[test]
    fn swapped_bounds_rejected() {
        let text = IDEAL_CONFIG.replace("stop_m = 1e-5", "stop_m = 1e-8");
        assert!(matches!(parse_config(&text), Err(ConfigError::Schema(_))));
    }

    #[test]
    fn negative_thickness_is_a_physical_error() {
        let text = r#"
mode = "slab-force"

[cavity]
d1_m = inf
d2_m = 1e-6
mirror2 = { kind = "ideal-conductive" }
slab = { kind = "real", thickness_m = -1e-7, material = { eps = { model = "constant", value = 2.0 } } }

[sweep]
variable = "d2"
start_m = 1e-7
stop_m = 1e-5
points = 2
"#;
        let err = parse_config(text).unwrap_err();
        assert!(matches!(err, ConfigError::Physical(_)), "got {err}");
    }

    #[test]
    fn roundtrip_parse_render() {
        let config = parse_config(IDEAL_CONFIG).unwrap();
        let rendered = render(&config);
        let reparsed = parse_config(&rendered).unwrap();
        assert_eq!(config, reparsed);

        let slab_force = r#"
mode = "slab-force"

[cavity]
d1_m = inf
d2_m = 1e-6
medium = { eps = { model = "constant", value = 2.0 } }
mirror2 = { kind = "ideal-conductive" }
slab = { kind = "ideal-conductive" }

[sweep]
variable = "d2"
start_m = 1e-7
stop_m = 1e-5
points = 2
spacing = "linear"

[quadrature]
rel_tol = 1e-6

[output]
units = "coef"
format = "jsonl"
"#;
        let config = parse_config(slab_force).unwrap();
        let reparsed = parse_config(&render(&config)).unwrap();
        assert_eq!(config, reparsed);
    }

    #[test]
    fn ideal_sweep_matches_closed_forms() {
        let config = parse_config(IDEAL_CONFIG).unwrap();
        let table = run_sweep(&config).unwrap();
        assert_eq!(table.rows.len(), 3);
        let d_col = table.columns.iter().position(|c| c == "d2_m").unwrap();
        let f1_col = table.columns.iter().position(|c| c == "f1_pa").unwrap();
        for row in &table.rows {
            let (Cell::Float(d), Cell::Float(f1)) = (row[d_col], row[f1_col]) else {
                panic!("unexpected cell types")
            };
            let expected = ideal_f1(d, IdealConfigTag::CC, 1.0, 1.0);
            assert!((f1 - expected).abs() <= 1e-12 * expected.abs());
        }
    }

    #[test]
    fn sweep_grids() {
        let sweep = SweepSpec {
            variable: SweepVariable::D2,
            start_m: 1.0,
            stop_m: 100.0,
            points: 3,
            spacing: SweepSpacing::Log,
        };
        let pts = sweep.grid();
        assert_eq!(pts.len(), 3);
        assert!((pts[1] - 10.0).abs() < 1e-12);

        let sweep = SweepSpec {
            spacing: SweepSpacing::Linear,
            ..sweep
        };
        let pts = sweep.grid();
        assert!((pts[1] - 50.5).abs() < 1e-12);

        let single = SweepSpec { points: 1, ..sweep };
        assert_eq!(single.grid(), vec![1.0]);
    }

    #[test]
    fn output_is_bit_identical_across_runs() {
        let text = r#"
mode = "slab-force"

[cavity]
d1_m = inf
d2_m = 1e-6
mirror2 = { kind = "ideal-conductive" }
slab = { kind = "ideal-conductive" }

[sweep]
variable = "d2"
start_m = 5e-7
stop_m = 2e-6
points = 3

[quadrature]
rel_tol = 1e-6
"#;
        let config = parse_config(text).unwrap();
        let mut out1 = Vec::new();
        run_sweep(&config).unwrap().write_csv(&mut out1).unwrap();
        let mut out2 = Vec::new();
        run_sweep(&config).unwrap().write_csv(&mut out2).unwrap();
        assert_eq!(out1, out2);
        assert!(!out1.is_empty());

        // Vacuum cavity: the f2 column is exactly zero.
        let table = run_sweep(&config).unwrap();
        let f2_col = table.columns.iter().position(|c| c == "f2_pa").unwrap();
        for row in &table.rows {
            assert_eq!(row[f2_col], Cell::Float(0.0));
        }
    }

    #[test]
    fn missing_mode_section_is_schema_error() {
        let text = r#"
mode = "atom-force"

[sweep]
variable = "z"
start_m = 1e-8
stop_m = 1e-6
points = 2
"#;
        let err = parse_config(text).unwrap_err();
        assert!(matches!(err, ConfigError::Schema(_)));
        assert!(err.to_string().contains("surface"));
    }

    #[test]
    fn symmetric_cavity_sweep_changes_sign_at_the_crossing() {
        // Identical mirrors, d1 fixed: the force is antisymmetric about
        // d2 = d1, so a sweep crossing it changes sign.
        let text = r#"
mode = "slab-force"

[cavity]
d1_m = 5e-7
mirror1 = { kind = "ideal-conductive" }
mirror2 = { kind = "ideal-conductive" }
slab = { kind = "ideal-conductive" }

[sweep]
variable = "d2"
start_m = 2.5e-7
stop_m = 1e-6
points = 5

[quadrature]
rel_tol = 1e-6

[output]
units = "si"
"#;
        let config = parse_config(text).unwrap();
        let table = run_sweep(&config).unwrap();
        let total_col = table.columns.iter().position(|c| c == "total_pa").unwrap();
        let first = match table.rows.first().unwrap()[total_col] {
            Cell::Float(v) => v,
            _ => panic!(),
        };
        let last = match table.rows.last().unwrap()[total_col] {
            Cell::Float(v) => v,
            _ => panic!(),
        };
        // d2 < d1 pulls toward mirror 2 (positive); d2 > d1 pushes negative.
        assert!(
            first > 0.0,
            "force at d2 < d1 must be positive, got {first:e}"
        );
        assert!(
            last < 0.0,
            "force at d2 > d1 must be negative, got {last:e}"
        );
    }

    #[test]
    fn jsonl_output_parses() {
        let config = parse_config(IDEAL_CONFIG).unwrap();
        let table = run_sweep(&config).unwrap();
        let mut out = Vec::new();
        table.write_jsonl(&mut out).unwrap();
        for line in String::from_utf8(out).unwrap().lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.get("d2_m").is_some());
        }
    }
}
