//! Closed-form forces on an ideally reflecting slab facing an ideally
//! reflecting mirror across a nondispersive medium (static ε₀, μ₀).
//!
//! These are the elementary limits of the screened (f⁽¹⁾) and
//! medium-assisted (f⁽²⁾) components and serve as oracles for the numerical
//! integration routes. Same-type slab/mirror pairs sum cavity round trips
//! directly (a ζ(4) series); mixed pairs alternate, giving the
//! η(4) = (7/8)ζ(4) factor that shows up below as ∓7/8.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Ideal reflector type: conductive (r^p, r^s) = (+1, −1) or permeable
/// (−1, +1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealKind {
    Conductive,
    Permeable,
}

impl IdealKind {
    /// +1 for conductive, −1 for permeable: the sign of r^q relative to Δ_q,
    /// and the sign of the medium-assisted component for a mirror of this
    /// kind.
    pub fn sign(self) -> f64 {
        match self {
            IdealKind::Conductive => 1.0,
            IdealKind::Permeable => -1.0,
        }
    }

    fn letter(self) -> char {
        match self {
            IdealKind::Conductive => 'c',
            IdealKind::Permeable => 'p',
        }
    }
}

/// One mirror/slab pairing. The two-letter shorthand reads mirror first,
/// slab second: "cp" is a conductive mirror facing a permeable slab.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealConfigTag {
    pub mirror: IdealKind,
    pub slab: IdealKind,
}

impl IdealConfigTag {
    pub const CC: Self = Self {
        mirror: IdealKind::Conductive,
        slab: IdealKind::Conductive,
    };
    pub const CP: Self = Self {
        mirror: IdealKind::Conductive,
        slab: IdealKind::Permeable,
    };
    pub const PC: Self = Self {
        mirror: IdealKind::Permeable,
        slab: IdealKind::Conductive,
    };
    pub const PP: Self = Self {
        mirror: IdealKind::Permeable,
        slab: IdealKind::Permeable,
    };

    pub const ALL: [Self; 4] = [Self::CC, Self::PP, Self::CP, Self::PC];

    pub fn new(mirror: IdealKind, slab: IdealKind) -> Self {
        Self { mirror, slab }
    }

    pub fn same_type(self) -> bool {
        self.mirror == self.slab
    }
}

impl fmt::Display for IdealConfigTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.mirror.letter(), self.slab.letter())
    }
}

impl FromStr for IdealConfigTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = |c: char| match c {
            'c' => Ok(IdealKind::Conductive),
            'p' => Ok(IdealKind::Permeable),
            other => Err(Error::InvalidSpec(format!(
                "ideal tag letters must be 'c' or 'p', got '{other}'"
            ))),
        };
        let mut chars = s.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(m), Some(sl), None) => Ok(Self {
                mirror: kind(m)?,
                slab: kind(sl)?,
            }),
            _ => Err(Error::InvalidSpec(format!(
                "ideal tag must be two letters (mirror, slab), got {s:?}"
            ))),
        }
    }
}

fn sqrt_impedance(eps0: f64, mu0: f64) -> f64 {
    (mu0 / eps0).sqrt()
}

/// Screened component on an ideal slab at distance d from an ideal mirror
/// in a semi-infinite cavity:
/// f⁽¹⁾ = {1 same type, −7/8 mixed}·(ħcπ²/480d⁴)·√(μ₀/ε₀)·(1 + 1/n₀²).
pub fn ideal_f1(d: f64, tag: IdealConfigTag, eps0: f64, mu0: f64) -> f64 {
    let n0_sq = eps0 * mu0;
    let series = if tag.same_type() { 1.0 } else { -7.0 / 8.0 };
    series
        * (HBAR * SPEED_OF_LIGHT * std::f64::consts::PI.powi(2) / (480.0 * d.powi(4)))
        * sqrt_impedance(eps0, mu0)
        * (1.0 + 1.0 / n0_sq)
}

/// Medium-assisted component in the same geometry:
/// f⁽²⁾ = ±{1 same type, 7/8 mixed}·(ħcπ²/1440d⁴)·√(μ₀/ε₀)·(1 − 1/n₀²),
/// sign + for a conductive mirror, − for a permeable one.
pub fn ideal_f2(d: f64, tag: IdealConfigTag, eps0: f64, mu0: f64) -> f64 {
    let n0_sq = eps0 * mu0;
    let series = if tag.same_type() { 1.0 } else { 7.0 / 8.0 };
    tag.mirror.sign()
        * series
        * (HBAR * SPEED_OF_LIGHT * std::f64::consts::PI.powi(2) / (1440.0 * d.powi(4)))
        * sqrt_impedance(eps0, mu0)
        * (1.0 - 1.0 / n0_sq)
}

/// Total ideal force f⁽¹⁾ + f⁽²⁾. For the cc pairing this equals
/// (ħcπ²/720d⁴)·√(μ₀/ε₀)·(2 + 1/n₀²).
pub fn ideal_total(d: f64, tag: IdealConfigTag, eps0: f64, mu0: f64) -> f64 {
    ideal_f1(d, tag, eps0, mu0) + ideal_f2(d, tag, eps0, mu0)
}

/// Force on the slab in a finite ideal cavity, combining the two sides
/// independently: f(d₁, d₂) = f_id(d₂; tag₂) − f_id(d₁; tag₁). Positive
/// means toward mirror 2. `tag_i` pairs the slab with mirror i; both tags
/// must carry the same slab type.
pub fn ideal_cavity_total(
    d1: f64,
    d2: f64,
    tag1: IdealConfigTag,
    tag2: IdealConfigTag,
    eps0: f64,
    mu0: f64,
) -> f64 {
    debug_assert_eq!(tag1.slab, tag2.slab, "one slab, one type");
    let side = |d: f64, tag: IdealConfigTag| {
        if d == f64::INFINITY {
            0.0
        } else {
            ideal_total(d, tag, eps0, mu0)
        }
    };
    side(d2, tag2) - side(d1, tag1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const HC: f64 = HBAR * SPEED_OF_LIGHT;

    #[test]
    fn vacuum_cc_is_the_classic_value() {
        let d = 1e-6;
        assert_relative_eq!(
            ideal_f1(d, IdealConfigTag::CC, 1.0, 1.0),
            PI * PI / 240.0 * HC / d.powi(4),
            max_relative = 1e-14
        );
        // Mixed pair picks up the alternating-series 7/8 with a sign flip.
        assert_relative_eq!(
            ideal_f1(d, IdealConfigTag::CP, 1.0, 1.0),
            -(7.0 / 8.0) * PI * PI / 240.0 * HC / d.powi(4),
            max_relative = 1e-14
        );
    }

    #[test]
    fn f1_substitution_example() {
        let d = 1e-6;
        assert_relative_eq!(
            ideal_f1(d, IdealConfigTag::CC, 2.0, 1.0),
            (HC * PI * PI / (480.0 * d.powi(4))) * (1.0 / 2.0_f64.sqrt()) * 1.5,
            max_relative = 1e-14
        );
    }

    #[test]
    fn f2_vanishes_in_vacuum() {
        let d = 1e-6;
        for tag in IdealConfigTag::ALL {
            assert_eq!(ideal_f2(d, tag, 1.0, 1.0), 0.0);
        }
    }

    #[test]
    fn f2_over_f1_ratio() {
        let d = 1e-6;
        for n0_sq in [2.0, 10.0, 100.0, 1e6] {
            let ratio = ideal_f2(d, IdealConfigTag::CC, n0_sq, 1.0)
                / ideal_f1(d, IdealConfigTag::CC, n0_sq, 1.0);
            let expected = (1.0 / 3.0) * (1.0 - 1.0 / n0_sq) / (1.0 + 1.0 / n0_sq);
            assert_relative_eq!(ratio, expected, max_relative = 1e-14);
        }
        // Dense-media limit: only three times smaller.
        let ratio =
            ideal_f2(d, IdealConfigTag::CC, 1e9, 1.0) / ideal_f1(d, IdealConfigTag::CC, 1e9, 1.0);
        assert_relative_eq!(ratio, 1.0 / 3.0, max_relative = 1e-8);
    }

    #[test]
    fn f2_sign_follows_the_mirror() {
        let d = 1e-6;
        // Conductive mirror + permeable slab: mixed, sign +, factor 7/8.
        let f2 = ideal_f2(d, IdealConfigTag::CP, 2.0, 1.0);
        assert!(f2 > 0.0);
        assert_relative_eq!(
            f2,
            (7.0 / 8.0) * (HC * PI * PI / (1440.0 * d.powi(4))) * (1.0 / 2.0_f64.sqrt()) * 0.5,
            max_relative = 1e-14
        );
        // Permeable mirror flips it.
        assert!(ideal_f2(d, IdealConfigTag::PC, 2.0, 1.0) < 0.0);
    }

    #[test]
    fn totals_reproduce_the_closed_form_relations() {
        let d = 0.7e-6;
        for (eps0, mu0) in [(1.0, 1.0), (2.0, 1.0), (3.0, 1.5), (100.0, 1.0), (7.3, 2.2)] {
            let n0_sq = eps0 * mu0;
            let cc = ideal_total(d, IdealConfigTag::CC, eps0, mu0);
            let expected_cc =
                HC * PI * PI / (720.0 * d.powi(4)) * (mu0 / eps0).sqrt() * (2.0 + 1.0 / n0_sq);
            assert_relative_eq!(cc, expected_cc, max_relative = 1e-14);

            let ratio = (n0_sq + 2.0) / (2.0 * n0_sq + 1.0);
            assert_relative_eq!(
                ideal_total(d, IdealConfigTag::PP, eps0, mu0),
                ratio * cc,
                max_relative = 1e-14
            );
            assert_relative_eq!(
                ideal_total(d, IdealConfigTag::CP, eps0, mu0),
                -(7.0 / 8.0) * ratio * cc,
                max_relative = 1e-14
            );
            assert_relative_eq!(
                ideal_total(d, IdealConfigTag::PC, eps0, mu0),
                -(7.0 / 8.0) * cc,
                max_relative = 1e-14
            );
        }
        // Dense media: pp ≈ cc/2.
        let cc = ideal_total(d, IdealConfigTag::CC, 1e6, 1.0);
        let pp = ideal_total(d, IdealConfigTag::PP, 1e6, 1.0);
        assert_relative_eq!(pp / cc, 0.5, max_relative = 1e-5);
    }

    #[test]
    fn cavity_combination_rule() {
        let (eps0, mu0) = (2.0, 1.0);
        let tag = IdealConfigTag::CC;
        assert_eq!(ideal_cavity_total(1e-6, 1e-6, tag, tag, eps0, mu0), 0.0);
        assert_relative_eq!(
            ideal_cavity_total(f64::INFINITY, 1e-6, tag, tag, eps0, mu0),
            ideal_total(1e-6, tag, eps0, mu0),
            max_relative = 1e-15
        );
        // 1/d⁴ scaling: halving d₂ gives f(d₁/2) − f(d₁) = 15 f(d₁).
        let d1 = 1e-6;
        assert_relative_eq!(
            ideal_cavity_total(d1, d1 / 2.0, tag, tag, eps0, mu0),
            15.0 * ideal_total(d1, tag, eps0, mu0),
            max_relative = 1e-13
        );
    }

    #[test]
    fn tag_parsing_and_display() {
        for tag in IdealConfigTag::ALL {
            let s = tag.to_string();
            assert_eq!(s.parse::<IdealConfigTag>().unwrap(), tag);
        }
        assert_eq!(
            "cp".parse::<IdealConfigTag>().unwrap(),
            IdealConfigTag::new(IdealKind::Conductive, IdealKind::Permeable)
        );
        assert!("cx".parse::<IdealConfigTag>().is_err());
        assert!("ccc".parse::<IdealConfigTag>().is_err());
    }
}
