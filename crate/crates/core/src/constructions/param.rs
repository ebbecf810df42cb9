//! Free parameter functions `f: Z -> [k]`.
//!
//! Only finitely describable functions are representable: constants,
//! periodic tables and a seeded hash. That is already enough to produce
//! arbitrarily many distinct oracles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::lattice::canonical_residue;

/// How a [`ParamFn`] maps an integer to `[k]`, independent of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamRule {
    /// `f(h) = value`.
    Constant { value: u32 },
    /// `f(h) = table[canonical_residue(h, table.len()) - 1]`.
    Periodic { table: Vec<u32> },
    /// `f(h) = 1 + splitmix64(seed ^ splitmix64(h mod 2^64)) mod k`.
    Seeded { seed: u64 },
}

/// A function `f: Z -> [k]` with `k = codomain`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamFn {
    codomain: u32,
    rule: ParamRule,
}

impl ParamFn {
    pub fn new(codomain: u32, rule: ParamRule) -> Result<Self, ConstructionError> {
        let f = Self { codomain, rule };
        f.validate()?;
        Ok(f)
    }

    /// The constant `k`, which is `≡ 0 (mod k)` and therefore leaves every
    /// congruence it is subtracted from unchanged.
    pub fn zero_shift(codomain: u32) -> Result<Self, ConstructionError> {
        Self::new(codomain, ParamRule::Constant { value: codomain })
    }

    pub fn constant(codomain: u32, value: u32) -> Result<Self, ConstructionError> {
        Self::new(codomain, ParamRule::Constant { value })
    }

    pub fn periodic(codomain: u32, table: Vec<u32>) -> Result<Self, ConstructionError> {
        Self::new(codomain, ParamRule::Periodic { table })
    }

    pub fn seeded(codomain: u32, seed: u64) -> Result<Self, ConstructionError> {
        Self::new(codomain, ParamRule::Seeded { seed })
    }

    pub fn codomain(&self) -> u32 {
        self.codomain
    }

    pub fn rule(&self) -> &ParamRule {
        &self.rule
    }

    pub fn is_zero_shift(&self) -> bool {
        matches!(self.rule, ParamRule::Constant { value } if value == self.codomain)
    }

    /// Checks the invariants; deserialized values go through this too.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let k = self.codomain;
        if k == 0 {
            return Err(ConstructionError::InvalidParam(
                "codomain must be at least 1".into(),
            ));
        }
        let in_range = |v: u32| (1..=k).contains(&v);
        match &self.rule {
            ParamRule::Constant { value } if !in_range(*value) => Err(
                ConstructionError::InvalidParam(format!("constant {value} outside 1..={k}")),
            ),
            ParamRule::Periodic { table } if table.is_empty() => Err(
                ConstructionError::InvalidParam("periodic table is empty".into()),
            ),
            ParamRule::Periodic { table } => match table.iter().find(|&&v| !in_range(v)) {
                Some(v) => Err(ConstructionError::InvalidParam(format!(
                    "periodic entry {v} outside 1..={k}"
                ))),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }

    /// Evaluates `f(h)`; always in `1..=k`.
    pub fn eval(&self, h: i128) -> u32 {
        match &self.rule {
            ParamRule::Constant { value } => *value,
            ParamRule::Periodic { table } => {
                table[canonical_residue(h, table.len() as u64) as usize - 1]
            }
            ParamRule::Seeded { seed } => {
                let z = splitmix64(seed ^ splitmix64(h as u64));
                (z % self.codomain as u64) as u32 + 1
            }
        }
    }
}

fn splitmix64(mut v: u64) -> u64 {
    v = v.wrapping_add(0x9E37_79B9_7F4A_7C15);
    v = (v ^ (v >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    v = (v ^ (v >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    v ^ (v >> 31)
}

/// A parameter choice whose codomain is filled in later by the construction
/// step it is attached to.
///
/// Text form: `zero`, `constant:V`, `periodic:a,b,c`, `seeded:S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamChoice {
    ZeroShift,
    Rule(ParamRule),
}

impl ParamChoice {
    pub fn with_codomain(&self, codomain: u32) -> Result<ParamFn, ConstructionError> {
        match self {
            ParamChoice::ZeroShift => ParamFn::zero_shift(codomain),
            ParamChoice::Rule(rule) => ParamFn::new(codomain, rule.clone()),
        }
    }
}

impl FromStr for ParamChoice {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructionError::InvalidParam(format!("cannot parse parameter {s:?}"));
        let s = s.trim();
        if s == "zero" {
            return Ok(ParamChoice::ZeroShift);
        }
        let (kind, body) = s.split_once(':').ok_or_else(bad)?;
        let rule = match kind {
            "constant" => ParamRule::Constant {
                value: body.trim().parse().map_err(|_| bad())?,
            },
            "periodic" => ParamRule::Periodic {
                table: body
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?,
            },
            "seeded" => ParamRule::Seeded {
                seed: body.trim().parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        Ok(ParamChoice::Rule(rule))
    }
}

impl fmt::Display for ParamRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamRule::Constant { value } => write!(f, "constant:{value}"),
            ParamRule::Periodic { table } => {
                let parts: Vec<String> = table.iter().map(u32::to_string).collect();
                write!(f, "periodic:{}", parts.join(","))
            }
            ParamRule::Seeded { seed } => write!(f, "seeded:{seed}"),
        }
    }
}
