//! Recursive recipes for biased partitions of `Z^n`.
//!
//! A [`Recipe`] starts from the two-part partition of `Z` by residues mod 4
//! and is grown by composing with filling families: an `(m, n)`-family on
//! `Z^m` plus a biased partition `{Y_j}` of `Z^n` give a biased partition of
//! `Z^{m+n}` with parts
//!
//! ```text
//! Z^i_l = ⊔_j X^i_{j+l} × Y_j      (i ∈ [(m+n)/n], l ∈ [2n])
//! ```
//!
//! Part `(i, l)` is flattened to the label `(i - 1)·2n + l`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::filling::{FillingFamily, FillingSpec};
use super::param::{ParamChoice, ParamFn};
use super::z2::z2_label;
use super::Labeling;
use crate::error::ConstructionError;
use crate::lattice::{canonical_residue, LatticePoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Recipe {
    /// `Z = {x ≡ 0,1 mod 4} ⊔ {x ≡ 2,3 mod 4}`.
    BaseLine,
    Compose {
        filling: FillingSpec,
        inner: Box<Recipe>,
    },
    /// The planar partition into four translates of a diagonal set.
    Z2Diagonal { f: ParamFn },
}

/// Label of `x` in the base partition of `Z`: 1 for `x ≡ 0,1 (mod 4)`, else 2.
pub fn base_part(x: i64) -> u32 {
    if x.rem_euclid(4) < 2 {
        1
    } else {
        2
    }
}

impl Recipe {
    pub fn compose(filling: FillingSpec, inner: Recipe) -> Result<Self, ConstructionError> {
        let r = Recipe::Compose {
            filling,
            inner: Box::new(inner),
        };
        r.validate()?;
        Ok(r)
    }

    pub fn z2_diagonal(f: ParamFn) -> Result<Self, ConstructionError> {
        let r = Recipe::Z2Diagonal { f };
        r.validate()?;
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        match self {
            Recipe::BaseLine => 1,
            Recipe::Compose { filling, inner } => filling.ambient_dim() + inner.dim(),
            Recipe::Z2Diagonal { .. } => 2,
        }
    }

    pub fn part_count(&self) -> u32 {
        2 * self.dim() as u32
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        match self {
            Recipe::BaseLine => Ok(()),
            Recipe::Compose { filling, inner } => {
                filling.validate()?;
                inner.validate()?;
                if inner.dim() != filling.inner_dim() as usize {
                    return Err(ConstructionError::InvalidRecipe(format!(
                        "{} composes with dimension {}, inner recipe has dimension {}",
                        filling.describe(),
                        filling.inner_dim(),
                        inner.dim()
                    )));
                }
                Ok(())
            }
            Recipe::Z2Diagonal { f } => {
                f.validate()?;
                if f.codomain() != 2 {
                    return Err(ConstructionError::InvalidParam(format!(
                        "planar diagonal recipe needs codomain 2, got {}",
                        f.codomain()
                    )));
                }
                Ok(())
            }
        }
    }

    /// The part label of `x`, checking dimensions.
    pub fn part_of(&self, x: &LatticePoint) -> Result<u32, ConstructionError> {
        if x.dim() != self.dim() {
            return Err(ConstructionError::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(self.label_of(x.coords()))
    }

    pub(crate) fn label_of(&self, x: &[i64]) -> u32 {
        match self {
            Recipe::BaseLine => base_part(x[0]),
            Recipe::Compose { filling, inner } => {
                let (head, tail) = x.split_at(filling.ambient_dim());
                compose_label(filling, filling.cell(head), inner.label_of(tail))
            }
            Recipe::Z2Diagonal { f } => z2_label(f, x),
        }
    }

    /// `(rows, cols)` of the outermost `(i, l)` label grid.
    pub fn grid_shape(&self) -> (u32, u32) {
        match self {
            Recipe::Compose { filling, .. } => (filling.rows(), filling.cols()),
            _ => (1, self.part_count()),
        }
    }

    /// Construction steps from the innermost outwards.
    pub fn chain(&self) -> Vec<String> {
        match self {
            Recipe::BaseLine => vec!["BaseLine".to_string()],
            Recipe::Compose { filling, inner } => {
                let mut c = inner.chain();
                c.push(filling.describe());
                c
            }
            Recipe::Z2Diagonal { f } => vec![format!("Z2Diagonal({})", f.rule())],
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.chain().join(" -> "))
    }
}

impl Labeling for Recipe {
    fn dim(&self) -> usize {
        Recipe::dim(self)
    }

    fn part_count(&self) -> u32 {
        Recipe::part_count(self)
    }

    fn label(&self, x: &[i64]) -> u32 {
        self.label_of(x)
    }
}

fn compose_label(
    filling: &FillingSpec,
    cell: super::filling::FillingCell,
    inner_label: u32,
) -> u32 {
    let cols = filling.cols();
    // x ∈ X^i_{j'} and y ∈ Y_j put z in Z^i_l with j' ≡ j + l (mod 2n)
    let l = canonical_residue(cell.col as i128 - inner_label as i128, cols as u64) as u32;
    (cell.row - 1) * cols + l
}

/// Label of `z = (x, y)` under the composition of `filling` with `inner`.
pub fn compose_part(
    filling: &FillingSpec,
    inner: &Recipe,
    z: &LatticePoint,
) -> Result<u32, ConstructionError> {
    if inner.dim() != filling.inner_dim() as usize {
        return Err(ConstructionError::InvalidRecipe(format!(
            "inner recipe has dimension {}, filling expects {}",
            inner.dim(),
            filling.inner_dim()
        )));
    }
    let expected = filling.ambient_dim() + inner.dim();
    if z.dim() != expected {
        return Err(ConstructionError::DimensionMismatch {
            expected,
            found: z.dim(),
        });
    }
    let (head, tail) = z.coords().split_at(filling.ambient_dim());
    Ok(compose_label(
        filling,
        filling.cell(head),
        inner.label_of(tail),
    ))
}

/// Number of composition steps [`recipe_for`] uses for dimension `n`.
pub fn step_count(n: u64) -> usize {
    let k = n.trailing_zeros() as usize;
    let odd = n >> k;
    k + usize::from(odd > 1)
}

/// A biased partition of `Z^n`.
///
/// Writes `n = 2^k (2m + 1)`, doubles the base partition `k` times with
/// `(d, d)` families and, if `m ≥ 1`, finishes with one `(2m·2^k, 2^k)`
/// block-weighted family. `params` are attached to the composition steps in
/// order, innermost first; missing entries are zero-shift.
pub fn recipe_for(n: u64, params: Option<&[ParamChoice]>) -> Result<Recipe, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::NonPositiveDimension);
    }
    let params = params.unwrap_or(&[]);
    if params.len() > step_count(n) {
        return Err(ConstructionError::InvalidRecipe(format!(
            "{} parameter choices given, but dimension {n} uses {} composition steps",
            params.len(),
            step_count(n)
        )));
    }
    let mut choices = params.iter();
    let mut next_param = |codomain: u32| match choices.next() {
        Some(c) => c.with_codomain(codomain),
        None => ParamFn::zero_shift(codomain),
    };

    let k = n.trailing_zeros();
    let m = ((n >> k) - 1) / 2;
    let mut recipe = Recipe::BaseLine;
    for i in 0..k {
        let d = 1u32 << i;
        recipe = Recipe::compose(FillingSpec::times_two(d, next_param(d)?)?, recipe)?;
    }
    if m >= 1 {
        let d = 1u32 << k;
        let m = u32::try_from(m)
            .map_err(|_| ConstructionError::InvalidRecipe("dimension too large".into()))?;
        recipe = Recipe::compose(
            FillingSpec::block_weighted(m, d, next_param(2 * d)?)?,
            recipe,
        )?;
    }
    Ok(recipe)
}

/// `recipe_for(n)` with `Seeded(seed)` attached to every step.
pub fn seeded_recipe(n: u64, seed: u64) -> Result<Recipe, ConstructionError> {
    let choice = ParamChoice::Rule(super::param::ParamRule::Seeded { seed });
    recipe_for(n, Some(&vec![choice; step_count(n)]))
}
