//! 0/1 sceneries built as unions of parts of a biased partition.

use std::collections::BTreeSet;

use super::param::ParamFn;
use super::recipe::Recipe;
use super::z2::half_member;
use super::{Labeling, Scenery};
use crate::error::ConstructionError;
use crate::lattice::LatticePoint;

/// The union of the parts in `selected`; `c/2n`-biased with `c = |selected|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceneryFn {
    recipe: Recipe,
    selected: BTreeSet<u32>,
}

impl SceneryFn {
    pub fn new(
        recipe: Recipe,
        selected: impl IntoIterator<Item = u32>,
    ) -> Result<Self, ConstructionError> {
        let part_count = recipe.part_count();
        let selected: BTreeSet<u32> = selected.into_iter().collect();
        if let Some(&label) = selected.iter().find(|&&l| l == 0 || l > part_count) {
            return Err(ConstructionError::LabelOutOfRange { label, part_count });
        }
        Ok(Self { recipe, selected })
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn selected(&self) -> &BTreeSet<u32> {
        &self.selected
    }

    /// `c = |I|`.
    pub fn count(&self) -> u32 {
        self.selected.len() as u32
    }

    /// `(c, 2n)`; the bias is `c / 2n`.
    pub fn bias(&self) -> (u32, u32) {
        (self.count(), self.recipe.part_count())
    }

    pub fn member(&self, x: &LatticePoint) -> Result<bool, ConstructionError> {
        Ok(self.selected.contains(&self.recipe.part_of(x)?))
    }

    /// Whether some row of the outer `(i, l)` grid contributes exactly one
    /// label, or all but one. Such selections make `f ↦ S_f` injective for
    /// parameterised recipes. Reported only, never enforced.
    pub fn has_singular_row(&self) -> bool {
        let (rows, cols) = self.recipe.grid_shape();
        (1..=rows).any(|i| {
            let hits = self
                .selected
                .iter()
                .filter(|&&label| (label - 1) / cols + 1 == i)
                .count() as u32;
            hits == 1 || hits + 1 == cols
        })
    }
}

impl Scenery for SceneryFn {
    fn dim(&self) -> usize {
        self.recipe.dim()
    }

    fn value(&self, x: &[i64]) -> bool {
        self.selected.contains(&self.recipe.label(x))
    }
}

/// Builds a scenery; labels outside `[2·dim]` are rejected.
pub fn scenery(
    recipe: &Recipe,
    selected: impl IntoIterator<Item = u32>,
) -> Result<SceneryFn, ConstructionError> {
    SceneryFn::new(recipe.clone(), selected)
}

/// `{x ∈ Z^2 : x_1 ≡ f(x_1 + x_2) (mod 2)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfBiasedZ2 {
    f: ParamFn,
}

impl HalfBiasedZ2 {
    pub fn new(f: ParamFn) -> Result<Self, ConstructionError> {
        if f.codomain() != 2 {
            return Err(ConstructionError::InvalidParam(format!(
                "needs codomain 2, got {}",
                f.codomain()
            )));
        }
        Ok(Self { f })
    }
}

impl Scenery for HalfBiasedZ2 {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, x: &[i64]) -> bool {
        half_member(&self.f, x)
    }
}

/// Adapts a closure on coordinates to [`Scenery`].
pub struct FnScenery<F> {
    dim: usize,
    f: F,
}

pub fn scenery_from_fn<F>(dim: usize, f: F) -> FnScenery<F>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    FnScenery { dim, f }
}

impl<F: Fn(&[i64]) -> bool + Sync> Scenery for FnScenery<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[i64]) -> bool {
        (self.f)(x)
    }
}
