//! Membership oracles for biased partitions of `Z^n` and the sceneries built
//! from them.
//!
//! Every oracle is a pure, total function of the point. Evaluation goes
//! through the [`Labeling`] (part labels in `[2n]`) and [`Scenery`] (0/1
//! values) traits, which the verifier and the walk simulator consume.

mod filling;
mod param;
mod recipe;
mod scenery;
mod z2;

pub use filling::{
    blockweighted_index, timestwo_index, FillingCell, FillingFamily, FillingSpec,
    ZeroBasedBlockWeighted,
};
pub use param::{ParamChoice, ParamFn, ParamRule};
pub use recipe::{base_part, compose_part, recipe_for, seeded_recipe, step_count, Recipe};
pub use scenery::{scenery, scenery_from_fn, FnScenery, HalfBiasedZ2, SceneryFn};
pub use z2::{z2_half_biased, z2_part};

/// A total labelling of `Z^dim` by parts `1..=part_count`.
pub trait Labeling: Sync {
    fn dim(&self) -> usize;
    fn part_count(&self) -> u32;
    /// Label of `x`; `x.len()` must equal `dim()`.
    fn label(&self, x: &[i64]) -> u32;
}

/// A 0/1 function on `Z^dim`.
pub trait Scenery: Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[i64]) -> bool;
}

impl<T: Labeling + ?Sized> Labeling for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn part_count(&self) -> u32 {
        (**self).part_count()
    }
    fn label(&self, x: &[i64]) -> u32 {
        (**self).label(x)
    }
}

impl<T: Scenery + ?Sized> Scenery for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[i64]) -> bool {
        (**self).value(x)
    }
}
