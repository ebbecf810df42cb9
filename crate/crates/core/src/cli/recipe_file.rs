//! Versioned JSON files holding a recipe and an optional scenery selection.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "recipe": {
//!     "type": "compose",
//!     "filling": {
//!       "type": "times_two",
//!       "n": 1,
//!       "f": { "codomain": 1, "rule": { "kind": "constant", "value": 1 } }
//!     },
//!     "inner": { "type": "base_line" }
//!   },
//!   "selection": [1]
//! }
//! ```
//!
//! Serialisation is canonical (fixed key order, two-space indentation,
//! trailing newline), so files written by this module round-trip
//! byte-for-byte.

use serde::{Deserialize, Serialize};

use crate::constructions::{Recipe, SceneryFn};
use crate::error::ConstructionError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeFile {
    pub schema_version: u32,
    pub recipe: Recipe,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<Vec<u32>>,
}

#[derive(Debug, thiserror::Error)]
pub enum RecipeFileError {
    #[error("malformed recipe file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error(transparent)]
    Invalid(#[from] ConstructionError),
}

impl RecipeFile {
    pub fn new(recipe: Recipe, selection: Option<Vec<u32>>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            recipe,
            selection: selection.map(normalise),
        }
    }

    pub fn parse(text: &str) -> Result<Self, RecipeFileError> {
        let file: RecipeFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(RecipeFileError::Version(file.schema_version));
        }
        file.recipe.validate()?;
        if let Some(sel) = &file.selection {
            SceneryFn::new(file.recipe.clone(), sel.iter().copied())?;
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("recipe serialisation");
        s.push('\n');
        s
    }

    pub fn scenery(&self) -> Option<Result<SceneryFn, ConstructionError>> {
        self.selection
            .as_ref()
            .map(|sel| SceneryFn::new(self.recipe.clone(), sel.iter().copied()))
    }
}

fn normalise(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v.dedup();
    v
}
