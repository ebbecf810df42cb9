//! Biased partitions and `p`-biased sceneries of the integer lattice `Z^n`.
//!
//! A set `X ⊂ Z^n` is `p`-biased when every point has exactly `2pn` of its
//! `2n` neighbours in `X`; a biased partition splits `Z^n` into `2n` parts
//! that are each `1/2n`-biased. This crate builds such partitions for every
//! `n` as explicit membership oracles, checks the defining properties by
//! brute force over finite boxes, and runs simple random walks over the
//! resulting sceneries.
//!
//! * [`lattice`]: points, neighbourhoods, boxes, residues in `[k]`.
//! * [`constructions`]: filling families, recipes, planar constructions,
//!   sceneries.
//! * [`verify`]: exhaustive and sampled checkers with violation witnesses.
//! * [`sim`]: random walks and Bernoulli / k-gram statistics.
//! * [`cli`]: the `biased-lattice` command line.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod lattice;
pub mod sim;
pub mod verify;

pub use constructions::{recipe_for, Labeling, Recipe, Scenery, SceneryFn};
pub use error::{ConstructionError, LatticeError, SimError, VerifyError};
pub use lattice::{canonical_residue, LatticeBox, LatticePoint};
