use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::Scenery;
use crate::error::SimError;
use crate::lattice::{neighbor_step, LatticePoint};

/// Recorded in every walk report.
pub const GENERATOR: &str = "rand_chacha 0.9 ChaCha8Rng::seed_from_u64";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub dim: usize,
    pub steps: u64,
    pub seed: u64,
    pub start: LatticePoint,
}

impl WalkConfig {
    /// A walk from the origin.
    pub fn new(dim: usize, steps: u64, seed: u64) -> Result<Self, SimError> {
        let start = LatticePoint::origin(dim).map_err(|_| SimError::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        Self::with_start(start, steps, seed)
    }

    pub fn with_start(start: LatticePoint, steps: u64, seed: u64) -> Result<Self, SimError> {
        if steps == 0 {
            return Err(SimError::NoSteps);
        }
        Ok(Self {
            dim: start.dim(),
            steps,
            seed,
            start,
        })
    }

    fn check(&self) -> Result<(), SimError> {
        if self.steps == 0 {
            return Err(SimError::NoSteps);
        }
        if self.start.dim() != self.dim {
            return Err(SimError::DimensionMismatch {
                expected: self.dim,
                found: self.start.dim(),
            });
        }
        Ok(())
    }
}

/// A simple random walk on `Z^n`.
///
/// Each step draws one 64-bit output `u` and moves to neighbour
/// `floor(u · 2n / 2^64)` in canonical order `+e_1, -e_1, +e_2, ...`.
pub struct Walker {
    rng: ChaCha8Rng,
    pos: Vec<i64>,
}

impl Walker {
    pub fn new(cfg: &WalkConfig) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            pos: cfg.start.coords().to_vec(),
        }
    }

    pub fn position(&self) -> &[i64] {
        &self.pos
    }

    /// Moves one step and returns the neighbour slot taken.
    pub fn step(&mut self) -> usize {
        let slots = 2 * self.pos.len() as u128;
        let slot = ((self.rng.next_u64() as u128 * slots) >> 64) as usize;
        let (axis, delta) = neighbor_step(slot);
        self.pos[axis] = self.pos[axis]
            .checked_add(delta)
            .expect("walk left the i64 coordinate range");
        slot
    }
}

/// The 0/1 values observed along a walk.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BitSeq(Vec<bool>);

impl BitSeq {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// ASCII `0`/`1`, 64 bits per line, each line newline-terminated.
    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity(self.0.len() + self.0.len() / 64 + 1);
        for line in self.0.chunks(64) {
            out.extend(line.iter().map(|&b| if b { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    /// Packed most-significant bit first; the last byte is zero-padded.
    pub fn to_packed(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
            })
            .collect()
    }
}

impl From<Vec<bool>> for BitSeq {
    fn from(v: Vec<bool>) -> Self {
        BitSeq(v)
    }
}

impl FromIterator<bool> for BitSeq {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitSeq(iter.into_iter().collect())
    }
}

/// Runs the walk and records the scenery at every visited point, the start
/// included, giving `steps + 1` values.
pub fn simulate<S: Scenery + ?Sized>(scenery: &S, cfg: &WalkConfig) -> Result<BitSeq, SimError> {
    cfg.check()?;
    if scenery.dim() != cfg.dim {
        return Err(SimError::DimensionMismatch {
            expected: cfg.dim,
            found: scenery.dim(),
        });
    }
    let mut walker = Walker::new(cfg);
    let mut out = Vec::with_capacity(cfg.steps as usize + 1);
    out.push(scenery.value(walker.position()));
    for _ in 0..cfg.steps {
        walker.step();
        out.push(scenery.value(walker.position()));
    }
    Ok(BitSeq(out))
}

/// Independent walks, run in parallel; results are in `cfgs` order.
pub fn simulate_many<S: Scenery + ?Sized>(
    scenery: &S,
    cfgs: &[WalkConfig],
) -> Result<Vec<BitSeq>, SimError> {
    cfgs.par_iter().map(|c| simulate(scenery, c)).collect()
}

/// The visited points themselves, for debugging and trace checks.
pub fn walk_path(cfg: &WalkConfig) -> Result<Vec<LatticePoint>, SimError> {
    cfg.check()?;
    let mut walker = Walker::new(cfg);
    let mut out = Vec::with_capacity(cfg.steps as usize + 1);
    out.push(cfg.start.clone());
    for _ in 0..cfg.steps {
        walker.step();
        out.push(LatticePoint::new(walker.position().to_vec()).expect("dim >= 1"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::scenery_from_fn;

    #[test]
    fn constant_sceneries_give_constant_sequences() {
        let cfg = WalkConfig::new(3, 500, 11).unwrap();
        let ones = simulate(&scenery_from_fn(3, |_| true), &cfg).unwrap();
        assert_eq!(ones.len(), 501);
        assert!(ones.bits().iter().all(|&b| b));
        let zeros = simulate(&scenery_from_fn(3, |_| false), &cfg).unwrap();
        assert!(zeros.bits().iter().all(|&b| !b));
    }

    #[test]
    fn consecutive_points_are_adjacent() {
        let cfg = WalkConfig::new(4, 2_000, 5).unwrap();
        let path = walk_path(&cfg).unwrap();
        for w in path.windows(2) {
            let d: i64 = w[0]
                .coords()
                .iter()
                .zip(w[1].coords())
                .map(|(a, b)| (a - b).abs())
                .sum();
            assert_eq!(d, 1);
        }
    }

    #[test]
    fn every_direction_is_used() {
        let cfg = WalkConfig::new(3, 6_000, 1).unwrap();
        let mut walker = Walker::new(&cfg);
        let mut counts = [0u32; 6];
        for _ in 0..6_000 {
            counts[walker.step()] += 1;
        }
        // expected 1000 each; 5 sigma is about 144
        assert!(
            counts.iter().all(|&c| (850..1150).contains(&c)),
            "{counts:?}"
        );
    }

    #[test]
    fn walks_are_reproducible() {
        let s = scenery_from_fn(2, |x| (x[0] + 2 * x[1]).rem_euclid(3) == 0);
        let cfg = WalkConfig::new(2, 1_000, 42).unwrap();
        assert_eq!(simulate(&s, &cfg).unwrap(), simulate(&s, &cfg).unwrap());
        let other = WalkConfig::new(2, 1_000, 43).unwrap();
        assert_ne!(simulate(&s, &cfg).unwrap(), simulate(&s, &other).unwrap());
        let many = simulate_many(&s, &[cfg.clone(), other]).unwrap();
        assert_eq!(many[0], simulate(&s, &cfg).unwrap());
    }

    #[test]
    fn config_errors() {
        assert_eq!(WalkConfig::new(2, 0, 1), Err(SimError::NoSteps));
        let cfg = WalkConfig::new(2, 5, 1).unwrap();
        assert!(simulate(&scenery_from_fn(3, |_| true), &cfg).is_err());
    }

    #[test]
    fn exports() {
        let seq: BitSeq = [true, false, true, true, false, false, false, false, true]
            .into_iter()
            .collect();
        assert_eq!(seq.to_packed(), vec![0b1011_0000, 0b1000_0000]);
        assert_eq!(seq.to_ascii(), "101100001\n");
    }
}
