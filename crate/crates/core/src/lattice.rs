//! Points, neighbourhoods and finite boxes of the integer lattice `Z^n`.
//!
//! The graph structure is the standard one: `x` is adjacent to `x ± e_i` for
//! every axis `i`. Neighbourhoods are always returned in the canonical order
//! `+e_1, -e_1, +e_2, -e_2, ...`, which every report and walk relies on.
//!
//! Index sets follow the `[k] = {1, ..., k}` convention; [`canonical_residue`]
//! is the single place where integers are reduced into such a set.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;

/// Returns the unique `r` in `{1, ..., k}` with `r ≡ x (mod k)`.
///
/// Multiples of `k` map to `k`, never to `0`.
///
/// # Panics
///
/// Panics if `k == 0`.
pub fn canonical_residue(x: i128, k: u64) -> u64 {
    assert!(k >= 1, "canonical_residue: modulus must be positive");
    let r = x.rem_euclid(k as i128) as u64;
    if r == 0 {
        k
    } else {
        r
    }
}

/// A point of `Z^n`.
///
/// Ordering is lexicographic on the coordinates, which is also the
/// enumeration order of [`LatticeBox::points`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self, LatticeError> {
        if coords.is_empty() {
            return Err(LatticeError::ZeroDimension);
        }
        Ok(Self(coords))
    }

    pub fn origin(dim: usize) -> Result<Self, LatticeError> {
        Self::new(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// The `2·dim` neighbours in canonical order, or `None` if a coordinate
    /// would leave the `i64` range.
    pub fn try_neighbors(&self) -> Option<Vec<LatticePoint>> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for axis in 0..self.dim() {
            for delta in [1i64, -1] {
                let mut c = self.0.clone();
                c[axis] = c[axis].checked_add(delta)?;
                out.push(LatticePoint(c));
            }
        }
        Some(out)
    }

    /// The `2·dim` neighbours `x + e_1, x - e_1, x + e_2, ...`.
    ///
    /// # Panics
    ///
    /// Panics if a coordinate sits at the edge of the `i64` range.
    pub fn neighbors(&self) -> Vec<LatticePoint> {
        self.try_neighbors()
            .expect("lattice coordinate overflow while stepping to a neighbour")
    }
}

impl TryFrom<Vec<i64>> for LatticePoint {
    type Error = LatticeError;

    fn try_from(coords: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(coords)
    }
}

impl From<LatticePoint> for Vec<i64> {
    fn from(p: LatticePoint) -> Self {
        p.0
    }
}

/// Index of the `slot`-th neighbour in canonical order: `(axis, +1 | -1)`.
pub fn neighbor_step(slot: usize) -> (usize, i64) {
    (slot / 2, if slot.is_multiple_of(2) { 1 } else { -1 })
}

/// Calls `visit(slot, neighbour)` for every neighbour of `x` in canonical
/// order, reusing one scratch buffer.
pub(crate) fn for_each_neighbor(x: &[i64], mut visit: impl FnMut(usize, &[i64])) {
    let mut scratch = x.to_vec();
    for slot in 0..2 * x.len() {
        let (axis, delta) = neighbor_step(slot);
        scratch[axis] = x[axis]
            .checked_add(delta)
            .expect("lattice coordinate overflow while stepping to a neighbour");
        visit(slot, &scratch);
        scratch[axis] = x[axis];
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for LatticePoint {
    type Err = LatticeError;

    /// Parses `"[3,-2,7]"`. Whitespace around entries is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Parse(format!("expected a point like [3,-2,7], got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let coords = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }
}

/// A nonempty axis-aligned box `lo..=hi` in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBox {
    lo: LatticePoint,
    hi: LatticePoint,
}

impl LatticeBox {
    pub fn new(lo: LatticePoint, hi: LatticePoint) -> Result<Self, LatticeError> {
        if lo.dim() != hi.dim() {
            return Err(LatticeError::DimensionMismatch {
                expected: lo.dim(),
                found: hi.dim(),
            });
        }
        if let Some(axis) = (0..lo.dim()).find(|&i| lo.0[i] > hi.0[i]) {
            return Err(LatticeError::EmptyBox { axis });
        }
        Ok(Self { lo, hi })
    }

    /// The cube `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self, LatticeError> {
        Self::new(
            LatticePoint::new(vec![lo; dim])?,
            LatticePoint::new(vec![hi; dim])?,
        )
    }

    /// The cube of the given radius around the origin.
    pub fn centered(dim: usize, radius: i64) -> Result<Self, LatticeError> {
        Self::cube(dim, -radius, radius)
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> &LatticePoint {
        &self.lo
    }

    pub fn hi(&self) -> &LatticePoint {
        &self.hi
    }

    /// Side lengths `hi_i - lo_i + 1`.
    pub fn extents(&self) -> Vec<u128> {
        self.lo
            .0
            .iter()
            .zip(&self.hi.0)
            .map(|(&l, &h)| (h as i128 - l as i128 + 1) as u128)
            .collect()
    }

    /// Number of points, or `None` if it does not fit in a `u128`.
    pub fn volume(&self) -> Option<u128> {
        self.extents()
            .into_iter()
            .try_fold(1u128, |acc, e| acc.checked_mul(e))
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.dim()
            && p.0
                .iter()
                .zip(self.lo.0.iter().zip(&self.hi.0))
                .all(|(&c, (&l, &h))| l <= c && c <= h)
    }

    /// The `index`-th point in lexicographic order (last axis fastest).
    pub fn point_at(&self, mut index: u128) -> LatticePoint {
        let extents = self.extents();
        let mut coords = vec![0i64; self.dim()];
        for axis in (0..self.dim()).rev() {
            let e = extents[axis];
            coords[axis] = (self.lo.0[axis] as i128 + (index % e) as i128) as i64;
            index /= e;
        }
        LatticePoint(coords)
    }

    /// Every point exactly once, in lexicographic order.
    pub fn points(&self) -> BoxPoints<'_> {
        BoxPoints {
            bx: self,
            next: Some(self.lo.0.clone()),
        }
    }

    /// `draws` points drawn uniformly (with replacement) from the box.
    ///
    /// The generator is `ChaCha8Rng::seed_from_u64(seed)`; each coordinate is
    /// `lo_i + floor(u · extent_i / 2^64)` for a fresh 64-bit output `u`.
    pub fn sample(&self, seed: u64, draws: usize) -> Vec<LatticePoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let extents = self.extents();
        (0..draws)
            .map(|_| {
                let coords = self
                    .lo
                    .0
                    .iter()
                    .zip(&extents)
                    .map(|(&l, &e)| {
                        let off = ((rng.next_u64() as u128 * e) >> 64) as i128;
                        (l as i128 + off) as i64
                    })
                    .collect();
                LatticePoint(coords)
            })
            .collect()
    }
}

impl fmt::Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for LatticeBox {
    type Err = LatticeError;

    /// Parses `"[lo..]..[hi..]"`, e.g. `"[0,0]..[1,1]"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .trim()
            .split_once("]..[")
            .ok_or_else(|| LatticeError::Parse(format!("expected [lo]..[hi], got {s:?}")))?;
        Self::new(format!("{lo}]").parse()?, format!("[{hi}").parse()?)
    }
}

/// Lexicographic iterator over a [`LatticeBox`].
pub struct BoxPoints<'a> {
    bx: &'a LatticeBox,
    next: Option<Vec<i64>>,
}

impl Iterator for BoxPoints<'_> {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = succ.len();
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            if succ[axis] < self.bx.hi.0[axis] {
                succ[axis] += 1;
                self.next = Some(succ);
                break;
            }
            succ[axis] = self.bx.lo.0[axis];
        }
        Some(LatticePoint(current))
    }
}
