//! `(m, n)`-filling families of subsets of `Z^m`.
//!
//! A family `{X^i_j}` with rows `i ∈ [(m+n)/n]` and columns `j ∈ [2n]`
//! partitions `Z^m` such that a point outside row `X^i` has exactly one
//! neighbour in every `X^i_j`, and a point inside `X^i` has no neighbour in
//! `X^i`. Two constructions are provided:
//!
//! * [`FillingSpec::TimesTwo`]: an `(n, n)`-family on `Z^n`, classified by
//!   `∑ x_i` modulo 4 and `∑ i·x_i` modulo `n`.
//! * [`FillingSpec::BlockWeighted`]: a `(2mn, n)`-family on `Z^{2mn}`, where
//!   the `2mn` coordinates are split into `m` blocks of width `2n` and block
//!   `j` carries weight `j`.
//!
//! Both carry a free function `f` that shifts the column labelling
//! independently on every hyperplane `h`; a zero-shift `f` gives the
//! deterministic families.

use serde::{Deserialize, Serialize};

use super::param::ParamFn;
use crate::error::ConstructionError;
use crate::lattice::canonical_residue;

/// Position of a point inside a filling family: `x ∈ X^row_col`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FillingCell {
    pub row: u32,
    pub col: u32,
}

/// Anything that labels `Z^m` with filling-family cells.
pub trait FillingFamily: Sync {
    fn ambient_dim(&self) -> usize;
    fn rows(&self) -> u32;
    fn cols(&self) -> u32;
    /// Cell of `x`; `x.len()` must equal `ambient_dim()`.
    fn cell(&self, x: &[i64]) -> FillingCell;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FillingSpec {
    TimesTwo { n: u32, f: ParamFn },
    BlockWeighted { m: u32, n: u32, f: ParamFn },
}

impl FillingSpec {
    pub fn times_two(n: u32, f: ParamFn) -> Result<Self, ConstructionError> {
        let spec = FillingSpec::TimesTwo { n, f };
        spec.validate()?;
        Ok(spec)
    }

    pub fn block_weighted(m: u32, n: u32, f: ParamFn) -> Result<Self, ConstructionError> {
        let spec = FillingSpec::BlockWeighted { m, n, f };
        spec.validate()?;
        Ok(spec)
    }

    /// The deterministic `(n, n)` family.
    pub fn times_two_plain(n: u32) -> Result<Self, ConstructionError> {
        Self::times_two(n, ParamFn::zero_shift(n)?)
    }

    /// The deterministic `(2mn, n)` family.
    pub fn block_weighted_plain(m: u32, n: u32) -> Result<Self, ConstructionError> {
        Self::block_weighted(m, n, ParamFn::zero_shift(2 * n)?)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let (n, f, want_k) = match self {
            FillingSpec::TimesTwo { n, f } => (*n, f, *n),
            FillingSpec::BlockWeighted { m, n, f } => {
                if *m == 0 {
                    return Err(ConstructionError::InvalidRecipe(
                        "block count m must be >= 1".into(),
                    ));
                }
                (*n, f, 2 * *n)
            }
        };
        if n == 0 {
            return Err(ConstructionError::InvalidRecipe(
                "inner dimension n must be >= 1".into(),
            ));
        }
        f.validate()?;
        if f.codomain() != want_k {
            return Err(ConstructionError::InvalidParam(format!(
                "parameter codomain is {}, this family needs {want_k}",
                f.codomain()
            )));
        }
        Ok(())
    }

    /// The `n` of the `(m, n)` family, i.e. the dimension it composes with.
    pub fn inner_dim(&self) -> u32 {
        match self {
            FillingSpec::TimesTwo { n, .. } | FillingSpec::BlockWeighted { n, .. } => *n,
        }
    }

    pub fn param(&self) -> &ParamFn {
        match self {
            FillingSpec::TimesTwo { f, .. } | FillingSpec::BlockWeighted { f, .. } => f,
        }
    }

    /// Position of `x`, checking its dimension.
    pub fn index(
        &self,
        x: &crate::lattice::LatticePoint,
    ) -> Result<FillingCell, ConstructionError> {
        if x.dim() != self.ambient_dim() {
            return Err(ConstructionError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: x.dim(),
            });
        }
        Ok(self.cell(x.coords()))
    }

    pub fn describe(&self) -> String {
        match self {
            FillingSpec::TimesTwo { n, .. } => format!("TimesTwo({n})"),
            FillingSpec::BlockWeighted { m, n, .. } => format!("BlockWeighted(m={m},n={n})"),
        }
    }
}

impl FillingFamily for FillingSpec {
    fn ambient_dim(&self) -> usize {
        match self {
            FillingSpec::TimesTwo { n, .. } => *n as usize,
            FillingSpec::BlockWeighted { m, n, .. } => 2 * (*m as usize) * (*n as usize),
        }
    }

    fn rows(&self) -> u32 {
        match self {
            FillingSpec::TimesTwo { .. } => 2,
            FillingSpec::BlockWeighted { m, .. } => 2 * m + 1,
        }
    }

    fn cols(&self) -> u32 {
        2 * self.inner_dim()
    }

    fn cell(&self, x: &[i64]) -> FillingCell {
        debug_assert_eq!(x.len(), self.ambient_dim());
        match self {
            FillingSpec::TimesTwo { f, .. } => times_two_cell(x, f),
            FillingSpec::BlockWeighted { m, n, f } => block_cell(x, *m, *n, f, 1),
        }
    }
}

// Coordinates are i64 and dimensions are far below 2^32, so these i128
// accumulators cannot overflow; the checked ops make any violation loud.
fn plain_sum(x: &[i64]) -> i128 {
    x.iter()
        .try_fold(0i128, |acc, &c| acc.checked_add(c as i128))
        .expect("coordinate sum overflow")
}

/// `∑_{i=1}^{len} i · x_i` with 1-based positions.
fn position_weighted_sum(x: &[i64]) -> i128 {
    x.iter()
        .enumerate()
        .try_fold(0i128, |acc, (i, &c)| {
            (i as i128 + 1)
                .checked_mul(c as i128)
                .and_then(|t| acc.checked_add(t))
        })
        .expect("weighted coordinate sum overflow")
}

fn times_two_cell(x: &[i64], f: &ParamFn) -> FillingCell {
    let n = x.len() as u64;
    let s = plain_sum(x);
    // s = l + 2p + 4h with l ∈ {1,2}, p ∈ {0,1}; l + 2p is the residue of s in [4].
    let r4 = canonical_residue(s, 4) as u32;
    let l = if r4 % 2 == 1 { 1 } else { 2 };
    let p = (r4 - l) / 2;
    let h = (s - r4 as i128) / 4;
    let w = position_weighted_sum(x);
    let q = canonical_residue(w - f.eval(h) as i128, n) as u32;
    FillingCell {
        row: l,
        col: q + p * n as u32,
    }
}

/// Shared by the block-weighted family and its zero-based negative variant:
/// block `b` (0-based) carries weight `b + weight_offset`.
fn block_cell(x: &[i64], m: u32, n: u32, f: &ParamFn, weight_offset: i128) -> FillingCell {
    let width = 2 * n as usize;
    let modulus = 2 * m as u64 + 1;
    let plane_weight = x
        .chunks(width)
        .enumerate()
        .try_fold(0i128, |acc, (b, block)| {
            (b as i128 + weight_offset)
                .checked_mul(plain_sum(block))
                .and_then(|t| acc.checked_add(t))
        })
        .expect("block weight overflow");
    let l = canonical_residue(plane_weight, modulus);
    let h = (plane_weight - l as i128) / modulus as i128;
    let w = position_weighted_sum(x);
    let k = canonical_residue(w - f.eval(h) as i128, 2 * n as u64);
    FillingCell {
        row: l as u32,
        col: k as u32,
    }
}

/// `(l, j)` for the `(n, n)`-family on `Z^n`; `f` must have codomain `n`.
pub fn timestwo_index(
    x: &crate::lattice::LatticePoint,
    f: &ParamFn,
) -> Result<(u32, u32), ConstructionError> {
    if f.codomain() as usize != x.dim() {
        return Err(ConstructionError::InvalidParam(format!(
            "parameter codomain {} does not match dimension {}",
            f.codomain(),
            x.dim()
        )));
    }
    let c = times_two_cell(x.coords(), f);
    Ok((c.row, c.col))
}

/// `(l, k)` for the `(2mn, n)`-family on `Z^{2mn}`; `f` must have codomain `2n`.
pub fn blockweighted_index(
    x: &crate::lattice::LatticePoint,
    m: u32,
    n: u32,
    f: &ParamFn,
) -> Result<(u32, u32), ConstructionError> {
    let spec = FillingSpec::block_weighted(m, n, f.clone())?;
    let c = spec.index(x)?;
    Ok((c.row, c.col))
}

/// The block-weighted family with block weights `0, 1, ..., m-1` instead of
/// `1, ..., m`.
///
/// The first block then carries weight zero, so moving along it never
/// changes the row and the "no neighbour inside `X^l`" clause fails. Kept as
/// a known-bad family for negative tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroBasedBlockWeighted {
    pub m: u32,
    pub n: u32,
    pub f: ParamFn,
}

impl ZeroBasedBlockWeighted {
    pub fn plain(m: u32, n: u32) -> Result<Self, ConstructionError> {
        if m == 0 || n == 0 {
            return Err(ConstructionError::InvalidRecipe(
                "m and n must be >= 1".into(),
            ));
        }
        Ok(Self {
            m,
            n,
            f: ParamFn::zero_shift(2 * n)?,
        })
    }
}

impl FillingFamily for ZeroBasedBlockWeighted {
    fn ambient_dim(&self) -> usize {
        2 * self.m as usize * self.n as usize
    }

    fn rows(&self) -> u32 {
        2 * self.m + 1
    }

    fn cols(&self) -> u32 {
        2 * self.n
    }

    fn cell(&self, x: &[i64]) -> FillingCell {
        block_cell(x, self.m, self.n, &self.f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn times_two_examples() {
        let f = ParamFn::zero_shift(2).unwrap();
        assert_eq!(timestwo_index(&p(&[1, 0]), &f).unwrap(), (1, 1));
        assert_eq!(timestwo_index(&p(&[0, 0]), &f).unwrap(), (2, 4));
        assert_eq!(timestwo_index(&p(&[0, 1]), &f).unwrap(), (1, 2));
    }

    #[test]
    fn block_weighted_examples() {
        let f1 = ParamFn::zero_shift(2).unwrap();
        assert_eq!(blockweighted_index(&p(&[0, 0]), 1, 1, &f1).unwrap(), (3, 2));
        assert_eq!(blockweighted_index(&p(&[1, 0]), 1, 1, &f1).unwrap(), (1, 1));
        let f2 = ParamFn::zero_shift(4).unwrap();
        assert_eq!(
            blockweighted_index(&p(&[0, 0, 0, 0]), 1, 2, &f2).unwrap(),
            (3, 4)
        );
    }

    #[test]
    fn filling_index_examples() {
        let t1 = FillingSpec::times_two_plain(1).unwrap();
        assert_eq!(t1.index(&p(&[3])).unwrap(), FillingCell { row: 1, col: 2 });
        assert_eq!(t1.index(&p(&[0])).unwrap(), FillingCell { row: 2, col: 2 });
        let b11 = FillingSpec::block_weighted_plain(1, 1).unwrap();
        assert_eq!(
            b11.index(&p(&[2, 0])).unwrap(),
            FillingCell { row: 2, col: 2 }
        );
    }

    #[test]
    fn shape_of_families() {
        let t = FillingSpec::times_two_plain(3).unwrap();
        assert_eq!((t.ambient_dim(), t.rows(), t.cols()), (3, 2, 6));
        let b = FillingSpec::block_weighted_plain(2, 3).unwrap();
        assert_eq!((b.ambient_dim(), b.rows(), b.cols()), (12, 5, 6));
    }

    #[test]
    fn dimension_and_codomain_mismatches() {
        let f = ParamFn::zero_shift(2).unwrap();
        assert!(timestwo_index(&p(&[1, 2, 3]), &f).is_err());
        assert!(blockweighted_index(&p(&[1, 2, 3]), 1, 1, &f).is_err());
        assert!(FillingSpec::times_two(3, f.clone()).is_err());
        assert!(FillingSpec::block_weighted(0, 1, f).is_err());
    }

    #[test]
    fn zero_based_variant_collapses_single_block() {
        // with m = 1 the only block has weight 0, so every point is in row 3
        let bad = ZeroBasedBlockWeighted::plain(1, 1).unwrap();
        for x in [[0, 0], [5, -3], [1, 1]] {
            assert_eq!(bad.cell(&x).row, 3);
        }
    }
}
