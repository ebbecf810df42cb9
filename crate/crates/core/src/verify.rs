//! Brute-force checks of the lattice definitions over finite boxes.
//!
//! Oracles are total on `Z^n`, so neighbours of boundary points are simply
//! evaluated outside the box. Boxes up to [`VerifyOptions::exhaustive_cap`]
//! points are checked exhaustively; larger boxes need an explicit sampling
//! seed. Work is split across rayon workers and the reports are merged
//! deterministically (violations sorted by point).

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{FillingFamily, Labeling, Scenery};
use crate::error::VerifyError;
use crate::lattice::{for_each_neighbor, LatticeBox, LatticePoint};

pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1_000_000;
pub const DEFAULT_MAX_VIOLATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub seed: u64,
    pub draws: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub exhaustive_cap: u128,
    /// Used only when the box is larger than `exhaustive_cap`.
    pub sampling: Option<Sampling>,
    pub max_violations: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            sampling: None,
            max_violations: DEFAULT_MAX_VIOLATIONS,
        }
    }
}

impl VerifyOptions {
    pub fn sampled(seed: u64, draws: usize) -> Self {
        Self {
            exhaustive_cap: 0,
            sampling: Some(Sampling { seed, draws }),
            ..Self::default()
        }
    }

    pub fn with_sampling(mut self, seed: u64, draws: usize) -> Self {
        self.sampling = Some(Sampling { seed, draws });
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64, draws: usize },
}

/// A point where the checked property fails.
///
/// `observed` holds what the oracle returned on the neighbours of `point`,
/// in canonical neighbour order: 0/1 memberships for set checks, part
/// labels for partition checks, flattened `(row-1)·cols + col` cells for
/// filling checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub point: LatticePoint,
    pub observed: Vec<u32>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    #[serde(rename = "box")]
    pub bbox: String,
    pub mode: Coverage,
    pub points_checked: u64,
    /// First violations in lexicographic order, at most `max_violations`.
    pub violations: Vec<Violation>,
    /// Violations found beyond the reporting cap.
    pub suppressed: u64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn total_violations(&self) -> u64 {
        self.violations.len() as u64 + self.suppressed
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialisation");
        s.push('\n');
        s
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            Coverage::Exhaustive => "exhaustive".to_string(),
            Coverage::Sampled { seed, draws } => format!("sampled (seed {seed}, {draws} draws)"),
        };
        writeln!(f, "check: {}", self.check)?;
        writeln!(f, "box: {}", self.bbox)?;
        writeln!(f, "mode: {mode}")?;
        writeln!(f, "points checked: {}", self.points_checked)?;
        writeln!(f, "violations: {}", self.total_violations())?;
        for v in &self.violations {
            let obs: Vec<String> = v.observed.iter().map(u32::to_string).collect();
            writeln!(
                f,
                "  at {}: {} (neighbours: {})",
                v.point,
                v.detail,
                obs.join(",")
            )?;
        }
        if self.suppressed > 0 {
            writeln!(f, "  ... {} more not shown", self.suppressed)?;
        }
        write!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

#[derive(Default)]
struct Tally {
    count: u64,
    kept: Vec<Violation>,
}

impl Tally {
    fn merge(mut self, other: Tally, cap: usize) -> Tally {
        self.count += other.count;
        self.kept.extend(other.kept);
        self.kept.sort_by(|a, b| a.point.cmp(&b.point));
        self.kept.truncate(cap);
        self
    }
}

fn run_check<F>(
    check: &str,
    dim: usize,
    bx: &LatticeBox,
    opts: &VerifyOptions,
    test: F,
) -> Result<VerificationReport, VerifyError>
where
    F: Fn(&[i64]) -> Option<(Vec<u32>, String)> + Sync,
{
    if bx.dim() != dim {
        return Err(VerifyError::DimensionMismatch {
            expected: dim,
            found: bx.dim(),
        });
    }
    if opts.max_violations == 0 {
        return Err(VerifyError::InvalidOptions(
            "max_violations must be at least 1".into(),
        ));
    }
    let cap = opts.max_violations;
    let visit = |x: LatticePoint| -> Tally {
        match test(x.coords()) {
            Some((observed, detail)) => Tally {
                count: 1,
                kept: vec![Violation {
                    point: x,
                    observed,
                    detail,
                }],
            },
            None => Tally::default(),
        }
    };
    let volume = bx.volume();
    let exhaustive = matches!(volume, Some(v) if v <= opts.exhaustive_cap);
    let (mode, points_checked, tally) = if exhaustive {
        let volume = volume.expect("checked above") as u64;
        let tally = (0..volume)
            .into_par_iter()
            .map(|i| visit(bx.point_at(i as u128)))
            .reduce(Tally::default, |a, b| a.merge(b, cap));
        (Coverage::Exhaustive, volume, tally)
    } else {
        let Sampling { seed, draws } = opts.sampling.ok_or(VerifyError::SeedRequired {
            volume: volume.unwrap_or(u128::MAX),
            cap: opts.exhaustive_cap,
        })?;
        let tally = bx
            .sample(seed, draws)
            .into_par_iter()
            .map(visit)
            .reduce(Tally::default, |a, b| a.merge(b, cap));
        (Coverage::Sampled { seed, draws }, draws as u64, tally)
    };
    let suppressed = tally.count - tally.kept.len() as u64;
    Ok(VerificationReport {
        check: check.to_string(),
        bbox: bx.to_string(),
        mode,
        points_checked,
        passed: tally.count == 0,
        violations: tally.kept,
        suppressed,
    })
}

/// Checks that every tested point has exactly `count` neighbours in the set.
pub fn verify_biased_set<S: Scenery>(
    member: &S,
    bx: &LatticeBox,
    count: u32,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let name = format!("biased set ({count} of {} neighbours)", 2 * member.dim());
    run_check(&name, member.dim(), bx, opts, |x| {
        let mut observed = Vec::with_capacity(2 * x.len());
        for_each_neighbor(x, |_, y| observed.push(member.value(y) as u32));
        let found: u32 = observed.iter().sum();
        (found != count).then(|| {
            (
                observed,
                format!("expected {count} neighbours in the set, found {found}"),
            )
        })
    })
}

/// Checks that the `2n` neighbour labels of every tested point are exactly
/// `1..=2n`, each once.
pub fn verify_biased_partition<L: Labeling>(
    parts: &L,
    bx: &LatticeBox,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let slots = 2 * parts.dim();
    let name = format!("biased partition ({slots} parts)");
    run_check(&name, parts.dim(), bx, opts, |x| {
        let mut observed = Vec::with_capacity(slots);
        for_each_neighbor(x, |_, y| observed.push(parts.label(y)));
        let mut seen = vec![false; slots + 1];
        let ok = observed.iter().all(|&l| {
            let fresh = (1..=slots as u32).contains(&l) && !seen[l as usize];
            if fresh {
                seen[l as usize] = true;
            }
            fresh
        });
        (!ok).then(|| {
            (
                observed,
                format!("neighbour labels are not a permutation of 1..={slots}"),
            )
        })
    })
}

/// Checks the filling-family property: a point outside row `X^i` has exactly
/// one neighbour in each `X^i_j`; a point inside `X^i` has none in `X^i`.
pub fn verify_filling<F: FillingFamily>(
    family: &F,
    bx: &LatticeBox,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let rows = family.rows();
    let cols = family.cols();
    let name = format!(
        "filling family ({} rows x {} columns on Z^{})",
        rows,
        cols,
        family.ambient_dim()
    );
    run_check(&name, family.ambient_dim(), bx, opts, |x| {
        let own = family.cell(x);
        let mut cells = Vec::with_capacity(2 * x.len());
        for_each_neighbor(x, |_, y| cells.push(family.cell(y)));
        let observed: Vec<u32> = cells.iter().map(|c| (c.row - 1) * cols + c.col).collect();
        let inside = cells.iter().filter(|c| c.row == own.row).count();
        if inside > 0 {
            return Some((
                observed,
                format!(
                    "point in row {} has {inside} neighbour(s) in its own row",
                    own.row
                ),
            ));
        }
        let mut hits = vec![0u32; (rows * cols) as usize];
        for c in &cells {
            hits[((c.row - 1) * cols + c.col - 1) as usize] += 1;
        }
        for row in (1..=rows).filter(|&r| r != own.row) {
            let slice = &hits[((row - 1) * cols) as usize..(row * cols) as usize];
            if let Some(j) = slice.iter().position(|&h| h != 1) {
                return Some((
                    observed,
                    format!(
                        "point in row {} has {} neighbour(s) in cell ({row},{})",
                        own.row,
                        slice[j],
                        j + 1
                    ),
                ));
            }
        }
        None
    })
}

/// First point of `bx` in lexicographic order where `a` and `b` disagree.
pub fn find_difference<A, B, T>(a: A, b: B, bx: &LatticeBox) -> Option<LatticePoint>
where
    A: Fn(&[i64]) -> T + Sync,
    B: Fn(&[i64]) -> T + Sync,
    T: PartialEq,
{
    let volume = u64::try_from(bx.volume()?).ok()?;
    (0..volume)
        .into_par_iter()
        .map(|i| bx.point_at(i as u128))
        .find_first(|x| a(x.coords()) != b(x.coords()))
}

/// First disagreement among `draws` seeded uniform samples of `bx`, in
/// sampling order.
pub fn find_difference_sampled<A, B, T>(
    a: A,
    b: B,
    bx: &LatticeBox,
    seed: u64,
    draws: usize,
) -> Option<LatticePoint>
where
    A: Fn(&[i64]) -> T + Sync,
    B: Fn(&[i64]) -> T + Sync,
    T: PartialEq,
{
    bx.sample(seed, draws)
        .into_par_iter()
        .find_first(|x| a(x.coords()) != b(x.coords()))
}
