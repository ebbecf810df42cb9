//! The two planar constructions driven by a function on diagonals.
//!
//! Both are indexed by the anti-diagonal `d = x_1 + x_2`, which is why a
//! single free function `f: Z -> [2]` can change them independently on
//! every group of diagonals.

use super::param::ParamFn;
use crate::error::ConstructionError;
use crate::lattice::LatticePoint;

/// Translates of the base set, in label order 1..=4.
const TRANSLATES: [(i64, i64); 4] = [(0, 0), (1, -1), (1, 1), (2, 0)];

/// Membership in `X_f = S + {(2t,2t), (2t,2t) + e_{f(t)} : t ∈ Z}` where
/// `S = {x : x_1 + x_2 = 0, x_1 even}`.
fn in_base_set(f: &ParamFn, x1: i128, x2: i128) -> bool {
    let d = x1 + x2;
    let t = d.div_euclid(4);
    match d.rem_euclid(4) {
        0 => (x1 - 2 * t).rem_euclid(2) == 0,
        1 => {
            let shift = if f.eval(t) == 1 { 1 } else { 0 };
            (x1 - 2 * t - shift).rem_euclid(2) == 0
        }
        _ => false,
    }
}

pub(crate) fn z2_label(f: &ParamFn, x: &[i64]) -> u32 {
    debug_assert_eq!(x.len(), 2);
    let (x1, x2) = (x[0] as i128, x[1] as i128);
    for (label, (a, b)) in TRANSLATES.iter().enumerate() {
        if in_base_set(f, x1 - *a as i128, x2 - *b as i128) {
            return label as u32 + 1;
        }
    }
    unreachable!("the four translates cover Z^2")
}

fn check(f: &ParamFn, x: &LatticePoint) -> Result<(), ConstructionError> {
    if x.dim() != 2 {
        return Err(ConstructionError::DimensionMismatch {
            expected: 2,
            found: x.dim(),
        });
    }
    if f.codomain() != 2 {
        return Err(ConstructionError::InvalidParam(format!(
            "planar constructions need codomain 2, got {}",
            f.codomain()
        )));
    }
    Ok(())
}

/// Which of `X_f, X_f + (1,-1), X_f + (1,1), X_f + (2,0)` contains `x`.
pub fn z2_part(f: &ParamFn, x: &LatticePoint) -> Result<u32, ConstructionError> {
    check(f, x)?;
    Ok(z2_label(f, x.coords()))
}

pub(crate) fn half_member(f: &ParamFn, x: &[i64]) -> bool {
    let (x1, x2) = (x[0] as i128, x[1] as i128);
    (x1 - f.eval(x1 + x2) as i128).rem_euclid(2) == 0
}

/// `1` iff `x_1 ≡ f(x_1 + x_2) (mod 2)`; a ½-biased set for every `f`.
pub fn z2_half_biased(f: &ParamFn, x: &LatticePoint) -> Result<u8, ConstructionError> {
    check(f, x)?;
    Ok(half_member(f, x.coords()) as u8)
}
