//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

/// Membership in the `(n,n)` family straight from its defining congruences:
/// `X^l_j` for `j ≤ n` is `∑x ≡ l (4)`, `∑ix ≡ j (n)`; for `j > n` it is
/// `∑x ≡ l+2 (4)`, `∑ix ≡ j (n)`.
pub fn in_times_two_cell(x: &[i64], l: i64, j: i64) -> bool {
    let n = x.len() as i64;
    let s: i64 = x.iter().sum();
    let w: i64 = x.iter().enumerate().map(|(i, c)| (i as i64 + 1) * c).sum();
    let target = if j <= n { l } else { l + 2 };
    (s - target).rem_euclid(4) == 0 && (w - j).rem_euclid(n) == 0
}

/// Direct expansion of `Z^i_l = ⊔_j X^i_{j+l} × Y_j` for the `(1,1)` family
/// composed with the base partition of `Z`.
pub fn expand_compose_2d(z: &[i64]) -> Vec<u32> {
    let (x, y) = (z[0], z[1]);
    let y_part = |j: i64| {
        if j == 1 {
            y.rem_euclid(4) < 2
        } else {
            y.rem_euclid(4) >= 2
        }
    };
    let mut hits = Vec::new();
    for i in 1..=2i64 {
        for l in 1..=2i64 {
            let member = (1..=2i64).any(|j| {
                let jl = (j + l - 1).rem_euclid(2) + 1;
                in_times_two_cell(&[x], i, jl) && y_part(j)
            });
            if member {
                hits.push(((i - 1) * 2 + l) as u32);
            }
        }
    }
    hits
}
