//! Evidence checks that a walk's value sequence looks like iid Bernoulli(p).
//!
//! These are finite-sample tests with explicit thresholds; every threshold
//! used is echoed back in the result so reports are self-describing.

use serde::{Deserialize, Serialize};

use crate::error::SimError;

pub const DEFAULT_Z: f64 = 3.0;
pub const DEFAULT_MAX_LAG: usize = 4;
pub const DEFAULT_MAX_GRAM: usize = 3;
pub const DEFAULT_ALPHA: f64 = 0.01;

/// A rational bias `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bias {
    pub num: u64,
    pub den: u64,
}

impl Bias {
    pub fn new(num: u64, den: u64) -> Result<Self, SimError> {
        if den == 0 || num > den {
            return Err(SimError::InvalidBias { num, den });
        }
        Ok(Self { num, den })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_degenerate(&self) -> bool {
        self.num == 0 || self.num == self.den
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStats {
    pub length: u64,
    pub ones: u64,
    pub frequency: f64,
    /// Sample autocorrelation at lags `1..=autocorrelations.len()`; zero for
    /// a constant sequence.
    pub autocorrelations: Vec<f64>,
    /// `kgram_counts[k-1][code]` counts overlapping `k`-grams read
    /// most-significant bit first; each row sums to `length - k + 1`.
    pub kgram_counts: Vec<Vec<u64>>,
    /// `transitions[a][b]` counts consecutive pairs `(a, b)`.
    pub transitions: [[u64; 2]; 2],
}

impl TraceStats {
    /// Empirical `P(next = 1 | current = v)`, if `v` ever occurs before the end.
    pub fn transition_frequency(&self, v: usize) -> Option<f64> {
        let row = self.transitions[v];
        let total = row[0] + row[1];
        (total > 0).then(|| row[1] as f64 / total as f64)
    }
}

pub fn trace_stats(seq: &[bool], max_lag: usize, max_gram: usize) -> TraceStats {
    let n = seq.len();
    let ones = seq.iter().filter(|&&b| b).count() as u64;
    let mean = if n == 0 { 0.0 } else { ones as f64 / n as f64 };
    let centred: Vec<f64> = seq.iter().map(|&b| b as u8 as f64 - mean).collect();
    let variance: f64 = centred.iter().map(|c| c * c).sum();
    let autocorrelations = (1..=max_lag)
        .map(|lag| {
            if variance == 0.0 || lag >= n {
                return 0.0;
            }
            let cov: f64 = centred
                .iter()
                .zip(&centred[lag..])
                .map(|(a, b)| a * b)
                .sum();
            cov / variance
        })
        .collect();

    let kgram_counts = (1..=max_gram)
        .map(|k| {
            let mut counts = vec![0u64; 1 << k];
            if n >= k {
                let mask = (1usize << k) - 1;
                let mut code = 0usize;
                for (i, &b) in seq.iter().enumerate() {
                    code = ((code << 1) | b as usize) & mask;
                    if i + 1 >= k {
                        counts[code] += 1;
                    }
                }
            }
            counts
        })
        .collect();

    let mut transitions = [[0u64; 2]; 2];
    for w in seq.windows(2) {
        transitions[w[0] as usize][w[1] as usize] += 1;
    }

    TraceStats {
        length: n as u64,
        ones,
        frequency: mean,
        autocorrelations,
        kgram_counts,
        transitions,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BernoulliCheck {
    pub bias: Bias,
    pub z: f64,
    /// `z · sqrt(p(1-p)/N)`.
    pub frequency_bound: f64,
    pub frequency_ok: bool,
    /// `z / sqrt(N)`.
    pub autocorrelation_bound: f64,
    /// `None` when skipped for `p ∈ {0, 1}`.
    pub autocorrelation_ok: Option<bool>,
    pub passed: bool,
    pub stats: TraceStats,
}

/// Passes iff `|freq - p| ≤ z·sqrt(p(1-p)/N)` and every lag-`1..=max_lag`
/// autocorrelation is at most `z/sqrt(N)` in magnitude. For degenerate `p`
/// the frequency must match exactly and autocorrelations are not checked.
pub fn bernoulli_check(seq: &[bool], bias: Bias, z: f64, max_lag: usize) -> BernoulliCheck {
    let stats = trace_stats(seq, max_lag, DEFAULT_MAX_GRAM);
    let n = stats.length.max(1) as f64;
    let p = bias.value();
    let frequency_bound = z * (p * (1.0 - p) / n).sqrt();
    let frequency_ok = if bias.is_degenerate() {
        stats.ones * bias.den == stats.length * bias.num
    } else {
        (stats.frequency - p).abs() <= frequency_bound
    };
    let autocorrelation_bound = z / n.sqrt();
    let autocorrelation_ok = (!bias.is_degenerate()).then(|| {
        stats
            .autocorrelations
            .iter()
            .all(|r| r.abs() <= autocorrelation_bound)
    });
    BernoulliCheck {
        bias,
        z,
        frequency_bound,
        frequency_ok,
        autocorrelation_bound,
        passed: frequency_ok && autocorrelation_ok.unwrap_or(true),
        autocorrelation_ok,
        stats,
    }
}

const ALPHAS: [f64; 3] = [0.05, 0.01, 0.001];

/// Upper chi-square quantiles for `2^k - 1` degrees of freedom, `k = 1..=6`.
const CHI2_CRITICAL: [[f64; 6]; 3] = [
    [3.841459, 7.814728, 14.06714, 24.99579, 44.985343, 82.528727],
    [
        6.634897, 11.344867, 18.475307, 30.577914, 52.191395, 92.010024,
    ],
    [
        10.827566, 16.266236, 24.321886, 37.697298, 61.098306, 103.442377,
    ],
];

/// Tabulated critical value for `k`-gram cells at significance `alpha`
/// (0.05, 0.01 or 0.001).
pub fn chi_square_critical(k: usize, alpha: f64) -> Result<f64, SimError> {
    if !(1..=6).contains(&k) {
        return Err(SimError::UnsupportedGram(k));
    }
    let row = ALPHAS
        .iter()
        .position(|&a| (a - alpha).abs() < 1e-12)
        .ok_or(SimError::UnsupportedAlpha(alpha))?;
    Ok(CHI2_CRITICAL[row][k - 1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KgramComparison {
    pub k: usize,
    pub alpha: f64,
    pub blocks_a: u64,
    pub blocks_b: u64,
    pub statistic: f64,
    pub degrees_of_freedom: u32,
    pub critical: f64,
    pub distinguished: bool,
}

/// Counts of the non-overlapping `k`-bit blocks of `seq`.
fn block_counts(seq: &[bool], k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; 1 << k];
    for block in seq.chunks_exact(k) {
        let code = block.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        counts[code] += 1;
    }
    counts
}

/// Two-sample chi-square homogeneity test on the `2^k` block frequencies.
///
/// Blocks are non-overlapping, so under iid sampling the cell counts are
/// multinomial and the statistic is asymptotically chi-square with
/// `2^k - 1` degrees of freedom. Cells empty in both samples are skipped.
pub fn kgram_compare(
    a: &[bool],
    b: &[bool],
    k: usize,
    alpha: f64,
) -> Result<KgramComparison, SimError> {
    let critical = chi_square_critical(k, alpha)?;
    let needed = 10 << k;
    for s in [a, b] {
        if s.len() < needed {
            return Err(SimError::InsufficientLength {
                len: s.len(),
                k,
                needed,
            });
        }
    }
    let ca = block_counts(a, k);
    let cb = block_counts(b, k);
    let ra: u64 = ca.iter().sum();
    let rb: u64 = cb.iter().sum();
    let wa = (rb as f64 / ra as f64).sqrt();
    let wb = (ra as f64 / rb as f64).sqrt();
    let statistic = ca
        .iter()
        .zip(&cb)
        .filter(|(x, y)| **x + **y > 0)
        .map(|(&x, &y)| {
            let d = wa * x as f64 - wb * y as f64;
            d * d / (x + y) as f64
        })
        .sum();
    Ok(KgramComparison {
        k,
        alpha,
        blocks_a: ra,
        blocks_b: rb,
        statistic,
        degrees_of_freedom: (1u32 << k) - 1,
        critical,
        distinguished: statistic >= critical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn stats_on_a_small_sequence() {
        let s = trace_stats(&bits("0110100"), 2, 2);
        assert_eq!(s.length, 7);
        assert_eq!(s.ones, 3);
        assert_eq!(s.kgram_counts[0], vec![4, 3]);
        // pairs: 01 11 10 01 10 00
        assert_eq!(s.kgram_counts[1], vec![1, 2, 2, 1]);
        assert_eq!(s.transitions, [[1, 2], [2, 1]]);
        for (k, row) in s.kgram_counts.iter().enumerate() {
            assert_eq!(row.iter().sum::<u64>(), s.length - k as u64);
        }
    }

    #[test]
    fn autocorrelation_of_alternating_sequence() {
        let alt: Vec<bool> = (0..1000).map(|i| i % 2 == 0).collect();
        let s = trace_stats(&alt, 2, 1);
        assert!((s.autocorrelations[0] + 0.999).abs() < 1e-9);
        assert!((s.autocorrelations[1] - 0.998).abs() < 1e-9);
        let constant = trace_stats(&[true; 20], 3, 1);
        assert_eq!(constant.autocorrelations, vec![0.0; 3]);
    }

    #[test]
    fn degenerate_bias() {
        let ones = vec![true; 1000];
        let c = bernoulli_check(&ones, Bias::new(1, 1).unwrap(), 3.0, 4);
        assert!(c.passed);
        assert_eq!(c.autocorrelation_ok, None);
        assert!(!bernoulli_check(&ones, Bias::new(0, 1).unwrap(), 3.0, 4).passed);
    }

    #[test]
    fn all_ones_is_not_fair() {
        let ones = vec![true; 1000];
        let c = bernoulli_check(&ones, Bias::new(1, 2).unwrap(), 3.0, 4);
        assert!(!c.frequency_ok);
        assert!((c.frequency_bound - 3.0 * (0.25f64 / 1000.0).sqrt()).abs() < 1e-12);
        assert!(!c.passed);
    }

    #[test]
    fn bias_validation() {
        assert!(Bias::new(3, 2).is_err());
        assert!(Bias::new(0, 0).is_err());
    }

    #[test]
    fn identical_sequences_are_not_distinguished() {
        let s: Vec<bool> = (0..400).map(|i| (i * 7 + i / 3) % 5 < 2).collect();
        let c = kgram_compare(&s, &s, 3, 0.01).unwrap();
        assert_eq!(c.statistic, 0.0);
        assert!(!c.distinguished);
        assert_eq!(c.degrees_of_freedom, 7);
    }

    #[test]
    fn kgram_compare_preconditions() {
        let short = vec![true; 79];
        assert!(matches!(
            kgram_compare(&short, &short, 3, 0.01),
            Err(SimError::InsufficientLength { needed: 80, .. })
        ));
        assert!(kgram_compare(&short, &short, 7, 0.01).is_err());
        assert!(kgram_compare(&short, &short, 1, 0.02).is_err());
    }

    #[test]
    fn block_statistic_by_hand() {
        // a: 20 ones, b: 10 ones + 10 zeros, k = 1
        let a = vec![true; 20];
        let mut b = vec![true; 10];
        b.extend(vec![false; 10]);
        let c = kgram_compare(&a, &b, 1, 0.05).unwrap();
        // cells: zeros (0, 10) -> 100/10 = 10; ones (20, 10) -> 100/30
        assert!((c.statistic - (10.0 + 100.0 / 30.0)).abs() < 1e-12);
        assert!(c.distinguished);
    }
}
