//! Simple random walks over sceneries and the statistics of what they see.
//!
//! On a `c/2n`-biased scenery every step lands on a 1 with probability
//! exactly `c/2n` whatever the current position, so the observed sequence
//! after the start is iid Bernoulli(`c/2n`). The checks here collect
//! finite-sample evidence of that.

mod stats;
mod walk;

pub use stats::{
    bernoulli_check, chi_square_critical, kgram_compare, trace_stats, BernoulliCheck, Bias,
    KgramComparison, TraceStats, DEFAULT_ALPHA, DEFAULT_MAX_GRAM, DEFAULT_MAX_LAG, DEFAULT_Z,
};
pub use walk::{simulate, simulate_many, walk_path, BitSeq, WalkConfig, Walker, GENERATOR};
