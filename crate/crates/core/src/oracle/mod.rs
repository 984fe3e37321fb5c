//! Exhaustive enumeration of Sₙ and the verification suites built on it.
//!
//! Sequences are enumerated as u64 masks (set bit = `-`, most significant
//! step first), so mask order is lexicographic order with `+` < `-`. The 4ⁿ
//! space is cut into contiguous shards by the leading steps; shards run on a
//! worker pool and their results are merged in shard order, which keeps every
//! stream and report independent of the worker count.

mod counting;
mod report;
mod verify;

use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::seq::SignSeq;

pub use counting::{ballot_strict_count, binomial, catalan, count_class, four_pow};
pub use report::{Failure, VerificationReport};
pub use verify::Suite;

pub type ExactInt = BigUint;

pub const DEFAULT_MAX_N: usize = 12;
/// Largest n whose 2n steps fit a u64 mask with room for the shard arithmetic.
pub const MASK_MAX_N: usize = 31;
/// Largest n accepted by the arithmetic-only identity checks.
pub const ARITHMETIC_MAX_N: usize = 64;
const SHARD_PREFIX_STEPS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n={n} exceeds the enumeration limit {max}")]
    LimitExceeded { n: usize, max: usize },
    #[error("k={k} is out of range for n={n} (need 0 <= k <= n)")]
    InvalidK { k: usize, n: usize },
    #[error("invalid votes a={a}, b={b} (need a > b >= 0)")]
    InvalidVotes { a: u64, b: u64 },
}

/// A class of sequences in Sₙ. `k` refers to a total of 2k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeqFilter {
    /// All of Sₙ.
    All,
    /// Bₙ.
    Balanced,
    /// Bₙ⁺.
    BalancedStartPlus,
    /// Fₙ.
    ZeroFree,
    /// Pₙ.
    Positive,
    /// Nₙ.
    Negative,
    /// Sₙ,ₖ⁺.
    SumStartPlus(usize),
    /// Sₙ,ₖ⁻.
    SumStartMinus(usize),
    /// Pₙ,ₖ.
    PositiveWithSum(usize),
    /// Tₙ,ₖ⁺ = Sₙ,ₖ⁺ minus Pₙ,ₖ.
    TouchingStartPlus(usize),
    /// Balanced with every prefix sum ≥ 0 (the weak ballot / Dyck class).
    WeakBallot,
}

impl SeqFilter {
    pub fn k(&self) -> Option<usize> {
        match *self {
            SeqFilter::SumStartPlus(k)
            | SeqFilter::SumStartMinus(k)
            | SeqFilter::PositiveWithSum(k)
            | SeqFilter::TouchingStartPlus(k) => Some(k),
            _ => None,
        }
    }

    pub fn matches(&self, seq: &SignSeq) -> bool {
        let c = seq.classify();
        let sum_is = |k: usize| c.sum == 2 * k as i64;
        match *self {
            SeqFilter::All => true,
            SeqFilter::Balanced => c.balanced,
            SeqFilter::BalancedStartPlus => c.balanced && c.starts_plus,
            SeqFilter::ZeroFree => c.zero_free,
            SeqFilter::Positive => c.positive,
            SeqFilter::Negative => c.negative,
            SeqFilter::SumStartPlus(k) => c.starts_plus && sum_is(k),
            SeqFilter::SumStartMinus(k) => !c.starts_plus && sum_is(k),
            SeqFilter::PositiveWithSum(k) => c.positive && sum_is(k),
            SeqFilter::TouchingStartPlus(k) => c.starts_plus && !c.positive && sum_is(k),
            SeqFilter::WeakBallot => c.balanced && seq.prefix_sums().min().is_none_or(|m| m >= 0),
        }
    }
}

impl fmt::Display for SeqFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqFilter::All => f.write_str("all"),
            SeqFilter::Balanced => f.write_str("balanced"),
            SeqFilter::BalancedStartPlus => f.write_str("balanced-start-plus"),
            SeqFilter::ZeroFree => f.write_str("zero-free"),
            SeqFilter::Positive => f.write_str("positive"),
            SeqFilter::Negative => f.write_str("negative"),
            SeqFilter::SumStartPlus(k) => write!(f, "sum-start-plus(k={k})"),
            SeqFilter::SumStartMinus(k) => write!(f, "sum-start-minus(k={k})"),
            SeqFilter::PositiveWithSum(k) => write!(f, "positive-sum(k={k})"),
            SeqFilter::TouchingStartPlus(k) => write!(f, "touching-start-plus(k={k})"),
            SeqFilter::WeakBallot => f.write_str("weak-ballot"),
        }
    }
}

/// Lexicographic stream of the sequences of one mask range that pass a filter.
#[derive(Clone, Debug)]
pub struct Enumeration {
    len: usize,
    masks: Range<u64>,
    filter: SeqFilter,
}

impl Iterator for Enumeration {
    type Item = SignSeq;

    fn next(&mut self) -> Option<SignSeq> {
        for mask in self.masks.by_ref() {
            let seq = SignSeq::from_mask(mask, self.len);
            if self.filter.matches(&seq) {
                return Some(seq);
            }
        }
        None
    }
}

/// Enumeration limits and worker count shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    max_n: usize,
    workers: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_n: DEFAULT_MAX_N,
            workers: 1,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Raises or lowers the enumeration cap; values above [`MASK_MAX_N`] are clamped.
    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n.min(MASK_MAX_N);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn check_limit(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_n {
            return Err(OracleError::LimitExceeded { n, max: self.max_n });
        }
        Ok(())
    }

    /// Every sequence of Sₙ passing `filter`, in lexicographic order (`+` < `-`).
    pub fn enumerate(&self, n: usize, filter: SeqFilter) -> Result<Enumeration, OracleError> {
        self.check_limit(n)?;
        Ok(Enumeration {
            len: 2 * n,
            masks: 0..1u64 << (2 * n),
            filter,
        })
    }

    /// Same stream as [`Oracle::enumerate`], produced shard by shard on the worker pool.
    pub fn enumerate_sharded(
        &self,
        n: usize,
        filter: SeqFilter,
    ) -> Result<Vec<SignSeq>, OracleError> {
        self.check_limit(n)?;
        let len = 2 * n;
        let parts = self.run_shards(n, |masks| {
            Enumeration { len, masks, filter }.collect::<Vec<_>>()
        });
        Ok(parts.into_iter().flatten().collect())
    }

    /// Enumerated cardinality of a class.
    pub fn count_enumerated(&self, n: usize, filter: SeqFilter) -> Result<ExactInt, OracleError> {
        self.check_limit(n)?;
        let len = 2 * n;
        let counts = self.run_shards(n, |masks| Enumeration { len, masks, filter }.count() as u64);
        Ok(counts.into_iter().map(ExactInt::from).sum())
    }

    /// Contiguous mask ranges covering 0..4ⁿ, cut by the leading steps.
    pub fn shards(n: usize) -> Vec<Range<u64>> {
        let len = 2 * n;
        let prefix = len.min(SHARD_PREFIX_STEPS);
        let width = len - prefix;
        (0..1u64 << prefix)
            .map(|j| j << width..(j + 1) << width)
            .collect()
    }

    /// Runs `work` on every shard and returns the results in shard order.
    pub(crate) fn run_shards<R, F>(&self, n: usize, work: F) -> Vec<R>
    where
        R: Send,
        F: Fn(Range<u64>) -> R + Sync + Send,
    {
        let shards = Self::shards(n);
        if self.workers > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
            {
                return pool.install(|| shards.into_par_iter().map(&work).collect());
            }
        }
        shards.into_iter().map(work).collect()
    }
}
