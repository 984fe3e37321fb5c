//! ±1 sequences, their prefix-sum profiles, classification, and the
//! index sets (peaks and pivots) the direct bijection is built on.
//!
//! All positions reported by this module are 1-based.

use std::fmt;
use std::ops::{Neg, Range};
use std::str::FromStr;

use crate::error::{Domain, Error, Result};

/// One vote: `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Plus,
    Minus,
}

impl Step {
    pub fn value(self) -> i64 {
        match self {
            Step::Plus => 1,
            Step::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Step::Plus => '+',
            Step::Minus => '-',
        }
    }
}

impl Neg for Step {
    type Output = Step;

    fn neg(self) -> Step {
        match self {
            Step::Plus => Step::Minus,
            Step::Minus => Step::Plus,
        }
    }
}

/// A sequence of 2n steps over {+1, −1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSeq(Vec<Step>);

impl SignSeq {
    pub fn empty() -> Self {
        SignSeq(Vec::new())
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        if !steps.len().is_multiple_of(2) {
            return Err(Error::OddLength(steps.len()));
        }
        Ok(SignSeq(steps))
    }

    /// Decodes the low `len` bits of `mask`, most significant first, with a
    /// set bit meaning `-`. Counting masks upward therefore walks sequences in
    /// lexicographic order with `+` < `-`.
    ///
    /// `len` must be even and at most 64.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        debug_assert!(len.is_multiple_of(2) && len <= 64);
        let steps = (0..len)
            .map(|i| {
                if (mask >> (len - 1 - i)) & 1 == 1 {
                    Step::Minus
                } else {
                    Step::Plus
                }
            })
            .collect();
        SignSeq(steps)
    }

    /// Inverse of [`SignSeq::from_mask`]. Panics above 64 steps.
    pub fn to_mask(&self) -> u64 {
        assert!(self.0.len() <= 64, "sequence too long for a u64 mask");
        self.0
            .iter()
            .fold(0u64, |acc, &s| (acc << 1) | u64::from(s == Step::Minus))
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Half the length.
    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn first(&self) -> Option<Step> {
        self.0.first().copied()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|s| s.value()).sum()
    }

    pub fn prefix_sums(&self) -> PrefixProfile {
        let sums = self
            .0
            .iter()
            .scan(0i64, |acc, s| {
                *acc += s.value();
                Some(*acc)
            })
            .collect();
        PrefixProfile(sums)
    }

    pub fn classify(&self) -> SeqClass {
        SeqClass::of(self)
    }

    pub fn negate(&self) -> SignSeq {
        SignSeq(self.0.iter().map(|&s| -s).collect())
    }

    /// Negates the first `len` steps and leaves the rest untouched.
    pub fn negate_prefix(&self, len: usize) -> SignSeq {
        let steps = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &s)| if i < len { -s } else { s })
            .collect();
        SignSeq(steps)
    }

    /// Keeps the steps at the given 1-based positions and flips every other one.
    pub fn flip_outside(&self, keep: &IndexSet) -> SignSeq {
        let mut steps: Vec<Step> = self.0.iter().map(|&s| -s).collect();
        for &pos in keep.indices() {
            steps[pos - 1] = self.0[pos - 1];
        }
        SignSeq(steps)
    }

    /// Length m of the shortest nonempty balanced prefix, if σ ever hits zero.
    pub fn smallest_balanced_prefix_len(&self) -> Option<usize> {
        self.prefix_sums().zeros().next()
    }

    /// Length of the longest balanced prefix; 0 when σ never hits zero.
    pub fn longest_balanced_prefix_len(&self) -> usize {
        self.prefix_sums().zeros().last().unwrap_or(0)
    }

    /// Splits at the longest balanced prefix: a balanced head and a
    /// zero-free (possibly empty) tail.
    pub fn balanced_factorization(&self) -> (SignSeq, SignSeq) {
        let (head, tail) = self.0.split_at(self.longest_balanced_prefix_len());
        (SignSeq(head.to_vec()), SignSeq(tail.to_vec()))
    }

    /// The peak set π(B) of a sequence in Bₙ⁺: for each height k from 1 to
    /// the maximum of σ, the left-most index at which σ equals k.
    pub fn peaks(&self) -> Result<IndexSet> {
        let class = self.classify();
        if !(class.balanced && class.starts_plus) {
            return Err(Error::Domain(Domain::BalancedStartPlus));
        }
        let mut indices = Vec::new();
        let mut highest = 0;
        for (i, &height) in self.prefix_sums().as_slice().iter().enumerate() {
            if height > highest {
                highest = height;
                indices.push(i + 1);
            }
        }
        Ok(IndexSet(indices))
    }

    /// The pivot set Π(P) of a sequence in Pₙ: Π₁ = 1 and, for 2 ≤ k ≤ T with
    /// T = σ₂ₙ / 2, one past the right-most index at which σ equals k − 1.
    pub fn pivots(&self) -> Result<IndexSet> {
        let class = self.classify();
        if !class.positive {
            return Err(Error::Domain(Domain::Positive));
        }
        if self.is_empty() {
            return Ok(IndexSet::default());
        }
        let profile = self.prefix_sums();
        let top = (class.sum / 2) as usize;
        // last[h] = right-most 1-based index with σ = h
        let mut last = vec![0usize; top];
        for (i, &height) in profile.as_slice().iter().enumerate() {
            let h = height as usize;
            if h < top {
                last[h] = i + 1;
            }
        }
        let mut indices = Vec::with_capacity(top);
        indices.push(1);
        indices.extend(last[1..].iter().map(|&j| j + 1));
        Ok(IndexSet(indices))
    }
}

impl FromStr for SignSeq {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let steps = text
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '+' => Ok(Step::Plus),
                '-' => Ok(Step::Minus),
                _ => Err(Error::InvalidChar {
                    ch,
                    position: i + 1,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        SignSeq::from_steps(steps)
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

/// Parses the `+`/`-` text encoding.
pub fn parse(text: &str) -> Result<SignSeq> {
    text.parse()
}

pub fn format(seq: &SignSeq) -> String {
    seq.to_string()
}

/// The running sums σ₁..σ₂ₙ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrefixProfile(Vec<i64>);

impl PrefixProfile {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// σ at a 1-based position.
    pub fn at(&self, position: usize) -> i64 {
        self.0[position - 1]
    }

    /// σ₂ₙ, or 0 for the empty profile.
    pub fn total(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn max(&self) -> Option<i64> {
        self.0.iter().copied().max()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.iter().copied().min()
    }

    /// 1-based positions where σ is zero, in increasing order.
    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &h)| h == 0)
            .map(|(i, _)| i + 1)
    }
}

/// Classification flags of a sequence.
///
/// The empty sequence is balanced, zero-free, positive, and counted as
/// starting with `+`, so that B₀⁺ = P₀ = {ε} and both direct maps fix it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeqClass {
    pub n: usize,
    /// σ₂ₙ, always even (2k).
    pub sum: i64,
    pub starts_plus: bool,
    pub balanced: bool,
    pub zero_free: bool,
    pub positive: bool,
    pub negative: bool,
}

impl SeqClass {
    pub fn of(seq: &SignSeq) -> Self {
        let mut sum = 0i64;
        let mut zero_free = true;
        let mut positive = true;
        let mut negative = !seq.is_empty();
        for step in seq.steps() {
            sum += step.value();
            zero_free &= sum != 0;
            positive &= sum > 0;
            negative &= sum < 0;
        }
        SeqClass {
            n: seq.n(),
            sum,
            starts_plus: seq.first() != Some(Step::Minus),
            balanced: sum == 0,
            zero_free,
            positive,
            negative,
        }
    }

    /// k in sum = 2k.
    pub fn half_sum(&self) -> i64 {
        self.sum / 2
    }
}

pub fn classify(seq: &SignSeq) -> SeqClass {
    SeqClass::of(seq)
}

/// A strictly increasing set of 1-based positions (peaks or pivots).
///
/// The sentinel 2n + 1 that closes the last interval is not stored;
/// [`IndexSet::intervals`] supplies it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.binary_search(&position).is_ok()
    }

    /// The open intervals (x_k, x_{k+1}) as 1-based half-open ranges,
    /// paired with k, for a sequence of length `len`.
    pub fn intervals(&self, len: usize) -> impl Iterator<Item = (usize, Range<usize>)> + '_ {
        self.0.iter().enumerate().map(move |(i, &start)| {
            let end = self.0.get(i + 1).copied().unwrap_or(len + 1);
            (i + 1, start + 1..end)
        })
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(set: IndexSet) -> Self {
        set.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{idx}")?;
        }
        f.write_str("}")
    }
}
