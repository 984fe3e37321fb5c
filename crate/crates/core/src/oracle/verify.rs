//! Exhaustive verification suites.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::One;

use super::counting::{ballot_strict_count, binomial, catalan, count_class, four_pow};
use super::{
    ExactInt, Failure, Oracle, OracleError, SeqFilter, VerificationReport, ARITHMETIC_MAX_N,
};
use crate::bijections::{direct_backward, direct_forward, indirect_f, indirect_g};
use crate::error::Result as SeqResult;
use crate::seq::SignSeq;

/// Per-shard accumulator: a count of examined inputs, failures, and whatever
/// tallies the suite needs. Merged in shard order.
#[derive(Default)]
struct Tally<T> {
    checked: u64,
    failures: Vec<Failure>,
    extra: T,
}

fn fail(failures: &mut Vec<Failure>, seq: &SignSeq, reason: impl Into<String>) {
    failures.push(Failure::new(seq.to_string(), reason));
}

fn expect_count(
    failures: &mut Vec<Failure>,
    label: &str,
    enumerated: &ExactInt,
    formula: &ExactInt,
) {
    if enumerated != formula {
        failures.push(Failure::new(
            "(count)",
            format!("{label}: enumerated {enumerated} but formula gives {formula}"),
        ));
    }
}

impl Oracle {
    /// Bₙ⁺ ↔ Pₙ under the peak/pivot maps.
    pub fn verify_direct_bijection(&self, n: usize) -> Result<VerificationReport, OracleError> {
        self.verify_direct_bijection_with(n, direct_forward, direct_backward)
    }

    /// [`Oracle::verify_direct_bijection`] with the maps supplied by the caller.
    pub fn verify_direct_bijection_with<F, G>(
        &self,
        n: usize,
        forward: F,
        backward: G,
    ) -> Result<VerificationReport, OracleError>
    where
        F: Fn(&SignSeq) -> SeqResult<SignSeq> + Sync + Send,
        G: Fn(&SignSeq) -> SeqResult<SignSeq> + Sync + Send,
    {
        self.check_limit(n)?;
        let started = Instant::now();
        let len = 2 * n;
        // extra = (|Bₙ⁺|, |Pₙ|, forward images as masks)
        let shards = self.run_shards(n, |masks| {
            let mut t: Tally<(u64, u64, Vec<u64>)> = Tally::default();
            for mask in masks {
                let seq = SignSeq::from_mask(mask, len);
                let class = seq.classify();
                if class.balanced && class.starts_plus {
                    t.checked += 1;
                    t.extra.0 += 1;
                    match forward(&seq) {
                        Err(e) => fail(&mut t.failures, &seq, format!("forward: {e}")),
                        Ok(image) => {
                            t.extra.2.push(image.to_mask());
                            check_direct_pair(&mut t.failures, &seq, &image, &backward, "forward");
                        }
                    }
                }
                if class.positive {
                    t.checked += 1;
                    t.extra.1 += 1;
                    match backward(&seq) {
                        Err(e) => fail(&mut t.failures, &seq, format!("backward: {e}")),
                        Ok(image) => {
                            let c = image.classify();
                            if image.len() != len || !(c.balanced && c.starts_plus) {
                                fail(
                                    &mut t.failures,
                                    &seq,
                                    format!("backward image {image} not in B_n^+"),
                                );
                            }
                            match forward(&image) {
                                Ok(back) if back == seq => {}
                                Ok(back) => fail(
                                    &mut t.failures,
                                    &seq,
                                    format!("forward(backward) gave {back}"),
                                ),
                                Err(e) => {
                                    fail(&mut t.failures, &seq, format!("forward(backward): {e}"))
                                }
                            }
                        }
                    }
                }
            }
            t
        });

        let mut report = VerificationReport::new("direct", n);
        let (mut balanced_plus, mut positive) = (0u64, 0u64);
        let mut images = HashSet::new();
        let mut checked = 0u64;
        for shard in shards {
            checked += shard.checked;
            report.failures.extend(shard.failures);
            balanced_plus += shard.extra.0;
            positive += shard.extra.1;
            images.extend(shard.extra.2);
        }
        let formula = count_class(n, SeqFilter::Positive)?;
        expect_count(
            &mut report.failures,
            "|B_n^+|",
            &balanced_plus.into(),
            &formula,
        );
        expect_count(&mut report.failures, "|P_n|", &positive.into(), &formula);
        expect_count(
            &mut report.failures,
            "|forward(B_n^+)|",
            &(images.len() as u64).into(),
            &formula,
        );
        report.checked = checked.into();
        report.elapsed = started.elapsed();
        Ok(report)
    }

    /// Tₙ,ₖ⁺ ↔ Sₙ,ₖ⁻ under negation of the smallest balanced prefix, every k in 1..=n.
    pub fn verify_indirect_bijection(&self, n: usize) -> Result<VerificationReport, OracleError> {
        self.verify_indirect_bijection_with(n, indirect_f, indirect_g)
    }

    pub fn verify_indirect_bijection_with<F, G>(
        &self,
        n: usize,
        f: F,
        g: G,
    ) -> Result<VerificationReport, OracleError>
    where
        F: Fn(&SignSeq) -> SeqResult<SignSeq> + Sync + Send,
        G: Fn(&SignSeq) -> SeqResult<SignSeq> + Sync + Send,
    {
        self.check_limit(n)?;
        let started = Instant::now();
        let len = 2 * n;
        // extra = (|Tₙ,ₖ⁺| by k, |Sₙ,ₖ⁻| by k)
        let shards = self.run_shards(n, |masks| {
            let mut t: Tally<(Vec<u64>, Vec<u64>)> = Tally {
                extra: (vec![0; n + 1], vec![0; n + 1]),
                ..Tally::default()
            };
            for mask in masks {
                let seq = SignSeq::from_mask(mask, len);
                let class = seq.classify();
                if class.sum <= 0 {
                    continue;
                }
                let k = class.half_sum() as usize;
                if class.starts_plus && !class.positive {
                    t.checked += 1;
                    t.extra.0[k] += 1;
                    match f(&seq) {
                        Err(e) => fail(&mut t.failures, &seq, format!("f: {e}")),
                        Ok(image) => {
                            let c = image.classify();
                            if image.len() != len || c.starts_plus || c.sum != class.sum {
                                fail(
                                    &mut t.failures,
                                    &seq,
                                    format!("f image {image} not in S_n,k^- (k={k})"),
                                );
                            }
                            match g(&image) {
                                Ok(back) if back == seq => {}
                                Ok(back) => {
                                    fail(&mut t.failures, &seq, format!("g(f) gave {back}"))
                                }
                                Err(e) => fail(&mut t.failures, &seq, format!("g(f): {e}")),
                            }
                        }
                    }
                } else if !class.starts_plus {
                    t.checked += 1;
                    t.extra.1[k] += 1;
                    match g(&seq) {
                        Err(e) => fail(&mut t.failures, &seq, format!("g: {e}")),
                        Ok(image) => {
                            let c = image.classify();
                            if image.len() != len
                                || !c.starts_plus
                                || c.positive
                                || c.sum != class.sum
                            {
                                fail(
                                    &mut t.failures,
                                    &seq,
                                    format!("g image {image} not in T_n,k^+ (k={k})"),
                                );
                            }
                            match f(&image) {
                                Ok(back) if back == seq => {}
                                Ok(back) => {
                                    fail(&mut t.failures, &seq, format!("f(g) gave {back}"))
                                }
                                Err(e) => fail(&mut t.failures, &seq, format!("f(g): {e}")),
                            }
                        }
                    }
                }
            }
            t
        });

        let mut report = VerificationReport::new("indirect", n);
        let mut touching = vec![0u64; n + 1];
        let mut minus = vec![0u64; n + 1];
        let mut checked = 0u64;
        for shard in shards {
            checked += shard.checked;
            report.failures.extend(shard.failures);
            for k in 0..=n {
                touching[k] += shard.extra.0[k];
                minus[k] += shard.extra.1[k];
            }
        }
        for k in 1..=n {
            let formula = count_class(n, SeqFilter::TouchingStartPlus(k))?;
            expect_count(
                &mut report.failures,
                &format!("|T_n,k^+| k={k}"),
                &touching[k].into(),
                &formula,
            );
            expect_count(
                &mut report.failures,
                &format!("|S_n,k^-| k={k}"),
                &minus[k].into(),
                &formula,
            );
        }
        report.checked = checked.into();
        report.elapsed = started.elapsed();
        Ok(report)
    }

    /// 4ⁿ = Σₖ C(2k,k)·C(2n−2k,n−k).
    ///
    /// Within the enumeration cap this also checks that every sequence splits
    /// uniquely into a balanced prefix and a zero-free suffix and that the
    /// prefix-length histogram matches the summands. Above the cap (up to
    /// n = 64) only the arithmetic identity is checked.
    pub fn verify_convolution_identity(&self, n: usize) -> Result<VerificationReport, OracleError> {
        if n > ARITHMETIC_MAX_N {
            return Err(OracleError::LimitExceeded {
                n,
                max: ARITHMETIC_MAX_N,
            });
        }
        let started = Instant::now();
        let summands: Vec<ExactInt> = (0..=n)
            .map(|k| {
                let (k, m) = (k as u64, (n - k) as u64);
                binomial(2 * k, k as i64) * binomial(2 * m, m as i64)
            })
            .collect();
        let total: ExactInt = summands.iter().sum();

        let structural = n <= self.max_n();
        let mut report = VerificationReport::new(
            if structural {
                "convolution"
            } else {
                "convolution-arithmetic"
            },
            n,
        );
        expect_count(
            &mut report.failures,
            "sum_k C(2k,k)C(2n-2k,n-k) vs 4^n",
            &total,
            &four_pow(n),
        );
        if !structural {
            report.checked = ExactInt::one();
            report.elapsed = started.elapsed();
            return Ok(report);
        }

        let len = 2 * n;
        let shards = self.run_shards(n, |masks| {
            let mut t: Tally<Vec<u64>> = Tally {
                extra: vec![0; n + 1],
                ..Tally::default()
            };
            for mask in masks {
                let seq = SignSeq::from_mask(mask, len);
                t.checked += 1;
                let split = seq.longest_balanced_prefix_len();
                let (head, tail) = seq.balanced_factorization();
                if !head.classify().balanced || !tail.classify().zero_free {
                    fail(
                        &mut t.failures,
                        &seq,
                        format!("split at {split} is not balanced + zero-free"),
                    );
                }
                // σ_j = 0 is required for a balanced head; the tail after j is
                // zero-free iff no later σ vanishes.
                let profile = seq.prefix_sums();
                let sums = profile.as_slice();
                let valid_splits = std::iter::once(0)
                    .chain(profile.zeros())
                    .filter(|&j| sums[j..].iter().all(|&h| h != 0))
                    .count();
                if valid_splits != 1 {
                    fail(
                        &mut t.failures,
                        &seq,
                        format!("{valid_splits} balanced + zero-free splits"),
                    );
                }
                t.extra[split / 2] += 1;
            }
            t
        });

        let mut histogram = vec![0u64; n + 1];
        let mut checked = 0u64;
        for shard in shards {
            checked += shard.checked;
            report.failures.extend(shard.failures);
            for (slot, count) in histogram.iter_mut().zip(shard.extra) {
                *slot += count;
            }
        }
        for (k, summand) in summands.iter().enumerate() {
            expect_count(
                &mut report.failures,
                &format!("balanced prefix of length {}", 2 * k),
                &histogram[k].into(),
                summand,
            );
        }
        report.checked = checked.into();
        report.elapsed = started.elapsed();
        Ok(report)
    }

    /// Σₖ |Pₙ,ₖ| = C(2n−1, n−1), with each |Pₙ,ₖ| = C(2n−1,n−k) − C(2n−1,n−k−1).
    pub fn verify_telescoping(&self, n: usize) -> Result<VerificationReport, OracleError> {
        self.check_limit(n)?;
        let started = Instant::now();
        let len = 2 * n;
        let shards = self.run_shards(n, |masks| {
            let mut t: Tally<Vec<u64>> = Tally {
                extra: vec![0; n + 1],
                ..Tally::default()
            };
            for mask in masks {
                let seq = SignSeq::from_mask(mask, len);
                let class = seq.classify();
                if class.positive {
                    t.checked += 1;
                    t.extra[class.half_sum() as usize] += 1;
                }
            }
            t
        });

        let mut report = VerificationReport::new("telescoping", n);
        let mut by_k = vec![0u64; n + 1];
        let mut checked = 0u64;
        for shard in shards {
            checked += shard.checked;
            for (slot, count) in by_k.iter_mut().zip(shard.extra) {
                *slot += count;
            }
        }
        let first_k = if n == 0 { 0 } else { 1 };
        let mut formula_total = ExactInt::default();
        for (k, &count) in by_k.iter().enumerate() {
            let formula = count_class(n, SeqFilter::PositiveWithSum(k))?;
            if k < first_k {
                expect_count(
                    &mut report.failures,
                    &format!("|P_n,k| k={k}"),
                    &count.into(),
                    &0u32.into(),
                );
                continue;
            }
            expect_count(
                &mut report.failures,
                &format!("|P_n,k| k={k}"),
                &count.into(),
                &formula,
            );
            formula_total += formula;
        }
        let positive = count_class(n, SeqFilter::Positive)?;
        expect_count(
            &mut report.failures,
            "sum_k |P_n,k|",
            &checked.into(),
            &positive,
        );
        expect_count(
            &mut report.failures,
            "telescoped sum_k formula",
            &formula_total,
            &positive,
        );
        report.checked = checked.into();
        report.elapsed = started.elapsed();
        Ok(report)
    }

    /// |Fₙ| = |Bₙ| = C(2n, n), both enumerated over all of Sₙ.
    pub fn verify_zero_free_balanced(&self, n: usize) -> Result<VerificationReport, OracleError> {
        self.check_limit(n)?;
        let started = Instant::now();
        let len = 2 * n;
        let shards = self.run_shards(n, |masks| {
            let mut t: Tally<(u64, u64)> = Tally::default();
            for mask in masks {
                let class = SignSeq::from_mask(mask, len).classify();
                t.checked += 1;
                t.extra.0 += u64::from(class.zero_free);
                t.extra.1 += u64::from(class.balanced);
            }
            t
        });
        let mut report = VerificationReport::new("counts", n);
        let (mut zero_free, mut balanced, mut checked) = (0u64, 0u64, 0u64);
        for shard in shards {
            checked += shard.checked;
            zero_free += shard.extra.0;
            balanced += shard.extra.1;
        }
        let central = binomial(2 * n as u64, n as i64);
        expect_count(&mut report.failures, "|F_n|", &zero_free.into(), &central);
        expect_count(&mut report.failures, "|B_n|", &balanced.into(), &central);
        expect_count(&mut report.failures, "|S_n|", &checked.into(), &four_pow(n));
        report.checked = checked.into();
        report.elapsed = started.elapsed();
        Ok(report)
    }

    /// Strict ballot count for `a` votes against `b`, against all C(a+b, a)
    /// arrangements. Arrangements may have odd length, so they are scanned as
    /// raw masks rather than as [`SignSeq`]s.
    pub fn verify_ballot(&self, a: u64, b: u64) -> Result<VerificationReport, OracleError> {
        let formula = ballot_strict_count(a, b)?;
        let total = (a + b) as usize;
        if total > 2 * self.max_n() {
            return Err(OracleError::LimitExceeded {
                n: total.div_ceil(2),
                max: self.max_n(),
            });
        }
        let started = Instant::now();
        let mut arrangements = 0u64;
        let mut strictly_ahead = 0u64;
        for mask in 0..1u64 << total {
            if u64::from(mask.count_ones()) != b {
                continue;
            }
            arrangements += 1;
            let mut lead = 0i64;
            let ahead = (0..total).all(|i| {
                lead += if (mask >> (total - 1 - i)) & 1 == 1 {
                    -1
                } else {
                    1
                };
                lead > 0
            });
            strictly_ahead += u64::from(ahead);
        }
        let mut report = VerificationReport::new("ballot", total);
        report.a = Some(a);
        report.b = Some(b);
        expect_count(
            &mut report.failures,
            "strictly-ahead arrangements",
            &strictly_ahead.into(),
            &formula,
        );
        expect_count(
            &mut report.failures,
            "arrangements",
            &arrangements.into(),
            &binomial(a + b, a as i64),
        );
        report.checked = arrangements.into();
        report.elapsed = started.elapsed();
        Ok(report)
    }

    /// Cₙ against the enumerated balanced sequences with all prefix sums ≥ 0.
    pub fn verify_catalan(&self, n: usize) -> Result<VerificationReport, OracleError> {
        self.check_limit(n)?;
        let started = Instant::now();
        let len = 2 * n;
        let shards = self.run_shards(n, |masks| {
            let mut t: Tally<u64> = Tally::default();
            for mask in masks {
                t.checked += 1;
                let seq = SignSeq::from_mask(mask, len);
                t.extra += u64::from(SeqFilter::WeakBallot.matches(&seq));
            }
            t
        });
        let mut report = VerificationReport::new("catalan", n);
        let (mut weak, mut checked) = (0u64, 0u64);
        for shard in shards {
            checked += shard.checked;
            weak += shard.extra;
        }
        expect_count(
            &mut report.failures,
            "weak ballot sequences",
            &weak.into(),
            &catalan(n),
        );
        report.checked = checked.into();
        report.elapsed = started.elapsed();
        Ok(report)
    }
}

fn check_direct_pair<G>(
    failures: &mut Vec<Failure>,
    seq: &SignSeq,
    image: &SignSeq,
    backward: &G,
    dir: &str,
) where
    G: Fn(&SignSeq) -> SeqResult<SignSeq>,
{
    if image.len() != seq.len() || !image.classify().positive {
        fail(failures, seq, format!("{dir} image {image} not in P_n"));
        return;
    }
    match (image.pivots(), seq.peaks()) {
        (Ok(pivots), Ok(peaks)) if pivots == peaks => {}
        (Ok(pivots), Ok(peaks)) => fail(
            failures,
            seq,
            format!("pivots of image {pivots} differ from peaks {peaks}"),
        ),
        _ => {}
    }
    match backward(image) {
        Ok(back) if &back == seq => {}
        Ok(back) => fail(failures, seq, format!("backward({dir}) gave {back}")),
        Err(e) => fail(failures, seq, format!("backward({dir}): {e}")),
    }
}

/// A named verification suite, runnable over every size up to some n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Direct,
    Indirect,
    Convolution,
    Telescoping,
    Counts,
    Ballot,
    Catalan,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Direct,
        Suite::Indirect,
        Suite::Convolution,
        Suite::Telescoping,
        Suite::Counts,
        Suite::Ballot,
        Suite::Catalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Direct => "direct",
            Suite::Indirect => "indirect",
            Suite::Convolution => "convolution",
            Suite::Telescoping => "telescoping",
            Suite::Counts => "counts",
            Suite::Ballot => "ballot",
            Suite::Catalan => "catalan",
        }
    }

    /// Runs the suite for every size up to `n`. The bijection and telescoping
    /// suites start at n = 1; the count suites at n = 0. The ballot suite
    /// covers every 0 ≤ b < a with a + b ≤ 2n.
    pub fn run_up_to(
        self,
        oracle: &Oracle,
        n: usize,
    ) -> Result<Vec<VerificationReport>, OracleError> {
        match self {
            Suite::Direct => (1..=n).map(|m| oracle.verify_direct_bijection(m)).collect(),
            Suite::Indirect => (1..=n)
                .map(|m| oracle.verify_indirect_bijection(m))
                .collect(),
            Suite::Convolution => (0..=n)
                .map(|m| oracle.verify_convolution_identity(m))
                .collect(),
            Suite::Telescoping => (1..=n).map(|m| oracle.verify_telescoping(m)).collect(),
            Suite::Counts => (0..=n)
                .map(|m| oracle.verify_zero_free_balanced(m))
                .collect(),
            Suite::Catalan => (0..=n).map(|m| oracle.verify_catalan(m)).collect(),
            Suite::Ballot => {
                let max_total = 2 * n as u64;
                let mut reports = Vec::new();
                for total in 1..=max_total {
                    for b in 0..=(total - 1) / 2 {
                        reports.push(oracle.verify_ballot(total - b, b)?);
                    }
                }
                Ok(reports)
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_small_sizes() {
        let oracle = Oracle::new();
        let r = oracle.verify_direct_bijection(1).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 2u32.into());
        let r = oracle.verify_direct_bijection(2).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 6u32.into());
        let r = oracle.verify_direct_bijection(0).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 2u32.into());
    }

    #[test]
    fn corrupted_direct_map_is_caught() {
        // Flip the last step of every image.
        let broken = |s: &SignSeq| {
            let image = direct_forward(s)?;
            Ok(image.negate().negate_prefix(image.len() - 1))
        };
        let r = Oracle::new()
            .verify_direct_bijection_with(3, broken, direct_backward)
            .unwrap();
        assert!(!r.passed());
        assert!(r.failures.iter().any(|f| f.input == "+-+-+-"), "{r}");
    }

    #[test]
    fn corrupted_indirect_map_is_caught() {
        let identity_g = |s: &SignSeq| Ok(s.clone());
        let r = Oracle::new()
            .verify_indirect_bijection_with(2, indirect_f, identity_g)
            .unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn indirect_small_sizes() {
        let r = Oracle::new().verify_indirect_bijection(2).unwrap();
        assert!(r.passed(), "{r}");
        // T₂,₁⁺ = {+-++}, S₂,₁⁻ = {-+++}; both empty for k = 2.
        assert_eq!(r.checked, 2u32.into());
    }

    #[test]
    fn convolution_small_and_arithmetic() {
        let oracle = Oracle::new().with_max_n(4);
        let r = oracle.verify_convolution_identity(2).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 16u32.into());
        let r = oracle.verify_convolution_identity(0).unwrap();
        assert!(r.passed(), "{r}");
        let r = oracle.verify_convolution_identity(20).unwrap();
        assert_eq!(r.suite, "convolution-arithmetic");
        assert!(r.passed(), "{r}");
        assert!(oracle.verify_convolution_identity(64).unwrap().passed());
        assert!(matches!(
            oracle.verify_convolution_identity(65),
            Err(OracleError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn ballot_and_catalan() {
        let oracle = Oracle::new();
        let r = oracle.verify_ballot(3, 2).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 10u32.into());
        assert_eq!(
            oracle.verify_ballot(2, 3).unwrap_err(),
            OracleError::InvalidVotes { a: 2, b: 3 }
        );
        assert!(oracle.verify_catalan(3).unwrap().passed());
    }

    #[test]
    fn suite_names_roundtrip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn ballot_suite_covers_pairs() {
        let reports = Suite::Ballot.run_up_to(&Oracle::new(), 2).unwrap();
        let pairs: Vec<_> = reports
            .iter()
            .map(|r| (r.a.unwrap(), r.b.unwrap()))
            .collect();
        assert_eq!(pairs, [(1, 0), (2, 0), (3, 0), (2, 1), (4, 0), (3, 1)]);
    }
}
