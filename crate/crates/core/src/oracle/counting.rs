//! Closed-form counts, all in exact integer arithmetic.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{ExactInt, OracleError, SeqFilter};

/// C(a, b), or 0 when b < 0 or b > a.
pub fn binomial(a: u64, b: i64) -> ExactInt {
    if b < 0 || b as u64 > a {
        return ExactInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    // Each partial product is C(a - b + i + 1, i + 1), so every division is exact.
    (0..b).fold(ExactInt::one(), |acc, i| acc * (a - b + i + 1) / (i + 1))
}

/// Cₙ = C(2n, n) / (n + 1).
pub fn catalan(n: usize) -> ExactInt {
    let n = n as u64;
    binomial(2 * n, n as i64) / (n + 1)
}

/// Number of arrangements of `a` votes for A and `b` votes for B in which A
/// is strictly ahead after every vote: (a − b) / (a + b) · C(a + b, a).
pub fn ballot_strict_count(a: u64, b: u64) -> Result<ExactInt, OracleError> {
    if a <= b {
        return Err(OracleError::InvalidVotes { a, b });
    }
    let total = a + b;
    Ok(binomial(total, a as i64) * (a - b) / total)
}

/// 4ⁿ.
pub fn four_pow(n: usize) -> ExactInt {
    BigUint::from(4u32).pow(n as u32)
}

/// Closed-form cardinality of the class of Sₙ selected by `filter`.
///
/// The formulas in terms of C(2n−1, ·) hold for n ≥ 1; n = 0 is counted
/// directly (the empty sequence is balanced, positive, and starts with `+`).
pub fn count_class(n: usize, filter: SeqFilter) -> Result<ExactInt, OracleError> {
    if let Some(k) = filter.k() {
        if k > n {
            return Err(OracleError::InvalidK { k, n });
        }
    }
    if n == 0 {
        let in_class = !matches!(
            filter,
            SeqFilter::Negative | SeqFilter::SumStartMinus(_) | SeqFilter::TouchingStartPlus(_)
        );
        return Ok(if in_class {
            ExactInt::one()
        } else {
            ExactInt::zero()
        });
    }
    let odd = |j: i64| binomial(2 * n as u64 - 1, j);
    let n_i = n as i64;
    let count = match filter {
        SeqFilter::All => four_pow(n),
        SeqFilter::Balanced | SeqFilter::ZeroFree => binomial(2 * n as u64, n_i),
        SeqFilter::Positive | SeqFilter::Negative | SeqFilter::BalancedStartPlus => odd(n_i - 1),
        SeqFilter::WeakBallot => catalan(n),
        SeqFilter::SumStartPlus(k) => odd(n_i - k as i64),
        SeqFilter::SumStartMinus(k) | SeqFilter::TouchingStartPlus(k) => odd(n_i - k as i64 - 1),
        SeqFilter::PositiveWithSum(k) => odd(n_i - k as i64) - odd(n_i - k as i64 - 1),
    };
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pascal's triangle by addition only; independent of the multiplicative route.
    fn pascal(rows: usize) -> Vec<Vec<ExactInt>> {
        let mut table: Vec<Vec<ExactInt>> = vec![vec![ExactInt::one()]];
        for r in 1..=rows {
            let prev = &table[r - 1];
            let row = (0..=r)
                .map(|c| {
                    let left = if c > 0 {
                        prev[c - 1].clone()
                    } else {
                        ExactInt::zero()
                    };
                    let right = prev.get(c).cloned().unwrap_or_default();
                    left + right
                })
                .collect();
            table.push(row);
        }
        table
    }

    #[test]
    fn binomial_matches_pascal() {
        let table = pascal(70);
        for (a, row) in table.iter().enumerate() {
            for (b, expected) in row.iter().enumerate() {
                assert_eq!(&binomial(a as u64, b as i64), expected, "C({a},{b})");
            }
            assert_eq!(binomial(a as u64, a as i64 + 1), ExactInt::zero());
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), 6u32.into());
        assert_eq!(binomial(3, -1), ExactInt::zero());
        assert_eq!(binomial(10, 5), 252u32.into());
        assert_eq!(binomial(0, 0), ExactInt::one());
        assert_eq!(
            binomial(100, 49),
            "98913082887808032681188722800".parse::<ExactInt>().unwrap()
        );
    }

    #[test]
    fn catalan_examples() {
        let values: Vec<u32> = (0..=8).map(|n| catalan(n).try_into().unwrap()).collect();
        assert_eq!(values, [1, 1, 2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(ballot_strict_count(2, 1).unwrap(), 1u32.into());
        assert_eq!(ballot_strict_count(3, 2).unwrap(), 2u32.into());
        assert_eq!(ballot_strict_count(1, 0).unwrap(), 1u32.into());
        assert_eq!(ballot_strict_count(5, 0).unwrap(), 1u32.into());
        assert_eq!(
            ballot_strict_count(2, 2),
            Err(OracleError::InvalidVotes { a: 2, b: 2 })
        );
        assert_eq!(
            ballot_strict_count(0, 0),
            Err(OracleError::InvalidVotes { a: 0, b: 0 })
        );
    }

    #[test]
    fn four_pow_is_exact_past_u64() {
        assert_eq!(four_pow(32), BigUint::from(1u128 << 64));
        assert_eq!(four_pow(40), BigUint::from(1u128 << 80));
    }

    #[test]
    fn count_class_examples() {
        let count = |n, f| -> u64 { count_class(n, f).unwrap().try_into().unwrap() };
        assert_eq!(count(2, SeqFilter::Balanced), 6);
        assert_eq!(count(2, SeqFilter::Positive), 3);
        assert_eq!(count(2, SeqFilter::PositiveWithSum(1)), 2);
        assert_eq!(count(5, SeqFilter::Positive), 126);
        assert_eq!(count(2, SeqFilter::TouchingStartPlus(2)), 0);
        assert_eq!(count(2, SeqFilter::SumStartMinus(2)), 0);
        assert_eq!(count(0, SeqFilter::All), 1);
        assert_eq!(count(0, SeqFilter::Negative), 0);
        assert_eq!(
            count_class(2, SeqFilter::SumStartPlus(3)),
            Err(OracleError::InvalidK { k: 3, n: 2 })
        );
    }
}
