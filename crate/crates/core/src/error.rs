use std::fmt;

use thiserror::Error;

/// The sequence class an operation requires of its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Bₙ⁺: balanced and starting with `+`.
    BalancedStartPlus,
    /// Bₙ: balanced.
    Balanced,
    /// Pₙ: every prefix sum strictly positive.
    Positive,
    /// Fₙ: no prefix sum equal to zero.
    ZeroFree,
    /// Tₙ,ₖ⁺: starts with `+`, positive total, and touches zero somewhere.
    TouchingStartPlus,
    /// Sₙ,ₖ⁻ with k ≥ 1: starts with `-` and has a positive total.
    PositiveSumStartMinus,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Domain::BalancedStartPlus => "balanced sequence starting with '+'",
            Domain::Balanced => "balanced sequence",
            Domain::Positive => "positive sequence (all prefix sums > 0)",
            Domain::ZeroFree => "zero-free sequence (no prefix sum equal to 0)",
            Domain::TouchingStartPlus => {
                "sequence starting with '+' with positive sum whose prefix sums reach 0"
            }
            Domain::PositiveSumStartMinus => "sequence starting with '-' with positive sum",
        };
        f.write_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character {ch:?} at position {position} (only '+' and '-' are allowed)")]
    InvalidChar { ch: char, position: usize },
    #[error("odd length {0}: sequences must have even length 2n")]
    OddLength(usize),
    #[error("expected {0}")]
    Domain(Domain),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
