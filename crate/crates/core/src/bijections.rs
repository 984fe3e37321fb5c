//! The two bijections between balanced and zero-free sequences.
//!
//! Indirect: [`indirect_f`] and [`indirect_g`] negate the smallest balanced
//! prefix, exchanging Tₙ,ₖ⁺ (starts `+`, sum 2k, touches zero) with Sₙ,ₖ⁻
//! (starts `-`, sum 2k). Counting through this exchange gives |Pₙ| = C(2n−1, n−1).
//!
//! Direct: [`direct_forward`] keeps the signs at the peaks of B ∈ Bₙ⁺ and flips
//! the rest, landing in Pₙ; [`direct_backward`] does the same with the pivots
//! of P ∈ Pₙ. [`full_forward`] and [`full_backward`] extend this to Bₙ ↔ Fₙ by
//! conjugating with negation on sequences that start with `-`.
//!
//! Every map returns the empty sequence unchanged.

use crate::error::{Domain, Error, Result};
use crate::seq::{SignSeq, Step};

/// Tₙ,ₖ⁺ → Sₙ,ₖ⁻.
pub fn indirect_f(seq: &SignSeq) -> Result<SignSeq> {
    if seq.is_empty() {
        return Ok(SignSeq::empty());
    }
    let class = seq.classify();
    if !class.starts_plus || class.sum <= 0 || class.positive {
        return Err(Error::Domain(Domain::TouchingStartPlus));
    }
    let m = seq
        .smallest_balanced_prefix_len()
        .expect("a non-positive sequence starting with '+' touches zero");
    Ok(seq.negate_prefix(m))
}

/// Sₙ,ₖ⁻ → Tₙ,ₖ⁺.
pub fn indirect_g(seq: &SignSeq) -> Result<SignSeq> {
    if seq.is_empty() {
        return Ok(SignSeq::empty());
    }
    let class = seq.classify();
    if class.starts_plus || class.sum <= 0 {
        return Err(Error::Domain(Domain::PositiveSumStartMinus));
    }
    // σ starts at −1 and ends at 2k > 0, so it crosses zero.
    let m = seq
        .smallest_balanced_prefix_len()
        .expect("a sequence from -1 to a positive sum crosses zero");
    Ok(seq.negate_prefix(m))
}

/// Bₙ⁺ → Pₙ: keep the signs at the peaks, flip everything else.
pub fn direct_forward(seq: &SignSeq) -> Result<SignSeq> {
    let peaks = seq.peaks()?;
    Ok(seq.flip_outside(&peaks))
}

/// Pₙ → Bₙ⁺: keep the signs at the pivots, flip everything else.
pub fn direct_backward(seq: &SignSeq) -> Result<SignSeq> {
    let pivots = seq.pivots()?;
    Ok(seq.flip_outside(&pivots))
}

/// Bₙ → Fₙ. Sequences starting with `-` go through Bₙ⁻ → Bₙ⁺ → Pₙ → Nₙ.
pub fn full_forward(seq: &SignSeq) -> Result<SignSeq> {
    if !seq.classify().balanced {
        return Err(Error::Domain(Domain::Balanced));
    }
    match seq.first() {
        Some(Step::Minus) => Ok(direct_forward(&seq.negate())?.negate()),
        _ => direct_forward(seq),
    }
}

/// Fₙ → Bₙ, inverse of [`full_forward`].
pub fn full_backward(seq: &SignSeq) -> Result<SignSeq> {
    let class = seq.classify();
    if !class.zero_free {
        return Err(Error::Domain(Domain::ZeroFree));
    }
    if class.negative {
        Ok(direct_backward(&seq.negate())?.negate())
    } else {
        direct_backward(seq)
    }
}
