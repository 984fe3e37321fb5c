//! Bijections between balanced and zero-free ±1 sequences (lattice paths),
//! with an exhaustive oracle for the counting identities around them.
//!
//! A sequence of 2n votes is *balanced* when it sums to zero and *zero-free*
//! when none of its prefix sums is zero. Both classes have C(2n, n) members.
//! [`bijections`] provides two explicit correspondences:
//!
//! * the indirect maps, which negate the smallest balanced prefix, and
//! * the direct peak/pivot maps, which keep a handful of signs and flip the
//!   rest.
//!
//! [`oracle`] enumerates Sₙ (optionally across worker threads) and checks the
//! maps and the surrounding identities exhaustively.

pub mod bijections;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod seq;

pub use error::{Domain, Error, Result};
pub use seq::{IndexSet, PrefixProfile, SeqClass, SignSeq, Step};
