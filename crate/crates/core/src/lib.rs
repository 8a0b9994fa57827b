//! Exact arithmetic for integer linear recurrence sequences.
//!
//! - [`lrs`]: explicit recurrences, companion-matrix evaluation, pointwise
//!   addition, and periodic spike-sum sequences.
//! - [`number_theory`]: primality, factorization, CRT, and primes in the
//!   progressions `2 + q t`.
//! - [`omega`]: exact zero counting and zero-set structure for sequences
//!   whose characteristic roots are roots of unity.
//! - [`subset_sum`]: reference subset-sum counters.
//! - [`reduction`]: subset-sum counts recovered from gadget zero counts.
//! - [`inclusion`]: value-set inclusion for spike-sum pairs.

pub mod cli;
pub mod error;
pub mod inclusion;
pub mod json;
pub mod lrs;
pub mod number_theory;
pub mod omega;
pub mod reduction;
pub mod subset_sum;
pub mod verify;

pub use error::{Error, Result};
pub use lrs::{lrs_add, IntPoly, Lrs, RatPoly, SpikeSumLrs, ZeroTestVerdict};
