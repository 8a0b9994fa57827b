//! Value-set inclusion for the spike-sum pair built from a quantified
//! subset-sum instance.
//!
//! For `a, b` in `Z^m` and `t` in `Z`, with `p_i` the `i`-th prime:
//!
//! ```text
//! u_n = sum of a_i over p_i | n
//! v_n = t - sum of b_i over p_i | n
//! ```
//!
//! By CRT every divisor pattern `D` of the spike periods occurs at some index,
//! so the value sets are `{a.x}` and `{t - b.y}` over `x, y` in `{0,1}^m`, and
//! `values(u) <= values(v)` holds exactly when every `x` has a `y` with
//! `a.x + b.y = t`.
//!
//! `v` is built from the `b` spikes; building it from `a` would not give
//! `{t - b.y}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{decimal, decimal_vec};
use crate::lrs::SpikeSumLrs;
use crate::number_theory::first_primes;
use crate::subset_sum::subset_sums;

/// Default cap on spikes enumerated by [`value_set`].
pub const DEFAULT_VALUE_SET_SPIKES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsspInstance {
    #[serde(with = "decimal_vec")]
    pub a: Vec<BigInt>,
    #[serde(with = "decimal_vec")]
    pub b: Vec<BigInt>,
    #[serde(with = "decimal")]
    pub t: BigInt,
}

impl GsspInstance {
    pub fn new(a: Vec<BigInt>, b: Vec<BigInt>, t: BigInt) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::invalid(format!(
                "a has {} entries, b has {}",
                a.len(),
                b.len()
            )));
        }
        Ok(GsspInstance { a, b, t })
    }

    pub fn from_i64(a: &[i64], b: &[i64], t: i64) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(conv(a), conv(b), BigInt::from(t))
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

pub fn build_inclusion_pair(g: &GsspInstance) -> Result<(SpikeSumLrs, SpikeSumLrs)> {
    if g.a.len() != g.b.len() {
        return Err(Error::invalid("a and b differ in length"));
    }
    let primes = first_primes(g.len());
    let u = SpikeSumLrs::new(
        primes.iter().copied().zip(g.a.iter().cloned()).collect(),
        BigInt::default(),
    )?;
    let v = SpikeSumLrs::new(
        primes.iter().copied().zip(g.b.iter().map(|b| -b)).collect(),
        -&g.t,
    )?;
    Ok((u, v))
}

/// All values the sequence takes: `{sum_{i in D} s_i - offset}` over every
/// subset `D` of spikes.
pub fn value_set(s: &SpikeSumLrs) -> Result<BTreeSet<BigInt>> {
    value_set_bounded(s, DEFAULT_VALUE_SET_SPIKES)
}

pub fn value_set_bounded(s: &SpikeSumLrs, max_spikes: usize) -> Result<BTreeSet<BigInt>> {
    let values = spike_values(s, max_spikes)?;
    Ok(subset_sums(&values)
        .into_iter()
        .map(|x| x - s.offset())
        .collect())
}

fn spike_values(s: &SpikeSumLrs, max_spikes: usize) -> Result<Vec<BigInt>> {
    if s.spikes().len() > max_spikes {
        return Err(Error::budget(
            "value-set spike count",
            max_spikes,
            s.spikes().len(),
        ));
    }
    Ok(s.spikes().iter().map(|(_, v)| v.clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionVerdict {
    pub included: bool,
    /// First `x` (in bitmask order) whose value `a.x` is missing from `v`.
    pub witness: Option<Vec<u8>>,
}

pub fn decide_inclusion(g: &GsspInstance) -> Result<InclusionVerdict> {
    decide_inclusion_bounded(g, DEFAULT_VALUE_SET_SPIKES)
}

pub fn decide_inclusion_bounded(g: &GsspInstance, max_spikes: usize) -> Result<InclusionVerdict> {
    let (u, v) = build_inclusion_pair(g)?;
    let targets = value_set_bounded(&v, max_spikes)?;
    let u_values = spike_values(&u, max_spikes)?;
    let m = u_values.len();
    for (mask, value) in subset_sums(&u_values).into_iter().enumerate() {
        if !targets.contains(&(value - u.offset())) {
            let x = (0..m).map(|i| (mask >> i & 1) as u8).collect();
            return Ok(InclusionVerdict {
                included: false,
                witness: Some(x),
            });
        }
    }
    Ok(InclusionVerdict {
        included: true,
        witness: None,
    })
}
