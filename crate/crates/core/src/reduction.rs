//! Counting subset-sum solutions through zeros of a spike-sum sequence.
//!
//! Given values `s_1 .. s_m`, a target `b`, an odd prime `q` and distinct odd
//! primes `p_i = 2 (mod q)`, the gadget
//!
//! ```text
//! g_n = sum of s_i over all i with p_i | n, minus b
//! ```
//!
//! vanishes at `n` exactly when `D(n) = {i : p_i | n}` is a solution. Over
//! `[0, B)` with `B = prod p_i`, each solution `D` owns `prod_{i not in D}
//! (p_i - 1)` zeros (the `n` with `gcd(n, B) = prod_{i in D} p_i`). Every such
//! factor is `1 (mod q)`, so the zero count and the solution count agree
//! modulo `q`. Repeating over enough moduli and combining by CRT recovers the
//! exact solution count.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::decimal;
use crate::lrs::SpikeSumLrs;
use crate::number_theory::{crt_combine, find_ap_primes, is_prime, CrtWitness, PrimeSearchConfig};
use crate::subset_sum::{count_ssp_bounded, SspBudget, SspInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionInstance {
    pub ssp: SspInstance,
    pub q: u64,
    pub primes: Vec<u64>,
    pub gadget: SpikeSumLrs,
    #[serde(with = "decimal")]
    pub big_bound: BigUint,
}

/// Assemble the gadget for `ssp` from the modulus `q` and one prime per value.
pub fn build_reduction(ssp: &SspInstance, q: u64, primes: &[u64]) -> Result<ReductionInstance> {
    if q == 2 || !is_prime(q) {
        return Err(Error::invalid(format!("q = {q} is not an odd prime")));
    }
    if primes.len() != ssp.len() {
        return Err(Error::invalid(format!(
            "{} primes for {} values",
            primes.len(),
            ssp.len()
        )));
    }
    for &p in primes {
        if p == 2 || p % q != 2 {
            return Err(Error::invalid(format!("{p} is not an odd prime = 2 mod {q}")));
        }
    }
    let spikes = primes.iter().copied().zip(ssp.values.iter().cloned()).collect();
    let gadget = SpikeSumLrs::new(spikes, ssp.target.clone())?;
    let big_bound = primes.iter().map(|&p| BigUint::from(p)).product();
    Ok(ReductionInstance {
        ssp: ssp.clone(),
        q,
        primes: primes.to_vec(),
        gadget,
        big_bound,
    })
}

/// Per-half table: subset sum -> total weight `prod_{i not in D} (p_i - 1)`.
fn weighted_half(values: &[BigInt], primes: &[u64]) -> HashMap<BigInt, BigUint> {
    let mut entries: Vec<(BigInt, BigUint)> = vec![(BigInt::default(), BigUint::one())];
    for (v, &p) in values.iter().zip(primes) {
        let len = entries.len();
        for i in 0..len {
            let (s, w) = entries[i].clone();
            entries.push((s + v, w.clone()));
            entries[i].1 = w * (p - 1);
        }
    }
    let mut table: HashMap<BigInt, BigUint> = HashMap::new();
    for (s, w) in entries {
        *table.entry(s).or_default() += w;
    }
    table
}

/// `|Z_B|`: the number of zeros of the gadget in `[0, B)`, without iterating.
pub fn count_zeros_closed_form(r: &ReductionInstance) -> Result<BigUint> {
    count_zeros_closed_form_bounded(r, SspBudget::default().meet_in_middle)
}

pub fn count_zeros_closed_form_bounded(r: &ReductionInstance, max_m: usize) -> Result<BigUint> {
    let m = r.primes.len();
    if m > max_m {
        return Err(Error::budget("closed-form subset enumeration size", max_m, m));
    }
    let half = m / 2;
    let left = weighted_half(&r.ssp.values[..half], &r.primes[..half]);
    let right = weighted_half(&r.ssp.values[half..], &r.primes[half..]);
    let target = &r.ssp.target;
    Ok(left
        .iter()
        .filter_map(|(s, w)| right.get(&(target - s)).map(|w2| w * w2))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCheck {
    pub q: u64,
    pub count_w: u64,
    #[serde(with = "decimal")]
    pub count_z: BigUint,
    pub congruent: bool,
}

/// Compute `|W(S, b)|` and `|Z_B|` independently and compare them mod `q`.
///
/// `congruent == false` means one of the two counters is wrong.
pub fn check_congruence(r: &ReductionInstance) -> Result<CongruenceCheck> {
    let count_w = count_ssp_bounded(&r.ssp, &SspBudget::default())?;
    let count_z = count_zeros_closed_form(r)?;
    let congruent = BigUint::from(count_w % r.q) == &count_z % r.q;
    Ok(CongruenceCheck {
        q: r.q,
        count_w,
        count_z,
        congruent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    #[serde(with = "decimal")]
    pub count: BigUint,
    /// `|Z_B| mod q` for each modulus used.
    pub witness: CrtWitness,
}

/// Recover `|W(S, b)|` from gadget zero counts modulo several `q` and CRT.
pub fn crt_pipeline(ssp: &SspInstance, cfg: &PrimeSearchConfig) -> Result<u64> {
    let report = crt_pipeline_report(ssp, cfg)?;
    report
        .count
        .to_u64()
        .ok_or_else(|| Error::VerificationFailed(format!("count {} exceeds 2^64", report.count)))
}

pub fn crt_pipeline_report(ssp: &SspInstance, cfg: &PrimeSearchConfig) -> Result<PipelineReport> {
    let m = ssp.len();
    let max_m = SspBudget::default().meet_in_middle;
    if m > max_m {
        return Err(Error::budget("closed-form subset enumeration size", max_m, m));
    }
    // at least one row, so an empty instance still gets a modulus > 1 = 2^0
    let table = find_ap_primes(m.max(1), cfg)?;
    let needed = BigUint::one() << m;
    let mut product = BigUint::one();
    let mut witness = CrtWitness::default();
    for (&q, row) in table.q.iter().zip(&table.p) {
        if product > needed {
            break;
        }
        let r = build_reduction(ssp, q, &row[..m])?;
        let zeros = count_zeros_closed_form(&r)?;
        witness.push(q, zeros % q);
        product *= q;
    }
    if product <= needed {
        return Err(Error::VerificationFailed(format!(
            "modulus product {product} does not exceed 2^{m}"
        )));
    }
    let count = crt_combine(&witness)?;
    Ok(PipelineReport { count, witness })
}
