//! Subset-sum decision and counting over indexed integer lists.
//!
//! Subsets are subsets of indices, so equal values at different positions
//! give different subsets.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{decimal, decimal_vec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SspInstance {
    #[serde(with = "decimal_vec")]
    pub values: Vec<BigInt>,
    #[serde(with = "decimal")]
    pub target: BigInt,
}

/// Largest instance sizes the solvers accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SspBudget {
    pub meet_in_middle: usize,
    pub enumeration: usize,
}

impl Default for SspBudget {
    fn default() -> Self {
        SspBudget {
            meet_in_middle: 40,
            enumeration: 24,
        }
    }
}

impl SspInstance {
    pub fn new(values: Vec<BigInt>, target: BigInt) -> Self {
        SspInstance { values, target }
    }

    pub fn from_i64(values: &[i64], target: i64) -> Self {
        SspInstance {
            values: values.iter().map(|&v| BigInt::from(v)).collect(),
            target: BigInt::from(target),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> SspInstance {
        SspInstance {
            values: self.values.iter().map(|v| -v).collect(),
            target: -&self.target,
        }
    }
}

/// All `2^len` subset sums, in bitmask order (bit `i` selects `values[i]`).
pub(crate) fn subset_sums(values: &[BigInt]) -> Vec<BigInt> {
    let mut sums = Vec::with_capacity(1 << values.len());
    sums.push(BigInt::default());
    for v in values {
        let len = sums.len();
        for i in 0..len {
            let s = &sums[i] + v;
            sums.push(s);
        }
    }
    sums
}

fn check_size(m: usize, limit: usize, what: &'static str) -> Result<()> {
    if m > limit {
        return Err(Error::budget(what, limit, m));
    }
    Ok(())
}

/// `|W(S, b)|` with the default budget.
pub fn count_ssp(inst: &SspInstance) -> Result<u64> {
    count_ssp_bounded(inst, &SspBudget::default())
}

/// Meet-in-the-middle count: tabulate the sums of one half, then look up
/// the complement of each sum of the other half.
pub fn count_ssp_bounded(inst: &SspInstance, budget: &SspBudget) -> Result<u64> {
    check_size(inst.len(), budget.meet_in_middle, "subset-sum instance size")?;
    let (left, right) = inst.values.split_at(inst.len() / 2);
    let mut table: HashMap<BigInt, u64> = HashMap::new();
    for s in subset_sums(right) {
        *table.entry(s).or_insert(0) += 1;
    }
    Ok(subset_sums(left)
        .into_iter()
        .map(|s| table.get(&(&inst.target - s)).copied().unwrap_or(0))
        .sum())
}

/// Plain `2^m` enumeration.
pub fn count_ssp_enumerate(inst: &SspInstance, budget: &SspBudget) -> Result<u64> {
    check_size(inst.len(), budget.enumeration, "subset-sum enumeration size")?;
    Ok(subset_sums(&inst.values)
        .into_iter()
        .filter(|s| *s == inst.target)
        .count() as u64)
}

pub fn decide_ssp(inst: &SspInstance) -> Result<bool> {
    decide_ssp_bounded(inst, &SspBudget::default())
}

/// Like [`count_ssp_bounded`] but stops at the first witness.
pub fn decide_ssp_bounded(inst: &SspInstance, budget: &SspBudget) -> Result<bool> {
    check_size(inst.len(), budget.meet_in_middle, "subset-sum instance size")?;
    let (left, right) = inst.values.split_at(inst.len() / 2);
    let table: HashSet<BigInt> = subset_sums(right).into_iter().collect();
    Ok(subset_sums(left)
        .into_iter()
        .any(|s| table.contains(&(&inst.target - s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(values: &[i64], target: i64) -> u64 {
        let m = values.len();
        (0u32..1 << m)
            .filter(|mask| {
                (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| values[i])
                    .sum::<i64>()
                    == target
            })
            .count() as u64
    }

    #[test]
    fn count_examples() {
        assert_eq!(brute(&[1, 2], 3), 1);
        assert_eq!(count_ssp(&SspInstance::from_i64(&[1, 2], 3)).unwrap(), 1);
        assert_eq!(brute(&[1, 1], 1), 2);
        assert_eq!(count_ssp(&SspInstance::from_i64(&[1, 1], 1)).unwrap(), 2);
        assert_eq!(count_ssp(&SspInstance::from_i64(&[], 0)).unwrap(), 1);
        assert_eq!(count_ssp(&SspInstance::from_i64(&[], 3)).unwrap(), 0);
    }

    #[test]
    fn decide_examples() {
        assert!(!decide_ssp(&SspInstance::from_i64(&[1, 2], 4)).unwrap());
        assert!(decide_ssp(&SspInstance::from_i64(&[5], 5)).unwrap());
        assert!(!decide_ssp(&SspInstance::from_i64(&[], 1)).unwrap());
        assert!(decide_ssp(&SspInstance::from_i64(&[], 0)).unwrap());
    }

    #[test]
    fn budgets_enforced() {
        let big = SspInstance::from_i64(&[1; 41], 3);
        assert!(count_ssp(&big).unwrap_err().is_budget());
        assert!(decide_ssp(&big).unwrap_err().is_budget());
        let mid = SspInstance::from_i64(&[1; 25], 3);
        assert!(count_ssp_enumerate(&mid, &SspBudget::default())
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn forty_items_fit_meet_in_middle() {
        // all ones: C(40, 20) subsets sum to 20
        let inst = SspInstance::from_i64(&[1; 40], 20);
        assert_eq!(count_ssp(&inst).unwrap(), 137_846_528_820);
    }

    proptest! {
        #[test]
        fn mitm_matches_enumeration(values in prop::collection::vec(-12i64..=12, 0..=14), target in -30i64..=30) {
            let inst = SspInstance::from_i64(&values, target);
            let b = SspBudget::default();
            let c = count_ssp(&inst).unwrap();
            prop_assert_eq!(c, count_ssp_enumerate(&inst, &b).unwrap());
            prop_assert_eq!(c, brute(&values, target));
            prop_assert_eq!(decide_ssp(&inst).unwrap(), c > 0);
        }

        #[test]
        fn negation_symmetry(values in prop::collection::vec(-50i64..=50, 0..=12), target in -100i64..=100) {
            let inst = SspInstance::from_i64(&values, target);
            prop_assert_eq!(count_ssp(&inst).unwrap(), count_ssp(&inst.negated()).unwrap());
        }
    }
}
