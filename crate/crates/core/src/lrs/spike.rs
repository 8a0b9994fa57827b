use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{IntPoly, Lrs};
use crate::error::{Error, Result};
use crate::json::{decimal, decimal_pairs};
use crate::number_theory::is_prime;

/// Largest order [`SpikeSumLrs::to_lrs`] materializes by default.
pub const DEFAULT_MAX_ORDER: usize = 1 << 16;

/// A periodic sequence given as a sum of prime-period spikes minus an offset:
///
/// ```text
/// s_n = sum of value_i over all i with period_i | n, minus offset
/// ```
///
/// Every period divides `n = 0`. The periods are distinct primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpikeRepr", into = "SpikeRepr")]
pub struct SpikeSumLrs {
    spikes: Vec<(u64, BigInt)>,
    offset: BigInt,
}

#[derive(Serialize, Deserialize)]
struct SpikeRepr {
    #[serde(with = "decimal_pairs")]
    spikes: Vec<(u64, BigInt)>,
    #[serde(with = "decimal")]
    offset: BigInt,
}

impl TryFrom<SpikeRepr> for SpikeSumLrs {
    type Error = Error;
    fn try_from(r: SpikeRepr) -> Result<Self> {
        SpikeSumLrs::new(r.spikes, r.offset)
    }
}

impl From<SpikeSumLrs> for SpikeRepr {
    fn from(s: SpikeSumLrs) -> Self {
        SpikeRepr {
            spikes: s.spikes,
            offset: s.offset,
        }
    }
}

impl SpikeSumLrs {
    pub fn new(spikes: Vec<(u64, BigInt)>, offset: BigInt) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(p, _) in &spikes {
            if !is_prime(p) {
                return Err(Error::invalid(format!("spike period {p} is not prime")));
            }
            if !seen.insert(p) {
                return Err(Error::invalid(format!("spike period {p} repeated")));
            }
        }
        Ok(SpikeSumLrs { spikes, offset })
    }

    pub fn from_i64(spikes: &[(u64, i64)], offset: i64) -> Result<Self> {
        Self::new(
            spikes.iter().map(|&(p, v)| (p, BigInt::from(v))).collect(),
            BigInt::from(offset),
        )
    }

    pub fn spikes(&self) -> &[(u64, BigInt)] {
        &self.spikes
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn periods(&self) -> impl Iterator<Item = u64> + '_ {
        self.spikes.iter().map(|(p, _)| *p)
    }

    /// Order of the explicit recurrence: `1 + sum of periods`.
    pub fn explicit_order(&self) -> u128 {
        1 + self.periods().map(u128::from).sum::<u128>()
    }

    pub fn eval(&self, n: &BigUint) -> BigInt {
        self.sum_where(|p| (n % p).is_zero())
    }

    pub fn eval_u64(&self, n: u64) -> BigInt {
        self.sum_where(|p| n % p == 0)
    }

    fn sum_where(&self, divides: impl Fn(u64) -> bool) -> BigInt {
        let hit: BigInt = self
            .spikes
            .iter()
            .filter(|(p, _)| divides(*p))
            .map(|(_, v)| v)
            .sum();
        hit - &self.offset
    }

    /// `(x - 1) * prod (x^{p_i} - 1)`, which every term of the sequence
    /// satisfies as a recurrence.
    pub fn annihilator(&self) -> IntPoly {
        let order = self.explicit_order() as usize;
        let mut c = vec![BigInt::zero(); order + 1];
        c[0] = BigInt::from(-1);
        c[1] = BigInt::from(1);
        let mut deg = 1;
        for p in self.periods() {
            let p = p as usize;
            // multiply by x^p - 1, high degrees first
            for i in (0..=deg + p).rev() {
                let shifted = if i >= p { c[i - p].clone() } else { BigInt::zero() };
                c[i] = shifted - &c[i];
            }
            deg += p;
        }
        IntPoly::new(c)
    }

    /// Materialize as an explicit recurrence of order `1 + sum p_i`.
    pub fn to_lrs(&self, max_order: usize) -> Result<Lrs> {
        let order = self.explicit_order();
        if order > max_order as u128 {
            return Err(Error::budget("explicit recurrence order", max_order, order));
        }
        let chi = self.annihilator();
        let order = order as usize;
        let coeffs = (0..order).map(|j| -chi.coeff(j)).collect();
        let init = (0..order as u64).map(|n| self.eval_u64(n)).collect();
        Lrs::new(coeffs, init)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(spikes: &[(u64, i64)], offset: i64) -> SpikeSumLrs {
        SpikeSumLrs::from_i64(spikes, offset).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SpikeSumLrs::from_i64(&[(4, 1)], 0).is_err());
        assert!(SpikeSumLrs::from_i64(&[(5, 1), (5, 2)], 0).is_err());
        assert!(SpikeSumLrs::from_i64(&[], 0).is_ok());
    }

    #[test]
    fn eval_examples() {
        let g = s(&[(5, 1), (11, 2)], 3);
        assert_eq!(g.eval_u64(0), BigInt::from(0));
        assert_eq!(g.eval_u64(5), BigInt::from(-2));
        assert_eq!(g.eval_u64(7), BigInt::from(-3));
        assert_eq!(g.eval_u64(55), BigInt::from(0));
        assert_eq!(g.eval(&BigUint::from(22u32)), BigInt::from(-1));
    }

    #[test]
    fn to_lrs_examples() {
        // (x - 1)(x^2 - 1) = x^3 - x^2 - x + 1
        let u = s(&[(2, 1)], 0).to_lrs(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(u.char_poly(), IntPoly::from_i64(&[1, -1, -1, 1]));
        assert_eq!(u.init(), &[1, 0, 1].map(BigInt::from));

        let c = s(&[], 5).to_lrs(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(c.order(), 1);
        assert_eq!(c.first_terms(3), vec![BigInt::from(-5); 3]);

        let g = s(&[(3, 2)], 2);
        let u = g.to_lrs(DEFAULT_MAX_ORDER).unwrap();
        let want: Vec<BigInt> = [0, -2, -2, 0, -2, -2].map(BigInt::from).to_vec();
        assert_eq!(u.first_terms(6), want);
        assert_eq!((0..6).map(|n| g.eval_u64(n)).collect::<Vec<_>>(), want);
    }

    #[test]
    fn order_budget() {
        let g = s(&[(101, 1), (103, 1)], 0);
        assert_eq!(g.explicit_order(), 205);
        assert!(g.to_lrs(204).unwrap_err().is_budget());
        assert_eq!(g.to_lrs(205).unwrap().order(), 205);
    }

    #[test]
    fn annihilator_matches_direct_product() {
        let g = s(&[(2, 1), (3, 1), (5, 1)], 0);
        let direct = IntPoly::from_i64(&[-1, 1])
            .mul(&IntPoly::x_pow_minus_one(2))
            .mul(&IntPoly::x_pow_minus_one(3))
            .mul(&IntPoly::x_pow_minus_one(5));
        assert_eq!(g.annihilator(), direct);
    }

    #[test]
    fn json_shape() {
        let g = s(&[(5, 1), (11, -2)], 3);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"spikes":[["5","1"],["11","-2"]],"offset":"3"}"#);
        let back: SpikeSumLrs = serde_json::from_str(r#"{"spikes":[[5,1],[11,-2]],"offset":3}"#).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<SpikeSumLrs>(r#"{"spikes":[[6,1]],"offset":0}"#).is_err());
    }
}
