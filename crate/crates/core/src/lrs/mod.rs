//! Integer linear recurrence sequences.
//!
//! An [`Lrs`] of order `k` is given by coefficients `a_0 .. a_{k-1}` with
//! `a_0 != 0` and initial values `u_0 .. u_{k-1}`; for `n >= k`
//!
//! ```text
//! u_n = a_{k-1} u_{n-1} + ... + a_1 u_{n-k+1} + a_0 u_{n-k}
//! ```
//!
//! The declared order is not required to be minimal.

mod matrix;
pub mod poly;
mod spike;
mod terms;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::decimal_vec;
use crate::number_theory::random_prime_in;

pub use poly::{IntPoly, RatPoly};
pub use spike::{SpikeSumLrs, DEFAULT_MAX_ORDER};
pub use terms::Terms;

/// Default cap on the bit length of any intermediate integer in [`Lrs::eval`].
pub const DEFAULT_MAX_BITS: u64 = 1 << 26;

/// Default number of primes drawn by [`Lrs::zero_test_randomized`].
pub const DEFAULT_ZERO_TEST_TRIALS: usize = 10;

/// Sampling range for the randomized zero test: `[2^61, 2^62)`.
pub const ZERO_TEST_PRIME_RANGE: (u64, u64) = (1 << 61, 1 << 62);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LrsRepr", into = "LrsRepr")]
pub struct Lrs {
    coeffs: Vec<BigInt>,
    init: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct LrsRepr {
    #[serde(with = "decimal_vec")]
    coeffs: Vec<BigInt>,
    #[serde(with = "decimal_vec")]
    init: Vec<BigInt>,
}

impl TryFrom<LrsRepr> for Lrs {
    type Error = Error;
    fn try_from(r: LrsRepr) -> Result<Self> {
        Lrs::new(r.coeffs, r.init)
    }
}

impl From<Lrs> for LrsRepr {
    fn from(u: Lrs) -> Self {
        LrsRepr {
            coeffs: u.coeffs,
            init: u.init,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroTestVerdict {
    DefinitelyNonzero,
    ProbablyZero,
}

impl Lrs {
    pub fn new(coeffs: Vec<BigInt>, init: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("order must be at least 1"));
        }
        if coeffs.len() != init.len() {
            return Err(Error::invalid(format!(
                "{} coefficients but {} initial values",
                coeffs.len(),
                init.len()
            )));
        }
        if coeffs[0].is_zero() {
            return Err(Error::invalid("a_0 must be nonzero"));
        }
        Ok(Lrs { coeffs, init })
    }

    pub fn from_i64(coeffs: &[i64], init: &[i64]) -> Result<Self> {
        Lrs::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            init.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// The order-1 sequence `c, c, c, ...`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Lrs {
            coeffs: vec![BigInt::from(1)],
            init: vec![c.into()],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0 .. a_{k-1}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn init(&self) -> &[BigInt] {
        &self.init
    }

    /// `x^k - a_{k-1} x^{k-1} - ... - a_0`.
    pub fn char_poly(&self) -> IntPoly {
        let mut c: Vec<BigInt> = self.coeffs.iter().map(|a| -a).collect();
        c.push(BigInt::from(1));
        IntPoly::new(c)
    }

    /// Streaming term-by-term iteration from `u_0`.
    pub fn terms(&self) -> Terms {
        Terms::new(self)
    }

    /// `u_0 .. u_{count-1}` by direct iteration.
    pub fn first_terms(&self, count: usize) -> Vec<BigInt> {
        self.terms().take(count).collect()
    }

    /// `u_n` by binary powering of the companion matrix, with the default
    /// bit budget.
    pub fn eval(&self, n: &BigUint) -> Result<BigInt> {
        self.eval_bounded(n, DEFAULT_MAX_BITS)
    }

    /// `u_n`, failing once an intermediate integer exceeds `max_bits` bits.
    pub fn eval_bounded(&self, n: &BigUint, max_bits: u64) -> Result<BigInt> {
        if let Some(v) = n.to_usize().and_then(|i| self.init.get(i)) {
            return Ok(v.clone());
        }
        let power = matrix::companion(&self.coeffs).pow(n, max_bits)?;
        Ok(power.first_row_dot(&self.init))
    }

    pub fn eval_u64(&self, n: u64) -> Result<BigInt> {
        self.eval(&BigUint::from(n))
    }

    /// `u_n mod m` in `[0, m)`, with every intermediate reduced mod `m`.
    pub fn eval_mod(&self, n: &BigUint, m: u64) -> Result<u64> {
        if m < 2 {
            return Err(Error::invalid(format!("modulus {m} must be at least 2")));
        }
        let init: Vec<u64> = self.init.iter().map(|v| reduce(v, m)).collect();
        if let Some(&v) = n.to_usize().and_then(|i| init.get(i)) {
            return Ok(v);
        }
        let coeffs: Vec<u64> = self.coeffs.iter().map(|a| reduce(a, m)).collect();
        Ok(matrix::ModMatrix::companion(&coeffs, m)
            .pow(n)
            .first_row_dot(&init))
    }

    /// Randomized zero test: evaluate `u_n` modulo `trials` random primes
    /// from [`ZERO_TEST_PRIME_RANGE`].
    ///
    /// A nonzero residue proves `u_n != 0`. If every residue vanishes the
    /// answer is only probable: `|u_n|` would need a product of `trials`
    /// 61-bit primes as a divisor.
    pub fn zero_test_randomized<R: Rng + ?Sized>(
        &self,
        n: &BigUint,
        trials: usize,
        rng: &mut R,
    ) -> Result<ZeroTestVerdict> {
        if trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        let (lo, hi) = ZERO_TEST_PRIME_RANGE;
        for _ in 0..trials {
            let p = random_prime_in(rng, lo, hi);
            if self.eval_mod(n, p)? != 0 {
                return Ok(ZeroTestVerdict::DefinitelyNonzero);
            }
        }
        Ok(ZeroTestVerdict::ProbablyZero)
    }

    /// Pointwise sum. The recurrence comes from the product of the two
    /// characteristic polynomials, so the order is `k_u + k_v` and may be
    /// larger than minimal.
    pub fn add(&self, other: &Lrs) -> Lrs {
        let chi = self.char_poly().mul(&other.char_poly());
        let order = self.order() + other.order();
        let coeffs: Vec<BigInt> = (0..order).map(|j| -chi.coeff(j)).collect();
        let init = self
            .terms()
            .zip(other.terms())
            .take(order)
            .map(|(a, b)| a + b)
            .collect();
        Lrs { coeffs, init }
    }
}

/// Convenience alias for [`Lrs::add`].
pub fn lrs_add(u: &Lrs, v: &Lrs) -> Lrs {
    u.add(v)
}

fn reduce(v: &BigInt, m: u64) -> u64 {
    use num_integer::Integer;
    v.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue below a u64 modulus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn fib() -> Lrs {
        Lrs::from_i64(&[1, 1], &[0, 1]).unwrap()
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn construction_rules() {
        assert!(Lrs::from_i64(&[], &[]).is_err());
        assert!(Lrs::from_i64(&[0, 1], &[1, 1]).is_err());
        assert!(Lrs::from_i64(&[1, 1], &[1]).is_err());
        assert_eq!(fib().order(), 2);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(fib().eval(&n(0)).unwrap(), BigInt::from(0));
        // iterative oracle
        let (mut a, mut b) = (0i64, 1i64);
        for _ in 0..10 {
            (a, b) = (b, a + b);
        }
        assert_eq!(a, 55);
        assert_eq!(fib().eval(&n(10)).unwrap(), BigInt::from(55));
        assert_eq!(
            Lrs::constant(7).eval(&n(1_000_000_000)).unwrap(),
            BigInt::from(7)
        );
    }

    #[test]
    fn eval_large_index() {
        // F_100 = 354224848179261915075
        assert_eq!(
            fib().eval(&n(100)).unwrap(),
            "354224848179261915075".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn eval_respects_bit_budget() {
        let err = fib().eval_bounded(&n(100_000), 1000).unwrap_err();
        assert!(err.is_budget());
        assert!(fib().eval_bounded(&n(1000), 1000).is_ok());
    }

    #[test]
    fn eval_mod_examples() {
        assert_eq!(fib().eval_mod(&n(10), 7).unwrap(), 6);
        assert_eq!(fib().eval_mod(&n(0), 2).unwrap(), 0);
        assert_eq!(Lrs::constant(7).eval_mod(&n(123_456), 5).unwrap(), 2);
        assert_eq!(Lrs::constant(-7).eval_mod(&n(3), 5).unwrap(), 3);
        assert!(fib().eval_mod(&n(3), 1).is_err());
    }

    #[test]
    fn zero_test_examples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            fib().zero_test_randomized(&n(0), 5, &mut rng).unwrap(),
            ZeroTestVerdict::ProbablyZero
        );
        assert_eq!(
            fib().zero_test_randomized(&n(10), 5, &mut rng).unwrap(),
            ZeroTestVerdict::DefinitelyNonzero
        );
        assert_eq!(
            Lrs::constant(0)
                .zero_test_randomized(&n(1 << 40), 5, &mut rng)
                .unwrap(),
            ZeroTestVerdict::ProbablyZero
        );
        assert!(fib().zero_test_randomized(&n(1), 0, &mut rng).is_err());
    }

    #[test]
    fn add_examples() {
        let w = fib().add(&Lrs::constant(3));
        assert_eq!(w.order(), 3);
        assert_eq!(w.init(), &[3, 4, 4].map(BigInt::from));
        assert_eq!(w.eval(&n(5)).unwrap(), BigInt::from(8));
        assert_eq!(w.eval(&n(6)).unwrap(), BigInt::from(11));

        let same = fib().add(&Lrs::constant(0));
        assert_eq!(same.first_terms(101), fib().first_terms(101));

        let seven = Lrs::constant(2).add(&Lrs::constant(5));
        assert!(seven.first_terms(50).iter().all(|t| *t == BigInt::from(7)));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(fib().char_poly(), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(Lrs::constant(4).char_poly(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(
            Lrs::from_i64(&[-1, 0], &[1, 0]).unwrap().char_poly(),
            IntPoly::from_i64(&[1, 0, 1])
        );
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"coeffs":["1","1"],"init":["0","1"]}"#;
        let u: Lrs = serde_json::from_str(text).unwrap();
        assert_eq!(u, fib());
        assert_eq!(serde_json::to_string(&u).unwrap(), text);
        assert!(serde_json::from_str::<Lrs>(r#"{"coeffs":["0"],"init":["1"]}"#).is_err());
    }
}
