//! Integer factorization under an effort budget: trial division followed by
//! Pollard's rho (Brent's cycle detection) on whatever cofactor remains.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::{is_prime, is_prime_big, mul_mod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Largest trial divisor.
    pub trial_limit: u64,
    /// Total rho iterations allowed across the whole factorization.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: 1_000_000,
            rho_iterations: 1 << 24,
        }
    }
}

/// Prime factorization as ascending `(prime, exponent)` pairs. `1` factors
/// as the empty list; `0` is rejected.
pub fn factor(n: &BigUint, budget: &FactorBudget) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();

    let mut d = 2u64;
    while d <= budget.trial_limit {
        if BigUint::from(d) * d > rest {
            break;
        }
        if (&rest % d).is_zero() {
            let mut e = 0;
            while (&rest % d).is_zero() {
                rest /= d;
                e += 1;
            }
            found.insert(BigUint::from(d), e);
        }
        d += if d == 2 { 1 } else { 2 };
    }

    let mut spent = 0u64;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            *found.entry(m).or_insert(0) += 1;
            continue;
        }
        let split = match m.to_u64() {
            Some(small) => rho_u64(small, budget.rho_iterations, &mut spent).map(BigUint::from),
            None => rho_big(&m, budget.rho_iterations, &mut spent),
        };
        match split {
            Some(f) => {
                let other = &m / &f;
                stack.push(f);
                stack.push(other);
            }
            None => {
                return Err(Error::budget(
                    "factorization effort (rho iterations)",
                    budget.rho_iterations,
                    format!("{spent} on {m}"),
                ))
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// All positive divisors, ascending.
pub fn divisors(n: &BigUint, budget: &FactorBudget) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor(n, budget)? {
        let len = divs.len();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    Ok(divs)
}

/// Euler's totient of `n >= 1`.
pub fn totient(n: u64, budget: &FactorBudget) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("totient is defined for n >= 1"));
    }
    let mut phi = n;
    for (p, _) in factor(&BigUint::from(n), budget)? {
        let p = p.to_u64().expect("factor of a u64 fits in u64");
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

fn rho_u64(n: u64, limit: u64, spent: &mut u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    debug_assert!(!is_prime(n));
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 0u64;
        while g == 1 {
            if *spent >= limit {
                return None;
            }
            if power == lam {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            *spent += 1;
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return Some(g);
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint, limit: u64, spent: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y) = (BigUint::from(2u32), BigUint::from(2u32));
        let mut g = BigUint::one();
        let mut power = 1u64;
        let mut lam = 0u64;
        while g.is_one() {
            if *spent >= limit {
                return None;
            }
            if power == lam {
                x = y.clone();
                power <<= 1;
                lam = 0;
            }
            y = f(&y);
            lam += 1;
            *spent += 1;
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return Some(g);
        }
    }
    unreachable!()
}
