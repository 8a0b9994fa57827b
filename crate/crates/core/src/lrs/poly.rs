//! Dense univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored lowest degree first and kept normalized: the
//! trailing (highest-degree) entry is nonzero unless the polynomial is zero,
//! in which case the coefficient vector is empty.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::number_theory::{divisors, FactorBudget};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }

    /// Division by a polynomial with leading coefficient ±1, which keeps the
    /// quotient and remainder integral. Returns `None` for any other divisor.
    pub fn div_rem_unit(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let lead = divisor.leading()?;
        if !lead.abs().is_one() {
            return None;
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// All integer roots, ascending and without repetition.
    ///
    /// Uses the rational-root theorem: after removing the power of `x`, any
    /// integer root divides the constant term. The constant term is factored
    /// under `budget`.
    pub fn integer_roots(&self, budget: &FactorBudget) -> Result<Vec<BigInt>> {
        let mut roots = Vec::new();
        let Some(low) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            // zero polynomial: every integer is a root, callers handle this case
            return Ok(roots);
        };
        if low > 0 {
            roots.push(BigInt::zero());
        }
        let reduced = IntPoly::new(self.coeffs[low..].to_vec());
        if reduced.degree() == Some(0) {
            return Ok(roots);
        }
        let trailing = reduced.coeffs[0].magnitude().clone();
        for d in divisors(&trailing, budget)? {
            let d = BigInt::from(d);
            for cand in [d.clone(), -d] {
                if reduced.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigRational {
        let x = BigRational::from_integer(x.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// The unique polynomial of degree below `points.len()` through the given
    /// nodes, built in Newton form and expanded to monomial coefficients.
    ///
    /// Panics if two nodes share an abscissa.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> RatPoly {
        let n = points.len();
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(x, _)| BigRational::from_integer(x.clone()))
            .collect();
        let mut dd: Vec<BigRational> = points
            .iter()
            .map(|(_, y)| BigRational::from_integer(y.clone()))
            .collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let denom = &xs[i] - &xs[i - level];
                assert!(!denom.is_zero(), "duplicate interpolation node");
                dd[i] = (&dd[i] - &dd[i - 1]) / denom;
            }
        }
        // Horner expansion of the Newton form.
        let mut acc: Vec<BigRational> = Vec::with_capacity(n);
        for i in (0..n).rev() {
            // acc <- acc * (x - xs[i]) + dd[i]
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (j, c) in acc.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * &xs[i];
            }
            next[0] += &dd[i];
            acc = next;
        }
        RatPoly::new(acc)
    }

    /// Scale to a primitive integer polynomial with the same roots.
    pub fn to_primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        IntPoly::new(ints.into_iter().map(|c| c / &content).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPoly::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn x4_minus_1_splits_over_cyclotomics() {
        let phi1 = IntPoly::from_i64(&[-1, 1]);
        let phi2 = IntPoly::from_i64(&[1, 1]);
        let phi4 = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(phi1.mul(&phi2).mul(&phi4), IntPoly::x_pow_minus_one(4));
        let (q, r) = IntPoly::x_pow_minus_one(4).div_rem_unit(&phi4).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn division_leaves_remainder() {
        // x^2 - x - 1 = (x - 1) * x + (-1)
        let fib = IntPoly::from_i64(&[-1, -1, 1]);
        let (q, r) = fib.div_rem_unit(&IntPoly::from_i64(&[-1, 1])).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[0, 1]));
        assert_eq!(r, IntPoly::from_i64(&[-1]));
        assert!(fib.div_rem_unit(&IntPoly::from_i64(&[1, 2])).is_none());
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(IntPoly::from_i64(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(IntPoly::from_i64(&[-3, 2]).to_string(), "2x - 3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn interpolation_recovers_cubic() {
        // 2n^3 - n + 5 / ... sampled at 0, 3, 6, 9
        let f = |n: i64| 2 * n * n * n - n + 5;
        let pts: Vec<_> = [0i64, 3, 6, 9].iter().map(|&n| (big(n), big(f(n)))).collect();
        let p = RatPoly::interpolate(&pts);
        assert_eq!(p.degree(), Some(3));
        for n in -5..20 {
            assert_eq!(p.eval(&big(n)), BigRational::from_integer(big(f(n))));
        }
    }

    #[test]
    fn interpolation_with_fractional_coefficients() {
        // n(n-1)/2 through three points
        let pts: Vec<_> = [1i64, 4, 7].iter().map(|&n| (big(n), big(n * (n - 1) / 2))).collect();
        let p = RatPoly::interpolate(&pts);
        let half = BigRational::new(big(1), big(2));
        assert_eq!(p.coeffs(), &[BigRational::zero(), -half.clone(), half]);
        assert_eq!(p.to_primitive_int(), IntPoly::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn integer_roots_by_divisors() {
        let budget = FactorBudget::default();
        // (x - 3)(x + 4)(2x - 1) x
        let p = IntPoly::from_i64(&[-3, 1])
            .mul(&IntPoly::from_i64(&[4, 1]))
            .mul(&IntPoly::from_i64(&[-1, 2]))
            .mul(&IntPoly::from_i64(&[0, 1]));
        assert_eq!(p.integer_roots(&budget).unwrap(), vec![big(-4), big(0), big(3)]);
        assert!(IntPoly::from_i64(&[1, 0, 1]).integer_roots(&budget).unwrap().is_empty());
        assert!(IntPoly::from_i64(&[7]).integer_roots(&budget).unwrap().is_empty());
    }
}
