//! Sequences whose characteristic roots are all roots of unity.
//!
//! If the characteristic polynomial is `prod Phi_d^{e_d}`, then with
//! `L = lcm(d)` the terms in each residue class `n = r (mod L)` follow a
//! single polynomial `P_r` of degree below the order: `u_n = P_r(n)`. The
//! polynomials are recovered by exact interpolation from sampled terms, which
//! avoids arithmetic in cyclotomic fields. Zero questions then reduce to
//! integer roots of finitely many rational polynomials: the zero set is the
//! union of the classes with `P_r = 0` and finitely many sporadic roots.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::decimal_vec;
use crate::lrs::{IntPoly, Lrs, RatPoly};
use crate::number_theory::FactorBudget;

/// Default cap on terms iterated by [`count_zeros_bruteforce`] and on terms
/// sampled while building residue polynomials.
pub const DEFAULT_TERM_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaCertificate {
    /// `(d, e_d)`: `Phi_d` divides the characteristic polynomial `e_d` times.
    pub factors: Vec<(u64, u32)>,
    /// `lcm` of the cyclotomic indices.
    pub period: u64,
}

impl OmegaCertificate {
    /// `prod Phi_d^{e_d}`.
    pub fn product(&self) -> IntPoly {
        self.factors.iter().fold(IntPoly::one(), |acc, &(d, e)| {
            let phi = cyclotomic(d);
            (0..e).fold(acc, |a, _| a.mul(&phi))
        })
    }
}

fn mobius(mut n: u64) -> i8 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// The `d`-th cyclotomic polynomial, from
/// `Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}`.
pub fn cyclotomic(d: u64) -> IntPoly {
    let mut numer = IntPoly::one();
    let mut denom = IntPoly::one();
    for e in (1..=d).filter(|e| d % e == 0) {
        match mobius(d / e) {
            1 => numer = numer.mul(&IntPoly::x_pow_minus_one(e as usize)),
            -1 => denom = denom.mul(&IntPoly::x_pow_minus_one(e as usize)),
            _ => {}
        }
    }
    let (q, r) = numer.div_rem_unit(&denom).expect("monic divisor");
    debug_assert!(r.is_zero());
    q
}

fn totient_small(mut n: u64) -> u64 {
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Factor the characteristic polynomial into cyclotomic polynomials.
///
/// Returns `None` when a non-cyclotomic factor remains. Every `d` with
/// `phi(d) <= k` is tried; `phi(d) >= sqrt(d / 2)` bounds the search by
/// `d <= 2 k^2`.
pub fn certify_omega(u: &Lrs) -> Option<OmegaCertificate> {
    let k = u.order() as u64;
    let mut rest = u.char_poly();
    let mut factors = Vec::new();
    let mut period = 1u64;
    for d in 1..=2 * k * k {
        let remaining = rest.degree().unwrap_or(0) as u64;
        if remaining == 0 {
            break;
        }
        if totient_small(d) > remaining {
            continue;
        }
        let phi_d = cyclotomic(d);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem_unit(&phi_d).expect("monic divisor");
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
            period = period.lcm(&d);
        }
    }
    (rest.degree() == Some(0)).then_some(OmegaCertificate { factors, period })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduePolynomials {
    pub period: u64,
    /// `polys[r]` gives the terms with index `= r (mod period)`.
    pub polys: Vec<RatPoly>,
}

impl ResiduePolynomials {
    pub fn eval(&self, n: &BigUint) -> BigInt {
        let r = (n % self.period).to_usize().expect("residue below period");
        let v = self.polys[r].eval(&BigInt::from(n.clone()));
        debug_assert!(v.is_integer());
        v.to_integer()
    }
}

/// Interpolate `P_r` from `u_r, u_{r+L}, ..., u_{r+(k-1)L}` for each class and
/// confirm it at the next two samples.
pub fn residue_polynomials(u: &Lrs, cert: &OmegaCertificate) -> Result<ResiduePolynomials> {
    residue_polynomials_bounded(u, cert, DEFAULT_TERM_BUDGET)
}

pub fn residue_polynomials_bounded(
    u: &Lrs,
    cert: &OmegaCertificate,
    max_terms: u64,
) -> Result<ResiduePolynomials> {
    let k = u.order() as u64;
    let l = cert.period;
    let needed = (k + 2)
        .checked_mul(l)
        .filter(|&t| t <= max_terms)
        .ok_or_else(|| Error::budget("sampled terms", max_terms, format!("{} * {l}", k + 2)))?;
    let terms = u.first_terms(needed as usize);
    let mut polys = Vec::with_capacity(l as usize);
    for r in 0..l {
        let sample = |i: u64| {
            let n = r + i * l;
            (BigInt::from(n), terms[n as usize].clone())
        };
        let points: Vec<_> = (0..k).map(sample).collect();
        let p = RatPoly::interpolate(&points);
        for (x, y) in [sample(k), sample(k + 1)] {
            let got = p.eval(&x);
            if !got.is_integer() || got.to_integer() != y {
                return Err(Error::VerificationFailed(format!(
                    "class {r} mod {l}: interpolant gives {got} at {x}, sequence gives {y}"
                )));
            }
        }
        polys.push(p);
    }
    Ok(ResiduePolynomials { period: l, polys })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSetStructure {
    /// `(r, L)`: every index `n = r (mod L)` is a zero.
    pub progressions: Vec<(u64, u64)>,
    /// Remaining zeros, ascending.
    #[serde(with = "decimal_vec")]
    pub sporadic: Vec<BigUint>,
}

impl ZeroSetStructure {
    pub fn contains(&self, n: &BigUint) -> bool {
        self.progressions.iter().any(|&(r, l)| n % l == BigUint::from(r))
            || self.sporadic.binary_search(n).is_ok()
    }
}

/// Certificate and residue polynomials for one sequence, reusable across
/// queries.
#[derive(Debug, Clone)]
pub struct OmegaAnalysis {
    pub certificate: OmegaCertificate,
    pub residues: ResiduePolynomials,
    pub factor_budget: FactorBudget,
}

impl OmegaAnalysis {
    pub fn new(u: &Lrs) -> Result<Self> {
        let certificate = certify_omega(u).ok_or(Error::NotOmega)?;
        let residues = residue_polynomials(u, &certificate)?;
        Ok(OmegaAnalysis {
            certificate,
            residues,
            factor_budget: FactorBudget::default(),
        })
    }

    pub fn period(&self) -> u64 {
        self.certificate.period
    }

    /// True when `u_n = 0`.
    pub fn is_zero_at(&self, n: &BigUint) -> bool {
        self.residues.eval(n).is_zero()
    }

    /// Nonnegative integer roots of `P_r` lying in class `r`.
    fn class_roots(&self, r: u64) -> Result<Vec<BigUint>> {
        let l = BigInt::from(self.period());
        let p: IntPoly = self.residues.polys[r as usize].to_primitive_int();
        Ok(p.integer_roots(&self.factor_budget)?
            .into_iter()
            .filter(|x| !x.is_negative() && x.mod_floor(&l) == BigInt::from(r))
            .map(|x| x.to_biguint().expect("nonnegative"))
            .collect())
    }

    /// Zeros in `[0, bound)`.
    pub fn count_zeros(&self, bound: &BigUint) -> Result<BigUint> {
        let l = self.period();
        let mut total = BigUint::zero();
        for (r, p) in self.residues.polys.iter().enumerate() {
            let r = r as u64;
            if p.is_zero() {
                if *bound > BigUint::from(r) {
                    total += (bound - r + (l - 1)) / l;
                }
            } else {
                total += self.class_roots(r)?.iter().filter(|x| *x < bound).count();
            }
        }
        Ok(total)
    }

    pub fn zero_set_structure(&self) -> Result<ZeroSetStructure> {
        let l = self.period();
        let mut progressions = Vec::new();
        let mut sporadic = Vec::new();
        for (r, p) in self.residues.polys.iter().enumerate() {
            if p.is_zero() {
                progressions.push((r as u64, l));
            } else {
                sporadic.extend(self.class_roots(r as u64)?);
            }
        }
        sporadic.sort();
        Ok(ZeroSetStructure {
            progressions,
            sporadic,
        })
    }
}

/// 1 if `u_n = 0`, else 0, by evaluating the residue polynomial for `n`.
pub fn f_omega(u: &Lrs, n: &BigUint) -> Result<u8> {
    Ok(OmegaAnalysis::new(u)?.is_zero_at(n) as u8)
}

/// Zeros in `[0, bound)`.
pub fn count_zeros_omega(u: &Lrs, bound: &BigUint) -> Result<BigUint> {
    OmegaAnalysis::new(u)?.count_zeros(bound)
}

pub fn zero_set_structure(u: &Lrs) -> Result<ZeroSetStructure> {
    OmegaAnalysis::new(u)?.zero_set_structure()
}

/// Zeros in `[0, bound)` by iterating the recurrence. Works for any sequence.
pub fn count_zeros_bruteforce(u: &Lrs, bound: u64) -> Result<u64> {
    count_zeros_bruteforce_bounded(u, bound, DEFAULT_TERM_BUDGET)
}

pub fn count_zeros_bruteforce_bounded(u: &Lrs, bound: u64, max_terms: u64) -> Result<u64> {
    if bound > max_terms {
        return Err(Error::budget("brute-force term count", max_terms, bound));
    }
    let mut t = u.terms();
    let mut zeros = 0;
    for i in 0..bound {
        if t.current_is_zero() {
            zeros += 1;
        }
        if i + 1 < bound {
            t.advance();
        }
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn lrs(c: &[i64], i: &[i64]) -> Lrs {
        Lrs::from_i64(c, i).unwrap()
    }

    fn alternating() -> Lrs {
        lrs(&[1, 0], &[0, 1])
    }

    /// u_n = n - 3, characteristic polynomial (x - 1)^2 = x^2 - 2x + 1
    fn shifted_identity() -> Lrs {
        lrs(&[-1, 2], &[-3, -2])
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
        for d in 1..40 {
            assert_eq!(cyclotomic(d).degree(), Some(totient_small(d) as usize));
        }
    }

    #[test]
    fn certify_examples() {
        assert!(certify_omega(&lrs(&[1, 1], &[0, 1])).is_none());

        let x4 = lrs(&[1, 0, 0, 0], &[1, 2, 3, 4]);
        let cert = certify_omega(&x4).unwrap();
        assert_eq!(cert.factors, vec![(1, 1), (2, 1), (4, 1)]);
        assert_eq!(cert.period, 4);
        assert_eq!(cert.product(), x4.char_poly());

        let c = certify_omega(&Lrs::constant(5)).unwrap();
        assert_eq!(c.factors, vec![(1, 1)]);
        assert_eq!(c.period, 1);
    }

    #[test]
    fn certify_with_multiplicity() {
        // (x - 1)^2 (x^2 + x + 1) = x^4 - x^3 - x + 1
        let u = lrs(&[-1, 1, 0, 1], &[0, 0, 1, 5]);
        let cert = certify_omega(&u).unwrap();
        assert_eq!(cert.factors, vec![(1, 2), (3, 1)]);
        assert_eq!(cert.period, 3);
    }

    #[test]
    fn certify_rejects_mixed() {
        // (x - 1)(x - 2) = x^2 - 3x + 2
        assert!(certify_omega(&lrs(&[-2, 3], &[0, 1])).is_none());
        // x^2 + 2 has roots of modulus sqrt 2
        assert!(certify_omega(&lrs(&[-2, 0], &[1, 1])).is_none());
    }

    #[test]
    fn residue_polynomial_examples() {
        let u = alternating();
        let r = residue_polynomials(&u, &certify_omega(&u).unwrap()).unwrap();
        assert_eq!(r.period, 2);
        assert!(r.polys[0].is_zero());
        assert_eq!(r.polys[1].coeffs(), &[BigRational::from_integer(1.into())]);

        let u = shifted_identity();
        let r = residue_polynomials(&u, &certify_omega(&u).unwrap()).unwrap();
        assert_eq!(r.period, 1);
        assert_eq!(r.polys[0].to_primitive_int(), IntPoly::from_i64(&[-3, 1]));

        let u = Lrs::constant(7);
        let r = residue_polynomials(&u, &certify_omega(&u).unwrap()).unwrap();
        assert_eq!(r.polys[0].coeffs(), &[BigRational::from_integer(7.into())]);
    }

    #[test]
    fn residue_polynomials_reject_bad_certificate() {
        // claim period 1 for 0, 1, 0, 1, ... with only Phi_1
        let u = alternating();
        let bogus = OmegaCertificate {
            factors: vec![(1, 2)],
            period: 1,
        };
        let err = residue_polynomials(&u, &bogus).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed(_)));
    }

    #[test]
    fn f_omega_examples() {
        assert_eq!(f_omega(&alternating(), &(big(1) << 40)).unwrap(), 1);
        assert_eq!(f_omega(&alternating(), &((big(1) << 40) + 1u32)).unwrap(), 0);
        assert_eq!(f_omega(&shifted_identity(), &big(3)).unwrap(), 1);
        assert_eq!(f_omega(&shifted_identity(), &big(1_000_000_000_000)).unwrap(), 0);
        assert_eq!(f_omega(&lrs(&[1, 1], &[0, 1]), &big(0)), Err(Error::NotOmega));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_zeros_omega(&alternating(), &big(11)).unwrap(), big(6));
        assert_eq!(count_zeros_bruteforce(&alternating(), 11).unwrap(), 6);
        assert_eq!(count_zeros_omega(&shifted_identity(), &big(10)).unwrap(), big(1));
        assert_eq!(count_zeros_omega(&shifted_identity(), &big(3)).unwrap(), big(0));
        assert_eq!(count_zeros_omega(&alternating(), &big(0)).unwrap(), big(0));
        // a huge bound only touches the arithmetic
        let huge = big(10).pow(30);
        assert_eq!(
            count_zeros_omega(&alternating(), &huge).unwrap(),
            big(10).pow(30) / 2u32
        );
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(count_zeros_bruteforce(&lrs(&[1, 1], &[0, 1]), 10).unwrap(), 1);
        assert_eq!(count_zeros_bruteforce(&Lrs::constant(0), 5).unwrap(), 5);
        assert_eq!(count_zeros_bruteforce(&Lrs::constant(0), 0).unwrap(), 0);
        assert!(count_zeros_bruteforce_bounded(&Lrs::constant(0), 11, 10)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn structure_examples() {
        let s = zero_set_structure(&alternating()).unwrap();
        assert_eq!(s.progressions, vec![(0, 2)]);
        assert!(s.sporadic.is_empty());
        for n in 0..100u64 {
            assert_eq!(s.contains(&big(n)), n % 2 == 0);
        }

        let s = zero_set_structure(&shifted_identity()).unwrap();
        assert!(s.progressions.is_empty());
        assert_eq!(s.sporadic, vec![big(3)]);

        let s = zero_set_structure(&Lrs::constant(0)).unwrap();
        assert_eq!(s.progressions, vec![(0, 1)]);
        assert!(s.sporadic.is_empty());
    }

    #[test]
    fn sporadic_roots_respect_residue_class() {
        // u_n = (n - 4)(n - 7) on even n, 1 on odd n:
        // only 4 is a zero (7 is odd)
        let even: Vec<i64> = (0..8).map(|n| if n % 2 == 0 { (n - 4) * (n - 7) } else { 1 }).collect();
        // characteristic polynomial (x^2 - 1)^3 covers degree-2 classes of period 2
        // (x^2 - 1)^3 = x^6 - 3x^4 + 3x^2 - 1
        let u = lrs(&[1, 0, -3, 0, 3, 0], &even[..6]);
        let s = zero_set_structure(&u).unwrap();
        assert_eq!(s.sporadic, vec![big(4)]);
        assert_eq!(count_zeros_bruteforce(&u, 1000).unwrap(), 1);
        assert_eq!(count_zeros_omega(&u, &big(1000)).unwrap(), big(1));
    }
}
