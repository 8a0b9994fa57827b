//! Companion-matrix powering over `Z` and over `Z/mZ`.
//!
//! The companion matrix `M` maps the window `(u_n, ..., u_{n+k-1})` to
//! `(u_{n+1}, ..., u_{n+k})`, so `u_n` is the first row of `M^n` applied to
//! the initial values.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::number_theory::mul_mod;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BigMatrix {
    k: usize,
    entries: Vec<BigInt>,
    /// Last row of the companion matrix this power was built from.
    coeffs: Vec<BigInt>,
}

pub(crate) fn companion(coeffs: &[BigInt]) -> BigMatrix {
    let k = coeffs.len();
    let mut entries = vec![BigInt::zero(); k * k];
    for i in 0..k - 1 {
        entries[i * k + i + 1] = BigInt::one();
    }
    entries[(k - 1) * k..].clone_from_slice(coeffs);
    BigMatrix {
        k,
        entries,
        coeffs: coeffs.to_vec(),
    }
}

impl BigMatrix {
    fn identity(&self) -> BigMatrix {
        let k = self.k;
        let mut entries = vec![BigInt::zero(); k * k];
        for i in 0..k {
            entries[i * k + i] = BigInt::one();
        }
        BigMatrix {
            k,
            entries,
            coeffs: self.coeffs.clone(),
        }
    }

    fn square(&self) -> BigMatrix {
        let k = self.k;
        let mut out = vec![BigInt::zero(); k * k];
        for i in 0..k {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = &self.entries[l * k + j];
                    if !b.is_zero() {
                        out[i * k + j] += a * b;
                    }
                }
            }
        }
        BigMatrix {
            k,
            entries: out,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `self * M`, using the sparsity of the companion matrix.
    fn times_companion(&self) -> BigMatrix {
        let k = self.k;
        let mut out = vec![BigInt::zero(); k * k];
        for i in 0..k {
            let last = &self.entries[i * k + k - 1];
            for j in 0..k {
                let mut v = if j > 0 {
                    self.entries[i * k + j - 1].clone()
                } else {
                    BigInt::zero()
                };
                if !last.is_zero() && !self.coeffs[j].is_zero() {
                    v += last * &self.coeffs[j];
                }
                out[i * k + j] = v;
            }
        }
        BigMatrix {
            k,
            entries: out,
            coeffs: self.coeffs.clone(),
        }
    }

    fn max_bits(&self) -> u64 {
        self.entries.iter().map(|e| e.bits()).max().unwrap_or(0)
    }

    pub(crate) fn pow(&self, n: &BigUint, max_bits: u64) -> Result<BigMatrix> {
        let mut acc = self.identity();
        for i in (0..n.bits()).rev() {
            acc = acc.square();
            if n.bit(i) {
                acc = acc.times_companion();
            }
            let bits = acc.max_bits();
            if bits > max_bits {
                return Err(Error::budget("intermediate integer bit length", max_bits, bits));
            }
        }
        Ok(acc)
    }

    pub(crate) fn first_row_dot(&self, v: &[BigInt]) -> BigInt {
        self.entries[..self.k]
            .iter()
            .zip(v)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ModMatrix {
    k: usize,
    m: u64,
    entries: Vec<u64>,
    coeffs: Vec<u64>,
}

impl ModMatrix {
    /// Coefficients must already be reduced mod `m`.
    pub(crate) fn companion(coeffs: &[u64], m: u64) -> ModMatrix {
        let k = coeffs.len();
        let mut entries = vec![0u64; k * k];
        for i in 0..k - 1 {
            entries[i * k + i + 1] = 1 % m;
        }
        entries[(k - 1) * k..].copy_from_slice(coeffs);
        ModMatrix {
            k,
            m,
            entries,
            coeffs: coeffs.to_vec(),
        }
    }

    fn identity(&self) -> ModMatrix {
        let k = self.k;
        let mut entries = vec![0u64; k * k];
        for i in 0..k {
            entries[i * k + i] = 1 % self.m;
        }
        ModMatrix {
            entries,
            ..self.clone()
        }
    }

    fn square(&self) -> ModMatrix {
        let (k, m) = (self.k, self.m);
        let mut out = vec![0u64; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut s: u128 = 0;
                for l in 0..k {
                    s += self.entries[i * k + l] as u128 * self.entries[l * k + j] as u128;
                    s %= m as u128;
                }
                out[i * k + j] = s as u64;
            }
        }
        ModMatrix {
            entries: out,
            ..self.clone()
        }
    }

    fn times_companion(&self) -> ModMatrix {
        let (k, m) = (self.k, self.m);
        let mut out = vec![0u64; k * k];
        for i in 0..k {
            let last = self.entries[i * k + k - 1];
            for j in 0..k {
                let shifted = if j > 0 { self.entries[i * k + j - 1] } else { 0 };
                let v = shifted as u128 + mul_mod(last, self.coeffs[j], m) as u128;
                out[i * k + j] = (v % m as u128) as u64;
            }
        }
        ModMatrix {
            entries: out,
            ..self.clone()
        }
    }

    pub(crate) fn pow(&self, n: &BigUint) -> ModMatrix {
        let mut acc = self.identity();
        for i in (0..n.bits()).rev() {
            acc = acc.square();
            if n.bit(i) {
                acc = acc.times_companion();
            }
        }
        acc
    }

    /// `v` must already be reduced mod `m`.
    pub(crate) fn first_row_dot(&self, v: &[u64]) -> u64 {
        let m = self.m as u128;
        self.entries[..self.k]
            .iter()
            .zip(v)
            .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % m) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_matrix_powers() {
        let m = companion(&[BigInt::one(), BigInt::one()]);
        // M^n = [[F_{n-1}, F_n], [F_n, F_{n+1}]]
        let p = m.pow(&BigUint::from(10u32), 64).unwrap();
        let want: Vec<BigInt> = [34, 55, 55, 89].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(p.entries, want);

        let mm = ModMatrix::companion(&[1, 1], 7);
        let p = mm.pow(&BigUint::from(10u32));
        assert_eq!(p.entries, vec![34 % 7, 55 % 7, 55 % 7, 89 % 7]);
    }

    #[test]
    fn zeroth_power_is_identity() {
        let m = companion(&[BigInt::from(3), BigInt::from(-2), BigInt::from(5)]);
        let p = m.pow(&BigUint::zero(), 8).unwrap();
        assert_eq!(p, m.identity());
    }
}
