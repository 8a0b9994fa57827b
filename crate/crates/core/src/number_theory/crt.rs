//! Chinese remaindering over pairwise-coprime moduli.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::decimal_pairs;

/// Congruence data `x = residue (mod modulus)`, one pair per modulus.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CrtWitness {
    #[serde(with = "decimal_pairs")]
    pub residues: Vec<(BigUint, BigUint)>,
}

impl CrtWitness {
    pub fn new(residues: Vec<(BigUint, BigUint)>) -> Self {
        CrtWitness { residues }
    }

    pub fn push(&mut self, modulus: impl Into<BigUint>, residue: impl Into<BigUint>) {
        self.residues.push((modulus.into(), residue.into()));
    }

    pub fn modulus_product(&self) -> BigUint {
        self.residues.iter().map(|(m, _)| m).product()
    }
}

/// The unique `x` in `[0, prod moduli)` meeting every congruence.
///
/// The empty witness combines to 0. Moduli must be positive and pairwise
/// coprime, and each residue must be reduced.
pub fn crt_combine(w: &CrtWitness) -> Result<BigUint> {
    let mut x = BigUint::zero();
    let mut acc = BigUint::one();
    for (i, (m, r)) in w.residues.iter().enumerate() {
        if m.is_zero() {
            return Err(Error::invalid("modulus must be positive"));
        }
        if r >= m {
            return Err(Error::invalid(format!("residue {r} not reduced modulo {m}")));
        }
        if !acc.gcd(m).is_one() {
            let clash = w.residues[..i]
                .iter()
                .find(|(prev, _)| !prev.gcd(m).is_one())
                .map(|(prev, _)| prev.to_string())
                .unwrap_or_default();
            return Err(Error::NonCoprimeModuli(clash, m.to_string()));
        }
        // x + acc * t = r (mod m)  =>  t = (r - x) * acc^{-1} (mod m)
        let inv = mod_inverse(&(&acc % m), m).expect("coprime after gcd check");
        let mi = BigInt::from(m.clone());
        let diff = (BigInt::from(r.clone()) - BigInt::from(&x % m)).mod_floor(&mi);
        let t = (diff * BigInt::from(inv)).mod_floor(&mi);
        x += &acc * t.to_biguint().expect("reduced value is non-negative");
        acc *= m;
    }
    Ok(x)
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let ext = BigInt::from(a.clone()).extended_gcd(&BigInt::from(m.clone()));
    if !ext.gcd.is_one() {
        return None;
    }
    let inv = ext.x.mod_floor(&BigInt::from(m.clone()));
    debug_assert_ne!(inv.sign(), Sign::Minus);
    inv.to_biguint()
}
