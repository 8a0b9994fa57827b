//! Primality, factorization, totients, Chinese remaindering, and the search
//! for primes in the progressions `2 + q t`.

mod ap_primes;
mod crt;
mod factor;
mod primes;

pub use ap_primes::{find_ap_primes, progression_bound, ApPrimeTable, PrimeSearchConfig};
pub use crt::{crt_combine, CrtWitness};
pub use factor::{divisors, factor, totient, FactorBudget};
pub use primes::{first_primes, is_prime, is_prime_big, random_prime_in};

pub(crate) use primes::mul_mod;
