//! Odd primes `q_i` together with `n` primes in each progression `2 + q_i t`.
//!
//! Search procedure:
//!
//! 1. `B = 3 n (ln n)^2`.
//! 2. Take the first `n + 1` odd primes that are at least `B / 2`.
//! 3. For each such `q`, scan `2 + q t` for `t >= 1` and keep primes until
//!    `n` are found or the candidate passes `max(B^(1/eta), floor_bound)`.
//! 4. Rows that do not fill are dropped. If fewer than `n` rows survive the
//!    scan limit doubles (when extension is allowed) and the failed rows are
//!    scanned again.
//!
//! The analytic guarantees only hold for very large `n`; for small `n` the
//! doubling fallback is what makes the search total.

use num_rational::Ratio;
use serde::Serialize;

use super::primes::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSearchConfig {
    eta: Ratio<u64>,
    pub floor_bound: u64,
    pub allow_extension: bool,
}

impl Default for PrimeSearchConfig {
    fn default() -> Self {
        PrimeSearchConfig {
            eta: Ratio::new(1, 4),
            floor_bound: 10_000,
            allow_extension: true,
        }
    }
}

impl PrimeSearchConfig {
    /// `eta` must lie in `(0, 2/7]`; `floor_bound` must be positive.
    pub fn new(eta: Ratio<u64>, floor_bound: u64, allow_extension: bool) -> Result<Self> {
        if *eta.numer() == 0 || eta > Ratio::new(2, 7) {
            return Err(Error::invalid(format!("eta = {eta} outside (0, 2/7]")));
        }
        if floor_bound == 0 {
            return Err(Error::invalid("floor_bound must be positive"));
        }
        Ok(PrimeSearchConfig {
            eta,
            floor_bound,
            allow_extension,
        })
    }

    pub fn eta(&self) -> Ratio<u64> {
        self.eta
    }

    /// `max(B^(1/eta), floor_bound)`, saturating at `u64::MAX`.
    pub fn scan_limit(&self, b: f64) -> u64 {
        let exponent = *self.eta.denom() as f64 / *self.eta.numer() as f64;
        let raw = b.powf(exponent);
        let raw = if raw.is_finite() && raw < u64::MAX as f64 {
            raw.floor() as u64
        } else {
            u64::MAX
        };
        raw.max(self.floor_bound)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApPrimeTable {
    pub q: Vec<u64>,
    /// Row `i` lists primes `= 2 (mod q[i])`, ascending.
    pub p: Vec<Vec<u64>>,
    /// The real number `3 n (ln n)^2`.
    pub bound_b: f64,
    /// Scan limit in force when the last row filled.
    pub scan_limit: u64,
    /// Whether the scan limit had to be raised past its initial value.
    pub extended: bool,
}

impl ApPrimeTable {
    pub fn n(&self) -> usize {
        self.q.len()
    }

    /// Re-check every structural property from scratch.
    pub fn check(&self) -> Result<()> {
        let n = self.q.len();
        if self.p.len() != n {
            return Err(Error::VerificationFailed(format!(
                "{} rows for {n} moduli",
                self.p.len()
            )));
        }
        let mut qs = self.q.clone();
        qs.sort_unstable();
        qs.dedup();
        if qs.len() != n {
            return Err(Error::VerificationFailed("moduli not distinct".into()));
        }
        for (&q, row) in self.q.iter().zip(&self.p) {
            if q == 2 || !is_prime(q) {
                return Err(Error::VerificationFailed(format!("{q} is not an odd prime")));
            }
            if row.len() != n {
                return Err(Error::VerificationFailed(format!("row for {q} has {} entries", row.len())));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::VerificationFailed(format!("row for {q} not increasing")));
            }
            for &p in row {
                if p == 2 || !is_prime(p) || p % q != 2 {
                    return Err(Error::VerificationFailed(format!(
                        "{p} is not an odd prime = 2 mod {q}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `3 n (ln n)^2` with the natural logarithm.
pub fn progression_bound(n: usize) -> f64 {
    let nf = n as f64;
    let ln = nf.ln();
    3.0 * nf * ln * ln
}

struct RowScan {
    q: u64,
    found: Vec<u64>,
    /// Next candidate to test.
    next: u64,
}

impl RowScan {
    fn new(q: u64) -> Self {
        // t = 1 is the first odd element; even t gives even candidates
        RowScan {
            q,
            found: Vec::new(),
            next: q + 2,
        }
    }

    /// Continue scanning up to `limit`; true once `want` primes are held.
    fn advance(&mut self, want: usize, limit: u64) -> bool {
        while self.found.len() < want && self.next <= limit {
            if is_prime(self.next) {
                self.found.push(self.next);
            }
            match self.next.checked_add(2 * self.q) {
                Some(n) => self.next = n,
                None => break,
            }
        }
        self.found.len() >= want
    }
}

pub fn find_ap_primes(n: usize, cfg: &PrimeSearchConfig) -> Result<ApPrimeTable> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let bound_b = progression_bound(n);
    let start = ((bound_b / 2.0).ceil() as u64).max(3);
    let mut rows: Vec<RowScan> = (start..)
        .filter(|&q| q % 2 == 1 && is_prime(q))
        .take(n + 1)
        .map(RowScan::new)
        .collect();

    let initial_limit = cfg.scan_limit(bound_b);
    let mut limit = initial_limit;
    loop {
        let mut filled = 0;
        for row in rows.iter_mut() {
            if row.advance(n, limit) {
                filled += 1;
            }
        }
        if filled >= n {
            break;
        }
        if !cfg.allow_extension || limit == u64::MAX {
            let failed = rows
                .iter()
                .filter(|r| r.found.len() < n)
                .map(|r| r.q)
                .collect();
            return Err(Error::InsufficientPrimes { needed: n, failed });
        }
        limit = limit.saturating_mul(2);
    }

    let (q, p) = rows
        .into_iter()
        .filter(|r| r.found.len() >= n)
        .take(n)
        .map(|r| (r.q, r.found))
        .unzip();
    Ok(ApPrimeTable {
        q,
        p,
        bound_b,
        scan_limit: limit,
        extended: limit != initial_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn q7_row_starts_23_37_79() {
        let scan: Vec<u64> = (1..)
            .map(|t| 2 + 7 * t)
            .filter(|&j| trial_prime(j))
            .take(3)
            .collect();
        assert_eq!(scan, vec![23, 37, 79]);

        let mut row = RowScan::new(7);
        assert!(row.advance(3, 10_000));
        assert_eq!(row.found, vec![23, 37, 79]);
    }

    #[test]
    fn n3_table() {
        let t = find_ap_primes(3, &PrimeSearchConfig::default()).unwrap();
        t.check().unwrap();
        // B = 9 (ln 3)^2 ~ 10.86, so moduli start at 7
        assert_eq!(t.q, vec![7, 11, 13]);
        assert_eq!(t.p[0], vec![23, 37, 79]);
        assert!(!t.extended);
    }

    #[test]
    fn n1_table() {
        let t = find_ap_primes(1, &PrimeSearchConfig::default()).unwrap();
        t.check().unwrap();
        assert_eq!(t.q, vec![3]);
        assert_eq!(t.p, vec![vec![5]]);
    }

    #[test]
    fn tables_are_valid_for_small_n() {
        let cfg = PrimeSearchConfig::default();
        for n in 1..=15 {
            let t = find_ap_primes(n, &cfg).unwrap();
            t.check().unwrap();
            assert_eq!(t.n(), n);
        }
    }

    #[test]
    fn strict_config_succeeds_when_limit_suffices() {
        // n = 2: B ~ 2.88 and B^(7/2) ~ 40.7, enough for rows 3 and 5
        let cfg = PrimeSearchConfig::new(Ratio::new(2, 7), 1, false).unwrap();
        let t = find_ap_primes(2, &cfg).unwrap();
        t.check().unwrap();
        assert_eq!(t.scan_limit, 40);
        assert_eq!(t.p, vec![vec![5, 11], vec![7, 17]]);
    }

    #[test]
    fn extension_rescues_short_scans() {
        // n = 1: B = 0, so the scan limit is just the floor
        let strict = PrimeSearchConfig::new(Ratio::new(1, 4), 4, false).unwrap();
        match find_ap_primes(1, &strict) {
            Err(Error::InsufficientPrimes { needed: 1, failed }) => assert_eq!(failed, vec![3, 5]),
            other => panic!("unexpected {other:?}"),
        }
        let lenient = PrimeSearchConfig::new(Ratio::new(1, 4), 4, true).unwrap();
        let t = find_ap_primes(1, &lenient).unwrap();
        t.check().unwrap();
        assert!(t.extended);
        assert_eq!(t.p, vec![vec![5]]);
    }

    #[test]
    fn config_validation() {
        assert!(PrimeSearchConfig::new(Ratio::new(0, 1), 10, true).is_err());
        assert!(PrimeSearchConfig::new(Ratio::new(1, 3), 10, true).is_err());
        assert!(PrimeSearchConfig::new(Ratio::new(2, 7), 10, true).is_ok());
        assert!(PrimeSearchConfig::new(Ratio::new(1, 4), 0, true).is_err());
        assert!(find_ap_primes(0, &PrimeSearchConfig::default()).is_err());
    }
}
