//! Seeded oracle-equivalence suites behind `lrs verify`.
//!
//! Each suite draws a random corpus from one seed and compares a fast
//! routine with a slow, independent computation.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::inclusion::{decide_inclusion, GsspInstance};
use crate::lrs::{Lrs, SpikeSumLrs, ZeroTestVerdict};
use crate::number_theory::{crt_combine, find_ap_primes, is_prime, CrtWitness, PrimeSearchConfig};
use crate::omega::{count_zeros_omega, cyclotomic, OmegaAnalysis};
use crate::reduction::{build_reduction, check_congruence, crt_pipeline};
use crate::subset_sum::{count_ssp, SspInstance};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    /// First mismatch, if any.
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn passed(&self) -> u64 {
        self.suites.iter().map(|s| s.passed).sum()
    }

    pub fn failed(&self) -> u64 {
        self.suites.iter().map(|s| s.failed).sum()
    }
}

struct Tally {
    result: SuiteResult,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            result: SuiteResult {
                name,
                passed: 0,
                failed: 0,
                first_failure: None,
            },
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.result.passed += 1;
        } else {
            self.result.failed += 1;
            if self.result.first_failure.is_none() {
                self.result.first_failure = Some(describe());
            }
        }
    }
}

type Suite = fn(&mut ChaCha8Rng, &mut Tally);

const SUITES: &[(&str, Suite)] = &[
    ("eval-vs-iteration", eval_vs_iteration),
    ("eval-mod-vs-eval", eval_mod_vs_eval),
    ("add-pointwise", add_pointwise),
    ("spike-recurrence", spike_recurrence),
    ("zero-test-soundness", zero_test_soundness),
    ("primality-vs-trial-division", primality),
    ("crt-round-trip", crt_round_trip),
    ("gadget-congruence", gadget_congruence),
    ("crt-pipeline", crt_pipeline_suite),
    ("prime-table-invariants", prime_table),
    ("omega-zero-count", omega_zero_count),
    ("inclusion-vs-forall-exists", inclusion_suite),
];

pub fn run_all(seed: u64) -> Report {
    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(i, &(name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut tally = Tally::new(name);
            suite(&mut rng, &mut tally);
            tally.result
        })
        .collect();
    Report { seed, suites }
}

fn random_lrs(rng: &mut ChaCha8Rng, max_order: usize) -> Lrs {
    let k = rng.gen_range(1..=max_order);
    let mut coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
    if coeffs[0] == 0 {
        coeffs[0] = if rng.gen() { 1 } else { -1 };
    }
    let init: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
    Lrs::from_i64(&coeffs, &init).expect("valid")
}

/// `u_0 .. u_{count-1}` straight from the recurrence.
fn iterate(u: &Lrs, count: usize) -> Vec<BigInt> {
    let k = u.order();
    let mut t: Vec<BigInt> = u.init().to_vec();
    while t.len() < count {
        let n = t.len();
        let next = (0..k).map(|j| &u.coeffs()[j] * &t[n - k + j]).sum();
        t.push(next);
    }
    t.truncate(count);
    t
}

fn eval_vs_iteration(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..40 {
        let u = random_lrs(rng, 5);
        let direct = iterate(&u, 301);
        for _ in 0..5 {
            let n = rng.gen_range(0..=300usize);
            let got = u.eval_u64(n as u64);
            t.check(got.as_ref() == Ok(&direct[n]), || format!("{u:?} at n={n}"));
        }
    }
}

fn eval_mod_vs_eval(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..40 {
        let u = random_lrs(rng, 5);
        let n = rng.gen_range(0..=500u64);
        let m = rng.gen_range(1..=1_000_003u64);
        let exact = u.eval_u64(n).expect("small");
        let want = exact.mod_floor_u64(m);
        let got = u.eval_mod(&BigUint::from(n), m);
        t.check(got.as_ref() == Ok(&want), || format!("{u:?} n={n} m={m}"));
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(&BigInt::from(m));
        u64::try_from(&r).expect("reduced")
    }
}

fn add_pointwise(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..40 {
        let (u, v) = (random_lrs(rng, 4), random_lrs(rng, 4));
        let w = u.add(&v);
        let (a, b) = (iterate(&u, 120), iterate(&v, 120));
        let c = iterate(&w, 120);
        let ok = (0..120).all(|i| c[i] == &a[i] + &b[i]);
        t.check(ok, || format!("{u:?} + {v:?}"));
    }
}

fn spike_recurrence(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let pool = [2u64, 3, 5, 7, 11, 13];
    for _ in 0..30 {
        let mut spikes: Vec<(u64, i64)> = Vec::new();
        for &p in &pool {
            if rng.gen_bool(0.5) {
                spikes.push((p, rng.gen_range(-9..=9)));
            }
        }
        let g = SpikeSumLrs::from_i64(&spikes, rng.gen_range(-9..=9)).expect("valid");
        let u = g.to_lrs(1 << 12).expect("small order");
        let terms = iterate(&u, 400);
        let ok = (0..400u64).all(|n| terms[n as usize] == g.eval_u64(n));
        t.check(ok, || format!("{g:?}"));
    }
}

fn zero_test_soundness(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..30 {
        let u = random_lrs(rng, 4);
        let n = rng.gen_range(0..=200u64);
        let exact = u.eval_u64(n).expect("small");
        let verdict = u
            .zero_test_randomized(&BigUint::from(n), 10, rng)
            .expect("valid");
        let want = if exact.is_zero() {
            ZeroTestVerdict::ProbablyZero
        } else {
            ZeroTestVerdict::DefinitelyNonzero
        };
        t.check(verdict == want, || format!("{u:?} n={n} value={exact}"));
    }
}

fn primality(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
    for _ in 0..2000 {
        let n = rng.gen_range(0..=1u64 << 24);
        t.check(is_prime(n) == trial(n), || format!("n={n}"));
    }
}

fn crt_round_trip(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let moduli = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    for _ in 0..100 {
        let x: u64 = rng.gen_range(0..moduli.iter().product::<u64>());
        let count = rng.gen_range(1..=moduli.len());
        let mut w = CrtWitness::default();
        for &m in &moduli[..count] {
            w.push(m, x % m);
        }
        let prod: u64 = moduli[..count].iter().product();
        let got = crt_combine(&w);
        t.check(got == Ok(BigUint::from(x % prod)), || format!("x={x} count={count}"));
    }
}

fn random_ssp(rng: &mut ChaCha8Rng, max_m: usize, range: i64) -> SspInstance {
    let m = rng.gen_range(0..=max_m);
    let values: Vec<i64> = (0..m).map(|_| rng.gen_range(-range..=range)).collect();
    let target = rng.gen_range(-range..=range);
    SspInstance::from_i64(&values, target)
}

fn brute_ssp(inst: &SspInstance) -> u64 {
    let m = inst.len();
    (0u64..1 << m)
        .filter(|mask| {
            let s: BigInt = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &inst.values[i]).sum();
            s == inst.target
        })
        .count() as u64
}

fn gadget_congruence(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..60 {
        let inst = random_ssp(rng, 5, 15);
        let q = [3u64, 5, 7, 11][rng.gen_range(0..4)];
        let candidates: Vec<u64> = (3..500).filter(|&p| is_prime(p) && p % q == 2).collect();
        let mut primes = Vec::new();
        while primes.len() < inst.len() {
            let p = candidates[rng.gen_range(0..candidates.len())];
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        let ok = build_reduction(&inst, q, &primes)
            .and_then(|r| check_congruence(&r))
            .map(|c| c.congruent && c.count_w == brute_ssp(&inst));
        t.check(ok == Ok(true), || format!("{inst:?} q={q} primes={primes:?}"));
    }
}

fn crt_pipeline_suite(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let cfg = PrimeSearchConfig::default();
    for _ in 0..20 {
        let inst = random_ssp(rng, 8, 10);
        let got = crt_pipeline(&inst, &cfg);
        let want = brute_ssp(&inst);
        t.check(got == Ok(want), || format!("{inst:?}: {got:?} vs {want}"));
        t.check(count_ssp(&inst) == Ok(want), || format!("{inst:?} meet-in-middle"));
    }
}

fn prime_table(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let cfg = PrimeSearchConfig::default();
    for n in 1..=8 {
        let table = find_ap_primes(n, &cfg);
        let ok = table.as_ref().map(|tb| {
            tb.n() == n
                && tb.q.iter().all(|&q| q > 2 && is_prime(q))
                && tb.q.windows(2).all(|w| w[0] < w[1])
                && tb.p.iter().zip(&tb.q).all(|(row, &q)| {
                    row.len() == n && row.iter().all(|&p| p > 2 && is_prime(p) && p % q == 2)
                })
        });
        t.check(ok == Ok(true), || format!("n={n}: {table:?}"));
    }
}

/// Product of random cyclotomic factors with total degree at most `max_k`.
fn random_omega_lrs(rng: &mut ChaCha8Rng, max_k: usize) -> Lrs {
    let phi = |d: u64| cyclotomic(d);
    let target = rng.gen_range(1..=max_k);
    let mut chi = crate::lrs::IntPoly::one();
    let mut deg = 0;
    while deg < target {
        let d = rng.gen_range(1..=12u64);
        let f = phi(d);
        let fd = f.degree().expect("nonzero");
        if deg + fd <= target {
            chi = chi.mul(&f);
            deg += fd;
        } else if deg > 0 && rng.gen_bool(0.3) {
            break;
        }
    }
    let coeffs: Vec<BigInt> = (0..deg).map(|j| -chi.coeff(j)).collect();
    let init: Vec<BigInt> = (0..deg).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
    Lrs::new(coeffs, init).expect("cyclotomic product has unit constant term")
}

fn omega_zero_count(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..20 {
        let u = random_omega_lrs(rng, 6);
        let bound = 2000usize;
        let direct = iterate(&u, bound);
        let want = direct.iter().filter(|x| x.is_zero()).count();
        let got = count_zeros_omega(&u, &BigUint::from(bound));
        t.check(got == Ok(BigUint::from(want)), || format!("{u:?}: {got:?} vs {want}"));
        let structure = OmegaAnalysis::new(&u).and_then(|a| a.zero_set_structure());
        let ok = structure.map(|z| {
            (0..bound).all(|n| z.contains(&BigUint::from(n)) == direct[n].is_zero())
        });
        t.check(ok == Ok(true), || format!("{u:?} structure"));
    }
}

fn inclusion_suite(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..60 {
        let m = rng.gen_range(0..=5);
        let a: Vec<i64> = (0..m).map(|_| rng.gen_range(-6..=6)).collect();
        let b: Vec<i64> = (0..m).map(|_| rng.gen_range(-6..=6)).collect();
        let target = rng.gen_range(-6..=6);
        let dot = |w: &[i64], mask: u32| (0..m).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).sum::<i64>();
        let want = (0u32..1 << m).all(|x| (0u32..1 << m).any(|y| dot(&a, x) + dot(&b, y) == target));
        let got = GsspInstance::from_i64(&a, &b, target)
            .and_then(|g| decide_inclusion(&g))
            .map(|v| v.included);
        t.check(got == Ok(want), || format!("a={a:?} b={b:?} t={target}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let report = run_all(7);
        for s in &report.suites {
            assert_eq!(s.failed, 0, "{}: {:?}", s.name, s.first_failure);
            assert!(s.passed > 0, "{} ran nothing", s.name);
        }
    }

    #[test]
    fn seed_determines_report() {
        let a = serde_json::to_string(&run_all(3)).unwrap();
        let b = serde_json::to_string(&run_all(3)).unwrap();
        assert_eq!(a, b);
    }
}
