//! Command-line front end: argument grammar, JSON I/O, and exit codes.
//!
//! Exit status is 0 on success, 1 on a domain error (bad input, failed
//! precondition, failed verification), 2 when a resource budget is exceeded.
//! Default budgets can be overridden through the environment:
//! `LRS_MAX_BITS`, `LRS_MAX_ORDER`, `LRS_MAX_TERMS`, `LRS_SSP_MAX`.

use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::inclusion::{decide_inclusion_bounded, GsspInstance};
use crate::lrs::{Lrs, SpikeSumLrs, DEFAULT_MAX_BITS, DEFAULT_MAX_ORDER};
use crate::number_theory::{find_ap_primes, PrimeSearchConfig};
use crate::omega::{certify_omega, count_zeros_bruteforce_bounded, OmegaAnalysis, DEFAULT_TERM_BUDGET};
use crate::reduction::{build_reduction, check_congruence, crt_pipeline_report};
use crate::subset_sum::{count_ssp_bounded, decide_ssp_bounded, SspBudget, SspInstance};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "lrs", version, about = "Exact tools for integer linear recurrence sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Read the input JSON from this file ("-" for stdin; stdin is the default)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Inline input JSON, instead of --input
    #[arg(long = "json", global = true, conflicts_with = "input")]
    pub inline: Option<String>,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// u_n by companion-matrix powering
    Eval {
        #[arg(long)]
        n: String,
    },
    /// u_n mod m
    EvalMod {
        #[arg(long)]
        n: String,
        #[arg(long)]
        modulus: u64,
    },
    /// Randomized test of u_n = 0 by evaluation modulo random 61-bit primes
    ZeroTest {
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Pointwise sum of {"u": LRS, "v": LRS}
    LrsAdd,
    /// Explicit recurrence for a spike-sum sequence
    SpikeToLrs,
    /// Factor the characteristic polynomial into cyclotomics
    CertifyOmega,
    /// Count zeros below --bound (or up to it with --inclusive)
    CountZeros {
        #[arg(long)]
        bound: String,
        #[arg(long)]
        inclusive: bool,
        /// Iterate the recurrence instead of the exact root-of-unity method
        #[arg(long)]
        bruteforce: bool,
    },
    /// Residue classes and sporadic indices making up the zero set
    ZeroStructure,
    /// Number of index subsets summing to the target
    SspCount,
    /// Whether some index subset sums to the target
    SspDecide,
    /// Odd primes q_i with n primes = 2 (mod q_i) each
    FindPrimes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/4")]
        eta: String,
        #[arg(long, default_value_t = 10_000)]
        floor: u64,
        #[arg(long)]
        no_extension: bool,
    },
    /// Build the gadget sequence for one modulus and prime row
    ReduceSsp {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Compare subset-sum and gadget-zero counts modulo q
    #[command(name = "check-lemma31")]
    CheckCongruence {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Count subset-sum solutions via gadget zero counts and CRT
    CrtCount {
        #[arg(long, default_value = "1/4")]
        eta: String,
        #[arg(long, default_value_t = 10_000)]
        floor: u64,
    },
    /// Decide value-set inclusion for {"a": [..], "b": [..], "t": ..}
    CheckInclusion,
    /// Run the randomized oracle-equivalence suites
    Verify,
}

/// Resource limits shared by the subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub max_bits: u64,
    pub max_order: usize,
    pub max_terms: u64,
    pub ssp_max: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_bits: DEFAULT_MAX_BITS,
            max_order: DEFAULT_MAX_ORDER,
            max_terms: DEFAULT_TERM_BUDGET,
            ssp_max: SspBudget::default().meet_in_middle,
        }
    }
}

impl Budgets {
    pub fn from_env() -> Self {
        fn var<T: FromStr>(name: &str, default: T) -> T {
            std::env::var(name)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        }
        let d = Budgets::default();
        Budgets {
            max_bits: var("LRS_MAX_BITS", d.max_bits),
            max_order: var("LRS_MAX_ORDER", d.max_order),
            max_terms: var("LRS_MAX_TERMS", d.max_terms),
            ssp_max: var("LRS_SSP_MAX", d.ssp_max),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Io(String),
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(e) if e.is_budget() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// A successful run: the JSON result plus the exit status to report. The
/// status is nonzero only for checks that ran but found a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub value: Value,
    pub exit_code: i32,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome {
            value,
            exit_code: 0,
        }
    }
}

#[derive(Deserialize)]
struct LrsPair {
    u: Lrs,
    v: Lrs,
}

fn parse_uint(what: &str, s: &str) -> Result<BigUint, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("{what}: {s:?} is not a non-negative integer")))
}

fn parse_eta(s: &str) -> Result<Ratio<u64>, CliError> {
    let bad = || CliError::Parse(format!("eta: {s:?} is not a fraction p/q"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

fn s<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

fn strings<T: ToString>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(s).collect())
}

impl Cli {
    fn read_input(&self) -> Result<String, CliError> {
        if let Some(text) = &self.inline {
            return Ok(text.clone());
        }
        match &self.input {
            Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            _ => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
                Ok(buf)
            }
        }
    }

    fn input<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        let text = self.read_input()?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    run_with(cli, &Budgets::from_env())
}

pub fn run_with(cli: &Cli, budgets: &Budgets) -> Result<Outcome, CliError> {
    let ssp_budget = SspBudget {
        meet_in_middle: budgets.ssp_max,
        ..SspBudget::default()
    };
    let value = match &cli.command {
        Command::Eval { n } => {
            let u: Lrs = cli.input()?;
            let n = parse_uint("n", n)?;
            json!({ "value": s(u.eval_bounded(&n, budgets.max_bits)?) })
        }
        Command::EvalMod { n, modulus } => {
            let u: Lrs = cli.input()?;
            let n = parse_uint("n", n)?;
            json!({ "value": s(u.eval_mod(&n, *modulus)?) })
        }
        Command::ZeroTest { n, trials } => {
            let u: Lrs = cli.input()?;
            let n = parse_uint("n", n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let verdict = u.zero_test_randomized(&n, *trials, &mut rng)?;
            json!({ "verdict": verdict })
        }
        Command::LrsAdd => {
            let pair: LrsPair = cli.input()?;
            serde_json::to_value(pair.u.add(&pair.v)).expect("serializable")
        }
        Command::SpikeToLrs => {
            let g: SpikeSumLrs = cli.input()?;
            serde_json::to_value(g.to_lrs(budgets.max_order)?).expect("serializable")
        }
        Command::CertifyOmega => {
            let u: Lrs = cli.input()?;
            match certify_omega(&u) {
                Some(c) => json!({
                    "omega": true,
                    "factors": c.factors.iter().map(|(d, e)| strings([d.to_string(), e.to_string()])).collect::<Vec<_>>(),
                    "period": s(c.period),
                }),
                None => json!({ "omega": false }),
            }
        }
        Command::CountZeros {
            bound,
            inclusive,
            bruteforce,
        } => {
            let u: Lrs = cli.input()?;
            let mut bound = parse_uint("bound", bound)?;
            if *inclusive {
                bound += 1u32;
            }
            let count = if *bruteforce {
                let b = u64::try_from(&bound)
                    .map_err(|_| Error::budget("brute-force term count", budgets.max_terms, &bound))?;
                BigUint::from(count_zeros_bruteforce_bounded(&u, b, budgets.max_terms)?)
            } else {
                OmegaAnalysis::new(&u)?.count_zeros(&bound)?
            };
            json!({
                "count": s(count),
                "range": if *inclusive { "inclusive" } else { "half-open" },
                "method": if *bruteforce { "bruteforce" } else { "omega" },
            })
        }
        Command::ZeroStructure => {
            let u: Lrs = cli.input()?;
            let analysis = OmegaAnalysis::new(&u)?;
            let z = analysis.zero_set_structure()?;
            json!({
                "period": s(analysis.period()),
                "progressions": z.progressions.iter().map(|(r, l)| strings([*r, *l])).collect::<Vec<_>>(),
                "sporadic": strings(&z.sporadic),
            })
        }
        Command::SspCount => {
            let inst: SspInstance = cli.input()?;
            json!({ "count": s(count_ssp_bounded(&inst, &ssp_budget)?) })
        }
        Command::SspDecide => {
            let inst: SspInstance = cli.input()?;
            json!({ "exists": decide_ssp_bounded(&inst, &ssp_budget)? })
        }
        Command::FindPrimes {
            n,
            eta,
            floor,
            no_extension,
        } => {
            let cfg = PrimeSearchConfig::new(parse_eta(eta)?, *floor, !no_extension)?;
            let t = find_ap_primes(*n, &cfg)?;
            json!({
                "n": s(t.n()),
                "q": strings(&t.q),
                "p": t.p.iter().map(strings).collect::<Vec<_>>(),
                "bound_b": t.bound_b,
                "scan_limit": s(t.scan_limit),
                "extended": t.extended,
            })
        }
        Command::ReduceSsp { q, primes } => {
            let inst: SspInstance = cli.input()?;
            let r = build_reduction(&inst, *q, primes)?;
            json!({
                "q": s(r.q),
                "primes": strings(&r.primes),
                "big_bound": s(&r.big_bound),
                "gadget": r.gadget,
            })
        }
        Command::CheckCongruence { q, primes } => {
            let inst: SspInstance = cli.input()?;
            let r = build_reduction(&inst, *q, primes)?;
            let c = check_congruence(&r)?;
            let value = json!({
                "q": s(c.q),
                "count_w": s(c.count_w),
                "count_z": s(&c.count_z),
                "congruent": c.congruent,
            });
            if !c.congruent {
                eprintln!("error: solution count and zero count disagree modulo {q}");
                return Ok(Outcome {
                    value,
                    exit_code: 1,
                });
            }
            value
        }
        Command::CrtCount { eta, floor } => {
            let inst: SspInstance = cli.input()?;
            let cfg = PrimeSearchConfig::new(parse_eta(eta)?, *floor, true)?;
            let report = crt_pipeline_report(&inst, &cfg)?;
            json!({
                "count": s(&report.count),
                "residues": report.witness.residues.iter().map(|(m, r)| strings([m, r])).collect::<Vec<_>>(),
            })
        }
        Command::CheckInclusion => {
            let g: GsspInstance = cli.input()?;
            let v = decide_inclusion_bounded(&g, budgets.ssp_max.min(crate::inclusion::DEFAULT_VALUE_SET_SPIKES))?;
            json!({ "included": v.included, "witness": v.witness })
        }
        Command::Verify => {
            let report = verify::run_all(cli.seed);
            let failed = report.failed();
            return Ok(Outcome {
                value: serde_json::to_value(&report).expect("serializable"),
                exit_code: if failed > 0 { 1 } else { 0 },
            });
        }
    };
    Ok(value.into())
}
