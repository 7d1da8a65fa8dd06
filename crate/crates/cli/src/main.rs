use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use importance::enumerate::{
    check_duality, enumerate_brute, enumerate_marco, minimal_hitting_sets, BruteConfig,
    DEFAULT_BRUTE_CAP,
};
use importance::indices::{compute_report, IndexKind, Method, ReportRequest};
use importance::io::{parse_problem, render_estimate, render_family, render_report, Format, ProblemFile};
use importance::minimal::{extract_mbp, extract_mbp_from, extract_msp, Algorithm};
use importance::oracle::find_monotone_violation;
use importance::sampling::{sample_banzhaf_raw_all, sample_shapley, SampleConfig};
use importance::{Error, FamilyKind, MinimalFamily, Oracle, Subset};

mod exit {
    pub const USAGE: u8 = 2;
    pub const PRECONDITION: u8 = 3;
    pub const SIZE_CAP: u8 = 4;
    pub const PROPERTY: u8 = 5;
}

/// Importance of elements for monotone predicates: minimal sets, minimal
/// breaks and power indices.
#[derive(Parser)]
#[command(name = "importance", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest ground set handled by exhaustive tabulation.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_CAP)]
    max_brute_bits: usize,
    /// Worker threads for tabulation and sampling.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Extract one minimal set or minimal break.
    Minimal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OneKind::Msp)]
        kind: OneKind,
        #[arg(long, default_value = "deletion")]
        algo: Algorithm,
        /// Comma-separated 1-based labels; defaults to the full ground set.
        #[arg(long)]
        seed_set: Option<String>,
    },
    /// Enumerate minimal sets and/or minimal breaks.
    Enumerate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = EnumKind::Msp)]
        kind: EnumKind,
        #[arg(long, value_enum, default_value_t = EnumAlgo::Brute)]
        algo: EnumAlgo,
        /// Stop after this many members (MARCO only).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compute exact power indices.
    Indices {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated index names, or `all`.
        #[arg(long, default_value = "all")]
        index: String,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long, env = "IMPORTANCE_PRECISION", default_value_t = 3)]
        precision: usize,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Estimate an index by Monte-Carlo sampling.
    Sample {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SampledIndex::Shapley)]
        index: SampledIndex,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        max_samples: Option<u64>,
        #[arg(long, env = "IMPORTANCE_PRECISION", default_value_t = 3)]
        precision: usize,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Check monotonicity by sampling and duality by enumeration.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Random comparable pairs to test (0 skips the check).
        #[arg(long)]
        monotone_trials: Option<u64>,
        #[arg(long)]
        duality: bool,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OneKind {
    Msp,
    Mbp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Msp,
    Mbp,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumAlgo {
    Brute,
    Marco,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampledIndex {
    Shapley,
    BanzhafRaw,
}

const DEFAULT_MONOTONE_TRIALS: u64 = 10_000;

/// An error with its exit code already decided.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = error.downcast_ref::<Error>().map_or(exit::USAGE, exit_code);
        Failure { code, error }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SeedNotSatisfying
        | Error::SeedSatisfying
        | Error::NotMember { .. }
        | Error::InapplicableMethod { .. } => exit::PRECONDITION,
        Error::SizeCap { .. } | Error::Unavailable(_) => exit::SIZE_CAP,
        _ => exit::USAGE,
    }
}

fn property_failure(msg: String) -> Failure {
    Failure {
        code: exit::PROPERTY,
        error: anyhow!(msg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = run(&cli, &mut out);
    if let Err(e) = emit(&cli.global, &out) {
        eprintln!("error: {e:#}");
        return ExitCode::from(exit::USAGE);
    }
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn emit(global: &Global, out: &str) -> anyhow::Result<()> {
    match &global.output {
        Some(path) => fs::write(path, out).with_context(|| format!("writing {}", path.display())),
        None => Ok(io::stdout().write_all(out.as_bytes())?),
    }
}

fn load(path: &PathBuf) -> Result<ProblemFile, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_problem(&text)
        .with_context(|| format!("in {}", path.display()))
        .map_err(Failure::from)
}

fn brute_config(global: &Global) -> BruteConfig {
    if global.max_brute_bits != DEFAULT_BRUTE_CAP {
        eprintln!(
            "warning: exhaustive cap changed from {DEFAULT_BRUTE_CAP} to {}; tabulation needs 2^m oracle calls",
            global.max_brute_bits
        );
    }
    BruteConfig {
        cap: global.max_brute_bits,
        threads: global.threads.max(1),
    }
}

fn parse_labels(list: &str, oracle: &Oracle) -> Result<Subset, Failure> {
    let labels = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| anyhow!("bad label `{s}` in seed set")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(oracle.ground().subset_from_labels(labels)?)
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let global = &cli.global;
    if global.threads == 0 {
        return Err(anyhow!("--threads must be at least 1").into());
    }
    match &cli.command {
        Command::Minimal {
            input,
            kind,
            algo,
            seed_set,
        } => {
            let problem = load(input)?;
            let oracle = problem.instance.oracle()?;
            let seed = seed_set.as_deref().map(|s| parse_labels(s, &oracle)).transpose()?;
            let found = match (kind, seed) {
                (OneKind::Msp, seed) => extract_msp(&oracle, seed.unwrap_or(oracle.full()), *algo)?,
                (OneKind::Mbp, Some(seed)) => extract_mbp_from(&oracle, seed, *algo)?,
                (OneKind::Mbp, None) => extract_mbp(&oracle, *algo),
            };
            out.push_str(&format!(
                "set: {}\nsize: {}\noracle_calls: {}\n",
                serde_labels(found.found),
                found.found.len(),
                found.oracle_calls
            ));
        }
        Command::Enumerate {
            input,
            kind,
            algo,
            limit,
        } => {
            let problem = load(input)?;
            let oracle = problem.instance.oracle()?;
            let want_msp = *kind != EnumKind::Mbp;
            let want_mbp = *kind != EnumKind::Msp;
            let (msps, mbps) = match algo {
                EnumAlgo::Brute => {
                    if limit.is_some() {
                        eprintln!("warning: --limit is ignored by brute enumeration");
                    }
                    let (a, b) = enumerate_brute(&oracle, brute_config(global))?;
                    (Some(a), Some(b))
                }
                EnumAlgo::Marco => {
                    let one = |k| enumerate_marco(&oracle, k, *limit, Algorithm::Deletion);
                    (
                        want_msp.then(|| one(FamilyKind::Msp)).transpose()?,
                        want_mbp.then(|| one(FamilyKind::Mbp)).transpose()?,
                    )
                }
            };
            match (kind, msps, mbps) {
                (EnumKind::Msp, Some(f), _) | (EnumKind::Mbp, _, Some(f)) => {
                    out.push_str(&format!("{}\n", render_family(&f)));
                }
                (EnumKind::Both, Some(msps), Some(mbps)) => {
                    out.push_str(&format!(
                        "{{\"msp\":{},\"mbp\":{}}}\n",
                        render_family(&msps),
                        render_family(&mbps)
                    ));
                    if limit.is_some() && matches!(algo, EnumAlgo::Marco) {
                        out.push_str("duality: skipped (truncated enumeration)\n");
                    } else {
                        duality_verdict(&msps, &mbps, out)?;
                    }
                }
                _ => unreachable!("requested families are always computed"),
            }
        }
        Command::Indices {
            input,
            index,
            method,
            precision,
            format,
        } => {
            let indices = IndexKind::parse_list(index).map_err(|e| anyhow!(e))?;
            let problem = load(input)?;
            let request = ReportRequest {
                indices,
                method: *method,
                brute: brute_config(global),
            };
            let report = compute_report(&problem.instance, problem.name.as_deref(), &request)?;
            out.push_str(&render_report(&report, *format, *precision));
        }
        Command::Sample {
            input,
            index,
            epsilon,
            delta,
            rng_seed,
            max_samples,
            precision,
            format,
        } => {
            let mut cfg = SampleConfig::new(*epsilon, *delta, *rng_seed);
            if max_samples.is_some() {
                cfg.max_samples = *max_samples;
            }
            cfg.workers = global.threads;
            cfg.validate()?;
            let problem = load(input)?;
            let oracle = problem.instance.oracle()?;
            let est = match index {
                SampledIndex::Shapley => sample_shapley(&oracle, &cfg)?,
                SampledIndex::BanzhafRaw => sample_banzhaf_raw_all(&oracle, &cfg)?,
            };
            out.push_str(&render_estimate(&est, *format, *precision));
        }
        Command::Check {
            input,
            monotone_trials,
            duality,
            rng_seed,
        } => {
            let problem = load(input)?;
            let oracle = problem.instance.oracle()?;
            let trials = monotone_trials.unwrap_or(if *duality { 0 } else { DEFAULT_MONOTONE_TRIALS });
            if trials > 0 || !*duality {
                if let Some(v) = find_monotone_violation(&oracle, trials, *rng_seed) {
                    return Err(property_failure(format!("monotonicity violated: {v}")));
                }
                out.push_str("monotone: ok\n");
            }
            if *duality {
                let (msps, mbps) = enumerate_brute(&oracle, brute_config(global))?;
                duality_verdict(&msps, &mbps, out)?;
            }
        }
    }
    Ok(())
}

fn serde_labels(s: Subset) -> String {
    let labels: Vec<String> = s.labels().iter().map(usize::to_string).collect();
    format!("[{}]", labels.join(","))
}

/// Appends `duality: ok`, or fails with the first set that breaks it.
fn duality_verdict(msps: &MinimalFamily, mbps: &MinimalFamily, out: &mut String) -> Result<(), Failure> {
    if check_duality(msps, mbps)? {
        out.push_str("duality: ok\n");
        return Ok(());
    }
    let expected = minimal_hitting_sets(msps)?;
    let witness = expected
        .members()
        .iter()
        .find(|s| !mbps.members().contains(s))
        .map(|s| format!("{s} is a minimal hitting set of the minimal sets but not a minimal break"))
        .or_else(|| {
            mbps.members()
                .iter()
                .find(|s| !expected.members().contains(s))
                .map(|s| format!("minimal break {s} is not a minimal hitting set of the minimal sets"))
        })
        .unwrap_or_else(|| "families are not mutually dual".into());
    Err(property_failure(format!("duality violated: {witness}")))
}
