use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use pgl_core::bench::{run_scaling, BenchConfig};
use pgl_core::eigenspace::{enumerate_ground_configurations, ground_state_vector};
use pgl_core::fock::{decompose_eigenspace, fib_binet_test, fib_brute_force};
use pgl_core::format::load_instance;
use pgl_core::thermo::beta_sweep;
use pgl_core::{generate_instance, solve, Error, ErrorKind, Instance, Parallelism, SolverBudget, SolverConfig, SolverKind};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_REFUSAL: u8 = 4;
const EXIT_BUDGET: u8 = 5;

/// Number partitioning, ground-state and Fibonacci Fock-state toolkit.
#[derive(Parser, Debug)]
#[command(name = "pgl", version)]
struct Cli {
    /// Run every computation on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find an optimal (or, for kk, heuristic) two-way partition.
    Solve {
        #[command(flatten)]
        source: InstanceSource,
        /// brute, hs, ss, kk or ckk.
        #[arg(long, default_value = "ckk")]
        solver: String,
        /// Node budget for ckk and ss.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Wall-clock budget in seconds for ckk and ss.
        #[arg(long)]
        max_seconds: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// List the minimum-energy spin configurations and their uniform superposition.
    Eigenspace {
        #[command(flatten)]
        source: InstanceSource,
        /// Maximum number of configurations to list.
        #[arg(long, default_value_t = 4096)]
        limit: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Boltzmann ensemble averages over a sweep of inverse temperatures (CSV).
    Thermo {
        #[command(flatten)]
        source: InstanceSource,
        /// Comma-separated, strictly ascending.
        #[arg(long, value_delimiter = ',', required = true)]
        betas: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Zero-energy Fock states for a total particle number, split into Fibonacci and other states.
    Fock {
        #[arg(long)]
        total: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether a number is a Fibonacci number.
    Fib {
        /// Decimal integer of any length.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[command(flatten)]
        out: Output,
    },
    /// Time solvers over growing N and fit growth exponents.
    Bench {
        /// Comma-separated solver names.
        #[arg(long, value_delimiter = ',', default_value = "brute,hs,ss")]
        solver: Vec<String>,
        /// Comma-separated, strictly ascending instance sizes.
        #[arg(long, value_delimiter = ',', default_value = "16,18,20,22")]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 48)]
        bits: u32,
        /// Seeds per size.
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Seconds per run before a solver is dropped.
        #[arg(long, default_value_t = 60.0)]
        time_cap: f64,
        /// Timed runs per cell; the fastest is kept.
        #[arg(long, default_value_t = 1)]
        repeats: u32,
        /// Run independent cells concurrently.
        #[arg(long)]
        parallel_cells: bool,
        /// Where to write the fit summary (default standard error).
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct InstanceSource {
    /// Instance file, text or JSON; `-` reads standard input.
    #[arg(long, conflicts_with = "n")]
    input: Option<PathBuf>,
    /// Generate a random instance of this size instead.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 48)]
    bits: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct Output {
    /// Output file (default standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

type Outcome = Result<ExitCode, Failure>;

impl InstanceSource {
    fn load(&self) -> Result<Instance, Failure> {
        match (&self.input, self.n) {
            (Some(p), _) if p == Path::new("-") => Ok(load_instance(io::stdin().lock())?),
            (Some(p), _) => {
                let file = File::open(p).map_err(|e| Error::Input(format!("cannot open {}: {e}", p.display())))?;
                Ok(load_instance(io::BufReader::new(file))?)
            }
            (None, Some(n)) => Ok(generate_instance(n, self.bits, self.seed)?),
            (None, None) => Err(Failure::Usage("give --input PATH or --n INT".into())),
        }
    }
}

impl Output {
    fn write(&self, text: &str) -> io::Result<()> {
        write_to(self.out.as_deref(), text)
    }

    fn write_json(&self, doc: &Value) -> io::Result<()> {
        let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
        text.push('\n');
        self.write(&text)
    }
}

fn write_to(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn solver_config(sequential: bool) -> Result<SolverConfig, Failure> {
    let mut config = SolverConfig::default();
    if sequential {
        config.parallelism = Parallelism::Sequential;
    }
    if let Ok(v) = std::env::var("PGL_BRUTE_CAP") {
        config.brute_cap = v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("PGL_BRUTE_CAP must be a non-negative integer, got {v:?}")))?;
    }
    Ok(config)
}

fn run(cli: Cli) -> Outcome {
    let config = solver_config(cli.sequential)?;
    match cli.command {
        Command::Solve { source, solver, max_nodes, max_seconds, out } => {
            let kind = SolverKind::from_str(&solver)?;
            let instance = source.load()?;
            let budget = SolverBudget { max_nodes, max_seconds };
            let result = solve(kind, &instance, &config, budget)?;
            out.write_json(&result.to_document())?;
            if kind == SolverKind::CompleteKarmarkarKarp && !result.exact {
                eprintln!("pgl: search budget exhausted; reported partition is the best found, not proven optimal");
                return Ok(ExitCode::from(EXIT_BUDGET));
            }
        }
        Command::Eigenspace { source, limit, out } => {
            let instance = source.load()?;
            let space = enumerate_ground_configurations(&instance, limit, &config)?;
            let state = match ground_state_vector(&space) {
                Ok(s) => Some(s),
                Err(e) => {
                    log::warn!("{e}");
                    None
                }
            };
            out.write_json(&space.to_document(state.as_ref()))?;
        }
        Command::Thermo { source, betas, out } => {
            let instance = source.load()?;
            let sweep = beta_sweep(&instance, &betas, &config)?;
            out.write(&sweep.to_csv())?;
        }
        Command::Fock { total, out } => {
            out.write_json(&decompose_eigenspace(total).to_document())?;
        }
        Command::Fib { n, out } => {
            let value = BigUint::from_str(n.trim())
                .map_err(|_| Error::Input(format!("--n must be a non-negative decimal integer, got {n:?}")))?;
            out.write_json(&fib_document(&value)?)?;
        }
        Command::Bench { solver, ns, bits, seeds, seed, time_cap, repeats, parallel_cells, summary, out } => {
            let solvers = solver.iter().map(|s| SolverKind::from_str(s)).collect::<Result<Vec<_>, _>>()?;
            let bench = BenchConfig {
                solvers,
                n_values: ns,
                bits,
                seeds_per_n: seeds,
                first_seed: seed,
                time_cap,
                repeats,
                parallel_cells,
            };
            let report = run_scaling(&bench, &config)?;
            out.write(&report.to_csv())?;
            let mut text = serde_json::to_string_pretty(&report.fit_summary()).expect("documents serialize");
            text.push('\n');
            match summary {
                Some(p) => write_to(Some(&p), &text)?,
                None => eprint!("{text}"),
            }
            for row in report.consensus_violations() {
                log::error!("{} disagrees with the consensus at n={} seed={}", row.solver, row.n, row.seed);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn fib_document(n: &BigUint) -> Result<Value, Error> {
    let brute = fib_brute_force(n);
    let verdict = |is_fib: bool| if is_fib { "fibonacci" } else { "not fibonacci" };
    if n == &BigUint::ZERO {
        return Ok(json!({
            "n": n.to_string(),
            "is_fibonacci": brute.is_fibonacci,
            "verdict": verdict(brute.is_fibonacci),
            "method": "brute_force",
            "index": brute.index,
            "convergent": null,
        }));
    }
    let v = fib_binet_test(n)?;
    Ok(json!({
        "n": n.to_string(),
        "is_fibonacci": v.is_fibonacci,
        "verdict": verdict(v.is_fibonacci),
        "method": "binet",
        "index": brute.index,
        "convergent": {
            "index": v.convergent.index,
            "p": v.convergent.p.to_string(),
            "q": v.convergent.q.to_string(),
        },
        "floor_upper": v.floor_upper.to_string(),
        "ceil_lower": v.ceil_lower.to_string(),
    }))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("pgl: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("pgl: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Validation => EXIT_VALIDATION,
                ErrorKind::Refusal => EXIT_REFUSAL,
                ErrorKind::Budget => EXIT_BUDGET,
            })
        }
    }
}
