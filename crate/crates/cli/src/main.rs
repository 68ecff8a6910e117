mod jobs;
mod range;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nclab::closedform::RankVector;
use nclab::ncpart::BlockProfile;
use nclab::params::DEFAULT_MAX_OBJECTS;
use nclab::{Error, Params};
use rayon::prelude::*;
use serde_json::json;

use jobs::{CountBy, Job, Kind, Row, Suite, VariantArg, Which};
use range::Grid;

/// Enumerate, count and verify t-non-crossing partitions and their relatives.
#[derive(Debug, Parser)]
#[command(name = "nclab", version)]
struct Cli {
    /// Refuse jobs predicted to produce more objects than this.
    #[arg(
        long,
        global = true,
        env = "NC_LAB_MAX_OBJECTS",
        default_value_t = DEFAULT_MAX_OBJECTS,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    max_objects: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, Error> {
        Params::new(self.m, self.n, self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Task {
    Count,
    Chains,
    Triangle,
    Enumerate,
    Verify,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every object as one JSON line.
    Enumerate {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, value_enum, default_value = "nc")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "paper")]
        variant: VariantArg,
    },
    /// Compare closed counts with enumeration.
    Count {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, value_enum, default_value = "total")]
        by: CountBy,
    },
    /// Compare the multi-chain formula with a poset count.
    Chains {
        #[command(flatten)]
        p: ParamArgs,
        /// Full composition s_1,...,s_{l+1} of n - t.
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
        /// Block profile b_1,...,b_n of the bottom element.
        #[arg(long, value_delimiter = ',')]
        profile: Option<Vec<usize>>,
    },
    /// Print a triangle polynomial as JSON.
    Triangle {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value = "paper")]
        variant: VariantArg,
        /// Build the M-triangle from the poset instead of the closed form.
        #[arg(long)]
        brute: bool,
    },
    /// Run a verification suite over a parameter range.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Grid such as "m=1,n=2..6,t=1..n".
        #[arg(long)]
        range: Grid,
        #[arg(long, value_enum, default_value = "paper")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run any job over a parameter range, in parallel.
    Sweep {
        #[arg(long, value_enum)]
        task: Task,
        #[arg(long)]
        range: Grid,
        #[arg(long, value_enum, default_value = "total")]
        by: CountBy,
        /// Number of parts of the rank vectors for `chains`.
        #[arg(long, default_value_t = 2)]
        parts: usize,
        #[arg(long, value_enum, default_value = "h")]
        which: Which,
        #[arg(long, value_enum, default_value = "nc")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "identities")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "paper")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

/// Ways a run can end besides success.
enum Failure {
    Mismatch,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(msg) => {
                eprintln!("internal invariant failed: {msg}");
                Failure::Mismatch
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

fn emit(value: &serde_json::Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{value}")?;
    Ok(())
}

fn verdict(pass: bool) -> Result<(), Failure> {
    if pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn run_grid(job: &Job, params: &[Params], cap: u64, threads: usize) -> Result<Vec<Row>, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    // indexed collect keeps parameter order whatever the completion order
    let results: Vec<Result<Row, Error>> =
        pool.install(|| params.par_iter().map(|p| jobs::run_job(job, p, cap)).collect());
    results.into_iter().map(|r| r.map_err(Failure::from)).collect()
}

fn print_table(suite: &str, rows: &[Row], format: Format) -> Result<(), Failure> {
    let all_pass = rows.iter().all(|r| r.pass);
    match format {
        Format::Json => emit(&json!({ "suite": suite, "rows": rows, "all_pass": all_pass }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["m", "n", "t", "pass", "data"])
                .map_err(|e| Failure::Usage(e.to_string()))?;
            for r in rows {
                w.write_record([
                    r.params.m().to_string(),
                    r.params.n().to_string(),
                    r.params.t().to_string(),
                    r.pass.to_string(),
                    r.data.to_string(),
                ])
                .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    verdict(all_pass)
}

/// The path model has no `m`; its suite runs once per `(n, t)` with `m = 1`.
fn bijection_params(params: Vec<Params>) -> Vec<Params> {
    let mut out: Vec<Params> = params
        .into_iter()
        .filter_map(|p| Params::new(1, p.n(), p.t()).ok())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cap = cli.max_objects;
    match cli.command {
        Command::Enumerate { p, kind, variant } => {
            let p = p.params()?;
            let mut out = io::stdout().lock();
            for obj in jobs::enumerate(&p, kind, variant.into(), cap)? {
                writeln!(out, "{obj}")?;
            }
            Ok(())
        }
        Command::Count { p, by } => {
            let row = jobs::count(&p.params()?, by, cap)?;
            emit(&serde_json::to_value(&row).expect("rows serialise"))?;
            verdict(row.pass)
        }
        Command::Chains { p, ranks, profile } => {
            let p = p.params()?;
            let ranks = RankVector::new(ranks)?;
            let profile = profile.map(BlockProfile::new);
            let row = jobs::chains(&p, &ranks, profile.as_ref(), cap)?;
            emit(&serde_json::to_value(&row).expect("rows serialise"))?;
            verdict(row.pass)
        }
        Command::Triangle {
            p,
            which,
            variant,
            brute,
        } => {
            let poly = jobs::triangle(&p.params()?, which, variant.into(), brute, cap)?;
            emit(&serde_json::to_value(&poly).expect("polynomials serialise"))
        }
        Command::Verify {
            suite,
            range,
            variant,
            format,
        } => {
            let mut params = range.params();
            if suite == Suite::Bijection {
                params = bijection_params(params);
            }
            if params.is_empty() {
                return Err(Failure::Usage("the range contains no valid (m, n, t)".into()));
            }
            let rows = run_grid(&Job::Verify(suite, variant.into()), &params, cap, 1)?;
            let name = serde_json::to_value(suite).expect("suite names serialise");
            print_table(name.as_str().unwrap_or("verify"), &rows, format)
        }
        Command::Sweep {
            task,
            range,
            by,
            parts,
            which,
            kind,
            suite,
            variant,
            format,
            jobs,
        } => {
            let variant = variant.into();
            let job = match task {
                Task::Count => Job::Count(by),
                Task::Chains => Job::Chains(parts),
                Task::Triangle => Job::Triangle(which, variant),
                Task::Enumerate => Job::Enumerate(kind, variant),
                Task::Verify => Job::Verify(suite, variant),
            };
            let mut params = range.params();
            if matches!(job, Job::Verify(Suite::Bijection, _)) {
                params = bijection_params(params);
            }
            if params.is_empty() {
                return Err(Failure::Usage("the range contains no valid (m, n, t)".into()));
            }
            let rows = run_grid(&job, &params, cap, jobs)?;
            let name = format!("{task:?}").to_lowercase();
            print_table(&name, &rows, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
