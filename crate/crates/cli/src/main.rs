//! `hyperarr`: exact discriminantal-arrangement computations from the command line.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperarr::arrangement::{parse_arrangement, Arrangement};
use hyperarr::crosscheck::cross_check;
use hyperarr::generator::{generate, GeneratorConfig, Kind};
use hyperarr::grassmannian::{check_plucker_relations, plucker_coords, quadric_scan, quadric_scan_support};
use hyperarr::partitions::{candidate_partitions, evaluate};
use hyperarr::strata_census;
use serde_json::{json, Value};

use render::Format;

#[derive(Debug, Parser)]
#[command(name = "hyperarr", version, about = "Exact computations on discriminantal arrangements")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "HYPERARR_THREADS", default_value_t = 0)]
    threads: usize,

    /// Run the redundant cross-checks on the arrangement and fail on any disagreement.
    #[arg(long, global = true)]
    verify: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that every k normals are linearly independent.
    CheckGeneric {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Print the Plücker coordinates of the normal matrix.
    Plucker {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Census of codimension-2 strata of the discriminantal arrangement.
    Strata {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Evaluate every candidate good partition.
    Partitions {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        dependent_only: bool,
    },
    /// Evaluate the k = 3 quadrics on every 6-subset (or one).
    Quadric {
        #[arg(short, long)]
        input: PathBuf,
        /// Six 1-based indices.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        support: Option<Vec<usize>>,
    },
    /// Write a generic test arrangement.
    Generate {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Integer entries are drawn from [-bound, bound].
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
}

/// A failure with its exit status: 1 for domain-negative answers, 2 for usage and I/O.
#[derive(Debug)]
struct Failure {
    status: u8,
    message: String,
    payload: Option<Value>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { status: 2, message: message.into(), payload: None }
    }

    fn negative(message: impl Into<String>) -> Self {
        Self { status: 1, message: message.into(), payload: None }
    }
}

impl From<hyperarr::Error> for Failure {
    fn from(e: hyperarr::Error) -> Self {
        use hyperarr::Error::*;
        match e {
            NotGeneric { .. } | Domain(_) | Generation(_) => Self::negative(e.to_string()),
            Parse { .. } | Dimension(_) | Shape(_) => Self::usage(e.to_string()),
        }
    }
}

struct Output {
    json: Value,
    table: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("hyperarr: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            print!("{}", format.emit(&out.json, &out.table));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("hyperarr: {}", f.message);
            if let (Format::Json, Some(payload)) = (format, &f.payload) {
                print!("{}", format.emit(payload, ""));
            }
            ExitCode::from(f.status)
        }
    }
}

fn read_arrangement(path: &Path) -> Result<Arrangement, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_arrangement(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn verify(a: &Arrangement) -> Result<(), Failure> {
    let report = cross_check(a)?;
    if report.passed() {
        return Ok(());
    }
    Err(Failure::negative(format!("cross-check failed:\n  {}", report.disagreements.join("\n  "))))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::CheckGeneric { input } => {
            let a = read_arrangement(input)?;
            if let Some(subset) = a.first_degenerate_subset() {
                let one_based: Vec<usize> = subset.iter().map(|i| i + 1).collect();
                let payload =
                    json!({"n": a.n(), "k": a.k(), "generic": false, "dependent_subset": one_based});
                let err = hyperarr::Error::NotGeneric { subset: subset.to_vec() };
                return Err(Failure { payload: Some(payload), ..Failure::from(err) });
            }
            if cli.verify {
                verify(&a)?;
            }
            Ok(Output {
                json: json!({"n": a.n(), "k": a.k(), "generic": true}),
                table: format!("generic: {} hyperplanes in dimension {}\n", a.n(), a.k()),
            })
        }
        Command::Plucker { input } => {
            let a = read_arrangement(input)?;
            if cli.verify {
                verify(&a)?;
            }
            let table = plucker_coords(&a);
            let relations = check_plucker_relations(&table);
            Ok(Output {
                json: render::plucker_json(&table, &relations),
                table: render::plucker_table(&table, &relations),
            })
        }
        Command::Strata { input } => {
            let a = read_arrangement(input)?;
            a.require_generic()?;
            if cli.verify {
                verify(&a)?;
            }
            let report = strata_census(&a)?.report();
            Ok(Output { json: to_value(&report), table: render::census_table(&report) })
        }
        Command::Partitions { input, dependent_only } => {
            let a = read_arrangement(input)?;
            a.require_generic()?;
            if cli.verify {
                verify(&a)?;
            }
            let candidates = candidate_partitions(a.n(), a.k());
            let evals = {
                use rayon::prelude::*;
                candidates.par_iter().map(|p| evaluate(&a, p)).collect::<Result<Vec<_>, _>>()?
            };
            let checked = evals.len();
            let shown: Vec<_> = evals.into_iter().filter(|e| !dependent_only || e.dependent()).collect();
            Ok(Output {
                json: render::partitions_json(&a, &shown, checked),
                table: render::partitions_table(&shown, checked),
            })
        }
        Command::Quadric { input, support } => {
            let a = read_arrangement(input)?;
            a.require_generic()?;
            if cli.verify {
                verify(&a)?;
            }
            let report = match support {
                None => quadric_scan(&a)?,
                Some(one_based) => {
                    if one_based.len() != 6 || one_based.iter().any(|&i| i == 0 || i > a.n()) {
                        return Err(Failure::usage(format!(
                            "--support needs six indices between 1 and {}",
                            a.n()
                        )));
                    }
                    let support: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
                    quadric_scan_support(&a, &support)?
                }
            };
            let doc = report.to_doc();
            Ok(Output { json: to_value(&doc), table: render::quadric_table(&doc) })
        }
        Command::Generate { kind, n, k, seed, output, bound } => {
            let cfg = GeneratorConfig { bound: *bound, ..GeneratorConfig::new(*kind, *n, *k, *seed) };
            let generated = generate(&cfg)?;
            if cli.verify {
                verify(&generated.arrangement)?;
            }
            let doc = generated.to_json();
            match output {
                None => Ok(Output { table: render::pretty(&doc), json: doc }),
                Some(path) => {
                    fs::write(path, render::pretty(&doc))
                        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
                    Ok(Output {
                        json: json!({"output": path.display().to_string(), "kind": kind.to_string(), "n": n, "k": k, "seed": seed}),
                        table: format!("wrote {} ({kind}, n = {n}, k = {k}, seed {seed})\n", path.display()),
                    })
                }
            }
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}
