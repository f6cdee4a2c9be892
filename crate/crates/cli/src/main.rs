//! `sssp-bench`: generate DIMACS instances, solve them with any of the
//! algorithms, cross-check against the oracles, and run the table suites.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use lizard_sssp::bench::{run_algo, run_suite, verify_instance, Algo, InstanceInfo, Suite};
use lizard_sssp::dimacs::{load_dimacs, save_dimacs};
use lizard_sssp::generators::{default_degree, Family, GenError, GenSpec};
use lizard_sssp::{
    Distance, GraphError, NodeId, OriginMode, ReapMode, SolveError, SolveOptions, UNSET,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("--{flag} is required for the {family} family")]
    MissingFlag {
        flag: &'static str,
        family: &'static str,
    },
    #[error("source {id} is out of range 1..={n}")]
    BadSource { id: u32, n: usize },
    #[error("serialization failed: {0}")]
    Encode(String),
    #[error("{failed} of {total} checks failed")]
    Verify { failed: usize, total: usize },
}

#[derive(Parser)]
#[command(name = "sssp-bench", version, about)]
struct Cli {
    /// Seed for instance generation.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Suite rows run concurrently.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output format for metrics, dumps and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it as a DIMACS .gr file.
    Gen(GenArgs),
    /// Solve one instance and report its counters.
    Solve(SolveArgs),
    /// Cross-check the solver against every oracle. Exits 1 on any mismatch.
    Verify(VerifyArgs),
    /// Run a benchmark suite and emit the table rows.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Complete,
    Random,
    Grid,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: Option<usize>,
    /// Out-degree of the random family; defaults to ceil(log2 n).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long, default_value_t = 1)]
    wmin: u32,
    #[arg(long, default_value_t = 1000)]
    wmax: u32,
    /// Destination file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Ca,
    Hdm,
    Dijkstra,
    Bf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReapArg {
    Repeat,
    Cut,
}

#[derive(Clone, Copy, ValueEnum)]
enum OriginsArg {
    Full,
    Inline,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgoArg::Ca)]
    algo: AlgoArg,
    /// Source node, 1-based as in the .gr file.
    #[arg(long, default_value_t = 1)]
    source: u32,
    #[arg(long, value_enum, default_value_t = ReapArg::Repeat)]
    reap: ReapArg,
    #[arg(long, value_enum, default_value_t = OriginsArg::Full)]
    origins: OriginsArg,
    /// Metrics destination; stdout when absent.
    #[arg(long)]
    metrics: Option<PathBuf>,
    /// Also write the distance vector here.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    source: u32,
    /// Perturb one solver label before checking.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    PaperFull,
    Desk,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Desk)]
    suite: SuiteArg,
    /// Report destination; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })
}

/// Writes `bytes` to `path`, or stdout when there is none.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    let res = match path {
        Some(p) => create(p)?.write_all(bytes),
        None => io::stdout().lock().write_all(bytes),
    };
    res.map_err(|source| CliError::Io {
        path: path.map_or_else(|| "<stdout>".into(), Path::to_owned),
        source,
    })
}

fn load(path: &Path) -> Result<lizard_sssp::Graph, CliError> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    load_dimacs(BufReader::new(file)).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn source_id(source: u32, n: usize) -> Result<NodeId, CliError> {
    if source == 0 || source as usize > n {
        return Err(CliError::BadSource { id: source, n });
    }
    Ok(NodeId(source - 1))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| CliError::Encode(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<(), CliError> {
    let need = |v: Option<usize>, flag, family| v.ok_or(CliError::MissingFlag { flag, family });
    let family = match args.family {
        FamilyArg::Complete => Family::Complete {
            n: need(args.n, "n", "complete")?,
        },
        FamilyArg::Random => {
            let n = need(args.n, "n", "random")?;
            Family::Random {
                n,
                m: args.m.unwrap_or_else(|| default_degree(n)),
            }
        }
        FamilyArg::Grid => Family::Grid {
            rows: need(args.rows, "rows", "grid")?,
            cols: need(args.cols, "cols", "grid")?,
        },
    };
    let spec = GenSpec::with_family(family, cli.seed).weights(args.wmin, args.wmax);
    let g = spec.generate()?;
    let mut buf = Vec::new();
    save_dimacs(&g, &mut buf).expect("writing to memory");
    emit(args.output.as_deref(), &buf)?;
    eprintln!(
        "n={} E={} seed={}",
        g.node_count(),
        g.arc_count(),
        spec.seed
    );
    Ok(())
}

fn dump_distances(path: &Path, format: Format, w: &[Distance]) -> Result<(), CliError> {
    let bytes = match format {
        Format::Json => {
            let vals: Vec<Option<Distance>> =
                w.iter().map(|&d| (d != UNSET).then_some(d)).collect();
            to_json(&vals)?
        }
        Format::Csv => {
            let mut s = String::from("node,distance\n");
            for (v, &d) in w.iter().enumerate() {
                match d {
                    UNSET => s += &format!("{},\n", v + 1),
                    d => s += &format!("{},{d}\n", v + 1),
                }
            }
            s.into_bytes()
        }
    };
    emit(Some(path), &bytes)
}

fn cmd_solve(cli: &Cli, args: &SolveArgs) -> Result<(), CliError> {
    let g = load(&args.input)?;
    let source = source_id(args.source, g.node_count())?;
    let opts = SolveOptions::from_source(source)
        .reap(match args.reap {
            ReapArg::Repeat => ReapMode::RepeatDelete,
            ReapArg::Cut => ReapMode::CutAgency,
        })
        .origins(match args.origins {
            OriginsArg::Full => OriginMode::FullScan,
            OriginsArg::Inline => OriginMode::InlineSeeking,
        });
    let algo = match args.algo {
        AlgoArg::Ca => Algo::Ca,
        AlgoArg::Hdm => Algo::Hdm,
        AlgoArg::Dijkstra => Algo::Dijkstra,
        AlgoArg::Bf => Algo::BellmanFord,
    };
    let name = args
        .input
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let run = run_algo(&g, &InstanceInfo::file(&name), algo, opts)?;

    let bytes = match cli.format {
        Format::Json => to_json(&run.record)?,
        Format::Csv => record_csv(&run.record)?,
    };
    emit(args.metrics.as_deref(), &bytes)?;
    if let Some(path) = &args.dump {
        dump_distances(path, cli.format, &run.distances)?;
    }
    Ok(())
}

fn record_csv(record: &lizard_sssp::bench::MetricsRecord) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(record)
        .map_err(|e| CliError::Encode(e.to_string()))?;
    w.into_inner().map_err(|e| CliError::Encode(e.to_string()))
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let g = load(&args.input)?;
    let source = source_id(args.source, g.node_count())?;
    let checks = verify_instance(&g, source, args.inject_fault)?;
    for c in &checks {
        println!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::Verify {
            failed,
            total: checks.len(),
        });
    }
    Ok(())
}

fn cmd_bench(cli: &Cli, args: &BenchArgs) -> Result<(), CliError> {
    let suite = match args.suite {
        SuiteArg::PaperFull => Suite::PaperFull,
        SuiteArg::Desk => Suite::Desk,
    };
    let report = run_suite(suite, cli.seed, cli.jobs);
    for row in &report.tables {
        match &row.error {
            Some(e) => eprintln!("{:<5} error: {e}", row.instance),
            None => eprintln!(
                "{:<5} n={} E={} D={} Q_S/Q_A={:.2}% lambda={:.3} D'={:.2}% C'={:.2}% T'={:.2}% checksums_equal={}",
                row.instance,
                row.n,
                row.E,
                row.D,
                row.Q_S_pct,
                row.lambda,
                row.D_prime,
                row.C_prime,
                row.T_prime,
                row.checksums_equal
            ),
        }
    }
    let bytes = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Csv => report
            .to_csv()
            .map_err(|e| CliError::Encode(e.to_string()))?
            .into_bytes(),
    };
    emit(args.output.as_deref(), &bytes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Gen(a) => cmd_gen(&cli, a),
        Command::Solve(a) => cmd_solve(&cli, a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(&cli, a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
