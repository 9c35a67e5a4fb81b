use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relcan::batch::{run_batch, GridConfig};
use relcan::check::revalidate;
use relcan::error::HarnessError;
use relcan::pipeline::{run_pipeline_full, PipelineOptions, PipelineRun};
use relcan::record::{read_jsonl, Stage, Status};
use relcan::report::ConjectureReport;
use relcan::tables::{export, Format};
use relcan_core::curvegen::DEFAULT_ATTEMPTS;
use relcan_core::relres::{render_betti, SplittingType};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "relcan", version, about = "Relative canonical resolutions of random k-gonal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a random nodal canonical curve and its scroll-adapted basis.
    Construct(CurveArgs),
    /// Run the full pipeline and print the Betti table and splitting types.
    Resolve(ResolveArgs),
    /// Run a seeded (g, k, p) grid and write sorted JSONL.
    Batch {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Re-validate the invariants of every record in a JSONL file.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Tally conjecture outcomes into a Markdown report.
    Conjectures {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the most frequent Betti table per (g, k).
    Tables {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    genus: u64,
    #[arg(long)]
    gonality: u64,
    #[arg(long = "char", default_value_t = 10007)]
    characteristic: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
    attempts: usize,
    /// Write the result as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Extra twists on both sides of every resolution window.
    #[arg(long, default_value_t = 0)]
    extra_window: i64,
    /// Also verify the scroll kernel, the factorization and the preimage.
    #[arg(long)]
    groebner_checks: bool,
    /// Store per-stage timings in the record.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ConstructOutput<'a> {
    record: &'a relcan::ExperimentRecord,
    scroll_matrix: Option<[Vec<usize>; 2]>,
    quadrics: Vec<String>,
    cubics: Vec<String>,
}

enum Failure {
    Usage(String),
    Math(String),
    Harness(HarnessError),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure::Harness(e)
    }
}

fn status_failure(run: &PipelineRun) -> Result<(), Failure> {
    match &run.record.status {
        Status::Failed { stage: Stage::Spec, reason } => Err(Failure::Usage(reason.clone())),
        Status::Failed { stage, reason } => Err(Failure::Math(format!("{stage:?} stage failed: {reason}"))),
        _ => Ok(()),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| HarnessError::io(path, e).into())
}

fn print_header(run: &PipelineRun) {
    let r = &run.record;
    println!("curve g = {}, k = {}, p = {}, seed = {}", r.g, r.k, r.p, r.seed);
    if let Status::Retried { retries } = r.status {
        println!("construction retried {retries} time(s)");
    }
    if let Some(h) = r.hilbert {
        println!("hilbert: dim {}, degree {}, genus {}", h.dim, h.degree, h.genus);
    }
    println!("generators: {} quadrics, {} cubics", r.quadric_count, r.cubic_count);
    if !r.scroll_type.is_empty() {
        println!("scroll type: {:?}", r.scroll_type);
    }
}

fn construct(a: &CurveArgs) -> Result<(), Failure> {
    let opts = PipelineOptions {
        attempts: a.attempts,
        ..Default::default()
    };
    let run = run_pipeline_full(a.genus, a.gonality, a.characteristic, a.seed, &opts, true);
    status_failure(&run)?;
    print_header(&run);
    let model = run.model.as_ref().expect("successful construction has a model");
    let matrix = model.basis.normalized.as_ref().map(|b| b.scroll_matrix());
    if let Some(m) = &matrix {
        println!("scroll matrix (coordinate indices): {:?} / {:?}", m[0], m[1]);
    }
    if let Some(path) = &a.json {
        write_json(
            path,
            &ConstructOutput {
                record: &run.record,
                scroll_matrix: matrix,
                quadrics: model.canonical.quadrics.iter().map(|q| q.to_string()).collect(),
                cubics: model.canonical.cubics.iter().map(|q| q.to_string()).collect(),
            },
        )?;
    }
    Ok(())
}

fn resolve(a: &ResolveArgs) -> Result<(), Failure> {
    let opts = PipelineOptions {
        attempts: a.curve.attempts,
        extra_window: a.extra_window,
        groebner_checks: a.groebner_checks,
        record_timings: a.timings,
    };
    let c = &a.curve;
    let run = run_pipeline_full(c.genus, c.gonality, c.characteristic, c.seed, &opts, false);
    if let Some(path) = &c.json {
        write_json(path, &run.record)?;
    }
    status_failure(&run)?;
    print_header(&run);
    let res = run.resolution.as_ref().expect("successful run has a resolution");
    println!();
    print!("{}", render_betti(res).render());
    println!();
    for (i, t) in run.record.splitting_types.iter().enumerate() {
        let s = SplittingType::new(i + 1, t);
        let flag = if s.is_balanced() { "balanced" } else { "unbalanced" };
        println!("N_{} = {} (rank {}, degree {}, {flag})", i + 1, s.compact(), s.rank(), s.degree());
    }
    let checks = serde_json::to_value(&run.record.checks).expect("serializable");
    println!("\nchecks: {checks}");
    let conj = serde_json::to_value(&run.record.conjecture_checks).expect("serializable");
    println!("conjectures: {conj}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct(a) => construct(&a),
        Command::Resolve(a) => resolve(&a),
        Command::Batch { config, out, threads } => {
            if threads == Some(0) {
                return Err(Failure::Usage("--threads must be positive".into()));
            }
            let cfg = GridConfig::load(&config)?;
            let summary = run_batch(&cfg, &out, threads)?;
            print!("{}", summary.render());
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Check { input } => {
            let records = read_jsonl(&input)?;
            let mut bad = 0;
            for (n, r) in records.iter().enumerate() {
                let problems = revalidate(r);
                if !problems.is_empty() {
                    bad += 1;
                    println!("record {} (g={} k={} p={} seed={}): {}", n + 1, r.g, r.k, r.p, r.seed, problems.join("; "));
                }
            }
            let ok = records.iter().filter(|r| r.status.is_success()).count();
            println!("checked {} records ({ok} successful): {bad} with problems", records.len());
            if bad > 0 {
                return Err(Failure::Math(format!("{bad} record(s) failed re-validation")));
            }
            Ok(())
        }
        Command::Conjectures { input, out } => {
            let records = read_jsonl(&input)?;
            let report = ConjectureReport::from_records(&records);
            std::fs::write(&out, report.render_markdown()).map_err(|e| HarnessError::io(&out, e))?;
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Tables { input, format, out } => {
            let records = read_jsonl(&input)?;
            let format = match format {
                TableFormat::Md => Format::Markdown,
                TableFormat::Csv => Format::Csv,
            };
            for path in export(&records, format, &out)? {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Harness(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
