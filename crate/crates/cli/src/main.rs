use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use dynhull::datagen::{generate, read_points, write_points, DistKind, Distribution};
use dynhull::{Point, Rational, Scalar};
use dynhull_cli::bench::{self, BenchConfig};
use dynhull_cli::verify::{parse_script, replay, Verdict};
use dynhull_cli::{CliError, Kernel, Mode, Preset, Row, Structure};

#[derive(Parser)]
#[command(name = "dynhull", version, about = "Dynamic convex hull workloads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a `.pts` file of distinct grid points.
    Generate(GenerateArgs),
    /// Time one workload and write CSV rows.
    Bench(BenchArgs),
    /// Replay an op script against the exact oracle.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Sizes {
    /// Divides every preset size, for desk-scale runs.
    #[arg(long, default_value_t = 1)]
    scale: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value = "uniform")]
    dist: DistKind,
    /// Point count. Defaults to the preset size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    sizes: Sizes,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long, value_enum)]
    structure: Structure,
    #[arg(long, value_enum, default_value_t = Kernel::Exact)]
    kernel: Kernel,
    /// Point file. Without it, points are generated from `--dist`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Distribution to generate, and the `dist` column. Defaults to the
    /// input file stem when `--input` is given.
    #[arg(long)]
    dist: Option<String>,
    /// Points to generate when there is no input file.
    #[arg(long)]
    n: Option<usize>,
    /// Batch size for the mode. Defaults to the scaled preset.
    #[arg(long)]
    batch: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV file, appended to if it exists. Stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    sizes: Sizes,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    structure: Structure,
    #[arg(long, value_enum, default_value_t = Kernel::Exact)]
    kernel: Kernel,
    /// Points loaded before the script runs.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    script: PathBuf,
}

fn read_input<S: Scalar>(path: &Path) -> Result<Vec<Point<S>>, CliError> {
    read_points(path).map_err(|source| CliError::Points { path: path.to_path_buf(), source })
}

fn cmd_generate(a: GenerateArgs) -> Result<()> {
    let n = a.n.unwrap_or(Preset::FULL.scaled(a.sizes.scale).points);
    let points = generate::<f64>(&Distribution::new(a.dist, a.seed), n);
    write_points(&a.out, &points).map_err(|source| CliError::Points { path: a.out.clone(), source })?;
    Ok(())
}

fn bench_points<S: Scalar + 'static>(a: &BenchArgs, preset: &Preset, cfg: &BenchConfig) -> Result<Vec<Row>> {
    let points = match &a.input {
        Some(path) => read_input::<S>(path)?,
        None => {
            let kind: DistKind = cfg.dist.parse()?;
            generate::<S>(&Distribution::new(kind, a.seed), a.n.unwrap_or(preset.points))
        }
    };
    Ok(bench::run(cfg, &points)?)
}

fn write_rows(out: Option<&Path>, rows: &[Row]) -> Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(path) => {
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
            Box::new(file)
        }
        None => Box::new(io::stdout().lock()),
    };
    let fresh = out.is_none_or(|p| fs::metadata(p).map(|m| m.len() == 0).unwrap_or(true));
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(sink);
    for row in rows {
        w.serialize(row)?;
    }
    if fresh && rows.is_empty() {
        w.write_record(dynhull_cli::CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<()> {
    let preset = Preset::FULL.scaled(a.sizes.scale);
    let dist = match (&a.dist, &a.input) {
        (Some(d), _) => d.clone(),
        (None, Some(path)) => path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned()),
        (None, None) => DistKind::Uniform.name().to_string(),
    };
    let cfg = BenchConfig {
        mode: a.mode,
        structure: a.structure,
        kernel: a.kernel,
        dist,
        batch: a.batch.unwrap_or(preset.batch(a.mode)),
        seed: a.seed,
    };
    let rows = match a.kernel {
        Kernel::Exact => bench_points::<Rational>(&a, &preset, &cfg)?,
        Kernel::Inexact => bench_points::<f64>(&a, &preset, &cfg)?,
    };
    write_rows(a.out.as_deref(), &rows)
}

fn verify_with<S: Scalar + 'static>(a: &VerifyArgs) -> Result<Verdict> {
    let text = fs::read_to_string(&a.script).map_err(|source| CliError::Io { path: a.script.clone(), source })?;
    let script = parse_script::<S>(&text, a.structure.is_rank()).with_context(|| a.script.display().to_string())?;
    let initial = match &a.input {
        Some(path) => read_input::<S>(path)?,
        None => Vec::new(),
    };
    Ok(replay(a.structure, &initial, &script)?)
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let verdict = match a.kernel {
        Kernel::Exact => verify_with::<Rational>(&a)?,
        Kernel::Inexact => verify_with::<f64>(&a)?,
    };
    println!("{verdict}");
    Ok(match verdict {
        Verdict::Pass { .. } => ExitCode::SUCCESS,
        Verdict::Fail { .. } => ExitCode::FAILURE,
    })
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Generate(a) => cmd_generate(a).map(|_| ExitCode::SUCCESS),
        Command::Bench(a) => cmd_bench(a).map(|_| ExitCode::SUCCESS),
        Command::Verify(a) => cmd_verify(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
