mod input;
mod svg;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sweepcount_core::geom::{validate_point_set, PointSet, Segment, SweepIndex};
use sweepcount_core::oracle::{enumerate, OracleError};
use sweepcount_core::sampler::{sample_with, system_for, SampleOptions, SamplerError};
use sweepcount_core::sweep::{run_sweep_with, SweepError, SweepOptions};
use sweepcount_core::{analysis, Family};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Resource(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Resource(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::InternalInvariantViolation(_) => CliError::Internal(e.to_string()),
            SweepError::PathBudgetExceeded { .. } | SweepError::MemoryBudgetExceeded { .. } => CliError::Resource(e.to_string()),
        }
    }
}

impl From<SamplerError> for CliError {
    fn from(e: SamplerError) -> Self {
        match e {
            SamplerError::Sweep(s) => s.into(),
            SamplerError::IncompatibleTuple(_) | SamplerError::InternalInvariantViolation(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } | OracleError::CapExceeded { .. } => CliError::Resource(e.to_string()),
            OracleError::InternalInvariantViolation(_) => CliError::Internal(e.to_string()),
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Internal(format!("write failed: {e}"))
}

#[derive(Parser)]
#[command(name = "sweepcount", version, about = "Exact counting and uniform sampling of triangulations and pointed pseudo-triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Tri,
    Pt,
}

impl From<Structure> for Family {
    fn from(s: Structure) -> Family {
        match s {
            Structure::Tri => Family::Tri,
            Structure::Pt => Family::Pt,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Json,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleFormat {
    Json,
    SvgDir,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact number of structures.
    Count {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "tri")]
        structure: Structure,
        /// Write sweep statistics as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Refuse when a sweep line holds more paths than this.
        #[arg(long)]
        max_paths: Option<usize>,
    },
    /// List every structure by brute force.
    Enumerate {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "tri")]
        structure: Structure,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: ListFormat,
    },
    /// Draw uniform random structures.
    Sample {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "tri")]
        structure: Structure,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: SampleFormat,
        /// Output file for json, directory for svg-dir.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Refuse when the recorded tables would hold more paths than this.
        #[arg(long, default_value_t = 20_000_000)]
        max_recorded_paths: usize,
    },
    /// Print k, f_k, g_k of the path-count bound recurrence.
    Sequence {
        #[arg(long)]
        k: usize,
    },
    /// Draw a point set with an optional structure, path and sweep line.
    Render {
        input: PathBuf,
        /// JSON array of [a, b] vertex pairs.
        #[arg(long)]
        structure_file: Option<PathBuf>,
        /// JSON array of vertex indices.
        #[arg(long)]
        path_file: Option<PathBuf>,
        /// Sweep line index, from 1 to n - 1.
        #[arg(long)]
        line: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        width: u32,
    },
}

fn load(path: &Path) -> Result<PointSet, CliError> {
    let raw = input::parse_points(&input::read_file(path)?)?;
    validate_point_set(&raw).map_err(|e| CliError::Input(format!("invalid point set: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(io_err),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn pairs(edges: &[Segment]) -> Vec<[usize; 2]> {
    edges.iter().map(|e| [e.a, e.b]).collect()
}

#[derive(Serialize)]
struct StatsJson {
    n: usize,
    family: String,
    count: String,
    t_per_line: Vec<usize>,
    t_max: usize,
    elapsed_ms: u64,
}

fn count(input: &Path, family: Family, stats: Option<&Path>, threads: usize, max_paths: Option<usize>) -> Result<(), CliError> {
    let ps = load(input)?;
    let started = Instant::now();
    let opts = SweepOptions { threads: threads.max(1), max_paths_per_line: max_paths, ..SweepOptions::default() };
    let out = run_sweep_with(system_for(family), &ps, &opts)?;
    let elapsed = started.elapsed();
    if let Some(path) = stats {
        let r = analysis::report(&out.stats, &ps, family, &out.count);
        let doc = StatsJson {
            n: r.n,
            family: family.to_string(),
            count: r.count.to_string(),
            t_per_line: r.t_per_line,
            t_max: r.t_max,
            elapsed_ms: elapsed.as_millis() as u64,
        };
        let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(io_err)?;
    }
    emit(None, &format!("{}\n", out.count))
}

fn render_structures(structures: &[Vec<Segment>], format: ListFormat) -> Result<String, CliError> {
    Ok(match format {
        ListFormat::Json => {
            let doc: Vec<Vec<[usize; 2]>> = structures.iter().map(|s| pairs(s)).collect();
            serde_json::to_string(&doc).map_err(|e| CliError::Internal(e.to_string()))? + "\n"
        }
        ListFormat::Edges => structures
            .iter()
            .map(|s| s.iter().map(|e| format!("{}-{}", e.a, e.b)).collect::<Vec<_>>().join(" ") + "\n")
            .collect(),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Count { input, structure, stats, threads, max_paths } => count(&input, structure.into(), stats.as_deref(), threads, max_paths),
        Command::Enumerate { input, structure, cap, format } => {
            let ps = load(&input)?;
            let res = enumerate(&ps, structure.into(), cap)?;
            emit(None, &render_structures(&res.structures, format)?)
        }
        Command::Sample { input, structure, count, seed, format, out, threads, max_recorded_paths } => {
            let ps = load(&input)?;
            let opts = SampleOptions { threads: threads.max(1), max_recorded_paths: Some(max_recorded_paths) };
            let samples = sample_with(&ps, structure.into(), seed, count, &opts)?;
            match format {
                SampleFormat::Json => {
                    let edges: Vec<Vec<Segment>> = samples.into_iter().map(|s| s.edges).collect();
                    emit(out.as_deref(), &render_structures(&edges, ListFormat::Json)?)
                }
                SampleFormat::SvgDir => {
                    let dir = out.ok_or_else(|| CliError::Input("--format svg-dir needs --out DIR".into()))?;
                    std::fs::create_dir_all(&dir).map_err(io_err)?;
                    for (k, s) in samples.iter().enumerate() {
                        let spec = svg::RenderSpec { points: &ps, structure: &s.edges, path: &[], line: None, width: 800 };
                        std::fs::write(dir.join(format!("sample-{k:05}.svg")), svg::render(&spec)).map_err(io_err)?;
                    }
                    Ok(())
                }
            }
        }
        Command::Sequence { k } => {
            let text: String = analysis::bound_sequence(k).iter().map(|b| format!("{}\t{}\t{}\n", b.k, b.f, b.g)).collect();
            emit(None, &text)
        }
        Command::Render { input, structure_file, path_file, line, out, width } => {
            let ps = load(&input)?;
            let n = ps.len();
            let structure = match &structure_file {
                Some(p) => input::parse_edges(&input::read_file(p)?, n)?,
                None => Vec::new(),
            };
            let path = match &path_file {
                Some(p) => input::parse_path(&input::read_file(p)?, n)?,
                None => Vec::new(),
            };
            if let Some(i) = line {
                if i == 0 || i >= n {
                    return Err(CliError::Input(format!("line {i} is outside 1..{}", n - 1)));
                }
            }
            let spec = svg::RenderSpec { points: &ps, structure: &structure, path: &path, line: line.map(SweepIndex), width: width.max(1) };
            emit(out.as_deref(), &svg::render(&spec))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sweepcount: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
