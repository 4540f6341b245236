//! `wythoff`: solve `(b,b)` games, print difference tables, run conjecture
//! scans and export grids.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 when a verification
//! finds a constructive engine disagreeing with the oracle.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod run;

#[derive(Parser, Debug)]
#[command(name = "wythoff", version, about = "Solvers for Wythoff-type (a,a) take-away games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List P-positions or export the P/N grid of the (b,b) game.
    Solve(SolveArgs),
    /// Print the difference table `index,d`.
    Difftable(DifftableArgs),
    /// Run an empirical conjecture check.
    Conjecture(ConjectureArgs),
    /// Render the P/N grid as an image.
    Plot(PlotArgs),
    /// Compare a constructive engine with the oracle.
    Verify(VerifyArgs),
    /// P cells of 3-pile Wythoff.
    Voxels(VoxelArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Retrograde classification of a bounded box.
    Oracle,
    /// Golden-ratio formula; b = 1 only.
    ClosedForm,
    /// Doubling construction; b a power of two.
    Cyclic,
    /// Greedy construction; any b.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveFormat {
    Csv,
    GridBinary,
    Pgm,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableEngine {
    Cyclic,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    ReportText,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Pgm,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VoxelFormat {
    Csv,
    GridBinary,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("extent").required(true).args(["count", "bound"]))]
pub struct SolveArgs {
    #[arg(long)]
    pub b: u64,
    #[arg(long, value_enum, default_value = "oracle")]
    pub engine: Engine,
    /// Number of P-positions, in difference-table order.
    #[arg(long)]
    pub count: Option<usize>,
    /// Side of the square box `[0, bound)²`.
    #[arg(long)]
    pub bound: Option<u64>,
    /// Leading P-positions to drop (with --count).
    #[arg(long, default_value_t = 0, requires = "count")]
    pub skip: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: SolveFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DifftableArgs {
    #[arg(long)]
    pub a: u64,
    #[arg(long, value_enum, default_value = "cyclic")]
    pub engine: TableEngine,
    /// Number of indices; defaults to a².
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    #[command(subcommand)]
    pub check: Check,
    #[arg(long, value_enum, default_value = "report-text", global = true)]
    pub format: ReportFormat,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Exactly a² P cells in [0, a²-1]².
    Grid {
        /// One or more strides, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
    },
    /// Slope of the upper P-position ray.
    Asymptote {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: usize,
    },
    /// Which strides give a cyclic difference sequence.
    CyclicScan {
        #[arg(long)]
        max_b: u64,
        /// Indices examined per stride; defaults to 4b².
        #[arg(long)]
        window: Option<usize>,
    },
    /// Box-counting measurements of 3-pile Wythoff.
    Sierpinski {
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long)]
    pub b: u64,
    #[arg(long)]
    pub bound: u64,
    #[arg(long, value_enum, default_value = "pgm")]
    pub format: ImageFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub b: u64,
    #[arg(long)]
    pub bound: u64,
    #[arg(long, value_enum, default_value = "general")]
    pub engine: Engine,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VoxelArgs {
    #[arg(long)]
    pub bound: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: VoxelFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed run and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Invariant(anyhow::Error),
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(anyhow::anyhow!(msg.into()))
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Invariant(_) => 2,
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

/// Bytes produced by a command, plus whether they record a detected
/// invariant violation.
pub struct Artifact {
    pub bytes: Vec<u8>,
    pub violation: Option<String>,
}

impl Artifact {
    pub fn ok(bytes: Vec<u8>) -> Self {
        Artifact { bytes, violation: None }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("WYTHOFF_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("WYTHOFF_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring thread pool")?;
    Ok(())
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout when no path is given.
fn emit(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn execute(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let (artifact, out) = match cli.command {
        Command::Solve(args) => (run::solve(&args)?, args.out),
        Command::Difftable(args) => (run::difftable(&args)?, args.out),
        Command::Conjecture(args) => (run::conjecture(&args)?, args.out),
        Command::Plot(args) => (run::plot(&args)?, args.out),
        Command::Verify(args) => (run::verify(&args)?, args.out),
        Command::Voxels(args) => (run::voxels(&args)?, args.out),
    };
    emit(out.as_deref(), &artifact.bytes)?;
    match artifact.violation {
        Some(msg) => Err(Failure::Invariant(anyhow::anyhow!(msg))),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(1);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(e) | Failure::Invariant(e)) = &f;
            eprintln!("error: {e:#}");
            ExitCode::from(f.code())
        }
    }
}
