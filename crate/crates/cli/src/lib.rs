//! The `spectre` command-line workbench.
//!
//! Exit codes: 0 success, 1 a check came out false, 2 usage, format or
//! precondition error, 3 enumeration budget exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectre_core::{parse_rat, Rat};

mod commands;
pub mod io;
pub mod svg;

pub use commands::Report;

#[derive(Parser, Debug)]
#[command(name = "spectre", version, about = "Exact spectres, centers of distances, achievement sets and gap checks")]
pub struct Cli {
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also draw the resulting point set to this SVG file.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Cap on enumerated subsets or coefficient vectors.
    #[arg(long, global = true, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Seed for randomly generated probe families.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fast,
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectre S(A) of a set.
    Spectre {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
    },
    /// Center of distances C(A) of a set.
    Center {
        #[arg(long)]
        set: PathBuf,
    },
    /// Net-set check, or perturb a set into one.
    Netset {
        #[command(subcommand)]
        action: NetsetAction,
    },
    /// Non-sliding check.
    Nonsliding {
        #[command(subcommand)]
        action: NonslidingAction,
    },
    /// Hausdorff distance between two sets.
    Hausdorff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Spectre behaviour along a sequence of sets converging to a set.
    Probe {
        #[command(subcommand)]
        kind: ProbeKind,
    },
    /// Search a finite group for a set whose spectre is the target.
    RefuteImage {
        /// Group such as Z6 or Z2xZ4.
        #[arg(long)]
        group: String,
        #[arg(long)]
        target: PathBuf,
    },
    /// Achievement sets of scalar series and their gaps.
    Series {
        #[command(subcommand)]
        action: SeriesAction,
    },
    /// Achievement sets of planar series and their gaps.
    Planar {
        #[command(subcommand)]
        action: PlanarAction,
    },
    /// P-sum sets and gap translation.
    Psum {
        #[command(subcommand)]
        action: PsumAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum NetsetAction {
    Check {
        #[arg(long)]
        set: PathBuf,
    },
    /// Perturb a set into a nearby net-set.
    Make {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_parser = rat_arg)]
        eps: Rat,
    },
}

#[derive(Subcommand, Debug)]
pub enum NonslidingAction {
    Check {
        #[arg(long)]
        set: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[arg(long)]
    pub set: PathBuf,
    /// Sequence of sets to compare against; generated when absent.
    #[arg(long)]
    pub family: Option<PathBuf>,
    #[arg(long, value_parser = rat_arg)]
    pub eps: Rat,
    /// Length of a generated sequence.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub count: u32,
}

#[derive(Subcommand, Debug)]
pub enum ProbeKind {
    /// Spectre distances along a sequence approaching the set.
    Continuity(ProbeArgs),
    /// Whether spectres along the sequence stay inside the fattened S(A).
    Usc(ProbeArgs),
}

#[derive(Subcommand, Debug)]
pub enum SeriesAction {
    Enumerate {
        #[arg(long)]
        series: PathBuf,
    },
    Gaps {
        #[arg(long)]
        series: PathBuf,
    },
    ThirdGap {
        #[arg(long)]
        series: PathBuf,
    },
    FirstGap {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        k: usize,
    },
    SpectreProps {
        #[arg(long)]
        series: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum PlanarAction {
    Enumerate {
        #[arg(long)]
        series: PathBuf,
    },
    Gaps {
        #[arg(long)]
        series: PathBuf,
        /// Only the rectangular gaps of maximal area.
        #[arg(long)]
        largest: bool,
    },
    FirstGap {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        k: usize,
    },
    SecondGap {
        #[arg(long)]
        series: PathBuf,
        /// Rectangle a,b,c,d standing for (a,b) x (c,d).
        #[arg(long, value_parser = rats_arg::<4>)]
        rect: RatTuple,
    },
    /// The built-in four-term example.
    Example {
        /// Exit 1 unless every expected fact holds.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PsumAction {
    Enumerate {
        #[arg(long)]
        pspec: PathBuf,
    },
    GapTranslate {
        #[arg(long)]
        pspec: PathBuf,
        /// Gap a,b of the P-sum set.
        #[arg(long, value_parser = rats_arg::<2>)]
        gap: RatTuple,
    },
    CantorDemo {
        #[arg(long, default_value_t = 6)]
        levels: u32,
    },
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// A fixed number of comma-separated rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatTuple(pub Vec<Rat>);

fn rats_arg<const N: usize>(s: &str) -> Result<RatTuple, String> {
    let v = s.split(',').map(|t| rat_arg(t.trim())).collect::<Result<Vec<_>, _>>()?;
    if v.len() != N {
        return Err(format!("expected {N} comma-separated rationals, found {}", v.len()));
    }
    Ok(RatTuple(v))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {reason}")]
    Format { path: String, reason: String },
    #[error(transparent)]
    Core(#[from] spectre_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(spectre_core::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

/// Parses `argv` (including the program name), runs one subcommand and
/// returns the process exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if shown { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if shown { 0 } else { 2 };
        }
    };
    let result = match cli.threads {
        None => commands::execute(&cli),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(|| commands::execute(&cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
    };
    match result.and_then(|report| emit(&cli, &report, out).map(|()| report.ok)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, report: &Report, out: &mut dyn Write) -> Result<(), CliError> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json value") + "\n",
        Format::Csv => report.csv.clone(),
    };
    let stdout_err = |e| CliError::Io { path: "<stdout>".into(), source: e };
    out.write_all(body.as_bytes()).map_err(stdout_err)?;
    if let Some(path) = &cli.svg {
        let scene = report
            .scene
            .as_ref()
            .ok_or_else(|| CliError::Usage("--svg: this command has no point set to draw".into()))?;
        std::fs::write(path, svg::render(scene))
            .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
    }
    Ok(())
}
