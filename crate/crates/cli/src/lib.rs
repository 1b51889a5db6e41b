//! Command-line front end: argument parsing, dispatch, and artifact writing.

pub mod commands;
pub mod error;
pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use splitwalk::{CoinParameter, InitialCoin, LimitDensityModel};

pub use error::CliError;
use output::{manifest_path, Format, RunManifest, Table};

pub const TOOL: &str = "splitwalk";
pub const DEFAULT_DENSITY_GRID: usize = 2001;
pub const DEFAULT_SPECTRUM_GRID: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Split-step quantum walk experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Position distribution after --time steps
    Simulate(Common),
    /// Limit density of X_t/t sampled on --grid points
    Density(Common),
    /// Simulated distribution against the rescaled limit density, plus total variation
    Compare(Common),
    /// Empirical moments of X_t/t against their limits
    Moments {
        #[command(flatten)]
        common: Common,
        /// Comma-separated moment orders (each at most 8)
        #[arg(long, value_delimiter = ',', default_values_t = [0u32, 1, 2, 3, 4])]
        orders: Vec<u32>,
        /// Comma-separated times; defaults to --time
        #[arg(long, value_delimiter = ',')]
        times: Vec<u64>,
    },
    /// Eigenvalues and speed h(k) on --grid midpoints of (0, pi)
    Spectrum(Common),
    /// Re-run the command recorded in a manifest
    Replay {
        #[arg(long)]
        manifest: PathBuf,
        /// Write here instead of the recorded output path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coin angle: radians, or a multiple of pi such as pi/3 or 2pi/5
    #[arg(long)]
    pub theta: String,
    /// Initial |0> amplitude, e.g. 1+0i
    #[arg(
        long,
        default_value = "0.7071067811865476+0i",
        allow_hyphen_values = true
    )]
    pub alpha: String,
    /// Initial |1> amplitude
    #[arg(
        long,
        default_value = "0+0.7071067811865476i",
        allow_hyphen_values = true
    )]
    pub beta: String,
    /// Rescale (alpha, beta) to unit norm
    #[arg(long)]
    pub normalize: bool,
    #[arg(long)]
    pub time: Option<u64>,
    #[arg(long)]
    pub grid: Option<usize>,
    /// Data file; a manifest is written beside it. Standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

struct Resolved {
    p: CoinParameter,
    coin: InitialCoin,
}

impl Common {
    fn resolve(&self) -> Result<Resolved, CliError> {
        let p = parse::parse_theta(&self.theta)?;
        let alpha = parse::parse_complex(&self.alpha)?;
        let beta = parse::parse_complex(&self.beta)?;
        let coin = parse::make_coin(alpha, beta, self.normalize)?;
        Ok(Resolved { p, coin })
    }

    fn require_time(&self) -> Result<u64, CliError> {
        self.time
            .ok_or_else(|| CliError::Usage("--time is required".into()))
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Density(_) => "density",
            Command::Compare(_) => "compare",
            Command::Moments { .. } => "moments",
            Command::Spectrum(_) => "spectrum",
            Command::Replay { .. } => "replay",
        }
    }

    fn common_mut(&mut self) -> Option<&mut Common> {
        match self {
            Command::Simulate(c)
            | Command::Density(c)
            | Command::Compare(c)
            | Command::Spectrum(c) => Some(c),
            Command::Moments { common, .. } => Some(common),
            Command::Replay { .. } => None,
        }
    }
}

/// Parses `argv` (program name first) and runs it. Help and version
/// requests surface as a clap error for the caller to print.
pub fn run_from<I, T>(argv: I) -> Result<(), RunError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv).map_err(RunError::Clap)?;
    let recorded: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    execute(cli.command, recorded).map_err(RunError::Cli)
}

#[derive(Debug)]
pub enum RunError {
    Clap(clap::Error),
    Cli(CliError),
}

fn execute(mut command: Command, recorded: Vec<String>) -> Result<(), CliError> {
    if let Command::Replay { manifest, out } = command {
        return replay(&manifest, out);
    }
    let name = command.name();
    let common = command.common_mut().expect("non-replay command").clone();
    let Resolved { p, coin } = common.resolve()?;

    let mut summary = None;
    let table = match &command {
        Command::Simulate(c) => commands::simulate_table(&coin, &p, c.require_time()?),
        Command::Density(c) => {
            let model = LimitDensityModel::from_coin(p, &coin)?;
            commands::density_table(&model, c.grid.unwrap_or(DEFAULT_DENSITY_GRID))?
        }
        Command::Compare(c) => {
            let (table, tv) = commands::compare_table(&coin, &p, c.require_time()?)?;
            summary = Some(format!("total_variation={}", output::format_real(tv)));
            table
        }
        Command::Moments {
            common: c,
            orders,
            times,
        } => {
            let times = if times.is_empty() {
                vec![c.require_time()?]
            } else {
                times.clone()
            };
            commands::moments_table(&coin, &p, orders, &times)?
        }
        Command::Spectrum(c) => {
            commands::spectrum_table(&p, c.grid.unwrap_or(DEFAULT_SPECTRUM_GRID))?
        }
        Command::Replay { .. } => unreachable!(),
    };
    table.check_finite()?;

    match &common.out {
        Some(path) => {
            write_data(path, &table, common.format)?;
            let manifest = RunManifest {
                tool: TOOL.into(),
                tool_version: env!("CARGO_PKG_VERSION").into(),
                command: name.into(),
                args: recorded,
                theta: p.theta(),
                alpha: [coin.alpha().re, coin.alpha().im],
                beta: [coin.beta().re, coin.beta().im],
                time: common.time,
                grid: common.grid,
                format: common.format,
                timestamp: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            };
            fs::write(manifest_path(path), manifest.to_json()?)?;
            if let Some(line) = summary {
                println!("{line}");
            }
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(table.render(common.format).as_bytes())?;
            stdout.flush()?;
            if let Some(line) = summary {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

fn write_data(path: &Path, table: &Table, format: Format) -> Result<(), CliError> {
    fs::write(path, table.render(format))?;
    Ok(())
}

fn replay(manifest: &Path, out: Option<PathBuf>) -> Result<(), CliError> {
    let recorded = RunManifest::read(manifest)?;
    if recorded.tool != TOOL {
        return Err(CliError::Usage(format!(
            "manifest was written by '{}', not {TOOL}",
            recorded.tool
        )));
    }
    let argv = std::iter::once(TOOL.to_string()).chain(recorded.args.iter().cloned());
    let mut cli = Cli::try_parse_from(argv)
        .map_err(|e| CliError::Usage(format!("manifest arguments do not parse: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(CliError::Usage(
            "a manifest cannot replay another replay".into(),
        ));
    }
    let mut args = recorded.args;
    if let Some(out) = out {
        strip_out(&mut args);
        args.push("--out".into());
        args.push(out.to_string_lossy().into_owned());
        cli.command.common_mut().expect("checked above").out = Some(out);
    }
    execute(cli.command, args)
}

fn strip_out(args: &mut Vec<String>) {
    let mut i = 0;
    while i < args.len() {
        if args[i] == "--out" {
            args.drain(i..(i + 2).min(args.len()));
        } else if args[i].starts_with("--out=") {
            args.remove(i);
        } else {
            i += 1;
        }
    }
}
