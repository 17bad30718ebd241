use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use multiplet_cli::{cmd_phases, cmd_simulate, cmd_sweep, CliError, ConfigDoc, RunConfig};

/// Spontaneous decay of a low-frequency-dressed upper-state multiplet.
#[derive(Parser)]
#[command(name = "multiplet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-level and total upper-state populations over time.
    Simulate(Flags),
    /// Total population for a list of drive frequencies or side-level rates.
    Sweep(Flags),
    /// Burst-phase end and quiescent decay rate.
    Phases(Flags),
}

/// Flags override the corresponding config-file keys.
#[derive(Args)]
struct Flags {
    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    t_max: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    /// Output file; standard output if omitted or `-`.
    #[arg(long)]
    output: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    threshold: Option<String>,
    /// omega_bar or gamma_side.
    #[arg(long)]
    sweep_param: Option<String>,
    /// Comma-separated sweep values.
    #[arg(long)]
    sweep_values: Option<String>,
    #[arg(long)]
    probe_time: Option<String>,
}

impl Flags {
    fn load(&self) -> Result<RunConfig, CliError> {
        let text = match &self.config {
            Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?,
            None => String::new(),
        };
        let mut doc = ConfigDoc::parse(&text)?;
        let overrides = [
            ("t_max", &self.t_max),
            ("samples", &self.samples),
            ("output", &self.output),
            ("format", &self.format),
            ("threshold", &self.threshold),
            ("sweep_param", &self.sweep_param),
            ("sweep_values", &self.sweep_values),
            ("probe_time", &self.probe_time),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                doc.set(key, v.as_str());
            }
        }
        doc.into_config()
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) if p.as_os_str() == "-" => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

/// `runs/sweep.csv` -> `runs/sweep.summary.csv`.
fn summary_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.summary.{}", ext.to_string_lossy()),
        None => format!("{stem}.summary"),
    };
    path.with_file_name(name)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(flags) => {
            let config = flags.load()?;
            let mut out = open_output(config.output.as_deref())?;
            cmd_simulate(&config, &mut out)?;
            out.flush()?;
        }
        Command::Sweep(flags) => {
            let config = flags.load()?;
            match config.output.as_deref().filter(|p| p.as_os_str() != "-") {
                Some(path) => {
                    let mut out = open_output(Some(path))?;
                    let mut summary = open_output(Some(&summary_path(path)))?;
                    cmd_sweep(&config, &mut out, &mut summary)?;
                    out.flush()?;
                    summary.flush()?;
                }
                None => {
                    // Both tables on stdout, separated by a blank line.
                    let mut long = Vec::new();
                    let mut summary = Vec::new();
                    cmd_sweep(&config, &mut long, &mut summary)?;
                    let mut out = open_output(None)?;
                    out.write_all(&long)?;
                    out.write_all(b"\n")?;
                    out.write_all(&summary)?;
                    out.flush()?;
                }
            }
        }
        Command::Phases(flags) => {
            let config = flags.load()?;
            let mut out = open_output(config.output.as_deref())?;
            cmd_phases(&config, &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
