use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use abplates_cli::{execute, CliError, Format, Job, RunConfig, Sweep};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Aharonov-Bohm phase between conducting plates: tables of phases, fields,
/// induced charges and screened interactions.
///
/// Lengths given on the command line share the unit of --d; tabulated
/// lengths are divided by d. Exit status: 0 success, 2 domain or
/// configuration error, 3 convergence failure.
#[derive(Parser)]
#[command(name = "abplates", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase of a circular orbit versus its radius, with the large-R asymptote.
    PhaseCurve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Orbit height [default: d/2].
        #[arg(long)]
        z: Option<f64>,
    },
    /// Effective vector potential on a (rho, z) grid.
    Field {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Single height instead of a z grid.
        #[arg(long, conflicts_with_all = ["z_min", "z_max", "z_points"])]
        z: Option<f64>,
        /// Lowest height of the z grid [default: 0.05 d].
        #[arg(long)]
        z_min: Option<f64>,
        /// Highest height of the z grid [default: 0.95 d].
        #[arg(long)]
        z_max: Option<f64>,
        /// Number of z grid points.
        #[arg(long, default_value_t = 50)]
        z_points: usize,
        /// Drop rho = 0 grid points instead of failing.
        #[arg(long)]
        skip_axis: bool,
    },
    /// Induced surface charge and its running integral.
    Induced {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Height of the charge [default: d/2].
        #[arg(long)]
        z: Option<f64>,
    },
    /// Screened Coulomb energy of two charges against the image-charge sum.
    Coulomb {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Height of the first charge [default: d/2].
        #[arg(long)]
        z1: Option<f64>,
        /// Height of the second charge [default: d/2].
        #[arg(long)]
        z2: Option<f64>,
        /// Image orders kept on each side before the tail estimate.
        #[arg(long, default_value_t = 2000)]
        images: usize,
    },
    /// Phase accumulated along a closed polygon read from a file.
    Loop {
        #[command(flatten)]
        common: Common,
        /// Path file: one "x y" vertex per line, '#' comments.
        path: PathBuf,
        /// Height of the loop [default: d/2].
        #[arg(long)]
        z: Option<f64>,
    },
}

#[derive(Args)]
struct Common {
    /// Plate separation.
    #[arg(long, default_value_t = 1.0)]
    d: f64,
    /// Relative tolerance of every mode sum.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Maximum number of terms per mode sum.
    #[arg(long, default_value_t = 200_000)]
    max_terms: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Keep unconverged rows (flagged in the converged column) and exit 0.
    #[arg(long)]
    allow_partial: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Smallest radius or separation [default depends on the subcommand].
    #[arg(long)]
    r_min: Option<f64>,
    /// Largest radius or separation.
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Logarithmic instead of linear spacing.
    #[arg(long)]
    log_spacing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl SweepArgs {
    /// Defaults are given in units of d.
    fn resolve(&self, d: f64, min: f64, max: f64, points: usize) -> Sweep {
        Sweep {
            min: self.r_min.unwrap_or(min * d),
            max: self.r_max.unwrap_or(max * d),
            points: self.points.unwrap_or(points),
            log_spacing: self.log_spacing,
        }
    }
}

fn config(common: Common, job: Job) -> RunConfig {
    RunConfig {
        d: common.d,
        rel_tol: common.tol,
        max_terms: common.max_terms,
        format: match common.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        output: common.output,
        allow_partial: common.allow_partial,
        job,
    }
}

fn build(cmd: Command) -> RunConfig {
    match cmd {
        Command::PhaseCurve { common, sweep, z } => {
            let d = common.d;
            let job = Job::PhaseCurve {
                sweep: sweep.resolve(d, 0.05, 3.0, 200),
                z: z.unwrap_or(0.5 * d),
            };
            config(common, job)
        }
        Command::Field {
            common,
            sweep,
            z,
            z_min,
            z_max,
            z_points,
            skip_axis,
        } => {
            let d = common.d;
            let heights = match z {
                Some(z) => Sweep {
                    min: z,
                    max: z,
                    points: 1,
                    log_spacing: false,
                },
                None => Sweep {
                    min: z_min.unwrap_or(0.05 * d),
                    max: z_max.unwrap_or(0.95 * d),
                    points: z_points,
                    log_spacing: false,
                },
            };
            let job = Job::Field {
                rho: sweep.resolve(d, 0.1, 3.0, 50),
                z: heights,
                skip_axis,
            };
            config(common, job)
        }
        Command::Induced { common, sweep, z } => {
            let d = common.d;
            let job = Job::Induced {
                sweep: sweep.resolve(d, 0.05, 8.0, 100),
                z: z.unwrap_or(0.5 * d),
            };
            config(common, job)
        }
        Command::Coulomb {
            common,
            sweep,
            z1,
            z2,
            images,
        } => {
            let d = common.d;
            let job = Job::Coulomb {
                sweep: sweep.resolve(d, 0.1, 5.0, 50),
                z1: z1.unwrap_or(0.5 * d),
                z2: z2.unwrap_or(0.5 * d),
                images,
            };
            config(common, job)
        }
        Command::Loop { common, path, z } => {
            let z = z.unwrap_or(0.5 * common.d);
            config(common, Job::Loop { path, z })
        }
    }
}

fn write(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cfg = build(Cli::parse().command);
    match execute(&cfg).and_then(|text| write(&cfg, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("abplates: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
