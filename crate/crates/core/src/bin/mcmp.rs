use std::fs::File;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use mcmp::report::{format_objective, write_csv, write_svg};
use mcmp::{oracle, solve, Error, MulticutInstance, SolveConfig, Tighten};

#[derive(Parser)]
#[command(
    name = "mcmp",
    version,
    about = "Minimum cost multicut by dual message passing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the final bounds.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[arg(long, default_value_t = 10)]
        sep_interval: usize,
        #[arg(long, default_value_t = 100)]
        round_interval: usize,
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
        #[arg(long, default_value = "cycles+oddwheels")]
        tighten: Tighten,
        /// Seconds.
        #[arg(long, default_value_t = 3600.0)]
        time_limit: f64,
        /// Convergence log (CSV).
        #[arg(long)]
        log: Option<PathBuf>,
        /// Convergence plot (SVG).
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Edge labels and node components of the best multicut.
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Exact solve by enumeration (at most 12 nodes).
    #[command(hide = true)]
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
    },
}

fn read_instance(path: &Path) -> Result<MulticutInstance, Error> {
    let file = File::open(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    MulticutInstance::parse(BufReader::new(file))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve {
            input,
            max_iter,
            sep_interval,
            round_interval,
            epsilon,
            tighten,
            time_limit,
            log,
            plot,
            solution,
        } => {
            if !(time_limit > 0.0 && time_limit.is_finite()) {
                return Err(Error::Config(format!(
                    "time limit must be positive, got {time_limit}"
                )));
            }
            let instance = read_instance(&input)?;
            let config = SolveConfig {
                max_iterations: max_iter,
                separation_interval: sep_interval,
                rounding_interval: round_interval,
                epsilon,
                tighten,
                time_limit: Duration::from_secs_f64(time_limit),
                ..SolveConfig::default()
            };
            let result = solve(&instance, &config)?;
            if let Some(path) = log {
                write_csv(&result.records, &path)?;
            }
            if let Some(path) = plot {
                write_svg(&result.records, &path)?;
            }
            if let Some(path) = solution {
                std::fs::write(path, instance.format_solution(&result.labeling)?)?;
            }
            println!(
                "LB={} UB={} status={}",
                format_objective(result.lower_bound),
                format_objective(result.upper_bound),
                result.status
            );
        }
        Command::Oracle { input } => {
            let instance = read_instance(&input)?;
            let (cost, partition) = oracle::exact_optimum(&instance)?;
            println!("OPT={}", format_objective(cost));
            let labeling = instance.partition_to_labeling(&partition)?;
            print!("{}", instance.format_solution(&labeling)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mcmp: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
