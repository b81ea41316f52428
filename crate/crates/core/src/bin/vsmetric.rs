use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vsmetric::scenario::{catalog_listing, run_files, DEFAULT_OUT_DIR, OUT_DIR_ENV};

#[derive(Parser)]
#[command(
    name = "vsmetric",
    version,
    about = "Run vector S-metric fixed-point scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run scenario files and write results and traces.
    Run {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, env = OUT_DIR_ENV, default_value = DEFAULT_OUT_DIR)]
        out_dir: PathBuf,
        /// Override the seed of every scenario.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print metric, map and gauge names usable in scenarios.
    ListCatalog,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::ListCatalog => {
            print!("{}", catalog_listing());
            ExitCode::SUCCESS
        }
        Command::Run {
            files,
            out_dir,
            seed,
        } => {
            let (outcomes, code) = run_files(&files, &out_dir, seed);
            for o in &outcomes {
                match &o.result {
                    Ok(r) => println!(
                        "{}: {} (exit {}, {:.3} ms)",
                        r.scenario,
                        r.verdict,
                        r.exit_code,
                        r.wall_time.as_secs_f64() * 1e3
                    ),
                    Err(e) => eprintln!("{}: error: {e}", o.path.display()),
                }
            }
            ExitCode::from(code as u8)
        }
    }
}
