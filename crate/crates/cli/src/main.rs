//! Command-line front end: reads a TOML run configuration, executes the
//! requested tasks per sweep point (fanning out across worker threads), and
//! writes deterministic CSV/JSON reports plus SVG plots.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure or
//! unwritable output.

mod config;
mod engine;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{Format, RunConfig};
use engine::EngineError;

#[derive(Parser, Debug)]
#[command(
    name = "nhladder",
    about = "Exact diagonalization and biorthogonal entanglement analysis of the nonreciprocal XXZ spin ladder",
    version
)]
struct Cli {
    /// Run configuration file (TOML with [model], [tasks], [sweep], [output]).
    config: PathBuf,

    /// Worker threads for the sweep fan-out (default: one per core).
    #[arg(long)]
    threads: Option<usize>,

    /// Keep going when a defective (exceptional-point) eigensystem is hit;
    /// the affected rows are flagged instead of aborting.
    #[arg(long)]
    allow_defective: bool,

    /// Comma-separated output formats, overriding the config file.
    #[arg(long, value_delimiter = ',')]
    formats: Option<Vec<String>>,

    /// Suppress progress diagnostics on stderr (errors still print).
    #[arg(long)]
    quiet: bool,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn main() -> ExitCode {
    // Each sweep point runs its linear algebra sequentially; parallelism
    // lives at the sweep level. Pinning the BLAS pool to one thread keeps
    // runs reproducible and avoids oversubscription under rayon.
    if std::env::var_os("OPENBLAS_NUM_THREADS").is_none() {
        std::env::set_var("OPENBLAS_NUM_THREADS", "1");
    }

    let cli = Cli::parse();

    let config = match load_config(&cli) {
        Ok(config) => config,
        Err(message) => {
            eprintln!("nhladder: config error: {message}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    #[cfg(feature = "parallel")]
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("nhladder: thread pool: {e}");
        }
    }
    #[cfg(not(feature = "parallel"))]
    if cli.threads.is_some() && !cli.quiet {
        eprintln!("nhladder: built without the parallel feature; --threads ignored");
    }

    match run(&config, cli.allow_defective, cli.quiet) {
        Ok(()) => ExitCode::SUCCESS,
        Err(EngineError::Numerical(message)) | Err(EngineError::Io(message)) => {
            eprintln!("nhladder: {message}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| format!("cannot read {}: {e}", cli.config.display()))?;
    let mut config = config::parse(&text)?;
    if let Some(flags) = &cli.formats {
        config.formats = config::parse_formats(flags)?;
    }
    Ok(config)
}

fn run(config: &RunConfig, allow_defective: bool, quiet: bool) -> Result<(), EngineError> {
    let outcomes = engine::run_all_points(config, allow_defective)?;

    if !quiet {
        for outcome in &outcomes {
            for line in &outcome.diagnostics {
                eprintln!("nhladder: {line}");
            }
        }
    }

    std::fs::create_dir_all(&config.output_dir)
        .map_err(|e| EngineError::Io(format!("cannot create {}: {e}", config.output_dir.display())))?;

    let rows: Vec<_> = outcomes.iter().map(|o| o.row.clone()).collect();
    for format in &config.formats {
        match format {
            Format::Csv => {
                let path = config.output_dir.join("results.csv");
                report::write_csv(&rows, &path)
                    .map_err(|e| EngineError::Io(format!("cannot write {}: {e}", path.display())))?;
            }
            Format::Json => {
                let path = config.output_dir.join("results.json");
                report::write_json(&rows, &path)
                    .map_err(|e| EngineError::Io(format!("cannot write {}: {e}", path.display())))?;
            }
            Format::Svg => {
                svg::write_plots(&outcomes, &config.output_dir)
                    .map_err(|e| EngineError::Io(format!("cannot write plots: {e}")))?;
            }
        }
    }

    if !quiet {
        eprintln!(
            "nhladder: wrote {} row(s) to {}",
            rows.len(),
            config.output_dir.display()
        );
    }
    Ok(())
}
