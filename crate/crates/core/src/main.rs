use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use hyperfix::harness::{self, catalog, suites};

#[derive(Parser)]
#[command(
    name = "hyperfix",
    version,
    about = "Fixed-point iterations and center calculus for finite Lipschitz group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every property suite and print one report line per suite.
    Verify {
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
        /// Base case count; smaller suites use a fixed fraction of it.
        #[arg(long, default_value_t = suites::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Run one scenario config and write its trace and summary.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `[output] dir`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the scenario configs shipped with the tool.
    ListScenarios,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { seed, samples } => verify(seed, samples),
        Command::Run { config, out } => run(config, out),
        Command::ListScenarios => {
            for name in catalog::names() {
                let description = catalog::load(name).map(|c| c.description).unwrap_or_default();
                println!("{name}\t{description}");
            }
            ExitCode::SUCCESS
        }
    }
}

fn verify(seed: u64, samples: usize) -> ExitCode {
    let start = Instant::now();
    let results = harness::verify_all(seed, samples);
    print!("{}", suites::report(&results));
    for r in &results {
        for note in &r.notes {
            eprintln!("note [{}]: {note}", r.name);
        }
        for v in &r.violations {
            eprintln!("violation [{}]: {v}", r.name);
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    eprintln!(
        "{} suites, {failed} failed, {:.2} s",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(config: PathBuf, out: Option<PathBuf>) -> ExitCode {
    let result = harness::load_config(&config).and_then(|cfg| harness::run_scenario(&cfg, out.as_deref()));
    match result {
        Ok(r) => {
            print!("{}", r.summary);
            for f in &r.files {
                eprintln!("wrote {}", f.display());
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("expected {}, observed {}", r.expected, r.observed);
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
