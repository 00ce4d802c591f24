use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rinorm_cli::{emit_report, run_target, ExperimentConfig, Overrides, PRESETS};

#[derive(Parser, Debug)]
#[command(name = "rinorm", version, about = "Experiments on rearrangement-invariant norms")]
struct Args {
    /// A preset name or `run`.
    #[arg(value_name = "PRESET|run", long_help = format!("A preset ({}) or `run` for a config-driven pipeline", PRESETS.join(", ")))]
    target: String,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Main size parameter of the preset.
    #[arg(long)]
    n: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = args
        .config
        .as_deref()
        .map(ExperimentConfig::load)
        .transpose()
        .and_then(|cfg| run_target(&args.target, cfg, Overrides { seed: args.seed, n: args.n }))
        .and_then(|report| emit_report(&report, &args.out).map(|_| report));
    match result {
        Ok(report) => {
            for c in &report.checks {
                println!("{}: {}", c.name, if c.passed { "PASS" } else { "FAIL" });
            }
            println!("verdict: {:?}", report.verdict);
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
