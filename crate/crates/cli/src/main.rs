use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use permlike::cli::{
    certificate_to_json, enumerate_summary, parse_n_range, rows_to_tsv, run_check, run_enumerate, run_selftest,
    scoreboard, EXIT_ERROR,
};
use permlike::oracle::Tier;
use permlike::presentations::TwistPolicy;

/// Worker threads for enumeration and group scans; defaults to all cores.
const WORKERS_VAR: &str = "PERMLIKE_WORKERS";

#[derive(Parser)]
#[command(name = "permlike", version, about = "Decide and certify permutation-like 2-groups with a maximal cycle")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one group spec. Exit 0: certified, 2: not permutation-like,
    /// 3: outside the supported class, 1: error.
    Check {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
        /// Where to write the certificate.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every presentation for the given n (e.g. 4 or 3-6).
    Enumerate {
        #[arg(long, value_parser = parse_n_range)]
        n: std::ops::RangeInclusive<u32>,
        /// `canonical` or `seeded:SEED:COUNT` (canonical plus COUNT seeded twists).
        #[arg(long, default_value = "canonical")]
        twists: TwistPolicy,
        /// Write the TSV table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in invariant suites.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Fast,
    Dense,
    Both,
}

impl From<TierArg> for Tier {
    fn from(t: TierArg) -> Tier {
        match t {
            TierArg::Fast => Tier::Fast,
            TierArg::Dense => Tier::Dense,
            TierArg::Both => Tier::Both,
        }
    }
}

fn configure_workers() -> Result<()> {
    if let Ok(v) = std::env::var(WORKERS_VAR) {
        let n: usize = v.parse().with_context(|| format!("{WORKERS_VAR}={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker pool")?;
    }
    Ok(())
}

fn run(args: Args) -> Result<i32> {
    configure_workers()?;
    match args.command {
        Command::Check { spec, tier, out } => {
            let text = fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let outcome = run_check(&text, tier.into());
            print!("{}", outcome.report());
            if let (Some(path), Some(cert)) = (out, &outcome.certificate) {
                if outcome.exit_code() == 0 {
                    fs::write(&path, certificate_to_json(cert)).with_context(|| format!("writing {}", path.display()))?;
                    println!("certificate written to {}", path.display());
                }
            }
            Ok(outcome.exit_code())
        }
        Command::Enumerate { n, twists, out } => {
            let rows = run_enumerate(n, twists);
            let tsv = rows_to_tsv(&rows);
            match out {
                Some(path) => fs::write(&path, &tsv).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{tsv}"),
            }
            let summary = enumerate_summary(&rows);
            eprint!("{summary}");
            Ok(if rows.iter().all(|r| r.as_expected()) { 0 } else { EXIT_ERROR })
        }
        Command::Selftest => {
            let results = run_selftest();
            print!("{}", scoreboard(&results));
            Ok(if results.iter().all(|r| r.passed()) { 0 } else { EXIT_ERROR })
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
