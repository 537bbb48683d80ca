mod config;

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use forge_core::niklattice::enumerate_classes;
use forge_core::pipeline::{build_base, build_sextic, build_threefold, choose_conic, run_full, verify, Budget, DEFAULT_RETRIES};
use serde_json::json;

use config::{resolve_seed, FileConfig};

#[derive(Parser)]
#[command(name = "forge", version, about = "Build and check genus 8 surface certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole construction and write a certificate.
    Run {
        #[arg(long)]
        seed: Option<u64>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Retry budget for each random choice.
        #[arg(long)]
        retries: Option<u32>,
        /// key=value file with seed, retries and out.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Recompute a certificate and compare it with the recorded one.
    Verify { certificate: PathBuf },
    /// Lattice tools.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Hilbert function of an intermediate variety.
    Hf {
        #[arg(long, value_enum)]
        stage: HfStage,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: u32,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Enumerate classes with given self-intersection and H-degree.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        selfint: i64,
        #[arg(long, allow_hyphen_values = true)]
        hdeg: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HfStage {
    Threefold,
}

/// Exit status of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("forge: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Run { seed, out, retries, config } => {
            let file = match &config {
                Some(p) => FileConfig::load(p)?,
                None => FileConfig::default(),
            };
            let env = std::env::var("FORGE_SEED").ok();
            let seed = resolve_seed(seed, env.as_deref(), &file)?
                .ok_or_else(|| anyhow!("no seed given (use --seed, FORGE_SEED or a config file)"))?;
            let retries = retries.or(file.retries).unwrap_or(DEFAULT_RETRIES);
            let cert = run_full(seed, Budget::uniform(retries));
            let text = cert.to_json();
            match out.or(file.out) {
                Some(path) => std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?,
                None => emit(&text)?,
            }
            match cert.failed_stage() {
                Some(stage) => eprintln!("seed {seed}: FAIL at {stage}"),
                None if cert.verdict => eprintln!("seed {seed}: PASS"),
                None => eprintln!("seed {seed}: FAIL in lattice checks"),
            }
            Ok(outcome(cert.verdict))
        }
        Command::Verify { certificate } => {
            let text = std::fs::read_to_string(&certificate)
                .with_context(|| format!("reading {}", certificate.display()))?;
            let v = verify(&text)?;
            let mut report: String = v.mismatches.iter().map(|m| format!("mismatch {m}\n")).collect();
            report += &format!(
                "{}: {} (recorded verdict {})\n",
                certificate.display(),
                if v.reproduced { "reproduced" } else { "NOT reproduced" },
                v.recorded_verdict
            );
            emit(&report)?;
            Ok(outcome(v.reproduced))
        }
        Command::Lattice {
            command: LatticeCommand::Search { selfint, hdeg },
        } => {
            let (classes, cert) = enumerate_classes(selfint, hdeg)?;
            let out = json!({
                "classes": classes.iter().map(|c| c.coords()).collect::<Vec<_>>(),
                "certificate": cert,
            });
            emit(&(serde_json::to_string_pretty(&out)? + "\n"))?;
            Ok(Outcome::Pass)
        }
        Command::Hf {
            stage: HfStage::Threefold,
            seed,
            retries,
        } => {
            let base = build_base()?;
            let Some(a) = choose_conic(seed, retries).conic else {
                bail!("seed {seed}: no admissible conic within {retries} retries");
            };
            let x = build_sextic(&a, &base)?;
            let t = build_threefold(&x, seed)?;
            emit(&(serde_json::to_string_pretty(&t.report)? + "\n"))?;
            Ok(outcome(t.report.passed()))
        }
    }
}
