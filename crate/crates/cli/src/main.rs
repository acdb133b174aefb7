//! `vietoris`: run the verification suites, compute uncovered-point
//! witnesses, and play selection games against the built-in P1 strategies.

mod repl;
mod witness;

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use vietoris_core::games::{self, Mode, VTranscript, Verdict, CHALLENGERS};
use vietoris_core::suites::{self, SuiteConfig, SuiteReport, SUITES};

#[derive(Parser)]
#[command(name = "vietoris", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite (or `all`) and report failures.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long = "maxPrefix", default_value_t = SuiteConfig::default().max_prefix)]
        max_prefix: usize,
        #[arg(long = "maxValue", default_value_t = SuiteConfig::default().max_value)]
        max_value: u64,
        #[arg(long = "depthLimit", default_value_t = SuiteConfig::default().depth_limit)]
        depth_limit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the reports as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Re-verify saved game transcripts instead of running suites.
        #[arg(long, num_args = 1..)]
        replay: Vec<PathBuf>,
    },
    /// Compute an uncovered point for one of the P1 constructions.
    Witness {
        /// cantor, prefix, tube or weight
        kind: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Play P2 interactively against a built-in P1.
    Play {
        /// single or finite
        mode: Mode,
        /// cantor, prefix, tube or whole
        p1: String,
        rounds: usize,
        #[arg(long)]
        save: Option<PathBuf>,
        #[arg(long = "page-size", default_value_t = 8)]
        page_size: usize,
    },
    /// Replay a saved transcript and check its verdict.
    Replay { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            suite,
            max_prefix,
            max_value,
            depth_limit,
            seed,
            json,
            replay,
        } => {
            if !replay.is_empty() {
                replay_all(&replay)
            } else {
                let config = SuiteConfig {
                    max_prefix,
                    max_value,
                    depth_limit,
                    seed,
                };
                verify(&suite, &config, json.as_deref())
            }
        }
        Command::Witness { kind, input } => witness::run(&kind, &input),
        Command::Play {
            mode,
            p1,
            rounds,
            save,
            page_size,
        } => {
            let stdin = io::stdin();
            play(mode, &p1, rounds, save.as_deref(), page_size, stdin.lock(), io::stdout())
        }
        Command::Replay { path } => replay_all(&[path]),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: &'a SuiteConfig,
    passed: bool,
    reports: &'a [SuiteReport],
}

fn verify(suite: &str, config: &SuiteConfig, json: Option<&Path>) -> Result<ExitCode> {
    let reports = if suite == "all" {
        suites::run_all(config)
    } else {
        match suites::run_suite(suite, config) {
            Some(r) => vec![r],
            None => {
                eprintln!(
                    "error: unknown suite {suite:?}; known suites: all, {}",
                    SUITES.join(", ")
                );
                return Ok(ExitCode::from(2));
            }
        }
    };
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAILED" };
        println!(
            "{:<10} {status:<6} {} cases, {} failed ({:.2?})",
            r.suite, r.cases, r.failed, r.wall_time
        );
        for f in &r.failures {
            println!("  {}: {}", f.check, f.payload);
        }
    }
    let passed = reports.iter().all(SuiteReport::passed);
    if let Some(path) = json {
        let out = VerifyOutput {
            config,
            passed,
            reports: &reports,
        };
        let text = serde_json::to_string_pretty(&out)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn load_transcript(path: &Path) -> Result<VTranscript> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn replay_all(paths: &[PathBuf]) -> Result<ExitCode> {
    let mut ok = true;
    for path in paths {
        let saved = load_transcript(path)?;
        match games::replay(&saved) {
            Ok(again) if again.verdict == saved.verdict => {
                println!("{}: verdict reproduced ({})", path.display(), describe(&again.verdict));
            }
            Ok(again) => {
                ok = false;
                println!(
                    "{}: verdict changed: saved {}, replayed {}",
                    path.display(),
                    describe(&saved.verdict),
                    describe(&again.verdict)
                );
            }
            Err(e) => {
                ok = false;
                println!("{}: replay rejected: {e}", path.display());
            }
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn describe(v: &Verdict<vietoris_core::QSeq>) -> String {
    match v {
        Verdict::P1WitnessFound { witness } => format!("P1 witness {witness}"),
        Verdict::P2SurvivesToHorizon => "P2 survives to the horizon".into(),
    }
}

fn play(
    mode: Mode,
    p1: &str,
    rounds: usize,
    save: Option<&Path>,
    page_size: usize,
    input: impl BufRead,
    mut output: impl Write,
) -> Result<ExitCode> {
    let mut challenger = games::challenger_by_name(p1).with_context(|| {
        format!("known strategies: {}", CHALLENGERS.join(", "))
    })?;
    let mut human = repl::HumanSelector::new(input, &mut output, page_size);
    let transcript = games::play(mode, &mut *challenger, &mut human, rounds);
    drop(human);
    let transcript = match transcript {
        Ok(t) => t,
        Err(e) => {
            writeln!(output, "game aborted: {e}")?;
            return Ok(ExitCode::FAILURE);
        }
    };
    repl::print_outcome(&transcript, &mut output)?;
    if let Some(path) = save {
        let text = serde_json::to_string_pretty(&transcript)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
        writeln!(output, "transcript saved to {}", path.display())?;
    }
    Ok(ExitCode::SUCCESS)
}
