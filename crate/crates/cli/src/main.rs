//! Exact verification of cuspidal function-space identities on sl₂ and
//! PGL₂ over small odd finite fields, plus Fourier-restriction
//! surjectivity sweeps over extension towers.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use cuspidal_cli::config::{
    parse_q_list, resolve_budget, ExperimentConfig, ModeOpt, OutputFormat, ASSERTION_MAX_Q,
    LEMMA_MAX_Q, VERIFY_MAX_Q,
};
use cuspidal_cli::run::{
    run_assertion, run_lemma_chi, run_question2, run_selftest, run_verify, write_output, Outcome,
    VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "cuspidal",
    version,
    about = "Exact finite-field verification of cuspidal/weightless function-space identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, default_value = "text")]
    format: OutputFormat,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the containment gate and the equality verdicts for every
    /// orbit closure at each q (lie equality is a hard assertion, group
    /// equality is recorded as evidence).
    Verify {
        /// Comma-separated odd prime powers.
        #[arg(long, default_value = "3,5")]
        q: String,
        #[arg(long, default_value = "both")]
        mode: ModeOpt,
        /// Run the cyclotomic Fourier-support oracle against the rational
        /// route for q up to this bound (0 disables).
        #[arg(long, default_value_t = 5)]
        fourier_cross_check: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the two-point witness pipeline for every nontrivial character.
    #[command(name = "lemma-chi")]
    LemmaChi {
        #[arg(long, default_value = "3,5")]
        q: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate the PGL₂ character table and check the multiplicity bound
    /// m_π ≤ 1 (π ≠ Steinberg) on every conjugacy class.
    Assertion {
        #[arg(long, default_value = "3,5")]
        q: String,
        /// Skip q values above this cap (table cost grows with q²−1).
        #[arg(long, default_value_t = 5)]
        max_q: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a Fourier-restriction surjectivity sweep from an experiment
    /// file.
    Question2 {
        /// Path to the JSON experiment description.
        #[arg(long)]
        experiment: PathBuf,
        /// Point-enumeration budget (overrides CUSPIDAL_ENUM_BUDGET and the
        /// experiment file).
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the internal cross-check battery.
    Selftest {
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(outcome: &Outcome, output: &OutputArgs) -> Result<()> {
    write_output(output.out.as_deref(), &outcome.report.emit(output.format))
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { q, mode, fourier_cross_check, output } => {
            let opts = VerifyOptions {
                q_values: parse_q_list(&q, VERIFY_MAX_Q)?,
                mode,
                fourier_cross_check_max_q: fourier_cross_check,
            };
            let outcome = run_verify(&opts)?;
            emit(&outcome, &output)?;
            Ok(outcome.hard_failure)
        }
        Command::LemmaChi { q, output } => {
            let outcome = run_lemma_chi(&parse_q_list(&q, LEMMA_MAX_Q)?)?;
            emit(&outcome, &output)?;
            Ok(outcome.hard_failure)
        }
        Command::Assertion { q, max_q, output } => {
            let cap = max_q.min(ASSERTION_MAX_Q);
            let q_values: Vec<u64> = parse_q_list(&q, ASSERTION_MAX_Q)?
                .into_iter()
                .filter(|&q| q <= cap)
                .collect();
            if q_values.is_empty() {
                anyhow::bail!("all requested q values exceed the cap {cap}");
            }
            let outcome = run_assertion(&q_values)?;
            emit(&outcome, &output)?;
            Ok(outcome.hard_failure)
        }
        Command::Question2 { experiment, budget, output } => {
            let cfg = ExperimentConfig::load(&experiment)?;
            let exp = cfg.build()?;
            let budget = resolve_budget(budget, exp.budget);
            let outcome = run_question2(&exp, budget)?;
            emit(&outcome, &output)?;
            Ok(outcome.hard_failure)
        }
        Command::Selftest { output } => {
            let outcome = run_selftest()?;
            emit(&outcome, &output)?;
            Ok(outcome.hard_failure)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
