//! `bayesent`: entailment queries, world inspection, the classifier
//! pipeline and the invariant suites from the command line.
//!
//! Machine-readable output goes to stdout, diagnostics to stderr. Exit
//! codes: 0 success, 1 usage error, 2 input error, 3 suite failure.

mod check;
mod classify;
mod entail;
mod failure;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use failure::Failure;

#[derive(Parser)]
#[command(
    name = "bayesent",
    version,
    about = "Bayesian entailment over propositional logic and categorical data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether premises entail a query under one of the consequence relations.
    Entail(entail::EntailArgs),
    /// List the models and the maximally satisfying worlds of a knowledge base.
    Worlds(entail::WorldsArgs),
    /// Fit the classifier on one random split and save the model.
    Train(classify::TrainArgs),
    /// Score the rows of a CSV file with a saved model.
    Predict(classify::PredictArgs),
    /// Evaluate a saved model, or run the repeated-split experiment.
    Evaluate(classify::EvaluateArgs),
    /// Run a randomized invariant suite.
    Check(check::CheckArgs),
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Entail(a) => entail::entail(a),
        Command::Worlds(a) => entail::worlds(a),
        Command::Train(a) => classify::train(a),
        Command::Predict(a) => classify::predict(a),
        Command::Evaluate(a) => classify::evaluate(a),
        Command::Check(a) => check::check(a),
    }
}

fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not errors.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.stdout() {
                emit(out);
            }
            eprintln!("bayesent: {f}");
            ExitCode::from(f.code())
        }
    }
}
