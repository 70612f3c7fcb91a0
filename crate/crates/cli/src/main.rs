//! `pedal`: command-line workbench for pedal-handling DSL models.
//!
//! Every subcommand ends its standard output with `RESULT: <verdict>`.
//! Exit codes: 0 success, holds, pass or equivalent; 1 violation, fail or
//! inequivalent; 2 usage or I/O error.

mod commands;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pedal_core::equiv::Relation;
use pedal_core::lts::DEFAULT_MAX_STATES;
use pedal_core::Engine;

#[derive(Parser)]
#[command(
    name = "pedal",
    version,
    about = "Parse, explore, compare, verify and test pedal-handling models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a model.
    Check { model: PathBuf },
    /// Generate the state space and export it.
    Explore {
        model: PathBuf,
        #[arg(long, default_value = "direct")]
        engine: Engine,
        /// Aldebaran output file.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max: usize,
    },
    /// Compare two `.aut` files.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value = "strong")]
        relation: Relation,
        #[arg(long)]
        json: bool,
    },
    /// Check safety properties.
    Verify {
        model: PathBuf,
        #[arg(long)]
        props: PathBuf,
        #[arg(long, default_value = "direct")]
        engine: Engine,
        /// Also check invariants between an input and its output.
        #[arg(long)]
        include_transient: bool,
        #[arg(long)]
        json: bool,
    },
    /// Model-based testing.
    #[command(subcommand)]
    Mbt(MbtCommand),
    /// Serve a model over the adapter protocol.
    Serve {
        model: PathBuf,
        /// Fault to inject, for example `swap-output:FRFluoOn:Standby:None`.
        #[arg(long = "mutate", value_name = "SPEC")]
        mutations: Vec<String>,
        #[arg(long, conflicts_with = "port", required_unless_present = "port")]
        stdio: bool,
        #[arg(long)]
        port: Option<u16>,
    },
    /// List behavior-changing single mutations of a model.
    Mutants {
        model: PathBuf,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Step through a model interactively.
    Simulate {
        model: PathBuf,
        #[arg(long, default_value = "direct")]
        engine: Engine,
    },
}

#[derive(Subcommand)]
enum MbtCommand {
    /// Derive test cases.
    Gen {
        model: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "direct")]
        engine: Engine,
        #[arg(long)]
        json: bool,
    },
    /// Test a system under test on the fly.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    model: PathBuf,
    #[arg(
        long,
        value_name = "HOST:PORT",
        conflicts_with = "spawn",
        required_unless_present = "spawn"
    )]
    connect: Option<String>,
    /// Command line of a SUT speaking the protocol on its standard streams.
    #[arg(long, value_name = "CMD")]
    spawn: Option<String>,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Quiescence timeout.
    #[arg(long, default_value_t = 500)]
    timeout_ms: u64,
    #[arg(long, default_value = "direct")]
    engine: Engine,
    #[arg(long)]
    json: bool,
}

/// Process outcome, mapped onto the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Negative,
    Error,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { model } => commands::check(&model),
        Command::Explore {
            model,
            engine,
            out,
            dot,
            max,
        } => commands::explore(&model, engine, &out, dot.as_deref(), max),
        Command::Equiv {
            left,
            right,
            relation,
            json,
        } => commands::equiv(&left, &right, relation, json),
        Command::Verify {
            model,
            props,
            engine,
            include_transient,
            json,
        } => commands::verify(&model, &props, engine, include_transient, json),
        Command::Mbt(MbtCommand::Gen {
            model,
            depth,
            count,
            seed,
            engine,
            json,
        }) => commands::mbt_gen(&model, depth, count, seed, engine, json),
        Command::Mbt(MbtCommand::Run(a)) => commands::mbt_run(commands::RunOptions {
            model: &a.model,
            connect: a.connect.as_deref(),
            spawn: a.spawn.as_deref(),
            steps: a.steps,
            seed: a.seed,
            timeout_ms: a.timeout_ms,
            engine: a.engine,
            json: a.json,
        }),
        Command::Serve {
            model,
            mutations,
            stdio: _,
            port,
        } => commands::serve(&model, &mutations, port),
        Command::Mutants { model, max, seed } => commands::mutants(&model, max, seed),
        Command::Simulate { model, engine } => commands::simulate(&model, engine),
    };
    let status = result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        println!("RESULT: error");
        Status::Error
    });
    match status {
        Status::Success => ExitCode::SUCCESS,
        Status::Negative => ExitCode::from(1),
        Status::Error => ExitCode::from(2),
    }
}
