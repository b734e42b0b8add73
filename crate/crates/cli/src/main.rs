use std::io;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use diagram_cli::{cmd_check, cmd_compose, cmd_idempotents, cmd_normalform, cmd_suite, CheckOptions, CliError, Strategy, SuiteOptions};

#[derive(Parser)]
#[command(name = "diagram", version, about = "Diagram categories, monoid identities and the acceptance suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose JSON values in a category (files, or - for stdin).
    Compose {
        /// P, Pd, Pd-bar, Cob, Cob-bar, Cob0, Cob0-bar, aTLe, aTL, aTLd, Ann, Annd.
        #[arg(short, long)]
        category: String,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Check an identity (name, `u=v`, or file) in a monoid.
    Check {
        identity: String,
        /// M, N, A21, SDP, Rees, P<n>, Ann<n>, aTLe<n>, Cob<n>, Cob<n>-bar, Cob<n>-fiber.
        monoid: String,
        #[arg(long, conflicts_with = "search")]
        criterion: bool,
        #[arg(long)]
        search: bool,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extreme representation and normal form of a word.
    Normalform {
        word: String,
        #[arg(long)]
        canonical: bool,
    },
    /// List the idempotents of P or Ann on n points.
    Idempotents { n: usize, category: String },
    /// Run the acceptance suite.
    Suite {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        extended: bool,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let out = &mut io::stdout().lock();
    match cli.command {
        Command::Compose { category, inputs } => cmd_compose(&category, &inputs, out),
        Command::Check { identity, monoid, criterion, search, budget, seed } => {
            let strategy = match (criterion, search) {
                (true, _) => Strategy::Criterion,
                (_, true) => Strategy::Search,
                _ => Strategy::Auto,
            };
            cmd_check(&identity, &monoid, &CheckOptions { strategy, budget, seed }, out)
        }
        Command::Normalform { word, canonical } => cmd_normalform(&word, canonical, out),
        Command::Idempotents { n, category } => cmd_idempotents(n, &category, out),
        Command::Suite { filter, json, seed, extended } => cmd_suite(&SuiteOptions { filter, json, seed, extended }, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
