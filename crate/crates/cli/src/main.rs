mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::report::{CliError, Report};

#[derive(Parser)]
#[command(
    name = "monomideal",
    version,
    about = "LCM-duals, Ferrers decompositions, fiber relations and cellular resolutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// LCM-dual of a monomial ideal, with height and double-dual check.
    Dual {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        json: bool,
    },
    /// Ferrers and generalized Ferrers ideals and the decomposition of the dual.
    Ferrers {
        /// Partition, e.g. `4,4,3`.
        #[arg(long)]
        lambda: String,
        /// Shift vector for a generalized Ferrers ideal, e.g. `0,1,2`.
        #[arg(long)]
        mu: Option<String>,
        /// Substitute y_i -> x_i.
        #[arg(long)]
        specialize: bool,
        /// List the primary components of the dual.
        #[arg(long)]
        decompose: bool,
        /// Recompute the dual three ways and compare.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cellular resolution of the dual of a strongly stable ideal.
    Resolve {
        #[arg(long)]
        lambda: String,
        /// Acyclicity, minimality, closed forms and the multigraded oracle.
        #[arg(long)]
        verify: bool,
        /// Print the complex as a Graphviz digraph and nothing else.
        #[arg(long, conflicts_with_all = ["json", "verify"])]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare special fiber relations of an ideal and its dual.
    Fiber {
        #[command(flatten)]
        ideal: OptionalIdealArg,
        #[arg(long, conflicts_with = "ideal")]
        lambda: Option<String>,
        /// Highest relation degree to compare.
        #[arg(long, default_value_t = 3)]
        rmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Randomized consistency checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct IdealArg {
    /// Comma-separated monomials such as `x1^2*x2, x3`, or the JSON form.
    #[arg(long)]
    ideal: String,
    /// Number of variables; inferred from the input when omitted.
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Args)]
struct OptionalIdealArg {
    #[arg(long, required_unless_present = "lambda")]
    ideal: Option<String>,
    #[arg(long, requires = "ideal")]
    vars: Option<usize>,
}

fn run(cli: Cli) -> (Result<Report, CliError>, bool) {
    match cli.command {
        Command::Dual { ideal, json } => (commands::dual(&ideal.ideal, ideal.vars), json),
        Command::Ferrers { lambda, mu, specialize, decompose, verify, json } => {
            (commands::ferrers(&lambda, mu.as_deref(), specialize, decompose, verify), json)
        }
        Command::Resolve { lambda, verify, dot, json } => (commands::resolve(&lambda, verify, dot), json),
        Command::Fiber { ideal, lambda, rmax, json } => {
            let source = match (ideal.ideal, lambda) {
                (_, Some(l)) => commands::FiberSource::Lambda(l),
                (Some(text), None) => commands::FiberSource::Ideal(text, ideal.vars),
                (None, None) => unreachable!("clap requires one of --ideal or --lambda"),
            };
            (commands::fiber(source, rmax), json)
        }
        Command::Selftest { seed, samples, json } => (commands::selftest(seed, samples), json),
    }
}

fn main() -> ExitCode {
    let (result, json) = run(Cli::parse());
    let (text, code) = report::render(result, json);
    print!("{text}");
    ExitCode::from(code)
}
