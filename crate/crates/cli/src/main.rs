//! `opmod`: batch command-line front end.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when a self-check of
//! the computed result fails.

mod commands;
mod demo;
mod payload;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opmod::FieldTag;

use crate::report::{CliResult, Report};

#[derive(Parser)]
#[command(name = "opmod", version, about = "Exact operator modules, Smith forms and generalized tensor products")]
struct Cli {
    /// Ground field: q, qi or fp:<p>
    #[arg(long, global = true, value_parser = payload::parse_field)]
    field: Option<FieldTag>,

    /// JSON payload file (stdin when omitted and the command needs one)
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Print the machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,

    /// Force the first self-check to fail (testing hook)
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Standard,
    Opair,
    Subring,
    Branching,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Standard => "standard",
            Kind::Opair => "opair",
            Kind::Subring => "subring",
            Kind::Branching => "branching",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    Example61,
    Branching,
    Register,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form U·P·V = D of a polynomial matrix
    Snf,
    /// Invariant factors of an operator module or a presented module
    Decompose {
        /// Also factor into elementary divisors
        #[arg(long)]
        primary: bool,
    },
    /// Quotient space of a generalized tensor product
    Tensor {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Use the literal relation (c x, y) ~ (x, a c y) with this a
        #[arg(long, allow_hyphen_values = true)]
        scalar_a: Option<String>,
        /// Decompose the induced operator (operator-pair kind)
        #[arg(long)]
        decompose: bool,
    },
    /// Decide equivalence of two formal sequences of pairs
    Equiv {
        #[arg(long, value_enum)]
        rules: Kind,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, allow_hyphen_values = true)]
        scalar_a: Option<String>,
    },
    /// Schmidt rank of a bipartite tensor
    Schmidt {
        /// A formal sequence to linearize, instead of a JSON payload
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Fixed demonstrations
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> CliResult<Report> {
    let tag = cli.field.unwrap_or(FieldTag::Rational);
    let fault = cli.inject_fault;
    let optional_input = || cli.input.as_deref().map(|p| payload::load(Some(p))).transpose();
    match &cli.command {
        Command::Snf => commands::snf(tag, &payload::load(cli.input.as_deref())?, fault),
        Command::Decompose { primary } => {
            commands::decompose(tag, &payload::load(cli.input.as_deref())?, *primary, fault)
        }
        Command::Tensor { kind, scalar_a, decompose } => {
            let needs_input = !matches!(kind, Kind::Standard) && scalar_a.is_none();
            let input = if needs_input {
                Some(payload::load(cli.input.as_deref())?)
            } else {
                optional_input()?
            };
            commands::tensor(tag, kind.name(), input.as_ref(), scalar_a.as_deref(), *decompose, fault)
        }
        Command::Equiv { rules, lhs, rhs, scalar_a } => {
            let needs_input = !matches!(rules, Kind::Standard) && scalar_a.is_none();
            let input = if needs_input {
                Some(payload::load(cli.input.as_deref())?)
            } else {
                optional_input()?
            };
            let args = commands::EquivArgs { rules: rules.name(), lhs, rhs, scale: scalar_a.as_deref() };
            commands::equiv(tag, args, input.as_ref(), fault)
        }
        Command::Schmidt { expr } => {
            let input = match expr {
                Some(_) => None,
                None => Some(payload::load(cli.input.as_deref())?),
            };
            commands::schmidt(tag, expr.as_deref(), input.as_ref(), fault)
        }
        Command::Demo { name, random, seed } => {
            let name = match name {
                DemoName::Example61 => "example61",
                DemoName::Branching => "branching",
                DemoName::Register => "register",
            };
            demo::run(name, cli.field, &demo::DemoArgs { random: *random, seed: *seed }, fault)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.json).as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("opmod: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
