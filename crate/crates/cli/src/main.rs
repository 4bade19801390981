use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rootforge_cli::commands::{self, FieldChoice, PrimeSelection, Surface};
use rootforge_cli::report::{Format, Report};
use rootforge_cli::CliError;
use rootforge_core::subsystem::DEFAULT_MAX_RANK;

#[derive(Parser)]
#[command(name = "rootforge", version, about = "Exact root-system and del Pezzo lattice checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    out: OutFormat,
    /// Seed for randomized property sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    F2,
    F4,
}

#[derive(Subcommand)]
enum Command {
    /// (-2)- and (-1)-classes of a Picard lattice.
    Roots {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=9), required_unless_present = "quadric", conflicts_with = "quadric")]
        degree: Option<u32>,
        /// P1 x P1 instead of a blow-up of P2.
        #[arg(long)]
        quadric: bool,
    },
    /// Cup-matrix surjectivity per characteristic.
    Cupcheck {
        type_pos: Option<String>,
        #[arg(long = "type")]
        type_flag: Option<String>,
        #[arg(long, default_value = "auto")]
        primes: PrimeSelection,
    },
    /// Root chains between comparable positive roots.
    Chain {
        type_pos: Option<String>,
        #[arg(long = "type")]
        type_flag: Option<String>,
        /// Simple-root coefficients of the lower root, comma separated.
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Fundamental cycle and divisor sequence per component.
    Cycle {
        type_pos: Option<String>,
        #[arg(long = "type")]
        type_flag: Option<String>,
    },
    /// The ten-dimensional D4 module in characteristic 2.
    D4 {
        #[arg(long, value_enum, ignore_case = true, default_value_t = FieldArg::F4)]
        field: FieldArg,
    },
    /// Weyl orbits of sub-root-system bases.
    Embed { ambient: String, sub: String },
    /// Every claim, one verdict each.
    VerifyPaper,
}

fn pick_type(pos: Option<String>, flag: Option<String>) -> Result<rootforge_core::DynkinType, CliError> {
    match (pos, flag) {
        (Some(_), Some(_)) => Err(CliError::Usage("give the type once".into())),
        (Some(t), None) | (None, Some(t)) => commands::parse_type(&t),
        (None, None) => Err(CliError::Usage("a root-system type is required".into())),
    }
}

fn max_rank() -> Result<usize, CliError> {
    match std::env::var("ROOTFORGE_MAX_RANK") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("ROOTFORGE_MAX_RANK must be a number, got '{v}'"))),
        Err(_) => Ok(DEFAULT_MAX_RANK),
    }
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Roots { .. } => "roots",
        Command::Cupcheck { .. } => "cupcheck",
        Command::Chain { .. } => "chain",
        Command::Cycle { .. } => "cycle",
        Command::D4 { .. } => "d4",
        Command::Embed { .. } => "embed",
        Command::VerifyPaper => "verify-paper",
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Roots { degree, quadric } => {
            let s = if quadric { Surface::Quadric } else { Surface::Blowup(degree.expect("clap requires it")) };
            commands::cmd_roots(s)
        }
        Command::Cupcheck { type_pos, type_flag, primes } => commands::cmd_cupcheck(&pick_type(type_pos, type_flag)?, &primes),
        Command::Chain { type_pos, type_flag, from, to } => {
            commands::cmd_chain(&pick_type(type_pos, type_flag)?, from.as_deref(), to.as_deref())
        }
        Command::Cycle { type_pos, type_flag } => commands::cmd_cycle(&pick_type(type_pos, type_flag)?),
        Command::D4 { field } => commands::cmd_d4(match field {
            FieldArg::F2 => FieldChoice::F2,
            FieldArg::F4 => FieldChoice::F4,
        }),
        Command::Embed { ambient, sub } => {
            commands::cmd_embed(&commands::parse_type(&ambient)?, &commands::parse_type(&sub)?, max_rank()?)
        }
        Command::VerifyPaper => commands::cmd_verify_paper(cli.seed, max_rank()?),
    }
}

fn main() {
    let cli = Cli::parse();
    let format = match cli.out {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
        OutFormat::Text => Format::Text,
    };
    let command = name(&cli.command);
    let report = match run(cli) {
        Ok(r) => r,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("rootforge: {e}");
            std::process::exit(e.exit_code());
        }
        Err(e) => Report::failed(command, json!({}), e.to_string()),
    };
    print!("{}", report.render(format));
    std::process::exit(report.exit_code());
}
