use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tsmult_cli::commands::{self, Suite};
use tsmult_cli::{parse, CliError, Config, Output, OutputFormat};
use tsmult_core::oracles::McConfig;
use tsmult_core::{Germ, Rat};

/// Multiplier ideals, microlocal V-filtrations and spectra of diagonal
/// germs such as "x^2 + y^3 + z^5". In germ expressions `+` is always a
/// Thom-Sebastiani sum over distinct variables.
#[derive(Parser, Debug)]
#[command(name = "tsmult", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Upper end of the range [0, W) for microlocal chains.
    #[arg(long, global = true, env = "TSMULT_WINDOW", default_value = "2", value_parser = parse_rat)]
    window: Rat,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the Monte-Carlo oracle.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte-Carlo samples per shell.
    #[arg(long, global = true)]
    samples: Option<u32>,

    /// Monte-Carlo dyadic shells.
    #[arg(long, global = true)]
    shells: Option<u32>,

    /// Box bound for brute-force membership checks.
    #[arg(long, global = true, default_value_t = 10)]
    box_bound: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Log canonical threshold.
    Lct { germ: String },
    /// Jumping coefficients (microlocal and usual) below the window.
    Jc { germ: String },
    /// Multiplier ideal J(αX), or the microlocal V-filtration with --microlocal.
    Ideal {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha: Rat,
        #[arg(long)]
        microlocal: bool,
        germ: String,
    },
    /// Graded piece of the microlocal filtration at α with product bases.
    Graded {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha: Rat,
        germ: String,
    },
    /// Hodge spectrum.
    Spectrum { germ: String },
    /// Eigenvalue multiplicities of vanishing cycles, α in (-1, 0].
    Eigen { germ: String },
    /// Monomial basis and dimension of the irrationality quotient.
    Irrationality { germ: String },
    /// Cross-oracle verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        germ: Option<String>,
    },
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    s.parse().map_err(|e: tsmult_core::Error| e.to_string())
}

fn germ_of(s: &str) -> Result<Germ, CliError> {
    Ok(parse(s)?.to_germ()?)
}

fn run(cli: &Cli, cfg: &Config) -> Result<Output, CliError> {
    cfg.validate()?;
    match &cli.command {
        Command::Lct { germ } => Ok(commands::lct(&germ_of(germ)?)),
        Command::Jc { germ } => commands::jc(&germ_of(germ)?, cfg),
        Command::Ideal { alpha, microlocal, germ } => commands::ideal(&germ_of(germ)?, *alpha, *microlocal, cfg),
        Command::Graded { alpha, germ } => commands::graded(&germ_of(germ)?, *alpha, cfg),
        Command::Spectrum { germ } => Ok(commands::spectrum(&germ_of(germ)?)),
        Command::Eigen { germ } => commands::eigen(&germ_of(germ)?),
        Command::Irrationality { germ } => commands::irrationality(&germ_of(germ)?),
        Command::Verify { suite, germ } => {
            let g = germ.as_deref().map(germ_of).transpose()?;
            Ok(commands::verify(*suite, g.as_ref(), cfg))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let defaults = McConfig::default();
    let cfg = Config {
        window: cli.window,
        box_bound: cli.box_bound,
        mc: McConfig {
            seed: cli.seed.unwrap_or(defaults.seed),
            shells: cli.shells.unwrap_or(defaults.shells),
            samples: cli.samples.unwrap_or(defaults.samples),
            margin: defaults.margin,
        },
        output: if cli.json { OutputFormat::Json } else { OutputFormat::Text },
    };
    match run(&cli, &cfg) {
        Ok(out) => {
            match cfg.output {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                OutputFormat::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            if cfg.output == OutputFormat::Json {
                println!("{}", serde_json::json!({"error": e.to_string(), "exit_code": e.exit_code()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
