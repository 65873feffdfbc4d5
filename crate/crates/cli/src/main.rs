//! `parity-partitions`: exact counts, identity checks and asymptotic reports
//! for partitions whose parts are separated by parity.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use parity_partitions::precision::lemmas::Lemma;
use parity_partitions::FamilyCode;

use crate::commands::Outcome;
use crate::config::{Format, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "parity-partitions",
    version,
    about = "Partitions with parts separated by parity"
)]
struct Cli {
    /// Series order (coefficients q^0 .. q^{N-1}); each command has its own default.
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Largest n checked by brute-force enumeration.
    #[arg(long, global = true, default_value_t = 40)]
    oracle_bound: u32,

    /// Working precision in bits for floating-point reports.
    #[arg(
        long,
        global = true,
        env = "PARITY_PARTITIONS_PRECISION",
        default_value_t = 128
    )]
    precision: u32,

    /// Ray angles in radians, comma separated.
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    alpha: Option<Vec<f64>>,

    /// Ray magnitudes |z|, comma separated and strictly decreasing.
    #[arg(long, global = true, value_delimiter = ',')]
    radii: Option<Vec<f64>>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Restrict to a family: `sup=ou,sub=eu`, `ou/eu` or `eu^ou`. Repeatable.
    #[arg(long = "family", global = true, value_parser = parse_family)]
    families: Vec<FamilyCode>,

    #[command(subcommand)]
    command: Command,
}

fn parse_family(s: &str) -> Result<FamilyCode, String> {
    s.parse()
        .map_err(|e: parity_partitions::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LemmaArg {
    Euler,
    InverseEulerSquare,
    Theta,
    Sigma,
    MockF,
    QMinusQ,
}

impl From<LemmaArg> for Lemma {
    fn from(a: LemmaArg) -> Lemma {
        match a {
            LemmaArg::Euler => Lemma::Euler,
            LemmaArg::InverseEulerSquare => Lemma::InverseEulerSquare,
            LemmaArg::Theta => Lemma::Theta,
            LemmaArg::Sigma => Lemma::SigmaAtMinusOne,
            LemmaArg::MockF => Lemma::MockFAtMinusQ,
            LemmaArg::QMinusQ => Lemma::QMinusQ,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficient table of the selected generating functions (default order 19).
    Coeffs,
    /// Generating-function coefficients against brute-force enumeration.
    OracleCheck,
    /// Monotonicity of the coefficient sequences, with the stride-2 split.
    Monotone,
    /// Injection maps checked for well-definedness and injectivity.
    Injections {
        #[arg(long, default_value_t = 30)]
        bound: u32,
    },
    /// Exact counts against their asymptotic main terms.
    Asym {
        #[arg(long, value_delimiter = ',', default_values_t = [500u64, 1000, 2000, 4000])]
        n: Vec<u64>,
    },
    /// Tauberian parameters against the closed-form main terms on a grid to 10^6.
    Consistency,
    /// Trend checks of the limits near q = 1 along rays.
    Lemmas {
        /// Lemmas to run; all if omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        lemma: Vec<LemmaArg>,
        /// Also check the generating-function asymptotics of the selected families.
        #[arg(long)]
        genfun: bool,
    },
    /// Euler-Maclaurin error orders measured against direct summation.
    Em {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
        terms: Vec<usize>,
    },
    /// Every alternative series representation, compared exactly (default order 500).
    Identities,
    /// The eight-term strict inequality chain and its empirical starting point.
    Chain,
}

fn run(cli: &Cli, cfg: &RunConfig) -> commands::CmdResult {
    match &cli.command {
        Command::Coeffs => commands::coeffs(cfg),
        Command::OracleCheck => commands::oracle_check(cfg),
        Command::Monotone => commands::monotone(cfg),
        Command::Injections { bound } => commands::injections(cfg, *bound),
        Command::Asym { n } => commands::asym(cfg, n),
        Command::Consistency => commands::consistency(cfg),
        Command::Lemmas { lemma, genfun } => {
            let which: Vec<Lemma> = if lemma.is_empty() {
                Lemma::ALL.to_vec()
            } else {
                lemma.iter().map(|&l| l.into()).collect()
            };
            commands::lemmas(cfg, &which, *genfun)
        }
        Command::Em { dim, terms } => commands::em(cfg, *dim, terms),
        Command::Identities => commands::identities(cfg),
        Command::Chain => commands::chain(cfg),
    }
}

fn emit(cfg: &RunConfig, out: &Outcome) -> std::io::Result<()> {
    let text = match cfg.format {
        Format::Csv => &out.csv,
        Format::Json => &out.json,
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        order: cli.order,
        oracle_bound: cli.oracle_bound,
        precision: cli.precision,
        alphas: cli.alpha.clone(),
        radii: cli.radii.clone(),
        format: cli.format,
        output: cli.output.clone(),
        families: cli.families.clone(),
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let out = match run(&cli, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cfg, &out) {
        eprintln!("error: could not write output: {e}");
        return ExitCode::from(2);
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("one or more checks failed");
        ExitCode::from(1)
    }
}
