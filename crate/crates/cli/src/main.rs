mod artifact;
mod commands;
mod error;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ringel::{FieldKind, PrimeField, Rationals};

use artifact::{Artifact, Verdict};
use error::Result;

#[derive(Parser, Debug)]
#[command(name = "ringel", version, about = "Diagram algebras, super tensor actions, centralisers and tilting checks")]
struct Cli {
    /// `q` or `p=<prime>`.
    #[arg(long, global = true, default_value = "q")]
    field: FieldKind,
    /// Write the JSON artifact here as well as to stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Directory for cached multiplication tables.
    #[arg(long, global = true, env = "RINGEL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Brauer,
    BrauerC,
    Walled,
    WalledC,
    Periplectic,
    PeriplecticC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Osp,
    Gl,
    Pe,
}

/// A supergroup setting: `V = (m|2n)` for osp, `(m|n)` for gl, `(n|n)` for pe.
#[derive(Args, Debug, Clone)]
pub struct Setting {
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    #[arg(short, long, default_value_t = 0)]
    pub m: usize,
    #[arg(short, long, default_value_t = 0)]
    pub n: usize,
    #[arg(short, long)]
    pub r: usize,
    /// Number of dual factors (gl only).
    #[arg(short, long, default_value_t = 0)]
    pub s: usize,
    /// Must match the superdimension when given.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(short, long)]
    pub r: usize,
    #[arg(short, long, default_value_t = 0)]
    pub s: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub delta: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis sizes of a diagram algebra.
    Dims {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short, long)]
        r: usize,
        #[arg(short, long, default_value_t = 0)]
        s: usize,
    },
    /// Commutant of the supergroup on V⊗r against the diagram algebra.
    Fft(Setting),
    /// Kernel of the diagram action.
    Sft(Setting),
    /// Invariants of V⊗r against the vectors of cup diagrams.
    Invariants(Setting),
    /// Coend dimension against the commutant of the diagram action.
    Coend {
        #[command(flatten)]
        setting: Setting,
        /// Use the algebra on all smaller objects as well.
        #[arg(long)]
        extended: bool,
    },
    /// Bicommutant of the diagram action against its image.
    DoubleCentraliser {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        extended: bool,
    },
    /// Standard, simple and cellular data of a diagram algebra.
    QhReport(AlgebraArgs),
    /// Whether the tensor module T is tilting over the extended algebra.
    Tilting(Setting),
    /// Image of the enveloping algebra against the diagram commutant.
    Envelope(Setting),
    /// Exploratory periplectic data (not a check).
    PeriplecticExplore {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        r: usize,
    },
    /// Compose two diagrams given as pair lists, `lhs` on top.
    Compose {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Sign and loop rules: osp uses delta, pe the periplectic signs.
        #[arg(long, value_enum, default_value_t = FlavorArg::Osp)]
        flavor: FlavorArg,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        delta: String,
    },
}

fn run(cli: &Cli) -> Result<Artifact> {
    let cache = cli.cache_dir.as_deref();
    match cli.field {
        FieldKind::Rationals => commands::execute(&Rationals, &cli.command, cache),
        FieldKind::PrimeField(p) => commands::execute(&PrimeField::new(p)?, &cli.command, cache),
    }
}

fn emit(cli: &Cli, artifact: &Artifact) -> Result<()> {
    let json = serde_json::to_string_pretty(artifact)?;
    if let Some(path) = &cli.output {
        std::fs::write(path, format!("{json}\n"))?;
    }
    match cli.format {
        Format::Json => println!("{json}"),
        Format::Table => print!("{}", table::render(&serde_json::to_value(artifact)?)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let artifact = match run(&cli) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for w in &artifact.warnings {
        eprintln!("warning: {w}");
    }
    if let Err(e) = emit(&cli, &artifact) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match artifact.verdict {
        Verdict::Fail => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
