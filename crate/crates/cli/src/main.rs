//! `hopfcat`: run task documents.
//!
//! Exit status 0 when every verdict passes, 1 on a computation mismatch,
//! 2 on invalid input.

mod document;
mod tasks;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use document::{build, parse_document, HomMode, TaskSpec};
use tasks::{run_all, Status};

#[derive(Parser)]
#[command(name = "hopfcat", version, about = "Hom, Ext and spectral sequence computations from JSON task documents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task listed in the document.
    Run {
        #[command(flatten)]
        common: Common,
    },
    /// Validate the Hopf algebra, the category and all modules.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Basis of a Hom space.
    Hom {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
        /// Equivariant morphisms, compared with the smash-product side.
        #[arg(long, conflicts_with = "colinear")]
        equivariant: bool,
        /// Colinear morphisms of relative Hopf modules.
        #[arg(long)]
        colinear: bool,
    },
    /// Ext groups in one of Mod-C, Mod-C#H, D-Mod, DM^H.
    Ext {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        context: String,
        #[arg(long)]
        degree: usize,
    },
    /// A Grothendieck spectral sequence: T3_15, T4_18, T4_19, T5_9, T5_17.
    Ss {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, tasks) = match cli.command {
        Command::Run { common } => (common, None),
        Command::Check { common } => (common, Some(vec![TaskSpec::Check {}])),
        Command::Hom { common, pair, equivariant, colinear } => {
            let mode = if equivariant {
                HomMode::Equivariant
            } else if colinear {
                HomMode::Colinear
            } else {
                HomMode::Plain
            };
            (common, Some(vec![TaskSpec::Hom { source: pair.source, target: pair.target, mode }]))
        }
        Command::Ext { common, pair, context, degree } => {
            (common, Some(vec![TaskSpec::Ext { source: pair.source, target: pair.target, context, degree }]))
        }
        Command::Ss { common, theorem, pair, degree } => {
            (common, Some(vec![TaskSpec::Ss { theorem, source: pair.source, target: pair.target, degree }]))
        }
    };
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => return invalid(&format!("{}: {e}", common.file.display())),
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => return invalid(&e.0),
    };
    let workspace = match build(&doc) {
        Ok(w) => w,
        Err(e) => return invalid(&e.0),
    };
    let tasks = tasks.unwrap_or_else(|| doc.tasks.clone());
    let run = run_all(&workspace, &tasks);
    let body = match common.format {
        Format::Text => run.text,
        Format::Json => serde_json::to_string_pretty(&run.json).expect("report serializes") + "\n",
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    ExitCode::from(run.status.code() as u8)
}

fn invalid(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(Status::Invalid.code() as u8)
}
