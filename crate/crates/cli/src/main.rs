//! `heyting`: every module of the workbench as a subcommand.
//!
//! Exit status 0 means success or a true verdict, 1 a false verdict,
//! refutation or rejected input object, and 2 a usage error or unreadable
//! input. `--json` switches the report to JSON and `--manifest PATH` writes
//! a [`report::RunManifest`] next to it.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{RunManifest, Status};

#[derive(Parser)]
#[command(
    name = "heyting",
    version,
    about = "Kripke models, realizability, coding and proofs for intuitionistic arithmetic"
)]
struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,

    /// Write a run manifest (input digests, parameters, outcome) to this file
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula or term and print it in canonical form
    Parse {
        text: String,
        /// Read a term instead of a formula
        #[arg(long)]
        term: bool,
    },
    /// Print the syntactic classes of a formula
    Classify { formula: String },
    /// Goedel numbers of formulas and terms, and back
    Encode(EncodeArgs),
    /// Register machine programs
    #[command(subcommand)]
    Machine(MachineCommand),
    /// Realizability translation and bounded checking
    #[command(subcommand)]
    Realize(RealizeCommand),
    /// Kripke model files and forcing
    #[command(subcommand)]
    Kripke(KripkeCommand),
    /// Model transformations
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Natural deduction proofs
    #[command(subcommand)]
    Proof(ProofCommand),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct EncodeArgs {
    /// Formula to encode
    #[arg(long)]
    formula: Option<String>,
    /// Term to encode
    #[arg(long)]
    term: Option<String>,
    /// Decode a formula code
    #[arg(long, value_name = "N")]
    decode: Option<String>,
    /// Decode a term code
    #[arg(long, value_name = "N")]
    decode_term: Option<String>,
    /// Print the tag table
    #[arg(long)]
    dump_tags: bool,
}

#[derive(Subcommand)]
enum MachineCommand {
    /// Run a program file on an input
    Run {
        #[arg(long)]
        program: PathBuf,
        #[arg(long, default_value_t = 0)]
        input: u64,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: u64,
        /// Also print every configuration
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand)]
enum RealizeCommand {
    /// Print `x r phi`
    Translate {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Check whether a number realizes a sentence
    Check {
        /// The realizer as a decimal number
        #[arg(long, conflicts_with = "program", required_unless_present = "program")]
        realizer: Option<String>,
        /// A program file whose code is the realizer
        #[arg(long)]
        program: Option<PathBuf>,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: u64,
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
}

#[derive(Subcommand)]
enum KripkeCommand {
    /// Check the structural conditions of a model file
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Decide whether a node forces a sentence
    Force {
        #[arg(long)]
        model: PathBuf,
        /// Node name
        #[arg(long)]
        node: String,
        #[arg(long)]
        formula: String,
    },
}

#[derive(Subcommand)]
enum TransformCommand {
    /// Unravel a rooted model into a tree
    Unravel {
        #[arg(long)]
        model: PathBuf,
    },
    /// Put a constant cone above every leaf
    Pad {
        #[arg(long)]
        model: PathBuf,
    },
    /// The node a binary string maps to, and optionally forcing there
    Binary {
        /// A padded tree model
        #[arg(long)]
        model: PathBuf,
        /// Binary string, `""` for the empty string
        #[arg(long)]
        eval: String,
        #[arg(long)]
        formula: Option<String>,
    },
    /// Compare the images of extensions of a string with the cone above it
    Cone {
        #[arg(long)]
        model: PathBuf,
        /// Binary string
        #[arg(long)]
        node: String,
        #[arg(long)]
        depth: usize,
    },
    /// Glue rooted models under a new root
    Glue {
        /// Component model files (repeat the flag for each)
        #[arg(long, required = true)]
        roots: Vec<PathBuf>,
        /// A one-node model file whose structure becomes the new root
        #[arg(long)]
        structure: PathBuf,
    },
}

#[derive(Subcommand)]
enum ProofCommand {
    /// Check a proof file against a theory
    Check {
        #[arg(long)]
        file: PathBuf,
        /// Q, iPRA, HA, HA+ECT0 or custom
        #[arg(long, default_value = "HA")]
        theory: String,
        /// Extra axioms, one formula per line
        #[arg(long)]
        extra: Option<PathBuf>,
    },
    /// Print the code of a proof file
    Encode {
        #[arg(long)]
        file: PathBuf,
    },
    /// Join a proof of A and a proof of A -> B into a proof of B
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let mut manifest = RunManifest::new(&name);
    manifest.param("format", if cli.json { "json" } else { "text" });
    let (status, summary, out) = match commands::run(&cli.command, &mut manifest) {
        Ok(report) => {
            let out = report.render(&name, cli.json);
            (report.status, report.summary, out)
        }
        Err(e) => {
            let out = if cli.json {
                let doc =
                    serde_json::json!({"command": name, "status": Status::Error, "error": e.0});
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("reports serialize")
                )
            } else {
                String::new()
            };
            eprintln!("error: {e}");
            (Status::Error, e.0, out)
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(Status::Error.code());
    }
    if let Some(path) = &cli.manifest {
        manifest.finish(status.code(), &summary, &out);
        let text = serde_json::to_string_pretty(&manifest).expect("manifests serialize");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(Status::Error.code());
        }
    }
    ExitCode::from(status.code())
}

impl Command {
    fn name(&self) -> String {
        let (group, sub) = match self {
            Command::Parse { .. } => ("parse", None),
            Command::Classify { .. } => ("classify", None),
            Command::Encode(_) => ("encode", None),
            Command::Machine(MachineCommand::Run { .. }) => ("machine", Some("run")),
            Command::Realize(c) => (
                "realize",
                Some(match c {
                    RealizeCommand::Translate { .. } => "translate",
                    RealizeCommand::Check { .. } => "check",
                }),
            ),
            Command::Kripke(c) => (
                "kripke",
                Some(match c {
                    KripkeCommand::Validate { .. } => "validate",
                    KripkeCommand::Force { .. } => "force",
                }),
            ),
            Command::Transform(c) => (
                "transform",
                Some(match c {
                    TransformCommand::Unravel { .. } => "unravel",
                    TransformCommand::Pad { .. } => "pad",
                    TransformCommand::Binary { .. } => "binary",
                    TransformCommand::Cone { .. } => "cone",
                    TransformCommand::Glue { .. } => "glue",
                }),
            ),
            Command::Proof(c) => (
                "proof",
                Some(match c {
                    ProofCommand::Check { .. } => "check",
                    ProofCommand::Encode { .. } => "encode",
                    ProofCommand::Compose { .. } => "compose",
                }),
            ),
        };
        match sub {
            Some(s) => format!("{group} {s}"),
            None => group.to_string(),
        }
    }
}
