use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gaotree_cli::{
    cmd_chain, cmd_check, cmd_decompose, cmd_gen, cmd_oracle, cmd_verify, CommandOutput,
    OutputFormat, EXIT_INPUT,
};

/// Layered convex combinations of Gao-trees for points of the
/// spanning-tree polytope, with exact rational arithmetic.
#[derive(Parser)]
#[command(name = "gaotree", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format of reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Tsv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Human => OutputFormat::Human,
            Format::Tsv => OutputFormat::Tsv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the chain-point conditions of an instance.
    Verify { instance: PathBuf },
    /// Print the chain of narrow cuts with exact sizes.
    Chain { instance: PathBuf },
    /// Compute the layered decomposition of an instance.
    Decompose { instance: PathBuf },
    /// Verify a decomposition file against its instance.
    Check {
        instance: PathBuf,
        decomposition: PathBuf,
    },
    /// Run the brute-force agreement sweep over a seeded corpus.
    Oracle {
        /// Corpus seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Check only the first N corpus instances.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Emit a fixture (a, b, c) or a corpus sample instance.
    Gen {
        what: String,
        /// Corpus seed (corpus only).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Corpus sample index (corpus only).
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

fn read(path: &PathBuf) -> Result<String, CommandOutput> {
    std::fs::read_to_string(path).map_err(|e| CommandOutput {
        exit_code: EXIT_INPUT,
        text: format!("error: cannot read {}: {e}\n", path.display()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.into();
    let output = match &cli.command {
        Command::Verify { instance } => match read(instance) {
            Ok(text) => cmd_verify(&text, format),
            Err(out) => out,
        },
        Command::Chain { instance } => match read(instance) {
            Ok(text) => cmd_chain(&text, format),
            Err(out) => out,
        },
        Command::Decompose { instance } => match read(instance) {
            Ok(text) => cmd_decompose(&text, format),
            Err(out) => out,
        },
        Command::Check {
            instance,
            decomposition,
        } => match read(instance).and_then(|i| read(decomposition).map(|d| (i, d))) {
            Ok((i, d)) => cmd_check(&i, &d, format),
            Err(out) => out,
        },
        Command::Oracle { seed, limit } => cmd_oracle(*seed, *limit, format),
        Command::Gen { what, seed, index } => cmd_gen(what, *seed, *index),
    };
    print!("{}", output.text);
    ExitCode::from(output.exit_code as u8)
}
