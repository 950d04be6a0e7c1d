use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use steered_grover::cli::{execute, Command, RunConfig, DEFAULT_SEED, DEFAULT_SHOTS};
use steered_grover::patternmatch::Variant;

#[derive(Parser)]
#[command(
    name = "steergrover",
    version,
    about = "Steered Grover search simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Single, subset, or steered Grover search with a predicted/measured trace.
    Grover(Common),
    /// Database search for the entry best matching a query.
    PatternMatch(Common),
    /// Write the Hadamard-trial Grover circuit as OpenQASM 3.
    EmitQasm(Common),
    /// Closed-form iteration count and success table.
    Predict(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    G,
    Ab,
}

#[derive(Args)]
struct Common {
    /// Number of qubits.
    #[arg(long)]
    n: Option<usize>,
    /// Index register qubits (pattern-match consistency check).
    #[arg(long)]
    r: Option<usize>,
    /// Data register qubits (pattern-match consistency check).
    #[arg(long)]
    m: Option<usize>,
    /// Marked state: index, bit string (0b prefix optional at full width), or comma list.
    #[arg(long = "target")]
    targets: Vec<String>,
    /// Override the optimal iteration count.
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    shots: u64,
    /// Database file (pattern-match).
    #[arg(long)]
    db: Option<PathBuf>,
    /// Query file (pattern-match).
    #[arg(long)]
    query: Option<PathBuf>,
    /// Trial-state file for a steered grover search.
    #[arg(long)]
    steer: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "g")]
    variant: VariantArg,
    /// Write OpenQASM 3 to this path.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search space size N (predict).
    #[arg(long)]
    size: Option<u64>,
    /// Marked count M (predict).
    #[arg(long)]
    marked: Option<u64>,
    /// Trial angle in radians (predict).
    #[arg(long)]
    theta: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, a) = match cli.command {
        Cmd::Grover(a) => (Command::Grover, a),
        Cmd::PatternMatch(a) => (Command::PatternMatch, a),
        Cmd::EmitQasm(a) => (Command::EmitQasm, a),
        Cmd::Predict(a) => (Command::Predict, a),
    };
    let cfg = RunConfig {
        command,
        n: a.n,
        r: a.r,
        m: a.m,
        targets: a.targets,
        iterations: a.iterations,
        seed: a.seed,
        shots: a.shots,
        db: a.db,
        query: a.query,
        steer: a.steer,
        variant: match a.variant {
            VariantArg::G => Variant::GForm,
            VariantArg::Ab => Variant::AbForm,
        },
        emit: a.emit,
        size: a.size,
        marked: a.marked,
        theta: a.theta,
    };
    let report = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let json = report.to_json();
    let written = match &a.out {
        Some(path) => std::fs::write(path, &json).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(json.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    eprintln!("{}", report.summary());
    ExitCode::SUCCESS
}
