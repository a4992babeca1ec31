//! Command-line front end for computing `alpha` forms and running the checks.

/// `println!` that tolerates a closed stdout (e.g. piping into `head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

mod commands;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "alphaform", version, about = "Exact alpha forms of Feynman graphs and the identity alpha^alpha = 0")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Keep the powers of π in printed prefactors.
    #[arg(long)]
    pub with_pi: bool,
}

#[derive(Args, Clone)]
pub struct GraphInput {
    /// Graph file, JSON or plain text; `-` reads stdin.
    pub graph: PathBuf,
    /// Override the special vertex.
    #[arg(long)]
    pub v_star: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute alpha by the tree sum, and by brute force when small enough.
    Alpha {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: Output,
        /// Largest edge count for the brute-force cross-check.
        #[arg(long, default_value_t = alphaform::alpha::BRUTE_MAX_EDGES)]
        max_edges: usize,
        /// Include wall-clock timings in JSON output.
        #[arg(long)]
        timings: bool,
    },
    /// Expand alpha ∧ alpha and report every coefficient.
    WedgeCheck {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: Output,
    },
    /// First (or second) Symanzik polynomial.
    Symanzik {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        second: bool,
        /// Drop the mass terms of the second polynomial.
        #[arg(long, requires = "second")]
        massless: bool,
    },
    /// A Dodgson polynomial with rows and columns such as `e:1,2` or `v:3`.
    Dodgson {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        out: Output,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        rows: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        cols: String,
    },
    /// Run a verification suite; exit status 0 iff everything passes.
    Verify {
        #[command(subcommand)]
        suite: suites::Suite,
    },
    /// Write a graph from a named family as JSON.
    Gen {
        /// dunce-cap, multiedge, banana, path, cycle, wheel, complete,
        /// theta-subdivided, dunce-cap-subdivided, k4-doubled, k33, prism, random.
        family: String,
        /// Size parameter; `a,b,c` for theta-subdivided.
        size: Option<String>,
        #[arg(long)]
        v: Option<usize>,
        #[arg(long)]
        e: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GenFormat::Json)]
        format: GenFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The cancelling pairing of the formal sum for `L` loops.
    Certificate {
        #[arg(long, default_value_t = 2)]
        loops: usize,
        /// Print at most this many pairs.
        #[arg(long, default_value_t = 20)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenFormat {
    Json,
    Text,
}

/// Failure categories, mapped to exit codes.
pub enum Failure {
    /// A check ran and did not pass.
    Check(String),
    /// Bad arguments or unreadable input.
    Usage(String),
}

impl From<alphaform::alpha::AlphaError> for Failure {
    fn from(e: alphaform::alpha::AlphaError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<alphaform::dodgson::DodgsonError> for Failure {
    fn from(e: alphaform::dodgson::DodgsonError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<alphaform::graph::GraphError> for Failure {
    fn from(e: alphaform::graph::GraphError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn jobs() -> Option<usize> {
    std::env::var("ALPHAFORM_JOBS").ok().and_then(|s| s.parse().ok()).filter(|&n| n > 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = jobs() {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let result = match cli.command {
        Command::Alpha { input, out, max_edges, timings } => commands::alpha(&input, &out, max_edges, timings),
        Command::WedgeCheck { input, out } => commands::wedge_check(&input, &out),
        Command::Symanzik { input, out, second, massless } => commands::symanzik(&input, &out, second, massless),
        Command::Dodgson { input, out, rows, cols } => commands::dodgson(&input, &out, &rows, &cols),
        Command::Verify { suite } => suites::run(suite),
        Command::Gen { family, size, v, e, seed, format, output } => commands::gen(&family, size.as_deref(), v, e, seed, format, output),
        Command::Certificate { loops, limit, format } => commands::certificate(loops, limit, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
