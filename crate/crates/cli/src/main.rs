//! `gbm`: JSON front end for the exact moment library.
//!
//! Colors are 0-based; for two colors, 0 is the orientation-reversing color and 1 the
//! orientation-preserving one. Exit codes: 0 all checks pass, 1 some check failed,
//! 2 usage or malformed input, 3 capacity exceeded or outside the supported scope.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use report::RunReport;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Capacity(String),
}

impl From<gbm_core::Error> for CliError {
    fn from(e: gbm_core::Error) -> Self {
        match e {
            gbm_core::Error::Invalid(_) => CliError::Usage(e.to_string()),
            gbm_core::Error::Capacity(_) | gbm_core::Error::Unsupported(_) => CliError::Capacity(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "gbm", version, about = "Exact moments of colored generalized Brownian motions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List pair partitions of [2m] with k colors.
    Enumerate(EnumerateArgs),
    /// Cycle graph of a two-colored pair partition.
    Graph(GraphArgs),
    /// Evaluate a t-function on a partition.
    Eval(EvalArgs),
    /// Fock-space vacuum expectation of a word or partition.
    Oracle(OracleArgs),
    /// Formula against both oracles over all small two-colored partitions.
    Compare(CompareArgs),
    /// Error curve of the averaged Q-product against its limit.
    Clt(CltArgs),
    /// Smallest Gram eigenvalue over a broken-diagram family.
    PdCheck(PdArgs),
    /// sum over S_{|N|+1} of N^{cycles}, which must vanish for N < 0.
    Stirling(StirlingArgs),
}

#[derive(Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub pairs: usize,
    #[arg(long, default_value_t = 1)]
    pub colors: usize,
    /// Report only the count.
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Args, Serialize)]
pub struct GraphArgs {
    /// Partition JSON (file or inline).
    #[arg(long)]
    pub partition: String,
}

#[derive(Args, Serialize)]
pub struct EvalArgs {
    #[arg(long, value_parser = ["thoma", "tn", "tensor", "free"])]
    pub t: String,
    #[arg(long = "N", allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub n: Option<i64>,
    /// Comma-separated rationals.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    /// Tensor factor on color 0: free, tn:N or thoma:alpha;beta.
    #[arg(long, allow_hyphen_values = true)]
    pub minus: Option<String>,
    /// Tensor factor on color 1.
    #[arg(long, allow_hyphen_values = true)]
    pub plus: Option<String>,
    #[arg(long)]
    pub partition: String,
}

#[derive(Args, Serialize)]
pub struct OracleArgs {
    /// Word JSON: [{"b":0,"i":1,"k":"a*"}, ...], applied right to left.
    #[arg(long, conflicts_with = "partition", required_unless_present = "partition")]
    pub word: Option<String>,
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long = "N", allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub n: i64,
}

#[derive(Args, Serialize)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 3)]
    pub max_pairs: usize,
    #[arg(long = "N", allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub n: i64,
}

#[derive(Args, Serialize)]
pub struct CltArgs {
    /// Symmetric matrix JSON with integer or "p/q" entries.
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub q: String,
    #[arg(long = "V")]
    #[serde(rename = "V")]
    pub v: String,
    #[arg(long, value_parser = ["free", "tn"], default_value = "free")]
    pub t: String,
    #[arg(long = "N", allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub n_param: Option<i64>,
    #[arg(long = "n", value_delimiter = ',', default_value = "4,8,16,32")]
    #[serde(rename = "n")]
    pub ns: Vec<usize>,
}

#[derive(Args, Serialize)]
pub struct PdArgs {
    #[arg(long, default_value_t = 4)]
    pub max_points: usize,
    #[arg(long, default_value_t = 2)]
    pub colors: usize,
    #[arg(long, value_parser = ["tn", "qproduct", "free"], default_value = "tn")]
    pub t: String,
    #[arg(long = "N", allow_hyphen_values = true, default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: i64,
    /// For `--t qproduct`: the matrix coupling the colors, one t_N factor per color.
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub q: Option<String>,
}

#[derive(Args, Serialize)]
pub struct StirlingArgs {
    #[arg(long = "N", allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub n: i64,
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(s) = std::env::var("GBM_THREADS") {
        let n: usize = s.parse().map_err(|_| CliError::Usage(format!("GBM_THREADS must be a number, got {s:?}")))?;
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run(cli: Cli) -> Result<RunReport, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Graph(a) => commands::graph(&a),
        Command::Eval(a) => commands::eval(&a),
        Command::Oracle(a) => commands::oracle(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::Clt(a) => commands::clt(&a),
        Command::PdCheck(a) => commands::pd_check(&a),
        Command::Stirling(a) => commands::stirling(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match run(cli) {
        Ok(mut report) => {
            report.wall_time_s = start.elapsed().as_secs_f64();
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe on stdout is not an error of the computation
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
