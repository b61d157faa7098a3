//! `vsd` — build, score, and diversify visual spatial description datasets.

mod commands;
mod evaluate;
mod predictions;
mod transport;

use clap::{Parser, Subcommand};
use commands::ScoreInputs;
use std::path::PathBuf;
use std::process::ExitCode;
use vsd_core::TaskId;

#[derive(Parser)]
#[command(
    name = "vsd",
    version,
    about = "Visual spatial description datasets: build instruction-following records, \
             run the geometric baseline, evaluate predictions, compose ranking scores, \
             and diversify descriptions via a chat endpoint."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a corpus JSONL into instruction-following records
    Build {
        /// Corpus JSONL path
        corpus: PathBuf,
        /// Build config JSON (seed, stop_token, template_pools)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output records path
        #[arg(long)]
        out: PathBuf,
        /// Sampling seed (overrides the config file)
        #[arg(long)]
        seed: Option<u64>,
        /// Emit the plain-text conversation rendering instead of JSONL
        #[arg(long)]
        plain: bool,
        /// Skip malformed corpus lines instead of failing
        #[arg(long)]
        lenient: bool,
    },
    /// Predict relation labels from bounding-box geometry
    Baseline {
        /// Corpus JSONL path
        corpus: PathBuf,
        /// Output predictions path
        #[arg(long)]
        out: PathBuf,
        /// Subject-coverage fraction that counts as containment
        #[arg(long, default_value_t = 0.9)]
        containment_threshold: f64,
        /// Pixel gap under which boxes count as touching
        #[arg(long, default_value_t = 10)]
        contact_tolerance: u32,
        /// Skip malformed corpus lines instead of failing
        #[arg(long)]
        lenient: bool,
    },
    /// Evaluate a predictions file against a gold corpus
    Eval {
        /// Task to score: 1, 2, or 3
        #[arg(long)]
        task: String,
        /// Gold corpus JSONL path
        gold: PathBuf,
        /// Predictions JSONL path
        predictions: PathBuf,
        /// Report macro-averaged F1 instead of micro (task 1 only)
        #[arg(long)]
        macro_f1: bool,
    },
    /// Compose the five per-task metrics into the ranking score
    Score {
        #[arg(long)]
        f1: Option<f64>,
        #[arg(long)]
        bleu4: Option<f64>,
        #[arg(long)]
        spice_t2: Option<f64>,
        #[arg(long)]
        mbleu4: Option<f64>,
        #[arg(long)]
        spice_t3: Option<f64>,
        /// Fragment JSON files (eval outputs) supplying missing values
        #[arg(long, num_args = 1..)]
        fragments: Vec<PathBuf>,
    },
    /// Rewrite one answer line of each task-3 record via a chat endpoint
    Diversify {
        /// Task-3 records JSONL (structured build output)
        records: PathBuf,
        /// Diversify config JSON
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output records path (audit sidecar: <out>.audit.jsonl)
        #[arg(long)]
        out: PathBuf,
        /// Exit 2 if any record fails with a transport error
        #[arg(long)]
        strict: bool,
        /// Chat endpoint URL ("stub:" = offline rewriter)
        #[arg(long)]
        endpoint: Option<String>,
        /// Model name sent in requests
        #[arg(long)]
        model: Option<String>,
        /// Environment variable holding the API key
        #[arg(long)]
        api_key_env: Option<String>,
    },
    /// Print the propositions extracted from one sentence
    ParseDebug {
        sentence: String,
    },
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Build { corpus, config, out, seed, plain, lenient } => {
            commands::cmd_build(&corpus, config.as_deref(), &out, seed, plain, lenient)
        }
        Command::Baseline { corpus, out, containment_threshold, contact_tolerance, lenient } => {
            commands::cmd_baseline(&corpus, &out, containment_threshold, contact_tolerance, lenient)
        }
        Command::Eval { task, gold, predictions, macro_f1 } => {
            let task = TaskId::parse(&task)
                .ok_or_else(|| anyhow::anyhow!("invalid task {task:?}: expected 1, 2, or 3"))?;
            commands::cmd_eval(task, &gold, &predictions, macro_f1)
        }
        Command::Score { f1, bleu4, spice_t2, mbleu4, spice_t3, fragments } => {
            let inputs = ScoreInputs { f1, bleu4, spice_t2, mbleu4, spice_t3 };
            commands::cmd_score(inputs, &fragments)
        }
        Command::Diversify { records, config, out, strict, endpoint, model, api_key_env } => {
            commands::cmd_diversify(
                &records,
                config.as_deref(),
                &out,
                strict,
                endpoint,
                model,
                api_key_env,
            )
        }
        Command::ParseDebug { sentence } => commands::cmd_parse_debug(&sentence),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
