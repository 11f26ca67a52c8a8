use anyhow::Result;
use clap::{Parser, Subcommand};
use docpair::augment::run_augment;
use docpair::convert::run_convert;
use docpair::{exit_code, run_detect, run_evaluate, run_pair, CorpusSummary, PipelineConfig, EXIT_USAGE};
use std::path::PathBuf;
use std::process::ExitCode;

/// Builds page-level markup/image training pairs and scores predictions.
#[derive(Parser, Debug)]
#[command(name = "docpair", version)]
struct Cli {
    /// TOML configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: logical CPUs)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert HTML documents to markup text
    Convert {
        inputs: Vec<PathBuf>,
        /// Write `<stem>.mmd` files here instead of standard output
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Split documents into PDF pages and emit paired JSONL
    Pair {
        inputs: Vec<PathBuf>,
        /// PDF text JSONL file, or a directory of `<stem>.jsonl`
        #[arg(long)]
        pdf_text: PathBuf,
        /// Caption records JSONL file, or a directory of `<stem>.jsonl`
        #[arg(long)]
        floats: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply the image augmentation pipeline to PNG files
    Augment {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Flag repeating logit traces
    Detect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score predicted markup against references
    Evaluate {
        #[arg(long)]
        input: PathBuf,
        /// Aggregate report (JSON)
        #[arg(long)]
        out: PathBuf,
        /// Per-sample reports (JSONL)
        #[arg(long)]
        samples_out: Option<PathBuf>,
    },
}

fn print_summary(summary: &CorpusSummary) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(summary)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let mut config = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    match cli.command {
        Command::Convert { inputs, out_dir } => {
            let n = run_convert(&inputs, out_dir.as_deref())?;
            log::info!("converted {n} documents");
        }
        Command::Pair {
            inputs,
            pdf_text,
            floats,
            out,
        } => print_summary(&run_pair(
            &inputs,
            &pdf_text,
            floats.as_deref(),
            &out,
            &config,
            cli.jobs,
        )?)?,
        Command::Augment { inputs, out_dir } => print_summary(&run_augment(&inputs, &out_dir, &config, cli.jobs)?)?,
        Command::Detect { input, out } => print_summary(&run_detect(&input, &out, &config, cli.jobs)?)?,
        Command::Evaluate {
            input,
            out,
            samples_out,
        } => print_summary(&run_evaluate(&input, &out, samples_out.as_deref(), cli.jobs)?)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
