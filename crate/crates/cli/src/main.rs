//! `voystat`: character-level statistics for manuscript transcriptions and
//! comparison corpora.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 on a data error.
//! Diagnostics go to standard error; artifacts go to `-o` or standard
//! output. Every successful run also writes a run manifest.

mod batch;
mod commands;
mod error;
mod input;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use input::InputArgs;

#[derive(Debug, Parser)]
#[command(name = "voystat", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a transcription or plain text into the long-table TSV.
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rewrite every word with a rule file or a named system.
    Translit {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        system: SystemArgs,
        /// Report rule firings, stray characters and alphabet lint on stderr.
        #[arg(long)]
        diagnostics: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Normalize case, punctuation, rare characters and script ranges.
    Cleanse {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cleanse: CleanseArgs,
        /// Report the character inventory before and after on stderr.
        #[arg(long)]
        diagnostics: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Entropy report (h0, h1, h2, counts) and character frequencies.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        system: SystemArgs,
        /// json: full report; csv: character frequencies; tsv: one-row
        /// entropy table.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bigram matrices and high-conditional-probability coverage.
    Bigrams {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        system: SystemArgs,
        /// Conditional-probability threshold for coverage (strictly above).
        #[arg(long, default_value_t = voystat_core::metrics::DEFAULT_COVERAGE_THRESHOLD)]
        threshold: f64,
        /// Matrix written for --format csv.
        #[arg(long, value_enum, default_value_t = Mode::Conditional)]
        mode: Mode,
        /// json: coverage report; csv: one heatmap matrix.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bootstrap distribution of h2 over random word windows.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        system: SystemArgs,
        /// Window sizes in words.
        #[arg(long, value_delimiter = ',', default_value = "50,500,5000")]
        windows: Vec<usize>,
        /// Samples per window size.
        #[arg(long, default_value_t = voystat_core::sampling::DEFAULT_SAMPLES_PER_SIZE)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every sampled value in the JSON output.
        #[arg(long)]
        values: bool,
        /// json: summaries; csv: long-form `window,sample,h2`.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sukhotin's vowel identification.
    Sukhotin {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        system: SystemArgs,
        /// Treat the word boundary as an ordinary symbol.
        #[arg(long)]
        include_space: bool,
        /// json: result; csv: per-symbol final sums.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Statistics for many document selections as one table.
    Batch(batch::BatchArgs),
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Write the artifact here instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Directory for auxiliary artifacts (matrices, per-document reports).
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Run manifest path; defaults to `<output>.manifest.json`,
    /// `<out-dir>/run_manifest.json` or `./run_manifest.json`.
    #[arg(long, value_name = "PATH")]
    run_manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct SystemArgs {
    /// Rule file applied to every word before analysis.
    #[arg(long, value_name = "FILE", conflicts_with = "system")]
    rules: Option<PathBuf>,
    /// Named transcription system: eva, full-maximal, simplified-maximal,
    /// minimal.
    #[arg(long, value_name = "NAME")]
    system: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Conditional,
    Weighted,
    EntropyContribution,
}

impl From<Mode> for voystat_core::HeatmapMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Conditional => voystat_core::HeatmapMode::Conditional,
            Mode::Weighted => voystat_core::HeatmapMode::Weighted,
            Mode::EntropyContribution => voystat_core::HeatmapMode::EntropyContribution,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct CleanseArgs {
    /// key=value configuration file (lowercase, strip_punctuation,
    /// threshold, script_range, keep); flags override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Rare-character threshold as a fraction of all characters.
    #[arg(long)]
    threshold: Option<f64>,
    /// Keep only characters in these ranges, e.g. U+0400..U+04FF.
    #[arg(long, value_name = "RANGE")]
    script_range: Vec<String>,
    /// Characters exempt from every deletion step.
    #[arg(long, value_name = "CHARS")]
    keep: Option<String>,
    #[arg(long)]
    no_lowercase: bool,
    #[arg(long)]
    keep_punctuation: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("voystat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
