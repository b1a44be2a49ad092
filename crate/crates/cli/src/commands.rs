use std::path::Path;

use serde::Serialize;
use voystat_core::fmt::format_float;
use voystat_core::metrics::{table_report, EntropyReport};
use voystat_core::sampling::{to_long_csv, SampleSummary};
use voystat_core::translit::{rule_firings, stray_characters};
use voystat_core::{
    bigram_matrix, charset_report, cleanse, coverage_report, detect_vowels, heatmap_export,
    sample_h2, to_stream, CharCount, CleanseConfig, CoverageReport, HeatmapMode, LongTable,
    SamplingConfig, SukhotinResult,
};

use crate::error::{CliError, CliResult, Context};
use crate::input::{load_document, read_text, InputArgs, Transcription};
use crate::manifest::{manifest_path, RunManifest, SCHEMA_VERSION};
use crate::output::{emit, json_bytes, write_atomic};
use crate::{CleanseArgs, Command, Format, OutputArgs, SystemArgs};

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Ingest { input, out } => {
            let mut m = RunManifest::new("ingest");
            let table = load_document(&input, None, &mut m)?;
            finish(&out, &m, table.to_tsv_string().as_bytes())
        }
        Command::Translit {
            input,
            system,
            diagnostics,
            out,
        } => translit(&input, &system, diagnostics, &out),
        Command::Cleanse {
            input,
            cleanse,
            diagnostics,
            out,
        } => run_cleanse(&input, &cleanse, diagnostics, &out),
        Command::Stats {
            input,
            system,
            format,
            out,
        } => stats(&input, &system, format, &out),
        Command::Bigrams {
            input,
            system,
            threshold,
            mode,
            format,
            out,
        } => bigrams(&input, &system, threshold, mode.into(), format, &out),
        Command::Sample {
            input,
            system,
            windows,
            n,
            seed,
            values,
            format,
            out,
        } => {
            let cfg = SamplingConfig {
                window_sizes: windows,
                samples_per_size: n,
                seed,
            };
            sample(&input, &system, &cfg, values, format, &out)
        }
        Command::Sukhotin {
            input,
            system,
            include_space,
            format,
            out,
        } => sukhotin(&input, &system, include_space, format, &out),
        Command::Batch(args) => crate::batch::run(&args),
    }
}

/// Writes the primary artifact, then the manifest.
fn finish(out: &OutputArgs, m: &RunManifest, bytes: &[u8]) -> CliResult<()> {
    emit(out.output.as_deref(), bytes)?;
    let path = manifest_path(
        out.run_manifest.as_deref(),
        out.output.as_deref(),
        out.out_dir.as_deref(),
    );
    m.write(&path)
}

fn system(args: &SystemArgs, m: &mut RunManifest) -> CliResult<Option<Transcription>> {
    match (&args.rules, &args.system) {
        (Some(path), _) => {
            let shown = path.display().to_string();
            Transcription::resolve(&shown, Path::new(""), m).map(Some)
        }
        (None, Some(name)) => match name.as_str() {
            "eva" | "full-maximal" | "simplified-maximal" | "minimal" => {
                Transcription::resolve(name, Path::new(""), m).map(Some)
            }
            other => Err(CliError::Usage(format!(
                "--system: unknown system {other:?} (eva, full-maximal, simplified-maximal, minimal)"
            ))),
        },
        (None, None) => Ok(None),
    }
}

fn require_words(table: &LongTable, what: &str) -> CliResult<()> {
    if table.is_empty() {
        return Err(CliError::Data(format!("{what}: no words after selection")));
    }
    Ok(())
}

fn translit(
    input: &InputArgs,
    sys: &SystemArgs,
    diagnostics: bool,
    out: &OutputArgs,
) -> CliResult<()> {
    let mut m = RunManifest::new("translit");
    let Some(t) = system(sys, &mut m)? else {
        return Err(CliError::Usage("translit needs --rules or --system".into()));
    };
    if diagnostics {
        let original = load_document(input, None, &mut RunManifest::new("translit"))?;
        report_rule_diagnostics(&original, &t);
    }
    let table = load_document(input, Some(&t), &mut m)?;
    finish(out, &m, table.to_tsv_string().as_bytes())
}

fn report_rule_diagnostics(table: &LongTable, t: &Transcription) {
    let Some(rules) = t.rules() else {
        eprintln!("{}: no rule table to report on", t.label());
        return;
    };
    for (idx, c) in rules.lint() {
        eprintln!(
            "lint: rule {} ({:?}) emits {c:?}, outside the declared alphabet",
            idx + 1,
            rules.rules()[idx].pattern
        );
    }
    for (rule, n) in rule_firings(table, &rules) {
        eprintln!("fired\t{}\t{}\t{n}", rule.pattern, rule.replacement);
    }
    for (c, n) in stray_characters(table, &rules) {
        eprintln!("stray\t{c}\t{n}");
    }
}

fn cleanse_config(args: &CleanseArgs, m: &mut RunManifest) -> CliResult<CleanseConfig> {
    let mut cfg = match &args.config {
        Some(p) => {
            let text = read_text(p, m)?;
            CleanseConfig::from_key_values(&text).context(p.display())?
        }
        None => CleanseConfig::default(),
    };
    let usage = |e: voystat_core::Error| CliError::Usage(e.to_string());
    if let Some(t) = args.threshold {
        cfg.rare_char_threshold = t;
    }
    for r in &args.script_range {
        cfg.set("script_range", r).map_err(usage)?;
    }
    if let Some(k) = &args.keep {
        cfg.preserve_chars.extend(k.chars());
    }
    if args.no_lowercase {
        cfg.lowercase = false;
    }
    if args.keep_punctuation {
        cfg.strip_punctuation = false;
    }
    cfg.validate().map_err(usage)?;

    m.set("lowercase", cfg.lowercase);
    m.set("strip_punctuation", cfg.strip_punctuation);
    m.set("threshold", format_float(cfg.rare_char_threshold));
    if let Some(ranges) = &cfg.script_ranges {
        let shown: Vec<String> = ranges
            .iter()
            .map(|r| format!("U+{:04X}..U+{:04X}", r.start(), r.end()))
            .collect();
        m.set("script_ranges", shown.join(","));
    }
    if !cfg.preserve_chars.is_empty() {
        m.set("keep", cfg.preserve_chars.iter().collect::<String>());
    }
    Ok(cfg)
}

fn run_cleanse(
    input: &InputArgs,
    args: &CleanseArgs,
    diagnostics: bool,
    out: &OutputArgs,
) -> CliResult<()> {
    let mut m = RunManifest::new("cleanse");
    let cfg = cleanse_config(args, &mut m)?;
    let table = load_document(input, None, &mut m)?;
    let cleaned = cleanse(&table, &cfg);
    if diagnostics {
        let inventory = |t: &LongTable| charset_report(t).len().saturating_sub(1);
        eprintln!(
            "words {} -> {}, characters {} -> {}",
            table.len(),
            cleaned.len(),
            inventory(&table),
            inventory(&cleaned)
        );
    }
    finish(out, &m, cleaned.to_tsv_string().as_bytes())
}

#[derive(Serialize)]
struct StatsOutput<'a> {
    schema_version: u32,
    source: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    system: Option<&'a str>,
    entropy: &'a EntropyReport,
    charset: &'a [CharCount],
}

pub const ENTROPY_COLUMNS: &str =
    "charset_size\th0\th1\th2\ttoken_count\tword_type_count\tword_token_count";

pub fn entropy_row(r: &EntropyReport) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.charset_size,
        format_float(r.h0),
        format_float(r.h1),
        format_float(r.h2),
        r.token_count,
        r.word_type_count,
        r.word_token_count
    )
}

fn stats(input: &InputArgs, sys: &SystemArgs, format: Format, out: &OutputArgs) -> CliResult<()> {
    let mut m = RunManifest::new("stats");
    let t = system(sys, &mut m)?;
    let table = load_document(input, t.as_ref(), &mut m)?;
    require_words(&table, &input.input)?;
    let report = table_report(&table).context(&input.input)?;
    let charset = charset_report(&table);
    m.set("format", format_name(format));
    let bytes = match format {
        Format::Json => json_bytes(&StatsOutput {
            schema_version: SCHEMA_VERSION,
            source: &input.input,
            system: t.as_ref().map(Transcription::label),
            entropy: &report,
            charset: &charset,
        }),
        Format::Csv => {
            let mut s = String::from("char,count,proportion\n");
            for c in &charset {
                s.push_str(&format!(
                    "{},{},{}\n",
                    csv_field(c.ch),
                    c.count,
                    format_float(c.proportion)
                ));
            }
            s.into_bytes()
        }
        Format::Tsv => format!("{ENTROPY_COLUMNS}\n{}\n", entropy_row(&report)).into_bytes(),
    };
    finish(out, &m, &bytes)
}

fn csv_field(c: char) -> String {
    match c {
        '"' => "\"\"\"\"".to_string(),
        ',' | '\n' | '\r' => format!("\"{c}\""),
        _ => c.to_string(),
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Tsv => "tsv",
    }
}

#[derive(Serialize)]
struct BigramOutput<'a> {
    schema_version: u32,
    source: &'a str,
    alphabet: String,
    total_bigrams: u64,
    coverage: &'a CoverageReport,
}

fn bigrams(
    input: &InputArgs,
    sys: &SystemArgs,
    threshold: f64,
    mode: HeatmapMode,
    format: Format,
    out: &OutputArgs,
) -> CliResult<()> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(CliError::Usage(format!(
            "--threshold {threshold} outside [0, 1]"
        )));
    }
    let mut m = RunManifest::new("bigrams");
    let t = system(sys, &mut m)?;
    let table = load_document(input, t.as_ref(), &mut m)?;
    require_words(&table, &input.input)?;
    let matrix = bigram_matrix(&to_stream(&table).context(&input.input)?).context(&input.input)?;
    let coverage = coverage_report(&matrix, threshold);
    m.set("threshold", format_float(threshold));
    m.set("format", format_name(format));

    if let Some(dir) = &out.out_dir {
        for mode in HeatmapMode::ALL {
            let path = dir.join(format!("{}.csv", mode.as_str()));
            write_atomic(&path, heatmap_export(&matrix, mode).as_bytes())?;
        }
        write_atomic(&dir.join("coverage.json"), &json_bytes(&coverage))?;
    }
    let bytes = match format {
        Format::Json => json_bytes(&BigramOutput {
            schema_version: SCHEMA_VERSION,
            source: &input.input,
            alphabet: matrix.alphabet_plus_boundary.iter().collect(),
            total_bigrams: matrix.total(),
            coverage: &coverage,
        }),
        Format::Csv => {
            m.set("mode", mode.as_str());
            heatmap_export(&matrix, mode).into_bytes()
        }
        Format::Tsv => {
            return Err(CliError::Usage(
                "bigrams supports --format json or csv".into(),
            ));
        }
    };
    finish(out, &m, &bytes)
}

#[derive(Serialize)]
struct SampleOutput<'a> {
    schema_version: u32,
    source: &'a str,
    seed: u64,
    samples_per_size: usize,
    word_count: usize,
    #[serde(serialize_with = "voystat_core::fmt::serialize_f64")]
    full_h2: f64,
    distributions: Vec<SampleSummary<'a>>,
}

fn sample(
    input: &InputArgs,
    sys: &SystemArgs,
    cfg: &SamplingConfig,
    values: bool,
    format: Format,
    out: &OutputArgs,
) -> CliResult<()> {
    let mut m = RunManifest::new("sample");
    let t = system(sys, &mut m)?;
    let table = load_document(input, t.as_ref(), &mut m)?;
    require_words(&table, &input.input)?;
    let windows: Vec<String> = cfg.window_sizes.iter().map(usize::to_string).collect();
    m.set("windows", windows.join(","));
    m.set("n", cfg.samples_per_size);
    m.set("format", format_name(format));
    m.seed = Some(cfg.seed);
    let dists = sample_h2(&table, cfg).map_err(|e| match e {
        voystat_core::Error::Config(msg) => CliError::Usage(msg),
        other => CliError::Core {
            context: input.input.clone(),
            source: other,
        },
    })?;
    let bytes = match format {
        Format::Json => {
            let full = table_report(&table).context(&input.input)?;
            json_bytes(&SampleOutput {
                schema_version: SCHEMA_VERSION,
                source: &input.input,
                seed: cfg.seed,
                samples_per_size: cfg.samples_per_size,
                word_count: table.len(),
                full_h2: full.h2,
                distributions: dists.iter().map(|d| d.summary(values)).collect(),
            })
        }
        Format::Csv => to_long_csv(&dists).into_bytes(),
        Format::Tsv => {
            return Err(CliError::Usage(
                "sample supports --format json or csv".into(),
            ));
        }
    };
    finish(out, &m, &bytes)
}

#[derive(Serialize)]
struct SukhotinOutput<'a> {
    schema_version: u32,
    source: &'a str,
    #[serde(flatten)]
    result: &'a SukhotinResult,
}

fn sukhotin(
    input: &InputArgs,
    sys: &SystemArgs,
    include_space: bool,
    format: Format,
    out: &OutputArgs,
) -> CliResult<()> {
    let mut m = RunManifest::new("sukhotin");
    let t = system(sys, &mut m)?;
    let table = load_document(input, t.as_ref(), &mut m)?;
    require_words(&table, &input.input)?;
    m.set("include_space", include_space);
    m.set("format", format_name(format));
    let result = detect_vowels(&to_stream(&table).context(&input.input)?, include_space);
    let bytes = match format {
        Format::Json => json_bytes(&SukhotinOutput {
            schema_version: SCHEMA_VERSION,
            source: &input.input,
            result: &result,
        }),
        Format::Csv => {
            let mut s = String::from("symbol,final_sum,vowel_rank\n");
            for (c, sum) in &result.final_sums {
                let rank = result
                    .vowels
                    .iter()
                    .position(|v| v == c)
                    .map(|i| (i + 1).to_string())
                    .unwrap_or_default();
                s.push_str(&format!("{},{sum},{rank}\n", csv_field(*c)));
            }
            s.into_bytes()
        }
        Format::Tsv => {
            return Err(CliError::Usage(
                "sukhotin supports --format json or csv".into(),
            ));
        }
    };
    finish(out, &m, &bytes)
}
