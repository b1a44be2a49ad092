//! `batch`: one statistics row per (document, transcription).
//!
//! Manifest lines are `doc<TAB>input<TAB>transcription<TAB>filter`; blank
//! lines and `#` comments are skipped, as is a header row starting with
//! `doc`. Input and rule paths are relative to the manifest's directory.
//! Transcription happens on the whole input before the filter, so the
//! Simplified Maximal rare set always comes from the full text.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use voystat_core::fmt::format_float;
use voystat_core::metrics::{table_report, EntropyReport};
use voystat_core::{CanonicalDocument, LongTable, RecordFilter};

use crate::error::{CliError, CliResult, Context};
use crate::input::{parse_filter, read_text, IngestSettings, InputArgs, InputCache, Transcription};
use crate::manifest::{manifest_path, RunManifest, SCHEMA_VERSION};
use crate::output::{emit, json_bytes, write_atomic};
use crate::Format;

#[derive(Debug, Clone, Args)]
pub struct BatchArgs {
    /// Document manifest (doc, input, transcription, filter; tab-separated).
    #[arg(
        long,
        value_name = "TSV",
        required_unless_present = "canonical",
        conflicts_with = "canonical"
    )]
    manifest: Option<PathBuf>,
    /// Run the sixteen standard selections over this input instead of a
    /// manifest.
    #[arg(long, value_name = "INPUT")]
    canonical: Option<String>,
    /// Transcription systems for --canonical.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "full-maximal,simplified-maximal,minimal"
    )]
    systems: Vec<String>,
    #[arg(long, value_name = "TSV")]
    meta: Option<PathBuf>,
    #[arg(long, value_name = "ID")]
    transcriber: Option<String>,
    #[arg(long)]
    plaintext: bool,
    #[arg(long)]
    comma_breaks: bool,
    /// tsv or csv: the combined table; json: every row with full reports.
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Also write one JSON report per row here.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    run_manifest: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct Entry {
    doc: String,
    input: String,
    transcription: String,
    filter_spec: String,
    filter: RecordFilter,
    /// Empty selections are skipped rather than fatal.
    optional: bool,
}

fn parse_manifest(text: &str, path: &Path) -> CliResult<Vec<Entry>> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| CliError::Data(format!("{}:{}: {msg}", path.display(), idx + 1));
        let cols: Vec<&str> = line.split('\t').collect();
        if idx == 0 && cols[0] == "doc" {
            continue;
        }
        if !(3..=4).contains(&cols.len()) {
            return Err(err(format!(
                "expected 3 or 4 tab-separated columns, found {}",
                cols.len()
            )));
        }
        let filter_spec = cols.get(3).copied().unwrap_or("").trim().to_string();
        let filter = RecordFilter::parse(&filter_spec).map_err(err)?;
        entries.push(Entry {
            doc: cols[0].to_string(),
            input: cols[1].to_string(),
            transcription: cols[2].to_string(),
            filter_spec,
            filter,
            optional: false,
        });
    }
    if entries.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no documents listed",
            path.display()
        )));
    }
    Ok(entries)
}

fn canonical_entries(input: &str, systems: &[String]) -> CliResult<Vec<Entry>> {
    let mut out = Vec::new();
    for system in systems {
        for doc in CanonicalDocument::all() {
            out.push(Entry {
                doc: doc.name(),
                input: input.to_string(),
                transcription: system.clone(),
                filter_spec: doc.slug(),
                filter: parse_filter(Some(&doc.slug()))?,
                optional: true,
            });
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Row<'a> {
    doc: &'a str,
    input: &'a str,
    transcription: &'a str,
    filter: &'a str,
    report: EntropyReport,
}

#[derive(Serialize)]
struct BatchOutput<'a> {
    schema_version: u32,
    rows: &'a [Row<'a>],
}

pub fn run(args: &BatchArgs) -> CliResult<()> {
    let mut m = RunManifest::new("batch");
    let (entries, base) = match (&args.manifest, &args.canonical) {
        (Some(path), _) => {
            let text = read_text(path, &mut m)?;
            m.set("manifest", path.display());
            let base = path.parent().unwrap_or(Path::new("")).to_path_buf();
            (parse_manifest(&text, path)?, base)
        }
        (None, Some(input)) => {
            m.set("canonical", input);
            m.set("systems", args.systems.join(","));
            (canonical_entries(input, &args.systems)?, PathBuf::new())
        }
        (None, None) => {
            return Err(CliError::Usage(
                "batch needs --manifest or --canonical".into(),
            ))
        }
    };

    let input_args = InputArgs {
        input: String::new(),
        meta: args.meta.clone(),
        transcriber: args.transcriber.clone(),
        plaintext: args.plaintext,
        comma_breaks: args.comma_breaks,
        filter: None,
    };
    let settings = IngestSettings::from_args(&input_args, &mut m)?;
    m.set(
        "format",
        match args.format {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Tsv => "tsv",
        },
    );

    // inputs and rule files are read serially so digests keep manifest order
    let mut cache = InputCache::default();
    let mut systems: BTreeMap<String, Transcription> = BTreeMap::new();
    for e in &entries {
        let input = resolve(&base, &e.input);
        cache.get(&input, &settings, &mut m)?;
        if !systems.contains_key(&e.transcription) {
            let t = Transcription::resolve(&e.transcription, &base, &mut m)?;
            systems.insert(e.transcription.clone(), t);
        }
    }

    // transcribe each (input, system) pair once
    let mut pairs: Vec<(String, String)> = entries
        .iter()
        .map(|e| (resolve(&base, &e.input), e.transcription.clone()))
        .collect();
    pairs.sort();
    pairs.dedup();
    let transcribed: BTreeMap<(String, String), LongTable> = pairs
        .into_par_iter()
        .map(|(input, sys)| {
            let table = systems[&sys].apply(cache.get_loaded(&input));
            ((input, sys), table)
        })
        .collect();

    let reports: Vec<CliResult<Option<EntropyReport>>> = entries
        .par_iter()
        .map(|e| {
            let key = (resolve(&base, &e.input), e.transcription.clone());
            let doc = e.filter.apply(&transcribed[&key]);
            match (doc.is_empty(), e.optional) {
                (true, true) => Ok(None),
                (true, false) => Err(CliError::Data(format!(
                    "{}: no words after selection",
                    e.doc
                ))),
                _ => table_report(&doc).context(&e.doc).map(Some),
            }
        })
        .collect();
    let mut rows = Vec::with_capacity(entries.len());
    for (e, r) in entries.iter().zip(reports) {
        match r? {
            Some(report) => rows.push(Row {
                doc: &e.doc,
                input: &e.input,
                transcription: &e.transcription,
                filter: &e.filter_spec,
                report,
            }),
            None => eprintln!("skipped {} ({}): no words", e.doc, e.transcription),
        }
    }

    if let Some(dir) = &args.out_dir {
        rows.par_iter().enumerate().try_for_each(|(i, row)| {
            let name = format!(
                "{:03}-{}-{}.json",
                i + 1,
                slug(row.doc),
                slug(row.transcription)
            );
            write_atomic(&dir.join(name), &json_bytes(row))
        })?;
    }

    let bytes = match args.format {
        Format::Json => json_bytes(&BatchOutput {
            schema_version: SCHEMA_VERSION,
            rows: &rows,
        }),
        Format::Tsv => table(&rows, '\t').into_bytes(),
        Format::Csv => table(&rows, ',').into_bytes(),
    };
    emit(args.output.as_deref(), &bytes)?;
    let path = manifest_path(
        args.run_manifest.as_deref(),
        args.output.as_deref(),
        args.out_dir.as_deref(),
    );
    m.write(&path)
}

fn resolve(base: &Path, input: &str) -> String {
    if input == "-" || Path::new(input).is_absolute() {
        input.to_string()
    } else {
        base.join(input).display().to_string()
    }
}

fn table(rows: &[Row], sep: char) -> String {
    let quote = |s: &str| {
        if sep == ',' && s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    let mut out = [
        "doc",
        "transcription",
        "charset",
        "h2",
        "words",
        "word_types",
    ]
    .join(&sep.to_string());
    out.push('\n');
    for r in rows {
        let fields = [
            quote(r.doc),
            quote(r.transcription),
            r.report.charset_size.to_string(),
            format_float(r.report.h2),
            r.report.word_token_count.to_string(),
            r.report.word_type_count.to_string(),
        ];
        out.push_str(&fields.join(&sep.to_string()));
        out.push('\n');
    }
    out
}

fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_matches('-').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let text = "doc\tinput\ttranscription\tfilter\n# c\nA text\tv.txt\teva\ta-text\nAll\tv.txt\tminimal\n";
        let e = parse_manifest(text, Path::new("m.tsv")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].filter, parse_filter(Some("a-text")).unwrap());
        assert_eq!(e[1].filter, RecordFilter::default());
        assert!(parse_manifest("x\ty\n", Path::new("m")).is_err());
        assert!(parse_manifest("# only\n", Path::new("m")).is_err());
    }

    #[test]
    fn canonical_has_sixteen_per_system() {
        let e = canonical_entries("v.txt", &["eva".into(), "minimal".into()]).unwrap();
        assert_eq!(e.len(), 32);
        assert_eq!(e[0].doc, "Full Voynich");
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("Full Voynich Text"), "full-voynich-text");
        assert_eq!(slug("rules/x.rules"), "rules-x-rules");
    }
}
