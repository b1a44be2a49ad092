//! Reading documents, metadata and rule files, with every byte digested
//! into the run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::Args;
use voystat_core::ingest::{parse_interlinear_with, FolioMeta, InterlinearOptions};
use voystat_core::translit::{simplify_document, RARE_CHAR_MIN_COUNT};
use voystat_core::{
    parse_plaintext, transliterate_document, Error, FolioMetadataMap, Hand, Language, LongTable,
    RecordFilter, RuleSet,
};

use crate::error::{CliError, CliResult, Context};
use crate::manifest::RunManifest;

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input file: long-table TSV, interlinear transcription or plain text
    /// (auto-detected); `-` reads standard input.
    pub input: String,
    /// Folio metadata TSV (folio, section, language, hand, quire).
    #[arg(long, value_name = "TSV")]
    pub meta: Option<PathBuf>,
    /// Keep only lines from this transcriber.
    #[arg(long, value_name = "ID")]
    pub transcriber: Option<String>,
    /// Treat the input as plain text even if it looks like another format.
    #[arg(long)]
    pub plaintext: bool,
    /// Treat `,` (uncertain space) as a word break instead of deleting it.
    #[arg(long)]
    pub comma_breaks: bool,
    /// Record filter: `key=value,...` (language, hand, locus, section,
    /// folio, quire, transcriber) or a document slug such as `a-text`.
    #[arg(long, value_name = "SPEC")]
    pub filter: Option<String>,
}

pub fn read_bytes(path: &str, manifest: &mut RunManifest) -> CliResult<Vec<u8>> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|source| CliError::Read {
                path: PathBuf::from("<stdin>"),
                source,
            })?;
        buf
    } else {
        fs::read(path).map_err(|source| CliError::Read {
            path: PathBuf::from(path),
            source,
        })?
    };
    manifest.add_input(path, &bytes);
    Ok(bytes)
}

pub fn read_text(path: &Path, manifest: &mut RunManifest) -> CliResult<String> {
    let shown = path.display().to_string();
    let bytes = read_bytes(&shown, manifest)?;
    String::from_utf8(bytes).map_err(|e| {
        CliError::Data(format!(
            "{shown}: invalid UTF-8 at byte {}",
            e.utf8_error().valid_up_to()
        ))
    })
}

/// Shared ingest settings, separate from the per-file path so `batch` can
/// reuse them.
#[derive(Debug, Clone, Default)]
pub struct IngestSettings {
    pub meta: Option<FolioMetadataMap>,
    pub transcriber: Option<String>,
    pub plaintext: bool,
    pub comma_breaks: bool,
}

impl IngestSettings {
    pub fn from_args(args: &InputArgs, manifest: &mut RunManifest) -> CliResult<Self> {
        let meta = match &args.meta {
            Some(p) => {
                let text = read_text(p, manifest)?;
                manifest.set("meta", p.display());
                Some(FolioMetadataMap::from_tsv(&text).context(p.display())?)
            }
            None => None,
        };
        if let Some(t) = &args.transcriber {
            manifest.set("transcriber", t);
        }
        manifest.set("plaintext", args.plaintext);
        manifest.set("comma_breaks", args.comma_breaks);
        Ok(IngestSettings {
            meta,
            transcriber: args.transcriber.clone(),
            plaintext: args.plaintext,
            comma_breaks: args.comma_breaks,
        })
    }

    pub fn load(&self, path: &str, manifest: &mut RunManifest) -> CliResult<LongTable> {
        let bytes = read_bytes(path, manifest)?;
        self.parse(path, &bytes)
    }

    pub fn parse(&self, path: &str, bytes: &[u8]) -> CliResult<LongTable> {
        let text = std::str::from_utf8(bytes).ok();
        if !self.plaintext {
            if let Some(text) = text {
                if LongTable::looks_like_tsv(text) {
                    return LongTable::from_tsv(text, path).context(path);
                }
                if looks_interlinear(text) {
                    return self.parse_interlinear(path, bytes);
                }
            }
        }
        parse_plaintext(bytes, path).context(path)
    }

    fn parse_interlinear(&self, path: &str, bytes: &[u8]) -> CliResult<LongTable> {
        let opts = InterlinearOptions {
            transcriber: self.transcriber.clone(),
            comma_as_break: self.comma_breaks,
            source_id: path.to_string(),
        };
        match &self.meta {
            Some(meta) => parse_interlinear_with(bytes, meta, &opts).context(path),
            None => {
                // without a metadata file every folio is unclassified
                let mut meta = FolioMetadataMap::default();
                match parse_interlinear_with(bytes, &meta, &opts) {
                    Err(Error::MissingFolios(folios)) => {
                        for f in folios {
                            meta.insert(f, unclassified());
                        }
                        parse_interlinear_with(bytes, &meta, &opts).context(path)
                    }
                    other => other.context(path),
                }
            }
        }
    }
}

fn unclassified() -> FolioMeta {
    FolioMeta {
        section: String::new(),
        language: Language::Unclassified,
        hand: Hand::Unclassified,
        quire: String::new(),
    }
}

/// First content line is a `<locus>` tag.
fn looks_interlinear(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with('<') && l.contains('>'))
}

pub fn parse_filter(spec: Option<&str>) -> CliResult<RecordFilter> {
    match spec {
        Some(s) => RecordFilter::parse(s).map_err(|e| CliError::Usage(format!("--filter: {e}"))),
        None => Ok(RecordFilter::default()),
    }
}

/// Loads the input, then optionally transcribes it and applies the filter.
pub fn load_document(
    args: &InputArgs,
    system: Option<&Transcription>,
    manifest: &mut RunManifest,
) -> CliResult<LongTable> {
    let filter = parse_filter(args.filter.as_deref())?;
    let settings = IngestSettings::from_args(args, manifest)?;
    let table = settings.load(&args.input, manifest)?;
    let table = match system {
        Some(s) => {
            manifest.set("system", s.label());
            s.apply(&table)
        }
        None => table,
    };
    if let Some(f) = &args.filter {
        manifest.set("filter", f);
    }
    Ok(filter.apply(&table))
}

/// A transcription system applied to EVA input.
#[derive(Debug, Clone)]
pub enum Transcription {
    Eva,
    FullMaximal,
    /// Full Maximal with ligatures lowered and rare characters starred; the
    /// rare set comes from the whole input, before any filtering.
    SimplifiedMaximal,
    Minimal,
    Rules {
        label: String,
        rules: RuleSet,
    },
}

impl Transcription {
    /// A system name, a shipped table name, or a rule-file path.
    pub fn resolve(name: &str, base: &Path, manifest: &mut RunManifest) -> CliResult<Self> {
        Ok(match name {
            "eva" | "identity" => Transcription::Eva,
            "full-maximal" | "maximal" => Transcription::FullMaximal,
            "simplified-maximal" => Transcription::SimplifiedMaximal,
            "minimal" => Transcription::Minimal,
            path => {
                let full = base.join(path);
                let text = read_text(&full, manifest)?;
                let rules = RuleSet::parse(path, &text).context(full.display())?;
                Transcription::Rules {
                    label: path.to_string(),
                    rules,
                }
            }
        })
    }

    pub fn label(&self) -> &str {
        match self {
            Transcription::Eva => "eva",
            Transcription::FullMaximal => "full-maximal",
            Transcription::SimplifiedMaximal => "simplified-maximal",
            Transcription::Minimal => "minimal",
            Transcription::Rules { label, .. } => label,
        }
    }

    pub fn rules(&self) -> Option<RuleSet> {
        match self {
            Transcription::Eva | Transcription::SimplifiedMaximal => None,
            Transcription::FullMaximal => RuleSet::builtin("maximal"),
            Transcription::Minimal => RuleSet::builtin("minimal"),
            Transcription::Rules { rules, .. } => Some(rules.clone()),
        }
    }

    pub fn apply(&self, table: &LongTable) -> LongTable {
        match self {
            Transcription::Eva => table.clone(),
            Transcription::SimplifiedMaximal => {
                let maximal = RuleSet::builtin("maximal").expect("shipped table");
                simplify_document(
                    &transliterate_document(table, &maximal),
                    RARE_CHAR_MIN_COUNT,
                )
            }
            other => transliterate_document(table, &other.rules().expect("has rules")),
        }
    }
}

/// Cache of parsed inputs keyed by path, for `batch`.
#[derive(Default)]
pub struct InputCache {
    tables: BTreeMap<String, LongTable>,
}

impl InputCache {
    pub fn get(
        &mut self,
        path: &str,
        settings: &IngestSettings,
        manifest: &mut RunManifest,
    ) -> CliResult<&LongTable> {
        if !self.tables.contains_key(path) {
            let t = settings.load(path, manifest)?;
            self.tables.insert(path.to_string(), t);
        }
        Ok(&self.tables[path])
    }

    /// A table already loaded through [`InputCache::get`].
    pub fn get_loaded(&self, path: &str) -> &LongTable {
        &self.tables[path]
    }
}
