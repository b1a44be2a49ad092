//! Character-level statistics for transcribed manuscripts and comparison
//! corpora.
//!
//! The crate is organised as a pipeline:
//!
//! * [`ingest`] parses interlinear transcription files and plain text into a
//!   [`LongTable`] of per-word records with positional and codicological
//!   metadata, and selects sub-documents from it.
//! * [`translit`] rewrites words between transcription systems using ordered
//!   longest-match rules.
//! * [`cleanse`] normalises comparison corpora (punctuation, case, rare
//!   characters, script ranges).
//! * [`metrics`] turns a table into a boundary-delimited [`CharStream`] and
//!   computes unigram/conditional entropy, bigram matrices and the
//!   high-conditional-probability coverage metric.
//! * [`sampling`] bootstraps the variance of conditional entropy over random
//!   word windows.
//! * [`sukhotin`] runs Sukhotin's vowel identification procedure.

pub mod cleanse;
pub mod error;
pub mod fmt;
pub mod ingest;
pub mod metrics;
pub mod sampling;
pub mod sukhotin;
pub mod translit;

pub use cleanse::{charset_report, cleanse, CharCount, CleanseConfig};
pub use error::{Error, Result};
pub use ingest::{
    parse_interlinear, parse_plaintext, select, CanonicalDocument, FolioMeta, FolioMetadataMap,
    Hand, InterlinearOptions, Language, LocusKind, LongTable, RecordFilter, WordRecord,
};
pub use metrics::{
    bigram_matrix, coverage_report, entropy_report, heatmap_export, to_stream, BigramMatrix,
    CharStream, CoverageReport, EntropyReport, HeatmapMode, BOUNDARY,
};
pub use sampling::{sample_h2, SampleDistribution, SamplingConfig};
pub use sukhotin::{detect_on_document, detect_vowels, AdjacencyMatrix, SukhotinResult};
pub use translit::{apply, simplify_maximal, transliterate_document, Rule, RuleSet};
