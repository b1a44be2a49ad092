//! Ingestion of interlinear transcription files and plain-text corpora into a
//! long table: one [`WordRecord`] per word, in document order, carrying its
//! line/paragraph position and the folio-level classifications.
//!
//! # Interlinear grammar
//!
//! The parser accepts the following subset of the Landini-Stolfi interlinear
//! format, one construct per line:
//!
//! * blank lines and lines starting with `#` are ignored;
//! * `<f1r>` (a locus without unit and line) is a page header and the rest of
//!   the line is ignored;
//! * `<folio.unit.line;transcriber>payload` is a transcribed line. `unit` is a
//!   locus code such as `P1`, `L2`, `C`; codes starting with `P` are running
//!   paragraph text, every other code is a label or diagram. `line` is a
//!   positive integer.
//!
//! Inside the payload:
//!
//! * `{...}` spans are annotations and are removed;
//! * `<...>` spans (e.g. `<->`, drawing interruptions) act as word breaks;
//! * `.` and whitespace are word breaks;
//! * `,` marks an uncertain break; it is deleted so that its neighbours fuse,
//!   unless [`InterlinearOptions::comma_as_break`] is set;
//! * `!` and `%` are alignment fillers and are removed;
//! * `-` and `=` are line-end markers and act as word breaks; `=` also closes
//!   the current paragraph;
//! * every other character, including `*` for unreadable glyphs, is kept.
//!
//! A new paragraph starts whenever the `(folio, unit)` locus changes for a
//! transcriber, or after a line carrying `=`. Paragraph counters therefore
//! reset on every change of locus kind, including moves between diagram loci.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusKind {
    Paragraph,
    LabelOrDiagram,
}

impl LocusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LocusKind::Paragraph => "paragraph",
            LocusKind::LabelOrDiagram => "label",
        }
    }

    /// Locus codes beginning with `P` denote running paragraph text.
    pub fn from_unit(unit: &str) -> Self {
        if unit.starts_with('P') {
            LocusKind::Paragraph
        } else {
            LocusKind::LabelOrDiagram
        }
    }
}

impl fmt::Display for LocusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LocusKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paragraph" | "text" | "P" => Ok(LocusKind::Paragraph),
            "label" | "label_or_diagram" | "diagram" | "L" => Ok(LocusKind::LabelOrDiagram),
            other => Err(format!("unknown locus kind {other:?}")),
        }
    }
}

fn is_unclassified_token(s: &str) -> bool {
    matches!(s, "" | "?" | "-" | "X" | "x" | "unclassified")
}

/// Currier language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Language {
    A,
    B,
    Unclassified,
}

impl Language {
    pub fn as_str(self) -> &'static str {
        match self {
            Language::A => "A",
            Language::B => "B",
            Language::Unclassified => "?",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "A" | "a" => Ok(Language::A),
            "B" | "b" => Ok(Language::B),
            t if is_unclassified_token(t) => Ok(Language::Unclassified),
            other => Err(format!("unknown language {other:?}")),
        }
    }
}

/// Scribal hand, 1 through 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Hand {
    Scribe(u8),
    Unclassified,
}

impl Hand {
    pub fn scribe(n: u8) -> Option<Hand> {
        (1..=5).contains(&n).then_some(Hand::Scribe(n))
    }
}

impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hand::Scribe(n) => write!(f, "{n}"),
            Hand::Unclassified => f.write_str("?"),
        }
    }
}

impl FromStr for Hand {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim();
        if is_unclassified_token(t) {
            return Ok(Hand::Unclassified);
        }
        t.parse::<u8>()
            .ok()
            .and_then(Hand::scribe)
            .ok_or_else(|| format!("unknown hand {t:?} (expected 1-5 or ?)"))
    }
}

/// One word of the source text with its full positional metadata.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WordRecord {
    pub surface_form: String,
    pub line_pos_fwd: u32,
    pub line_pos_rev: u32,
    pub para_pos_fwd: u32,
    pub para_pos_rev: u32,
    pub locus_kind: LocusKind,
    /// Raw locus code, e.g. `P1` or `L3`.
    pub locus: String,
    /// 1-based paragraph ordinal within the source table.
    pub paragraph: u32,
    pub line_number: u32,
    pub folio: String,
    pub quire: String,
    pub section: String,
    pub language: Language,
    pub hand: Hand,
    pub transcriber: String,
}

pub const TSV_COLUMNS: [&str; 15] = [
    "surface_form",
    "line_pos_fwd",
    "line_pos_rev",
    "para_pos_fwd",
    "para_pos_rev",
    "locus_kind",
    "locus",
    "paragraph",
    "line_number",
    "folio",
    "quire",
    "section",
    "language",
    "hand",
    "transcriber",
];

/// Ordered per-word records of one source.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LongTable {
    pub source_id: String,
    pub records: Vec<WordRecord>,
}

impl LongTable {
    pub fn new(source_id: impl Into<String>, records: Vec<WordRecord>) -> Self {
        LongTable {
            source_id: source_id.into(),
            records,
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> + '_ {
        self.records.iter().map(|r| r.surface_form.as_str())
    }

    /// Rewrites every surface form, leaving metadata alone.
    pub fn map_words<F: FnMut(&str) -> String>(&self, mut f: F) -> LongTable {
        let records = self
            .records
            .iter()
            .map(|r| WordRecord {
                surface_form: f(&r.surface_form),
                ..r.clone()
            })
            .collect();
        LongTable::new(self.source_id.clone(), records)
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", TSV_COLUMNS.join("\t"))?;
        for r in &self.records {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.surface_form,
                r.line_pos_fwd,
                r.line_pos_rev,
                r.para_pos_fwd,
                r.para_pos_rev,
                r.locus_kind,
                r.locus,
                r.paragraph,
                r.line_number,
                r.folio,
                r.quire,
                r.section,
                r.language,
                r.hand,
                r.transcriber,
            )?;
        }
        Ok(())
    }

    pub fn to_tsv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_tsv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("table fields are UTF-8")
    }

    /// Reads a table previously written by [`LongTable::write_tsv`].
    pub fn from_tsv(text: &str, source_id: &str) -> Result<LongTable> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim_end_matches('\r') == TSV_COLUMNS.join("\t") => {}
            _ => {
                return Err(Error::Table {
                    line: 1,
                    msg: "missing or unexpected header row".into(),
                })
            }
        }
        let mut records = Vec::new();
        for (idx, line) in lines {
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let err = |msg: String| Error::Table { line: lineno, msg };
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != TSV_COLUMNS.len() {
                return Err(err(format!(
                    "expected {} columns, found {}",
                    TSV_COLUMNS.len(),
                    f.len()
                )));
            }
            let num = |i: usize| -> Result<u32> {
                f[i].parse::<u32>()
                    .map_err(|_| err(format!("{}: not an integer: {:?}", TSV_COLUMNS[i], f[i])))
            };
            if f[0].is_empty() {
                return Err(err("empty surface form".into()));
            }
            records.push(WordRecord {
                surface_form: f[0].to_string(),
                line_pos_fwd: num(1)?,
                line_pos_rev: num(2)?,
                para_pos_fwd: num(3)?,
                para_pos_rev: num(4)?,
                locus_kind: f[5].parse().map_err(err)?,
                locus: f[6].to_string(),
                paragraph: num(7)?,
                line_number: num(8)?,
                folio: f[9].to_string(),
                quire: f[10].to_string(),
                section: f[11].to_string(),
                language: f[12].parse().map_err(err)?,
                hand: f[13].parse().map_err(err)?,
                transcriber: f[14].to_string(),
            });
        }
        Ok(LongTable::new(source_id, records))
    }

    /// True when `text` starts with the long-table header row.
    pub fn looks_like_tsv(text: &str) -> bool {
        text.lines()
            .next()
            .is_some_and(|h| h.trim_end_matches('\r') == TSV_COLUMNS.join("\t"))
    }
}

/// Folio-level classifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolioMeta {
    pub section: String,
    pub language: Language,
    pub hand: Hand,
    pub quire: String,
}

/// `folio -> (section, language, hand, quire)`, loaded from a TSV with
/// columns `folio section language hand quire`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FolioMetadataMap {
    pub entries: BTreeMap<String, FolioMeta>,
}

impl FolioMetadataMap {
    pub fn get(&self, folio: &str) -> Option<&FolioMeta> {
        self.entries.get(folio)
    }

    pub fn insert(&mut self, folio: impl Into<String>, meta: FolioMeta) {
        self.entries.insert(folio.into(), meta);
    }

    /// Parses the TSV form. A header row starting with `folio` and lines
    /// starting with `#` are skipped.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut map = FolioMetadataMap::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Metadata { line: idx + 1, msg };
            let f: Vec<&str> = line.split('\t').collect();
            if idx == 0 && f[0] == "folio" {
                continue;
            }
            if f.len() != 5 {
                return Err(err(format!("expected 5 columns, found {}", f.len())));
            }
            if f[0].is_empty() {
                return Err(err("empty folio".into()));
            }
            if map.entries.contains_key(f[0]) {
                return Err(err(format!("duplicate folio {:?}", f[0])));
            }
            map.insert(
                f[0],
                FolioMeta {
                    section: f[1].to_string(),
                    language: f[2].parse().map_err(err)?,
                    hand: f[3].parse().map_err(err)?,
                    quire: f[4].to_string(),
                },
            );
        }
        Ok(map)
    }
}

#[derive(Debug, Clone)]
pub struct InterlinearOptions {
    /// Keep only lines from this transcriber.
    pub transcriber: Option<String>,
    /// Treat `,` (uncertain break) as a word break instead of deleting it.
    pub comma_as_break: bool,
    pub source_id: String,
}

impl Default for InterlinearOptions {
    fn default() -> Self {
        InterlinearOptions {
            transcriber: None,
            comma_as_break: false,
            source_id: "interlinear".to_string(),
        }
    }
}

fn decode(raw: &[u8]) -> Result<&str> {
    std::str::from_utf8(raw).map_err(|e| Error::Decode(e.valid_up_to()))
}

struct ParsedLine {
    folio: String,
    unit: String,
    line_number: u32,
    transcriber: String,
    words: Vec<String>,
    closes_paragraph: bool,
}

fn parse_header(header: &str, lineno: usize) -> Result<Option<(String, String, u32, String)>> {
    let err = |msg: &str| Error::Locus {
        line: lineno,
        msg: format!("{msg} in <{header}>"),
    };
    if !header.contains('.') && !header.contains(';') {
        // page header such as <f1r>
        if header.is_empty() {
            return Err(err("empty locus"));
        }
        return Ok(None);
    }
    let (locator, transcriber) = header
        .split_once(';')
        .ok_or_else(|| err("missing ';transcriber'"))?;
    if transcriber.is_empty() || transcriber.contains(';') {
        return Err(err("bad transcriber id"));
    }
    let parts: Vec<&str> = locator.split('.').collect();
    if parts.len() != 3 {
        return Err(err("expected folio.unit.line"));
    }
    let (folio, unit, line) = (parts[0], parts[1], parts[2]);
    if folio.is_empty() {
        return Err(err("empty folio"));
    }
    if !unit.starts_with(|c: char| c.is_ascii_alphabetic()) {
        return Err(err("locus unit must start with a letter"));
    }
    let line_number: u32 = line
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| err("line number must be a positive integer"))?;
    Ok(Some((
        folio.to_string(),
        unit.to_string(),
        line_number,
        transcriber.to_string(),
    )))
}

/// Splits a payload into words. Returns the words and whether the line closes
/// its paragraph.
fn split_payload(payload: &str, comma_as_break: bool) -> (Vec<String>, bool) {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut closes = false;
    let mut chars = payload.chars();
    let flush = |current: &mut String, words: &mut Vec<String>| {
        if !current.is_empty() {
            words.push(std::mem::take(current));
        }
    };
    while let Some(c) = chars.next() {
        match c {
            '{' => {
                // an unterminated annotation runs to the end of the line
                for d in chars.by_ref() {
                    if d == '}' {
                        break;
                    }
                }
            }
            '<' => {
                for d in chars.by_ref() {
                    if d == '>' {
                        break;
                    }
                }
                flush(&mut current, &mut words);
            }
            '!' | '%' => {}
            ',' if !comma_as_break => {}
            '=' => {
                closes = true;
                flush(&mut current, &mut words);
            }
            '.' | ',' | '-' => flush(&mut current, &mut words),
            c if c.is_whitespace() => flush(&mut current, &mut words),
            c => current.push(c),
        }
    }
    flush(&mut current, &mut words);
    (words, closes)
}

/// Parses an interlinear file, keeping only `transcriber` when given.
pub fn parse_interlinear(
    raw: &[u8],
    meta: &FolioMetadataMap,
    transcriber: Option<&str>,
) -> Result<LongTable> {
    let opts = InterlinearOptions {
        transcriber: transcriber.map(str::to_string),
        ..Default::default()
    };
    parse_interlinear_with(raw, meta, &opts)
}

pub fn parse_interlinear_with(
    raw: &[u8],
    meta: &FolioMetadataMap,
    opts: &InterlinearOptions,
) -> Result<LongTable> {
    let text = decode(raw)?;
    let mut lines = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(rest) = trimmed.strip_prefix('<') else {
            return Err(Error::Locus {
                line: lineno,
                msg: "expected a line starting with '<' or '#'".into(),
            });
        };
        let (header, payload) = rest.split_once('>').ok_or_else(|| Error::Locus {
            line: lineno,
            msg: "unterminated '<'".into(),
        })?;
        let Some((folio, unit, line_number, transcriber)) = parse_header(header, lineno)? else {
            continue;
        };
        if opts
            .transcriber
            .as_deref()
            .is_some_and(|want| want != transcriber)
        {
            continue;
        }
        let (words, closes_paragraph) = split_payload(payload, opts.comma_as_break);
        lines.push(ParsedLine {
            folio,
            unit,
            line_number,
            transcriber,
            words,
            closes_paragraph,
        });
    }

    let mut missing = Vec::new();
    let mut seen = HashSet::new();
    for l in &lines {
        if meta.get(&l.folio).is_none() && seen.insert(l.folio.clone()) {
            missing.push(l.folio.clone());
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingFolios(missing));
    }

    // paragraph ordinal of every line, tracked per transcriber
    let mut state: HashMap<&str, (&str, &str, u32, bool)> = HashMap::new();
    let mut next_para = 0u32;
    let mut line_para = Vec::with_capacity(lines.len());
    for l in &lines {
        let entry = state.get(l.transcriber.as_str());
        let para = match entry {
            Some(&(folio, unit, para, closed)) if folio == l.folio && unit == l.unit && !closed => {
                para
            }
            _ => {
                next_para += 1;
                next_para
            }
        };
        state.insert(
            &l.transcriber,
            (&l.folio, &l.unit, para, l.closes_paragraph),
        );
        line_para.push(para);
    }
    let mut para_len = vec![0u32; next_para as usize + 1];
    for (l, &p) in lines.iter().zip(&line_para) {
        para_len[p as usize] += l.words.len() as u32;
    }

    let mut para_seen = vec![0u32; next_para as usize + 1];
    let mut records = Vec::new();
    for (l, &p) in lines.iter().zip(&line_para) {
        let fm = meta.get(&l.folio).expect("checked above");
        let n = l.words.len() as u32;
        for (i, w) in l.words.iter().enumerate() {
            let i = i as u32;
            let seen = &mut para_seen[p as usize];
            *seen += 1;
            records.push(WordRecord {
                surface_form: w.clone(),
                line_pos_fwd: i + 1,
                line_pos_rev: n - i,
                para_pos_fwd: *seen,
                para_pos_rev: para_len[p as usize] - *seen + 1,
                locus_kind: LocusKind::from_unit(&l.unit),
                locus: l.unit.clone(),
                paragraph: p,
                line_number: l.line_number,
                folio: l.folio.clone(),
                quire: fm.quire.clone(),
                section: fm.section.clone(),
                language: fm.language,
                hand: fm.hand,
                transcriber: l.transcriber.clone(),
            });
        }
    }
    Ok(LongTable::new(opts.source_id.clone(), records))
}

/// Parses whitespace-separated plain text. Lines are numbered from 1 and
/// blank lines separate paragraphs.
pub fn parse_plaintext(raw: &[u8], source_id: &str) -> Result<LongTable> {
    let text = decode(raw)?;
    let mut records: Vec<WordRecord> = Vec::new();
    let mut para = 0u32;
    let mut para_start = 0usize;
    let mut in_para = false;

    let close = |records: &mut Vec<WordRecord>, start: usize| {
        let total = (records.len() - start) as u32;
        for r in &mut records[start..] {
            r.para_pos_rev = total - r.para_pos_fwd + 1;
        }
    };

    for (idx, line) in text.lines().enumerate() {
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            if in_para {
                close(&mut records, para_start);
                in_para = false;
            }
            continue;
        }
        if !in_para {
            para += 1;
            para_start = records.len();
            in_para = true;
        }
        let n = words.len() as u32;
        for (i, w) in words.iter().enumerate() {
            let i = i as u32;
            records.push(WordRecord {
                surface_form: (*w).to_string(),
                line_pos_fwd: i + 1,
                line_pos_rev: n - i,
                para_pos_fwd: (records.len() - para_start) as u32 + 1,
                para_pos_rev: 0,
                locus_kind: LocusKind::Paragraph,
                locus: "P".to_string(),
                paragraph: para,
                line_number: idx as u32 + 1,
                folio: String::new(),
                quire: String::new(),
                section: String::new(),
                language: Language::Unclassified,
                hand: Hand::Unclassified,
                transcriber: String::new(),
            });
        }
    }
    if in_para {
        close(&mut records, para_start);
    }
    Ok(LongTable::new(source_id, records))
}

/// Order-preserving subsequence of `table` matching `pred`.
pub fn select<F: Fn(&WordRecord) -> bool>(table: &LongTable, pred: F) -> LongTable {
    LongTable::new(
        table.source_id.clone(),
        table.records.iter().filter(|r| pred(r)).cloned().collect(),
    )
}

/// Conjunction of equality constraints over metadata fields; `None` fields
/// match anything.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecordFilter {
    pub language: Option<Language>,
    pub hand: Option<Hand>,
    pub locus_kind: Option<LocusKind>,
    pub section: Option<String>,
    pub folio: Option<String>,
    pub quire: Option<String>,
    pub transcriber: Option<String>,
}

impl RecordFilter {
    pub fn matches(&self, r: &WordRecord) -> bool {
        self.language.is_none_or(|l| l == r.language)
            && self.hand.is_none_or(|h| h == r.hand)
            && self.locus_kind.is_none_or(|k| k == r.locus_kind)
            && self.section.as_ref().is_none_or(|s| *s == r.section)
            && self.folio.as_ref().is_none_or(|s| *s == r.folio)
            && self.quire.as_ref().is_none_or(|s| *s == r.quire)
            && self
                .transcriber
                .as_ref()
                .is_none_or(|s| *s == r.transcriber)
    }

    pub fn apply(&self, table: &LongTable) -> LongTable {
        select(table, |r| self.matches(r))
    }

    /// Parses `key=value` pairs separated by `,` or `;`. `*` or an empty
    /// string is the match-all filter; a canonical document slug such as
    /// `a-text` or `hand3` is also accepted.
    pub fn parse(spec: &str) -> std::result::Result<Self, String> {
        let spec = spec.trim();
        if spec.is_empty() || spec == "*" {
            return Ok(RecordFilter::default());
        }
        if !spec.contains('=') {
            return CanonicalDocument::from_slug(spec)
                .map(|d| d.filter())
                .ok_or_else(|| format!("unknown document {spec:?}"));
        }
        let mut f = RecordFilter::default();
        for part in spec
            .split([',', ';'])
            .map(str::trim)
            .filter(|p| !p.is_empty())
        {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
            let value = value.trim();
            match key.trim() {
                "language" => f.language = Some(value.parse()?),
                "hand" => f.hand = Some(value.parse()?),
                "locus" | "locus_kind" => f.locus_kind = Some(value.parse()?),
                "section" => f.section = Some(value.to_string()),
                "folio" => f.folio = Some(value.to_string()),
                "quire" => f.quire = Some(value.to_string()),
                "transcriber" => f.transcriber = Some(value.to_string()),
                other => return Err(format!("unknown filter key {other:?}")),
            }
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentScope {
    Full,
    Language(Language),
    Hand(u8),
}

/// The sixteen standard selections: whole text, each language and each hand,
/// each with and without labels and diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalDocument {
    pub scope: DocumentScope,
    pub text_only: bool,
}

impl CanonicalDocument {
    pub fn all() -> Vec<CanonicalDocument> {
        let scopes = [
            DocumentScope::Full,
            DocumentScope::Language(Language::A),
            DocumentScope::Language(Language::B),
        ]
        .into_iter()
        .chain((1..=5).map(DocumentScope::Hand));
        scopes
            .flat_map(|scope| [false, true].map(|text_only| CanonicalDocument { scope, text_only }))
            .collect()
    }

    pub fn name(&self) -> String {
        let base = match self.scope {
            DocumentScope::Full => "Full Voynich".to_string(),
            DocumentScope::Language(l) => format!("Voynich {l}"),
            DocumentScope::Hand(h) => format!("Voynich {h}"),
        };
        if self.text_only {
            format!("{base} Text")
        } else {
            base
        }
    }

    pub fn slug(&self) -> String {
        let base = match self.scope {
            DocumentScope::Full => "full".to_string(),
            DocumentScope::Language(Language::A) => "a".to_string(),
            DocumentScope::Language(Language::B) => "b".to_string(),
            DocumentScope::Language(Language::Unclassified) => "unclassified".to_string(),
            DocumentScope::Hand(h) => format!("hand{h}"),
        };
        if self.text_only {
            format!("{base}-text")
        } else {
            base
        }
    }

    pub fn from_slug(slug: &str) -> Option<CanonicalDocument> {
        Self::all().into_iter().find(|d| d.slug() == slug)
    }

    pub fn filter(&self) -> RecordFilter {
        let mut f = RecordFilter::default();
        match self.scope {
            DocumentScope::Full => {}
            DocumentScope::Language(l) => f.language = Some(l),
            DocumentScope::Hand(h) => f.hand = Hand::scribe(h),
        }
        if self.text_only {
            f.locus_kind = Some(LocusKind::Paragraph);
        }
        f
    }
}
