//! Normalisation of comparison corpora.
//!
//! The pipeline order is fixed: strip punctuation, lowercase, drop characters
//! whose relative frequency is below the threshold, drop characters outside
//! the configured script ranges. Words left empty are removed.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use serde::Serialize;
use unicode_general_category::get_general_category;

use crate::error::{Error, Result};
use crate::ingest::LongTable;
use crate::metrics::BOUNDARY;

/// Default rare-character threshold: 0.01% of all characters.
pub const DEFAULT_RARE_THRESHOLD: f64 = 0.0001;

#[derive(Debug, Clone, PartialEq)]
pub struct CleanseConfig {
    pub lowercase: bool,
    pub strip_punctuation: bool,
    /// Characters whose share of all word characters (separators excluded)
    /// is below this are deleted.
    pub rare_char_threshold: f64,
    pub script_ranges: Option<Vec<RangeInclusive<u32>>>,
    /// Exempt from every deletion step.
    pub preserve_chars: BTreeSet<char>,
}

impl Default for CleanseConfig {
    fn default() -> Self {
        CleanseConfig {
            lowercase: true,
            strip_punctuation: true,
            rare_char_threshold: DEFAULT_RARE_THRESHOLD,
            script_ranges: None,
            preserve_chars: BTreeSet::new(),
        }
    }
}

impl CleanseConfig {
    /// A configuration that changes nothing.
    pub fn identity() -> Self {
        CleanseConfig {
            lowercase: false,
            strip_punctuation: false,
            rare_char_threshold: 0.0,
            script_ranges: None,
            preserve_chars: BTreeSet::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.rare_char_threshold) {
            return Err(Error::Config(format!(
                "rare-character threshold {} outside [0, 1)",
                self.rare_char_threshold
            )));
        }
        if let Some(ranges) = &self.script_ranges {
            let mut sorted: Vec<_> = ranges.clone();
            sorted.sort_by_key(|r| *r.start());
            for r in &sorted {
                if r.is_empty() {
                    return Err(Error::Config(format!("empty script range {r:?}")));
                }
            }
            for pair in sorted.windows(2) {
                if pair[1].start() <= pair[0].end() {
                    return Err(Error::Config(format!(
                        "overlapping script ranges {:?} and {:?}",
                        pair[0], pair[1]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bool_value = |v: &str| match v {
            "true" | "yes" | "1" | "on" => Ok(true),
            "false" | "no" | "0" | "off" => Ok(false),
            other => Err(Error::Config(format!("{key}: not a boolean: {other:?}"))),
        };
        match key {
            "lowercase" => self.lowercase = bool_value(value)?,
            "strip_punctuation" => self.strip_punctuation = bool_value(value)?,
            "threshold" | "rare_char_threshold" => {
                self.rare_char_threshold = value
                    .parse()
                    .map_err(|_| Error::Config(format!("{key}: not a number: {value:?}")))?
            }
            "script_range" | "script_ranges" => {
                let ranges = self.script_ranges.get_or_insert_with(Vec::new);
                for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    ranges.push(parse_script_range(part)?);
                }
            }
            "keep" | "preserve_chars" => self.preserve_chars.extend(value.chars()),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Reads a `key=value` file (`#` comments). Unlisted keys keep their
    /// defaults.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut cfg = CleanseConfig::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", idx + 1)))?;
            // values are not trimmed on the left of `keep` so ' ' can be kept
            let v = if k.trim() == "keep" { v } else { v.trim() };
            cfg.set(k.trim(), v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses `U+0400..U+04FF`.
pub fn parse_script_range(s: &str) -> Result<RangeInclusive<u32>> {
    let bad = || Error::Config(format!("bad script range {s:?}, expected U+XXXX..U+YYYY"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let cp = |t: &str| {
        let t = t.trim();
        let hex = t
            .strip_prefix("U+")
            .or_else(|| t.strip_prefix("u+"))
            .unwrap_or(t);
        u32::from_str_radix(hex, 16).map_err(|_| bad())
    };
    let (start, end) = (cp(a)?, cp(b)?);
    if start > end {
        return Err(bad());
    }
    Ok(start..=end)
}

/// Punctuation, symbols and numbers (general categories P*, S*, N*).
pub fn is_punctuation_class(c: char) -> bool {
    matches!(
        get_general_category(c).abbreviation().as_bytes()[0],
        b'P' | b'S' | b'N'
    )
}

pub fn cleanse(table: &LongTable, cfg: &CleanseConfig) -> LongTable {
    let keep = &cfg.preserve_chars;

    let mut words: Vec<String> = table
        .words()
        .map(|w| {
            let stripped = w.chars().filter(|&c| {
                !cfg.strip_punctuation || keep.contains(&c) || !is_punctuation_class(c)
            });
            if cfg.lowercase {
                stripped.flat_map(char::to_lowercase).collect()
            } else {
                stripped.collect()
            }
        })
        .collect();

    if cfg.rare_char_threshold > 0.0 {
        let mut counts: BTreeMap<char, u64> = BTreeMap::new();
        for w in &words {
            for c in w.chars() {
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        let total: u64 = counts.values().sum();
        let rare: BTreeSet<char> = counts
            .into_iter()
            .filter(|&(c, n)| {
                !keep.contains(&c) && (n as f64) < cfg.rare_char_threshold * total as f64
            })
            .map(|(c, _)| c)
            .collect();
        if !rare.is_empty() {
            for w in &mut words {
                w.retain(|c| !rare.contains(&c));
            }
        }
    }

    if let Some(ranges) = &cfg.script_ranges {
        for w in &mut words {
            w.retain(|c| keep.contains(&c) || ranges.iter().any(|r| r.contains(&(c as u32))));
        }
    }

    let records = table
        .records
        .iter()
        .zip(words)
        .filter(|(_, w)| !w.is_empty())
        .map(|(r, w)| crate::ingest::WordRecord {
            surface_form: w,
            ..r.clone()
        })
        .collect();
    LongTable::new(table.source_id.clone(), records)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharCount {
    #[serde(rename = "char")]
    pub ch: char,
    pub count: u64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub proportion: f64,
}

/// Character frequencies, most frequent first, ties by codepoint. The word
/// separator is reported as `#`, counted once per word.
pub fn charset_report(table: &LongTable) -> Vec<CharCount> {
    let mut counts: BTreeMap<char, u64> = BTreeMap::new();
    for w in table.words() {
        *counts.entry(BOUNDARY).or_insert(0) += 1;
        for c in w.chars() {
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    let total: u64 = counts.values().sum();
    let mut out: Vec<CharCount> = counts
        .into_iter()
        .map(|(ch, count)| CharCount {
            ch,
            count,
            proportion: count as f64 / total as f64,
        })
        .collect();
    out.sort_by(|a, b| b.count.cmp(&a.count).then(a.ch.cmp(&b.ch)));
    out
}
