//! Conversion between transcription systems by ordered string rewriting.
//!
//! Rewriting is a single left-to-right pass: at each position the longest
//! matching pattern is replaced and scanning resumes after the consumed
//! input, never inside a replacement. Characters no rule matches are copied
//! through.
//!
//! Rule files are UTF-8 TSV, one `pattern<TAB>replacement` per line, `#`
//! comments, file order = rule priority. A `#@alphabet <chars>` comment
//! declares the expected output inventory; without it the inventory is the
//! set of replacement characters.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::ingest::LongTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub pattern: String,
    pub replacement: String,
}

impl Rule {
    pub fn new(pattern: impl Into<String>, replacement: impl Into<String>) -> Result<Rule> {
        let rule = Rule {
            pattern: pattern.into(),
            replacement: replacement.into(),
        };
        if rule.pattern.is_empty() {
            return Err(Error::RuleSet("empty pattern".into()));
        }
        if rule.pattern == rule.replacement {
            return Err(Error::RuleSet(format!(
                "rule {:?} maps its pattern to itself",
                rule.pattern
            )));
        }
        Ok(rule)
    }
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    pub name: String,
    rules: Vec<Rule>,
    declared_alphabet: BTreeSet<char>,
    by_pattern: HashMap<String, usize>,
    // distinct pattern lengths in chars, longest first
    lengths: Vec<usize>,
}

pub const MAXIMAL_RULES: &str = include_str!("../data/maximal.rules");
pub const SIMPLIFY_RULES: &str = include_str!("../data/simplify.rules");
pub const MINIMAL_RULES: &str = include_str!("../data/minimal.rules");

/// Characters occurring fewer times than this in the whole manuscript are
/// rare for the Simplified Maximal system.
pub const RARE_CHAR_MIN_COUNT: usize = 50;

impl RuleSet {
    pub fn new(
        name: impl Into<String>,
        rules: Vec<Rule>,
        declared_alphabet: BTreeSet<char>,
    ) -> Result<RuleSet> {
        let name = name.into();
        if declared_alphabet.is_empty() {
            return Err(Error::RuleSet(format!("{name}: empty declared alphabet")));
        }
        let mut by_pattern = HashMap::with_capacity(rules.len());
        for (i, r) in rules.iter().enumerate() {
            if by_pattern.insert(r.pattern.clone(), i).is_some() {
                return Err(Error::RuleSet(format!(
                    "{name}: duplicate pattern {:?}",
                    r.pattern
                )));
            }
        }
        let mut lengths: Vec<usize> = rules.iter().map(|r| r.pattern.chars().count()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths.dedup();
        Ok(RuleSet {
            name,
            rules,
            declared_alphabet,
            by_pattern,
            lengths,
        })
    }

    /// Parses the rule-file format.
    pub fn parse(name: &str, text: &str) -> Result<RuleSet> {
        let mut rules = Vec::new();
        let mut alphabet: Option<BTreeSet<char>> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            let err = |msg: String| Error::RuleFile { line: idx + 1, msg };
            if let Some(decl) = line.strip_prefix("#@alphabet") {
                alphabet
                    .get_or_insert_with(BTreeSet::new)
                    .extend(decl.chars().filter(|c| !c.is_whitespace()));
                continue;
            }
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (pattern, replacement) = line
                .split_once('\t')
                .ok_or_else(|| err("expected pattern<TAB>replacement".into()))?;
            if replacement.contains('\t') {
                return Err(err("more than two columns".into()));
            }
            let rule = Rule::new(pattern, replacement).map_err(|e| err(e.to_string()))?;
            if rules.iter().any(|r: &Rule| r.pattern == rule.pattern) {
                return Err(err(format!("duplicate pattern {pattern:?}")));
            }
            rules.push(rule);
        }
        let alphabet =
            alphabet.unwrap_or_else(|| rules.iter().flat_map(|r| r.replacement.chars()).collect());
        RuleSet::new(name, rules, alphabet)
    }

    /// One of the shipped tables: `maximal`, `simplify` or `minimal`.
    pub fn builtin(name: &str) -> Option<RuleSet> {
        let text = match name {
            "maximal" => MAXIMAL_RULES,
            "simplify" => SIMPLIFY_RULES,
            "minimal" => MINIMAL_RULES,
            _ => return None,
        };
        Some(RuleSet::parse(name, text).expect("shipped rule tables are valid"))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn declared_alphabet(&self) -> &BTreeSet<char> {
        &self.declared_alphabet
    }

    /// The rules as a character map, if every rule is one char to one char.
    pub fn char_map(&self) -> Option<BTreeMap<char, char>> {
        self.rules
            .iter()
            .map(|r| {
                let mut p = r.pattern.chars();
                let mut q = r.replacement.chars();
                match (p.next(), p.next(), q.next(), q.next()) {
                    (Some(a), None, Some(b), None) => Some((a, b)),
                    _ => None,
                }
            })
            .collect()
    }

    /// Replacement characters outside the declared alphabet.
    pub fn lint(&self) -> Vec<(usize, char)> {
        let mut out = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            for c in r.replacement.chars() {
                if !self.declared_alphabet.contains(&c) && !out.contains(&(i, c)) {
                    out.push((i, c));
                }
            }
        }
        out
    }

    fn rewrite(&self, word: &str, mut on_fire: impl FnMut(usize)) -> String {
        let bounds: Vec<usize> = word
            .char_indices()
            .map(|(i, _)| i)
            .chain(std::iter::once(word.len()))
            .collect();
        let n = bounds.len() - 1;
        let mut out = String::with_capacity(word.len());
        let mut i = 0;
        'scan: while i < n {
            for &len in &self.lengths {
                if i + len > n {
                    continue;
                }
                if let Some(&idx) = self.by_pattern.get(&word[bounds[i]..bounds[i + len]]) {
                    out.push_str(&self.rules[idx].replacement);
                    on_fire(idx);
                    i += len;
                    continue 'scan;
                }
            }
            out.push_str(&word[bounds[i]..bounds[i + 1]]);
            i += 1;
        }
        out
    }
}

/// Rewrites one word.
pub fn apply(word: &str, rules: &RuleSet) -> String {
    rules.rewrite(word, |_| {})
}

/// Maps [`apply`] over every surface form. Word count and metadata are
/// unchanged.
pub fn transliterate_document(table: &LongTable, rules: &RuleSet) -> LongTable {
    table.map_words(|w| apply(w, rules))
}

/// How often each rule fired over a document, in rule order.
pub fn rule_firings(table: &LongTable, rules: &RuleSet) -> Vec<(Rule, u64)> {
    let mut counts = vec![0u64; rules.rules.len()];
    for w in table.words() {
        rules.rewrite(w, |i| counts[i] += 1);
    }
    rules.rules.iter().cloned().zip(counts).collect()
}

/// Characters of the transliterated document that fall outside the rule
/// set's declared alphabet, with counts. These are pass-through characters
/// no rule consumed.
pub fn stray_characters(table: &LongTable, rules: &RuleSet) -> BTreeMap<char, u64> {
    let mut out = BTreeMap::new();
    for w in table.words() {
        for c in apply(w, rules).chars() {
            if !rules.declared_alphabet.contains(&c) {
                *out.entry(c).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Full Maximal to Simplified Maximal for one word: ligature capitals are
/// lowered through `ligature_map`, then every rare character becomes `*`.
/// `x` is never treated as rare.
pub fn simplify_maximal(
    word: &str,
    rare_chars: &BTreeSet<char>,
    ligature_map: &BTreeMap<char, char>,
) -> String {
    word.chars()
        .map(|c| {
            let c = ligature_map.get(&c).copied().unwrap_or(c);
            if c != 'x' && rare_chars.contains(&c) {
                '*'
            } else {
                c
            }
        })
        .collect()
}

/// Characters occurring fewer than `min_count` times in `table` once
/// ligatures are lowered. `x` and the unreadable-glyph `*` are exempt.
pub fn rare_characters(
    table: &LongTable,
    ligature_map: &BTreeMap<char, char>,
    min_count: usize,
) -> BTreeSet<char> {
    let mut counts: BTreeMap<char, usize> = BTreeMap::new();
    for w in table.words() {
        for c in w.chars() {
            let c = ligature_map.get(&c).copied().unwrap_or(c);
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    counts
        .into_iter()
        .filter(|&(c, n)| n < min_count && c != 'x' && c != '*')
        .map(|(c, _)| c)
        .collect()
}

/// Simplified Maximal version of a Full Maximal document, with the rare set
/// computed over the document itself.
pub fn simplify_document(table: &LongTable, min_count: usize) -> LongTable {
    let ligatures = RuleSet::builtin("simplify")
        .and_then(|r| r.char_map())
        .expect("shipped ligature map is one-to-one");
    let rare = rare_characters(table, &ligatures, min_count);
    table.map_words(|w| simplify_maximal(w, &rare, &ligatures))
}
