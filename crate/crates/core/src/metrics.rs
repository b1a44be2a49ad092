//! Character-level statistics over boundary-delimited streams.
//!
//! A document becomes a [`CharStream`] by joining its words with `#` and
//! adding one leading and one trailing `#`, so `[ab, c]` is `#ab#c#`. Every
//! adjacent pair of the stream is a bigram; `##` cannot occur.
//!
//! Conventions:
//!
//! * `h2` is the conditional entropy of a symbol given its predecessor,
//!   `-sum p(xy) log2 p(y|x)` over all bigrams of the stream.
//! * `h1` is the unigram entropy of the bigram marginal, which counts every
//!   character once and the boundary once per word (the leading `#` of each
//!   word). Both marginals of the bigram table are that same distribution, so
//!   `h2 <= h1` holds exactly.
//! * `charset_size` excludes the boundary; `h0 = log2(charset_size + 1)` is
//!   the ceiling for an inventory that includes it.
//! * Logarithms are base 2 and `0 log 0 = 0`.
//!
//! Entropy sums are accumulated in sorted term order, so any relabeling of
//! the alphabet yields bit-identical results.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::{format_float, serialize_f64};
use crate::ingest::LongTable;

/// Word boundary symbol.
pub const BOUNDARY: char = '#';

/// Boundary-delimited character sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharStream {
    symbols: Vec<char>,
    alphabet: BTreeSet<char>,
}

impl CharStream {
    /// Joins `words` with boundaries. Fails on an empty word list, an empty
    /// word, or a word containing `#`.
    pub fn from_words<I, S>(words: I) -> Result<CharStream>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut symbols = vec![BOUNDARY];
        let mut alphabet = BTreeSet::new();
        for w in words {
            let w = w.as_ref();
            if w.is_empty() {
                return Err(Error::Stream("empty word".into()));
            }
            if w.contains(BOUNDARY) {
                return Err(Error::BoundaryInWord(w.to_string()));
            }
            for c in w.chars() {
                symbols.push(c);
                alphabet.insert(c);
            }
            symbols.push(BOUNDARY);
        }
        if symbols.len() == 1 {
            return Err(Error::EmptyStream);
        }
        Ok(CharStream { symbols, alphabet })
    }

    /// Parses a literal stream such as `#ab#c#`.
    pub fn parse(s: &str) -> Result<CharStream> {
        if !s.starts_with(BOUNDARY) || !s.ends_with(BOUNDARY) {
            return Err(Error::Stream(format!("{s:?} must begin and end with '#'")));
        }
        if s.len() == 1 {
            return Ok(CharStream {
                symbols: vec![BOUNDARY],
                alphabet: BTreeSet::new(),
            });
        }
        if s.contains("##") {
            return Err(Error::Stream(format!("{s:?} contains '##'")));
        }
        CharStream::from_words(s[1..s.len() - 1].split(BOUNDARY))
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Distinct non-boundary characters.
    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The words between boundaries.
    pub fn words(&self) -> impl Iterator<Item = &[char]> + '_ {
        self.symbols
            .split(|&c| c == BOUNDARY)
            .filter(|w| !w.is_empty())
    }

    /// Boundary first, then the alphabet in codepoint order.
    pub fn symbol_order(&self) -> Vec<char> {
        std::iter::once(BOUNDARY)
            .chain(self.alphabet.iter().copied())
            .collect()
    }
}

impl fmt::Display for CharStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn to_stream(table: &LongTable) -> Result<CharStream> {
    if table.is_empty() {
        return Err(Error::EmptyStream);
    }
    CharStream::from_words(table.words())
}

fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.into_iter().sum()
}

/// Dense `k x k` bigram counts over symbol indices, index 0 = boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PairCounts {
    pub k: usize,
    pub counts: Vec<u64>,
}

impl PairCounts {
    pub fn zeros(k: usize) -> Self {
        PairCounts {
            k,
            counts: vec![0; k * k],
        }
    }

    pub fn clear(&mut self) {
        self.counts.iter_mut().for_each(|c| *c = 0);
    }

    /// Adds the bigrams of `#w1#w2#...#` for words encoded as indices >= 1.
    pub fn add_words<'a, I: IntoIterator<Item = &'a [u16]>>(&mut self, words: I) {
        let k = self.k;
        let mut prev = 0usize;
        for w in words {
            for &s in w {
                let s = s as usize;
                self.counts[prev * k + s] += 1;
                prev = s;
            }
            self.counts[prev * k] += 1;
            prev = 0;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.counts.chunks(self.k).map(|r| r.iter().sum()).collect()
    }

    pub fn h1(&self) -> f64 {
        let total = self.total() as f64;
        let terms = self
            .row_sums()
            .into_iter()
            .filter(|&n| n > 0)
            .map(|n| {
                let n = n as f64;
                n * (total / n).log2()
            })
            .collect();
        sorted_sum(terms) / total
    }

    pub fn h2(&self) -> f64 {
        let total = self.total() as f64;
        let mut terms = Vec::new();
        for row in self.counts.chunks(self.k) {
            let rs: u64 = row.iter().sum();
            if rs == 0 {
                continue;
            }
            let rs = rs as f64;
            for &c in row.iter().filter(|&&c| c > 0) {
                let c = c as f64;
                terms.push(c * (rs / c).log2());
            }
        }
        sorted_sum(terms) / total
    }
}

/// Maps the characters of a table onto dense indices in [`CharStream`]
/// symbol order.
#[derive(Debug, Clone)]
pub(crate) struct Encoder {
    pub symbols: Vec<char>,
    index: HashMap<char, u16>,
}

impl Encoder {
    pub fn new(symbol_order: Vec<char>) -> Self {
        let index = symbol_order
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u16))
            .collect();
        Encoder {
            symbols: symbol_order,
            index,
        }
    }

    pub fn for_table(table: &LongTable) -> Result<Self> {
        let mut alphabet = BTreeSet::new();
        for w in table.words() {
            if w.contains(BOUNDARY) {
                return Err(Error::BoundaryInWord(w.to_string()));
            }
            if w.is_empty() {
                return Err(Error::Stream("empty word".into()));
            }
            alphabet.extend(w.chars());
        }
        if alphabet.len() >= u16::MAX as usize {
            return Err(Error::Stream("alphabet too large".into()));
        }
        Ok(Encoder::new(
            std::iter::once(BOUNDARY).chain(alphabet).collect(),
        ))
    }

    pub fn k(&self) -> usize {
        self.symbols.len()
    }

    pub fn encode(&self, word: &str) -> Vec<u16> {
        word.chars().map(|c| self.index[&c]).collect()
    }

    fn stream_counts(&self, stream: &CharStream) -> PairCounts {
        let mut pc = PairCounts::zeros(self.k());
        let k = self.k();
        for pair in stream.symbols().windows(2) {
            let a = self.index[&pair[0]] as usize;
            let b = self.index[&pair[1]] as usize;
            pc.counts[a * k + b] += 1;
        }
        pc
    }
}

/// Joint, conditional and weighted bigram statistics. Rows are the first
/// symbol, columns the second; `alphabet_plus_boundary[0]` is `#`.
#[derive(Debug, Clone, PartialEq)]
pub struct BigramMatrix {
    pub alphabet_plus_boundary: Vec<char>,
    pub counts: Vec<Vec<u64>>,
    /// p(xy)
    pub joint: Vec<Vec<f64>>,
    /// p(y|x); rows of symbols that never occur first are all zero
    pub conditional: Vec<Vec<f64>>,
    /// p(xy) * p(y|x)
    pub weighted: Vec<Vec<f64>>,
}

impl BigramMatrix {
    fn from_pair_counts(symbols: Vec<char>, pc: &PairCounts) -> Self {
        let total = pc.total() as f64;
        let counts: Vec<Vec<u64>> = pc.counts.chunks(pc.k).map(<[u64]>::to_vec).collect();
        let joint: Vec<Vec<f64>> = counts
            .iter()
            .map(|row| row.iter().map(|&c| c as f64 / total).collect())
            .collect();
        let conditional: Vec<Vec<f64>> = counts
            .iter()
            .map(|row| {
                let rs: u64 = row.iter().sum();
                row.iter()
                    .map(|&c| if rs == 0 { 0.0 } else { c as f64 / rs as f64 })
                    .collect()
            })
            .collect();
        let weighted = joint
            .iter()
            .zip(&conditional)
            .map(|(j, c)| j.iter().zip(c).map(|(a, b)| a * b).collect())
            .collect();
        BigramMatrix {
            alphabet_plus_boundary: symbols,
            counts,
            joint,
            conditional,
            weighted,
        }
    }

    pub(crate) fn pair_counts(&self) -> PairCounts {
        PairCounts {
            k: self.alphabet_plus_boundary.len(),
            counts: self.counts.iter().flatten().copied().collect(),
        }
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.alphabet_plus_boundary.iter().position(|&s| s == c)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn count(&self, x: char, y: char) -> u64 {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.counts[i][j],
            _ => 0,
        }
    }

    /// p(y|x), zero when either symbol is absent.
    pub fn conditional_prob(&self, x: char, y: char) -> f64 {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.conditional[i][j],
            _ => 0.0,
        }
    }

    pub fn h1(&self) -> f64 {
        self.pair_counts().h1()
    }

    pub fn h2(&self) -> f64 {
        self.pair_counts().h2()
    }

    /// Per-cell contribution `p(xy) * -log2 p(y|x)`; the cells sum to h2.
    pub fn entropy_contribution(&self) -> Vec<Vec<f64>> {
        self.joint
            .iter()
            .zip(&self.conditional)
            .map(|(j, c)| {
                j.iter()
                    .zip(c)
                    .map(|(&p, &q)| if p > 0.0 { -p * q.log2() } else { 0.0 })
                    .collect()
            })
            .collect()
    }
}

pub fn bigram_matrix(stream: &CharStream) -> Result<BigramMatrix> {
    if stream.len() < 2 {
        return Err(Error::StreamTooShort(stream.len()));
    }
    let enc = Encoder::new(stream.symbol_order());
    let pc = enc.stream_counts(stream);
    Ok(BigramMatrix::from_pair_counts(enc.symbols, &pc))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    /// Distinct characters, boundary excluded.
    pub charset_size: usize,
    /// log2(charset_size + 1)
    #[serde(serialize_with = "serialize_f64")]
    pub h0: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub h1: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub h2: f64,
    /// Characters, boundaries excluded.
    pub token_count: usize,
    pub word_type_count: usize,
    pub word_token_count: usize,
}

pub fn entropy_report(stream: &CharStream) -> Result<EntropyReport> {
    if stream.len() < 2 {
        return Err(Error::StreamTooShort(stream.len()));
    }
    let enc = Encoder::new(stream.symbol_order());
    let pc = enc.stream_counts(stream);
    let words: Vec<&[char]> = stream.words().collect();
    let types: HashSet<&[char]> = words.iter().copied().collect();
    let charset_size = stream.alphabet().len();
    Ok(EntropyReport {
        charset_size,
        h0: ((charset_size + 1) as f64).log2(),
        h1: pc.h1(),
        h2: pc.h2(),
        token_count: words.iter().map(|w| w.len()).sum(),
        word_type_count: types.len(),
        word_token_count: words.len(),
    })
}

/// [`entropy_report`] of a table's stream.
pub fn table_report(table: &LongTable) -> Result<EntropyReport> {
    entropy_report(&to_stream(table)?)
}

/// Default conditional-probability threshold for [`coverage_report`].
pub const DEFAULT_COVERAGE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualifyingBigram {
    pub first: char,
    pub second: char,
    #[serde(serialize_with = "serialize_f64")]
    pub conditional_prob: f64,
    /// Joint probability: the bigram's share of all bigram tokens.
    #[serde(serialize_with = "serialize_f64")]
    pub token_share: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    #[serde(serialize_with = "serialize_f64")]
    pub threshold: f64,
    pub qualifying_bigrams: Vec<QualifyingBigram>,
    #[serde(serialize_with = "serialize_f64")]
    pub total_share: f64,
    /// Share of qualifying bigrams whose second symbol is `#`.
    #[serde(serialize_with = "serialize_f64")]
    pub word_final_share: f64,
}

/// Bigram types whose conditional probability exceeds `threshold`, and the
/// fraction of the text they cover. Listed in matrix order.
pub fn coverage_report(matrix: &BigramMatrix, threshold: f64) -> CoverageReport {
    let total = matrix.total() as f64;
    let mut qualifying = Vec::new();
    let mut covered = 0u64;
    let mut final_covered = 0u64;
    for (i, row) in matrix.counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 && matrix.conditional[i][j] > threshold {
                let second = matrix.alphabet_plus_boundary[j];
                covered += c;
                if second == BOUNDARY {
                    final_covered += c;
                }
                qualifying.push(QualifyingBigram {
                    first: matrix.alphabet_plus_boundary[i],
                    second,
                    conditional_prob: matrix.conditional[i][j],
                    token_share: matrix.joint[i][j],
                });
            }
        }
    }
    let share = |n: u64| if total > 0.0 { n as f64 / total } else { 0.0 };
    CoverageReport {
        threshold,
        qualifying_bigrams: qualifying,
        total_share: share(covered),
        word_final_share: share(final_covered),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatmapMode {
    Conditional,
    Weighted,
    EntropyContribution,
}

impl HeatmapMode {
    pub const ALL: [HeatmapMode; 3] = [
        HeatmapMode::Conditional,
        HeatmapMode::Weighted,
        HeatmapMode::EntropyContribution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            HeatmapMode::Conditional => "conditional",
            HeatmapMode::Weighted => "weighted",
            HeatmapMode::EntropyContribution => "entropy_contribution",
        }
    }
}

impl FromStr for HeatmapMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        HeatmapMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown heatmap mode {s:?}"))
    }
}

/// Square CSV: a header row and a first column of symbols (`#` included),
/// row = first symbol, column = second symbol.
pub fn heatmap_export(matrix: &BigramMatrix, mode: HeatmapMode) -> String {
    let cells = match mode {
        HeatmapMode::Conditional => matrix.conditional.clone(),
        HeatmapMode::Weighted => matrix.weighted.clone(),
        HeatmapMode::EntropyContribution => matrix.entropy_contribution(),
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header: Vec<String> = std::iter::once(String::new())
        .chain(matrix.alphabet_plus_boundary.iter().map(char::to_string))
        .collect();
    w.write_record(&header).expect("in-memory csv");
    for (sym, row) in matrix.alphabet_plus_boundary.iter().zip(&cells) {
        let rec: Vec<String> = std::iter::once(sym.to_string())
            .chain(row.iter().map(|&v| format_float(v)))
            .collect();
        w.write_record(&rec).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_plaintext;

    fn stream(s: &str) -> CharStream {
        CharStream::parse(s).unwrap()
    }

    #[test]
    fn stream_construction() {
        let t = parse_plaintext(b"ab c", "t").unwrap();
        assert_eq!(to_stream(&t).unwrap().to_string(), "#ab#c#");
        let t = parse_plaintext(b"a", "t").unwrap();
        assert_eq!(to_stream(&t).unwrap().to_string(), "#a#");
        let t = parse_plaintext(b"abc de f ghij", "t").unwrap();
        assert_eq!(to_stream(&t).unwrap().len(), 10 + 4 + 1);
        assert!(matches!(
            to_stream(&LongTable::default()),
            Err(Error::EmptyStream)
        ));
        assert!(matches!(
            CharStream::from_words(["a#b"]),
            Err(Error::BoundaryInWord(_))
        ));
        assert!(CharStream::parse("ab#").is_err());
        assert!(CharStream::parse("#a##b#").is_err());
    }

    #[test]
    fn deterministic_successor() {
        let m = bigram_matrix(&stream("#ab#ab#")).unwrap();
        assert_eq!(m.count('a', 'b'), 2);
        assert_eq!(m.conditional_prob('a', 'b'), 1.0);
        assert_eq!(m.count('#', '#'), 0);
        assert_eq!(m.total(), 6);
    }

    #[test]
    fn short_stream_is_an_error() {
        let s = CharStream::parse("#").unwrap();
        assert!(matches!(bigram_matrix(&s), Err(Error::StreamTooShort(1))));
        assert!(matches!(entropy_report(&s), Err(Error::StreamTooShort(1))));
    }

    #[test]
    fn alternating_stream_entropy() {
        // #abababab#: pairs #a, (ab, ba) x3, ab, b# = 9 pairs.
        // a -> b always (4/4); b -> a 3/4, b -> # 1/4; # -> a 1/1.
        // h2 = (4/9) * H(3/4, 1/4)
        let r = entropy_report(&stream("#abababab#")).unwrap();
        let hb = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert!((r.h2 - 4.0 / 9.0 * hb).abs() < 1e-15);
        // marginal: # 1, a 4, b 4
        let h1 = -(1.0 / 9.0 * (1.0f64 / 9.0).log2() + 2.0 * 4.0 / 9.0 * (4.0f64 / 9.0).log2());
        assert!((r.h1 - h1).abs() < 1e-15);
        assert_eq!(r.charset_size, 2);
        assert_eq!(r.h0, 3f64.log2());
        assert_eq!(r.word_token_count, 1);
        assert_eq!(r.token_count, 8);
    }

    #[test]
    fn report_counts() {
        let t = parse_plaintext(b"the cat the dog", "t").unwrap();
        let r = table_report(&t).unwrap();
        assert_eq!(r.word_token_count, 4);
        assert_eq!(r.word_type_count, 3);
        assert_eq!(r.token_count, 12);
        assert_eq!(r.charset_size, 8);
        assert!(r.h2 <= r.h1 && r.h1 <= r.h0);
    }

    #[test]
    fn conditional_rows_and_weighted_cells() {
        let m = bigram_matrix(&stream("#the#cat#sat#on#the#mat#")).unwrap();
        let joint_sum: f64 = m.joint.iter().flatten().sum();
        assert!((joint_sum - 1.0).abs() < 1e-12);
        for (row, counts) in m.conditional.iter().zip(&m.counts) {
            if counts.iter().any(|&c| c > 0) {
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
        for i in 0..m.joint.len() {
            for j in 0..m.joint.len() {
                assert_eq!(m.weighted[i][j], m.joint[i][j] * m.conditional[i][j]);
            }
        }
    }

    #[test]
    fn coverage_lists_types_above_threshold() {
        // pairs: #q qu u# #a ax x# #a ay y# #a az z#
        let m = bigram_matrix(&stream("#qu#ax#ay#az#")).unwrap();
        let cov = coverage_report(&m, 0.5);
        let pairs: Vec<_> = cov
            .qualifying_bigrams
            .iter()
            .map(|b| (b.first, b.second))
            .collect();
        assert_eq!(
            pairs,
            [
                ('#', 'a'),
                ('q', 'u'),
                ('u', '#'),
                ('x', '#'),
                ('y', '#'),
                ('z', '#')
            ]
        );
        assert!((cov.total_share - 8.0 / 12.0).abs() < 1e-15);
        assert!((cov.word_final_share - 4.0 / 12.0).abs() < 1e-15);
        assert!(coverage_report(&m, 1.0).qualifying_bigrams.is_empty());
    }

    #[test]
    fn single_qualifying_bigram() {
        // every row is at most half one successor except q -> u
        let s = "#ab#ac#ad#ba#bc#bd#ca#cb#cd#da#db#dc#quab#quba#";
        let m = bigram_matrix(&stream(s)).unwrap();
        let cov = coverage_report(&m, 0.5);
        assert_eq!(cov.qualifying_bigrams.len(), 1);
        let q = &cov.qualifying_bigrams[0];
        assert_eq!((q.first, q.second, q.conditional_prob), ('q', 'u', 1.0));
        assert_eq!(q.token_share, 2.0 / 46.0);
        assert_eq!(cov.total_share, q.token_share);
        assert_eq!(cov.word_final_share, 0.0);
    }

    #[test]
    fn heatmap_shapes_and_sums() {
        let m = bigram_matrix(&stream("#ab#ba#a#")).unwrap();
        let csv = heatmap_export(&m, HeatmapMode::Conditional);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], ",#,a,b");
        assert!(lines.iter().all(|l| l.split(',').count() == 4));

        let parse_sum = |csv: &str| -> f64 {
            csv.lines()
                .skip(1)
                .flat_map(|l| l.split(',').skip(1).map(|v| v.parse::<f64>().unwrap()))
                .sum()
        };
        let h2 = entropy_report(&stream("#ab#ba#a#")).unwrap().h2;
        let contrib = heatmap_export(&m, HeatmapMode::EntropyContribution);
        assert!((parse_sum(&contrib) - h2).abs() < 1e-9);
        let weighted = parse_sum(&heatmap_export(&m, HeatmapMode::Weighted));
        assert!(weighted <= 1.0 + 1e-12);
        let direct: f64 = m.entropy_contribution().iter().flatten().sum();
        assert!((direct - m.h2()).abs() < 1e-12);
    }

    #[test]
    fn bounds_on_tiny_inputs() {
        for s in ["#a#", "#a#b#", "#ab#", "#aaaa#", "#abc#cba#"] {
            let r = entropy_report(&stream(s)).unwrap();
            assert!(
                r.h2 >= 0.0 && r.h2 <= r.h1 + 1e-12 && r.h1 <= r.h0 + 1e-12,
                "{s}: {r:?}"
            );
        }
    }
}
