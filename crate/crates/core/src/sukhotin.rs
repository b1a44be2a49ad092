//! Sukhotin's vowel identification.
//!
//! Symbols are counted as adjacent whenever they appear next to each other in
//! the stream, in either order; self-adjacency is ignored. Each symbol starts
//! with its row sum. Repeatedly, the remaining symbol with the largest
//! positive sum is taken as a vowel and every other remaining symbol loses
//! twice its adjacency count with that vowel. The procedure stops once no
//! remaining sum is positive. Ties go to the symbol seen first in the stream.

use serde::Serialize;

use crate::error::Result;
use crate::ingest::LongTable;
use crate::metrics::{to_stream, CharStream, BOUNDARY};

/// Symmetric adjacency counts with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    /// First-occurrence order.
    pub symbols: Vec<char>,
    pub counts: Vec<Vec<u64>>,
}

impl AdjacencyMatrix {
    /// With `include_space` false, `#` is dropped along with every pair it
    /// takes part in; otherwise it is an ordinary symbol.
    pub fn from_stream(stream: &CharStream, include_space: bool) -> Self {
        let keep = |c: char| include_space || c != BOUNDARY;
        let mut symbols: Vec<char> = Vec::new();
        for &c in stream.symbols() {
            if keep(c) && !symbols.contains(&c) {
                symbols.push(c);
            }
        }
        let index = |c: char| symbols.iter().position(|&s| s == c);
        let n = symbols.len();
        let mut counts = vec![vec![0u64; n]; n];
        for pair in stream.symbols().windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !keep(a) || !keep(b) {
                continue;
            }
            let (i, j) = (index(a).unwrap(), index(b).unwrap());
            counts[i][j] += 1;
            counts[j][i] += 1;
        }
        AdjacencyMatrix { symbols, counts }
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.counts
            .iter()
            .map(|r| r.iter().sum::<u64>() as i64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SukhotinResult {
    pub include_space: bool,
    /// In the order they were selected.
    pub vowels: Vec<char>,
    /// Selection rounds performed, equal to the number of vowels.
    pub iterations: usize,
    /// Working sum of every symbol when the procedure stopped, in
    /// first-occurrence order.
    pub final_sums: Vec<(char, i64)>,
}

pub fn detect_vowels(stream: &CharStream, include_space: bool) -> SukhotinResult {
    let adj = AdjacencyMatrix::from_stream(stream, include_space);
    let mut sums = adj.row_sums();
    let mut selected = vec![false; adj.symbols.len()];
    let mut vowels = Vec::new();

    loop {
        let mut best: Option<usize> = None;
        for i in (0..sums.len()).filter(|&i| !selected[i]) {
            if best.is_none_or(|b| sums[i] > sums[b]) {
                best = Some(i);
            }
        }
        let Some(v) = best.filter(|&b| sums[b] > 0) else {
            break;
        };
        selected[v] = true;
        vowels.push(adj.symbols[v]);
        for c in 0..sums.len() {
            if !selected[c] {
                sums[c] -= 2 * adj.counts[v][c] as i64;
            }
        }
    }

    SukhotinResult {
        include_space,
        iterations: vowels.len(),
        vowels,
        final_sums: adj.symbols.iter().copied().zip(sums).collect(),
    }
}

/// [`detect_vowels`] on a table's stream. Fails on an empty table.
pub fn detect_on_document(table: &LongTable, include_space: bool) -> Result<SukhotinResult> {
    Ok(detect_vowels(&to_stream(table)?, include_space))
}
