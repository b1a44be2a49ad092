//! Deterministic inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use voystat_core::{parse_plaintext, LongTable};

/// EVA-flavoured syllables, so the shipped rule tables have work to do.
const SYLLABLES: &[&str] = &[
    "qo", "k", "ee", "dy", "ch", "sh", "ol", "ai", "in", "iin", "ar", "or", "ckh", "cth", "y",
    "ot", "al", "s", "d", "l", "r", "e", "o", "a",
];

/// `words` pseudo-words of one to four syllables.
pub fn eva_like(words: usize, seed: u64) -> Vec<String> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..words)
        .map(|_| {
            (0..r.gen_range(1..=4))
                .map(|_| SYLLABLES[r.gen_range(0..SYLLABLES.len())])
                .collect()
        })
        .collect()
}

pub fn eva_table(words: usize, seed: u64) -> LongTable {
    parse_plaintext(eva_like(words, seed).join(" ").as_bytes(), "bench").expect("valid text")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_deterministic() {
        assert_eq!(eva_like(100, 1), eva_like(100, 1));
        assert_eq!(eva_table(250, 2).len(), 250);
    }
}
