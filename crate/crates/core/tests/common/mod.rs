//! Test-only oracles and synthetic corpora.
//!
//! The oracle works on the literal `#w1#w2#...#` string with hash-map
//! tallies and the textbook formulas, sharing no code with the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use voystat_core::LongTable;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Brute-force statistics of a word list.
#[derive(Debug)]
pub struct Oracle {
    pub pairs: HashMap<(char, char), u64>,
    pub n_pairs: u64,
    pub h1: f64,
    pub h2: f64,
    pub charset: usize,
}

impl Oracle {
    pub fn of_words<S: AsRef<str>>(words: &[S]) -> Oracle {
        let joined: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
        let text = format!("#{}#", joined.join("#"));
        let chars: Vec<char> = text.chars().collect();

        let mut pairs: HashMap<(char, char), u64> = HashMap::new();
        let mut left: HashMap<char, u64> = HashMap::new();
        for i in 0..chars.len() - 1 {
            *pairs.entry((chars[i], chars[i + 1])).or_default() += 1;
            *left.entry(chars[i]).or_default() += 1;
        }
        let n = (chars.len() - 1) as f64;

        let mut h1 = 0.0;
        for &c in left.values() {
            let p = c as f64 / n;
            h1 -= p * p.log2();
        }
        let mut h2 = 0.0;
        for (&(x, _), &c) in &pairs {
            let pxy = c as f64 / n;
            let px = left[&x] as f64 / n;
            h2 -= pxy * (pxy / px).log2();
        }
        let charset = chars
            .iter()
            .filter(|&&c| c != '#')
            .collect::<BTreeSet<_>>()
            .len();
        Oracle {
            pairs,
            n_pairs: n as u64,
            h1,
            h2,
            charset,
        }
    }

    pub fn joint(&self, x: char, y: char) -> f64 {
        self.pairs.get(&(x, y)).copied().unwrap_or(0) as f64 / self.n_pairs as f64
    }
}

pub fn table_of<S: AsRef<str>>(words: &[S]) -> LongTable {
    let text: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
    voystat_core::parse_plaintext(text.join(" ").as_bytes(), "synthetic").unwrap()
}

const POOL: &[char] = &[
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'k', 'l', 'm', 'n', 'o', 'p', 'r', 's', 't', 'u',
    'v', 'x', 'y', 'z', 'ä', 'ö', 'ç', 'ж', 'ш', 'λ', 'α', 'ﬀ', '\'', '*',
];

/// A random document: alphabet of 1..=`max_alphabet` symbols, 1..=`max_words`
/// words of 1..=8 characters.
pub fn random_document(r: &mut impl Rng, max_alphabet: usize, max_words: usize) -> Vec<String> {
    let k = r.gen_range(1..=max_alphabet);
    let mut pool = POOL.to_vec();
    pool.shuffle(r);
    let alphabet = &pool[..k];
    let n = r.gen_range(1..=max_words);
    (0..n)
        .map(|_| {
            let len = r.gen_range(1..=8);
            (0..len).map(|_| alphabet[r.gen_range(0..k)]).collect()
        })
        .collect()
}

/// A random bijection over the characters of `words`, fixing nothing but `#`.
pub fn random_relabeling(r: &mut impl Rng, words: &[String]) -> BTreeMap<char, char> {
    let alphabet: BTreeSet<char> = words.iter().flat_map(|w| w.chars()).collect();
    let mut targets: Vec<char> = (0x3041u32..0x3041 + 200)
        .filter_map(char::from_u32)
        .chain(POOL.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    targets.shuffle(r);
    alphabet.into_iter().zip(targets).collect()
}

pub fn relabel(words: &[String], map: &BTreeMap<char, char>) -> Vec<String> {
    words
        .iter()
        .map(|w| w.chars().map(|c| map[&c]).collect())
        .collect()
}

/// Strict CV language: every word is CVCV over the given inventories,
/// each phoneme chosen uniformly.
pub fn cv_corpus(
    r: &mut impl Rng,
    consonants: &[char],
    vowels: &[char],
    words: usize,
) -> Vec<String> {
    (0..words)
        .map(|_| {
            let mut w = String::new();
            for _ in 0..2 {
                w.push(*consonants.choose(r).unwrap());
                w.push(*vowels.choose(r).unwrap());
            }
            w
        })
        .collect()
}

/// Five consonants and three vowels drawn from a shuffled pool.
pub fn random_phonology(r: &mut impl Rng) -> (Vec<char>, Vec<char>) {
    let mut pool: Vec<char> = ('a'..='z').chain('α'..='ω').collect();
    pool.shuffle(r);
    (pool[..5].to_vec(), pool[5..8].to_vec())
}

/// Natural-language-like text: a lexicon generated from a letter Markov
/// chain, sampled with Zipfian word frequencies.
pub fn zipf_corpus(seed: u64, lexicon_size: usize, tokens: usize) -> Vec<String> {
    let mut r = rng(seed);
    let letters: Vec<char> = "etaoinshrdlcumwfgypbvkjxqz".chars().collect();
    // skewed letter weights, English-like in spirit
    let weights: Vec<f64> = (0..letters.len())
        .map(|i| 1.0 / (1.0 + i as f64).powf(0.9))
        .collect();
    let pick = |r: &mut ChaCha8Rng, w: &[f64]| {
        let total: f64 = w.iter().sum();
        let mut x = r.gen::<f64>() * total;
        for (i, &wi) in w.iter().enumerate() {
            if x < wi {
                return i;
            }
            x -= wi;
        }
        w.len() - 1
    };
    // each letter prefers a handful of successors
    let successor_weights: Vec<Vec<f64>> = (0..letters.len())
        .map(|_| {
            weights
                .iter()
                .map(|&w| if r.gen_bool(0.3) { w * 4.0 } else { w * 0.5 })
                .collect()
        })
        .collect();
    let mut lexicon = BTreeSet::new();
    while lexicon.len() < lexicon_size {
        let len = 1 + (r.gen::<f64>() * r.gen::<f64>() * 10.0) as usize;
        let mut i = pick(&mut r, &weights);
        let mut w = String::new();
        w.push(letters[i]);
        for _ in 1..len {
            i = pick(&mut r, &successor_weights[i]);
            w.push(letters[i]);
        }
        lexicon.insert(w);
    }
    let mut lexicon: Vec<String> = lexicon.into_iter().collect();
    lexicon.shuffle(&mut r);
    let zipf: Vec<f64> = (0..lexicon.len()).map(|i| 1.0 / (1.0 + i as f64)).collect();
    // cumulative table for fast sampling
    let mut cdf = Vec::with_capacity(zipf.len());
    let mut acc = 0.0;
    for z in &zipf {
        acc += z;
        cdf.push(acc);
    }
    (0..tokens)
        .map(|_| {
            let x = r.gen::<f64>() * acc;
            let i = cdf.partition_point(|&c| c < x).min(lexicon.len() - 1);
            lexicon[i].clone()
        })
        .collect()
}

/// A corpus whose only bigrams with conditional probability above one half
/// are `qu` (.96), `y#` (.75), `ve` (.59) and `d#` (.54), jointly covering
/// about 3.3% of all bigram tokens.
pub fn english_coverage_fixture(seed: u64) -> Vec<String> {
    let mut r = rng(seed);
    // filler letters exclude the four controlled first symbols
    let filler: Vec<char> = "abcefghijklmnoprstuwxz".chars().collect();
    let fill = |r: &mut ChaCha8Rng, n: usize| -> String {
        (0..n)
            .map(|_| *filler.choose(r).unwrap())
            .collect::<String>()
    };
    let mut words: Vec<String> = Vec::new();
    // q: 250 occurrences, 240 followed by u, 10 by i
    for i in 0..250 {
        let next = if i < 240 { 'u' } else { 'i' };
        words.push(format!("{}q{}{}", fill(&mut r, 1), next, fill(&mut r, 2)));
    }
    // y: 2000 occurrences, 1500 word-final
    for i in 0..2000 {
        if i < 1500 {
            words.push(format!("{}y", fill(&mut r, 3)));
        } else {
            words.push(format!("{}y{}", fill(&mut r, 2), fill(&mut r, 2)));
        }
    }
    // v: 1000 occurrences, 590 followed by e
    for i in 0..1000 {
        let next = if i < 590 {
            'e'
        } else {
            **filler
                .iter()
                .filter(|&&c| c != 'e')
                .collect::<Vec<_>>()
                .choose(&mut r)
                .unwrap()
        };
        words.push(format!("{}v{}{}", fill(&mut r, 1), next, fill(&mut r, 1)));
    }
    // d: 1500 occurrences, 810 word-final
    for i in 0..1500 {
        if i < 810 {
            words.push(format!("{}d", fill(&mut r, 3)));
        } else {
            words.push(format!("{}d{}", fill(&mut r, 2), fill(&mut r, 2)));
        }
    }
    // filler words bring the qualifying share to about 3.3%
    let mut pairs: usize = words.iter().map(|w| w.chars().count() + 1).sum::<usize>() + 1;
    let target_pairs = (3140.0f64 / 0.033) as usize;
    while pairs < target_pairs {
        let len = r.gen_range(2..=7);
        let w = fill(&mut r, len);
        pairs += len + 1;
        words.push(w);
    }
    words.shuffle(&mut r);
    words
}
