mod common;

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use voystat_core::ingest::FolioMeta;
use voystat_core::metrics::table_report;
use voystat_core::{
    bigram_matrix, charset_report, cleanse, coverage_report, detect_vowels, entropy_report,
    parse_interlinear, parse_plaintext, sample_h2, select, CharStream, CleanseConfig,
    FolioMetadataMap, Hand, Language, SamplingConfig,
};

use common::*;

#[test]
fn cleanse_drops_two_stray_letters() {
    let mut r = rng(27);
    let base: Vec<char> = ('a'..='y').collect();
    let mut words: Vec<String> = (0..40_000)
        .map(|_| (0..5).map(|_| base[r.gen_range(0..25)]).collect())
        .collect();
    // 200,000 letters plus 10 each of ü and ç: 0.005% apiece
    for i in 0..10 {
        words[i * 7] = format!("{}ü", &words[i * 7][1..]);
        words[i * 7 + 3] = format!("ç{}", &words[i * 7 + 3][1..]);
    }
    let t = table_of(&words);
    let before: BTreeSet<char> = t.words().flat_map(str::chars).collect();
    assert_eq!(before.len(), 27);

    let out = cleanse(&t, &CleanseConfig::default());
    let after: BTreeSet<char> = out.words().flat_map(str::chars).collect();
    assert_eq!(after.len(), 25);
    assert!(!after.contains(&'ü') && !after.contains(&'ç'));
    assert_eq!(out.len(), t.len());

    // removing under 0.15% of the mass barely moves h2
    let h_before = table_report(&t).unwrap().h2;
    let h_after = table_report(&out).unwrap().h2;
    assert!(((h_after - h_before) / h_before).abs() <= 0.001);
}

#[test]
fn rare_mass_removal_is_small() {
    let words = zipf_corpus(3, 3000, 200_000);
    let mut words = words;
    // accented letters confined to a few borrowed word types, about 0.1%
    // of all letters, each spelled the same way wherever it occurs
    let mut r = rng(4);
    let letters: usize = words.iter().map(|w| w.chars().count()).sum();
    let pairs = [
        ('a', 'à'),
        ('e', 'é'),
        ('n', 'ñ'),
        ('o', 'ø'),
        ('s', 'ß'),
        ('t', 'þ'),
        ('d', 'ð'),
        ('i', 'î'),
        ('u', 'ü'),
    ];
    let stray: Vec<char> = pairs.iter().map(|p| p.1).collect();
    let mut freq: std::collections::BTreeMap<&str, usize> = Default::default();
    for w in &words {
        *freq.entry(w.as_str()).or_default() += 1;
    }
    let mut types: Vec<(&str, usize)> = freq.into_iter().collect();
    types.shuffle(&mut r);
    let mut loans: std::collections::HashMap<String, String> = Default::default();
    let mut done = 0;
    let mut k = 0;
    for (ty, n) in types {
        if done >= letters / 1000 {
            break;
        }
        let (plain, accented) = pairs[k % pairs.len()];
        let Some(pos) = ty.find(plain) else { continue };
        if done + n > letters * 3 / 2000 {
            continue;
        }
        let mut loan = ty.to_string();
        loan.replace_range(pos..pos + 1, &accented.to_string());
        loans.insert(ty.to_string(), loan);
        done += n;
        k += 1;
    }
    for w in words.iter_mut() {
        if let Some(loan) = loans.get(w) {
            *w = loan.clone();
        }
    }
    assert!(k >= pairs.len() && (done as f64) < letters as f64 * 0.0015);
    let t = table_of(&words);
    let cfg = CleanseConfig {
        rare_char_threshold: 0.001,
        ..CleanseConfig::default()
    };
    let out = cleanse(&t, &cfg);
    let kept: BTreeSet<char> = out.words().flat_map(str::chars).collect();
    let removed: BTreeSet<char> = t
        .words()
        .flat_map(str::chars)
        .filter(|c| !kept.contains(c))
        .collect();
    assert!(!removed.is_empty() && removed.iter().all(|c| stray.contains(c)));
    let removed_mass = t
        .words()
        .flat_map(str::chars)
        .filter(|c| removed.contains(c))
        .count();
    assert!((removed_mass as f64) < letters as f64 * 0.0015);
    let (a, b) = (table_report(&t).unwrap().h2, table_report(&out).unwrap().h2);
    assert!(((a - b) / a).abs() <= 0.001, "{a} vs {b}");
}

#[test]
fn uniform_sixteen_symbols_reach_four_bits() {
    let mut r = rng(16);
    let alphabet: Vec<char> = "abcdefghijklmnop".chars().collect();
    // one long word: 10^6 symbols, boundary only at the ends
    let word: String = (0..1_000_000)
        .map(|_| alphabet[r.gen_range(0..16)])
        .collect();
    let rep = entropy_report(&CharStream::from_words([word]).unwrap()).unwrap();
    assert!((rep.h2 - 4.0).abs() < 0.05, "{}", rep.h2);
    assert_eq!(rep.charset_size, 16);
}

#[test]
fn english_like_coverage() {
    let words = english_coverage_fixture(1);
    let m = bigram_matrix(&CharStream::from_words(&words).unwrap()).unwrap();
    let cov = coverage_report(&m, 0.5);
    let got: Vec<(char, char)> = cov
        .qualifying_bigrams
        .iter()
        .map(|b| (b.first, b.second))
        .collect();
    let want: BTreeSet<(char, char)> = [('q', 'u'), ('y', '#'), ('v', 'e'), ('d', '#')].into();
    assert_eq!(got.iter().copied().collect::<BTreeSet<_>>(), want);
    assert_eq!(got.len(), 4);
    assert!(
        (cov.total_share - 0.033).abs() <= 0.002,
        "{}",
        cov.total_share
    );
    for (x, y, p) in [
        ('q', 'u', 0.96),
        ('y', '#', 0.75),
        ('v', 'e', 0.59),
        ('d', '#', 0.54),
    ] {
        assert!((m.conditional_prob(x, y) - p).abs() < 1e-12);
    }
}

#[test]
fn smaller_windows_spread_wider() {
    let words = zipf_corpus(8, 5000, 40_000);
    let t = table_of(&words);
    let cfg = SamplingConfig {
        window_sizes: vec![50, 5000],
        samples_per_size: 200,
        seed: 12,
    };
    let d = sample_h2(&t, &cfg).unwrap();
    assert!(d[0].sd > d[1].sd);
    assert!(d.iter().all(|x| x.min <= x.mean && x.mean <= x.max));
}

#[test]
fn sukhotin_recovers_cv_vowels() {
    for seed in 0..10 {
        let mut r = rng(seed);
        let (cons, vowels) = random_phonology(&mut r);
        let words = cv_corpus(&mut r, &cons, &vowels, 2000);
        let s = CharStream::from_words(&words).unwrap();
        let res = detect_vowels(&s, false);
        let got: BTreeSet<char> = res.vowels.iter().copied().collect();
        assert_eq!(got, vowels.iter().copied().collect(), "seed {seed}");
        assert!(res.iterations <= s.alphabet().len());
        // the word boundary dominates once it is allowed in
        assert_eq!(detect_vowels(&s, true).vowels[0], '#');
    }
    assert!(
        detect_vowels(&CharStream::parse("#aaaa#aa#").unwrap(), false)
            .vowels
            .is_empty()
    );
}

fn meta_three_hands() -> FolioMetadataMap {
    let mut m = FolioMetadataMap::default();
    for (f, lang, hand) in [
        ("f1r", Language::A, 1),
        ("f2r", Language::B, 3),
        ("f3r", Language::B, 3),
    ] {
        m.insert(
            f,
            FolioMeta {
                section: "herbal".into(),
                language: lang,
                hand: Hand::scribe(hand).unwrap(),
                quire: "A".into(),
            },
        );
    }
    m
}

#[test]
fn hand_filter_counts_exactly() {
    // f1r: 5 words, f2r: 4 words, f3r: 3 words of which 1 is a label
    let src = "\
<f1r.P1.1;H>      daiin.chol.okaiin-
<f1r.P1.2;H>      shol.dy=
<f2r.P1.1;H>      qokeedy.qokain.chedy.ol=
<f3r.P1.1;H>      otedy.okal-
<f3r.L1.2;H>      otol
";
    let t = parse_interlinear(src.as_bytes(), &meta_three_hands(), None).unwrap();
    assert_eq!(t.len(), 12);
    let hand3 = select(&t, |r| r.hand == Hand::scribe(3).unwrap());
    assert_eq!(hand3.len(), 7);
    let b_text = select(&t, |r| {
        r.language == Language::B && r.locus_kind == voystat_core::LocusKind::Paragraph
    });
    assert_eq!(b_text.len(), 6);
}

#[test]
fn plaintext_word_count() {
    let mut r = rng(10);
    let mut text = String::new();
    for i in 0..10_000 {
        let len = r.gen_range(1..9);
        let w: String = (0..len).map(|_| r.gen_range(b'a'..=b'z') as char).collect();
        text.push_str(&w);
        text.push(match i % 13 {
            0 => '\n',
            5 => '\t',
            _ => ' ',
        });
    }
    let t = parse_plaintext(text.as_bytes(), "synthetic").unwrap();
    assert_eq!(t.len(), text.split_whitespace().count());
    assert_eq!(t.len(), 10_000);
}

#[test]
fn paragraph_positions() {
    let t = parse_plaintext(b"alpha\nbeta\n\ngamma\ndelta\n", "p").unwrap();
    let fwd: Vec<u32> = t.records.iter().map(|r| r.para_pos_fwd).collect();
    assert_eq!(fwd, [1, 2, 1, 2]);
    let rev: Vec<u32> = t.records.iter().map(|r| r.para_pos_rev).collect();
    assert_eq!(rev, [2, 1, 2, 1]);

    let src = "<f1r.P1.1;H> a\n<f1r.P1.2;H> b=\n<f1r.P1.3;H> c\n<f1r.P1.4;H> d\n";
    let t = parse_interlinear(src.as_bytes(), &meta_three_hands(), None).unwrap();
    let fwd: Vec<u32> = t.records.iter().map(|r| r.para_pos_fwd).collect();
    assert_eq!(fwd, [1, 2, 1, 2]);
}

#[test]
fn charset_report_counts_boundaries_per_word() {
    let t = parse_plaintext(b"aab", "c").unwrap();
    let rep = charset_report(&t);
    let got: Vec<(char, u64)> = rep.iter().map(|c| (c.ch, c.count)).collect();
    assert_eq!(got, [('a', 2), ('#', 1), ('b', 1)]);
}
