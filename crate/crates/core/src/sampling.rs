//! Bootstrap distribution of h2 over random contiguous word windows.
//!
//! For a window of `W` words, each sample draws a start index uniformly from
//! `0..=N-W` and computes h2 of those `W` words with fresh leading and
//! trailing boundaries. Windows may overlap and ignore paragraph boundaries.
//!
//! Every `(window, sample index)` pair gets its own generator: ChaCha8 seeded
//! with `splitmix64(splitmix64(seed ^ splitmix64(window)) ^ index)`. Parallel
//! and serial runs therefore produce identical values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::{format_float, serialize_f64};
use crate::ingest::LongTable;
use crate::metrics::{Encoder, PairCounts};

pub const DEFAULT_SAMPLES_PER_SIZE: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingConfig {
    pub window_sizes: Vec<usize>,
    pub samples_per_size: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            window_sizes: vec![50, 500, 5000],
            samples_per_size: DEFAULT_SAMPLES_PER_SIZE,
            seed: 0,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self, word_count: usize) -> Result<()> {
        if self.samples_per_size == 0 {
            return Err(Error::Config("samples per size must be at least 1".into()));
        }
        if self.window_sizes.is_empty() {
            return Err(Error::Config("no window sizes given".into()));
        }
        for &w in &self.window_sizes {
            if w == 0 {
                return Err(Error::Config("window size must be positive".into()));
            }
            if w > word_count {
                return Err(Error::WindowTooLarge {
                    window: w,
                    words: word_count,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleDistribution {
    pub window_size: usize,
    pub values: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single value.
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

impl SampleDistribution {
    pub fn from_values(window_size: usize, values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "distribution needs at least one value");
        let n = values.len() as f64;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // shifted by min so identical values give back exactly that value
        let mean = min + values.iter().map(|v| v - min).sum::<f64>() / n;
        let sd = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        SampleDistribution {
            window_size,
            values,
            mean,
            sd,
            min,
            max,
        }
    }

    pub fn summary(&self, with_values: bool) -> SampleSummary<'_> {
        SampleSummary {
            window: self.window_size,
            n: self.values.len(),
            mean: self.mean,
            sd: self.sd,
            min: self.min,
            max: self.max,
            values: with_values.then_some(SampleValues(&self.values)),
        }
    }
}

/// JSON view of a [`SampleDistribution`].
#[derive(Debug, Serialize)]
pub struct SampleSummary<'a> {
    pub window: usize,
    pub n: usize,
    #[serde(serialize_with = "serialize_f64")]
    pub mean: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub sd: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub min: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<SampleValues<'a>>,
}

#[derive(Debug)]
pub struct SampleValues<'a>(&'a [f64]);

impl Serialize for SampleValues<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::fmt::serialize_f64_vec(self.0, s)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the generator used for one sample.
pub fn sub_seed(seed: u64, window: usize, index: usize) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(window as u64)) ^ index as u64)
}

/// Start index of one sampled window over `word_count` words.
pub fn window_start(seed: u64, window: usize, index: usize, word_count: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, window, index));
    rng.gen_range(0..=word_count - window)
}

pub fn sample_h2(table: &LongTable, cfg: &SamplingConfig) -> Result<Vec<SampleDistribution>> {
    let n = table.len();
    cfg.validate(n)?;
    let enc = Encoder::for_table(table)?;
    let encoded: Vec<Vec<u16>> = table.words().map(|w| enc.encode(w)).collect();
    let k = enc.k();

    Ok(cfg
        .window_sizes
        .iter()
        .map(|&w| {
            let values: Vec<f64> = (0..cfg.samples_per_size)
                .into_par_iter()
                .map_init(
                    || PairCounts::zeros(k),
                    |pc, i| {
                        let start = window_start(cfg.seed, w, i, n);
                        pc.clear();
                        pc.add_words(encoded[start..start + w].iter().map(Vec::as_slice));
                        pc.h2()
                    },
                )
                .collect();
            SampleDistribution::from_values(w, values)
        })
        .collect())
}

/// Long-form CSV (`window,sample,h2`) for density plots.
pub fn to_long_csv(dists: &[SampleDistribution]) -> String {
    let mut out = String::from("window,sample,h2\n");
    for d in dists {
        for (i, v) in d.values.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", d.window_size, i, format_float(*v)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_plaintext;
    use crate::metrics::table_report;

    fn corpus() -> LongTable {
        let text = "the quick brown fox jumps over the lazy dog and then sleeps ".repeat(20);
        parse_plaintext(text.as_bytes(), "t").unwrap()
    }

    #[test]
    fn full_window_has_no_spread() {
        let t = corpus();
        let cfg = SamplingConfig {
            window_sizes: vec![t.len()],
            samples_per_size: 25,
            seed: 7,
        };
        let d = &sample_h2(&t, &cfg).unwrap()[0];
        let full = table_report(&t).unwrap().h2;
        assert_eq!(d.sd, 0.0);
        assert_eq!(d.mean, full);
        assert_eq!(d.min, full);
        assert_eq!(d.max, full);
    }

    #[test]
    fn deterministic_given_seed() {
        let t = corpus();
        let cfg = SamplingConfig {
            window_sizes: vec![5, 40],
            samples_per_size: 200,
            seed: 99,
        };
        let a = sample_h2(&t, &cfg).unwrap();
        let b = sample_h2(&t, &cfg).unwrap();
        assert_eq!(a, b);
        let other = sample_h2(&t, &SamplingConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a[0].values, other[0].values);
    }

    #[test]
    fn matches_serial_recomputation() {
        let t = corpus();
        let cfg = SamplingConfig {
            window_sizes: vec![13],
            samples_per_size: 50,
            seed: 3,
        };
        let d = &sample_h2(&t, &cfg).unwrap()[0];
        for (i, &v) in d.values.iter().enumerate() {
            let start = window_start(3, 13, i, t.len());
            let window = LongTable::new("w", t.records[start..start + 13].to_vec());
            assert_eq!(v, table_report(&window).unwrap().h2);
        }
    }

    #[test]
    fn starts_cover_the_range() {
        let mut seen = [false; 11];
        for i in 0..500 {
            seen[window_start(1, 10, i, 20)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn oversized_window_names_the_size() {
        let t = corpus();
        let cfg = SamplingConfig {
            window_sizes: vec![10, t.len() + 1],
            samples_per_size: 10,
            seed: 0,
        };
        match sample_h2(&t, &cfg) {
            Err(Error::WindowTooLarge { window, words }) => {
                assert_eq!(window, t.len() + 1);
                assert_eq!(words, t.len());
            }
            other => panic!("{other:?}"),
        }
        let zero = SamplingConfig {
            samples_per_size: 0,
            ..SamplingConfig::default()
        };
        assert!(matches!(sample_h2(&t, &zero), Err(Error::Config(_))));
    }

    #[test]
    fn summary_statistics() {
        let d = SampleDistribution::from_values(3, vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.mean, 2.5);
        assert!((d.sd - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!((d.min, d.max), (1.0, 4.0));
        let one = SampleDistribution::from_values(3, vec![0.7]);
        assert_eq!((one.mean, one.sd), (0.7, 0.0));
    }

    #[test]
    fn long_csv_layout() {
        let d = SampleDistribution::from_values(50, vec![1.5, 2.0]);
        assert_eq!(to_long_csv(&[d]), "window,sample,h2\n50,0,1.5\n50,1,2\n");
    }
}
