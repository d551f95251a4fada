//! Monte Carlo estimates, streaming moments and the shard-parallel driver.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::measures::RngStream;

/// Mean of `N` i.i.d. draws together with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    #[serde(rename = "se")]
    pub standard_error: f64,
    #[serde(rename = "n")]
    pub sample_count: u64,
    #[serde(rename = "rejections")]
    pub degenerate_rejections: u64,
}

impl MCEstimate {
    /// A known value, carried with zero error.
    pub fn exact(value: f64) -> Self {
        MCEstimate { mean: value, standard_error: 0.0, sample_count: 0, degenerate_rejections: 0 }
    }

    /// Sum of two independent estimates.
    pub fn add(&self, other: &MCEstimate) -> MCEstimate {
        MCEstimate {
            mean: self.mean + other.mean,
            standard_error: self.standard_error.hypot(other.standard_error),
            sample_count: self.sample_count + other.sample_count,
            degenerate_rejections: self.degenerate_rejections + other.degenerate_rejections,
        }
    }

    pub fn scale(&self, factor: f64) -> MCEstimate {
        MCEstimate {
            mean: self.mean * factor,
            standard_error: self.standard_error * factor.abs(),
            ..*self
        }
    }

    /// Ratio `self / other` of independent estimates, first-order (delta
    /// method) error.
    pub fn ratio(&self, other: &MCEstimate) -> MCEstimate {
        let r = self.mean / other.mean;
        let rel = (self.standard_error / self.mean).hypot(other.standard_error / other.mean);
        MCEstimate {
            mean: r,
            standard_error: (r * rel).abs(),
            sample_count: self.sample_count.min(other.sample_count),
            degenerate_rejections: self.degenerate_rejections + other.degenerate_rejections,
        }
    }

    pub fn rejection_fraction(&self) -> f64 {
        if self.sample_count == 0 {
            0.0
        } else {
            self.degenerate_rejections as f64 / self.sample_count as f64
        }
    }

    /// `true` when `value` lies within `sigmas` standard errors.
    pub fn within(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.standard_error
    }
}

/// `(a - b) / sqrt(se_a² + se_b²)`; `None` when both errors vanish.
pub fn z_score(a: &MCEstimate, b: &MCEstimate) -> Option<f64> {
    let se = a.standard_error.hypot(b.standard_error);
    if se > 0.0 {
        Some((a.mean - b.mean) / se)
    } else {
        None
    }
}

/// One draw of an estimator: a value or a measure-zero rejection, which
/// contributes zero and is counted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    Value(f64),
    Rejected,
}

impl From<f64> for Sample {
    fn from(v: f64) -> Self {
        Sample::Value(v)
    }
}

/// Welford running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
    rejections: u64,
}

impl Accumulator {
    pub fn push(&mut self, sample: Sample) {
        let x = match sample {
            Sample::Value(v) => v,
            Sample::Rejected => {
                self.rejections += 1;
                0.0
            }
        };
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        self.n = n;
        self.mean = mean;
        self.m2 = m2;
        self.rejections += other.rejections;
    }

    pub fn finish(&self) -> MCEstimate {
        let se = if self.n > 1 {
            (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
        } else {
            0.0
        };
        MCEstimate {
            mean: self.mean,
            standard_error: se,
            sample_count: self.n,
            degenerate_rejections: self.rejections,
        }
    }
}

/// Sample budget, randomness source and shard count for one estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampling {
    pub samples: u64,
    pub stream: RngStream,
    pub shards: usize,
}

impl Sampling {
    pub fn new(samples: u64, seed: u64) -> Self {
        Sampling { samples, stream: RngStream::new(seed, 0), shards: 8 }
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards.max(1);
        self
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = samples;
        self
    }

    /// Same budget on an independent stream, keyed by `tag`.
    pub fn child(&self, tag: u64) -> Self {
        Sampling { stream: self.stream.substream(tag), ..*self }
    }

    fn shard_sizes(&self) -> Vec<u64> {
        let shards = self.shards.max(1) as u64;
        let base = self.samples / shards;
        let extra = self.samples % shards;
        (0..shards).map(|i| base + u64::from(i < extra)).collect()
    }

    /// Run `step` `samples` times, split into shards that each own their
    /// state built by `init` from a per-shard stream. Shards are reduced in
    /// index order, so the result depends on `(stream, shards)` only.
    pub fn run_with<S, I, F>(&self, init: I, step: F) -> Result<MCEstimate>
    where
        I: Fn(RngStream) -> S + Sync,
        F: Fn(&mut S) -> Result<Sample> + Sync,
    {
        let sizes = self.shard_sizes();
        let parts: Vec<Accumulator> = sizes
            .par_iter()
            .enumerate()
            .map(|(i, &count)| {
                let mut state = init(self.stream.substream(i as u64));
                let mut acc = Accumulator::default();
                for _ in 0..count {
                    acc.push(step(&mut state)?);
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        let mut total = Accumulator::default();
        for part in &parts {
            total.merge(part);
        }
        Ok(total.finish())
    }

    /// [`Sampling::run_with`] with a single generator per shard.
    pub fn run<F>(&self, step: F) -> Result<MCEstimate>
    where
        F: Fn(&mut crate::measures::StreamRng) -> Result<Sample> + Sync,
    {
        self.run_with(|s| s.rng(), step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut seq = Accumulator::default();
        xs.iter().for_each(|&x| seq.push(x.into()));
        let mut a = Accumulator::default();
        let mut b = Accumulator::default();
        xs[..313].iter().for_each(|&x| a.push(x.into()));
        xs[313..].iter().for_each(|&x| b.push(x.into()));
        a.merge(&b);
        let (s, m) = (seq.finish(), a.finish());
        assert_eq!(s.sample_count, m.sample_count);
        assert!((s.mean - m.mean).abs() < 1e-12);
        assert!((s.standard_error - m.standard_error).abs() < 1e-12);
    }

    #[test]
    fn standard_error_is_sd_over_root_n() {
        let mut acc = Accumulator::default();
        for x in [1.0, 2.0, 3.0, 4.0] {
            acc.push(x.into());
        }
        let e = acc.finish();
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((e.standard_error - sd / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejections_count_as_zero() {
        let mut acc = Accumulator::default();
        acc.push(Sample::Value(2.0));
        acc.push(Sample::Rejected);
        let e = acc.finish();
        assert_eq!(e.degenerate_rejections, 1);
        assert!((e.mean - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sharded_run_is_deterministic() {
        let s = Sampling::new(10_001, 42).with_shards(7);
        let f = |rng: &mut crate::measures::StreamRng| Ok(Sample::Value(rng.random::<f64>()));
        let a = s.run(f).unwrap();
        let b = s.run(f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sample_count, 10_001);
        assert!(a.within(0.5, 4.0));
    }
}
