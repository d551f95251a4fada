//! Weighted chord-length histograms under the invariant line measure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::kappa;
use crate::error::{GeomError, Result};
use crate::functionals::random_chord;
use crate::geometry::{Body, Shape};
use crate::stats::Sampling;
use crate::verification::{csv_error, finish_csv};

/// Line-measure mass per chord-length bin. Masses are absolute, so the
/// bins sum to the measure of lines hitting the body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordHistogram {
    pub edges: Vec<f64>,
    pub mass: Vec<f64>,
    pub standard_error: Vec<f64>,
    /// Exact per-bin mass, available for balls.
    pub analytic: Option<Vec<f64>>,
    pub samples: u64,
}

impl ChordHistogram {
    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Rows `lo, hi, mass, standard_error, density, analytic`, where
    /// `density` is mass per unit length.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["lo", "hi", "mass", "standard_error", "density", "analytic"]).map_err(csv_error)?;
        for i in 0..self.mass.len() {
            let (lo, hi) = (self.edges[i], self.edges[i + 1]);
            let exact = self.analytic.as_ref().map_or_else(String::new, |a| a[i].to_string());
            w.write_record([
                lo.to_string(),
                hi.to_string(),
                self.mass[i].to_string(),
                self.standard_error[i].to_string(),
                (self.mass[i] / (hi - lo)).to_string(),
                exact,
            ])
            .map_err(csv_error)?;
        }
        finish_csv(w)
    }
}

/// Bin chord lengths over `[0, 2R]`, `R` the enclosing radius.
pub fn chord_length_histogram(body: &Body, bins: usize, s: &Sampling) -> Result<ChordHistogram> {
    if bins == 0 {
        return Err(GeomError::Config("histogram needs at least one bin".into()));
    }
    let top = 2.0 * body.enclosing_radius();
    let edges: Vec<f64> = (0..=bins).map(|i| top * i as f64 / bins as f64).collect();
    let shards = s.shards.max(1) as u64;
    let parts: Vec<(Vec<f64>, Vec<f64>)> = (0..shards)
        .into_par_iter()
        .map(|i| {
            let count = s.samples / shards + u64::from(i < s.samples % shards);
            let mut rng = s.stream.substream(i).rng();
            let mut sum = vec![0.0; bins];
            let mut sq = vec![0.0; bins];
            for _ in 0..count {
                let (w, chord) = random_chord(body, &mut rng)?;
                if let Some(c) = chord {
                    let b = ((c.length / top * bins as f64) as usize).min(bins - 1);
                    sum[b] += w;
                    sq[b] += w * w;
                }
            }
            Ok((sum, sq))
        })
        .collect::<Result<_>>()?;
    let n = s.samples.max(1) as f64;
    let mut mass = vec![0.0; bins];
    let mut second = vec![0.0; bins];
    for (sum, sq) in &parts {
        for b in 0..bins {
            mass[b] += sum[b];
            second[b] += sq[b];
        }
    }
    let standard_error = (0..bins)
        .map(|b| {
            let m = mass[b] / n;
            let var = (second[b] / n - m * m).max(0.0);
            if n > 1.0 { (var * n / (n - 1.0) / n).sqrt() } else { f64::NAN }
        })
        .collect();
    mass.iter_mut().for_each(|m| *m /= n);
    let analytic = match body.shape() {
        Shape::Ball(ball) if body.frame().is_none() => {
            let d = body.dim();
            let r = ball.radius;
            let offset = |len: f64| (r * r - len * len / 4.0).max(0.0).sqrt();
            Some(
                edges
                    .windows(2)
                    .map(|e| kappa(d - 1) * (offset(e[0]).powi(d as i32 - 1) - offset(e[1]).powi(d as i32 - 1)))
                    .collect(),
            )
        }
        _ => None,
    };
    Ok(ChordHistogram { edges, mass, standard_error, analytic, samples: s.samples })
}
