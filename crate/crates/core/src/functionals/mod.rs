//! Estimators for both sides of each chord-power identity, plus the
//! deterministic lemma checks.
//!
//! Every check returns a [`Comparison`]: an estimate of the left side and
//! of the right side, the latter broken into its [`Term`]s. Left and right
//! sides are always drawn from independent streams.

mod chords;
mod lemmas;
mod polytopes;
mod sections;

pub use chords::{
    chord_functional_lhs, chord_functional_lhs_with, corollary_check, fit_constant, isoperimetric_defect,
    kingman_check, perimeter, pleijel_check, pleijel_cot_check, pleijel_rhs_2d, thm1_check, thm1_rhs,
    zahle_two_point_check, ConstantFit, DefectCheck,
};
pub use lemmas::{
    ball_moment, circle_product_integral, cot_lemma_check, cot_lemma_sweep, sphere_product_integral, CotLemma,
};
pub use polytopes::{cot_term, facet_integral, polygon_correction, thm2_check, thm4_check, Thm2Check};
pub use sections::{bpf_check, flag_fubini_check, thm3_check, FlagWeight};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constants::{kappa, omega};
use crate::error::Result;
use crate::geometry::{Body, Chord};
use crate::measures::flat_through_ball;
use crate::stats::{z_score, MCEstimate};
use crate::Vector;

/// Samples whose `sin α`, `‖P_E n‖` or projected-normal length fall below
/// this are rejected and counted.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// `h(t) = t^m` with `h'(t) = m t^{m-1}` and `H(t) = t^{m+1}/(m+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestFunction {
    pub power: u32,
}

impl TestFunction {
    pub fn new(power: u32) -> Self {
        TestFunction { power }
    }

    pub fn h(&self, t: f64) -> f64 {
        t.powi(self.power as i32)
    }

    pub fn dh(&self, t: f64) -> f64 {
        match self.power {
            0 => 0.0,
            m => m as f64 * t.powi(m as i32 - 1),
        }
    }

    pub fn antiderivative(&self, t: f64) -> f64 {
        t.powi(self.power as i32 + 1) / (self.power + 1) as f64
    }
}

/// Function of a point tuple `(x_0, …, x_l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointFunction {
    One,
    /// `|x_0 - x_l|^m`, the distance between the first and last point.
    DistancePower(u32),
}

impl PointFunction {
    pub fn eval(&self, points: &[Vector]) -> f64 {
        match self {
            PointFunction::One => 1.0,
            PointFunction::DistancePower(m) => {
                (&points[0] - &points[points.len() - 1]).norm().powi(*m as i32)
            }
        }
    }

    /// Power of the distance, `0` for the constant.
    pub fn power(&self) -> u32 {
        match self {
            PointFunction::One => 0,
            PointFunction::DistancePower(m) => *m,
        }
    }
}

/// Which constants to use where the printed formulas disagree with the
/// measure normalization used by the samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantConvention {
    /// Constants exactly as printed.
    Printed,
    /// Constants consistent with `μ_{d,l}` giving the unit-ball hitting set
    /// mass `κ_{d-l}`.
    #[default]
    Normalized,
}

impl ConstantConvention {
    /// Coefficient of the facet sum in the polytope chord identity; the
    /// polygon correction in the plane uses the same factor.
    pub fn facet_coefficient(&self, d: usize) -> f64 {
        match self {
            ConstantConvention::Printed => 1.0,
            ConstantConvention::Normalized => kappa(d - 1) / omega(d),
        }
    }

    /// Prefactor of the boundary/interior mixed moment identity.
    pub fn corollary_prefactor(&self, d: usize, n: u32) -> f64 {
        let nd = (n as usize + d) as f64;
        match self {
            ConstantConvention::Printed => omega(d) / (4.0 * nd),
            ConstantConvention::Normalized => omega(d) / (2.0 * nd),
        }
    }
}

/// A named summand of a right-hand side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub estimate: MCEstimate,
}

impl Term {
    pub fn new(name: impl Into<String>, estimate: MCEstimate) -> Self {
        Term { name: name.into(), estimate }
    }
}

/// Both sides of one identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: MCEstimate,
    pub rhs: MCEstimate,
    pub terms: Vec<Term>,
}

impl Comparison {
    pub fn new(lhs: MCEstimate, rhs: MCEstimate) -> Self {
        Comparison { lhs, rhs, terms: Vec::new() }
    }

    /// Right side as the sum of independent terms.
    pub fn from_terms(lhs: MCEstimate, terms: Vec<Term>) -> Self {
        let rhs = terms
            .iter()
            .map(|t| t.estimate)
            .reduce(|a, b| a.add(&b))
            .unwrap_or_else(|| MCEstimate::exact(0.0));
        Comparison { lhs, rhs, terms }
    }

    pub fn z(&self) -> Option<f64> {
        z_score(&self.lhs, &self.rhs)
    }

    /// Largest rejection fraction over both sides and all terms.
    pub fn rejection_fraction(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.estimate.rejection_fraction())
            .chain([self.lhs.rejection_fraction(), self.rhs.rejection_fraction()])
            .fold(0.0, f64::max)
    }
}

/// A random line from the invariant measure restricted to the enclosing
/// ball, its weight, and its chord (if any).
pub(crate) fn random_chord<R: Rng + ?Sized>(body: &Body, rng: &mut R) -> Result<(f64, Option<Chord>)> {
    let (line, w) = flat_through_ball(&body.center(), body.enclosing_radius(), 1, rng)?;
    Ok((w, body.line_intersect(&line)?))
}

pub(crate) fn require(cond: bool, message: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(crate::GeomError::Config(message()))
    }
}
