use serde::{Deserialize, Serialize};

use super::{random_chord, require, Comparison, ConstantConvention, PointFunction, TestFunction, Term, DEGENERACY_TOL};
use crate::constants::bp_prefactor;
use crate::error::Result;
use crate::geometry::Polytope;
use crate::measures::{flat_through_ball, sample_surface};
use crate::stats::{MCEstimate, Sample, Sampling};
use crate::Body;

/// `1/(d-1) ∫ h'(|G∩K|) |G∩K| cot α₁ cot α₂ cos φ₀ μ_{d,1}(dG)`.
///
/// Chords through a ridge, or with an endpoint angle below
/// [`DEGENERACY_TOL`], are rejected. A missing `φ₀` means one normal is
/// parallel to the chord, where the cotangent vanishes.
pub fn cot_term(body: &Body, h: TestFunction, s: &Sampling) -> Result<MCEstimate> {
    let d = body.dim();
    require(d >= 2, || "dimension must be at least 2".into())?;
    let est = s.run(|rng| {
        let (w, chord) = random_chord(body, rng)?;
        let Some(c) = chord else { return Ok(Sample::Value(0.0)) };
        let a = &c.angles;
        if c.ridge || a.min_sin_alpha() < DEGENERACY_TOL {
            return Ok(Sample::Rejected);
        }
        let Some(cp) = a.cos_phi0 else { return Ok(Sample::Value(0.0)) };
        Ok(Sample::Value(w * h.dh(c.length) * c.length * a.cot_alpha(0) * a.cot_alpha(1) * cp))
    })?;
    Ok(est.scale(1.0 / (d - 1) as f64))
}

/// Exact planar side-length correction `c Σᵢ H(aᵢ)`.
pub fn polygon_correction(p: &Polytope, h: TestFunction, convention: ConstantConvention) -> f64 {
    let sum: f64 = p.facets().iter().map(|f| h.antiderivative(f.area)).sum();
    convention.facet_coefficient(2) * sum
}

fn facet_bodies(body: &Body) -> Result<Vec<Body>> {
    let p = body
        .as_polytope()
        .ok_or_else(|| crate::GeomError::Config("facet terms need a polytope".into()))?;
    (0..p.facets().len()).map(|i| p.facet_body(i)).collect()
}

/// `Σ_F ∫_{A_{F,1}} H(|G ∩ F|) μ_{F,1}(dG)` without any prefactor.
pub fn facet_integral(body: &Body, h: TestFunction, s: &Sampling) -> Result<MCEstimate> {
    require(body.dim() >= 3, || "facet line integrals need dim ≥ 3".into())?;
    let facets = facet_bodies(body)?;
    s.run(|rng| {
        let mut total = 0.0;
        for f in &facets {
            let (line, w) = flat_through_ball(&f.center(), f.enclosing_radius(), 1, rng)?;
            if let Some(c) = f.line_intersect(&line)? {
                total += w * h.antiderivative(c.length);
            }
        }
        Ok(Sample::Value(total))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm2Check {
    pub comparison: Comparison,
    /// The facet sum before its coefficient.
    pub facet_raw: MCEstimate,
    pub coefficient: f64,
}

/// Chord functional of a polytope against its cotangent term plus the
/// facet sum.
pub fn thm2_check(body: &Body, h: TestFunction, convention: ConstantConvention, s: &Sampling) -> Result<Thm2Check> {
    let d = body.dim();
    require(body.as_polytope().is_some(), || "the polytope chord identity needs a polytope".into())?;
    require(d >= 3, || format!("the polytope chord identity needs dim ≥ 3, got {d}"))?;
    let lhs = super::chord_functional_lhs(body, h, &s.child(1))?;
    let cot = cot_term(body, h, &s.child(2))?;
    let facet_raw = facet_integral(body, h, &s.child(3))?;
    let coefficient = convention.facet_coefficient(d);
    let comparison =
        Comparison::from_terms(lhs, vec![Term::new("cot", cot), Term::new("facet", facet_raw.scale(coefficient))]);
    Ok(Thm2Check { comparison, facet_raw, coefficient })
}

/// `∫∫_{[0,L]²} |s-t|^p ds dt`.
fn segment_pair_moment(len: f64, p: u32) -> f64 {
    let p = p as f64;
    2.0 * len.powf(p + 2.0) / ((p + 1.0) * (p + 2.0))
}

/// Surface-pair integral `∫∫_{(∂P)²} f dσ dσ` against its split into
/// chords meeting two distinct facets and the same-facet sum, for pairs
/// of points (`l = 1`).
pub fn thm4_check(body: &Body, f: PointFunction, s: &Sampling) -> Result<Comparison> {
    let d = body.dim();
    require(body.as_polytope().is_some(), || "the polytope surface-pair identity needs a polytope".into())?;
    require(d >= 3, || format!("the polytope surface-pair identity needs dim ≥ 3, got {d}"))?;
    let lhs = s.child(1).run(|rng| {
        let a = sample_surface(body, rng)?;
        let b = sample_surface(body, rng)?;
        Ok(Sample::Value(a.weight * b.weight * f.eval(&[a.value.position, b.value.position])))
    })?;
    let mixed = s.child(2).run(|rng| {
        let (w, chord) = random_chord(body, rng)?;
        let Some(c) = chord else { return Ok(Sample::Value(0.0)) };
        if c.ridge || c.angles.min_sin_alpha() < DEGENERACY_TOL {
            return Ok(Sample::Rejected);
        }
        if c.endpoints[0].facet == c.endpoints[1].facet {
            return Ok(Sample::Value(0.0));
        }
        let (x0, x1) = (&c.endpoints[0].position, &c.endpoints[1].position);
        let pairs = f.eval(&[x0.clone(), x1.clone()]) + f.eval(&[x1.clone(), x0.clone()]);
        let jac = c.length.powi(d as i32 - 1) / (c.angles.sin_alpha[0] * c.angles.sin_alpha[1]);
        Ok(Sample::Value(w * pairs * jac))
    })?;
    let facets = facet_bodies(body)?;
    let p = f.power() + d as u32 - 2;
    let same = s.child(3).run(|rng| {
        let mut total = 0.0;
        for fb in &facets {
            let (line, w) = flat_through_ball(&fb.center(), fb.enclosing_radius(), 1, rng)?;
            if let Some(c) = fb.line_intersect(&line)? {
                total += w * segment_pair_moment(c.length, p);
            }
        }
        Ok(Sample::Value(total))
    })?;
    Ok(Comparison::from_terms(
        lhs,
        vec![
            Term::new("mixed", mixed.scale(bp_prefactor(d, 1))),
            Term::new("same-facet", same.scale(bp_prefactor(d - 1, 1))),
        ],
    ))
}
