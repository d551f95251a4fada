use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{random_chord, require, Comparison, PointFunction, TestFunction, DEGENERACY_TOL};
use crate::constants::bp_prefactor;
use crate::error::Result;
use crate::geometry::{simplex_volume, Shape};
use crate::measures::{flat_through_ball, flats_within, sample_interior, sample_plane_containing_line, sample_surface, RngStream};
use crate::stats::{Sample, Sampling};
use crate::{Body, Vector};

fn smooth_normal(body: &Body, x: &Vector) -> Vector {
    match body.shape() {
        Shape::Ball(b) => (x - &b.center).normalize(),
        Shape::Ellipsoid(e) => e.normal(x),
        Shape::Polytope(_) => unreachable!("boundary sections are only taken of smooth bodies"),
    }
}

/// `l - k + 1` interior points (weight `|K|` each) followed by `k`
/// boundary points (surface weights).
fn mixed_points<R: Rng + ?Sized>(body: &Body, l: usize, k: usize, f: PointFunction, rng: &mut R) -> Result<Sample> {
    let mut weight = 1.0;
    let mut points = Vec::with_capacity(l + 1);
    for _ in 0..l + 1 - k {
        let x = sample_interior(body, rng);
        weight *= x.weight;
        points.push(x.value);
    }
    for _ in 0..k {
        let b = sample_surface(body, rng)?;
        weight *= b.weight;
        points.push(b.value.position);
    }
    Ok(Sample::Value(weight * f.eval(&points)))
}

/// One draw of the flat side: a random `l`-flat, `l - k + 1` points
/// uniform in the section and `k` points on its relative boundary, each
/// boundary point weighted by `1/‖P_E n_K‖`.
fn flat_side<R: Rng + ?Sized>(body: &Body, l: usize, k: usize, f: PointFunction, rng: &mut R) -> Result<Sample> {
    let d = body.dim();
    let (flat, w) = flat_through_ball(&body.center(), body.enclosing_radius(), l, rng)?;
    let mut weight = w;
    let mut points = Vec::with_capacity(l + 1);
    if l == 1 {
        let Some(c) = body.line_intersect(&flat)? else { return Ok(Sample::Value(0.0)) };
        if k > 0 && c.angles.min_sin_alpha() < DEGENERACY_TOL {
            return Ok(Sample::Rejected);
        }
        let u = c.direction();
        for _ in 0..l + 1 - k {
            let t = rng.random::<f64>() * c.length;
            points.push(&c.endpoints[0].position + &u * t);
            weight *= c.length;
        }
        let mut total = 0.0;
        for mask in 0..1usize << k {
            let mut pts = points.clone();
            let mut factor = 1.0;
            for j in 0..k {
                let e = (mask >> j) & 1;
                pts.push(c.endpoints[e].position.clone());
                factor /= c.angles.sin_alpha[e];
            }
            total += factor * f.eval(&pts) * simplex_volume(&pts).powi((d - l) as i32);
        }
        return Ok(Sample::Value(weight * total));
    }
    let Some(section) = body.plane_section(&flat)? else { return Ok(Sample::Value(0.0)) };
    for _ in 0..l + 1 - k {
        let x = sample_interior(&section, rng);
        weight *= x.weight;
        points.push(section.to_ambient(&x.value));
    }
    for _ in 0..k {
        let b = sample_surface(&section, rng)?;
        let x = section.to_ambient(&b.value.position);
        let proj = (flat.basis().transpose() * smooth_normal(body, &x)).norm();
        if proj < DEGENERACY_TOL {
            return Ok(Sample::Rejected);
        }
        weight *= b.weight / proj;
        points.push(x);
    }
    Ok(Sample::Value(weight * f.eval(&points) * simplex_volume(&points).powi((d - l) as i32)))
}

fn flat_check(body: &Body, l: usize, k: usize, f: PointFunction, s: &Sampling) -> Result<Comparison> {
    let d = body.dim();
    require(body.frame().is_none(), || "flat identities need a full-dimensional body".into())?;
    require(l >= 1 && l < d, || format!("flat dimension {l} must lie in 1..{d}"))?;
    require(k <= l + 1, || format!("boundary point count {k} exceeds l + 1 = {}", l + 1))?;
    let lhs = s.child(1).run(|rng| mixed_points(body, l, k, f, rng))?;
    let rhs = s.child(2).run(|rng| flat_side(body, l, k, f, rng))?;
    Ok(Comparison::new(lhs, rhs.scale(bp_prefactor(d, l))))
}

/// Blaschke–Petkantschin: `∫_{K^{l+1}} f` against the flat integral with
/// the `|[x₀,…,x_l]|^{d-l}` weight. Polytopes support `l ∈ {1, 2}`.
pub fn bpf_check(body: &Body, l: usize, f: PointFunction, s: &Sampling) -> Result<Comparison> {
    if body.as_polytope().is_some() {
        require(l <= 2, || format!("polytope sections are supported for l ≤ 2, got {l}"))?;
    }
    flat_check(body, l, 0, f, s)
}

/// Mixed boundary/interior generalization: `k` of the `l + 1` points on
/// `∂K`. Needs a smooth body when `k > 0`.
pub fn thm3_check(body: &Body, l: usize, k: usize, f: PointFunction, s: &Sampling) -> Result<Comparison> {
    if k > 0 {
        require(body.is_smooth(), || "boundary points on sections need a smooth body".into())?;
    } else if body.as_polytope().is_some() {
        require(l <= 2, || format!("polytope sections are supported for l ≤ 2, got {l}"))?;
    }
    flat_check(body, l, k, f, s)
}

/// Integrand `h(|G ∩ K|) · weight(E)` over flags `G ⊂ E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagWeight {
    #[default]
    One,
    /// `|E ∩ K|`.
    SectionArea,
}

const PLANE_TAG: u64 = 0x504c_414e;

fn section_area(body: &Body, plane: &crate::AffineSubspace) -> Result<f64> {
    Ok(body.plane_section(plane)?.map_or(0.0, |s| s.volume()))
}

/// Both orders of the flag integral over (line ⊂ plane): planes first with
/// lines inside each section, against lines first with a random plane
/// through each line. The line draws of the second order match
/// [`chord_functional_lhs`](super::chord_functional_lhs) on the same
/// stream.
pub fn flag_fubini_check(body: &Body, h: TestFunction, weight: FlagWeight, s: &Sampling) -> Result<Comparison> {
    let d = body.dim();
    require(d >= 3, || format!("flag integrals need dim ≥ 3, got {d}"))?;
    let first = s.child(1).run(|rng| {
        let (plane, w) = flat_through_ball(&body.center(), body.enclosing_radius(), 2, rng)?;
        let Some(section) = body.plane_section(&plane)? else { return Ok(Sample::Value(0.0)) };
        let g = flats_within(&section, 1, rng)?;
        if !g.hit {
            return Ok(Sample::Value(0.0));
        }
        let Some(c) = section.line_intersect(&g.value.local)? else { return Ok(Sample::Value(0.0)) };
        let factor = match weight {
            FlagWeight::One => 1.0,
            FlagWeight::SectionArea => section.volume(),
        };
        Ok(Sample::Value(w * g.weight * h.h(c.length) * factor))
    })?;
    let second = s.child(2).run_with(
        |st: RngStream| (st.rng(), st.substream(PLANE_TAG).rng()),
        |(line_rng, plane_rng)| {
            let (w, chord) = random_chord(body, line_rng)?;
            let Some(c) = chord else { return Ok(Sample::Value(0.0)) };
            let plane = sample_plane_containing_line(&c.line, plane_rng)?;
            let factor = match weight {
                FlagWeight::One => 1.0,
                FlagWeight::SectionArea => section_area(body, &plane)?,
            };
            Ok(Sample::Value(w * h.h(c.length) * factor))
        },
    )?;
    Ok(Comparison::new(first, second))
}
