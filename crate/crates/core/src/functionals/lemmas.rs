use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{random_chord, require};
use crate::error::{GeomError, Result};
use crate::measures::{sample_plane_containing_line, unit_sphere, RngStream};
use crate::quadrature::{integrate, periodic_trapezoid};
use crate::stats::{MCEstimate, Sample, Sampling};
use crate::{AffineSubspace, Body, Vector};

/// Both sides of `cot ψᵢ = ⟨uᵢ, u_E⟩ cot αᵢ` at the two chord endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CotLemma {
    pub cot_psi: [f64; 2],
    pub rhs: [f64; 2],
}

impl CotLemma {
    pub fn residual(&self) -> f64 {
        (self.cot_psi[0] - self.rhs[0]).abs().max((self.cot_psi[1] - self.rhs[1]).abs())
    }
}

/// Evaluate the section cotangent lemma for the chord cut by `line` and a
/// plane containing it. `ψᵢ` is measured from the section boundary of
/// `K ∩ E` itself, independently of the ambient normals.
pub fn cot_lemma_check(body: &Body, line: &AffineSubspace, plane: &AffineSubspace) -> Result<CotLemma> {
    require(body.is_smooth(), || "the cotangent lemma needs a smooth body".into())?;
    require(body.dim() >= 3 && plane.dim() == 2, || "the cotangent lemma needs a plane in dim ≥ 3".into())?;
    let chord = body
        .line_intersect(line)?
        .ok_or_else(|| GeomError::Degenerate("line misses the body".into()))?;
    for p in &chord.endpoints {
        if plane.distance(&p.position) > 1e-9 {
            return Err(GeomError::Config("plane does not contain the chord".into()));
        }
    }
    let u = chord.direction();
    let u_e = (0..2)
        .map(|i| {
            let b = plane.direction(i);
            &b - &u * u.dot(&b)
        })
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("plane has two directions");
    let norm = u_e.norm();
    if norm < 1e-12 {
        return Err(GeomError::Degenerate("plane direction parallel to the chord".into()));
    }
    let u_e = u_e / norm;
    let section = body
        .plane_section(plane)?
        .ok_or_else(|| GeomError::Degenerate("plane misses the body".into()))?;

    let mut cot_psi = [0.0; 2];
    let mut rhs = [0.0; 2];
    for i in 0..2 {
        let y = plane.to_intrinsic(&chord.endpoints[i].position);
        let m = plane.basis() * section.normal_at(&y)?;
        let (mx, my) = (m.dot(&u), m.dot(&u_e));
        let (mut tx, mut ty) = (my, -mx);
        if ty < 0.0 {
            tx = -tx;
            ty = -ty;
        }
        if ty < 1e-12 {
            return Err(GeomError::Degenerate("section tangent parallel to the chord".into()));
        }
        cot_psi[i] = if i == 0 { tx / ty } else { -tx / ty };
        let ui = chord.angles.projected_normals[i]
            .as_ref()
            .ok_or_else(|| GeomError::Degenerate("normal parallel to the chord".into()))?;
        rhs[i] = ui.dot(&u_e) * chord.angles.cot_alpha(i);
    }
    Ok(CotLemma { cot_psi, rhs })
}

/// Largest lemma residual over `count` random (chord, plane) pairs; pairs
/// too close to degenerate are skipped.
pub fn cot_lemma_sweep(body: &Body, count: usize, stream: RngStream) -> Result<f64> {
    let mut rng = stream.rng();
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < count {
        let (_, chord) = random_chord(body, &mut rng)?;
        let Some(c) = chord else { continue };
        let plane = sample_plane_containing_line(&c.line, &mut rng)?;
        match cot_lemma_check(body, &c.line, &plane) {
            Ok(r) => {
                worst = worst.max(r.residual());
                done += 1;
            }
            Err(GeomError::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

/// `∫_{S^{d-2}} ⟨u₁, v⟩⟨u₂, v⟩ σ̃(dv)` for `u₁, u₂ ∈ R^{d-1}` and the
/// uniform probability `σ̃`; the exact value is `⟨u₁, u₂⟩/(d-1)`.
pub fn sphere_product_integral(u1: &Vector, u2: &Vector, s: &Sampling) -> Result<MCEstimate> {
    require(u1.len() == u2.len() && u1.len() >= 2, || "vectors must share a dimension ≥ 2".into())?;
    let n = u1.len();
    s.run(|rng| {
        let v = unit_sphere(n, rng);
        Ok(Sample::Value(u1.dot(&v) * u2.dot(&v)))
    })
}

/// `(1/2π) ∫_0^{2π} cos x cos(x - φ₀) dx`, equal to `cos φ₀ / 2`.
pub fn circle_product_integral(phi0: f64) -> f64 {
    periodic_trapezoid(|x| x.cos() * (x - phi0).cos(), 64) / (2.0 * PI)
}

/// `∫_{B^{n-2}} (1 - |z|²) λ̃(dz)` for the uniform probability `λ̃` on the
/// unit `(n-2)`-ball, by radial quadrature; the exact value is `2/n`.
pub fn ball_moment(n: usize) -> f64 {
    assert!(n >= 2, "ball moment needs n ≥ 2");
    let m = n - 2;
    if m == 0 {
        return 1.0;
    }
    m as f64 * integrate(|r| (1.0 - r * r) * r.powi(m as i32 - 1), 0.0, 1.0, 32)
}
