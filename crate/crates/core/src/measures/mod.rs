//! Samplers for the motion-invariant measures on flats, surface measure and
//! volume, each with an exactly known normalization.
//!
//! Every sampler returns a [`WeightedSample`]: averaging `weight · f · hit`
//! over `N` draws estimates the corresponding integral of `f`.

mod rng;

pub use rng::{RngStream, StreamRng};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::constants::{kappa, omega};
use crate::error::{GeomError, Result};
use crate::flat::{orthonormal_complement, AffineSubspace};
use crate::geometry::{Body, BoundaryPoint, Shape};
use crate::Vector;

/// A draw with its importance weight and hit indicator.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSample<T> {
    pub value: T,
    pub weight: f64,
    pub hit: bool,
}

impl<T> WeightedSample<T> {
    /// `weight · f` on hits, zero on misses.
    pub fn contribution(&self, f: impl FnOnce(&T) -> f64) -> f64 {
        if self.hit {
            self.weight * f(&self.value)
        } else {
            0.0
        }
    }
}

/// A line inside a flat body, in both coordinate systems.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedLine {
    /// In the body's intrinsic coordinates.
    pub local: AffineSubspace,
    pub ambient: AffineSubspace,
}

pub fn standard_normal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vector {
    Vector::from_fn(d, |_, _| rng.sample(StandardNormal))
}

/// Uniform point on `S^{d-1}`.
pub fn unit_sphere<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vector {
    loop {
        let g = standard_normal(d, rng);
        let n = g.norm();
        if n > 1e-300 {
            return g / n;
        }
    }
}

/// Uniform point in the unit `d`-ball.
pub fn unit_ball<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vector {
    let r = rng.random::<f64>().powf(1.0 / d as f64);
    unit_sphere(d, rng) * r
}

/// Rotation-invariant orthonormal `l`-frame in `R^d` (columns).
pub fn sample_grassmannian<R: Rng + ?Sized>(d: usize, l: usize, rng: &mut R) -> Result<DMatrix<f64>> {
    if l == 0 || l > d {
        return Err(GeomError::Config(format!("frame of {l} vectors in dimension {d}")));
    }
    let mut cols: Vec<Vector> = Vec::with_capacity(l);
    while cols.len() < l {
        let mut w = standard_normal(d, rng);
        for c in &cols {
            w -= c * c.dot(&w);
        }
        for c in &cols {
            w -= c * c.dot(&w);
        }
        let n = w.norm();
        if n > 1e-8 {
            cols.push(w / n);
        }
    }
    Ok(DMatrix::from_columns(&cols))
}

/// Random `l`-flat meeting the ball `B(center, radius)` together with its
/// constant weight `κ_{d-l} radius^{d-l}`.
pub fn flat_through_ball<R: Rng + ?Sized>(
    center: &Vector,
    radius: f64,
    l: usize,
    rng: &mut R,
) -> Result<(AffineSubspace, f64)> {
    let d = center.len();
    if l == 0 || l >= d {
        return Err(GeomError::Config(format!("flat dimension {l} must lie in 1..{d}")));
    }
    let basis = sample_grassmannian(d, l, rng)?;
    let comp = orthonormal_complement(&basis);
    let offset = unit_ball(d - l, rng) * radius;
    let point = center + comp * offset;
    let weight = kappa(d - l) * radius.powi((d - l) as i32);
    Ok((AffineSubspace::from_orthonormal(point, basis), weight))
}

/// Flat from the invariant measure on `l`-flats meeting the enclosing ball
/// of `body`, in the body's intrinsic coordinates.
pub fn sample_affine_hitting<R: Rng + ?Sized>(
    body: &Body,
    l: usize,
    rng: &mut R,
) -> Result<WeightedSample<AffineSubspace>> {
    let (flat, weight) = flat_through_ball(&body.center(), body.enclosing_radius(), l, rng)?;
    let hit = body.intersects(&flat)?;
    Ok(WeightedSample { value: flat, weight, hit })
}

/// Plane through `line` with the extra direction uniform on the unit
/// sphere of the line's orthogonal complement (a probability measure).
pub fn sample_plane_containing_line<R: Rng + ?Sized>(line: &AffineSubspace, rng: &mut R) -> Result<AffineSubspace> {
    let d = line.ambient_dim();
    if line.dim() != 1 || d < 3 {
        return Err(GeomError::Config("plane through a line needs a line in dimension ≥ 3".into()));
    }
    let comp = line.complement_basis();
    let u_e = &comp * unit_sphere(d - 1, rng);
    let basis = DMatrix::from_columns(&[line.direction(0), u_e]);
    Ok(AffineSubspace::from_orthonormal(line.base().clone(), basis))
}

/// Boundary point with weight such that `E[weight · f] = ∫_{∂K} f dσ`.
/// Coordinates are intrinsic to the body.
pub fn sample_surface<R: Rng + ?Sized>(body: &Body, rng: &mut R) -> Result<WeightedSample<BoundaryPoint>> {
    let d = body.dim();
    let (value, weight) = match body.shape() {
        Shape::Ball(b) => {
            let s = unit_sphere(d, rng);
            let p = BoundaryPoint { position: &b.center + &s * b.radius, normal: s, facet: None };
            (p, omega(d) * b.radius.powi(d as i32 - 1))
        }
        Shape::Ellipsoid(e) => {
            let s = unit_sphere(d, rng);
            let p = BoundaryPoint { position: e.surface_point(&s), normal: e.surface_normal(&s), facet: None };
            (p, omega(d) * e.area_jacobian(&s))
        }
        Shape::Polytope(p) => {
            if d < 2 {
                return Err(GeomError::Unsupported("surface sampling of a segment".into()));
            }
            (p.sample_boundary(rng), p.surface_area())
        }
    };
    Ok(WeightedSample { value, weight, hit: true })
}

/// Interior point with weight `|K|`, intrinsic coordinates.
pub fn sample_interior<R: Rng + ?Sized>(body: &Body, rng: &mut R) -> WeightedSample<Vector> {
    let d = body.dim();
    let value = match body.shape() {
        Shape::Ball(b) => &b.center + unit_ball(d, rng) * b.radius,
        Shape::Ellipsoid(e) => e.center() + e.transform() * unit_ball(d, rng),
        Shape::Polytope(p) => p.sample_interior(rng),
    };
    WeightedSample { value, weight: body.volume(), hit: true }
}

/// `k`-flat inside a body that lives in an `l`-flat, drawn from the
/// invariant measure of the flat normalized as in the full space
/// (`κ_{l-k} R^{l-k}` for the enclosing ball of radius `R`).
pub fn flats_within<R: Rng + ?Sized>(body: &Body, k: usize, rng: &mut R) -> Result<WeightedSample<EmbeddedLine>> {
    let s = sample_affine_hitting(body, k, rng)?;
    let ambient = match body.frame() {
        Some(f) => f.embed(&s.value),
        None => s.value.clone(),
    };
    Ok(WeightedSample { value: EmbeddedLine { local: s.value, ambient }, weight: s.weight, hit: s.hit })
}

/// Lines inside a flat body (a section or a facet).
pub fn lines_within_flat<R: Rng + ?Sized>(body: &Body, rng: &mut R) -> Result<WeightedSample<EmbeddedLine>> {
    if body.dim() < 2 {
        return Err(GeomError::Unsupported("lines within a body of dimension < 2".into()));
    }
    flats_within(body, 1, rng)
}
