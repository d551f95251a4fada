//! Exact convex-body geometry: chords, outer normals, flat sections,
//! boundary parameterizations and simplex volumes in any dimension.

mod builtins;
mod chord;
mod ellipsoid;
mod polytope;
mod section;
mod simplex;

pub use builtins::{
    corner_simplex, cross_polytope, cube, parse_body, parse_polytope_text, regular_polygon, regular_simplex, BodySpec,
};
pub use chord::{chord_angles, Chord, ChordAngles, PlanarAngles};
pub use ellipsoid::{Ball, Ellipsoid};
pub use polytope::{FacetRecord, Halfspace, Polytope};
pub use simplex::{simplex_volume, uniform_in_simplex};

use crate::error::{GeomError, Result};
use crate::flat::AffineSubspace;
use crate::Vector;

/// Tangency tolerance on chord length and normal projections.
pub const TANGENCY_TOL: f64 = 1e-12;

/// Tolerance for "point lies on the boundary".
pub const BOUNDARY_TOL: f64 = 1e-9;

/// The geometric variant of a convex body.
#[derive(Debug, Clone)]
pub enum Shape {
    Ball(Ball),
    Ellipsoid(Ellipsoid),
    Polytope(Polytope),
}

/// A convex body, possibly living inside a lower-dimensional flat.
///
/// All defining data are in intrinsic coordinates; when `frame` is present
/// they map to the ambient space through [`AffineSubspace::to_ambient`].
#[derive(Debug, Clone)]
pub struct Body {
    shape: Shape,
    frame: Option<AffineSubspace>,
}

/// A point of `∂K` with its outer unit normal.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub position: Vector,
    pub normal: Vector,
    /// Facet index, polytopes only.
    pub facet: Option<usize>,
}

impl From<Ball> for Body {
    fn from(b: Ball) -> Self {
        Body::new(Shape::Ball(b))
    }
}

impl From<Ellipsoid> for Body {
    fn from(e: Ellipsoid) -> Self {
        Body::new(Shape::Ellipsoid(e))
    }
}

impl From<Polytope> for Body {
    fn from(p: Polytope) -> Self {
        Body::new(Shape::Polytope(p))
    }
}

impl Body {
    pub fn new(shape: Shape) -> Self {
        Body { shape, frame: None }
    }

    /// Attach an ambient frame. The frame dimension must equal the body's
    /// intrinsic dimension.
    pub fn with_frame(self, frame: AffineSubspace) -> Result<Self> {
        if frame.dim() != self.dim() {
            return Err(GeomError::Dimension { expected: self.dim(), got: frame.dim() });
        }
        Ok(Body { frame: Some(frame), ..self })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn frame(&self) -> Option<&AffineSubspace> {
        self.frame.as_ref()
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Ball(b) => b.center.len(),
            Shape::Ellipsoid(e) => e.center().len(),
            Shape::Polytope(p) => p.dim(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.as_ref().map_or(self.dim(), AffineSubspace::ambient_dim)
    }

    /// Balls and ellipsoids.
    pub fn is_smooth(&self) -> bool {
        !matches!(self.shape, Shape::Polytope(_))
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match &self.shape {
            Shape::Polytope(p) => Some(p),
            _ => None,
        }
    }

    /// Map an intrinsic point to ambient coordinates.
    pub fn to_ambient(&self, y: &Vector) -> Vector {
        match &self.frame {
            Some(f) => f.to_ambient(y),
            None => y.clone(),
        }
    }

    /// Map an intrinsic direction to ambient coordinates.
    pub fn direction_to_ambient(&self, v: &Vector) -> Vector {
        match &self.frame {
            Some(f) => f.basis() * v,
            None => v.clone(),
        }
    }

    /// Center of the enclosing ball used by the flat samplers.
    pub fn center(&self) -> Vector {
        match &self.shape {
            Shape::Ball(b) => b.center.clone(),
            Shape::Ellipsoid(e) => e.center().clone(),
            Shape::Polytope(p) => p.centroid().clone(),
        }
    }

    /// Radius `R` of a ball about [`Body::center`] containing the body.
    pub fn enclosing_radius(&self) -> f64 {
        match &self.shape {
            Shape::Ball(b) => b.radius,
            Shape::Ellipsoid(e) => e.max_semi_axis(),
            Shape::Polytope(p) => p.circumradius(),
        }
    }

    /// Intrinsic volume `|K|`.
    pub fn volume(&self) -> f64 {
        match &self.shape {
            Shape::Ball(b) => b.volume(),
            Shape::Ellipsoid(e) => e.volume(),
            Shape::Polytope(p) => p.volume(),
        }
    }

    /// `|∂K|` when available in closed form (not for general ellipsoids).
    pub fn surface_area(&self) -> Option<f64> {
        match &self.shape {
            Shape::Ball(b) => Some(b.surface_area()),
            Shape::Ellipsoid(_) => None,
            Shape::Polytope(p) => Some(p.surface_area()),
        }
    }

    /// Radius of a ball about [`Body::center`] contained in the body.
    pub fn inscribed_radius(&self) -> f64 {
        match &self.shape {
            Shape::Ball(b) => b.radius,
            Shape::Ellipsoid(e) => e.min_semi_axis(),
            Shape::Polytope(p) => p.inradius_about_centroid(),
        }
    }

    /// Implicit-function residual: zero on `∂K`, negative inside.
    pub fn boundary_residual(&self, x: &Vector) -> f64 {
        match &self.shape {
            Shape::Ball(b) => (x - &b.center).norm() / b.radius - 1.0,
            Shape::Ellipsoid(e) => e.quadratic_form(x) - 1.0,
            Shape::Polytope(p) => p.max_violation(x),
        }
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.boundary_residual(x) <= BOUNDARY_TOL
    }

    /// Outer unit normal at a boundary point (intrinsic coordinates).
    pub fn normal_at(&self, x: &Vector) -> Result<Vector> {
        self.check_dim(x.len())?;
        let r = self.boundary_residual(x);
        if r.abs() > BOUNDARY_TOL {
            return Err(GeomError::OffBoundary(r));
        }
        match &self.shape {
            Shape::Ball(b) => Ok((x - &b.center).normalize()),
            Shape::Ellipsoid(e) => Ok(e.normal(x)),
            Shape::Polytope(p) => p.normal_at(x).map(|(n, _)| n),
        }
    }

    /// Intersect with a line given in intrinsic coordinates. `None` when
    /// the line misses the interior or is tangent.
    pub fn line_intersect(&self, line: &AffineSubspace) -> Result<Option<Chord>> {
        self.check_dim(line.ambient_dim())?;
        if line.dim() != 1 {
            return Err(GeomError::Config(format!("line_intersect needs a line, got a {}-flat", line.dim())));
        }
        Ok(match &self.shape {
            Shape::Ball(b) => b.line_intersect(line),
            Shape::Ellipsoid(e) => e.line_intersect(line),
            Shape::Polytope(p) => p.line_intersect(line),
        })
    }

    /// Whether a flat (intrinsic coordinates) meets the body.
    pub fn intersects(&self, flat: &AffineSubspace) -> Result<bool> {
        self.check_dim(flat.ambient_dim())?;
        match &self.shape {
            Shape::Ball(b) => Ok(flat.distance(&b.center) < b.radius),
            Shape::Ellipsoid(e) => Ok(e.section_level(flat) < 1.0),
            Shape::Polytope(p) => p.intersects(flat),
        }
    }

    /// `K ∩ E` expressed in the intrinsic coordinates of `E`, with
    /// `E` as its frame. `E` is given in this body's intrinsic coordinates;
    /// the returned frame is composed with this body's own frame.
    pub fn plane_section(&self, flat: &AffineSubspace) -> Result<Option<Body>> {
        self.check_dim(flat.ambient_dim())?;
        let l = flat.dim();
        if l == 0 || l >= self.dim() {
            return Err(GeomError::Config(format!("section dimension {l} must lie in 1..{}", self.dim())));
        }
        let shape = match &self.shape {
            Shape::Ball(b) => section::ball(b, flat).map(Shape::Ball),
            Shape::Ellipsoid(e) => section::ellipsoid(e, flat).map(Shape::Ellipsoid),
            Shape::Polytope(p) => section::polytope(p, flat)?.map(Shape::Polytope),
        };
        let frame = match &self.frame {
            Some(f) => f.embed(flat),
            None => flat.clone(),
        };
        Ok(shape.map(|shape| Body { shape, frame: Some(frame) }))
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(GeomError::Dimension { expected: self.dim(), got });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
