
use crate::error::{GeomError, Result};
use crate::flat::AffineSubspace;
use crate::geometry::{Body, BoundaryPoint, TANGENCY_TOL};
use crate::Vector;

/// Angle data of the segment `[x₁, x₂]` between two boundary points.
///
/// `sin_alpha[i] = |⟨nᵢ, û⟩|` where `û` is the unit chord direction, so
/// `αᵢ ∈ [0, π/2]` is the angle between the chord's line and the tangent
/// hyperplane at `xᵢ`. `projected_normals[i]` is the normalized projection
/// of `nᵢ` onto the orthogonal complement of the line, absent when that
/// projection is shorter than the tangency tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ChordAngles {
    pub direction: Vector,
    pub length: f64,
    pub sin_alpha: [f64; 2],
    pub projected_normals: [Option<Vector>; 2],
    pub cos_phi0: Option<f64>,
}

impl ChordAngles {
    pub fn between(p1: &BoundaryPoint, p2: &BoundaryPoint) -> Result<Self> {
        let delta = &p2.position - &p1.position;
        let length = delta.norm();
        if length < TANGENCY_TOL {
            return Err(GeomError::Degenerate("coincident chord endpoints".into()));
        }
        let u = delta / length;
        let project = |n: &Vector| {
            let along = n.dot(&u);
            let perp = n - &u * along;
            let norm = perp.norm();
            (along.abs().min(1.0), (norm >= TANGENCY_TOL).then(|| perp / norm))
        };
        let (s1, u1) = project(&p1.normal);
        let (s2, u2) = project(&p2.normal);
        let cos_phi0 = match (&u1, &u2) {
            (Some(a), Some(b)) => Some(a.dot(b).clamp(-1.0, 1.0)),
            _ => None,
        };
        Ok(ChordAngles { direction: u, length, sin_alpha: [s1, s2], projected_normals: [u1, u2], cos_phi0 })
    }

    pub fn alpha(&self, i: usize) -> f64 {
        self.sin_alpha[i].asin()
    }

    pub fn cos_alpha(&self, i: usize) -> f64 {
        (1.0 - self.sin_alpha[i] * self.sin_alpha[i]).max(0.0).sqrt()
    }

    pub fn cot_alpha(&self, i: usize) -> f64 {
        self.cos_alpha(i) / self.sin_alpha[i]
    }

    pub fn phi0(&self) -> Option<f64> {
        self.cos_phi0.map(f64::acos)
    }

    /// Projected normals missing at either end.
    pub fn is_degenerate(&self) -> bool {
        self.cos_phi0.is_none()
    }

    pub fn min_sin_alpha(&self) -> f64 {
        self.sin_alpha[0].min(self.sin_alpha[1])
    }
}

/// Signed angles of a planar chord, measured against the tangents that lie
/// on the same side of the chord: `α₁` from `x₂ - x₁` at `x₁`, `α₂` from
/// `x₁ - x₂` at `x₂`, both in `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarAngles {
    pub alpha: [f64; 2],
    pub length: f64,
}

impl PlanarAngles {
    pub fn between(p1: &BoundaryPoint, p2: &BoundaryPoint) -> Result<Self> {
        if p1.position.len() != 2 {
            return Err(GeomError::Dimension { expected: 2, got: p1.position.len() });
        }
        let delta = &p2.position - &p1.position;
        let length = delta.norm();
        if length < TANGENCY_TOL {
            return Err(GeomError::Degenerate("coincident chord endpoints".into()));
        }
        let u = delta / length;
        let side = [-u[1], u[0]];
        let tangent = |n: &Vector| {
            let t = [-n[1], n[0]];
            if t[0] * side[0] + t[1] * side[1] < 0.0 {
                [-t[0], -t[1]]
            } else {
                t
            }
        };
        let t1 = tangent(&p1.normal);
        let t2 = tangent(&p2.normal);
        let a1 = (t1[0] * u[0] + t1[1] * u[1]).clamp(-1.0, 1.0).acos();
        let a2 = (-(t2[0] * u[0] + t2[1] * u[1])).clamp(-1.0, 1.0).acos();
        Ok(PlanarAngles { alpha: [a1, a2], length })
    }
}

/// The segment `G ∩ K` cut from a body by a line.
#[derive(Debug, Clone)]
pub struct Chord {
    pub line: AffineSubspace,
    /// Ordered along the line's direction.
    pub endpoints: [BoundaryPoint; 2],
    pub length: f64,
    pub angles: ChordAngles,
    /// An endpoint lies on a ridge of a polytope (normal not unique).
    pub ridge: bool,
}

impl Chord {
    pub(crate) fn from_parameters(
        line: &AffineSubspace,
        t: [f64; 2],
        normals: [Vector; 2],
        facets: [Option<usize>; 2],
        ridge: bool,
    ) -> Option<Chord> {
        let length = t[1] - t[0];
        if !(length >= TANGENCY_TOL) {
            return None;
        }
        let dir = line.direction(0);
        let [n1, n2] = normals;
        let p1 = BoundaryPoint { position: line.base() + &dir * t[0], normal: n1, facet: facets[0] };
        let p2 = BoundaryPoint { position: line.base() + &dir * t[1], normal: n2, facet: facets[1] };
        let angles = ChordAngles::between(&p1, &p2).ok()?;
        Some(Chord { line: line.clone(), endpoints: [p1, p2], length, angles, ridge })
    }

    pub fn direction(&self) -> Vector {
        self.line.direction(0)
    }

    pub fn midpoint(&self) -> Vector {
        (&self.endpoints[0].position + &self.endpoints[1].position) * 0.5
    }

    pub fn is_degenerate(&self) -> bool {
        self.angles.is_degenerate()
    }

    /// Both endpoints in the relative interior of two distinct facets.
    pub fn is_regular_polytope_chord(&self) -> bool {
        !self.ridge && self.endpoints[0].facet.is_some() && self.endpoints[0].facet != self.endpoints[1].facet
    }
}

/// Angles of the chord between two boundary points of `body`, with the
/// normals taken from the body.
pub fn chord_angles(body: &Body, x1: &Vector, x2: &Vector) -> Result<ChordAngles> {
    let p1 = BoundaryPoint { position: x1.clone(), normal: body.normal_at(x1)?, facet: None };
    let p2 = BoundaryPoint { position: x2.clone(), normal: body.normal_at(x2)?, facet: None };
    ChordAngles::between(&p1, &p2)
}
