use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{GeomError, Result};
use crate::flat::{orthonormal_complement, AffineSubspace};
use crate::geometry::{simplex_volume, uniform_in_simplex, Body, BoundaryPoint, Chord, BOUNDARY_TOL};
use crate::Vector;

/// `{x : ⟨normal, x⟩ ≤ offset}` with a unit normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

impl Halfspace {
    pub fn slack(&self, x: &Vector) -> f64 {
        self.offset - self.normal.dot(x)
    }
}

/// One facet of a polytope with its fan triangulation.
#[derive(Debug, Clone)]
pub struct FacetRecord {
    /// Index of the supporting halfspace.
    pub halfspace: usize,
    pub vertex_indices: Vec<usize>,
    pub normal: Vector,
    pub offset: f64,
    /// `(d-1)`-dimensional measure; counting measure for `d = 1`.
    pub area: f64,
    pub centroid: Vector,
    /// `(d-1)`-simplices covering the facet, coned from its centroid.
    pub simplices: Vec<Vec<Vector>>,
    simplex_cdf: Vec<f64>,
    /// Supporting hyperplane, with the facet polytope in its coordinates.
    /// Absent for a 1-dimensional polytope, whose facets are points.
    pub frame: Option<AffineSubspace>,
    pub polytope: Option<Box<Polytope>>,
}

/// Convex polytope given by both its vertices and its halfspaces.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    halfspaces: Vec<Halfspace>,
    facets: Vec<FacetRecord>,
    halfspace_facet: Vec<Option<usize>>,
    centroid: Vector,
    circumradius: f64,
    volume: f64,
    surface_area: f64,
    cells: Vec<Vec<Vector>>,
    cell_cdf: Vec<f64>,
    facet_cdf: Vec<f64>,
    tol: f64,
}

fn affine_rank(points: &[&Vector], tol: f64) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vector> = points[1..].iter().map(|p| *p - points[0]).collect();
    let m = DMatrix::from_columns(&diffs);
    m.singular_values().iter().filter(|&&s| s > tol).count()
}

fn cumulative(weights: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .map(|w| {
            acc += w;
            acc
        })
        .collect()
}

fn pick<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> usize {
    let total = *cdf.last().expect("non-empty cdf");
    let u = rng.random::<f64>() * total;
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}

impl Polytope {
    /// Build from a vertex list and a halfspace list `(normal, offset)`
    /// meaning `⟨normal, x⟩ ≤ offset`. Normals are normalized; duplicate
    /// halfspaces are merged. Fails when a vertex violates a constraint, the
    /// vertices are not full-dimensional, or the halfspaces do not carve
    /// out at least `d + 1` facets.
    pub fn new(vertices: Vec<Vector>, halfspaces: Vec<(Vector, f64)>) -> Result<Self> {
        let dim = vertices.first().map(|v| v.len()).ok_or_else(|| GeomError::InvalidBody("no vertices".into()))?;
        if dim == 0 {
            return Err(GeomError::InvalidBody("zero-dimensional polytope".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(GeomError::Dimension { expected: dim, got: v.len() });
        }
        let scale = 1.0 + vertices.iter().map(|v| v.amax()).fold(0.0, f64::max);
        let tol = BOUNDARY_TOL * scale;

        let mut hs: Vec<Halfspace> = Vec::with_capacity(halfspaces.len());
        for (n, o) in halfspaces {
            if n.len() != dim {
                return Err(GeomError::Dimension { expected: dim, got: n.len() });
            }
            let norm = n.norm();
            if !(norm > 1e-300) {
                return Err(GeomError::InvalidBody("halfspace with zero normal".into()));
            }
            let h = Halfspace { normal: n / norm, offset: o / norm };
            let duplicate =
                hs.iter().any(|g| (&g.normal - &h.normal).amax() < 1e-9 && (g.offset - h.offset).abs() < tol);
            if !duplicate {
                hs.push(h);
            }
        }

        for (i, v) in vertices.iter().enumerate() {
            if let Some(h) = hs.iter().find(|h| h.slack(v) < -tol) {
                return Err(GeomError::InvalidBody(format!(
                    "vertex {i} violates a halfspace by {:e}",
                    -h.slack(v)
                )));
            }
        }
        let refs: Vec<&Vector> = vertices.iter().collect();
        if affine_rank(&refs, tol) != dim {
            return Err(GeomError::InvalidBody("vertices are not full-dimensional".into()));
        }
        let centroid = vertices.iter().fold(Vector::zeros(dim), |acc, v| acc + v) / vertices.len() as f64;
        let circumradius = vertices.iter().map(|v| (v - &centroid).norm()).fold(0.0, f64::max);

        let mut facets: Vec<FacetRecord> = Vec::new();
        let mut halfspace_facet = vec![None; hs.len()];
        for (hi, h) in hs.iter().enumerate() {
            let tight: Vec<usize> = (0..vertices.len()).filter(|&j| h.slack(&vertices[j]).abs() <= tol).collect();
            if tight.is_empty() {
                continue;
            }
            let tight_refs: Vec<&Vector> = tight.iter().map(|&j| &vertices[j]).collect();
            if affine_rank(&tight_refs, tol) != dim - 1 {
                continue;
            }
            if h.slack(&centroid) <= tol {
                return Err(GeomError::InvalidBody("facet normal does not point away from the centroid".into()));
            }
            let record = Self::facet_record(hi, h, &hs, &vertices, tight)?;
            halfspace_facet[hi] = Some(facets.len());
            facets.push(record);
        }
        if facets.len() < dim + 1 {
            return Err(GeomError::InvalidBody(format!(
                "halfspaces define only {} facets, need at least {}",
                facets.len(),
                dim + 1
            )));
        }

        let mut cells = Vec::new();
        for f in &facets {
            for s in &f.simplices {
                let mut cell = Vec::with_capacity(dim + 1);
                cell.push(centroid.clone());
                cell.extend(s.iter().cloned());
                cells.push(cell);
            }
        }
        let cell_cdf = cumulative(cells.iter().map(|c| simplex_volume(c)));
        let volume = *cell_cdf.last().unwrap_or(&0.0);
        let facet_cdf = cumulative(facets.iter().map(|f| f.area));
        let surface_area = *facet_cdf.last().unwrap_or(&0.0);

        Ok(Polytope {
            dim,
            vertices,
            halfspaces: hs,
            facets,
            halfspace_facet,
            centroid,
            circumradius,
            volume,
            surface_area,
            cells,
            cell_cdf,
            facet_cdf,
            tol,
        })
    }

    fn facet_record(
        hi: usize,
        h: &Halfspace,
        all: &[Halfspace],
        vertices: &[Vector],
        tight: Vec<usize>,
    ) -> Result<FacetRecord> {
        let dim = h.normal.len();
        let centroid = tight.iter().fold(Vector::zeros(dim), |acc, &j| acc + &vertices[j]) / tight.len() as f64;
        if dim == 1 {
            return Ok(FacetRecord {
                halfspace: hi,
                vertex_indices: tight,
                normal: h.normal.clone(),
                offset: h.offset,
                area: 1.0,
                simplices: vec![vec![centroid.clone()]],
                simplex_cdf: vec![1.0],
                centroid,
                frame: None,
                polytope: None,
            });
        }
        let normal_col = DMatrix::from_column_slice(dim, 1, h.normal.as_slice());
        let frame = AffineSubspace::from_orthonormal(&h.normal * h.offset, orthonormal_complement(&normal_col));
        let local: Vec<Vector> = tight.iter().map(|&j| frame.to_intrinsic(&vertices[j])).collect();
        let restricted: Vec<(Vector, f64)> = all
            .iter()
            .enumerate()
            .filter(|&(gi, _)| gi != hi)
            .filter_map(|(_, g)| {
                let m = frame.project_direction(&g.normal);
                let norm = m.norm();
                (norm > 1e-9).then(|| (m, g.offset - g.normal.dot(frame.base())))
            })
            .collect();
        let sub = Polytope::new(local, restricted)?;
        let mut simplices = Vec::new();
        for sf in &sub.facets {
            for s in &sf.simplices {
                let mut simplex = Vec::with_capacity(dim);
                simplex.push(centroid.clone());
                simplex.extend(s.iter().map(|y| frame.to_ambient(y)));
                simplices.push(simplex);
            }
        }
        let simplex_cdf = cumulative(simplices.iter().map(|s| simplex_volume(s)));
        let area = *simplex_cdf.last().unwrap_or(&0.0);
        Ok(FacetRecord {
            halfspace: hi,
            vertex_indices: tight,
            normal: h.normal.clone(),
            offset: h.offset,
            area,
            centroid,
            simplices,
            simplex_cdf,
            frame: Some(frame),
            polytope: Some(Box::new(sub)),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn facets(&self) -> &[FacetRecord] {
        &self.facets
    }

    pub fn centroid(&self) -> &Vector {
        &self.centroid
    }

    /// Largest vertex distance from the vertex centroid.
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn surface_area(&self) -> f64 {
        self.surface_area
    }

    pub fn inradius_about_centroid(&self) -> f64 {
        self.halfspaces.iter().map(|h| h.slack(&self.centroid)).fold(f64::INFINITY, f64::min)
    }

    pub fn max_violation(&self, x: &Vector) -> f64 {
        self.halfspaces.iter().map(|h| -h.slack(x)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Facet `i` as a `(d-1)`-dimensional body framed in this polytope's
    /// coordinates.
    pub fn facet_body(&self, i: usize) -> Result<Body> {
        let f = &self.facets[i];
        match (&f.polytope, &f.frame) {
            (Some(p), Some(frame)) => Body::from((**p).clone()).with_frame(frame.clone()),
            _ => Err(GeomError::Unsupported("facets of a 1-dimensional polytope are points".into())),
        }
    }

    /// Facet index of a halfspace, when that halfspace supports a facet.
    pub fn facet_of_halfspace(&self, h: usize) -> Option<usize> {
        self.halfspace_facet[h]
    }

    /// Outer normal and facet index at a boundary point.
    pub fn normal_at(&self, x: &Vector) -> Result<(Vector, usize)> {
        let tight: Vec<usize> =
            (0..self.halfspaces.len()).filter(|&i| self.halfspaces[i].slack(x).abs() <= BOUNDARY_TOL).collect();
        match tight.as_slice() {
            [] => Err(GeomError::OffBoundary(self.max_violation(x))),
            [h] => {
                let f = self.halfspace_facet[*h].ok_or(GeomError::Ridge(*h, *h))?;
                Ok((self.halfspaces[*h].normal.clone(), f))
            }
            [a, b, ..] => Err(GeomError::Ridge(*a, *b)),
        }
    }

    pub(crate) fn line_intersect(&self, line: &AffineSubspace) -> Option<Chord> {
        let (t, idx, ridge) = self.clip(line)?;
        let normals = [self.halfspaces[idx[0]].normal.clone(), self.halfspaces[idx[1]].normal.clone()];
        let facets = [self.halfspace_facet[idx[0]], self.halfspace_facet[idx[1]]];
        let ridge = ridge || facets[0].is_none() || facets[1].is_none();
        Chord::from_parameters(line, t, normals, facets, ridge)
    }

    /// Parameter interval of `line ∩ P`, the binding halfspaces at each
    /// end, and whether either end is tied with a second halfspace.
    pub(crate) fn clip(&self, line: &AffineSubspace) -> Option<([f64; 2], [usize; 2], bool)> {
        let u = line.direction(0);
        let b = line.base();
        let (mut t_in, mut t_out) = (f64::NEG_INFINITY, f64::INFINITY);
        let (mut second_in, mut second_out) = (f64::NEG_INFINITY, f64::INFINITY);
        let (mut i_in, mut i_out) = (usize::MAX, usize::MAX);
        for (i, h) in self.halfspaces.iter().enumerate() {
            let dn = h.normal.dot(&u);
            let slack = h.slack(b);
            if dn.abs() < 1e-15 {
                if slack < 0.0 {
                    return None;
                }
                continue;
            }
            let t = slack / dn;
            if dn > 0.0 {
                if t < t_out {
                    second_out = t_out;
                    t_out = t;
                    i_out = i;
                } else if t < second_out {
                    second_out = t;
                }
            } else if t > t_in {
                second_in = t_in;
                t_in = t;
                i_in = i;
            } else if t > second_in {
                second_in = t;
            }
        }
        if i_in == usize::MAX || i_out == usize::MAX || !(t_out - t_in >= crate::geometry::TANGENCY_TOL) {
            return None;
        }
        let ridge = (t_in - second_in).abs() <= self.tol || (second_out - t_out).abs() <= self.tol;
        Some(([t_in, t_out], [i_in, i_out], ridge))
    }

    pub(crate) fn intersects(&self, flat: &AffineSubspace) -> Result<bool> {
        let l = flat.dim();
        if l == 1 {
            Ok(self.clip(flat).is_some())
        } else if l + 1 == self.dim {
            let c = flat.complement_basis().column(0).into_owned();
            let sides: Vec<f64> = self.vertices.iter().map(|v| c.dot(&(v - flat.base()))).collect();
            let lo = sides.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = sides.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            Ok(lo < 0.0 && hi > 0.0)
        } else if l == 2 {
            Ok(crate::geometry::section::polytope(self, flat)?.is_some())
        } else {
            Err(GeomError::Unsupported(format!("polytope hit test for {l}-flats in dimension {}", self.dim)))
        }
    }

    /// Uniform point on `∂P`; ridge hits are resampled.
    pub(crate) fn sample_boundary<R: Rng + ?Sized>(&self, rng: &mut R) -> BoundaryPoint {
        loop {
            let fi = pick(&self.facet_cdf, rng);
            let f = &self.facets[fi];
            let si = pick(&f.simplex_cdf, rng);
            let x = uniform_in_simplex(&f.simplices[si], rng);
            let on_ridge = self
                .halfspaces
                .iter()
                .enumerate()
                .any(|(i, h)| i != f.halfspace && h.slack(&x).abs() <= BOUNDARY_TOL);
            if !on_ridge {
                return BoundaryPoint { position: x, normal: f.normal.clone(), facet: Some(fi) };
            }
        }
    }

    /// Uniform point in `P`.
    pub(crate) fn sample_interior<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        let ci = pick(&self.cell_cdf, rng);
        uniform_in_simplex(&self.cells[ci], rng)
    }

    /// Uniform point of facet `i`.
    pub fn sample_facet<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> Vector {
        let f = &self.facets[i];
        let si = pick(&f.simplex_cdf, rng);
        uniform_in_simplex(&f.simplices[si], rng)
    }
}
