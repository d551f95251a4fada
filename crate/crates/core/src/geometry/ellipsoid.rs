use nalgebra::{DMatrix, SymmetricEigen};

use crate::constants::{kappa, omega};
use crate::error::{GeomError, Result};
use crate::flat::AffineSubspace;
use crate::geometry::Chord;
use crate::Vector;

/// Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vector,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidBody(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Ball { center, radius })
    }

    pub fn unit(d: usize) -> Self {
        Ball { center: Vector::zeros(d), radius: 1.0 }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn volume(&self) -> f64 {
        kappa(self.dim()) * self.radius.powi(self.dim() as i32)
    }

    pub fn surface_area(&self) -> f64 {
        omega(self.dim()) * self.radius.powi(self.dim() as i32 - 1)
    }

    pub(crate) fn line_intersect(&self, line: &AffineSubspace) -> Option<Chord> {
        let u = line.direction(0);
        let q = line.base() - &self.center;
        let beta = u.dot(&q);
        let disc = beta * beta - (q.norm_squared() - self.radius * self.radius);
        if disc <= 0.0 {
            return None;
        }
        let s = disc.sqrt();
        let t = [-beta - s, -beta + s];
        let normal = |t: f64| (line.base() + &u * t - &self.center).normalize();
        Chord::from_parameters(line, t, [normal(t[0]), normal(t[1])], [None, None], false)
    }
}

/// Solid ellipsoid `{x : (x - c)ᵀ A (x - c) ≤ 1}` with `A` symmetric
/// positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    center: Vector,
    shape: DMatrix<f64>,
    /// `A^{-1/2}`: maps the unit sphere onto the boundary.
    transform: DMatrix<f64>,
    /// `A^{1/2}`.
    inverse_transform: DMatrix<f64>,
    semi_axes: Vector,
    det_transform: f64,
}

impl Ellipsoid {
    /// Build from the shape matrix `A`.
    pub fn from_shape_matrix(center: Vector, shape: DMatrix<f64>) -> Result<Self> {
        let d = center.len();
        if shape.nrows() != d || shape.ncols() != d {
            return Err(GeomError::Dimension { expected: d, got: shape.nrows() });
        }
        let scale = shape.abs().max().max(1.0);
        if (&shape - shape.transpose()).abs().max() > 1e-10 * scale {
            return Err(GeomError::InvalidBody("ellipsoid shape matrix is not symmetric".into()));
        }
        let sym = (&shape + shape.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym.clone());
        if eig.eigenvalues.iter().any(|&l| !(l > 0.0)) {
            return Err(GeomError::InvalidBody("ellipsoid shape matrix is not positive definite".into()));
        }
        let v = &eig.eigenvectors;
        let inv_sqrt = Vector::from_iterator(d, eig.eigenvalues.iter().map(|l| 1.0 / l.sqrt()));
        let sqrt = Vector::from_iterator(d, eig.eigenvalues.iter().map(|l| l.sqrt()));
        let transform = v * DMatrix::from_diagonal(&inv_sqrt) * v.transpose();
        let inverse_transform = v * DMatrix::from_diagonal(&sqrt) * v.transpose();
        let det_transform = inv_sqrt.iter().product();
        Ok(Ellipsoid { center, shape: sym, transform, inverse_transform, semi_axes: inv_sqrt, det_transform })
    }

    /// Axis-aligned ellipsoid `Σ (xᵢ - cᵢ)² / aᵢ² ≤ 1`.
    pub fn from_semi_axes(center: Vector, axes: &[f64]) -> Result<Self> {
        if axes.len() != center.len() {
            return Err(GeomError::Dimension { expected: center.len(), got: axes.len() });
        }
        if axes.iter().any(|&a| !(a > 0.0)) {
            return Err(GeomError::InvalidBody("semi-axes must be positive".into()));
        }
        let diag = Vector::from_iterator(axes.len(), axes.iter().map(|a| 1.0 / (a * a)));
        Self::from_shape_matrix(center, DMatrix::from_diagonal(&diag))
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn shape_matrix(&self) -> &DMatrix<f64> {
        &self.shape
    }

    pub fn transform(&self) -> &DMatrix<f64> {
        &self.transform
    }

    pub fn semi_axes(&self) -> &Vector {
        &self.semi_axes
    }

    pub fn max_semi_axis(&self) -> f64 {
        self.semi_axes.max()
    }

    pub fn min_semi_axis(&self) -> f64 {
        self.semi_axes.min()
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn volume(&self) -> f64 {
        kappa(self.dim()) * self.det_transform
    }

    pub fn quadratic_form(&self, x: &Vector) -> f64 {
        let q = x - &self.center;
        q.dot(&(&self.shape * &q))
    }

    pub fn normal(&self, x: &Vector) -> Vector {
        (&self.shape * (x - &self.center)).normalize()
    }

    /// Boundary point `c + A^{-1/2} s` for `s` on the unit sphere.
    pub fn surface_point(&self, s: &Vector) -> Vector {
        &self.center + &self.transform * s
    }

    /// Outer normal at the image of `s`.
    pub fn surface_normal(&self, s: &Vector) -> Vector {
        (&self.inverse_transform * s).normalize()
    }

    /// Ratio of the boundary area element to the unit-sphere element at `s`:
    /// `det(A^{-1/2}) · ‖A^{1/2} s‖`.
    pub fn area_jacobian(&self, s: &Vector) -> f64 {
        self.det_transform * (&self.inverse_transform * s).norm()
    }

    /// For a flat `p + B y`: the restricted form `BᵀAB`, the minimizer `y₀`
    /// and the minimum `γ` of the quadratic form over the flat.
    pub(crate) fn restrict(&self, flat: &AffineSubspace) -> (DMatrix<f64>, Vector, f64) {
        let b = flat.basis();
        let q = flat.base() - &self.center;
        let aq = &self.shape * &q;
        let restricted = b.transpose() * &self.shape * b;
        let g = b.transpose() * &aq;
        let y0 = -restricted
            .clone()
            .cholesky()
            .expect("restriction of a positive-definite form is positive definite")
            .solve(&g);
        let gamma = q.dot(&aq) + g.dot(&y0);
        (restricted, y0, gamma)
    }

    /// Minimum of the quadratic form over the flat; the flat meets the
    /// interior iff this is `< 1`.
    pub(crate) fn section_level(&self, flat: &AffineSubspace) -> f64 {
        self.restrict(flat).2
    }

    pub(crate) fn line_intersect(&self, line: &AffineSubspace) -> Option<Chord> {
        let u = line.direction(0);
        let q = line.base() - &self.center;
        let au = &self.shape * &u;
        let a = u.dot(&au);
        let beta = au.dot(&q);
        let gamma = q.dot(&(&self.shape * &q)) - 1.0;
        let disc = beta * beta - a * gamma;
        if disc <= 0.0 {
            return None;
        }
        let s = disc.sqrt();
        let t = [(-beta - s) / a, (-beta + s) / a];
        let normal = |t: f64| self.normal(&(line.base() + &u * t));
        Chord::from_parameters(line, t, [normal(t[0]), normal(t[1])], [None, None], false)
    }
}
