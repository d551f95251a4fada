//! Affine flats: an orthonormal direction basis plus a canonical base point.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::Vector;

/// An element of the affine Grassmannian `A_{d,l}`.
///
/// `basis` is `d × l` with orthonormal columns; `base` is the orthogonal
/// projection of the origin onto the flat.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSubspace {
    basis: DMatrix<f64>,
    base: Vector,
}

impl AffineSubspace {
    /// Build a flat through `point` spanned by the columns of `basis`.
    /// The columns must already be orthonormal.
    pub fn new(point: Vector, basis: DMatrix<f64>) -> Result<Self> {
        if basis.nrows() != point.len() {
            return Err(GeomError::Dimension { expected: point.len(), got: basis.nrows() });
        }
        let gram = basis.transpose() * &basis;
        let l = basis.ncols();
        if (gram - DMatrix::identity(l, l)).abs().max() > 1e-10 {
            return Err(GeomError::Degenerate("flat basis is not orthonormal".into()));
        }
        Ok(Self::from_orthonormal(point, basis))
    }

    /// Orthonormalize `directions` (Gram–Schmidt) and build the flat.
    pub fn spanned_by(point: Vector, directions: &[Vector]) -> Result<Self> {
        let d = point.len();
        let mut cols: Vec<Vector> = Vec::with_capacity(directions.len());
        for v in directions {
            let mut w = v.clone();
            for c in &cols {
                w -= c * c.dot(&w);
            }
            let n = w.norm();
            if n < 1e-12 {
                return Err(GeomError::Degenerate("linearly dependent flat directions".into()));
            }
            cols.push(w / n);
        }
        let basis = if cols.is_empty() { DMatrix::zeros(d, 0) } else { DMatrix::from_columns(&cols) };
        Ok(Self::from_orthonormal(point, basis))
    }

    /// Line through `point` with direction `dir` (normalized here).
    pub fn line(point: Vector, dir: &Vector) -> Result<Self> {
        Self::spanned_by(point, std::slice::from_ref(dir))
    }

    pub(crate) fn from_orthonormal(point: Vector, basis: DMatrix<f64>) -> Self {
        let coords = basis.transpose() * &point;
        let base = &point - &basis * coords;
        AffineSubspace { basis, base }
    }

    /// Flat dimension `l`.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn base(&self) -> &Vector {
        &self.base
    }

    pub fn direction(&self, i: usize) -> Vector {
        self.basis.column(i).into_owned()
    }

    pub fn to_ambient(&self, y: &Vector) -> Vector {
        &self.base + &self.basis * y
    }

    pub fn to_intrinsic(&self, x: &Vector) -> Vector {
        self.basis.transpose() * (x - &self.base)
    }

    /// Orthogonal projection of a direction onto the flat, in intrinsic
    /// coordinates.
    pub fn project_direction(&self, v: &Vector) -> Vector {
        self.basis.transpose() * v
    }

    /// Distance from `x` to the flat.
    pub fn distance(&self, x: &Vector) -> f64 {
        let rel = x - &self.base;
        let inside = &self.basis * (self.basis.transpose() * &rel);
        (rel - inside).norm()
    }

    /// Re-express a flat given in this flat's intrinsic coordinates in the
    /// ambient space.
    pub fn embed(&self, inner: &AffineSubspace) -> AffineSubspace {
        let point = self.to_ambient(inner.base());
        let basis = &self.basis * inner.basis();
        Self::from_orthonormal(point, basis)
    }

    /// Orthonormal basis of the orthogonal complement of the direction space.
    pub fn complement_basis(&self) -> DMatrix<f64> {
        orthonormal_complement(&self.basis)
    }
}

/// Orthonormal basis (as columns) of the complement of the column span of
/// an orthonormal `basis`.
pub fn orthonormal_complement(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let d = basis.nrows();
    let l = basis.ncols();
    let mut cols: Vec<Vector> = (0..l).map(|i| basis.column(i).into_owned()).collect();
    let mut out = Vec::with_capacity(d - l);
    // Try the coordinate axes, most orthogonal first.
    let mut axes: Vec<(usize, f64)> = (0..d)
        .map(|i| (i, (0..l).map(|j| basis[(i, j)].powi(2)).sum::<f64>()))
        .collect();
    axes.sort_by(|a, b| a.1.total_cmp(&b.1));
    for (i, _) in axes {
        if out.len() == d - l {
            break;
        }
        let mut w = Vector::zeros(d);
        w[i] = 1.0;
        for _ in 0..2 {
            for c in &cols {
                w -= c * c.dot(&w);
            }
        }
        let n = w.norm();
        if n > 1e-6 {
            let w = w / n;
            cols.push(w.clone());
            out.push(w);
        }
    }
    if out.is_empty() {
        DMatrix::zeros(d, 0)
    } else {
        DMatrix::from_columns(&out)
    }
}
