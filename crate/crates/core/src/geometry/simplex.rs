use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::constants::factorial;
use crate::Vector;

/// `l`-dimensional volume of the convex hull of `l + 1` points in `R^d`:
/// `√det(MᵀM) / l!` with `M = [x₁ - x₀, …, x_l - x₀]`. Degenerate
/// configurations give 0.
pub fn simplex_volume(points: &[Vector]) -> f64 {
    let Some((first, rest)) = points.split_first() else {
        return 0.0;
    };
    let l = rest.len();
    if l == 0 {
        return 1.0;
    }
    if l == 1 {
        return (&rest[0] - first).norm();
    }
    let m = DMatrix::from_columns(&rest.iter().map(|x| x - first).collect::<Vec<_>>());
    let gram = m.transpose() * &m;
    gram.determinant().max(0.0).sqrt() / factorial(l)
}

/// Uniform point in the simplex with the given vertices (flat Dirichlet
/// barycentric weights).
pub fn uniform_in_simplex<R: Rng + ?Sized>(vertices: &[Vector], rng: &mut R) -> Vector {
    let e: Vec<f64> = (0..vertices.len()).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = e.iter().sum();
    let mut x = Vector::zeros(vertices[0].len());
    for (v, w) in vertices.iter().zip(&e) {
        x.axpy(w / total, v, 1.0);
    }
    x
}
