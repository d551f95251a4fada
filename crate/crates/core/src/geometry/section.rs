use crate::error::{GeomError, Result};
use crate::flat::AffineSubspace;
use crate::geometry::{Ball, Ellipsoid, Polytope};
use crate::Vector;

pub(crate) fn ball(b: &Ball, flat: &AffineSubspace) -> Option<Ball> {
    let rho2 = b.radius * b.radius - flat.distance(&b.center).powi(2);
    if rho2 <= 0.0 {
        return None;
    }
    Some(Ball { center: flat.to_intrinsic(&b.center), radius: rho2.sqrt() })
}

pub(crate) fn ellipsoid(e: &Ellipsoid, flat: &AffineSubspace) -> Option<Ellipsoid> {
    let (restricted, y0, gamma) = e.restrict(flat);
    if gamma >= 1.0 {
        return None;
    }
    let shape = restricted / (1.0 - gamma);
    Ellipsoid::from_shape_matrix(y0, shape).ok()
}

/// Halfspaces of `P` restricted to the flat, in its intrinsic coordinates.
/// `None` when a constraint parallel to the flat already excludes it.
fn restricted_halfspaces(p: &Polytope, flat: &AffineSubspace) -> Option<Vec<(Vector, f64)>> {
    let mut out = Vec::with_capacity(p.halfspaces().len());
    for h in p.halfspaces() {
        let m = flat.project_direction(&h.normal);
        let slack = h.offset - h.normal.dot(flat.base());
        if m.norm() < 1e-12 {
            if slack <= 0.0 {
                return None;
            }
            continue;
        }
        out.push((m, slack));
    }
    Some(out)
}

pub(crate) fn polytope(p: &Polytope, flat: &AffineSubspace) -> Result<Option<Polytope>> {
    match flat.dim() {
        1 => segment(p, flat),
        2 => polygon(p, flat),
        l => Err(GeomError::Unsupported(format!("polytope sections by {l}-flats"))),
    }
}

fn segment(p: &Polytope, flat: &AffineSubspace) -> Result<Option<Polytope>> {
    let Some(([t0, t1], _, _)) = p.clip(flat) else {
        return Ok(None);
    };
    let v = |t: f64| Vector::from_element(1, t);
    Polytope::new(vec![v(t0), v(t1)], vec![(v(1.0), t1), (v(-1.0), -t0)]).map(Some)
}

fn polygon(p: &Polytope, flat: &AffineSubspace) -> Result<Option<Polytope>> {
    let Some(hs) = restricted_halfspaces(p, flat) else {
        return Ok(None);
    };
    let hs: Vec<(Vector, f64)> = hs
        .into_iter()
        .map(|(m, o)| {
            let n = m.norm();
            (m / n, o / n)
        })
        .collect();
    let scale = 1.0 + p.circumradius() + (flat.base() - p.centroid()).norm();
    let tol = 1e-10 * scale;
    let mut pts: Vec<Vector> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let (a, b) = (&hs[i].0, &hs[j].0);
            let det = a[0] * b[1] - a[1] * b[0];
            if det.abs() < 1e-12 {
                continue;
            }
            let x = Vector::from_vec(vec![
                (hs[i].1 * b[1] - hs[j].1 * a[1]) / det,
                (a[0] * hs[j].1 - b[0] * hs[i].1) / det,
            ]);
            let feasible = hs.iter().all(|(n, o)| n.dot(&x) <= o + tol);
            if feasible && !pts.iter().any(|q| (q - &x).norm() <= tol) {
                pts.push(x);
            }
        }
    }
    if pts.len() < 3 {
        return Ok(None);
    }
    let c = pts.iter().fold(Vector::zeros(2), |acc, q| acc + q) / pts.len() as f64;
    let extent = pts.iter().map(|q| (q - &c).norm()).fold(0.0, f64::max);
    if extent < 1e-7 * scale {
        return Ok(None);
    }
    pts.sort_by(|a, b| (a[1] - c[1]).atan2(a[0] - c[0]).total_cmp(&(b[1] - c[1]).atan2(b[0] - c[0])));
    let area: f64 = (0..pts.len())
        .map(|i| {
            let (a, b) = (&pts[i], &pts[(i + 1) % pts.len()]);
            (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0])
        })
        .sum::<f64>()
        / 2.0;
    if area < 1e-14 * scale * scale {
        return Ok(None);
    }
    Polytope::new(pts, hs).map(Some)
}
