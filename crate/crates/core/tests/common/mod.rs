//! Reference values computed without the library: closed forms, 1-D and
//! 2-D quadrature, and brute-force Monte Carlo on plain arrays.

#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Mean and standard error of `n` draws of `f`.
pub fn brute_force<F: FnMut(&mut ChaCha8Rng) -> f64>(n: usize, seed: u64, mut f: F) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut s, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let x = f(&mut rng);
        s += x;
        s2 += x * x;
    }
    let m = s / n as f64;
    let var = (s2 / n as f64 - m * m) * n as f64 / (n - 1) as f64;
    (m, (var / n as f64).sqrt())
}

pub fn in_unit_ball<const D: usize>(rng: &mut ChaCha8Rng) -> [f64; D] {
    loop {
        let x: [f64; D] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        if x.iter().map(|v| v * v).sum::<f64>() < 1.0 {
            return x;
        }
    }
}

pub fn on_unit_sphere<const D: usize>(rng: &mut ChaCha8Rng) -> [f64; D] {
    let g: [f64; D] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let r = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    g.map(|v| v / r)
}

pub fn dist<const D: usize>(a: &[f64; D], b: &[f64; D]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(a: f64, b: f64, n: usize, f: F) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Ellipse perimeter by the arithmetic-geometric mean.
pub fn ellipse_perimeter(a: f64, b: f64) -> f64 {
    let (mut x, mut y) = (a.max(b), a.min(b));
    let mut sum = 0.5 * (x * x - y * y);
    let mut pow = 0.5;
    while (x - y).abs() > 1e-15 * x {
        let c = 0.5 * (x - y);
        let (nx, ny) = (0.5 * (x + y), (x * y).sqrt());
        pow *= 2.0;
        sum += pow * c * c;
        x = nx;
        y = ny;
    }
    2.0 * PI * (a.max(b).powi(2) - sum) / x
}

/// Length of the chord cut from a convex polygon (counter-clockwise
/// vertices) by the line `{x : x·(cos θ, sin θ) = p}`.
pub fn polygon_chord(poly: &[[f64; 2]], theta: f64, p: f64) -> f64 {
    let (n, t) = ([theta.cos(), theta.sin()], [-theta.sin(), theta.cos()]);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        // Inside means (b - a) × (x - a) ≥ 0.
        let e = [b[0] - a[0], b[1] - a[1]];
        let base = [p * n[0] - a[0], p * n[1] - a[1]];
        let c0 = e[0] * base[1] - e[1] * base[0];
        let c1 = e[0] * t[1] - e[1] * t[0];
        if c1.abs() < 1e-15 {
            if c0 < 0.0 {
                return 0.0;
            }
        } else if c1 > 0.0 {
            lo = lo.max(-c0 / c1);
        } else {
            hi = hi.min(-c0 / c1);
        }
    }
    (hi - lo).max(0.0)
}

/// `∫ g(|G ∩ P|) μ(dG)` over lines of the plane with `μ = dp dθ / π`,
/// `θ ∈ [0, π)`, so that lines hitting the unit disk have mass 2.
pub fn polygon_line_integral<G: Fn(f64) -> f64>(poly: &[[f64; 2]], g: G, n: usize) -> f64 {
    let r = poly.iter().map(|v| v[0].hypot(v[1])).fold(0.0, f64::max);
    simpson(0.0, PI, n, |theta| simpson(-r, r, n, |p| g(polygon_chord(poly, theta, p)))) / PI
}

pub const UNIT_SQUARE: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];

pub fn unit_triangle() -> [[f64; 2]; 3] {
    [[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]
}

/// `∫∫_{K²} |x-y|^n dx dy` for the unit ball in `R^3`, by brute force.
pub fn ball3_pair_moment(n: i32, samples: usize, seed: u64) -> (f64, f64) {
    let vol = 4.0 * PI / 3.0;
    let (m, se) = brute_force(samples, seed, |rng| {
        let (x, y) = (in_unit_ball::<3>(rng), in_unit_ball::<3>(rng));
        dist(&x, &y).powi(n)
    });
    (vol * vol * m, vol * vol * se)
}

/// `∫_{∂B}∫_B |x-y|^n dx dσ(y)` for the unit ball in `R^3`, by brute force.
pub fn ball3_mixed_moment(n: i32, samples: usize, seed: u64) -> (f64, f64) {
    let w = 4.0 * PI / 3.0 * 4.0 * PI;
    let (m, se) = brute_force(samples, seed, |rng| {
        let (x, y) = (in_unit_ball::<3>(rng), on_unit_sphere::<3>(rng));
        dist(&x, &y).powi(n)
    });
    (w * m, w * se)
}

/// `∫∫ |x-y|^n` over pairs of points of the unit square, by brute force.
pub fn square_pair_moment(n: i32, samples: usize, seed: u64) -> (f64, f64) {
    brute_force(samples, seed, |rng| {
        let x: [f64; 2] = [rng.random(), rng.random()];
        let y: [f64; 2] = [rng.random(), rng.random()];
        dist(&x, &y).powi(n)
    })
}

/// `∫ h(|G ∩ B|) μ(dG)` over lines in `R^d` hitting the unit ball:
/// `κ_{d-1} (d-1) ∫_0^1 h(2√(1-p²)) p^{d-2} dp`.
pub fn ball_chord_integral<H: Fn(f64) -> f64>(d: usize, h: H) -> f64 {
    let kappa = |k: usize| PI.powf(k as f64 / 2.0) / libm_gamma(k as f64 / 2.0 + 1.0);
    let m = (d - 1) as f64;
    kappa(d - 1) * m * simpson(0.0, 1.0, 20_000, |p| h(2.0 * (1.0 - p * p).max(0.0).sqrt()) * p.powf(m - 1.0))
}

/// Γ on half-integers and integers, enough for ball volumes.
fn libm_gamma(x: f64) -> f64 {
    if (x - 0.5).abs() < 1e-12 {
        PI.sqrt()
    } else if (x - 1.0).abs() < 1e-12 {
        1.0
    } else {
        (x - 1.0) * libm_gamma(x - 1.0)
    }
}
