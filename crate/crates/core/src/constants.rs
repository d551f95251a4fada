//! Ball volumes, sphere areas and the Blaschke–Petkantschin constant.

use std::f64::consts::PI;

/// Volume of the unit `k`-ball, `κ_k`. `κ_0 = 1`.
pub fn kappa(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / k as f64 * kappa(k - 2),
    }
}

/// Surface area of the unit `(k-1)`-sphere, `ω_k = k κ_k`.
pub fn omega(k: usize) -> f64 {
    k as f64 * kappa(k)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `b_{d,l} = (ω_{d-l+1} ⋯ ω_d) / (ω_1 ⋯ ω_l)`.
pub fn bp_constant(d: usize, l: usize) -> f64 {
    assert!(l <= d, "bp_constant requires l <= d");
    let num: f64 = (d - l + 1..=d).map(omega).product();
    let den: f64 = (1..=l).map(omega).product();
    num / den
}

/// Full Blaschke–Petkantschin prefactor `(l!)^{d-l} b_{d,l}`.
pub fn bp_prefactor(d: usize, l: usize) -> f64 {
    factorial(l).powi((d - l) as i32) * bp_constant(d, l)
}
