//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

/// Values produced by the oracles below and frozen here.
pub mod frozen {
    /// κ for overlapping wells with η_⊥ = 0.05, η_∥ = 0.1.
    pub const ELLIPSOID_KAPPA: f64 = -67.605;
    /// Optimal η_∥/η_⊥ and |κ|η_⊥³ there.
    pub const ASPECT_RATIO_OPT: f64 = 2.181401;
    pub const ASPECT_C_KAPPA: f64 = 8.5118e-3;
    /// Optimal separation in units of x_0 and |κ|η³ there.
    pub const SEPARATION_OPT: f64 = 2.51042;
    pub const SEPARATION_C_KAPPA: f64 = 0.0153258;
    /// κ for separated wells at η = 0.05, Δz̄ = 2.5.
    pub const SEPARATED_KAPPA: f64 = -122.603;
    /// Cs budget: optimal detuning and minimum of the first-order sum.
    pub const CS_DETUNING: f64 = 5817.56;
    pub const CS_RATE_SUM_MIN: f64 = 0.084829;
}

/// `-(3/4)⟨P₂(cosθ)/(kr)³⟩` over an axially symmetric relative Gaussian with
/// rms widths `(s_perp, s_perp, s_par)` centred at `(0, 0, mean)`.
///
/// Composite Simpson in `(ln r, cosθ)`, written independently of the crate.
pub fn near_field_kappa_oracle(s_perp: f64, s_par: f64, mean: f64) -> f64 {
    let n_u = 3000;
    let n_c = 1200;
    let s_min = s_perp.min(s_par);
    let s_max = s_perp.max(s_par);
    let u0 = (1e-7 * s_min).ln();
    let u1 = (mean.abs() + 14.0 * s_max).ln();
    let hu = (u1 - u0) / n_u as f64;
    let hc = 2.0 / n_c as f64;
    let norm = (2.0 * PI).powf(1.5) * s_perp * s_perp * s_par;
    let simpson = |i: usize, n: usize| -> f64 {
        if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let total: f64 = (0..=n_u)
        .into_par_iter()
        .map(|i| {
            let r = (u0 + hu * i as f64).exp();
            let mut row = 0.0;
            for j in 0..=n_c {
                let c = -1.0 + hc * j as f64;
                let rho_perp = r * r * (1.0 - c * c);
                let dz = r * c - mean;
                let rho = (-rho_perp / (2.0 * s_perp * s_perp) - dz * dz / (2.0 * s_par * s_par))
                    .exp()
                    / norm;
                let p2 = 0.5 * (3.0 * c * c - 1.0);
                // r³ dr / r³ with dr = r du
                row += simpson(j, n_c) * rho * p2;
            }
            simpson(i, n_u) * row
        })
        .sum();
    let mean_p2_over_r3 = 2.0 * PI * total * hu * hc / 9.0;
    -0.75 * mean_p2_over_r3
}

/// Monte Carlo estimate of `P(|r| < a)` for `r ~ N((0, 0, d), 2·1)` per axis,
/// the relative coordinate of two unit-width packets `d` apart.
pub fn collision_monte_carlo(d: f64, a: f64, samples: u64, seed: u64) -> f64 {
    let chunks = 64u64;
    let per = samples / chunks;
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(k));
            let s = 2f64.sqrt();
            let a2 = a * a;
            let mut hits = 0u64;
            for _ in 0..per {
                let x: f64 = StandardNormal.sample(&mut rng);
                let y: f64 = StandardNormal.sample(&mut rng);
                let z: f64 = StandardNormal.sample(&mut rng);
                let (x, y, z) = (s * x, s * y, s * z + d);
                if x * x + y * y + z * z < a2 {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    hits as f64 / (per * chunks) as f64
}

pub fn binomial_se(p: f64, n: f64) -> f64 {
    (p * (1.0 - p) / n).sqrt()
}

/// Maxwell CDF `erf(a/2) - (a/√π) e^{-a²/4}` computed by Simpson on the radial density.
pub fn radial_cdf_oracle(a: f64) -> f64 {
    let n = 20_000;
    let h = a / n as f64;
    let density = |r: f64| 4.0 * PI * r * r * (-r * r / 4.0).exp() / (4.0 * PI).powf(1.5);
    let mut s = density(0.0) + density(a);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * density(h * i as f64);
    }
    s * h / 3.0
}
