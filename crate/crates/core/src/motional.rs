//! Gaussian motional wavepackets, the center-of-mass / relative-coordinate
//! reduction, isotropic oscillator shells and the short-range collision
//! probability of two separated wells.

use std::f64::consts::PI;

use crate::error::{invalid, require_positive, Result};

/// Two Gaussian ground-state wavepackets. Widths are rms spreads of the
/// probability density along x, y, z in units of `1/k_L`, so a width equals
/// the corresponding Lamb-Dicke parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketPair {
    pub widths_a: [f64; 3],
    pub widths_b: [f64; 3],
    /// Separation of the well centers along z, in units of `1/k_L`.
    pub separation: f64,
}

impl PacketPair {
    pub fn new(widths_a: [f64; 3], widths_b: [f64; 3], separation: f64) -> Result<Self> {
        for w in widths_a.iter().chain(&widths_b) {
            require_positive("width", *w)?;
        }
        if !separation.is_finite() {
            return Err(invalid("separation", separation, "must be finite"));
        }
        Ok(Self {
            widths_a,
            widths_b,
            separation,
        })
    }

    /// Identical axially symmetric packets in a common well
    /// (`σ_x = σ_y = η_⊥/k_L`, `σ_z = η_∥/k_L`).
    pub fn ellipsoid(eta_perp: f64, eta_par: f64) -> Result<Self> {
        let w = [eta_perp, eta_perp, eta_par];
        Self::new(w, w, 0.0)
    }

    /// Identical spherical packets of Lamb-Dicke parameter `eta` in wells
    /// `dz_bar · x_0` apart along z.
    pub fn separated(eta: f64, dz_bar: f64) -> Result<Self> {
        require_positive("eta", eta)?;
        let w = [eta; 3];
        Self::new(w, w, dz_bar * eta)
    }

    pub fn eta_perp(&self) -> f64 {
        self.widths_a[0]
    }

    pub fn eta_par(&self) -> f64 {
        self.widths_a[2]
    }

    /// Separation in units of the single-packet transverse width.
    pub fn dz_bar(&self) -> f64 {
        self.separation / self.widths_a[0]
    }
}

/// Density of the relative coordinate `r = r_a - r_b`: an axis-aligned
/// normalized Gaussian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeGaussian {
    pub mean: [f64; 3],
    pub widths: [f64; 3],
}

impl RelativeGaussian {
    pub fn density(&self, r: [f64; 3]) -> f64 {
        let mut exponent = 0.0;
        let mut norm = (2.0 * PI).powf(1.5);
        for i in 0..3 {
            let d = (r[i] - self.mean[i]) / self.widths[i];
            exponent += d * d;
            norm *= self.widths[i];
        }
        (-0.5 * exponent).exp() / norm
    }
}

/// Relative-coordinate Gaussian of a packet pair: mean `(0, 0, Δz)` and
/// widths `√(σ_a² + σ_b²)` along each axis.
pub fn relative_gaussian(pair: &PacketPair) -> RelativeGaussian {
    let widths = [0, 1, 2].map(|i| pair.widths_a[i].hypot(pair.widths_b[i]));
    RelativeGaussian {
        mean: [0.0, 0.0, pair.separation],
        widths,
    }
}

/// Probability that two atoms in identical spherical wells `dz_bar · x_0`
/// apart are closer than `a_bar · x_0`.
///
/// The relative coordinate is Gaussian with per-axis variance `2x_0²`, so
/// this is the CDF of a noncentral chi distribution. The erf difference is
/// taken through erfc when both arguments are large, and the exponential
/// difference is written as a sinh, which keeps `dz_bar → 0` smooth.
pub fn collision_probability(dz_bar: f64, a_bar: f64) -> Result<f64> {
    if a_bar.is_nan() || a_bar < 0.0 {
        return Err(invalid("a_bar", a_bar, "must be >= 0"));
    }
    if !dz_bar.is_finite() {
        return Err(invalid("dz_bar", dz_bar, "must be finite"));
    }
    let d = dz_bar.abs();
    let a = a_bar;
    if a == 0.0 {
        return Ok(0.0);
    }
    if a.is_infinite() {
        return Ok(1.0);
    }
    let sqrt_pi = PI.sqrt();
    let p = if d == 0.0 {
        libm::erf(a / 2.0) - a / sqrt_pi * (-a * a / 4.0).exp()
    } else {
        // ½[erf((a+d)/2) + erf((a-d)/2)]
        let u = (a + d) / 2.0;
        let v = (d - a) / 2.0;
        let erf_part = if v > 0.5 {
            0.5 * (libm::erfc(v) - libm::erfc(u))
        } else {
            0.5 * (libm::erf(u) - libm::erf(v))
        };
        // (e^{-(d+a)²/4} - e^{-(d-a)²/4}) / (d√π)
        let exp_part = -2.0 * (-(a * a + d * d) / 4.0).exp() * (a * d / 2.0).sinh() / (d * sqrt_pi);
        erf_part + exp_part
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Isotropic 3-D oscillator eigenstate `|n, l, m⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OscillatorState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl OscillatorState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(invalid("m", m as f64, "|m| must not exceed l"));
        }
        Ok(Self { n, l, m })
    }

    pub const fn ground() -> Self {
        Self { n: 0, l: 0, m: 0 }
    }

    /// Total quanta `2n + l`.
    pub fn quanta(&self) -> u32 {
        2 * self.n + self.l
    }

    /// Energy in units of `ħω_osc`: `2n + l + 3/2`.
    pub fn energy(&self) -> f64 {
        self.quanta() as f64 + 1.5
    }
}

impl std::fmt::Display for OscillatorState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|{}{}{}⟩", self.n, self.l, self.m)
    }
}

/// Degeneracy `(N+1)(N+2)/2` of the shell with `N = 2n + l` quanta.
pub fn shell_degeneracy(total_quanta: u32) -> usize {
    let n = total_quanta as usize;
    (n + 1) * (n + 2) / 2
}

/// All `|n, l, m⟩` with `2n + l = total_quanta`, ordered by `l` then `m`.
pub fn shell_states(total_quanta: u32) -> Vec<OscillatorState> {
    let mut states = Vec::with_capacity(shell_degeneracy(total_quanta));
    let mut l = total_quanta % 2;
    while l <= total_quanta {
        let n = (total_quanta - l) / 2;
        let li = l as i32;
        states.extend((-li..=li).map(|m| OscillatorState { n, l, m }));
        l += 2;
    }
    states
}
