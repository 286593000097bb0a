//! Species constants, the 1-D lattice potential and its harmonic-well
//! approximation, the irreducible light-shift decomposition, and lin-θ-lin
//! transport.
//!
//! Everything is dimensionless: energies are given in `ħΓ` or `E_R` (the
//! field name says which), lengths in `1/k_L`, rates in `Γ` and laser
//! intensities as ratios `I_1/I_0` to the saturation intensity.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, require_positive, Error, Result};

/// Physical constants of an alkali species.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSpecies {
    pub name: String,
    /// `ħΓ / E_R`.
    pub gamma_over_recoil: f64,
    /// Nuclear spin `I` (half-integer).
    pub nuclear_spin: f64,
    /// `F↑ = I + 1/2`.
    pub f_up: u32,
    /// `F↓ = I - 1/2`.
    pub f_down: u32,
    /// Natural linewidth `Γ/2π` in Hz; used only for SI output.
    pub linewidth_hz: f64,
}

impl AtomSpecies {
    pub fn new(
        name: impl Into<String>,
        gamma_over_recoil: f64,
        nuclear_spin: f64,
        linewidth_hz: f64,
    ) -> Result<Self> {
        require_positive("gamma_over_recoil", gamma_over_recoil)?;
        require_positive("linewidth_hz", linewidth_hz)?;
        let twice = 2.0 * nuclear_spin;
        if nuclear_spin < 0.5 || twice.fract() != 0.0 || (twice as u64) % 2 != 1 {
            return Err(invalid(
                "nuclear_spin",
                nuclear_spin,
                "must be a half-integer >= 1/2",
            ));
        }
        let f_down = (nuclear_spin - 0.5).round() as u32;
        Ok(Self {
            name: name.into(),
            gamma_over_recoil,
            nuclear_spin,
            f_up: f_down + 1,
            f_down,
            linewidth_hz,
        })
    }

    /// Cesium-133 on the D2 line.
    pub fn cesium() -> Self {
        Self::new("Cs", 2.5e3, 3.5, 5.2e6).expect("valid built-in species")
    }

    /// Rubidium-87 on the D2 line (`E_R/h` = 3.77 kHz at 780 nm).
    pub fn rubidium87() -> Self {
        Self::new("Rb", 6.07e6 / 3.77e3, 1.5, 6.07e6).expect("valid built-in species")
    }

    /// Sodium-23 on the D2 line (`E_R/h` = 25.0 kHz at 589 nm).
    pub fn sodium23() -> Self {
        Self::new("Na", 9.79e6 / 2.50e4, 1.5, 9.79e6).expect("valid built-in species")
    }

    /// Looks up a built-in species by case-insensitive symbol.
    pub fn builtin(symbol: &str) -> Option<Self> {
        match symbol.to_ascii_lowercase().as_str() {
            "cs" | "cs133" | "cesium" | "caesium" => Some(Self::cesium()),
            "rb" | "rb87" | "rubidium" => Some(Self::rubidium87()),
            "na" | "na23" | "sodium" => Some(Self::sodium23()),
            _ => None,
        }
    }

    /// Angular linewidth `Γ` in s⁻¹.
    pub fn gamma_si(&self) -> f64 {
        2.0 * PI * self.linewidth_hz
    }

    /// Converts a rate in units of `Γ` to s⁻¹.
    pub fn rate_to_si(&self, rate_over_gamma: f64) -> f64 {
        rate_over_gamma * self.gamma_si()
    }

    /// Converts an energy in units of `E_R` to a frequency `E/h` in Hz.
    pub fn recoil_energy_to_hz(&self, energy_over_recoil: f64) -> f64 {
        energy_over_recoil * self.linewidth_hz / self.gamma_over_recoil
    }

    /// Hyperfine factor `2/3 - 1/(3F↑)` that weights off-resonant scattering.
    pub fn hyperfine_factor(&self) -> f64 {
        2.0 / 3.0 - 1.0 / (3.0 * self.f_up as f64)
    }
}

/// One-dimensional lin-θ-lin lattice configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig {
    /// Single-beam intensity `I_1/I_0`.
    pub intensity_ratio: f64,
    /// Signed `Δ_L/Γ`; positive is blue.
    pub detuning_ratio: f64,
    /// Angle θ between the counter-propagating linear polarizations.
    pub polarization_angle: f64,
    /// `U_0/E_R`. When `None` it is derived from intensity and detuning.
    pub well_depth: Option<f64>,
}

impl LatticeConfig {
    pub fn new(intensity_ratio: f64, detuning_ratio: f64) -> Result<Self> {
        let cfg = Self {
            intensity_ratio,
            detuning_ratio,
            polarization_angle: 0.0,
            well_depth: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_well_depth(mut self, depth_over_recoil: f64) -> Self {
        self.well_depth = Some(depth_over_recoil);
        self
    }

    pub fn with_polarization_angle(mut self, theta: f64) -> Self {
        self.polarization_angle = theta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("intensity_ratio", self.intensity_ratio)?;
        if !self.detuning_ratio.is_finite() || self.detuning_ratio == 0.0 {
            return Err(invalid(
                "detuning_ratio",
                self.detuning_ratio,
                "must be finite and nonzero",
            ));
        }
        if !(0.0..PI).contains(&self.polarization_angle) {
            return Err(invalid(
                "polarization_angle",
                self.polarization_angle,
                "must lie in [0, π)",
            ));
        }
        Ok(())
    }

    /// `U_0/E_R`, either user-set or `(ħΓ/E_R)(I_1/I_0)/(3|Δ_L/Γ|)`.
    pub fn well_depth_over_recoil(&self, species: &AtomSpecies) -> f64 {
        self.well_depth.unwrap_or_else(|| {
            species.gamma_over_recoil * self.intensity_ratio / (3.0 * self.detuning_ratio.abs())
        })
    }
}

/// Harmonic approximation to a node-trapped `U_0 cos²(k_L x)` well.
#[derive(Debug, Clone, PartialEq)]
pub struct TrapModel {
    /// `U_0/E_R`.
    pub well_depth: f64,
    /// `ħω_osc/E_R`.
    pub omega_osc: f64,
    /// Ground-state rms width `x_0` in units of `1/k_L`.
    pub ground_width: f64,
    /// `η = k_L x_0` (numerically equal to `ground_width`).
    pub lamb_dicke: f64,
    /// Photon scattering rate `Γ'/Γ` of an atom at the node.
    pub scatter_rate: f64,
    pub species: AtomSpecies,
    pub lattice: LatticeConfig,
}

impl TrapModel {
    /// Scattering rate in s⁻¹.
    pub fn scatter_rate_si(&self) -> f64 {
        self.species.rate_to_si(self.scatter_rate)
    }

    /// Oscillation frequency `ω_osc/2π` in Hz.
    pub fn oscillation_frequency_hz(&self) -> f64 {
        self.species.recoil_energy_to_hz(self.omega_osc)
    }

    /// `ω_osc/Γ'`: oscillations per scattering event, up to 2π.
    pub fn oscillations_per_scatter(&self) -> f64 {
        (self.omega_osc / self.species.gamma_over_recoil) / self.scatter_rate
    }
}

/// Derives the harmonic-trap quantities for a blue-detuned, node-trapped atom.
pub fn derive_trap(species: &AtomSpecies, lattice: &LatticeConfig) -> Result<TrapModel> {
    lattice.validate()?;
    if lattice.detuning_ratio < 0.0 {
        return Err(Error::InconsistentGeometry(
            "node trapping requires blue detuning; red-detuned light traps at antinodes",
        ));
    }
    let depth = lattice.well_depth_over_recoil(species);
    require_positive("well_depth", depth)?;

    let omega_osc = 2.0 * depth.sqrt();
    let eta = (1.0 / omega_osc).sqrt();
    // Ground-state average of sin²(k_L x) at the node is η².
    let scatter_rate = (depth / species.gamma_over_recoil) * eta * eta / lattice.detuning_ratio;

    Ok(TrapModel {
        well_depth: depth,
        omega_osc,
        ground_width: eta,
        lamb_dicke: eta,
        scatter_rate,
        species: species.clone(),
        lattice: *lattice,
    })
}

/// Scalar and fictitious-magnetic-field parts of the ground-state light shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrreducibleShift {
    /// `U_J` in units of the single-beam shift `U_1`.
    pub scalar_part: f64,
    /// `B_eff` in units of `U_1`.
    pub fictitious_field: [f64; 3],
}

/// Splits the light shift of the local polarization vector `ε_L` into
/// `U_J = (2/3)|ε_L|²` and `B_eff = -(i/3)(ε_L* × ε_L)`.
pub fn decompose_light_shift(polarization: &[Complex64; 3]) -> Result<IrreducibleShift> {
    let norm_sqr: f64 = polarization.iter().map(|c| c.norm_sqr()).sum();
    if norm_sqr.is_nan() || norm_sqr <= 1e-300 {
        return Err(invalid(
            "polarization",
            norm_sqr.sqrt(),
            "zero-length polarization vector",
        ));
    }
    let conj = polarization.map(|c| c.conj());
    let cross = cross(&conj, polarization);
    let scale = Complex64::new(0.0, -1.0 / 3.0);
    // ε* × ε is purely imaginary, so B_eff is real.
    let fictitious_field = cross.map(|c| (scale * c).re);
    Ok(IrreducibleShift {
        scalar_part: 2.0 / 3.0 * norm_sqr,
        fictitious_field,
    })
}

fn cross(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Spherical unit vector `e_q` for `q ∈ {-1, 0, +1}`:
/// `e_{±1} = ∓(e_x ± i e_y)/√2`, `e_0 = e_z`.
pub fn spherical_unit(q: i32) -> [Complex64; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    match q {
        1 => [Complex64::new(-s, 0.0), Complex64::new(0.0, -s), z],
        0 => [z, z, Complex64::new(1.0, 0.0)],
        -1 => [Complex64::new(s, 0.0), Complex64::new(0.0, -s), z],
        _ => panic!("spherical index must be -1, 0 or +1, got {q}"),
    }
}

/// Local field of the lin-θ-lin standing wave at phase `k_L z`, each beam of
/// unit amplitude: `e_x e^{ikz} + (cos θ e_x + sin θ e_y) e^{-ikz}`.
pub fn lin_theta_lin_field(theta: f64, kz: f64) -> [Complex64; 3] {
    let fwd = Complex64::from_polar(1.0, kz);
    let bwd = Complex64::from_polar(1.0, -kz);
    [
        fwd + bwd * theta.cos(),
        bwd * theta.sin(),
        Complex64::new(0.0, 0.0),
    ]
}

/// Component of `field` along `e_q` (that is, `e_q* · field`).
pub fn spherical_component(field: &[Complex64; 3], q: i32) -> Complex64 {
    spherical_unit(q)
        .iter()
        .zip(field)
        .map(|(e, f)| e.conj() * f)
        .sum()
}

/// Separation of the σ₊ and σ₋ standing-wave antinodes, in units of λ.
///
/// Uses the linear relation `δz = θλ/2π`, so rotating θ by `2πΔz/λ`
/// superimposes atoms initially `Δz` apart.
pub fn transport_displacement(theta: f64) -> f64 {
    theta / (2.0 * PI)
}

/// Polarization rotation that brings atoms `dz_over_lambda` apart together.
pub fn rotation_for_overlap(dz_over_lambda: f64) -> f64 {
    2.0 * PI * dz_over_lambda
}

/// A rotation lasting `duration` is adiabatic only if `2π/duration` stays
/// below `omega_osc` (both in the same time units).
pub fn transport_is_adiabatic(duration: f64, omega_osc: f64) -> bool {
    duration > 0.0 && 2.0 * PI / duration < omega_osc
}
