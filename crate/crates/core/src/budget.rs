//! Spontaneous-scattering error budget of a two-qubit gate: photons
//! scattered from the catalysis field during the interaction and from the
//! lattice during transport, and the lattice detuning that balances them.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};
use crate::optimize::scan_then_refine_min;
use crate::units::AtomSpecies;

/// Lattice detuning search window, in units of Γ.
pub const DETUNING_DOMAIN: (f64, f64) = (10.0, 1e8);

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetInput {
    /// Protocol prefactor in `κ = c_κ η⁻³`.
    pub c_kappa: f64,
    /// Gate duration in trap periods.
    pub n_cycles: f64,
    pub species: AtomSpecies,
    /// Single-beam intensity over saturation intensity.
    pub intensity_ratio: f64,
}

impl BudgetInput {
    pub fn new(
        c_kappa: f64,
        n_cycles: f64,
        species: AtomSpecies,
        intensity_ratio: f64,
    ) -> Result<Self> {
        let input = Self {
            c_kappa,
            n_cycles,
            species,
            intensity_ratio,
        };
        input.validate()?;
        Ok(input)
    }

    /// Cesium, separated wells (`c_κ = 0.015`), two trap periods, `I_1 = 10⁵ I_0`.
    pub fn cesium_example() -> Self {
        Self {
            c_kappa: 0.015,
            n_cycles: 2.0,
            species: AtomSpecies::cesium(),
            intensity_ratio: 1e5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("c_kappa", self.c_kappa)?;
        require_positive("intensity_ratio", self.intensity_ratio)?;
        require_positive("gamma_over_recoil", self.species.gamma_over_recoil)?;
        if !(self.n_cycles.is_finite() && self.n_cycles >= 1.0) {
            return Err(crate::error::invalid(
                "n_cycles",
                self.n_cycles,
                "must be >= 1",
            ));
        }
        Ok(())
    }

    /// Catalysis rate coefficient `A` in `π/|κ| = A Δ^{3/4}`.
    fn catalysis_coefficient(&self) -> f64 {
        PI / (8.0 * self.c_kappa)
            * (12.0 / self.species.gamma_over_recoil).powf(0.75)
            * self.intensity_ratio.powf(-0.75)
    }

    /// Lattice coefficient `B` in `Γ_L T = B Δ^{-3/2}`.
    fn lattice_coefficient(&self) -> f64 {
        3f64.sqrt() * PI / 8.0
            * self.species.hyperfine_factor()
            * self.species.gamma_over_recoil.sqrt()
            * self.n_cycles
            * self.intensity_ratio.sqrt()
    }
}

/// Expected catalysis scatter `π/|κ|` at lattice detuning `detuning` (units Γ).
pub fn catalysis_exponent(input: &BudgetInput, detuning: f64) -> f64 {
    input.catalysis_coefficient() * detuning.powf(0.75)
}

/// Expected lattice scatter `Γ_L T`.
pub fn lattice_exponent(input: &BudgetInput, detuning: f64) -> f64 {
    input.lattice_coefficient() * detuning.powf(-1.5)
}

/// Small-error catalysis scattering probability, clamped to `[0, 1]`.
pub fn p_catalysis(input: &BudgetInput, detuning: f64) -> Result<f64> {
    require_positive("detuning", detuning)?;
    Ok(catalysis_exponent(input, detuning).clamp(0.0, 1.0))
}

/// Small-error lattice scattering probability during transport, clamped to `[0, 1]`.
pub fn p_lattice(input: &BudgetInput, detuning: f64) -> Result<f64> {
    require_positive("detuning", detuning)?;
    Ok(lattice_exponent(input, detuning).clamp(0.0, 1.0))
}

/// `1 - exp(-π/|κ|) exp(-Γ_L T)`.
pub fn p_total(input: &BudgetInput, detuning: f64) -> Result<f64> {
    require_positive("detuning", detuning)?;
    Ok(-(-catalysis_exponent(input, detuning) - lattice_exponent(input, detuning)).exp_m1())
}

/// First-order sum `π/|κ| + Γ_L T`, not clamped.
pub fn p_rate_sum(input: &BudgetInput, detuning: f64) -> Result<f64> {
    require_positive("detuning", detuning)?;
    Ok(catalysis_exponent(input, detuning) + lattice_exponent(input, detuning))
}

/// Lattice scattering rate at half the antinode intensity, units Γ.
pub fn gamma_lattice(input: &BudgetInput, detuning: f64) -> f64 {
    input.species.hyperfine_factor() / 8.0 * input.intensity_ratio / (detuning * detuning)
}

/// Closed-form minimum error probability of the rate sum, as printed.
pub fn closed_form_min_error(input: &BudgetInput) -> f64 {
    PI * (input.n_cycles / (input.c_kappa * input.c_kappa) * input.species.hyperfine_factor()
        / (input.species.gamma_over_recoil * input.intensity_ratio))
        .cbrt()
}

/// Closed-form optimal detuning, units Γ.
pub fn closed_form_detuning(input: &BudgetInput) -> f64 {
    input.c_kappa.powf(4.0 / 9.0) / 12f64.powf(1.0 / 9.0)
        * input.species.hyperfine_factor().powf(4.0 / 9.0)
        * input.species.gamma_over_recoil.powf(5.0 / 9.0)
        * input.n_cycles.powf(4.0 / 9.0)
        * input.intensity_ratio.powf(5.0 / 9.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetResult {
    /// Numerically optimal lattice detuning, units Γ.
    pub optimal_detuning: f64,
    pub p_catalysis: f64,
    pub p_lattice: f64,
    /// Exponential form at the optimum.
    pub p_total: f64,
    /// First-order sum at the optimum.
    pub p_rate_sum: f64,
    /// `Γ_L/Γ` at the optimum.
    pub gamma_lattice: f64,
    pub closed_form_detuning: f64,
    pub closed_form_p: f64,
}

/// Minimizes [`p_total`] over `ln Δ` on [`DETUNING_DOMAIN`] and reports the
/// closed forms alongside.
pub fn optimize_detuning(input: &BudgetInput) -> Result<BudgetResult> {
    input.validate()?;
    let (lo, hi) = (DETUNING_DOMAIN.0.ln(), DETUNING_DOMAIN.1.ln());
    // The sum of exponents is monotone with p_total and better conditioned.
    let best = scan_then_refine_min(
        |u| p_rate_sum(input, u.exp()).unwrap_or(f64::INFINITY),
        lo,
        hi,
        400,
        1e-12,
    )
    .map_err(|e| match e {
        Error::OptimumAtBoundary { at, .. } => Error::OptimumAtBoundary {
            at: at.exp(),
            lo: DETUNING_DOMAIN.0,
            hi: DETUNING_DOMAIN.1,
        },
        other => other,
    })?;
    let d = best.x.exp();
    Ok(BudgetResult {
        optimal_detuning: d,
        p_catalysis: p_catalysis(input, d)?,
        p_lattice: p_lattice(input, d)?,
        p_total: p_total(input, d)?,
        p_rate_sum: p_rate_sum(input, d)?,
        gamma_lattice: gamma_lattice(input, d),
        closed_form_detuning: closed_form_detuning(input),
        closed_form_p: closed_form_min_error(input),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs() -> BudgetInput {
        BudgetInput::cesium_example()
    }

    #[test]
    fn cesium_rates_at_reference_detuning() {
        assert!((p_catalysis(&cs(), 5.8e3).unwrap() - 0.0565).abs() < 1e-3);
        assert!((p_lattice(&cs(), 5.8e3).unwrap() - 0.0283).abs() < 1e-3);
    }

    #[test]
    fn power_laws() {
        let a = p_catalysis(&cs(), 100.0).unwrap();
        let mut brighter = cs();
        brighter.intensity_ratio *= 2.0;
        let b = p_catalysis(&brighter, 100.0).unwrap();
        assert!((b / a - 2f64.powf(-0.75)).abs() < 1e-14);
        let mut longer = cs();
        longer.n_cycles = 4.0;
        assert!(
            (p_lattice(&longer, 1e4).unwrap() / p_lattice(&cs(), 1e4).unwrap() - 2.0).abs() < 1e-14
        );
        assert!(p_catalysis(&cs(), 1e-12).unwrap() < 1e-9);
    }

    #[test]
    fn total_dominates_parts() {
        for d in [30.0, 1e3, 5.8e3, 1e5, 1e7] {
            let t = p_total(&cs(), d).unwrap();
            // against the exponential parts 1 - e^{-x}; the small-error parts exceed them
            let c = -(-catalysis_exponent(&cs(), d)).exp_m1();
            let l = -(-lattice_exponent(&cs(), d)).exp_m1();
            assert!(t >= c.max(l));
            assert!(t <= 1.0);
        }
    }

    #[test]
    fn cesium_optimum() {
        let r = optimize_detuning(&cs()).unwrap();
        assert!((r.optimal_detuning / r.closed_form_detuning - 1.0).abs() < 1e-6);
        assert!((r.p_catalysis / r.p_lattice - 2.0).abs() < 1e-6);
        assert!((r.p_total - 0.085).abs() < 0.005);
        assert!((r.p_rate_sum / r.closed_form_p - 1.0).abs() < 0.02);
    }

    #[test]
    fn boundary_optimum_is_reported() {
        let mut weird = cs();
        weird.c_kappa = 1e12;
        assert!(matches!(
            optimize_detuning(&weird),
            Err(Error::OptimumAtBoundary { .. })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BudgetInput::new(0.0, 2.0, AtomSpecies::cesium(), 1e5).is_err());
        assert!(BudgetInput::new(0.015, 0.5, AtomSpecies::cesium(), 1e5).is_err());
        assert!(p_total(&cs(), -1.0).is_err());
    }
}
