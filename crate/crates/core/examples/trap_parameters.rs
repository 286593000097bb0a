//! Harmonic-well parameters of a blue-detuned cesium lattice, and the
//! polarization rotation that transports the two species together.

use std::f64::consts::PI;

use optlattice::units::{
    derive_trap, lin_theta_lin_field, rotation_for_overlap, spherical_component,
    transport_displacement, AtomSpecies, LatticeConfig,
};

fn main() -> optlattice::Result<()> {
    let cs = AtomSpecies::cesium();

    // 500 W/cm² at the standing-wave peak is 125 W/cm² per beam; I_sat = 1.1 mW/cm².
    let intensity = 125.0 / 1.1e-3;
    let detuning = 50e9 / cs.linewidth_hz;
    let trap = derive_trap(&cs, &LatticeConfig::new(intensity, detuning)?)?;

    println!("Cs, I_1/I_0 = {intensity:.3e}, detuning = {detuning:.0} Γ");
    println!("  well depth        {:.0} E_R", trap.well_depth);
    println!(
        "  ħω_osc            {:.1} E_R  ({:.0} kHz)",
        trap.omega_osc,
        trap.oscillation_frequency_hz() / 1e3
    );
    println!("  Lamb-Dicke η      {:.4}", trap.lamb_dicke);
    println!("  scattering Γ'     {:.1} s⁻¹", trap.scatter_rate_si());
    println!(
        "  ω_osc/Γ'          {:.0}",
        trap.oscillations_per_scatter() * 2.0 * PI
    );

    println!("\nlin-θ-lin transport");
    for theta in [0.0, PI / 4.0, PI / 2.0] {
        // σ₊ and σ₋ intensities at the origin
        let field = lin_theta_lin_field(theta, 0.0);
        let plus = spherical_component(&field, 1).norm_sqr();
        let minus = spherical_component(&field, -1).norm_sqr();
        println!(
            "  θ = {theta:.3}: antinodes {:.4} λ apart, |E₊|² = {plus:.3}, |E₋|² = {minus:.3}",
            transport_displacement(theta)
        );
    }
    println!(
        "  to close a λ/4 gap rotate by θ = {:.4}",
        rotation_for_overlap(0.25)
    );
    Ok(())
}
