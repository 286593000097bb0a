//! Scattering error budget: catalysis vs lattice photons as the lattice
//! detuning varies, the optimum, and how it moves with intensity and protocol.

use optlattice::budget::{optimize_detuning, p_catalysis, p_lattice, p_total, BudgetInput};
use optlattice::fom::swap_c_kappa;

fn main() -> optlattice::Result<()> {
    let cs = BudgetInput::cesium_example();

    println!("{:>10} {:>10} {:>10} {:>10}", "Δ/Γ", "P_c", "P_L", "P");
    for d in [1e3, 2e3, 4e3, 5.8e3, 8e3, 1.6e4, 3.2e4] {
        println!(
            "{d:>10.0} {:>10.4} {:>10.4} {:>10.4}",
            p_catalysis(&cs, d)?,
            p_lattice(&cs, d)?,
            p_total(&cs, d)?
        );
    }

    let r = optimize_detuning(&cs)?;
    println!(
        "\noptimum Δ/Γ = {:.0} (closed form {:.0}), P = {:.4}, first-order sum {:.4} (closed form {:.4})",
        r.optimal_detuning, r.closed_form_detuning, r.p_total, r.p_rate_sum, r.closed_form_p
    );

    println!("\nintensity scan");
    for i in [1e5, 3e5, 1e6, 3e6, 1e7] {
        let mut input = cs.clone();
        input.intensity_ratio = i;
        let r = optimize_detuning(&input)?;
        println!(
            "  I_1/I_0 = {i:.0e}: P = {:.4} at Δ/Γ = {:.3e}",
            r.p_total, r.optimal_detuning
        );
    }

    let mut swap = cs.clone();
    swap.c_kappa = swap_c_kappa();
    let r = optimize_detuning(&swap)?;
    println!(
        "\n√SWAP protocol (c_κ = {:.5}): P = {:.4}",
        swap.c_kappa, r.p_total
    );
    Ok(())
}
