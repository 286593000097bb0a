//! Stretched-state √SWAP: the interaction matrix, population flow through
//! the leakage manifold, and the gate at the recurrence time.

use std::f64::consts::PI;

use optlattice::gates::{build_swap_model, evolve, sqrt_swap_gate, InternalState, TwoAtomState};
use optlattice::OscillatorState;

fn main() -> optlattice::Result<()> {
    let chi = 1.0;
    let internal = InternalState::new(4, 4)?;
    let model = build_swap_model(chi, internal)?;

    println!("basis and V/ħχ:");
    for (i, label) in model.labels().iter().enumerate() {
        let row: Vec<String> = (0..model.dimension())
            .map(|j| format!("{:7.3}", model.v_matrix[(i, j)].re))
            .collect();
        println!("  {label:>12} {}", row.join(""));
    }

    println!("\n|011⟩⊗|011⟩ over one recurrence (t in units of 1/χ):");
    println!(
        "{:>6} {:>10} {:>12} {:>12}",
        "t", "P(11)", "P(022,000)", "P(000,022)"
    );
    for k in 0..=8 {
        let t = PI * k as f64 / 8.0;
        let u = evolve(&model, t / chi)?;
        let p = |i: usize| u[(i, 3)].norm_sqr();
        println!("{t:>6.3} {:>10.6} {:>12.6} {:>12.6}", p(3), p(4), p(5));
    }

    let gate = sqrt_swap_gate(chi, internal)?;
    println!("\nlogical block at τ = π/χ:");
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| format!("{:>18}", format!("{:.3}", gate.logical[(i, j)])))
            .collect();
        println!("  {}", row.join(""));
    }
    println!(
        "leakage {:.1e}, unitarity error {:.1e}",
        gate.leakage, gate.unitarity_error
    );
    println!(
        "⟨11|U|11⟩ = {:.6} (without the leakage couplings it would be {:.6})",
        gate.phase_11, gate.phase_11_without_leakage
    );

    let lone = TwoAtomState::with_motion(
        internal,
        OscillatorState::new(0, 1, 1)?,
        OscillatorState::ground(),
    );
    println!("a single stretched quantum {lone} stays in the logical basis");
    Ok(())
}
