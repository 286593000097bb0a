//! CPHASE from the separated-well figure of merit, the CNOT built from it,
//! and how a phase error on |11⟩ degrades the CNOT.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use optlattice::fom::optimize_separation;
use optlattice::gates::{compose_cnot, cphase_gate, gate_fidelity, ideal_cnot};

fn main() -> optlattice::Result<()> {
    for eta in [0.1, 0.07, 0.05, 0.03] {
        let best = optimize_separation(eta)?;
        let gate = cphase_gate(&best.fom, 0.01)?;
        println!(
            "η = {eta}: κ = {:8.1}, success {:.4}, τ = {:.0}/Γ",
            best.fom.kappa, gate.success_probability, gate.tau
        );
    }

    let best = optimize_separation(0.05)?;
    let cnot = compose_cnot(&cphase_gate(&best.fom, 0.01)?.unitary());
    println!(
        "\nCNOT from the ideal phases, error vs textbook: {:.1e}",
        (cnot - ideal_cnot()).norm()
    );

    println!("\nphase error δ on |11⟩ → CNOT fidelity");
    for delta in [0.0, 0.01, 0.05, 0.1, 0.3] {
        let one = Complex64::new(1.0, 0.0);
        let cp = Matrix4::from_diagonal(&Vector4::new(
            one,
            one,
            one,
            -Complex64::from_polar(1.0, delta),
        ));
        let f = gate_fidelity(&compose_cnot(&cp), &ideal_cnot());
        println!(
            "  δ = {delta:<5} F = {f:.6}  (1 - 3δ²/16 = {:.6})",
            1.0 - 3.0 * delta * delta / 16.0
        );
    }
    Ok(())
}
