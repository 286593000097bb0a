//! Figure of merit κ for the three gate geometries, their optima, and a
//! check of the closed forms against direct quadrature with the full kernel.

use optlattice::fom::{
    kappa_ellipsoid, kappa_quadrature, kappa_separated_wells, kappa_swap, optimize_aspect_ratio,
    optimize_separation, QuadratureOptions,
};
use optlattice::PacketPair;

fn main() -> optlattice::Result<()> {
    let eta = 0.05;

    let ell = kappa_ellipsoid(0.05, 0.1)?;
    println!("ellipsoid  η_⊥ = 0.05, η_∥ = 0.1      κ = {:.2}", ell.kappa);
    let best = optimize_aspect_ratio(0.05)?;
    println!(
        "  best η_∥/η_⊥ = {:.4}: κ = {:.2}, κη_⊥³ = {:.4e}",
        best.argument,
        best.fom.kappa,
        best.fom.c_kappa.unwrap()
    );

    let sep = optimize_separation(eta)?;
    println!(
        "separated  η = {eta}, best Δz/x_0 = {:.4}: κ = {:.2}, κη³ = {:.4e}",
        sep.argument,
        sep.fom.kappa,
        sep.fom.c_kappa.unwrap()
    );

    let swap = kappa_swap(eta)?;
    println!(
        "√SWAP      η = {eta}                    κ = {:.2}, κη³ = {:.4e}",
        swap.kappa,
        swap.c_kappa.unwrap()
    );

    println!(
        "\nquadrature (full kernel and near field) vs closed form, separated wells, η = {eta}"
    );
    for dz in [1.0, 2.5, 5.0] {
        let pair = PacketPair::separated(eta, dz)?;
        let full = kappa_quadrature(&pair, 0, &QuadratureOptions::default())?;
        let near = kappa_quadrature(&pair, 0, &QuadratureOptions::near_field())?;
        let closed = kappa_separated_wells(eta, dz)?.kappa;
        println!(
            "  Δz/x_0 = {dz}: closed {closed:9.3}  near-field {:9.3}  full {:9.3}  (<g_00> = {:.4})",
            near.kappa,
            full.kappa,
            full.mean_g.unwrap()
        );
    }

    // σ± catalysis on an elongated well
    let pair = PacketPair::ellipsoid(0.05, 0.1)?;
    for q in [0, 1] {
        let r = kappa_quadrature(&pair, q, &QuadratureOptions::default())?;
        println!("ellipsoid, q = {q:+}: κ = {:.2}", r.kappa);
    }
    Ok(())
}
