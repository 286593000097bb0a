//! The retarded dipole-dipole kernel: coherent part `f` and cooperative decay
//! part `g` for π-polarized dipoles, from the near field to the radiation zone.

use optlattice::kernel::{diagonal_components, kernel_at, RelativeCoordinate};

fn main() -> optlattice::Result<()> {
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "kr", "f_00(θ=0)", "g_00(θ=0)", "f_00(θ=π/2)", "g_00(θ=π/2)"
    );
    for kr in [0.01, 0.05, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0] {
        let (f_axis, g_axis) = diagonal_components(kr, 1.0, 0);
        let (f_side, g_side) = diagonal_components(kr, 0.0, 0);
        println!("{kr:>8} {f_axis:>12.4e} {g_axis:>12.5} {f_side:>12.4e} {g_side:>12.5}");
    }

    // near field: (kr)³ f_00 → 3P₂(cosθ)
    let magic = (1.0f64 / 3.0).sqrt().acos();
    let k = kernel_at(&RelativeCoordinate::polar(1e-3, magic)?);
    println!(
        "\nat the magic angle f_00 (kr)³ = {:.2e}",
        k.f_spherical(0, 0).re * 1e-9
    );

    let k = kernel_at(&RelativeCoordinate::polar(0.4, 0.7)?);
    println!("spherical components at kr = 0.4, θ = 0.7:");
    for q in [-1, 0, 1] {
        let row: Vec<String> = [-1, 0, 1]
            .iter()
            .map(|&qp| format!("{:>22}", format!("{:.4}", k.f_spherical(q, qp))))
            .collect();
        println!("  f[{q:>2}] {}", row.join(""));
    }
    Ok(())
}
