//! κη³ against well separation for two spherical packets, as CSV on stdout.
//!
//!     cargo run --example separation_curve > curve.csv

use optlattice::cli::format_float;
use optlattice::fom::kappa_separated_wells;
use optlattice::motional::collision_probability;

fn main() -> optlattice::Result<()> {
    let eta = 0.05;
    println!("dz_over_x0,kappa_eta3,point_dipole_eta3,collision_p_a1");
    for i in 0..=160 {
        let dz = i as f64 / 20.0;
        let k = kappa_separated_wells(eta, dz)?.kappa * eta.powi(3);
        let point = if dz > 0.0 {
            -0.75 / dz.powi(3)
        } else {
            f64::NEG_INFINITY
        };
        let p = collision_probability(dz, 1.0)?;
        println!(
            "{},{},{},{}",
            format_float(dz),
            format_float(k),
            format_float(point),
            format_float(p)
        );
    }
    Ok(())
}
