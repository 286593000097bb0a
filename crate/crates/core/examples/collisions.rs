//! Probability that two ground-state packets come within a distance `a` of
//! each other, against well separation.

use optlattice::motional::{collision_probability, shell_degeneracy, shell_states};

fn main() -> optlattice::Result<()> {
    let radii = [0.25, 0.5, 1.0, 2.0];
    print!("{:>8}", "Δz/x_0");
    for a in radii {
        print!(" {:>12}", format!("a = {a}"));
    }
    println!();
    for dz in [0.0, 0.5, 1.0, 2.0, 2.5, 3.0, 4.0, 6.0] {
        print!("{dz:>8}");
        for a in radii {
            print!(" {:>12.4e}", collision_probability(dz, a)?);
        }
        println!();
    }

    println!("\noscillator shells");
    for n in 0..=3 {
        let labels: Vec<String> = shell_states(n).iter().map(|s| s.to_string()).collect();
        println!(
            "  {n} quanta ({}): {}",
            shell_degeneracy(n),
            labels.join(" ")
        );
    }
    Ok(())
}
