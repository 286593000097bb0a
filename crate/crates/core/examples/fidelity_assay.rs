//! Ensemble gate-error assay: mean counts, seeded simulations, and the spread
//! of the error estimate across seeds.

use optlattice::assay::{estimate_error, expected_counts, simulate, AssayConfig};

fn main() -> optlattice::Result<()> {
    let config = AssayConfig::new(100_000, 0.08, 0.4, 5)?;

    let mean = expected_counts(&config)?;
    let run = simulate(&config.with_seed(1))?;
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12}",
        "cycle", "paired", "E[paired]", "total", "E[total]"
    );
    for (s, m) in run.cycles.iter().zip(&mean.cycles) {
        println!(
            "{:>5} {:>12} {:>12.1} {:>12} {:>12.1}",
            s.cycle, s.paired, m.paired, s.total, m.total
        );
    }

    let estimates: Vec<f64> = (0..200)
        .map(|seed| estimate_error(&simulate(&config.with_seed(seed)).unwrap()).unwrap())
        .collect();
    let n = estimates.len() as f64;
    let avg = estimates.iter().sum::<f64>() / n;
    let sd = (estimates.iter().map(|e| (e - avg).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    println!(
        "\nP = {}: estimate {avg:.5} ± {sd:.5} over {n} seeds",
        config.true_error
    );

    let flipped = config.with_flip_probability(0.1);
    println!(
        "with 10% of orphaned targets escaping the flush the estimate drops to {:.5}",
        estimate_error(&expected_counts(&flipped)?)?
    );
    Ok(())
}
