//! Closed-form iteration counts against the (π/4)·sqrt(N/M) estimate.
//!
//! ```bash
//! cargo run --example predict_scaling
//! ```

use std::f64::consts::FRAC_PI_4;

use steered_grover::{optimal_iterations, success_probability, Result};

fn main() -> Result<()> {
    println!(
        "{:>9} {:>5} {:>6} {:>9} {:>10}",
        "N", "M", "r*", "estimate", "P(r*)"
    );
    for (size, marked) in [
        (16u64, 1u64),
        (16, 4),
        (1024, 1),
        (1024, 16),
        (10_000, 1),
        (1 << 20, 1),
        (1 << 20, 64),
    ] {
        let ratio = marked as f64 / size as f64;
        let theta = ratio.sqrt().asin();
        let r = optimal_iterations(theta)?;
        println!(
            "{size:>9} {marked:>5} {r:>6} {:>9.2} {:>10.6}",
            FRAC_PI_4 / ratio.sqrt(),
            success_probability(r, theta)
        );
    }
    Ok(())
}
