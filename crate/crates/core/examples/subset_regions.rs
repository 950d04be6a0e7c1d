//! Marked subsets in the three regions of M/N, including the mixed region
//! where each iteration is followed by the parallel reflection.
//!
//! ```bash
//! cargo run --example subset_regions
//! ```

use steered_grover::{GroverPlan, Region, Result, StateVector, TargetSet};

fn main() -> Result<()> {
    let n = 5;
    let big_n = 1usize << n;
    for m in [1, 3, 8, 12, 16, 20, 28] {
        let marked: Vec<usize> = (0..m).map(|k| (7 * k + 3) % big_n).collect();
        let plan = GroverPlan::new(&StateVector::hadamard(n)?, &TargetSet::subset(n, &marked)?)?;
        let run = plan.run(Some(plan.r_star().max(3)), true)?;
        let worst = run
            .trace
            .iter()
            .map(|t| t.perp_coordinate.min(t.omega_coordinate))
            .fold(f64::INFINITY, f64::min);
        print!(
            "M = {m:2}  region {:?}  r* = {}  P(r*) = {:.4}",
            plan.region(),
            plan.r_star(),
            run.trace[plan.r_star()].measured,
        );
        if plan.region() == Region::Mixed {
            print!(
                "  smallest plane coordinate over {} iterations {worst:+.3}",
                run.iterations
            );
        }
        println!();
    }
    Ok(())
}
