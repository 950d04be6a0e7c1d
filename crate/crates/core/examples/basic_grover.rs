//! Single-target search over 10 qubits with a Hadamard trial state.
//!
//! ```bash
//! cargo run --example basic_grover
//! ```

use steered_grover::{GroverPlan, Result, StateVector, TargetSet};

fn main() -> Result<()> {
    let n = 10;
    let target = 0b10_1100_0111;
    let plan = GroverPlan::new(&StateVector::hadamard(n)?, &TargetSet::single(n, target)?)?;
    println!("theta = {:.6} rad, r* = {}", plan.theta(), plan.r_star());

    let run = plan.run(None, true)?;
    for t in run.trace.iter().step_by(5) {
        println!(
            "r = {:2}  predicted {:.6}  measured {:.6}",
            t.iteration, t.predicted, t.measured
        );
    }
    let hist = run.final_state.probabilities().sample(7, 2000)?;
    println!(
        "after {} iterations P(target) = {:.6}; {} of 2000 shots hit {target}",
        run.iterations,
        run.marked_probability(),
        hist.count(target)
    );
    Ok(())
}
