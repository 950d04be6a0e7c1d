//! Searching from a steered trial state instead of the uniform superposition.
//! A trial biased towards the target needs fewer iterations.
//!
//! ```bash
//! cargo run --example steered_trial
//! ```

use steered_grover::steering::LinearOp;
use steered_grover::{GroverPlan, Result, StateVector, TargetSet, C64};

fn main() -> Result<()> {
    let n = 8;
    let target = 200;
    let omega = TargetSet::single(n, target)?;

    let uniform = GroverPlan::new(&StateVector::hadamard(n)?, &omega)?;
    println!("hadamard trial: r* = {}", uniform.r_star());

    for bias in [2.0, 5.0, 20.0] {
        let mut amps = vec![C64::new(1.0, 0.0); 1 << n];
        amps[target] = C64::new(bias, 0.0);
        let g = LinearOp::prepare(&StateVector::normalized(amps)?)?;
        let plan = GroverPlan::steered(&g, &omega)?;
        let run = plan.run(None, false)?;
        println!(
            "bias {bias:4}: theta = {:.4}, r* = {:2}, P = {:.6}",
            plan.theta(),
            plan.r_star(),
            run.marked_probability()
        );
    }

    // Steering the oracle: A_ω = Δ-layer maps |0..0> to |ω>.
    let a = LinearOp::selection("11001000")?;
    let plan = GroverPlan::new(&StateVector::hadamard(n)?, &TargetSet::SteeredState(a))?;
    let run = plan.run(None, false)?;
    println!(
        "selection-steered oracle: P(|11001000>) = {:.6}",
        run.final_state.probabilities().probability(0b1100_1000)
    );
    Ok(())
}
