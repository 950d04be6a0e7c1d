//! A generalized oracle built from a unitary Λ and a set of rows Ω, marking
//! the subspace spanned by the corresponding rows of Λ.
//!
//! ```bash
//! cargo run --example kernel_oracle
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steered_grover::oracles::{kernel_oracle, phase_oracle_single};
use steered_grover::random::random_unitary;
use steered_grover::{GroverPlan, KernelSet, Result, StateVector, TargetSet};

fn main() -> Result<()> {
    let n = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // With Λ = 1 the kernel oracle is the ordinary phase oracle.
    let eye = steered_grover::dense::Matrix::identity(1 << n, 1 << n);
    let k = kernel_oracle(&KernelSet::new(eye, &[6])?)?.to_dense()?;
    let p = phase_oracle_single(6, n)?.to_dense()?;
    println!("identity kernel equals phase oracle: {}", k == p);

    let lambda = random_unitary(n, &mut rng)?;
    let set = KernelSet::new(lambda.matrix().clone(), &[0, 5])?;
    let trace: f64 = set.kernel_matrix().trace().re;
    println!("random kernel, rank {trace:.3}");

    let plan = GroverPlan::new(&StateVector::hadamard(n)?, &TargetSet::KernelSet(set))?;
    let run = plan.run(None, false)?;
    println!(
        "sin^2(theta) = {:.4}, region {:?}, r* = {}, marked weight after search {:.6}",
        plan.geometry().sin_theta().powi(2),
        plan.region(),
        plan.r_star(),
        run.marked_probability()
    );
    Ok(())
}
