//! Building a Grover circuit, checking it against the simulator, and
//! round-tripping it through OpenQASM 3.
//!
//! ```bash
//! cargo run --example circuit_qasm
//! ```

use steered_grover::circuit::{
    build_grover_circuit, emit_qasm, parse_qasm, GroverCircuitSpec, OracleSpec, Steering,
};
use steered_grover::{GroverPlan, Result, StateVector, TargetSet};

fn main() -> Result<()> {
    let n = 3;
    let spec = GroverCircuitSpec {
        n_qubits: n,
        trial: Steering::Hadamard,
        oracle: OracleSpec::Basis(vec!["101".into()]),
        iterations: 2,
    };
    let circuit = build_grover_circuit(&spec)?;
    let text = emit_qasm(&circuit)?;
    print!("{text}");

    let from_circuit = circuit.evaluate(&StateVector::zero(n)?)?;
    let plan = GroverPlan::new(&StateVector::hadamard(n)?, &TargetSet::single(n, 0b101)?)?;
    let from_sim = plan.run(Some(2), false)?.final_state;
    println!(
        "// fidelity with simulator: {:.12} (circuit phase negated: {})",
        from_circuit.fidelity(&from_sim)?,
        circuit.is_phase_negated()
    );

    let parsed = parse_qasm(&text)?;
    let again = parsed.evaluate(&StateVector::zero(n)?)?;
    println!(
        "// round trip max deviation: {:.2e}",
        again.max_abs_diff(&from_circuit)?
    );
    Ok(())
}
