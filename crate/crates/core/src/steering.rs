//! Structured unitaries: tensor layers, gate lists, dense matrices and
//! state-preparation maps, plus composition and embedding on low qubits.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::{check_dense_capacity, materialize, DenseUnitary, Matrix};
use crate::error::{Error, Result};
use crate::gates::{selection_operators, Gate, SingleQubit, TensorOp};
use crate::qstate::{dot, StateVector};
use crate::random::complex_gaussian;
use crate::C64;

/// Unitary `U` with `U|0^n> = |v>`, applied in `O(N)` as a phase times a
/// Householder reflection that swaps `|0^n>` with the phase-aligned `|v>`.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePrep {
    target: StateVector,
    /// Unnormalized Householder vector; empty when `|v>` is `|0^n>` up to phase.
    householder: Vec<C64>,
    householder_norm_sqr: f64,
    phase: C64,
}

impl StatePrep {
    pub fn new(target: &StateVector) -> Result<Self> {
        target.check_normalized()?;
        let v = target.amplitudes();
        let v0 = v[0];
        let phase = if v0.norm() > 0.0 {
            v0 / v0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        // u = e0 - conj(phase) v, so that (1 - 2uu†/|u|²) e0 = conj(phase) v.
        let mut u: Vec<C64> = v.iter().map(|a| -(phase.conj() * a)).collect();
        u[0] += C64::new(1.0, 0.0);
        let norm_sqr: f64 = u.iter().map(|a| a.norm_sqr()).sum();
        let householder = if norm_sqr < 1e-28 { Vec::new() } else { u };
        Ok(Self {
            target: target.clone(),
            householder,
            householder_norm_sqr: norm_sqr,
            phase,
        })
    }

    pub fn target(&self) -> &StateVector {
        &self.target
    }

    pub fn n_qubits(&self) -> usize {
        self.target.n_qubits()
    }

    fn reflect(&self, amps: &mut [C64]) {
        if self.householder.is_empty() {
            return;
        }
        let coeff = dot(&self.householder, amps) * (2.0 / self.householder_norm_sqr);
        for (a, u) in amps.iter_mut().zip(&self.householder) {
            *a -= coeff * u;
        }
    }

    fn apply_slice(&self, amps: &mut [C64]) {
        self.reflect(amps);
        amps.iter_mut().for_each(|a| *a *= self.phase);
    }

    fn apply_adjoint_slice(&self, amps: &mut [C64]) {
        self.reflect(amps);
        let p = self.phase.conj();
        amps.iter_mut().for_each(|a| *a *= p);
    }
}

/// How the columns other than the first are chosen when a state is
/// turned into a unitary. Nothing downstream may depend on this choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Phase-aligned Householder reflection, `O(N)` to apply.
    #[default]
    Householder,
    /// Dense matrix: the target followed by Gram-Schmidt of seeded random vectors.
    RandomGramSchmidt { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinearOp {
    Identity {
        n_qubits: usize,
    },
    Tensor(TensorOp),
    Gates {
        n_qubits: usize,
        gates: Vec<Gate>,
    },
    Dense(DenseUnitary),
    StatePrep(StatePrep),
    /// `1_r ⊗ op`, with `op` on the low-order qubits.
    LowQubits {
        n_qubits: usize,
        op: Box<LinearOp>,
    },
    /// Applied first to last.
    Product(Vec<LinearOp>),
    Adjoint(Box<LinearOp>),
}

impl LinearOp {
    pub fn identity(n_qubits: usize) -> Self {
        LinearOp::Identity { n_qubits }
    }

    pub fn hadamard(n_qubits: usize) -> Self {
        LinearOp::Tensor(TensorOp::uniform(n_qubits, SingleQubit::H))
    }

    /// The X/I selection layer `A_ω` preparing `|ω>` from `|0^n>`.
    pub fn selection(omega: &str) -> Result<Self> {
        Ok(LinearOp::Tensor(selection_operators(omega)?))
    }

    pub fn dense(matrix: Matrix) -> Result<Self> {
        Ok(LinearOp::Dense(DenseUnitary::new(matrix)?))
    }

    pub fn gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n_qubits)?;
        }
        Ok(LinearOp::Gates { n_qubits, gates })
    }

    /// A unitary whose first column is `state`, completed by Householder.
    pub fn prepare(state: &StateVector) -> Result<Self> {
        Ok(LinearOp::StatePrep(StatePrep::new(state)?))
    }

    pub fn prepare_with(state: &StateVector, completion: Completion) -> Result<Self> {
        match completion {
            Completion::Householder => Self::prepare(state),
            Completion::RandomGramSchmidt { seed } => {
                state.check_normalized()?;
                check_dense_capacity(state.n_qubits(), "dense state completion")?;
                Ok(LinearOp::Dense(gram_schmidt_completion(state, seed)))
            }
        }
    }

    pub fn on_low_qubits(n_qubits: usize, op: LinearOp) -> Result<Self> {
        if op.n_qubits() > n_qubits {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                found: op.n_qubits(),
            });
        }
        Ok(LinearOp::LowQubits {
            n_qubits,
            op: Box::new(op),
        })
    }

    pub fn product(ops: Vec<LinearOp>) -> Result<Self> {
        let n = ops
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty product".into()))?
            .n_qubits();
        for op in &ops {
            if op.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: op.n_qubits(),
                });
            }
        }
        Ok(LinearOp::Product(ops))
    }

    pub fn adjoint(&self) -> Self {
        match self {
            LinearOp::Adjoint(inner) => (**inner).clone(),
            LinearOp::Identity { .. } | LinearOp::Tensor(_) => self.clone(),
            LinearOp::Dense(u) => LinearOp::Dense(u.adjoint()),
            other => LinearOp::Adjoint(Box::new(other.clone())),
        }
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            LinearOp::Identity { n_qubits } => *n_qubits,
            LinearOp::Tensor(t) => t.n_qubits(),
            LinearOp::Gates { n_qubits, .. } => *n_qubits,
            LinearOp::Dense(u) => u.n_qubits(),
            LinearOp::StatePrep(p) => p.n_qubits(),
            LinearOp::LowQubits { n_qubits, .. } => *n_qubits,
            LinearOp::Product(ops) => ops[0].n_qubits(),
            LinearOp::Adjoint(inner) => inner.n_qubits(),
        }
    }

    fn check(&self, s: &StateVector) -> Result<()> {
        if s.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: s.n_qubits(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, s: &mut StateVector) -> Result<()> {
        self.check(s)?;
        self.apply_slice(s.amplitudes_mut());
        Ok(())
    }

    pub fn apply_adjoint(&self, s: &mut StateVector) -> Result<()> {
        self.check(s)?;
        self.apply_adjoint_slice(s.amplitudes_mut());
        Ok(())
    }

    /// `op|0^n>`.
    pub fn prepared_state(&self) -> Result<StateVector> {
        let mut s = StateVector::zero(self.n_qubits())?;
        self.apply(&mut s)?;
        Ok(s)
    }

    /// Dense matrix built column by column from the structured application.
    pub fn to_dense(&self) -> Result<Matrix> {
        materialize(self.n_qubits(), "dense materialization", |amps| {
            self.apply_slice(amps)
        })
    }

    pub(crate) fn apply_slice(&self, amps: &mut [C64]) {
        match self {
            LinearOp::Identity { .. } => {}
            LinearOp::Tensor(t) => t.apply_slice(amps),
            LinearOp::Gates { gates, .. } => gates.iter().for_each(|g| g.apply_slice(amps)),
            LinearOp::Dense(u) => {
                let out = crate::dense::matvec(u.matrix(), amps);
                amps.copy_from_slice(&out);
            }
            LinearOp::StatePrep(p) => p.apply_slice(amps),
            LinearOp::LowQubits { op, .. } => {
                for block in amps.chunks_exact_mut(1 << op.n_qubits()) {
                    op.apply_slice(block);
                }
            }
            LinearOp::Product(ops) => ops.iter().for_each(|op| op.apply_slice(amps)),
            LinearOp::Adjoint(inner) => inner.apply_adjoint_slice(amps),
        }
    }

    pub(crate) fn apply_adjoint_slice(&self, amps: &mut [C64]) {
        match self {
            LinearOp::Identity { .. } => {}
            LinearOp::Tensor(t) => t.apply_slice(amps),
            LinearOp::Gates { gates, .. } => gates
                .iter()
                .rev()
                .for_each(|g| g.adjoint().apply_slice(amps)),
            LinearOp::Dense(u) => {
                let out = crate::dense::matvec(&u.matrix().adjoint(), amps);
                amps.copy_from_slice(&out);
            }
            LinearOp::StatePrep(p) => p.apply_adjoint_slice(amps),
            LinearOp::LowQubits { op, .. } => {
                for block in amps.chunks_exact_mut(1 << op.n_qubits()) {
                    op.apply_adjoint_slice(block);
                }
            }
            LinearOp::Product(ops) => ops.iter().rev().for_each(|op| op.apply_adjoint_slice(amps)),
            LinearOp::Adjoint(inner) => inner.apply_slice(amps),
        }
    }
}

fn gram_schmidt_completion(state: &StateVector, seed: u64) -> DenseUnitary {
    let dim = state.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<C64>> = vec![state.amplitudes().to_vec()];
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| complex_gaussian(&mut rng)).collect();
        // Two passes keep the columns orthogonal to working precision.
        for _ in 0..2 {
            for c in &cols {
                let p = dot(c, &v);
                v.iter_mut().zip(c).for_each(|(x, a)| *x -= p * a);
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    DenseUnitary::from_trusted(Matrix::from_fn(dim, dim, |i, j| cols[j][i]))
}
