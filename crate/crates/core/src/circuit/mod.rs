//! Flat gate-level circuits for the oracle, diffuser, and Grover
//! constructions, with a simulator-side evaluator and an OpenQASM 3
//! emitter/parser pair (see [`qasm`]).
//!
//! Circuits follow the gate-level sign convention: a diffuser block realizes
//! `-(2|g><g| - 1)`, which [`CircuitIR::is_phase_negated`] records.

pub mod qasm;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dense::{materialize, Matrix};
use crate::error::{Error, Result};
use crate::gates::{flip_all_ones, SingleQubit};
use crate::patternmatch::{
    build_database_operator, build_query_operator, QuantumDatabase, Query, Variant,
};
use crate::qstate::{check_capacity, StateVector};
use crate::steering::LinearOp;
use crate::C64;

pub use qasm::{emit_qasm, evaluate_qasm, parse_qasm};

#[derive(Debug, Clone)]
pub enum CircuitOp {
    H(usize),
    X(usize),
    Z(usize),
    Cz {
        control: usize,
        target: usize,
    },
    /// Multi-controlled Z; the last qubit is the nominal target.
    Mcz(Vec<usize>),
    /// Opaque block acting on qubits `0..k`. Emission uses `decomposition`
    /// and fails without one.
    Unitary {
        label: String,
        qubits: Vec<usize>,
        op: Arc<LinearOp>,
        decomposition: Option<Vec<CircuitOp>>,
    },
}

impl PartialEq for CircuitOp {
    fn eq(&self, other: &Self) -> bool {
        use CircuitOp::*;
        match (self, other) {
            (H(a), H(b)) | (X(a), X(b)) | (Z(a), Z(b)) => a == b,
            (
                Cz {
                    control: c1,
                    target: t1,
                },
                Cz {
                    control: c2,
                    target: t2,
                },
            ) => c1 == c2 && t1 == t2,
            (Mcz(a), Mcz(b)) => a == b,
            (
                Unitary {
                    label: l1,
                    qubits: q1,
                    op: o1,
                    decomposition: d1,
                },
                Unitary {
                    label: l2,
                    qubits: q2,
                    op: o2,
                    decomposition: d2,
                },
            ) => l1 == l2 && q1 == q2 && Arc::ptr_eq(o1, o2) && d1 == d2,
            _ => false,
        }
    }
}

impl CircuitOp {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            CircuitOp::H(q) | CircuitOp::X(q) | CircuitOp::Z(q) => vec![*q],
            CircuitOp::Cz { control, target } => vec![*control, *target],
            CircuitOp::Mcz(qs) => qs.clone(),
            CircuitOp::Unitary { qubits, .. } => qubits.clone(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            CircuitOp::H(_) => "h",
            CircuitOp::X(_) => "x",
            CircuitOp::Z(_) => "z",
            CircuitOp::Cz { .. } => "cz",
            CircuitOp::Mcz(_) => "mcz",
            CircuitOp::Unitary { label, .. } => label,
        }
    }

    pub fn adjoint(&self) -> Self {
        match self {
            CircuitOp::Unitary {
                label,
                qubits,
                op,
                decomposition,
            } => CircuitOp::Unitary {
                label: match label.strip_suffix("_dg") {
                    Some(base) => base.to_string(),
                    None => format!("{label}_dg"),
                },
                qubits: qubits.clone(),
                op: Arc::new(op.adjoint()),
                decomposition: decomposition
                    .as_ref()
                    .map(|d| d.iter().rev().map(CircuitOp::adjoint).collect()),
            },
            other => other.clone(),
        }
    }

    fn remap(&self, map: &[usize]) -> Result<Self> {
        Ok(match self {
            CircuitOp::H(q) => CircuitOp::H(map[*q]),
            CircuitOp::X(q) => CircuitOp::X(map[*q]),
            CircuitOp::Z(q) => CircuitOp::Z(map[*q]),
            CircuitOp::Cz { control, target } => CircuitOp::Cz {
                control: map[*control],
                target: map[*target],
            },
            CircuitOp::Mcz(qs) => CircuitOp::Mcz(qs.iter().map(|&q| map[q]).collect()),
            CircuitOp::Unitary { label, qubits, .. } => {
                let mapped: Vec<usize> = qubits.iter().map(|&q| map[q]).collect();
                if mapped.iter().enumerate().any(|(i, &q)| i != q) {
                    return Err(Error::InvalidArgument(format!(
                        "opaque block `{label}` must act on a low-order qubit range"
                    )));
                }
                self.clone()
            }
        })
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
            if qs[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        match self {
            CircuitOp::Mcz(qs) if qs.len() < 2 => Err(Error::InvalidArgument(
                "mcz needs at least two qubits".into(),
            )),
            CircuitOp::Unitary {
                label,
                qubits,
                op,
                decomposition,
            } => {
                if qubits.iter().enumerate().any(|(i, &q)| i != q) {
                    return Err(Error::InvalidArgument(format!(
                        "opaque block `{label}` must act on a low-order qubit range"
                    )));
                }
                if op.n_qubits() != qubits.len() {
                    return Err(Error::DimensionMismatch {
                        expected: qubits.len(),
                        found: op.n_qubits(),
                    });
                }
                for d in decomposition.iter().flatten() {
                    d.validate(qubits.len())?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn apply_slice(&self, amps: &mut [C64]) {
        match self {
            CircuitOp::H(q) => SingleQubit::H.apply_slice(*q, amps),
            CircuitOp::X(q) => SingleQubit::X.apply_slice(*q, amps),
            CircuitOp::Z(q) => SingleQubit::Z.apply_slice(*q, amps),
            CircuitOp::Cz { control, target } => {
                flip_all_ones((1 << control) | (1 << target), amps)
            }
            CircuitOp::Mcz(qs) => flip_all_ones(qs.iter().map(|&q| 1usize << q).sum(), amps),
            CircuitOp::Unitary { qubits, op, .. } => {
                for chunk in amps.chunks_exact_mut(1 << qubits.len()) {
                    op.apply_slice(chunk);
                }
            }
        }
    }
}

/// An ordered, flat list of gates on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitIR {
    n_qubits: usize,
    ops: Vec<CircuitOp>,
    phase_negated: bool,
}

impl CircuitIR {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument(
                "circuit needs at least one qubit".into(),
            ));
        }
        check_capacity(n_qubits, "circuit")?;
        Ok(Self {
            n_qubits,
            ops: Vec::new(),
            phase_negated: false,
        })
    }

    pub fn from_ops(n_qubits: usize, ops: Vec<CircuitOp>) -> Result<Self> {
        let mut c = Self::new(n_qubits)?;
        for op in ops {
            c.push(op)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, op: CircuitOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    /// Appends `other`, which runs after the current ops.
    pub fn append(&mut self, other: &CircuitIR) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        self.ops.extend(other.ops.iter().cloned());
        self.phase_negated ^= other.phase_negated;
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// True when the circuit equals the text-convention operator times -1.
    pub fn is_phase_negated(&self) -> bool {
        self.phase_negated
    }

    pub fn set_phase_negated(&mut self, negated: bool) {
        self.phase_negated = negated;
    }

    /// Gate counts keyed by gate name.
    pub fn gate_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for op in &self.ops {
            *counts.entry(op.name().to_string()).or_insert(0) += 1;
        }
        counts
    }

    pub fn inverse(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            ops: self.ops.iter().rev().map(CircuitOp::adjoint).collect(),
            phase_negated: self.phase_negated,
        }
    }

    pub fn apply(&self, s: &mut StateVector) -> Result<()> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: s.n_qubits(),
            });
        }
        self.apply_slice(s.amplitudes_mut());
        Ok(())
    }

    pub fn evaluate(&self, input: &StateVector) -> Result<StateVector> {
        let mut s = input.clone();
        self.apply(&mut s)?;
        Ok(s)
    }

    pub(crate) fn apply_slice(&self, amps: &mut [C64]) {
        for op in &self.ops {
            op.apply_slice(amps);
        }
    }

    /// Dense unitary of the whole circuit, as written (no phase correction).
    pub fn to_dense(&self) -> Result<Matrix> {
        materialize(self.n_qubits, "circuit", |amps| self.apply_slice(amps))
    }

    fn extend_mapped(&mut self, block: &CircuitIR, qubits: &[usize]) -> Result<()> {
        for op in &block.ops {
            self.push(op.remap(qubits)?)?;
        }
        Ok(())
    }
}

/// A steering block and its inverse, placed on a list of qubits.
#[derive(Debug, Clone)]
pub enum Steering {
    /// `H` on every qubit of the block.
    Hadamard,
    /// `Δ` layer: `X` where the bit string has a 1 (leftmost = highest qubit).
    Selection(String),
    /// Explicit gates, indices relative to the block.
    Circuit(CircuitIR),
    /// Simulator-only operator on the block; not emissible.
    Opaque { label: String, op: Arc<LinearOp> },
}

impl Steering {
    pub fn opaque(label: impl Into<String>, op: LinearOp) -> Self {
        Steering::Opaque {
            label: label.into(),
            op: Arc::new(op),
        }
    }

    fn block(&self, qubits: &[usize]) -> Result<CircuitIR> {
        let k = qubits.len();
        let mut c = CircuitIR::new(k)?;
        match self {
            Steering::Hadamard => {
                for q in 0..k {
                    c.push(CircuitOp::H(q))?;
                }
            }
            Steering::Selection(bits) => {
                let t = crate::gates::selection_operators(bits)?;
                if t.n_qubits() != k {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        found: t.n_qubits(),
                    });
                }
                for q in 0..k {
                    if t.factor(q) == SingleQubit::X {
                        c.push(CircuitOp::X(q))?;
                    }
                }
            }
            Steering::Circuit(ir) => {
                if ir.n_qubits() != k {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        found: ir.n_qubits(),
                    });
                }
                c = ir.clone();
            }
            Steering::Opaque { label, op } => {
                c.push(CircuitOp::Unitary {
                    label: label.clone(),
                    qubits: (0..k).collect(),
                    op: op.clone(),
                    decomposition: None,
                })?;
            }
        }
        Ok(c)
    }
}

/// `X`-sandwiched controlled-Z on `qubits`, i.e. `1 - 2|0..0><0..0|` there.
fn push_zero_oracle(c: &mut CircuitIR, qubits: &[usize]) -> Result<()> {
    for &q in qubits {
        c.push(CircuitOp::X(q))?;
    }
    push_all_ones_flip(c, qubits)?;
    for &q in qubits {
        c.push(CircuitOp::X(q))?;
    }
    Ok(())
}

fn push_all_ones_flip(c: &mut CircuitIR, qubits: &[usize]) -> Result<()> {
    match qubits {
        [] => Err(Error::InvalidArgument("empty oracle register".into())),
        [q] => c.push(CircuitOp::Z(*q)),
        [t, ctl] => c.push(CircuitOp::Cz {
            control: *ctl,
            target: *t,
        }),
        _ => c.push(CircuitOp::Mcz(qubits.iter().rev().copied().collect())),
    }
}

/// `U_0 = X^{⊗n} · MCZ · X^{⊗n}`.
pub fn build_zero_oracle(n: usize) -> Result<CircuitIR> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "zero oracle needs at least 2 qubits, got {n}"
        )));
    }
    let mut c = CircuitIR::new(n)?;
    push_zero_oracle(&mut c, &(0..n).collect::<Vec<_>>())?;
    Ok(c)
}

/// `1 - 2|ω><ω|` as `Δ · U_0 · Δ` with the adjacent `X` pairs cancelled.
pub fn build_basis_oracle(omega: &str) -> Result<CircuitIR> {
    let t = crate::gates::selection_operators(omega)?;
    let n = t.n_qubits();
    let mut c = CircuitIR::new(n)?;
    let zeros: Vec<usize> = (0..n).filter(|&q| t.factor(q) == SingleQubit::I).collect();
    for &q in &zeros {
        c.push(CircuitOp::X(q))?;
    }
    push_all_ones_flip(&mut c, &(0..n).collect::<Vec<_>>())?;
    for &q in &zeros {
        c.push(CircuitOp::X(q))?;
    }
    Ok(c)
}

/// `G · U_0 · G†`, which equals `-(2|g><g| - 1)`; flagged phase-negated.
pub fn build_diffuser(steering: &Steering, n: usize) -> Result<CircuitIR> {
    let mut c = CircuitIR::new(n)?;
    push_steered_zero_oracle(&mut c, steering, &(0..n).collect::<Vec<_>>())?;
    c.phase_negated = true;
    Ok(c)
}

fn push_steered_zero_oracle(
    c: &mut CircuitIR,
    steering: &Steering,
    qubits: &[usize],
) -> Result<()> {
    let g = steering.block(qubits)?;
    c.extend_mapped(&g.inverse(), qubits)?;
    push_zero_oracle(c, qubits)?;
    c.extend_mapped(&g, qubits)
}

/// The phase oracle of a Grover circuit.
#[derive(Debug, Clone)]
pub enum OracleSpec {
    /// Marks each listed bit string (all of length `n`).
    Basis(Vec<String>),
    /// `A(1 - 2|0^n><0^n|)A†`.
    Steered(Steering),
    /// `1_r ⊗ B(1 - 2|0^m><0^m|)B†` on the low `m` qubits.
    Subsystem { m: usize, steering: Steering },
}

#[derive(Debug, Clone)]
pub struct GroverCircuitSpec {
    pub n_qubits: usize,
    /// Prepares the trial state; its diffuser is used after every oracle.
    pub trial: Steering,
    pub oracle: OracleSpec,
    pub iterations: usize,
}

/// Trial layer followed by `iterations` rounds of (oracle, diffuser).
pub fn build_grover_circuit(spec: &GroverCircuitSpec) -> Result<CircuitIR> {
    let n = spec.n_qubits;
    let all: Vec<usize> = (0..n).collect();
    let mut oracle = CircuitIR::new(n)?;
    match &spec.oracle {
        OracleSpec::Basis(marked) => {
            if marked.is_empty() {
                return Err(Error::InvalidArgument("no marked states".into()));
            }
            for omega in marked {
                if omega.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: omega.len(),
                    });
                }
                oracle.append(&build_basis_oracle(omega)?)?;
            }
        }
        OracleSpec::Steered(a) => push_steered_zero_oracle(&mut oracle, a, &all)?,
        OracleSpec::Subsystem { m, steering } => {
            if *m == 0 || *m > n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: *m,
                });
            }
            push_steered_zero_oracle(&mut oracle, steering, &all[..*m])?;
        }
    }
    let diffuser = build_diffuser(&spec.trial, n)?;
    let mut c = CircuitIR::new(n)?;
    c.extend_mapped(&spec.trial.block(&all)?, &all)?;
    for _ in 0..spec.iterations {
        c.append(&oracle)?;
        c.append(&diffuser)?;
    }
    Ok(c)
}

/// Database search circuit with opaque `A` (and `B`) blocks; read-out basis
/// as for the matching [`crate::patternmatch::SearchSetup`] before its final
/// basis change.
pub fn pattern_match_circuit(
    db: &QuantumDatabase,
    q: &Query,
    variant: Variant,
    iterations: usize,
) -> Result<CircuitIR> {
    let n = db.n_qubits();
    let a = build_database_operator(db)?;
    let b = build_query_operator(q)?;
    let (trial, steering) = match variant {
        Variant::GForm => {
            let g = LinearOp::product(vec![a, LinearOp::on_low_qubits(n, b.adjoint())?])?;
            (
                Steering::opaque("G", g),
                Steering::Circuit(CircuitIR::new(db.m())?),
            )
        }
        Variant::AbForm => (Steering::opaque("A", a), Steering::opaque("B", b)),
    };
    build_grover_circuit(&GroverCircuitSpec {
        n_qubits: n,
        trial,
        oracle: OracleSpec::Subsystem {
            m: db.m(),
            steering,
        },
        iterations,
    })
}
