//! The gate set used by the simulator and in-place application by qubit index.
//!
//! Single-qubit gates walk the amplitude array in stride pairs keyed by the
//! target bit. Multi-controlled Z is a primitive diagonal sign flip.

use std::fmt;

use crate::dense::{apply_on_targets, DenseUnitary};
use crate::error::{Error, Result};
use crate::qstate::StateVector;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingleQubit {
    I,
    X,
    Z,
    H,
}

impl SingleQubit {
    pub(crate) fn apply_slice(self, qubit: usize, amps: &mut [C64]) {
        let step = 1usize << qubit;
        match self {
            SingleQubit::I => {}
            SingleQubit::X => for_pairs(amps, step, std::mem::swap),
            SingleQubit::Z => for_pairs(amps, step, |_, b| *b = -*b),
            SingleQubit::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for_pairs(amps, step, |a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * s;
                    *b = (x - y) * s;
                })
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SingleQubit::I => "id",
            SingleQubit::X => "x",
            SingleQubit::Z => "z",
            SingleQubit::H => "h",
        }
    }
}

impl fmt::Display for SingleQubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SingleQubit::I => "I",
            SingleQubit::X => "X",
            SingleQubit::Z => "Z",
            SingleQubit::H => "H",
        };
        f.write_str(s)
    }
}

fn for_pairs(amps: &mut [C64], step: usize, mut f: impl FnMut(&mut C64, &mut C64)) {
    for chunk in amps.chunks_exact_mut(2 * step) {
        let (lo, hi) = chunk.split_at_mut(step);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            f(a, b);
        }
    }
}

/// Negates every amplitude whose bits under `mask` are all set.
pub(crate) fn flip_all_ones(mask: usize, amps: &mut [C64]) {
    for (x, a) in amps.iter_mut().enumerate() {
        if x & mask == mask {
            *a = -*a;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Single(SingleQubit),
    /// Controlled Z on exactly two qubits.
    Cz,
    /// Multi-controlled Z: sign flip of the all-ones sub-basis of its qubits.
    Mcz,
    Dense(DenseUnitary),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
}

impl Gate {
    pub fn single(g: SingleQubit, qubit: usize) -> Self {
        Self {
            kind: GateKind::Single(g),
            targets: vec![qubit],
        }
    }

    pub fn i(q: usize) -> Self {
        Self::single(SingleQubit::I, q)
    }

    pub fn x(q: usize) -> Self {
        Self::single(SingleQubit::X, q)
    }

    pub fn z(q: usize) -> Self {
        Self::single(SingleQubit::Z, q)
    }

    pub fn h(q: usize) -> Self {
        Self::single(SingleQubit::H, q)
    }

    pub fn cz(control: usize, target: usize) -> Self {
        Self {
            kind: GateKind::Cz,
            targets: vec![control, target],
        }
    }

    pub fn mcz(qubits: &[usize]) -> Result<Self> {
        if qubits.len() < 2 {
            return Err(Error::InvalidArgument(
                "multi-controlled Z needs at least 2 qubits; use Z for one".into(),
            ));
        }
        check_distinct(qubits)?;
        Ok(Self {
            kind: GateKind::Mcz,
            targets: qubits.to_vec(),
        })
    }

    /// Bit `i` of the matrix's sub-basis index addresses `targets[i]`.
    pub fn dense(unitary: DenseUnitary, targets: &[usize]) -> Result<Self> {
        if unitary.n_qubits() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: unitary.n_qubits(),
                found: targets.len(),
            });
        }
        check_distinct(targets)?;
        Ok(Self {
            kind: GateKind::Dense(unitary),
            targets: targets.to_vec(),
        })
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn adjoint(&self) -> Self {
        match &self.kind {
            GateKind::Dense(u) => Self {
                kind: GateKind::Dense(u.adjoint()),
                targets: self.targets.clone(),
            },
            _ => self.clone(),
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for &q in &self.targets {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        check_distinct(&self.targets)?;
        let arity_ok = match &self.kind {
            GateKind::Single(_) => self.targets.len() == 1,
            GateKind::Cz => self.targets.len() == 2,
            GateKind::Mcz => self.targets.len() >= 2,
            GateKind::Dense(u) => u.n_qubits() == self.targets.len(),
        };
        if !arity_ok {
            return Err(Error::InvalidArgument(format!(
                "gate {:?} cannot act on {} qubits",
                self.kind,
                self.targets.len()
            )));
        }
        Ok(())
    }

    pub(crate) fn apply_slice(&self, amps: &mut [C64]) {
        match &self.kind {
            GateKind::Single(g) => g.apply_slice(self.targets[0], amps),
            GateKind::Cz | GateKind::Mcz => flip_all_ones(mask_of(&self.targets), amps),
            GateKind::Dense(u) => apply_on_targets(u.matrix(), &self.targets, amps),
        }
    }
}

fn mask_of(qubits: &[usize]) -> usize {
    qubits.iter().fold(0, |m, &q| m | (1usize << q))
}

fn check_distinct(qubits: &[usize]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(Error::DuplicateQubit(*q));
        }
    }
    Ok(())
}

pub fn apply_gate(s: &mut StateVector, g: &Gate) -> Result<()> {
    g.validate(s.n_qubits())?;
    g.apply_slice(s.amplitudes_mut());
    Ok(())
}

/// Negates amplitude `x` exactly when every listed qubit of `x` is 1.
pub fn apply_mcz(s: &mut StateVector, qubits: &[usize]) -> Result<()> {
    apply_gate(s, &Gate::mcz(qubits)?)
}

/// One single-qubit factor per qubit, written `Δ_{n-1} ⊗ ... ⊗ Δ_0`:
/// `factors[0]` acts on the highest qubit and the last factor on qubit 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorOp {
    factors: Vec<SingleQubit>,
}

impl TensorOp {
    pub fn new(factors: Vec<SingleQubit>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument(
                "tensor product needs a factor".into(),
            ));
        }
        Ok(Self { factors })
    }

    pub fn uniform(n: usize, g: SingleQubit) -> Self {
        Self {
            factors: vec![g; n.max(1)],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[SingleQubit] {
        &self.factors
    }

    /// The factor acting on `qubit`.
    pub fn factor(&self, qubit: usize) -> SingleQubit {
        self.factors[self.factors.len() - 1 - qubit]
    }

    pub(crate) fn apply_slice(&self, amps: &mut [C64]) {
        for q in 0..self.n_qubits() {
            self.factor(q).apply_slice(q, amps);
        }
    }
}

impl fmt::Display for TensorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("⊗"))
    }
}

pub fn apply_tensor(s: &mut StateVector, t: &TensorOp) -> Result<()> {
    if t.n_qubits() != s.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: s.n_qubits(),
            found: t.n_qubits(),
        });
    }
    t.apply_slice(s.amplitudes_mut());
    Ok(())
}

/// `A_ω = Δ_{n-1} ⊗ ... ⊗ Δ_0` with `Δ_ℓ = X` where bit `ℓ` of `omega` is 1.
/// The leftmost character of `omega` is bit `n-1`.
pub fn selection_operators(omega: &str) -> Result<TensorOp> {
    if omega.is_empty() {
        return Err(Error::InvalidBitString(omega.to_string()));
    }
    let factors = omega
        .chars()
        .map(|c| match c {
            '0' => Ok(SingleQubit::I),
            '1' => Ok(SingleQubit::X),
            _ => Err(Error::InvalidBitString(omega.to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    TensorOp::new(factors)
}
