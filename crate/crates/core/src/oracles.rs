//! Reflection operators: phase oracles over basis subsets, steered oracles,
//! diffusers, the in-plane reflection `U∥`, kernel oracles and oracles that
//! act on a low-order qubit subsystem.
//!
//! Every reflection that has a generating state is applied as a rank-one
//! update `ψ -> ψ - 2<v|ψ>v`, `O(N)`. Basis subsets are an index sign flip.
//! Only the kernel oracle is applied as a dense `O(N²)` matrix.
//!
//! Two sign conventions exist for a reflection about a state. The library's
//! diffuser is `2|g><g| - 1` ([`Orientation::Axis`]); gate-level circuits
//! realize the negated form `1 - 2|g><g|`. They differ by a global phase.

use crate::dense::{materialize, matvec, DenseUnitary, Matrix};
use crate::error::{Error, Result};
use crate::qstate::{check_capacity, dot, StateVector};
use crate::steering::LinearOp;
use crate::tolerance::KERNEL_MAX_QUBITS;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `1 - 2|v><v|`: negates the `|v>` direction (oracle form).
    Complement,
    /// `2|v><v| - 1`: keeps `|v>`, negates its complement (diffuser form).
    Axis,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Complement => Orientation::Axis,
            Orientation::Axis => Orientation::Complement,
        }
    }
}

/// An explicit steering set of basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    n_qubits: usize,
    indices: Vec<usize>,
}

impl Subset {
    pub fn new(n_qubits: usize, indices: &[usize]) -> Result<Self> {
        check_capacity(n_qubits, "subset oracle")?;
        let bound = 1usize << n_qubits;
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidArgument(format!(
                    "index {} listed more than once in the steering set",
                    w[0]
                )));
            }
        }
        if let Some(&index) = sorted.iter().find(|&&x| x >= bound) {
            return Err(Error::IndexOutOfRange { index, bound });
        }
        Ok(Self {
            n_qubits,
            indices: sorted,
        })
    }

    /// Every basis state, `Ω_n`.
    pub fn all(n_qubits: usize) -> Result<Self> {
        check_capacity(n_qubits, "subset oracle")?;
        Ok(Self {
            n_qubits,
            indices: (0..1usize << n_qubits).collect(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.indices.binary_search(&x).is_ok()
    }

    /// `M / N`.
    pub fn ratio(&self) -> f64 {
        self.len() as f64 / (1usize << self.n_qubits) as f64
    }
}

/// A steering set given in a transformed orthonormal basis
/// `|y> = Σ_x Λ_{yx} |x>`: the rows of `Λ` listed in `rows` are marked.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSet {
    lambda: DenseUnitary,
    rows: Vec<usize>,
}

impl KernelSet {
    pub fn new(lambda: Matrix, rows: &[usize]) -> Result<Self> {
        let lambda = DenseUnitary::new(lambda)?;
        if lambda.n_qubits() > KERNEL_MAX_QUBITS {
            return Err(Error::Capacity {
                what: "kernel oracle",
                requested: lambda.n_qubits(),
                max: KERNEL_MAX_QUBITS,
            });
        }
        let dim = lambda.dim();
        let mut sorted = rows.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != rows.len() {
            return Err(Error::InvalidArgument(
                "kernel rows must be distinct".into(),
            ));
        }
        if let Some(&index) = sorted.iter().find(|&&y| y >= dim) {
            return Err(Error::IndexOutOfRange { index, bound: dim });
        }
        Ok(Self {
            lambda,
            rows: sorted,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.lambda.n_qubits()
    }

    pub fn lambda(&self) -> &DenseUnitary {
        &self.lambda
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// `Ω_{xx'} = Σ_{y ∈ Ω} conj(Λ_{yx'}) Λ_{yx}`, a rank-`M` projector.
    pub fn kernel_matrix(&self) -> Matrix {
        let l = self.lambda.matrix();
        let dim = self.lambda.dim();
        let mut k = Matrix::zeros(dim, dim);
        for &y in &self.rows {
            for x in 0..dim {
                let lyx = l[(y, x)];
                if lyx == C64::new(0.0, 0.0) {
                    continue;
                }
                for xp in 0..dim {
                    k[(x, xp)] += l[(y, xp)].conj() * lyx;
                }
            }
        }
        k
    }
}

/// What the oracle marks.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSet {
    ExplicitSubset(Subset),
    /// The single direction `A|0^n>`.
    SteeredState(LinearOp),
    KernelSet(KernelSet),
    /// `|k>_r ⊗ B|0^m>` for every value `k` of the high-order qubits.
    SubsystemZero {
        n_qubits: usize,
        steering: LinearOp,
    },
}

impl TargetSet {
    pub fn single(n_qubits: usize, index: usize) -> Result<Self> {
        Ok(TargetSet::ExplicitSubset(Subset::new(n_qubits, &[index])?))
    }

    pub fn subset(n_qubits: usize, indices: &[usize]) -> Result<Self> {
        Ok(TargetSet::ExplicitSubset(Subset::new(n_qubits, indices)?))
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            TargetSet::ExplicitSubset(s) => s.n_qubits(),
            TargetSet::SteeredState(a) => a.n_qubits(),
            TargetSet::KernelSet(k) => k.n_qubits(),
            TargetSet::SubsystemZero { n_qubits, .. } => *n_qubits,
        }
    }

    /// The phase oracle `1 - 2P_Ω` for this steering set.
    pub fn oracle(&self) -> Result<Reflection> {
        match self {
            TargetSet::ExplicitSubset(s) => Ok(phase_oracle_subset(s)),
            TargetSet::SteeredState(a) => steered_oracle(a),
            TargetSet::KernelSet(k) => kernel_oracle(k),
            TargetSet::SubsystemZero { n_qubits, steering } => {
                subsystem_zero_oracle(steering.n_qubits(), steering, *n_qubits)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reflection {
    Householder {
        axis: StateVector,
        orientation: Orientation,
    },
    /// `P_⊥ - P_Ω` as an index predicate.
    ProjectorDifference(Subset),
    /// `1 - 2K` with `K` the steering kernel.
    DenseKernel { n_qubits: usize, kernel: Matrix },
    /// `1_r ⊗ inner`, with `inner` on the low-order qubits.
    FactoredSubsystem {
        n_qubits: usize,
        inner: Box<Reflection>,
    },
}

impl Reflection {
    pub fn n_qubits(&self) -> usize {
        match self {
            Reflection::Householder { axis, .. } => axis.n_qubits(),
            Reflection::ProjectorDifference(s) => s.n_qubits(),
            Reflection::DenseKernel { n_qubits, .. } => *n_qubits,
            Reflection::FactoredSubsystem { n_qubits, .. } => *n_qubits,
        }
    }

    /// Same reflection with the opposite global sign, where that is
    /// representable (Householder forms only).
    pub fn negated(&self) -> Result<Self> {
        match self {
            Reflection::Householder { axis, orientation } => Ok(Reflection::Householder {
                axis: axis.clone(),
                orientation: orientation.flipped(),
            }),
            _ => Err(Error::InvalidArgument(
                "only Householder reflections carry a sign convention".into(),
            )),
        }
    }

    pub fn apply(&self, s: &mut StateVector) -> Result<()> {
        if s.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: s.n_qubits(),
            });
        }
        self.apply_slice(s.amplitudes_mut());
        Ok(())
    }

    pub(crate) fn apply_slice(&self, amps: &mut [C64]) {
        match self {
            Reflection::Householder { axis, orientation } => {
                let v = axis.amplitudes();
                let coeff = dot(v, amps) * 2.0;
                match orientation {
                    Orientation::Complement => {
                        for (a, vx) in amps.iter_mut().zip(v) {
                            *a -= coeff * vx;
                        }
                    }
                    Orientation::Axis => {
                        for (a, vx) in amps.iter_mut().zip(v) {
                            *a = coeff * vx - *a;
                        }
                    }
                }
            }
            Reflection::ProjectorDifference(s) => {
                for &x in s.indices() {
                    amps[x] = -amps[x];
                }
            }
            Reflection::DenseKernel { kernel, .. } => {
                let k_psi = matvec(kernel, amps);
                for (a, k) in amps.iter_mut().zip(k_psi) {
                    *a -= k * 2.0;
                }
            }
            Reflection::FactoredSubsystem { inner, .. } => {
                for block in amps.chunks_exact_mut(1 << inner.n_qubits()) {
                    inner.apply_slice(block);
                }
            }
        }
    }

    /// The component this reflection negates, `(ψ - Rψ)/2`. For an oracle
    /// `1 - 2P_Ω` this is the marked projection `P_Ω ψ`.
    pub fn negated_component(&self, s: &StateVector) -> Result<StateVector> {
        let mut reflected = s.clone();
        self.apply(&mut reflected)?;
        let amps = s
            .amplitudes()
            .iter()
            .zip(reflected.amplitudes())
            .map(|(a, r)| (a - r) * 0.5)
            .collect();
        StateVector::from_raw(amps)
    }

    /// `|P ψ|²` for the negated subspace `P`.
    pub fn negated_weight(&self, s: &StateVector) -> Result<f64> {
        Ok(self.negated_component(s)?.norm_sqr())
    }

    pub fn to_dense(&self) -> Result<Matrix> {
        materialize(self.n_qubits(), "dense reflection", |amps| {
            self.apply_slice(amps)
        })
    }
}

/// `U_ω`: negates amplitude `omega` only.
pub fn phase_oracle_single(omega: usize, n: usize) -> Result<Reflection> {
    Ok(Reflection::ProjectorDifference(Subset::new(n, &[omega])?))
}

/// `U_Ω = P_⊥ - P_Ω`.
pub fn phase_oracle_subset(omega_set: &Subset) -> Reflection {
    Reflection::ProjectorDifference(omega_set.clone())
}

/// `A[1 - 2|0^n><0^n|]A† = 1 - 2|ω><ω|` with `|ω> = A|0^n>`.
pub fn steered_oracle(a: &LinearOp) -> Result<Reflection> {
    Ok(Reflection::Householder {
        axis: a.prepared_state()?,
        orientation: Orientation::Complement,
    })
}

/// `U_g = 2|g><g| - 1` with `|g> = G|0^n>`.
pub fn diffusion_operator(g: &LinearOp) -> Result<Reflection> {
    Ok(Reflection::Householder {
        axis: g.prepared_state()?,
        orientation: Orientation::Axis,
    })
}

/// `U∥ = 2|Ω><Ω| - 1` about the (rescaled) marked direction.
///
/// This is a simulator-level operator: building it needs the marked
/// direction itself, which a circuit would not have.
pub fn parallel_reflection(omega_state: &StateVector) -> Result<Reflection> {
    let mut axis = omega_state.clone();
    axis.renormalize()?;
    Ok(Reflection::Householder {
        axis,
        orientation: Orientation::Axis,
    })
}

/// `1 - 2 Σ_{xx'} Ω_{xx'} |x><x'|`.
pub fn kernel_oracle(k: &KernelSet) -> Result<Reflection> {
    Ok(Reflection::DenseKernel {
        n_qubits: k.n_qubits(),
        kernel: k.kernel_matrix(),
    })
}

/// `1_r ⊗ B[1_m - 2|0^m><0^m|]B†` acting on the `m` low-order qubits.
pub fn subsystem_zero_oracle(m: usize, b: &LinearOp, n: usize) -> Result<Reflection> {
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!(
            "subsystem size m = {m} must satisfy 1 <= m < n = {n}"
        )));
    }
    check_capacity(n, "subsystem oracle")?;
    if b.n_qubits() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.n_qubits(),
        });
    }
    Ok(Reflection::FactoredSubsystem {
        n_qubits: n,
        inner: Box::new(steered_oracle(b)?),
    })
}
