//! Dense complex matrices: unitarity checks, Kronecker products and
//! gather/scatter application on a subset of qubits.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qstate::qubits_for_dim;
use crate::tolerance::{DENSE_MAX_QUBITS, UNITARITY_TOL};
use crate::C64;

pub type Matrix = DMatrix<C64>;

/// A square matrix on `k` qubits, checked unitary at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    matrix: Matrix,
    n_qubits: usize,
}

/// Max-entry deviation of `U†U` from the identity.
pub fn unitarity_deviation(m: &Matrix) -> f64 {
    let product = m.adjoint() * m;
    let mut worst: f64 = 0.0;
    for i in 0..product.nrows() {
        for j in 0..product.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((product[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

pub(crate) fn check_dense_capacity(n: usize, what: &'static str) -> Result<()> {
    if n > DENSE_MAX_QUBITS {
        return Err(Error::Capacity {
            what,
            requested: n,
            max: DENSE_MAX_QUBITS,
        });
    }
    Ok(())
}

impl DenseUnitary {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let n_qubits = qubits_for_dim(matrix.nrows()).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "matrix dimension {} is not a power of two",
                matrix.nrows()
            ))
        })?;
        check_dense_capacity(n_qubits, "dense unitary")?;
        let deviation = unitarity_deviation(&matrix);
        if deviation.is_nan() || deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix, n_qubits })
    }

    /// Skips the unitarity check; only for matrices unitary by construction.
    pub(crate) fn from_trusted(matrix: Matrix) -> Self {
        let n_qubits = qubits_for_dim(matrix.nrows()).expect("power-of-two dimension");
        Self { matrix, n_qubits }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::from_trusted(Matrix::identity(1 << n_qubits, 1 << n_qubits))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            n_qubits: self.n_qubits,
        }
    }
}

/// `a ⊗ b`, with `b` on the low-order qubits.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// Applies `m` to the qubits in `targets`; bit `i` of the sub-basis index
/// addresses `targets[i]`. `amps.len()` must be a power of two covering
/// every target.
pub(crate) fn apply_on_targets(m: &Matrix, targets: &[usize], amps: &mut [C64]) {
    let k = targets.len();
    debug_assert_eq!(m.nrows(), 1 << k);
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|s| {
            targets
                .iter()
                .enumerate()
                .filter(|(i, _)| (s >> i) & 1 == 1)
                .map(|(_, &q)| 1usize << q)
                .sum()
        })
        .collect();
    let target_mask: usize = targets.iter().map(|&q| 1usize << q).sum();
    let mut gathered = vec![C64::new(0.0, 0.0); 1 << k];
    for base in 0..amps.len() {
        if base & target_mask != 0 {
            continue;
        }
        for (g, off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base | off];
        }
        for (row, off) in offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (col, g) in gathered.iter().enumerate() {
                acc += m[(row, col)] * g;
            }
            amps[base | off] = acc;
        }
    }
}

/// Dense matrix of a linear map given by its in-place action on amplitudes.
pub(crate) fn materialize(n: usize, what: &'static str, f: impl Fn(&mut [C64])) -> Result<Matrix> {
    check_dense_capacity(n, what)?;
    let dim = 1usize << n;
    let mut m = Matrix::zeros(dim, dim);
    let mut col = vec![C64::new(0.0, 0.0); dim];
    for j in 0..dim {
        col.iter_mut().for_each(|a| *a = C64::new(0.0, 0.0));
        col[j] = C64::new(1.0, 0.0);
        f(&mut col);
        for (i, a) in col.iter().enumerate() {
            m[(i, j)] = *a;
        }
    }
    Ok(m)
}

/// Plain matrix-vector product over the whole register.
pub fn matvec(m: &Matrix, amps: &[C64]) -> Vec<C64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * amps[j]).sum())
        .collect()
}

/// Max-entry distance between two matrices.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Distance between `a` and `b` after removing the best global phase.
pub fn max_abs_diff_up_to_phase(a: &Matrix, b: &Matrix) -> f64 {
    let overlap: C64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    max_abs_diff(&a.map(|x| x * phase), b)
}
