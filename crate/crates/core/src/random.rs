//! Seeded random states and Haar-ish unitaries for tests, examples and demos.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::dense::{check_dense_capacity, DenseUnitary, Matrix};
use crate::error::Result;
use crate::qstate::StateVector;
use crate::C64;

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unit vector with i.i.d. complex Gaussian components.
pub fn random_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StateVector> {
    StateVector::from_amplitudes(random_vector(1 << n, rng))
}

/// Haar-distributed unitary on `n` qubits (QR of a complex Ginibre matrix
/// with the diagonal phases of `R` folded back into `Q`).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DenseUnitary> {
    check_dense_capacity(n, "random unitary")?;
    let dim = 1usize << n;
    let g = Matrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    DenseUnitary::new(q)
}

/// Orthonormal columns: `count` vectors of dimension `dim` (`count <= dim`).
pub fn random_orthonormal_columns<R: Rng + ?Sized>(
    dim: usize,
    count: usize,
    rng: &mut R,
) -> Vec<Vec<C64>> {
    assert!(count <= dim);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(count);
    while cols.len() < count {
        let mut v: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        for c in &cols {
            let p: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(c).for_each(|(x, a)| *x -= p * a);
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    cols
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::unitarity_deviation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            let u = random_unitary(n, &mut rng).unwrap();
            assert!(unitarity_deviation(u.matrix()) < 1e-12);
        }
    }

    #[test]
    fn columns_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cols = random_orthonormal_columns(8, 5, &mut rng);
        for i in 0..5 {
            for j in 0..5 {
                let ip: C64 = cols[i]
                    .iter()
                    .zip(&cols[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }
}
