//! Dense statevectors, measurement distributions and seeded sampling.
//!
//! Basis index `x` is the base-10 reading of the bit string
//! `x_{n-1} ... x_1 x_0`, with qubit 0 as the `2^0` bit (OpenQASM order).
//! This is the only ordering used anywhere in the crate.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerance::{MAX_QUBITS, NORM_TOL};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

pub(crate) fn check_capacity(n: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!(
            "{what} needs at least one qubit"
        )));
    }
    if n > MAX_QUBITS {
        return Err(Error::Capacity {
            what,
            requested: n,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Qubit count for a power-of-two dimension, if it is one.
pub(crate) fn qubits_for_dim(dim: usize) -> Option<usize> {
    if dim.is_power_of_two() {
        Some(dim.trailing_zeros() as usize)
    } else {
        None
    }
}

impl StateVector {
    /// `|0^n>`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_capacity(n, "statevector")?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, bound: dim });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    /// The uniform superposition `H^{⊗n}|0^n>`.
    pub fn hadamard(n: usize) -> Result<Self> {
        check_capacity(n, "statevector")?;
        let dim = 1usize << n;
        let a = 1.0 / (dim as f64).sqrt();
        Ok(Self {
            n_qubits: n,
            amplitudes: vec![C64::new(a, 0.0); dim],
        })
    }

    /// Wraps amplitudes that must already be normalized within [`NORM_TOL`].
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let state = Self::from_raw(amplitudes)?;
        state.check_normalized()?;
        Ok(state)
    }

    /// Wraps amplitudes and rescales them to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let mut state = Self::from_raw(amplitudes)?;
        state.renormalize()?;
        Ok(state)
    }

    /// Wraps amplitudes without any norm check. Used for intermediate
    /// vectors (projections, differences) that are not physical states.
    pub fn from_raw(amplitudes: Vec<C64>) -> Result<Self> {
        let n = qubits_for_dim(amplitudes.len()).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "amplitude count {} is not a power of two",
                amplitudes.len()
            ))
        })?;
        check_capacity(n, "statevector")?;
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                what: "statevector".into(),
                norm,
            });
        }
        Ok(())
    }

    /// Rescales to unit norm. Never called implicitly by the library.
    pub fn renormalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let inv = 1.0 / norm;
        self.amplitudes.iter_mut().for_each(|a| *a *= inv);
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        inner_product(self, other)
    }

    /// `|<self|other>|`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(inner_product(self, other)?.norm())
    }

    pub fn probabilities(&self) -> MeasurementDistribution {
        probabilities(self)
    }

    /// Largest `|a_x - b_x|` over all amplitudes.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub fn zero_state(n: usize) -> Result<StateVector> {
    StateVector::zero(n)
}

pub fn hadamard_state(n: usize) -> Result<StateVector> {
    StateVector::hadamard(n)
}

/// `Σ_x conj(a_x) b_x`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<C64> {
    check_same_dim(a.dim(), b.dim())?;
    Ok(dot(&a.amplitudes, &b.amplitudes))
}

pub(crate) fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Bit string `x_{n-1} ... x_0` of a basis index.
pub fn index_to_bits(index: usize, n: usize) -> String {
    (0..n)
        .rev()
        .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`index_to_bits`]. The leftmost character is qubit `n-1`.
pub fn bits_to_index(bits: &str) -> Result<usize> {
    if bits.is_empty() || bits.len() > MAX_QUBITS {
        return Err(Error::InvalidBitString(bits.to_string()));
    }
    bits.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvalidBitString(bits.to_string())),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementDistribution {
    n_qubits: usize,
    probabilities: Vec<f64>,
}

pub fn probabilities(s: &StateVector) -> MeasurementDistribution {
    MeasurementDistribution {
        n_qubits: s.n_qubits,
        probabilities: s.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
    }
}

impl MeasurementDistribution {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.probabilities[index]
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Marginal over the `k` low-order qubits (qubits `0..k`).
    pub fn marginal_low(&self, k: usize) -> Result<Vec<f64>> {
        self.check_block(k)?;
        let mask = (1usize << k) - 1;
        let mut out = vec![0.0; 1 << k];
        for (x, p) in self.probabilities.iter().enumerate() {
            out[x & mask] += p;
        }
        Ok(out)
    }

    /// Marginal over the `k` high-order qubits (qubits `n-k..n`).
    pub fn marginal_high(&self, k: usize) -> Result<Vec<f64>> {
        self.check_block(k)?;
        let shift = self.n_qubits - k;
        let mut out = vec![0.0; 1 << k];
        for (x, p) in self.probabilities.iter().enumerate() {
            out[x >> shift] += p;
        }
        Ok(out)
    }

    fn check_block(&self, k: usize) -> Result<()> {
        if k > self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: k,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    pub fn sample(&self, seed: u64, shots: u64) -> Result<Histogram> {
        sample(self, seed, shots)
    }
}

/// Counts of sampled basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub shots: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl Histogram {
    pub fn new() -> Self {
        Self {
            shots: 0,
            counts: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, outcome: usize) {
        *self.counts.entry(outcome).or_insert(0) += 1;
        self.shots += 1;
    }

    pub fn count(&self, outcome: usize) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: usize) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(outcome) as f64 / self.shots as f64
        }
    }

    /// Most frequent outcome, lowest index on ties.
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<(usize, u64)> = None;
        for (&x, &c) in &self.counts {
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((x, c));
            }
        }
        best.map(|(x, _)| x)
    }
}

impl Default for Histogram {
    fn default() -> Self {
        Self::new()
    }
}

/// Draws `shots` outcomes from `d`. Deterministic in `(seed, d, shots)`.
pub fn sample(d: &MeasurementDistribution, seed: u64, shots: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let index = WeightedIndex::new(&d.probabilities)
        .map_err(|e| Error::InvalidArgument(format!("invalid distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist = Histogram::new();
    for _ in 0..shots {
        hist.record(index.sample(&mut rng));
    }
    Ok(hist)
}
