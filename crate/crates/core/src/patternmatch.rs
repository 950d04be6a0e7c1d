//! Quantum database search.
//!
//! `R = 2^r` unit-norm data vectors `a_k` of dimension `M = 2^m` are
//! encoded as `A|0^n> = R^{-1/2} Σ_k |k>_r ⊗ |data(k)>_m`, with the data
//! register on the low-order `m` qubits: flat index `k·M + j`. The query
//! `b` is encoded as `B|0^m> = Σ_j b_j |j>`.
//!
//! Two equivalent searches are offered:
//!
//! * [`Variant::GForm`]: trial `(1_r ⊗ B†)A|0^n>`, oracle marks `|0^m>` on
//!   the data register.
//! * [`Variant::AbForm`]: trial `A|0^n>`, oracle marks `B|0^m>` on the data
//!   register.
//!
//! They differ by the basis change `1_r ⊗ B`, which is undone before
//! read-out, so both yield the same measurement statistics.

use serde::Serialize;

use crate::amplify::GroverPlan;
use crate::error::{Error, Result};
use crate::oracles::{steered_oracle, subsystem_zero_oracle, Reflection};
use crate::qstate::{check_capacity, dot, qubits_for_dim, Histogram, StateVector};
use crate::steering::{Completion, LinearOp};
use crate::tolerance::INGEST_NORM_TOL;
use crate::C64;

fn ingest(amps: Vec<C64>, what: impl Fn() -> String) -> Result<Vec<C64>> {
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::NotNormalized { what: what(), norm });
    }
    if (norm - 1.0).abs() > INGEST_NORM_TOL {
        return Err(Error::NotNormalized { what: what(), norm });
    }
    Ok(amps.into_iter().map(|a| a / norm).collect())
}

fn register_size(len: usize, what: &str) -> Result<usize> {
    qubits_for_dim(len)
        .ok_or_else(|| Error::InvalidArgument(format!("{what} length {len} is not a power of two")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    amplitudes: Vec<C64>,
    m: usize,
}

impl Query {
    /// Accepts vectors within `1e-6` of unit norm and rescales them exactly.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.iter().all(|a| a.norm_sqr() == 0.0) {
            return Err(Error::ZeroNorm);
        }
        let m = register_size(amplitudes.len(), "query")?;
        if m == 0 {
            return Err(Error::InvalidArgument(
                "query needs at least two components".into(),
            ));
        }
        let amplitudes = ingest(amplitudes, || "query".into())?;
        Ok(Self { amplitudes, m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn state(&self) -> StateVector {
        StateVector::from_raw(self.amplitudes.clone()).expect("validated query")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDatabase {
    r: usize,
    m: usize,
    /// `entries[k][j] = a_{jk}`; always `2^r` entries.
    entries: Vec<Vec<C64>>,
    /// Entries at index `live..` are padding.
    live: usize,
}

impl QuantumDatabase {
    /// A database with exactly `2^r` entries, `r` inferred.
    pub fn new(entries: Vec<Vec<C64>>) -> Result<Self> {
        let r = register_size(entries.len(), "entry count")?;
        let (m, entries) = Self::validate(entries)?;
        check_capacity(r + m, "database")?;
        let live = entries.len();
        Ok(Self {
            r,
            m,
            entries,
            live,
        })
    }

    /// Pads up to `2^r` entries (the next power of two when `r` is `None`)
    /// with unit vectors orthogonal to `query`. Padding never appears in
    /// search results.
    pub fn padded_for(entries: Vec<Vec<C64>>, r: Option<usize>, query: &Query) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("database has no entries".into()));
        }
        let r = r.unwrap_or_else(|| entries.len().next_power_of_two().trailing_zeros() as usize);
        check_capacity(r.max(1), "database index register")?;
        if entries.len() > 1 << r {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not fit an index register of {r} qubits",
                entries.len()
            )));
        }
        let (m, mut entries) = Self::validate(entries)?;
        if m != query.m() {
            return Err(Error::DimensionMismatch {
                expected: 1 << m,
                found: 1 << query.m(),
            });
        }
        check_capacity(r + m, "database")?;
        let live = entries.len();
        if live < 1 << r {
            let b = LinearOp::prepare(&query.state())?;
            let mut dummy = StateVector::basis(m, 1)?;
            b.apply(&mut dummy)?;
            entries.resize(1 << r, dummy.into_amplitudes());
        }
        Ok(Self {
            r,
            m,
            entries,
            live,
        })
    }

    fn validate(entries: Vec<Vec<C64>>) -> Result<(usize, Vec<Vec<C64>>)> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidArgument("database has no entries".into()))?;
        let m = register_size(first.len(), "entry")?;
        if m == 0 {
            return Err(Error::InvalidArgument(
                "entries need at least two components".into(),
            ));
        }
        let dim = first.len();
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(k, e)| {
                if e.len() != dim {
                    return Err(Error::Format {
                        context: format!("entry {k}"),
                        message: format!("has {} components, expected {dim}", e.len()),
                    });
                }
                ingest(e, || format!("entry {k}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((m, entries))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_qubits(&self) -> usize {
        self.r + self.m
    }

    /// `R`, including padding.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of real (non-padding) entries.
    pub fn live_entries(&self) -> usize {
        self.live
    }

    pub fn entry(&self, k: usize) -> &[C64] {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[Vec<C64>] {
        &self.entries
    }

    /// `|database> = R^{-1/2} Σ_{k,j} a_{jk} |k>_r ⊗ |j>_m`.
    pub fn state(&self) -> Result<StateVector> {
        let scale = 1.0 / (self.entries.len() as f64).sqrt();
        let amps = self
            .entries
            .iter()
            .flat_map(|e| e.iter().map(move |a| a * scale))
            .collect();
        StateVector::from_amplitudes(amps)
    }
}

/// Steering operator `A_n` with `A_n|0^n> = |database>`.
pub fn build_database_operator(db: &QuantumDatabase) -> Result<LinearOp> {
    build_database_operator_with(db, Completion::default())
}

pub fn build_database_operator_with(
    db: &QuantumDatabase,
    completion: Completion,
) -> Result<LinearOp> {
    LinearOp::prepare_with(&db.state()?, completion)
}

/// Steering operator `B_m` with `B_m|0^m> = Σ_j b_j |j>`.
pub fn build_query_operator(q: &Query) -> Result<LinearOp> {
    build_query_operator_with(q, Completion::default())
}

pub fn build_query_operator_with(q: &Query, completion: Completion) -> Result<LinearOp> {
    LinearOp::prepare_with(&q.state(), completion)
}

fn check_compatible(db: &QuantumDatabase, q: &Query) -> Result<()> {
    if db.m() != q.m() {
        return Err(Error::DimensionMismatch {
            expected: 1 << db.m(),
            found: 1 << q.m(),
        });
    }
    Ok(())
}

/// Amplitudes of `(1_r ⊗ B†)A|0^n>` on `|k>_r ⊗ |0^m>`, one per `k`.
/// These equal `R^{-1/2} b†a_k`.
pub fn trial_overlap_identity(db: &QuantumDatabase, q: &Query) -> Result<Vec<C64>> {
    check_compatible(db, q)?;
    let g = g_form_steering(
        &build_database_operator(db)?,
        &build_query_operator(q)?,
        db.n_qubits(),
    )?;
    let trial = g.prepared_state()?;
    let stride = 1usize << db.m();
    Ok((0..db.len()).map(|k| trial.amplitude(k * stride)).collect())
}

fn g_form_steering(a: &LinearOp, b: &LinearOp, n: usize) -> Result<LinearOp> {
    LinearOp::product(vec![a.clone(), LinearOp::on_low_qubits(n, b.adjoint())?])
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalMatch {
    pub k_star: usize,
    /// `|b†a_k|` for every real entry.
    pub overlaps: Vec<f64>,
    /// Black-box evaluations used, one per entry.
    pub calls: usize,
}

/// Exhaustive `argmax_k |b†a_k|` over real entries, lowest index on ties.
pub fn classical_argmax(db: &QuantumDatabase, q: &Query) -> Result<ClassicalMatch> {
    check_compatible(db, q)?;
    let overlaps: Vec<f64> = db.entries[..db.live]
        .iter()
        .map(|a| dot(q.amplitudes(), a).norm())
        .collect();
    let mut k_star = 0;
    for (k, &o) in overlaps.iter().enumerate() {
        if o > overlaps[k_star] {
            k_star = k;
        }
    }
    Ok(ClassicalMatch {
        k_star,
        calls: overlaps.len(),
        overlaps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Trial `(1_r ⊗ B†)A`, oracle on the data-register zero state.
    GForm,
    /// Trial `A`, oracle steered by `B`.
    AbForm,
}

/// A planned database search, ready to run any number of iterations.
#[derive(Debug, Clone)]
pub struct SearchSetup {
    plan: GroverPlan,
    /// Maps the final state to the basis where `|k> ⊗ |0^m>` is marked.
    readout: LinearOp,
    r: usize,
    m: usize,
    live: usize,
    variant: Variant,
}

impl SearchSetup {
    pub fn new(
        db: &QuantumDatabase,
        q: &Query,
        variant: Variant,
        completion: Completion,
    ) -> Result<Self> {
        check_compatible(db, q)?;
        let n = db.n_qubits();
        let (r, m) = (db.r(), db.m());
        let a = build_database_operator_with(db, completion)?;
        let b = build_query_operator_with(q, completion)?;
        let (trial, oracle, readout) = match variant {
            Variant::GForm => {
                let g = g_form_steering(&a, &b, n)?;
                let oracle = data_register_oracle(r, m, &LinearOp::identity(m))?;
                (g.prepared_state()?, oracle, LinearOp::identity(n))
            }
            Variant::AbForm => {
                let oracle = data_register_oracle(r, m, &b)?;
                let readout = LinearOp::on_low_qubits(n, b.adjoint())?;
                (a.prepared_state()?, oracle, readout)
            }
        };
        let plan = GroverPlan::with_oracle(&trial, oracle).map_err(|e| match e {
            Error::Unreachable { .. } => Error::NoOverlap,
            other => other,
        })?;
        Ok(Self {
            plan,
            readout,
            r,
            m,
            live: db.live_entries(),
            variant,
        })
    }

    pub fn plan(&self) -> &GroverPlan {
        &self.plan
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Final state after `iterations`, expressed in the read-out basis.
    pub fn readout_state(&self, iterations: usize) -> Result<StateVector> {
        let mut s = self.plan.run(Some(iterations), false)?.final_state;
        self.readout.apply(&mut s)?;
        Ok(s)
    }

    /// Exact read-out statistics after `iterations`.
    pub fn distributions(&self, iterations: usize) -> Result<SearchDistributions> {
        let p = self.readout_state(iterations)?.probabilities();
        let stride = 1usize << self.m;
        let index = p.marginal_high(self.r)?;
        let joint_marked: Vec<f64> = (0..1usize << self.r)
            .map(|k| p.probability(k * stride))
            .collect();
        let marked: f64 = joint_marked.iter().sum();
        let conditional = joint_marked.iter().map(|x| x / marked).collect();
        Ok(SearchDistributions {
            index,
            marked_probability: marked,
            conditional,
            full: p.probabilities().to_vec(),
        })
    }

    pub fn run(&self, iterations: Option<usize>, seed: u64, shots: u64) -> Result<MatchResult> {
        let iterations = iterations.unwrap_or(self.plan.r_star());
        let dist = self.distributions(iterations)?;
        let sampled = crate::qstate::sample(
            &self.readout_state(iterations)?.probabilities(),
            seed,
            shots,
        )?;
        let mask = (1usize << self.m) - 1;
        let mut conditional = Histogram::new();
        let mut unconditional = Histogram::new();
        for (&x, &count) in &sampled.counts {
            let k = x >> self.m;
            if k >= self.live {
                continue;
            }
            for _ in 0..count {
                unconditional.record(k);
                if x & mask == 0 {
                    conditional.record(k);
                }
            }
        }
        let live_conditional = &dist.conditional[..self.live];
        let k_star = conditional
            .argmax()
            .or_else(|| unconditional.argmax())
            .unwrap_or_else(|| argmax(live_conditional));
        Ok(MatchResult {
            k_star,
            histogram: conditional,
            unconditional_histogram: unconditional,
            conditional_confidence: dist.conditional[k_star],
            marked_probability: dist.marked_probability,
            conditional_distribution: live_conditional.to_vec(),
            oracle_calls: iterations,
            r_star: self.plan.r_star(),
            theta: self.plan.theta(),
            variant: self.variant,
        })
    }
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = k;
        }
    }
    best
}

/// Oracle marking `B|0^m>` on the data register for every index value.
fn data_register_oracle(r: usize, m: usize, b: &LinearOp) -> Result<Reflection> {
    if r == 0 {
        steered_oracle(b)
    } else {
        subsystem_zero_oracle(m, b, r + m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchDistributions {
    /// Marginal over the index register (including padding indices).
    pub index: Vec<f64>,
    /// Probability that the data register reads `0^m`.
    pub marked_probability: f64,
    /// `P(k | data register = 0^m)`.
    pub conditional: Vec<f64>,
    pub full: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchResult {
    pub k_star: usize,
    /// Sampled indices among shots whose data register read `0^m`.
    pub histogram: Histogram,
    /// Sampled indices over all shots.
    pub unconditional_histogram: Histogram,
    /// Exact `P(k_star | marked)`.
    pub conditional_confidence: f64,
    /// Exact probability of the marked subspace.
    pub marked_probability: f64,
    pub conditional_distribution: Vec<f64>,
    pub oracle_calls: usize,
    pub r_star: usize,
    pub theta: f64,
    pub variant: Variant,
}

/// Runs the amplified search for `q` over `db` with `r_*` iterations.
pub fn search(
    db: &QuantumDatabase,
    q: &Query,
    variant: Variant,
    seed: u64,
    shots: u64,
) -> Result<MatchResult> {
    SearchSetup::new(db, q, variant, Completion::default())?.run(None, seed, shots)
}
