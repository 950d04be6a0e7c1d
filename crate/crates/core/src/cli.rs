//! Command implementations behind the `steergrover` binary.
//!
//! Every command returns a serializable report; the binary prints it as JSON
//! (stable key order, no timestamps) and writes a short summary to stderr.
//!
//! File formats, with complex numbers written as `[re, im]` pairs:
//!
//! * database: `{"r": 3, "m": 2, "entries": [[[re, im], ...], ...]}` with at
//!   most `2^r` entries of `2^m` components each; `r` may be omitted.
//! * query or trial state: `{"m": 2, "amplitudes": [[re, im], ...]}`; `m` may
//!   be omitted.

use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::amplify::{
    classify_region, optimal_iterations, success_probability, GroverPlan, Region, TraceEntry,
};
use crate::circuit::{build_grover_circuit, emit_qasm, GroverCircuitSpec, OracleSpec, Steering};
use crate::error::{Error, Result};
use crate::oracles::TargetSet;
use crate::patternmatch::{classical_argmax, QuantumDatabase, Query, SearchSetup, Variant};
use crate::qstate::{bits_to_index, check_capacity, index_to_bits, Histogram, StateVector};
use crate::steering::{Completion, LinearOp};
use crate::C64;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SHOTS: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Grover,
    PatternMatch,
    EmitQasm,
    Predict,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub m: Option<usize>,
    /// Each entry is a decimal index, a `0b`-prefixed bit string, a bare
    /// bit string of length `n`, or a comma-separated list of those.
    pub targets: Vec<String>,
    pub iterations: Option<usize>,
    pub seed: u64,
    pub shots: u64,
    pub db: Option<PathBuf>,
    pub query: Option<PathBuf>,
    /// Trial state file for a steered search (Hadamard trial otherwise).
    pub steer: Option<PathBuf>,
    pub variant: Variant,
    pub emit: Option<PathBuf>,
    /// `N` for `predict`; `2^n` when only `n` is given.
    pub size: Option<u64>,
    /// `M` for `predict`.
    pub marked: Option<u64>,
    pub theta: Option<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            r: None,
            m: None,
            targets: Vec::new(),
            iterations: None,
            seed: DEFAULT_SEED,
            shots: DEFAULT_SHOTS,
            db: None,
            query: None,
            steer: None,
            variant: Variant::GForm,
            emit: None,
            size: None,
            marked: None,
            theta: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Report {
    Grover(GroverReport),
    PatternMatch(PatternMatchReport),
    EmitQasm(EmitReport),
    Predict(PredictReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One-paragraph human summary.
    pub fn summary(&self) -> String {
        match self {
            Report::Grover(g) => format!(
                "grover: n={} targets={:?} region={:?} theta={:.6} r*={} ran {} iterations, \
                 P(marked) predicted {:.6} measured {:.6}, most frequent outcome {}",
                g.n_qubits,
                g.targets,
                g.region,
                g.theta,
                g.r_star,
                g.iterations,
                g.predicted_probability,
                g.measured_probability,
                g.most_frequent
                    .map_or("none".to_string(), |k| k.to_string())
            ),
            Report::PatternMatch(p) => format!(
                "pattern-match: R={} (live {}) k*={} confidence {:.4} P(marked) {:.4}; \
                 {} quantum oracle calls vs {} classical (classical k*={}, agree: {})",
                p.padded_entries,
                p.live_entries,
                p.k_star,
                p.conditional_confidence,
                p.measured_marked_probability,
                p.quantum_oracle_calls,
                p.classical_calls,
                p.classical_k_star,
                p.matches_classical
            ),
            Report::EmitQasm(e) => format!(
                "emit-qasm: n={} iterations={} gates={:?}{}",
                e.n_qubits,
                e.iterations,
                e.gate_counts,
                e.qasm_path
                    .as_ref()
                    .map(|p| format!(", written to {p}"))
                    .unwrap_or_default()
            ),
            Report::Predict(p) => format!(
                "predict: theta={:.6} region={:?} r*={} success probability {:.6}",
                p.theta, p.region, p.r_star, p.success_probability
            ),
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    Ok(match cfg.command {
        Command::Grover => Report::Grover(cmd_grover(cfg)?),
        Command::PatternMatch => Report::PatternMatch(cmd_pattern_match(cfg)?),
        Command::EmitQasm => Report::EmitQasm(cmd_emit_qasm(cfg)?),
        Command::Predict => Report::Predict(cmd_predict(cfg)?),
    })
}

fn require_n(cfg: &RunConfig, command: &str) -> Result<usize> {
    let n = cfg
        .n
        .ok_or_else(|| Error::InvalidArgument(format!("{command} requires --n")))?;
    if n == 0 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()));
    }
    check_capacity(n, "register")?;
    Ok(n)
}

fn parse_target(token: &str, n: usize) -> Result<usize> {
    let bound = 1usize << n;
    let index = if let Some(bits) = token.strip_prefix("0b") {
        if bits.len() != n {
            return Err(Error::InvalidArgument(format!(
                "bit string {token:?} must have {n} bits"
            )));
        }
        bits_to_index(bits)?
    } else if n >= 2 && token.len() == n && token.chars().all(|c| c == '0' || c == '1') {
        bits_to_index(token)?
    } else {
        token.parse::<usize>().map_err(|_| {
            Error::InvalidArgument(format!(
                "target {token:?} is neither an index nor a {n}-bit string"
            ))
        })?
    };
    if index >= bound {
        return Err(Error::IndexOutOfRange { index, bound });
    }
    Ok(index)
}

/// Resolves target specifications to sorted, distinct basis indices.
pub fn parse_targets(specs: &[String], n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for spec in specs {
        for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let index = parse_target(token, n)?;
            if out.contains(&index) {
                return Err(Error::InvalidArgument(format!(
                    "target {index} given twice"
                )));
            }
            out.push(index);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one --target is required".into(),
        ));
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexProbability {
    pub index: usize,
    pub bits: String,
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroverReport {
    pub command: &'static str,
    pub n_qubits: usize,
    pub targets: Vec<usize>,
    pub trial: &'static str,
    pub theta: f64,
    pub region: Region,
    pub r_star: usize,
    pub iterations: usize,
    pub predicted_probability: f64,
    pub measured_probability: f64,
    pub abs_diff: f64,
    pub max_trace_abs_diff: f64,
    pub target_probabilities: Vec<IndexProbability>,
    pub trace: Vec<TraceEntry>,
    pub seed: u64,
    pub shots: u64,
    pub most_frequent: Option<usize>,
    pub histogram: Histogram,
    pub qasm_path: Option<String>,
}

pub fn cmd_grover(cfg: &RunConfig) -> Result<GroverReport> {
    let n = require_n(cfg, "grover")?;
    let targets = parse_targets(&cfg.targets, n)?;
    let trial = match &cfg.steer {
        Some(path) => {
            let s = StateVector::from_amplitudes(load_amplitudes(path)?)?;
            if s.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.n_qubits(),
                });
            }
            s
        }
        None => StateVector::hadamard(n)?,
    };
    let plan = GroverPlan::new(&trial, &TargetSet::subset(n, &targets)?)?;
    let run = plan.run(cfg.iterations, true)?;
    let probs = run.final_state.probabilities();
    let histogram = probs.sample(cfg.seed, cfg.shots)?;
    let qasm_path = match &cfg.emit {
        Some(path) => {
            let steering = match &cfg.steer {
                None => Steering::Hadamard,
                Some(_) => Steering::opaque("G", LinearOp::prepare(&trial)?),
            };
            write_qasm(n, steering, &targets, run.iterations, path)?;
            Some(path.display().to_string())
        }
        None => None,
    };
    Ok(GroverReport {
        command: "grover",
        n_qubits: n,
        trial: if cfg.steer.is_some() {
            "steered"
        } else {
            "hadamard"
        },
        theta: plan.theta(),
        region: plan.region(),
        r_star: plan.r_star(),
        iterations: run.iterations,
        predicted_probability: run.last.predicted,
        measured_probability: run.last.measured,
        abs_diff: run.last.abs_diff,
        max_trace_abs_diff: run.trace.iter().map(|t| t.abs_diff).fold(0.0, f64::max),
        target_probabilities: targets
            .iter()
            .map(|&index| IndexProbability {
                index,
                bits: index_to_bits(index, n),
                probability: probs.probability(index),
            })
            .collect(),
        targets,
        trace: run.trace,
        seed: cfg.seed,
        shots: cfg.shots,
        most_frequent: histogram.argmax(),
        histogram,
        qasm_path,
    })
}

fn grover_circuit_text(
    n: usize,
    trial: Steering,
    targets: &[usize],
    iterations: usize,
) -> Result<(String, crate::circuit::CircuitIR)> {
    let circuit = build_grover_circuit(&GroverCircuitSpec {
        n_qubits: n,
        trial,
        oracle: OracleSpec::Basis(targets.iter().map(|&t| index_to_bits(t, n)).collect()),
        iterations,
    })?;
    Ok((emit_qasm(&circuit)?, circuit))
}

fn write_qasm(
    n: usize,
    trial: Steering,
    targets: &[usize],
    iterations: usize,
    path: &Path,
) -> Result<()> {
    let (text, _) = grover_circuit_text(n, trial, targets, iterations)?;
    write_file(path, &text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EmitReport {
    pub command: &'static str,
    pub n_qubits: usize,
    pub targets: Vec<usize>,
    pub region: Region,
    pub iterations: usize,
    pub gate_counts: std::collections::BTreeMap<String, usize>,
    /// Marked probability of the evaluated circuit.
    pub circuit_probability: f64,
    /// Closed-form `sin²((2r+1)θ)` for the same iteration count.
    pub predicted_probability: f64,
    pub abs_diff: f64,
    pub qasm_path: Option<String>,
    /// The program text when no `--emit` path was given.
    pub qasm: Option<String>,
}

/// Hadamard-trial Grover circuit for the given targets as OpenQASM 3.
pub fn cmd_emit_qasm(cfg: &RunConfig) -> Result<EmitReport> {
    let n = require_n(cfg, "emit-qasm")?;
    let targets = parse_targets(&cfg.targets, n)?;
    let ratio = targets.len() as f64 / (1u64 << n) as f64;
    let theta = ratio.sqrt().asin();
    let iterations = match cfg.iterations {
        Some(r) => r,
        None => optimal_iterations(theta)?,
    };
    let (text, circuit) = grover_circuit_text(n, Steering::Hadamard, &targets, iterations)?;
    let out = circuit.evaluate(&StateVector::zero(n)?)?;
    let probs = out.probabilities();
    let circuit_probability: f64 = targets.iter().map(|&t| probs.probability(t)).sum();
    let predicted_probability = success_probability(iterations, theta);
    let qasm_path = match &cfg.emit {
        Some(path) => {
            write_file(path, &text)?;
            Some(path.display().to_string())
        }
        None => None,
    };
    Ok(EmitReport {
        command: "emit-qasm",
        n_qubits: n,
        targets,
        region: classify_region(ratio)?,
        iterations,
        gate_counts: circuit.gate_counts(),
        circuit_probability,
        predicted_probability,
        abs_diff: (circuit_probability - predicted_probability).abs(),
        qasm: if qasm_path.is_none() {
            Some(text)
        } else {
            None
        },
        qasm_path,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictRow {
    pub iterations: usize,
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictReport {
    pub command: &'static str,
    pub size: Option<u64>,
    pub marked: Option<u64>,
    pub theta: f64,
    pub region: Region,
    pub r_star: usize,
    /// `(π/4)·sqrt(N/M)`, the large-`N` approximation of `r_*`.
    pub r_star_approx: f64,
    pub success_probability: f64,
    pub table: Vec<PredictRow>,
}

/// Closed-form iteration count and success table; no simulation.
pub fn cmd_predict(cfg: &RunConfig) -> Result<PredictReport> {
    let (theta, size, marked, ratio) = match cfg.theta {
        Some(theta) => {
            if cfg.size.is_some() || cfg.marked.is_some() {
                return Err(Error::InvalidArgument(
                    "give either --theta or --size/--marked, not both".into(),
                ));
            }
            (theta, None, None, theta.sin().powi(2))
        }
        None => {
            let size = match (cfg.size, cfg.n) {
                (Some(s), _) => s,
                (None, Some(n)) if n < 64 => 1u64 << n,
                (None, Some(n)) => {
                    return Err(Error::InvalidArgument(format!("--n {n} is too large")))
                }
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "predict requires --theta, --size or --n".into(),
                    ))
                }
            };
            let marked = cfg.marked.unwrap_or(1);
            if size == 0 || marked == 0 || marked > size {
                return Err(Error::InvalidArgument(format!(
                    "need 1 <= M <= N, got N={size}, M={marked}"
                )));
            }
            let ratio = marked as f64 / size as f64;
            (ratio.sqrt().asin(), Some(size), Some(marked), ratio)
        }
    };
    let r_star = optimal_iterations(theta)?;
    let rows: Vec<usize> = if r_star <= 32 {
        (0..=r_star + 2).collect()
    } else {
        let mut v = vec![
            0,
            1,
            2,
            r_star / 4,
            r_star / 2,
            3 * r_star / 4,
            r_star - 1,
            r_star,
            r_star + 1,
            r_star + 2,
        ];
        v.dedup();
        v
    };
    Ok(PredictReport {
        command: "predict",
        size,
        marked,
        theta,
        region: classify_region(ratio.clamp(0.0, 1.0))?,
        r_star,
        r_star_approx: FRAC_PI_4 / ratio.sqrt(),
        success_probability: success_probability(r_star, theta),
        table: rows
            .into_iter()
            .map(|r| PredictRow {
                iterations: r,
                probability: success_probability(r, theta),
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternMatchReport {
    pub command: &'static str,
    pub r: usize,
    pub m: usize,
    pub live_entries: usize,
    pub padded_entries: usize,
    pub variant: Variant,
    pub theta: f64,
    pub region: Region,
    pub r_star: usize,
    pub k_star: usize,
    pub conditional_confidence: f64,
    pub predicted_marked_probability: f64,
    pub measured_marked_probability: f64,
    pub abs_diff: f64,
    pub quantum_oracle_calls: usize,
    pub classical_calls: usize,
    pub classical_k_star: usize,
    pub matches_classical: bool,
    pub conditional_distribution: Vec<f64>,
    pub seed: u64,
    pub shots: u64,
    pub histogram: Histogram,
    pub unconditional_histogram: Histogram,
}

pub fn cmd_pattern_match(cfg: &RunConfig) -> Result<PatternMatchReport> {
    let db_path = cfg
        .db
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("pattern-match requires --db".into()))?;
    let query_path = cfg
        .query
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("pattern-match requires --query".into()))?;
    let query = load_query(query_path)?;
    let db = load_database(db_path, &query)?;
    if let Some(r) = cfg.r {
        if r != db.r() {
            return Err(Error::InvalidArgument(format!(
                "--r {r} disagrees with the database index register of {} qubits",
                db.r()
            )));
        }
    }
    if let Some(m) = cfg.m {
        if m != db.m() {
            return Err(Error::InvalidArgument(format!(
                "--m {m} disagrees with the database entry register of {} qubits",
                db.m()
            )));
        }
    }
    let setup = SearchSetup::new(&db, &query, cfg.variant, Completion::default())?;
    let result = setup.run(cfg.iterations, cfg.seed, cfg.shots)?;
    let classical = classical_argmax(&db, &query)?;
    let predicted = setup.plan().predicted_probability(result.oracle_calls);
    Ok(PatternMatchReport {
        command: "pattern-match",
        r: db.r(),
        m: db.m(),
        live_entries: db.live_entries(),
        padded_entries: db.len(),
        variant: cfg.variant,
        theta: result.theta,
        region: setup.plan().region(),
        r_star: result.r_star,
        k_star: result.k_star,
        conditional_confidence: result.conditional_confidence,
        predicted_marked_probability: predicted,
        measured_marked_probability: result.marked_probability,
        abs_diff: (predicted - result.marked_probability).abs(),
        quantum_oracle_calls: result.oracle_calls,
        classical_calls: classical.calls,
        classical_k_star: classical.k_star,
        matches_classical: classical.k_star == result.k_star,
        conditional_distribution: result.conditional_distribution,
        seed: cfg.seed,
        shots: cfg.shots,
        histogram: result.histogram,
        unconditional_histogram: result.unconditional_histogram,
    })
}

/// On-disk database layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatabaseFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub m: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// On-disk query or trial-state layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QueryFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

fn to_pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|a| [a.re, a.im]).collect()
}

impl DatabaseFile {
    pub fn from_entries(r: usize, m: usize, entries: &[Vec<C64>]) -> Self {
        Self {
            r: Some(r),
            m,
            entries: entries.iter().map(|e| to_pairs(e)).collect(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(
            path,
            &(serde_json::to_string_pretty(self).expect("serializable") + "\n"),
        )
    }
}

impl QueryFile {
    pub fn from_amplitudes(amplitudes: &[C64]) -> Self {
        Self {
            m: crate::qstate::qubits_for_dim(amplitudes.len()),
            amplitudes: to_pairs(amplitudes),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(
            path,
            &(serde_json::to_string_pretty(self).expect("serializable") + "\n"),
        )
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: format!("{}: {e}", path.display()),
    })
}

fn format_error(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Format {
        context: context.into(),
        message: message.into(),
    }
}

fn field_usize(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    context: &str,
) -> Result<Option<usize>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| {
            format_error(
                context,
                format!("field `{key}` must be a non-negative integer"),
            )
        }),
    }
}

fn parse_complex_array(v: &Value, context: &str) -> Result<Vec<C64>> {
    let items = v
        .as_array()
        .ok_or_else(|| format_error(context, "expected an array of [re, im] pairs"))?;
    items
        .iter()
        .enumerate()
        .map(|(j, item)| match item.as_array().map(Vec::as_slice) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(C64::new(re, im)),
                _ => Err(format_error(
                    context,
                    format!("component {j} must hold two numbers"),
                )),
            },
            _ => Err(format_error(
                context,
                format!("component {j} must be a [re, im] pair"),
            )),
        })
        .collect()
}

fn check_length(len: usize, m: Option<usize>, context: &str) -> Result<()> {
    if let Some(m) = m {
        check_capacity(m, "data register")?;
        if len != 1 << m {
            return Err(format_error(
                context,
                format!("has {len} components, expected 2^{m} = {}", 1usize << m),
            ));
        }
    }
    Ok(())
}

/// Raw amplitudes from a query/trial-state file, unnormalized.
pub fn load_amplitudes(path: &Path) -> Result<Vec<C64>> {
    let v = read_json(path)?;
    let context = path.display().to_string();
    let obj = v
        .as_object()
        .ok_or_else(|| format_error(&context, "expected a JSON object"))?;
    let m = field_usize(obj, "m", &context)?;
    let amps = parse_complex_array(
        obj.get("amplitudes")
            .ok_or_else(|| format_error(&context, "missing field `amplitudes`"))?,
        &format!("{context}: amplitudes"),
    )?;
    check_length(amps.len(), m, &format!("{context}: amplitudes"))?;
    Ok(amps)
}

pub fn load_query(path: &Path) -> Result<Query> {
    Query::new(load_amplitudes(path)?)
}

/// Reads a database file, padding to `2^r` entries against `query`.
pub fn load_database(path: &Path, query: &Query) -> Result<QuantumDatabase> {
    let v = read_json(path)?;
    let context = path.display().to_string();
    let obj = v
        .as_object()
        .ok_or_else(|| format_error(&context, "expected a JSON object"))?;
    let r = field_usize(obj, "r", &context)?;
    let m = field_usize(obj, "m", &context)?;
    let raw = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| format_error(&context, "field `entries` must be an array"))?;
    let entries = raw
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let ctx = format!("{context}: entry {k}");
            let amps = parse_complex_array(e, &ctx)?;
            check_length(amps.len(), m, &ctx)?;
            Ok(amps)
        })
        .collect::<Result<Vec<_>>>()?;
    QuantumDatabase::padded_for(entries, r, query)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_forms() {
        assert_eq!(parse_targets(&["3".into()], 2).unwrap(), vec![3]);
        assert_eq!(parse_targets(&["11".into()], 2).unwrap(), vec![3]);
        assert_eq!(parse_targets(&["0b0101".into()], 4).unwrap(), vec![5]);
        assert_eq!(parse_targets(&["9,5".into()], 4).unwrap(), vec![5, 9]);
        assert_eq!(parse_targets(&["12".into()], 4).unwrap(), vec![12]);
        let err = parse_targets(&["4".into()], 2).unwrap_err();
        assert!(err.to_string().contains("below 4"));
        assert!(parse_targets(&[], 2).is_err());
        assert!(parse_targets(&["1,1".into()], 2).is_err());
    }

    #[test]
    fn predict_table() {
        let mut cfg = RunConfig::new(Command::Predict);
        cfg.size = Some(10_000);
        cfg.marked = Some(1);
        assert_eq!(cmd_predict(&cfg).unwrap().r_star, 78);
        cfg.size = Some(16);
        cfg.marked = Some(4);
        let p = cmd_predict(&cfg).unwrap();
        assert_eq!(p.r_star, 1);
        assert!((p.theta - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
        assert!((p.success_probability - 1.0).abs() < 1e-12);
        cfg.size = Some(8);
        cfg.marked = Some(8);
        assert_eq!(cmd_predict(&cfg).unwrap().r_star, 0);
        let mut t = RunConfig::new(Command::Predict);
        t.theta = Some(0.0);
        assert!(cmd_predict(&t).is_err());
    }

    #[test]
    fn grover_reports() {
        let mut cfg = RunConfig::new(Command::Grover);
        cfg.n = Some(2);
        cfg.targets = vec!["3".into()];
        let g = cmd_grover(&cfg).unwrap();
        assert_eq!(g.r_star, 1);
        assert!((g.target_probabilities[0].probability - 1.0).abs() < 1e-10);
        assert_eq!(g.histogram.count(3), cfg.shots);

        cfg.n = Some(4);
        cfg.targets = vec!["5".into(), "9".into()];
        let g = cmd_grover(&cfg).unwrap();
        assert!((g.theta - (2.0f64 / 16.0).sqrt().asin()).abs() < 1e-12);
        assert_eq!(g.r_star, 2);
        assert!(g.max_trace_abs_diff < 1e-9);
    }
}
