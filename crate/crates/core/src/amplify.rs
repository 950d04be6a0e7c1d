//! The Grover engine.
//!
//! A trial state `|g>` and a steering set split into a marked component
//! `sin θ |g_Ω>` and an orthogonal component `cos θ |g_⊥>`. Oracle and
//! diffuser are reflections that keep every iterate in the plane spanned by
//! `|g_⊥>` and `|g_Ω>`, rotating it by `2θ` per iteration, so after `r`
//! iterations the marked probability is `sin²((2r+1)θ)`.
//!
//! When `1/4 < sin²θ < 3/4` the first iterate lands in the second quadrant
//! of that plane. Plans in this [`Region::Mixed`] apply the in-plane
//! reflection `U∥ = 2|g_Ω><g_Ω| - 1` after every iteration to return the
//! state to the first quadrant.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracles::{parallel_reflection, Orientation, Reflection, TargetSet};
use crate::qstate::{dot, StateVector};
use crate::steering::LinearOp;
use crate::tolerance::{ALGEBRA_TOL, ZERO_COMPONENT_TOL};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneGeometry {
    theta: f64,
    g_omega: StateVector,
    /// `None` when the trial already lies in the marked subspace.
    g_perp: Option<StateVector>,
}

impl PlaneGeometry {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `N_Ω`, the norm of the marked component of the trial.
    pub fn sin_theta(&self) -> f64 {
        self.theta.sin()
    }

    pub fn g_omega(&self) -> &StateVector {
        &self.g_omega
    }

    pub fn g_perp(&self) -> Option<&StateVector> {
        self.g_perp.as_ref()
    }

    /// True when the trial has no component outside the marked subspace.
    pub fn is_aligned(&self) -> bool {
        self.g_perp.is_none()
    }

    /// `(<g_⊥|ψ>, <g_Ω|ψ>)`.
    pub fn coordinates(&self, s: &StateVector) -> (C64, C64) {
        let perp = self
            .g_perp
            .as_ref()
            .map(|p| dot(p.amplitudes(), s.amplitudes()))
            .unwrap_or_default();
        (perp, dot(self.g_omega.amplitudes(), s.amplitudes()))
    }

    /// Norm of the part of `ψ` outside the plane.
    pub fn out_of_plane_norm(&self, s: &StateVector) -> f64 {
        let (cp, co) = self.coordinates(s);
        let mut residual = 0.0;
        for (x, a) in s.amplitudes().iter().enumerate() {
            let mut r = a - co * self.g_omega.amplitude(x);
            if let Some(p) = &self.g_perp {
                r -= cp * p.amplitude(x);
            }
            residual += r.norm_sqr();
        }
        residual.sqrt()
    }
}

/// Splits `trial` into its marked and orthogonal parts for `target`.
pub fn decompose(trial: &StateVector, target: &TargetSet) -> Result<PlaneGeometry> {
    decompose_with_oracle(trial, &target.oracle()?)
}

/// As [`decompose`], with the marked projector given by an oracle `1 - 2P`.
pub fn decompose_with_oracle(trial: &StateVector, oracle: &Reflection) -> Result<PlaneGeometry> {
    trial.check_normalized()?;
    let marked = oracle.negated_component(trial)?;
    let marked_norm = marked.norm();
    if marked_norm < ZERO_COMPONENT_TOL {
        return Err(Error::Unreachable { marked_norm });
    }
    let perp_amps: Vec<C64> = trial
        .amplitudes()
        .iter()
        .zip(marked.amplitudes())
        .map(|(g, m)| g - m)
        .collect();
    let perp = StateVector::from_raw(perp_amps)?;
    let perp_norm = perp.norm();
    let mut g_omega = marked;
    g_omega.renormalize()?;
    let g_perp = if perp_norm < ZERO_COMPONENT_TOL {
        None
    } else {
        let mut p = perp;
        p.renormalize()?;
        Some(p)
    };
    let theta = if g_perp.is_none() {
        FRAC_PI_2
    } else {
        marked_norm.atan2(perp_norm)
    };
    Ok(PlaneGeometry {
        theta,
        g_omega,
        g_perp,
    })
}

/// `round(π/(4θ) - 1/2)`, at least 0. Among the two integers around the
/// real optimum the one with larger `sin²((2r+1)θ)` wins, ties go down.
pub fn optimal_iterations(theta: f64) -> Result<usize> {
    if theta.is_nan() || theta <= 0.0 || theta > FRAC_PI_2 + ALGEBRA_TOL {
        return Err(Error::InvalidArgument(format!(
            "angle {theta} must lie in (0, π/2]"
        )));
    }
    let x = FRAC_PI_4 / theta - 0.5;
    if x <= 0.0 {
        return Ok(0);
    }
    let lo = x.floor() as usize;
    let hi = lo + 1;
    let (p_lo, p_hi) = (
        success_probability(lo, theta),
        success_probability(hi, theta),
    );
    Ok(if p_hi > p_lo + ALGEBRA_TOL { hi } else { lo })
}

/// `sin²((2r+1)θ)`.
pub fn success_probability(r: usize, theta: f64) -> f64 {
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `0 <= M/N <= 1/4`: both one-iteration coefficients non-negative.
    Standard,
    /// `1/4 < M/N < 3/4`: coefficients of opposite sign, `U∥` needed.
    Mixed,
    /// `3/4 <= M/N <= 1`: both coefficients non-positive.
    Inverted,
}

/// Region for `M/N` (or `sin²θ` for a general trial), boundaries closed
/// on the outer regions.
pub fn classify_region(ratio: f64) -> Result<Region> {
    if !(0.0..=1.0).contains(&ratio) {
        return Err(Error::InvalidArgument(format!(
            "ratio {ratio} must lie in [0, 1]"
        )));
    }
    Ok(if ratio <= 0.25 {
        Region::Standard
    } else if ratio < 0.75 {
        Region::Mixed
    } else {
        Region::Inverted
    })
}

/// [`classify_region`] with boundaries widened by rounding noise, for
/// ratios computed from amplitudes.
fn classify_computed(ratio: f64) -> Result<Region> {
    let snapped = if (ratio - 0.25).abs() <= ALGEBRA_TOL {
        0.25
    } else if (ratio - 0.75).abs() <= ALGEBRA_TOL {
        0.75
    } else {
        ratio.clamp(0.0, 1.0)
    };
    classify_region(snapped)
}

/// Oracle, diffuser, trial, geometry, region and iteration count for one search.
#[derive(Debug, Clone)]
pub struct GroverPlan {
    oracle: Reflection,
    diffuser: Reflection,
    parallel: Option<Reflection>,
    trial: StateVector,
    geometry: PlaneGeometry,
    region: Region,
    r_star: usize,
}

impl GroverPlan {
    pub fn new(trial: &StateVector, target: &TargetSet) -> Result<Self> {
        Self::with_oracle(trial, target.oracle()?)
    }

    /// Plan whose trial is `G|0^n>`.
    pub fn steered(g: &LinearOp, target: &TargetSet) -> Result<Self> {
        Self::new(&g.prepared_state()?, target)
    }

    pub fn with_oracle(trial: &StateVector, oracle: Reflection) -> Result<Self> {
        if oracle.n_qubits() != trial.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: trial.n_qubits(),
                found: oracle.n_qubits(),
            });
        }
        let geometry = decompose_with_oracle(trial, &oracle)?;
        let region = classify_computed(geometry.sin_theta().powi(2))?;
        let r_star = optimal_iterations(geometry.theta)?;
        let parallel = match region {
            Region::Mixed => Some(parallel_reflection(&geometry.g_omega)?),
            _ => None,
        };
        Ok(Self {
            diffuser: Reflection::Householder {
                axis: trial.clone(),
                orientation: Orientation::Axis,
            },
            oracle,
            parallel,
            trial: trial.clone(),
            geometry,
            region,
            r_star,
        })
    }

    /// Switches to the negated diffuser `1 - 2|g><g|` realized by circuits.
    pub fn with_circuit_diffuser(mut self) -> Self {
        self.diffuser = Reflection::Householder {
            axis: self.trial.clone(),
            orientation: Orientation::Complement,
        };
        self
    }

    pub fn oracle(&self) -> &Reflection {
        &self.oracle
    }

    pub fn diffuser(&self) -> &Reflection {
        &self.diffuser
    }

    pub fn parallel(&self) -> Option<&Reflection> {
        self.parallel.as_ref()
    }

    pub fn trial(&self) -> &StateVector {
        &self.trial
    }

    pub fn geometry(&self) -> &PlaneGeometry {
        &self.geometry
    }

    pub fn theta(&self) -> f64 {
        self.geometry.theta
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn r_star(&self) -> usize {
        self.r_star
    }

    /// Plane angle above `|g_⊥>` after `r` iterations of this plan.
    pub fn predicted_angle(&self, r: usize) -> f64 {
        let theta = self.geometry.theta;
        match self.region {
            Region::Mixed => {
                let mut phi = theta;
                for _ in 0..r {
                    phi = PI - (phi + 2.0 * theta);
                }
                phi
            }
            _ => (2 * r + 1) as f64 * theta,
        }
    }

    pub fn predicted_probability(&self, r: usize) -> f64 {
        self.predicted_angle(r).sin().powi(2)
    }

    /// Best predicted marked probability over `r_* - 1 ..= r_* + 1`.
    pub fn best_neighbor(&self) -> (usize, f64) {
        let lo = self.r_star.saturating_sub(1);
        (lo..=self.r_star + 1)
            .map(|r| (r, self.predicted_probability(r)))
            .fold((self.r_star, f64::MIN), |best, cur| {
                if cur.1 > best.1 + ALGEBRA_TOL {
                    cur
                } else {
                    best
                }
            })
    }

    pub fn run(&self, iterations: Option<usize>, record_trajectory: bool) -> Result<GroverRun> {
        let iterations = iterations.unwrap_or(self.r_star);
        let mut state = self.trial.clone();
        let mut trace = Vec::new();
        if record_trajectory {
            trace.push(self.observe(0, &state)?);
        }
        for r in 1..=iterations {
            grover_iterate(&mut state, self)?;
            if record_trajectory {
                trace.push(self.observe(r, &state)?);
            }
        }
        let last = match trace.last() {
            Some(entry) => entry.clone(),
            None => self.observe(iterations, &state)?,
        };
        Ok(GroverRun {
            final_state: state,
            iterations,
            last,
            trace,
        })
    }

    fn observe(&self, r: usize, state: &StateVector) -> Result<TraceEntry> {
        let measured = self.oracle.negated_weight(state)?;
        let predicted = self.predicted_probability(r);
        let (cp, co) = self.geometry.coordinates(state);
        Ok(TraceEntry {
            iteration: r,
            theta_r: self.predicted_angle(r),
            predicted,
            measured,
            abs_diff: (predicted - measured).abs(),
            perp_coordinate: cp.re,
            omega_coordinate: co.re,
            out_of_plane: self.geometry.out_of_plane_norm(state),
        })
    }
}

/// One Grover iteration: `U_g U_Ω`, followed by `U∥` in the mixed region.
pub fn grover_iterate(state: &mut StateVector, plan: &GroverPlan) -> Result<()> {
    plan.oracle.apply(state)?;
    plan.diffuser.apply(state)?;
    if let Some(p) = &plan.parallel {
        p.apply(state)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub iteration: usize,
    /// Predicted plane angle above `|g_⊥>`.
    pub theta_r: f64,
    pub predicted: f64,
    pub measured: f64,
    pub abs_diff: f64,
    pub perp_coordinate: f64,
    pub omega_coordinate: f64,
    pub out_of_plane: f64,
}

#[derive(Debug, Clone)]
pub struct GroverRun {
    pub final_state: StateVector,
    pub iterations: usize,
    /// Observation of the final state.
    pub last: TraceEntry,
    /// Entries for iterations `0..=iterations` when recording was requested.
    pub trace: Vec<TraceEntry>,
}

impl GroverRun {
    pub fn marked_probability(&self) -> f64 {
        self.last.measured
    }
}

/// Plans and runs a search from `trial` towards `target`, using `r_*`
/// iterations unless overridden.
pub fn grover_run(
    trial: &StateVector,
    target: &TargetSet,
    iterations: Option<usize>,
    record_trajectory: bool,
) -> Result<GroverRun> {
    GroverPlan::new(trial, target)?.run(iterations, record_trajectory)
}
