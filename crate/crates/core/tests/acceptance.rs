//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p steered-grover --test acceptance -- --nocapture`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steered_grover::circuit::{
    build_basis_oracle, build_diffuser, build_grover_circuit, build_zero_oracle, emit_qasm,
    evaluate_qasm, parse_qasm, pattern_match_circuit, GroverCircuitSpec, OracleSpec, Steering,
};
use steered_grover::cli::{cmd_predict, Command, RunConfig};
use steered_grover::oracles::{
    kernel_oracle, phase_oracle_single, phase_oracle_subset, steered_oracle, subsystem_zero_oracle,
    Reflection, Subset,
};
use steered_grover::patternmatch::{
    classical_argmax, search, trial_overlap_identity, QuantumDatabase, Query, SearchSetup, Variant,
};
use steered_grover::random::{
    random_orthonormal_columns, random_state, random_unitary, random_vector,
};
use steered_grover::steering::{Completion, LinearOp};
use steered_grover::{
    grover_iterate, optimal_iterations, GroverPlan, KernelSet, StateVector, TargetSet, C64,
};

type M = DMatrix<C64>;

fn report(id: &str, title: &str, start: Instant, budget: Duration, ok: bool, detail: String) {
    let elapsed = start.elapsed();
    let pass = ok && elapsed < budget;
    println!(
        "[{}] criterion {id}: {title} | {detail} | {:.3}s (budget {}s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(elapsed < budget, "criterion {id} exceeded its time budget");
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn uniform_over(n: usize, indices: &[usize]) -> Vec<C64> {
    let mut v = vec![c(0.0); 1 << n];
    let a = 1.0 / (indices.len() as f64).sqrt();
    for &i in indices {
        v[i] = c(a);
    }
    v
}

fn vdot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn column(v: &[C64]) -> M {
    M::from_column_slice(v.len(), 1, v)
}

fn reflection_about(v: &[C64]) -> M {
    let u = column(v);
    M::identity(v.len(), v.len()) - (&u * u.adjoint()) * c(2.0)
}

fn matvec_state(m: &M, s: &StateVector) -> Vec<C64> {
    (m * column(s.amplitudes()))
        .column(0)
        .iter()
        .copied()
        .collect()
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |a - e^{iφ} b|` with the phase fixed at the largest entry of `b`.
fn max_diff_up_to_phase(a: &M, b: &M) -> f64 {
    let (mut idx, mut best) = (0, 0.0);
    for (i, x) in b.iter().enumerate() {
        if x.norm() > best {
            best = x.norm();
            idx = i;
        }
    }
    let phase = a.as_slice()[idx] / b.as_slice()[idx];
    let phase = phase / phase.norm();
    (a - b * phase).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

#[test]
fn criterion_01_exact_four_state_search() {
    let start = Instant::now();
    let plan = GroverPlan::new(
        &StateVector::hadamard(2).unwrap(),
        &TargetSet::single(2, 3).unwrap(),
    )
    .unwrap();
    let run = plan.run(Some(1), false).unwrap();
    let p = run.final_state.probabilities().probability(3);
    let ok = (p - 1.0).abs() < 1e-10
        && (plan.theta() - FRAC_PI_6).abs() < 1e-12
        && (plan.predicted_angle(1) - FRAC_PI_2).abs() < 1e-12;
    report(
        "1",
        "exact N=4 search",
        start,
        Duration::from_secs(1),
        ok,
        format!("P(3) = {p:.15}, theta = {:.12}", plan.theta()),
    );
}

#[test]
fn criterion_02_closed_form_trace() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for n in [6, 8, 10, 12] {
        let big_n = (1usize << n) as f64;
        let theta = (1.0 / big_n.sqrt()).asin();
        let h = StateVector::hadamard(n).unwrap();
        for _ in 0..20 {
            let target = rng.random_range(0..1usize << n);
            let plan = GroverPlan::new(&h, &TargetSet::single(n, target).unwrap()).unwrap();
            let run = plan.run(None, true).unwrap();
            assert_eq!(run.trace.len(), plan.r_star() + 1);
            for t in &run.trace {
                let closed = ((2 * t.iteration + 1) as f64 * theta).sin().powi(2);
                let measured = run_probability_at(&plan, t.iteration, target);
                worst = worst
                    .max((measured - closed).abs())
                    .max((t.measured - closed).abs());
            }
        }
    }
    report(
        "2",
        "closed-form trace for n in {6,8,10,12}",
        start,
        Duration::from_secs(30),
        worst < 1e-9,
        format!("max |P - sin^2((2r+1)theta)| = {worst:.2e}"),
    );
}

fn run_probability_at(plan: &GroverPlan, r: usize, target: usize) -> f64 {
    if r > 3 {
        return plan
            .run(Some(r), false)
            .unwrap()
            .final_state
            .amplitude(target)
            .norm_sqr();
    }
    let mut s = plan.trial().clone();
    for _ in 0..r {
        grover_iterate(&mut s, plan).unwrap();
    }
    s.amplitude(target).norm_sqr()
}

#[test]
fn criterion_03_iteration_scaling() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for n in 4..=14 {
        let big_n = (1u64 << n) as f64;
        let r = optimal_iterations((1.0 / big_n.sqrt()).asin()).unwrap();
        let gap = (r as f64 - FRAC_PI_4 * big_n.sqrt()).abs();
        worst = worst.max(gap);
        rows.push(format!("{n}:{r}"));
    }
    report(
        "3",
        "r* within 1 of (pi/4)sqrt(N), n = 4..14",
        start,
        Duration::from_secs(1),
        worst <= 1.0,
        format!("max gap {worst:.3}; r* = {}", rows.join(" ")),
    );
}

#[test]
fn criterion_04_subset_coefficients() {
    let start = Instant::now();
    let n = 6;
    let big_n = 64.0;
    let mut worst: f64 = 0.0;
    for m in [1usize, 2, 4, 8, 16] {
        let marked: Vec<usize> = (0..m).map(|k| (5 * k + 1) % 64).collect();
        let rest: Vec<usize> = (0..64).filter(|x| !marked.contains(x)).collect();
        let h = StateVector::hadamard(n).unwrap();
        let plan = GroverPlan::new(&h, &TargetSet::subset(n, &marked).unwrap()).unwrap();
        let mut s = h.clone();
        grover_iterate(&mut s, &plan).unwrap();
        let perp = vdot(&uniform_over(n, &rest), s.amplitudes());
        let omega = vdot(&uniform_over(n, &marked), s.amplitudes());
        let mf = m as f64;
        let e_perp = ((big_n - mf) / big_n).sqrt() * (1.0 - 4.0 * mf / big_n);
        let e_omega = (mf / big_n).sqrt() * (3.0 - 4.0 * mf / big_n);
        worst = worst
            .max((perp - c(e_perp)).norm())
            .max((omega - c(e_omega)).norm());
    }
    report(
        "4",
        "one-iteration subset coefficients, n = 6",
        start,
        Duration::from_secs(5),
        worst < 1e-10,
        format!("max coefficient error {worst:.2e}"),
    );
}

#[test]
fn criterion_05_region_behavior() {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    for (n, m) in [(4usize, 4usize), (6, 16)] {
        let marked: Vec<usize> = (0..m).map(|k| 3 * k % (1 << n)).collect();
        let plan = GroverPlan::new(
            &StateVector::hadamard(n).unwrap(),
            &TargetSet::subset(n, &marked).unwrap(),
        )
        .unwrap();
        let s = plan.run(None, false).unwrap().final_state;
        let p: f64 = marked.iter().map(|&x| s.amplitude(x).norm_sqr()).sum();
        ok &= plan.r_star() == 1 && (p - 1.0).abs() < 1e-10;
        notes.push(format!("M/N=1/4 (n={n}) P={p:.12}"));
    }

    let mut min_coord = f64::INFINITY;
    for n in [3usize, 4, 6] {
        let big_n = 1usize << n;
        for (num, den) in [(3, 8), (1, 2), (5, 8)] {
            let m = big_n * num / den;
            let marked: Vec<usize> = (0..m).map(|k| (7 * k + 2) % big_n).collect();
            let rest: Vec<usize> = (0..big_n).filter(|x| !marked.contains(x)).collect();
            let (u_omega, u_perp) = (uniform_over(n, &marked), uniform_over(n, &rest));
            let h = StateVector::hadamard(n).unwrap();
            let plan = GroverPlan::new(&h, &TargetSet::subset(n, &marked).unwrap()).unwrap();
            let mut s = h.clone();
            for _ in 0..12 {
                grover_iterate(&mut s, &plan).unwrap();
                let a = vdot(&u_perp, s.amplitudes());
                let b = vdot(&u_omega, s.amplitudes());
                min_coord = min_coord.min(a.re).min(b.re);
                ok &= a.im.abs() < 1e-10 && b.im.abs() < 1e-10;
            }
        }
    }
    ok &= min_coord >= -1e-10;
    notes.push(format!("mixed region min coordinate {min_coord:.3e}"));

    let all = Subset::all(5).unwrap();
    let plan = GroverPlan::new(
        &StateVector::hadamard(5).unwrap(),
        &TargetSet::ExplicitSubset(all),
    )
    .unwrap();
    ok &= plan.r_star() == 0;
    notes.push(format!("M=N r*={}", plan.r_star()));

    report(
        "5",
        "region behavior",
        start,
        Duration::from_secs(5),
        ok,
        notes.join(", "),
    );
}

fn kron(a: &M, b: &M) -> M {
    a.kronecker(b)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let big_n = 1usize << n;
    let m = rng.random_range(1..=big_n / 2);
    let mut idx: Vec<usize> = (0..big_n).collect();
    for i in 0..m {
        let j = rng.random_range(i..big_n);
        idx.swap(i, j);
    }
    idx.truncate(m);
    idx
}

#[test]
fn criterion_06_structured_vs_dense() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut counts = [0usize; 5];
    for i in 0..100 {
        let n = rng.random_range(2..=6);
        let big_n = 1usize << n;
        let kind = i % 5;
        counts[kind] += 1;
        let (oracle, dense): (Reflection, M) = match kind {
            0 => {
                let w = rng.random_range(0..big_n);
                let mut e = vec![c(0.0); big_n];
                e[w] = c(1.0);
                (phase_oracle_single(w, n).unwrap(), reflection_about(&e))
            }
            1 => {
                let set = random_subset(&mut rng, n);
                let mut d = M::identity(big_n, big_n);
                for &x in &set {
                    d[(x, x)] = c(-1.0);
                }
                (phase_oracle_subset(&Subset::new(n, &set).unwrap()), d)
            }
            2 => {
                let u = random_unitary(n, &mut rng).unwrap();
                let a = LinearOp::dense(u.matrix().clone()).unwrap();
                let col: Vec<C64> = u.matrix().column(0).iter().copied().collect();
                (steered_oracle(&a).unwrap(), reflection_about(&col))
            }
            3 => {
                let u = random_unitary(n, &mut rng).unwrap();
                let rows = random_subset(&mut rng, n);
                let lam = u.matrix();
                let mut k = M::zeros(big_n, big_n);
                for x in 0..big_n {
                    for xp in 0..big_n {
                        k[(x, xp)] = rows
                            .iter()
                            .map(|&y| lam[(y, xp)].conj() * lam[(y, x)])
                            .sum();
                    }
                }
                let set = KernelSet::new(lam.clone(), &rows).unwrap();
                (
                    kernel_oracle(&set).unwrap(),
                    M::identity(big_n, big_n) - k * c(2.0),
                )
            }
            _ => {
                let m = rng.random_range(1..n);
                let b = random_state(m, &mut rng).unwrap();
                let bop = LinearOp::prepare(&b).unwrap();
                let inner = reflection_about(b.amplitudes());
                let id = M::identity(1 << (n - m), 1 << (n - m));
                (
                    subsystem_zero_oracle(m, &bop, n).unwrap(),
                    kron(&id, &inner),
                )
            }
        };
        let s = random_state(n, &mut rng).unwrap();
        let mut structured = s.clone();
        oracle.apply(&mut structured).unwrap();
        worst = worst.max(max_diff(structured.amplitudes(), &matvec_state(&dense, &s)));
    }
    report(
        "6",
        "structured vs dense oracles, 100 instances",
        start,
        Duration::from_secs(30),
        worst < 1e-12,
        format!("max deviation {worst:.2e}, instances per variant {counts:?}"),
    );
}

#[test]
fn criterion_07_kernel_reduction() {
    let start = Instant::now();
    let n = 4;
    let mut ok = true;
    for w in 0..16 {
        let k = kernel_oracle(&KernelSet::new(M::identity(16, 16), &[w]).unwrap()).unwrap();
        let p = phase_oracle_single(w, n).unwrap();
        for x in 0..16 {
            let mut a = StateVector::basis(n, x).unwrap();
            let mut b = a.clone();
            k.apply(&mut a).unwrap();
            p.apply(&mut b).unwrap();
            let (sa, sb) = (a.amplitude(x), b.amplitude(x));
            ok &= sa.re.to_bits() == sb.re.to_bits() && sa.re.is_sign_negative() == (x == w);
            ok &= a
                .amplitudes()
                .iter()
                .enumerate()
                .all(|(y, v)| y == x || *v == c(0.0));
        }
    }
    report(
        "7",
        "identity kernel equals single-target oracle, n = 4",
        start,
        Duration::from_secs(1),
        ok,
        "all 16 sign patterns identical".into(),
    );
}

#[test]
fn criterion_08_circuits_and_qasm() {
    let start = Instant::now();
    let mut worst_op: f64 = 0.0;
    let mut worst_trip: f64 = 0.0;
    let mut checked = 0;
    let mut check = |circuit: &steered_grover::circuit::CircuitIR, expected: &M| {
        let dense = circuit.to_dense().unwrap();
        worst_op = worst_op.max(max_diff_up_to_phase(&dense, expected));
        let text = emit_qasm(circuit).unwrap();
        let parsed = parse_qasm(&text).unwrap().to_dense().unwrap();
        worst_trip = worst_trip.max(
            (parsed - &dense)
                .iter()
                .map(|x| x.norm())
                .fold(0.0, f64::max),
        );
        checked += 1;
    };

    for n in 2..=5 {
        let mut e0 = vec![c(0.0); 1 << n];
        e0[0] = c(1.0);
        check(&build_zero_oracle(n).unwrap(), &reflection_about(&e0));
        let h = vec![c(1.0 / ((1 << n) as f64).sqrt()); 1 << n];
        check(
            &build_diffuser(&Steering::Hadamard, n).unwrap(),
            &(-reflection_about(&h)),
        );
        let selection = "10110"[..n].to_string();
        let w = usize::from_str_radix(&selection, 2).unwrap();
        let mut ew = vec![c(0.0); 1 << n];
        ew[w] = c(1.0);
        check(
            &build_diffuser(&Steering::Selection(selection), n).unwrap(),
            &(-reflection_about(&ew)),
        );
    }
    for n in 1..=5 {
        for w in 0..1usize << n {
            let bits = format!("{w:0n$b}");
            let mut e = vec![c(0.0); 1 << n];
            e[w] = c(1.0);
            check(&build_basis_oracle(&bits).unwrap(), &reflection_about(&e));
        }
    }

    // Grover circuits against the simulator's canonical-diffuser run.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_run: f64 = 0.0;
    for n in 2..=5 {
        let big_n = 1usize << n;
        let marked = random_subset(&mut rng, n);
        let marked = &marked[..marked.len().min(big_n / 4).max(1)];
        let bits: Vec<String> = marked.iter().map(|&w| format!("{w:0n$b}")).collect();
        for iterations in 0..=3 {
            let circuit = build_grover_circuit(&GroverCircuitSpec {
                n_qubits: n,
                trial: Steering::Hadamard,
                oracle: OracleSpec::Basis(bits.clone()),
                iterations,
            })
            .unwrap();
            let from_circuit = circuit.evaluate(&StateVector::zero(n).unwrap()).unwrap();
            let plan = GroverPlan::new(
                &StateVector::hadamard(n).unwrap(),
                &TargetSet::subset(n, marked).unwrap(),
            )
            .unwrap();
            if plan.parallel().is_some() {
                continue;
            }
            let sim = plan.run(Some(iterations), false).unwrap().final_state;
            worst_run = worst_run.max(1.0 - from_circuit.fidelity(&sim).unwrap());
            let text = emit_qasm(&circuit).unwrap();
            let again = evaluate_qasm(&text, &StateVector::zero(n).unwrap()).unwrap();
            worst_trip = worst_trip.max(again.max_abs_diff(&from_circuit).unwrap());
        }
    }

    report(
        "8",
        "circuit equivalence and QASM round trip, n <= 5",
        start,
        Duration::from_secs(10),
        worst_op < 1e-10 && worst_trip < 1e-10 && worst_run < 1e-10,
        format!(
            "{checked} circuits, operator deviation {worst_op:.2e}, round trip {worst_trip:.2e}, \
             grover fidelity defect {worst_run:.2e}"
        ),
    );
}

fn random_database(rng: &mut ChaCha8Rng, r: usize, m: usize) -> QuantumDatabase {
    QuantumDatabase::new((0..1 << r).map(|_| random_vector(1 << m, rng)).collect()).unwrap()
}

#[test]
fn criterion_09_bridge_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_amp: f64 = 0.0;
    let mut worst_dist: f64 = 0.0;
    for _ in 0..50 {
        let r = rng.random_range(0..=4);
        let m = rng.random_range(1..=4);
        let db = random_database(&mut rng, r, m);
        let q = Query::new(random_vector(1 << m, &mut rng)).unwrap();
        let scale = 1.0 / ((1usize << r) as f64).sqrt();
        let amps = trial_overlap_identity(&db, &q).unwrap();
        for (k, a) in amps.iter().enumerate() {
            let expected = vdot(q.amplitudes(), db.entry(k)) * scale;
            worst_amp = worst_amp.max((a - expected).norm());
        }
        let g = SearchSetup::new(&db, &q, Variant::GForm, Completion::default()).unwrap();
        let ab = SearchSetup::new(&db, &q, Variant::AbForm, Completion::default()).unwrap();
        for iterations in 0..=g.plan().r_star() + 1 {
            let dg = g.distributions(iterations).unwrap();
            let dab = ab.distributions(iterations).unwrap();
            let d = dg
                .full
                .iter()
                .zip(&dab.full)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            worst_dist = worst_dist.max(d);
        }
    }
    report(
        "9",
        "bridge identity and variant equivalence, 50 instances",
        start,
        Duration::from_secs(30),
        worst_amp < 1e-12 && worst_dist < 1e-10,
        format!("amplitude error {worst_amp:.2e}, distribution gap {worst_dist:.2e}"),
    );
}

#[test]
fn criterion_10_end_to_end_search() {
    let start = Instant::now();
    let (r, m) = (3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let entries = random_orthonormal_columns(1 << m, 1 << r, &mut rng);
    let db = QuantumDatabase::new(entries.clone()).unwrap();
    let target = 5;
    let q = Query::new(entries[target].clone()).unwrap();
    let classical = classical_argmax(&db, &q).unwrap();
    let res = search(&db, &q, Variant::GForm, 1234, 10_000).unwrap();
    let bound = (FRAC_PI_4 * 8f64.sqrt()).ceil() as usize + 1;
    let ok = res.k_star == classical.k_star
        && classical.k_star == target
        && res.marked_probability >= 0.9
        && res.oracle_calls <= bound
        && classical.calls == 8;
    report(
        "10",
        "end-to-end database search, r = 3, m = 4",
        start,
        Duration::from_secs(10),
        ok,
        format!(
            "k* = {} (classical {}), P(marked) = {:.4}, quantum calls {} (bound {bound}) vs classical {}",
            res.k_star, classical.k_star, res.marked_probability, res.oracle_calls, classical.calls
        ),
    );
}

#[test]
fn criterion_10_pattern_circuit_structure() {
    let start = Instant::now();
    // The parallel correction of the mixed region has no circuit form, so
    // compare on an instance from the standard region.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (db, q, setup) = loop {
        let db = random_database(&mut rng, 2, 2);
        let q = Query::new(random_vector(4, &mut rng)).unwrap();
        let setup = SearchSetup::new(&db, &q, Variant::AbForm, Completion::default()).unwrap();
        if setup.plan().parallel().is_none() {
            break (db, q, setup);
        }
    };
    let circuit = pattern_match_circuit(&db, &q, Variant::AbForm, 2).unwrap();
    let names: Vec<&str> = circuit.ops().iter().map(|o| o.name()).collect();
    let oracle = ["B_dg", "x", "x", "cz", "x", "x", "B"];
    let diffuser = ["A_dg", "x", "x", "x", "x", "mcz", "x", "x", "x", "x", "A"];
    let mut expected = vec!["A"];
    for _ in 0..2 {
        expected.extend(oracle);
        expected.extend(diffuser);
    }
    let sim = setup.plan().run(Some(2), false).unwrap().final_state;
    let out = circuit.evaluate(&StateVector::zero(4).unwrap()).unwrap();
    let defect = 1.0 - out.fidelity(&sim).unwrap();
    let ok = names == expected && defect < 1e-10;
    report(
        "10b",
        "reorganized pattern-match circuit structure, r = 2, m = 2",
        start,
        Duration::from_secs(5),
        ok,
        format!(
            "{} ops, fidelity defect with simulator {defect:.2e}",
            names.len()
        ),
    );
}

#[test]
fn large_scale_claim() {
    let start = Instant::now();
    let mut cfg = RunConfig::new(Command::Predict);
    cfg.size = Some(10_000);
    cfg.marked = Some(1);
    let predicted = cmd_predict(&cfg).unwrap();
    let expected = (std::f64::consts::PI * 100.0 / 4.0 - 0.5).round() as usize;

    let n = 14;
    let target = 0x2a5b;
    let plan = GroverPlan::new(
        &StateVector::hadamard(n).unwrap(),
        &TargetSet::single(n, target).unwrap(),
    )
    .unwrap();
    let run = plan.run(None, false).unwrap();
    let p = run.final_state.amplitude(target).norm_sqr();
    let ok = predicted.r_star == expected && expected == 78 && p > 0.99 && plan.r_star() <= 101;
    report(
        "extra",
        "N = 10000 analytic r*, full 14-qubit simulation",
        start,
        Duration::from_secs(60),
        ok,
        format!(
            "predict r* = {} (P {:.6}); n = 14 ran {} iterations, P(target) = {p:.6}",
            predicted.r_star, predicted.success_probability, run.iterations
        ),
    );
}
