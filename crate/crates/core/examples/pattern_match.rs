//! Quantum database search: find the entry with the largest overlap with a
//! query, and compare against the classical scan.
//!
//! ```bash
//! cargo run --example pattern_match
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steered_grover::patternmatch::{classical_argmax, search, QuantumDatabase, Query, Variant};
use steered_grover::random::random_orthonormal_columns;
use steered_grover::Result;

fn main() -> Result<()> {
    let (r, m) = (3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let entries = random_orthonormal_columns(1 << m, 1 << r, &mut rng);
    let db = QuantumDatabase::new(entries.clone())?;
    let query = Query::new(entries[5].clone())?;

    let classical = classical_argmax(&db, &query)?;
    for variant in [Variant::GForm, Variant::AbForm] {
        let res = search(&db, &query, variant, 1, 10_000)?;
        println!(
            "{variant:?}: k* = {}, confidence {:.4}, P(marked) {:.4}, {} oracle calls",
            res.k_star, res.conditional_confidence, res.marked_probability, res.oracle_calls
        );
    }
    println!(
        "classical scan: k* = {} after {} calls",
        classical.k_star, classical.calls
    );

    // Five entries padded to eight with vectors orthogonal to the query.
    let query = Query::new(entries[2].clone())?;
    let small = QuantumDatabase::padded_for(entries[..5].to_vec(), None, &query)?;
    let res = search(&small, &query, Variant::GForm, 1, 10_000)?;
    println!(
        "padded database ({} live of {}): k* = {}",
        small.live_entries(),
        small.len(),
        res.k_star
    );
    Ok(())
}
