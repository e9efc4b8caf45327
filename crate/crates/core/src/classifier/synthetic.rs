//! Seeded categorical data with a known dependence on the goal, used when
//! the real benchmark file is not available.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// CSV text with columns `id, a0..a{k-1}, y`. The goal is positive with
/// probability 0.4; each attribute copies a goal-dependent value with
/// probability `signal` and is uniform over `arity` categories otherwise.
pub fn synthetic_csv(rows: usize, attributes: usize, arity: u32, signal: f64, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::from("id");
    for j in 0..attributes {
        write!(out, ",a{j}").unwrap();
    }
    out.push_str(",y\n");
    for i in 0..rows {
        let y = rng.random_bool(0.4);
        write!(out, "{}", i + 1).unwrap();
        for j in 0..attributes {
            let v = if rng.random_bool(signal) {
                // Positive rows lean to the low categories, negative rows to
                // the high ones; attributes differ by a rotation.
                let base = if y { 0 } else { arity / 2 };
                (base + j as u32 % arity.max(1)) % arity
            } else {
                rng.random_range(0..arity)
            };
            write!(out, ",v{v}").unwrap();
        }
        writeln!(out, ",{}", u8::from(y)).unwrap();
    }
    out
}

/// Schema matching [`synthetic_csv`].
pub fn synthetic_schema() -> super::SchemaSpec {
    let mut s = super::SchemaSpec::new("y");
    s.id = Some("id".into());
    s
}
