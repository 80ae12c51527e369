//! Random weight systems for property tests and the acceptance suite.
//!
//! Quasi-symmetric systems come from 1–4 primitive directions in `[−3, 3]ᵏ`
//! carrying 2–4 weights each, with signed lengths in `[−3, 3]` summing to
//! zero per line. Non-quasi-symmetric Calabi–Yau systems unbalance one line
//! by an extra weight `a·ℓ̄` and restore the total with two weights on fresh
//! lines summing to `−a·ℓ̄`. Every result is passed through
//! [`reduce_to_image`], which preserves both predicates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::lattice::primitive;
use crate::weights::{reduce_to_image, weights_to_matrix, WeightSystem};
use crate::IntVector;

const ENTRY: i64 = 3;
const LENGTH: i64 = 3;

fn random_vector<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..k).map(|_| rng.gen_range(-ENTRY..=ENTRY)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn line_of(v: &[i64]) -> IntVector {
    let big: IntVector = v.iter().map(|&x| BigInt::from(x)).collect();
    primitive(&big).expect("nonzero")
}

fn random_direction<R: Rng + ?Sized>(rng: &mut R, k: usize, used: &BTreeSet<IntVector>) -> Vec<i64> {
    loop {
        let v = random_vector(rng, k);
        let p = line_of(&v);
        if !used.contains(&p) {
            return p.iter().map(|x| i64::try_from(x).unwrap()).collect();
        }
    }
}

/// Nonzero lengths in `[−3, 3]`, 2–4 of them, summing to zero.
fn balanced_lengths<R: Rng + ?Sized>(rng: &mut R) -> Vec<i64> {
    let count = rng.gen_range(2..=4);
    loop {
        let mut lengths: Vec<i64> = (0..count - 1)
            .map(|_| {
                let x = rng.gen_range(1..=LENGTH);
                if rng.gen_bool(0.5) {
                    x
                } else {
                    -x
                }
            })
            .collect();
        let last = -lengths.iter().sum::<i64>();
        if last != 0 && last.abs() <= LENGTH {
            lengths.push(last);
            return lengths;
        }
    }
}

fn finish<R: Rng + ?Sized>(rng: &mut R, mut weights: Vec<Vec<i64>>) -> WeightSystem {
    weights.shuffle(rng);
    let columns: Vec<IntVector> = weights
        .iter()
        .map(|w| w.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let raw = weights_to_matrix(&columns).expect("nonempty");
    reduce_to_image(&raw).expect("nonzero weights").0
}

/// Balanced lines in `ℤᵏ` before reduction, and the set of lines used.
fn qs_weights<R: Rng + ?Sized>(rng: &mut R, k: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    // ℤ¹ has a single line through the origin
    let lines = if k == 1 { 1 } else { rng.gen_range(k..=4) };
    let mut used = BTreeSet::new();
    let mut directions = Vec::new();
    let mut weights = Vec::new();
    for _ in 0..lines {
        let d = random_direction(rng, k, &used);
        used.insert(line_of(&d));
        for n in balanced_lengths(rng) {
            weights.push(d.iter().map(|x| n * x).collect());
        }
        directions.push(d);
    }
    (weights, directions)
}

pub fn random_quasi_symmetric<R: Rng + ?Sized>(rng: &mut R) -> WeightSystem {
    let k = rng.gen_range(1..=3);
    let (weights, _) = qs_weights(rng, k);
    finish(rng, weights)
}

/// Calabi–Yau but not quasi-symmetric; always of rank at least 2.
pub fn random_non_qs_calabi_yau<R: Rng + ?Sized>(rng: &mut R) -> WeightSystem {
    let k = rng.gen_range(2..=3);
    let (mut weights, directions) = qs_weights(rng, k);
    let lines: BTreeSet<IntVector> = directions.iter().map(|d| line_of(d)).collect();
    let chosen = directions.choose(rng).unwrap().clone();
    let a = rng.gen_range(1..=LENGTH) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let extra: Vec<i64> = chosen.iter().map(|x| a * x).collect();
    loop {
        let u = random_vector(rng, k);
        let w: Vec<i64> = extra.iter().zip(&u).map(|(e, x)| -e - x).collect();
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let (lu, lw) = (line_of(&u), line_of(&w));
        if lines.contains(&lu) || lines.contains(&lw) || lu == lw {
            continue;
        }
        weights.push(extra);
        weights.push(u);
        weights.push(w);
        return finish(rng, weights);
    }
}

pub fn random_qs_or_cy<R: Rng + ?Sized>(rng: &mut R) -> WeightSystem {
    if rng.gen_bool(0.5) {
        random_quasi_symmetric(rng)
    } else {
        random_non_qs_calabi_yau(rng)
    }
}

/// Weights in `±` pairs: 1–4 random vectors, each with its negative.
pub fn random_self_dual<R: Rng + ?Sized>(rng: &mut R) -> WeightSystem {
    let k = rng.gen_range(1..=3);
    let pairs = rng.gen_range(k..=4.max(k));
    let mut weights = Vec::new();
    for _ in 0..pairs {
        let v = random_vector(rng, k);
        weights.push(v.iter().map(|x| -x).collect());
        weights.push(v);
    }
    finish(rng, weights)
}
