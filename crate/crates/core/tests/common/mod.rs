#![allow(dead_code)]

use rand::Rng;
use strata_core::composition::{closure, enumerate_omega, ReducedNormFilter, ThetaPoset};
use strata_core::word::{base_cell, Letter, Word};

fn ups(n: usize, d: usize) -> Vec<Letter> {
    if n + 2 > d {
        return Vec::new();
    }
    (0..=n).map(|i| Letter::plus(i, n - i)).collect()
}

fn downs(n: usize) -> Vec<Letter> {
    if n < 2 {
        return Vec::new();
    }
    (0..=n - 2).map(|i| Letter::minus(i, n - 2 - i)).collect()
}

/// A uniformly-ish random reduced closed walk from the base cell with at most `max_len` letters.
pub fn random_reduced_walk<R: Rng>(rng: &mut R, d: usize, max_len: usize) -> Word {
    let base = base_cell(d);
    'attempt: loop {
        let len = 2 * rng.gen_range(0..=max_len / 2);
        let mut cell = base;
        let mut letters: Vec<Letter> = Vec::new();
        for step in 0..len {
            let remaining = len - step - 1;
            let mut options: Vec<Letter> = ups(cell, d)
                .into_iter()
                .filter(|_| (cell + 2 - base) / 2 <= remaining)
                .chain(downs(cell))
                .collect();
            if let Some(prev) = letters.last() {
                options.retain(|l| !l.is_inverse_of(prev));
            }
            if options.is_empty() {
                continue 'attempt;
            }
            let l = options[rng.gen_range(0..options.len())];
            cell = l.target();
            letters.push(l);
        }
        return Word::new(letters);
    }
}

/// A random closed walk from the base cell, not necessarily reduced.
pub fn random_walk<R: Rng>(rng: &mut R, d: usize, max_len: usize) -> Word {
    let base = base_cell(d);
    let len = 2 * rng.gen_range(0..=max_len / 2);
    let mut cell = base;
    let mut letters = Vec::new();
    for step in 0..len {
        let remaining = len - step - 1;
        let options: Vec<Letter> = ups(cell, d)
            .into_iter()
            .filter(|_| (cell + 2 - base) / 2 <= remaining)
            .chain(downs(cell))
            .collect();
        let l = options[rng.gen_range(0..options.len())];
        cell = l.target();
        letters.push(l);
    }
    Word::new(letters)
}

/// Random letters of the degree-`d` alphabet, with no walk structure.
pub fn random_letters<R: Rng>(rng: &mut R, d: usize, len: usize) -> Word {
    let alphabet: Vec<Letter> = (d % 2..=d.saturating_sub(2))
        .step_by(2)
        .flat_map(|n| ups(n, d))
        .flat_map(|l| [l, l.inverse()])
        .collect();
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

/// Closure of a random subset of the codimension-2 patterns plus a few deeper ones.
pub fn random_closed_theta<R: Rng>(rng: &mut R, d: usize) -> ThetaPoset {
    let p: f64 = rng.gen();
    let mut seeds: Vec<_> = enumerate_omega(d, ReducedNormFilter::Eq(2))
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    seeds.extend(
        enumerate_omega(d, ReducedNormFilter::AtLeast(3))
            .into_iter()
            .filter(|_| rng.gen_bool(0.05)),
    );
    closure(&seeds, d).expect("seeds lie in Omega")
}
