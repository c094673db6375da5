//! Random systems and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use polydyn::ffpoly::{index_point, interpolate_values, space_size, Polynomial, PrimeField};
use polydyn::model::{Pds, ProbabilisticPds, State};
use rand::seq::index::sample;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture exists")
}

/// A function of `n` variables that depends on at most `max_inputs` of them, with a
/// uniformly random value table over its inputs.
pub fn random_function<R: Rng>(rng: &mut R, field: PrimeField, n: usize, max_inputs: usize) -> Polynomial {
    let k = rng.gen_range(0..=max_inputs.min(n));
    let mut inputs = sample(rng, n, k).into_vec();
    inputs.sort_unstable();
    let p = field.characteristic();
    let size = space_size(field, k).expect("small") as usize;
    let values: Vec<u32> = (0..size).map(|_| rng.gen_range(0..p)).collect();
    let local = interpolate_values(&values, field, k, u64::MAX).expect("small table");
    local.rename(&inputs, n)
}

pub fn random_pds<R: Rng>(rng: &mut R, field: PrimeField, n: usize, max_inputs: usize) -> Pds {
    let functions = (0..n).map(|_| random_function(rng, field, n, max_inputs)).collect();
    Pds::new(field, functions).expect("consistent arity")
}

/// Up to `max_selections` combinations of candidate functions, uniform probabilities.
pub fn random_probabilistic<R: Rng>(rng: &mut R, n: usize, max_selections: u64) -> ProbabilisticPds {
    let field = PrimeField::binary();
    let mut budget = max_selections;
    let choices = (0..n)
        .map(|_| {
            let r = rng.gen_range(1..=budget.min(3)) as usize;
            budget /= r as u64;
            (0..r).map(|_| random_function(rng, field, n, 2)).collect()
        })
        .collect();
    ProbabilisticPds::uniform(field, choices).expect("consistent arity")
}

pub fn all_states(field: PrimeField, n: usize) -> impl Iterator<Item = State> {
    let size = space_size(field, n).expect("enumerable");
    (0..size).map(move |i| State::new(index_point(i, field, n)))
}

pub fn brute_steady_states(f: &Pds) -> Vec<State> {
    all_states(f.field(), f.nvars())
        .filter(|x| &f.step(x).unwrap() == x)
        .collect()
}

/// Cycles found by walking from every state, as sorted state sets keyed by length.
pub fn brute_cycles(f: &Pds) -> BTreeMap<usize, BTreeSet<BTreeSet<State>>> {
    let mut out: BTreeMap<usize, BTreeSet<BTreeSet<State>>> = BTreeMap::new();
    for x0 in all_states(f.field(), f.nvars()) {
        let mut seen = Vec::new();
        let mut x = x0;
        while !seen.contains(&x) {
            seen.push(x.clone());
            x = f.step(&x).unwrap();
        }
        let start = seen.iter().position(|s| s == &x).unwrap();
        let cycle: BTreeSet<State> = seen[start..].iter().cloned().collect();
        out.entry(cycle.len()).or_default().insert(cycle);
    }
    out
}

/// Edges `(source, target)` where flipping only the source changes the target's update.
pub fn brute_edges(f: &Pds) -> BTreeSet<(usize, usize)> {
    let n = f.nvars();
    let p = f.field().characteristic();
    let mut edges = BTreeSet::new();
    for x in all_states(f.field(), n) {
        let fx = f.step(&x).unwrap();
        for s in 0..n {
            for a in 0..p {
                let mut coords = x.coords().to_vec();
                coords[s] = a;
                let fy = f.step(&State::new(coords)).unwrap();
                for t in 0..n {
                    if fx[t] != fy[t] {
                        edges.insert((s, t));
                    }
                }
            }
        }
    }
    edges
}

/// Sign of a Boolean edge from the differences `f_t(x, x_s = 1) - f_t(x, x_s = 0)`
/// taken as integers: 1 positive, -1 negative, 0 when both occur.
pub fn brute_sign(f: &Pds, s: usize, t: usize) -> i32 {
    let mut diffs = BTreeSet::new();
    for x in all_states(f.field(), f.nvars()).filter(|x| x[s] == 0) {
        let mut coords = x.coords().to_vec();
        coords[s] = 1;
        let d = f.step(&State::new(coords)).unwrap()[t] as i32 - f.step(&x).unwrap()[t] as i32;
        if d != 0 {
            diffs.insert(d);
        }
    }
    match diffs.len() {
        1 => *diffs.iter().next().unwrap(),
        _ => 0,
    }
}

/// Update the coordinates one at a time in `order`.
pub fn step_sequential(f: &Pds, order: &[usize], x: &State) -> State {
    let mut coords = x.coords().to_vec();
    for &i in order {
        coords[i] = f.function(i).eval(&coords);
    }
    State::new(coords)
}

/// All selections of a probabilistic system, as deterministic systems.
pub fn selections(f: &ProbabilisticPds) -> Vec<Pds> {
    let sizes: Vec<usize> = f.choices().iter().map(Vec::len).collect();
    let mut out = Vec::new();
    let mut current = vec![0; sizes.len()];
    loop {
        out.push(f.select(&current).unwrap());
        let mut i = 0;
        while i < sizes.len() {
            current[i] += 1;
            if current[i] < sizes[i] {
                break;
            }
            current[i] = 0;
            i += 1;
        }
        if i == sizes.len() {
            return out;
        }
    }
}
