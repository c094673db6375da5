//! Random Boolean networks for benchmarking.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ffpoly::PrimeField;
use crate::model::UpdateSchedule;
use crate::translate::{BooleanExpression, ModelDocument, Rules};

/// Number of regulators of one coordinate: `floor(avg)` or `ceil(avg)` so that the
/// expectation is `avg`, clamped to `1..=n`.
fn draw_indegree<R: Rng>(rng: &mut R, n: usize, avg: f64) -> usize {
    let low = avg.floor();
    let frac = avg - low;
    let k = if rng.gen_bool(frac.clamp(0.0, 1.0)) {
        low + 1.0
    } else {
        low
    };
    (k as usize).clamp(1, n)
}

/// Whether a truth table over `k` inputs (index bit `k-1-j` is input `j`) depends on
/// every input.
fn depends_on_all(table: &[bool], k: usize) -> bool {
    (0..k).all(|j| {
        let bit = 1 << (k - 1 - j);
        (0..table.len()).any(|row| row & bit == 0 && table[row] != table[row | bit])
    })
}

/// Disjunctive normal form of a truth table over the given regulators.
fn dnf(table: &[bool], regulators: &[usize]) -> BooleanExpression {
    let k = regulators.len();
    let mut terms: Vec<BooleanExpression> = table
        .iter()
        .enumerate()
        .filter(|(_, &v)| v)
        .map(|(row, _)| {
            let mut literals: Vec<BooleanExpression> = regulators
                .iter()
                .enumerate()
                .map(|(j, &r)| {
                    if row >> (k - 1 - j) & 1 == 1 {
                        BooleanExpression::Var(r)
                    } else {
                        BooleanExpression::not(BooleanExpression::Var(r))
                    }
                })
                .collect();
            if literals.len() == 1 {
                literals.pop().expect("one literal")
            } else {
                BooleanExpression::And(literals)
            }
        })
        .collect();
    match terms.len() {
        0 => BooleanExpression::Const(false),
        1 => terms.pop().expect("one term"),
        _ => BooleanExpression::Or(terms),
    }
}

/// A Boolean network on `n` nodes. Each node draws its in-degree around `avg_indegree`,
/// distinct regulators uniformly (self-regulation allowed) and a truth table uniformly
/// among those depending on every drawn regulator.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, avg_indegree: f64) -> Result<ModelDocument> {
    if n == 0 {
        return Err(Error::Invalid("a network needs at least one node".into()));
    }
    if !(avg_indegree.is_finite() && avg_indegree > 0.0) {
        return Err(Error::Invalid(format!(
            "average in-degree must be positive, got {avg_indegree}"
        )));
    }
    if avg_indegree > 16.0 {
        return Err(Error::Invalid(format!(
            "average in-degree {avg_indegree} is above the supported 16"
        )));
    }
    let mut rules = Vec::with_capacity(n);
    for _ in 0..n {
        let k = draw_indegree(rng, n, avg_indegree);
        let mut regulators: Vec<usize> = sample(rng, n, k).into_vec();
        regulators.sort_unstable();
        let table = loop {
            let table: Vec<bool> = (0..1usize << k).map(|_| rng.gen_bool(0.5)).collect();
            if depends_on_all(&table, k) {
                break table;
            }
        };
        rules.push(dnf(&table, &regulators));
    }
    ModelDocument::new(PrimeField::binary(), UpdateSchedule::Synchronous, Rules::Boolean(rules))
}

/// Mean number of distinct variables per rule of a Boolean document.
pub fn mean_indegree(doc: &ModelDocument) -> Option<f64> {
    let Rules::Boolean(rules) = doc.rules() else {
        return None;
    };
    fn collect(e: &BooleanExpression, seen: &mut Vec<usize>) {
        match e {
            BooleanExpression::Var(i) => {
                if !seen.contains(i) {
                    seen.push(*i);
                }
            }
            BooleanExpression::Const(_) => {}
            BooleanExpression::Not(a) => collect(a, seen),
            BooleanExpression::And(es) | BooleanExpression::Or(es) => es.iter().for_each(|a| collect(a, seen)),
        }
    }
    let total: usize = rules
        .iter()
        .map(|e| {
            let mut seen = Vec::new();
            collect(e, &mut seen);
            seen.len()
        })
        .sum();
    Some(total as f64 / rules.len() as f64)
}
