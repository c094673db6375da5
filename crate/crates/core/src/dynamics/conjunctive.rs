//! Conjunctive (AND-only) and disjunctive (OR-only) Boolean networks.
//!
//! For a strongly connected conjunctive network with loop number `L`, the periodic
//! points behave like rotations of a binary word of length `L`: the number of cycles
//! of exact length `d | L` is the number of aperiodic binary necklaces of length `d`,
//! `(1/d) * sum_{e | d} mu(d/e) 2^e`. Disjunctive networks are conjugate to
//! conjunctive ones by complementing every coordinate.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::attractors::attractors_enumerative;
use super::wiring::{wiring_diagram, WiringDiagram, DEFAULT_EDGE_CHECK_CAP};
use crate::error::{Error, Result};
use crate::ffpoly::{space_size, Polynomial};
use crate::model::Pds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NetworkClass {
    Conjunctive,
    Disjunctive,
}

impl fmt::Display for NetworkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NetworkClass::Conjunctive => "conjunctive",
            NetworkClass::Disjunctive => "disjunctive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjunctiveSummary {
    pub class: NetworkClass,
    /// gcd of the lengths of all directed cycles of the wiring diagram.
    pub loop_number: usize,
    /// `(d, number of cycles of exact length d)` for every divisor `d` of the loop
    /// number; `d = 1` counts the fixed points.
    pub cycle_counts: Vec<(usize, BigUint)>,
    /// Agreement with exhaustive enumeration, when the state space fits the cap.
    pub enumeration_agrees: Option<bool>,
}

impl ConjunctiveSummary {
    pub fn attractor_count(&self) -> BigUint {
        self.cycle_counts.iter().map(|(_, c)| c).sum()
    }
}

/// Whether `f` is a nonconstant product of variables with coefficient 1.
fn is_and(f: &Polynomial) -> bool {
    matches!(f.terms(), [(m, 1)] if !m.is_one())
}

/// `1 + f(1 + x)`, the complement-conjugate of `f`.
fn dual(f: &Polynomial) -> Polynomial {
    let field = f.field();
    let n = f.nvars();
    let one = Polynomial::one(field, n);
    let flipped: Vec<Polynomial> = (0..n).map(|i| &Polynomial::var(field, n, i) + &one).collect();
    &f.substitute(&flipped).expect("same ring") + &one
}

/// Classify a Boolean system as conjunctive or disjunctive. Single-input rules
/// `f_i = x_j` qualify as both; such systems are reported conjunctive.
pub fn classify(f: &Pds) -> Option<NetworkClass> {
    if f.field().characteristic() != 2 {
        return None;
    }
    if f.functions().iter().all(is_and) {
        Some(NetworkClass::Conjunctive)
    } else if f.functions().iter().all(|g| is_and(&dual(g))) {
        Some(NetworkClass::Disjunctive)
    } else {
        None
    }
}

/// Loop number of a strongly connected graph: with BFS levels from node 0, the gcd of
/// `level(u) + 1 - level(v)` over all edges `u -> v`.
pub fn loop_number(wiring: &WiringDiagram) -> usize {
    let adj = wiring.adjacency();
    let mut level = vec![usize::MAX; adj.len()];
    level[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g = 0usize;
    for (u, out) in adj.iter().enumerate() {
        for &v in out {
            let diff = (level[u] + 1).abs_diff(level[v]);
            g = gcd(g, diff);
        }
    }
    g
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            result = -result;
        }
        q += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of aperiodic binary necklaces of length `d`.
pub fn necklace_count(d: usize) -> BigUint {
    let (mut plus, mut minus) = (BigUint::zero(), BigUint::zero());
    for e in divisors(d) {
        let term = BigUint::one() << e;
        match mobius(d / e) {
            1 => plus += term,
            -1 => minus += term,
            _ => {}
        }
    }
    (plus - minus) / BigUint::from(d)
}

/// Structural attractor summary of a strongly connected conjunctive or disjunctive
/// network. When `p^n <= cap` the counts are checked against enumeration.
pub fn conjunctive_analysis(f: &Pds, cap: u64) -> Result<ConjunctiveSummary> {
    let class = classify(f)
        .ok_or_else(|| Error::Unsupported("the network is not conjunctive or disjunctive over F_2".into()))?;
    let wiring = wiring_diagram(f, DEFAULT_EDGE_CHECK_CAP);
    if !wiring.is_strongly_connected() {
        return Err(Error::Unsupported(
            "conjunctive analysis needs a strongly connected wiring diagram".into(),
        ));
    }
    let l = loop_number(&wiring);
    let cycle_counts: Vec<(usize, BigUint)> = divisors(l).into_iter().map(|d| (d, necklace_count(d))).collect();
    let enumeration_agrees = match space_size(f.field(), f.nvars()) {
        Some(size) if size <= cap => {
            let report = attractors_enumerative(f, cap)?;
            let mut found: BTreeMap<usize, BigUint> = BTreeMap::new();
            if !report.steady_states.is_empty() {
                found.insert(1, BigUint::from(report.steady_states.len()));
            }
            for c in &report.limit_cycles {
                *found.entry(c.len()).or_insert_with(BigUint::zero) += 1u32;
            }
            let expected: BTreeMap<usize, BigUint> =
                cycle_counts.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
            Some(found == expected)
        }
        _ => None,
    };
    Ok(ConjunctiveSummary {
        class,
        loop_number: l,
        cycle_counts,
        enumeration_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::attractors::DEFAULT_ENUMERATION_CAP;
    use crate::ffpoly::{parse_polynomial, PrimeField};

    fn pds(fs: &[&str]) -> Pds {
        let f2 = PrimeField::binary();
        let n = fs.len();
        Pds::new(f2, fs.iter().map(|s| parse_polynomial(s, f2, n).unwrap()).collect()).unwrap()
    }

    fn counts(s: &ConjunctiveSummary) -> Vec<(usize, u32)> {
        s.cycle_counts
            .iter()
            .map(|(d, c)| (*d, u32::try_from(c.clone()).unwrap()))
            .collect()
    }

    #[test]
    fn rings() {
        let s = conjunctive_analysis(&pds(&["x2", "x3", "x1"]), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.loop_number, 3);
        assert_eq!(counts(&s), [(1, 2), (3, 2)]);
        assert_eq!(s.enumeration_agrees, Some(true));
        let s = conjunctive_analysis(&pds(&["x2", "x1"]), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(counts(&s), [(1, 2), (2, 1)]);
        assert_eq!(s.enumeration_agrees, Some(true));
    }

    #[test]
    fn coprime_cycles_leave_only_fixed_points() {
        // x1 -> x2 -> x1 and x1 -> x2 -> x3 -> x1.
        let s = conjunctive_analysis(&pds(&["x2*x3", "x1", "x2"]), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.loop_number, 1);
        assert_eq!(counts(&s), [(1, 2)]);
        assert_eq!(s.enumeration_agrees, Some(true));
    }

    #[test]
    fn two_loops_of_length_two() {
        // x1 <-> x2 and x1 <-> x3: loop number 2, so 011 <-> 100 is a 2-cycle.
        let s = conjunctive_analysis(&pds(&["x2*x3", "x1", "x1"]), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.loop_number, 2);
        assert_eq!(counts(&s), [(1, 2), (2, 1)]);
        assert_eq!(s.enumeration_agrees, Some(true));
    }

    #[test]
    fn disjunctive_networks() {
        // x1 <- x2 OR x3, x2 <- x1, x3 <- x2: cycles of length 2 and 3.
        let f = pds(&["x2+x3+x2*x3", "x1", "x2"]);
        assert_eq!(classify(&f), Some(NetworkClass::Disjunctive));
        let s = conjunctive_analysis(&f, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.loop_number, 1);
        assert_eq!(s.enumeration_agrees, Some(true));
    }

    #[test]
    fn rejects_other_networks() {
        assert!(conjunctive_analysis(&pds(&["x2+1", "x1"]), 1 << 10).is_err());
        assert!(conjunctive_analysis(&pds(&["x2", "x2"]), 1 << 10).is_err());
    }

    #[test]
    fn necklaces() {
        let expected = [2u32, 1, 2, 3, 6, 9, 18, 30];
        for (d, &e) in (1..=8).zip(&expected) {
            assert_eq!(necklace_count(d), BigUint::from(e), "d = {d}");
        }
    }
}
