use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::attractors::check_space;
use crate::error::{Error, Result};
use crate::ffpoly::{index_point, point_index, PrimeField};
use crate::model::{Pds, ProbabilisticPds, State};

/// The state transition graph. Nodes are the states of F_p^n in [`point_index`]
/// order; each node lists its successors with their probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSpace {
    field: PrimeField,
    nvars: usize,
    successors: Vec<Vec<(u64, BigRational)>>,
}

impl PhaseSpace {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn node_count(&self) -> usize {
        self.successors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn state(&self, node: u64) -> State {
        State::new(index_point(node, self.field, self.nvars))
    }

    pub fn node(&self, state: &State) -> u64 {
        point_index(state, self.field)
    }

    /// Successors of `node`, sorted by target, with probabilities summing to 1.
    pub fn successors(&self, node: u64) -> &[(u64, BigRational)] {
        &self.successors[node as usize]
    }

    /// `(source, target, probability)` for every edge.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64, &BigRational)> {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(s, out)| out.iter().map(move |(t, p)| (s as u64, *t, p)))
    }

    /// Whether every node has exactly one successor.
    pub fn is_deterministic(&self) -> bool {
        self.successors.iter().all(|out| out.len() == 1)
    }

    /// Nodes whose only successor is themselves.
    pub fn fixed_points(&self) -> Vec<State> {
        (0..self.successors.len() as u64)
            .filter(|&s| matches!(self.successors(s), [(t, _)] if *t == s))
            .map(|s| self.state(s))
            .collect()
    }
}

/// Phase space of a deterministic system; at most `cap` states.
pub fn phase_space(f: &Pds, cap: u64) -> Result<PhaseSpace> {
    let field = f.field();
    let n = f.nvars();
    let size = check_space(field, n, cap)?;
    let successors = (0..size)
        .map(|i| {
            let next = f.step_unchecked(&index_point(i, field, n));
            vec![(point_index(&next, field), BigRational::one())]
        })
        .collect();
    Ok(PhaseSpace {
        field,
        nvars: n,
        successors,
    })
}

/// Phase space of a probabilistic system: every combination of choices gives an edge,
/// and edges to the same target are merged with their probabilities added. At most
/// `cap` states and `cap` transitions.
pub fn phase_space_probabilistic(f: &ProbabilisticPds, cap: u64) -> Result<PhaseSpace> {
    let field = f.field();
    let n = f.nvars();
    let size = check_space(field, n, cap)?;
    let mut successors = Vec::with_capacity(size as usize);
    let mut transitions = 0u64;
    for i in 0..size {
        let x = index_point(i, field, n);
        // Distribution of each coordinate's next value.
        let per_coordinate: Vec<BTreeMap<u32, BigRational>> = f
            .choices()
            .iter()
            .map(|cs| {
                let mut dist: BTreeMap<u32, BigRational> = BTreeMap::new();
                for c in cs {
                    *dist.entry(c.function.eval(&x)).or_insert_with(BigRational::zero) += &c.probability;
                }
                dist.retain(|_, p| !p.is_zero());
                dist
            })
            .collect();
        let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(Vec::with_capacity(n), BigRational::one())];
        for dist in &per_coordinate {
            let mut grown = Vec::with_capacity(partial.len() * dist.len());
            for (prefix, p) in &partial {
                for (v, q) in dist {
                    let mut next = prefix.clone();
                    next.push(*v);
                    grown.push((next, p * q));
                }
            }
            partial = grown;
            if partial.len() as u64 > cap {
                break;
            }
        }
        transitions += partial.len() as u64;
        if transitions > cap {
            return Err(Error::Resource(format!("phase space has more than {cap} transitions")));
        }
        let mut out: Vec<(u64, BigRational)> = partial.into_iter().map(|(y, p)| (point_index(&y, field), p)).collect();
        out.sort_by_key(|(t, _)| *t);
        successors.push(out);
    }
    Ok(PhaseSpace {
        field,
        nvars: n,
        successors,
    })
}
