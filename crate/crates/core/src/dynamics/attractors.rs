//! Steady states, limit cycles and trajectories, found algebraically or by walking
//! the state space.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ffpoly::{index_point, point_index, space_size, Polynomial};
use crate::groebner::{solve, PolynomialSystem};
use crate::model::{Pds, ProbabilisticPds, State};

/// Default bound on the number of states (or transitions) explored by enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// A periodic orbit of length >= 1, starting at its lexicographically smallest state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<State>);

impl Cycle {
    /// Rotate `states` (an orbit in update order) to start at its minimum.
    pub fn new(mut states: Vec<State>) -> Self {
        if let Some(k) = states.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(k, _)| k) {
            states.rotate_left(k);
        }
        Cycle(states)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Algebraic,
    Enumerative,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Algebraic => "algebraic",
            Method::Enumerative => "enumerative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttractorReport {
    /// Sorted.
    pub steady_states: Vec<State>,
    /// Cycles of length >= 2, sorted by length, then by first state.
    pub limit_cycles: Vec<Cycle>,
    pub method: Method,
}

impl AttractorReport {
    /// Cycles of exactly `len` states.
    pub fn cycles_of_length(&self, len: usize) -> impl Iterator<Item = &Cycle> {
        self.limit_cycles.iter().filter(move |c| c.len() == len)
    }

    /// Whether both reports contain the same attractors, ignoring the method.
    pub fn same_attractors(&self, other: &AttractorReport) -> bool {
        self.steady_states == other.steady_states && self.limit_cycles == other.limit_cycles
    }
}

/// The `f_i(x) - x_i = 0` system of a map.
fn fixed_point_system(functions: &[Polynomial], field: crate::ffpoly::PrimeField) -> Result<PolynomialSystem> {
    let n = functions.len();
    let gens = functions
        .iter()
        .enumerate()
        .map(|(i, f)| f - &Polynomial::var(field, n, i))
        .collect();
    PolynomialSystem::new(gens, field, n)
}

/// All states with `f(x) = x`, by solving `f_i(x) - x_i = 0`.
pub fn steady_states(f: &Pds) -> Result<Vec<State>> {
    solve(&fixed_point_system(f.functions(), f.field())?)
}

/// Solutions of `f^m(x) = x`, grouped into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSearch {
    pub length: usize,
    /// Orbits of exactly `length` states.
    pub cycles: Vec<Cycle>,
    /// Orbits whose length is a proper divisor of `length`, fixed points included.
    pub shorter: Vec<Cycle>,
}

impl CycleSearch {
    /// Number of solutions of `f^m(x) = x`.
    pub fn solution_count(&self) -> usize {
        self.cycles.iter().chain(&self.shorter).map(Cycle::len).sum()
    }
}

/// Limit cycles of exact length `m >= 2`, from the solutions of `f^m(x) = x`.
pub fn limit_cycles(f: &Pds, m: usize) -> Result<CycleSearch> {
    if m < 2 {
        return Err(Error::Invalid(format!("cycle length must be at least 2, got {m}")));
    }
    let g = f.iterate(m)?;
    let solutions = solve(&fixed_point_system(g.functions(), f.field())?)?;
    let mut seen = std::collections::HashSet::new();
    let (mut cycles, mut shorter) = (Vec::new(), Vec::new());
    for x in solutions {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit = vec![x.clone()];
        let mut y = f.step_unchecked(&x);
        while y != x {
            orbit.push(y.clone());
            y = f.step_unchecked(&y);
        }
        seen.extend(orbit.iter().cloned());
        let cycle = Cycle::new(orbit);
        if cycle.len() == m {
            cycles.push(cycle);
        } else {
            shorter.push(cycle);
        }
    }
    cycles.sort();
    shorter.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(CycleSearch {
        length: m,
        cycles,
        shorter,
    })
}

/// Steady states and the limit cycles of every length `2..=max_length`.
pub fn attractors_algebraic(f: &Pds, max_length: usize) -> Result<AttractorReport> {
    let steady_states = steady_states(f)?;
    let mut cycles = Vec::new();
    for m in 2..=max_length {
        cycles.extend(limit_cycles(f, m)?.cycles);
    }
    Ok(AttractorReport {
        steady_states,
        limit_cycles: cycles,
        method: Method::Algebraic,
    })
}

/// States invariant under every choice of update function: the common zeros of
/// `f_ij(x) - x_i` over all coordinates `i` and candidates `j`.
pub fn steady_states_probabilistic(f: &ProbabilisticPds) -> Result<Vec<State>> {
    let n = f.nvars();
    let field = f.field();
    let gens = f
        .choices()
        .iter()
        .enumerate()
        .flat_map(|(i, cs)| cs.iter().map(move |c| &c.function - &Polynomial::var(field, n, i)))
        .collect();
    solve(&PolynomialSystem::new(gens, field, n)?)
}

pub(crate) fn check_space(f_field: crate::ffpoly::PrimeField, n: usize, cap: u64) -> Result<u64> {
    match space_size(f_field, n) {
        Some(size) if size <= cap => Ok(size),
        _ => Err(Error::Resource(format!(
            "state space F_{}^{n} exceeds the enumeration cap of {cap} states; use the algebraic mode",
            f_field.characteristic()
        ))),
    }
}

/// Every attractor, by following each state forward until it meets a visited one.
pub fn attractors_enumerative(f: &Pds, cap: u64) -> Result<AttractorReport> {
    let field = f.field();
    let n = f.nvars();
    let size = check_space(field, n, cap)?;
    let next: Vec<u64> = (0..size)
        .map(|i| point_index(&f.step_unchecked(&index_point(i, field, n)), field))
        .collect();
    // 0 = unvisited; otherwise the walk number that first reached the state.
    let mut mark = vec![0u32; size as usize];
    let mut steady_states = Vec::new();
    let mut limit_cycles = Vec::new();
    let mut walk = 0u32;
    for start in 0..size {
        if mark[start as usize] != 0 {
            continue;
        }
        walk += 1;
        let mut x = start;
        while mark[x as usize] == 0 {
            mark[x as usize] = walk;
            x = next[x as usize];
        }
        if mark[x as usize] != walk {
            continue;
        }
        // x lies on a cycle discovered by this walk.
        let mut orbit = vec![State::new(index_point(x, field, n))];
        let mut y = next[x as usize];
        while y != x {
            orbit.push(State::new(index_point(y, field, n)));
            y = next[y as usize];
        }
        if orbit.len() == 1 {
            steady_states.extend(orbit);
        } else {
            limit_cycles.push(Cycle::new(orbit));
        }
    }
    steady_states.sort();
    limit_cycles.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(AttractorReport {
        steady_states,
        limit_cycles,
        method: Method::Enumerative,
    })
}

/// The forward orbit of a state: distinct states `x0, f(x0), ...` until the next
/// state would repeat one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub states: Vec<State>,
    /// Index in `states` of the first state of the attractor that was reached.
    pub entry: usize,
}

impl Trajectory {
    /// States of the attractor at the end of the trajectory, in update order.
    pub fn attractor(&self) -> &[State] {
        &self.states[self.entry..]
    }

    pub fn ends_in_steady_state(&self) -> bool {
        self.states.len() - self.entry == 1
    }

    /// The sequence including the first repeated state.
    pub fn path(&self) -> Vec<State> {
        let mut out = self.states.clone();
        out.push(self.states[self.entry].clone());
        out
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.states {
            write!(f, "{s} -> ")?;
        }
        if self.ends_in_steady_state() {
            f.write_str("[steady state]")
        } else {
            f.write_str("[cycle]")
        }
    }
}

pub fn trajectory(f: &Pds, x0: &State) -> Result<Trajectory> {
    if x0.len() != f.nvars() {
        return Err(Error::mismatch(format!(
            "initial state has {} coordinates, system has {}",
            x0.len(),
            f.nvars()
        )));
    }
    if let Some(&bad) = x0.iter().find(|&&v| v >= f.field().characteristic()) {
        return Err(Error::Invalid(format!(
            "initial state coordinate {bad} is not in F_{}",
            f.field().characteristic()
        )));
    }
    let mut index: HashMap<State, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut x = x0.clone();
    loop {
        if let Some(&entry) = index.get(&x) {
            return Ok(Trajectory { states, entry });
        }
        index.insert(x.clone(), states.len());
        let y = f.step_unchecked(&x);
        states.push(x);
        x = y;
    }
}
