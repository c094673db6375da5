use num_rational::BigRational;
use num_traits::One;

use super::validate::{validate_pds, validate_probabilistic};
use super::{State, UpdateSchedule};
use crate::error::{Error, Result};
use crate::ffpoly::{Polynomial, PrimeField};

/// Default cap on the number of terms of any coordinate produced by composition.
pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

/// A polynomial dynamical system `f = (f1, ..., fn): F_p^n -> F_p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pds {
    field: PrimeField,
    functions: Vec<Polynomial>,
}

impl Pds {
    pub fn new(field: PrimeField, functions: Vec<Polynomial>) -> Result<Self> {
        let violations = validate_pds(field, &functions);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Invalid(msgs.join("; ")));
        }
        Ok(Pds { field, functions })
    }

    /// `f_i = x_i` for every coordinate.
    pub fn identity(field: PrimeField, n: usize) -> Self {
        Pds {
            field,
            functions: Polynomial::vars(field, n),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.functions.len()
    }

    pub fn functions(&self) -> &[Polynomial] {
        &self.functions
    }

    pub fn function(&self, i: usize) -> &Polynomial {
        &self.functions[i]
    }

    /// One synchronous update.
    pub fn step(&self, x: &State) -> Result<State> {
        if x.len() != self.nvars() {
            return Err(Error::mismatch(format!(
                "state has {} coordinates, system has {}",
                x.len(),
                self.nvars()
            )));
        }
        Ok(self.step_unchecked(x))
    }

    pub(crate) fn step_unchecked(&self, x: &[u32]) -> State {
        State::new(self.functions.iter().map(|f| f.eval(x)).collect())
    }

    /// The `m`-fold composition `f^m`.
    pub fn iterate(&self, m: usize) -> Result<Pds> {
        self.iterate_limited(m, DEFAULT_TERM_LIMIT)
    }

    pub fn iterate_limited(&self, m: usize, term_limit: usize) -> Result<Pds> {
        if m == 0 {
            return Err(Error::Invalid("iteration count must be at least 1".into()));
        }
        let mut current = self.functions.clone();
        for _ in 1..m {
            current = self
                .functions
                .iter()
                .map(|f| f.substitute_limited(&current, Some(term_limit)))
                .collect::<Result<_>>()?;
        }
        Ok(Pds {
            field: self.field,
            functions: current,
        })
    }

    /// Fold a sequential update into an equivalent synchronous system: coordinates
    /// are substituted progressively in schedule order.
    pub fn sequential_to_synchronous(&self, schedule: &UpdateSchedule) -> Result<Pds> {
        schedule.check(self.nvars())?;
        let UpdateSchedule::Sequential(order) = schedule else {
            return Ok(self.clone());
        };
        let mut current = Polynomial::vars(self.field, self.nvars());
        for &i in order {
            current[i] = self.functions[i].substitute_limited(&current, Some(DEFAULT_TERM_LIMIT))?;
        }
        Ok(Pds {
            field: self.field,
            functions: current,
        })
    }

    /// Apply `schedule` (synchronous schedules leave the system unchanged).
    pub fn with_schedule(&self, schedule: &UpdateSchedule) -> Result<Pds> {
        self.sequential_to_synchronous(schedule)
    }
}

/// One candidate update function and the probability of choosing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choice {
    pub function: Polynomial,
    pub probability: BigRational,
}

/// A probabilistic system: every coordinate picks one of its candidate functions
/// independently at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilisticPds {
    field: PrimeField,
    choices: Vec<Vec<Choice>>,
}

impl ProbabilisticPds {
    pub fn new(field: PrimeField, choices: Vec<Vec<(Polynomial, BigRational)>>) -> Result<Self> {
        let violations = validate_probabilistic(field, &choices);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Invalid(msgs.join("; ")));
        }
        Ok(ProbabilisticPds {
            field,
            choices: choices
                .into_iter()
                .map(|cs| {
                    cs.into_iter()
                        .map(|(function, probability)| Choice { function, probability })
                        .collect()
                })
                .collect(),
        })
    }

    /// Uniform distribution over each coordinate's candidates.
    pub fn uniform(field: PrimeField, choices: Vec<Vec<Polynomial>>) -> Result<Self> {
        let weighted = choices
            .into_iter()
            .map(|cs| {
                let r = cs.len().max(1) as i64;
                cs.into_iter()
                    .map(|f| (f, BigRational::new(1.into(), r.into())))
                    .collect()
            })
            .collect();
        Self::new(field, weighted)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.choices.len()
    }

    pub fn choices(&self) -> &[Vec<Choice>] {
        &self.choices
    }

    /// Number of deterministic systems obtainable by fixing one choice per coordinate.
    pub fn selection_count(&self) -> Option<u64> {
        self.choices
            .iter()
            .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
    }

    /// The deterministic system for one choice index per coordinate.
    pub fn select(&self, selection: &[usize]) -> Result<Pds> {
        if selection.len() != self.nvars() {
            return Err(Error::mismatch("selection length differs from system size"));
        }
        let functions = self
            .choices
            .iter()
            .zip(selection)
            .map(|(cs, &j)| {
                cs.get(j)
                    .map(|c| c.function.clone())
                    .ok_or_else(|| Error::Invalid(format!("choice {j} out of range")))
            })
            .collect::<Result<_>>()?;
        Pds::new(self.field, functions)
    }

    /// Whether every coordinate has a single candidate with probability one.
    pub fn is_deterministic(&self) -> bool {
        self.choices.iter().all(|c| c.len() == 1 && c[0].probability.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_polynomial;

    fn pds(rules: &[&str], field: PrimeField) -> Pds {
        let n = rules.len();
        Pds::new(
            field,
            rules.iter().map(|r| parse_polynomial(r, field, n).unwrap()).collect(),
        )
        .unwrap()
    }

    fn example() -> Pds {
        pds(
            &[
                "x1*x2*x3+x1*x2+x2*x3+x2",
                "x1*x2*x3+x1*x2+x1*x3+x1+x2",
                "x1*x2*x3+x1*x3+x2*x3+x1+x2",
            ],
            PrimeField::binary(),
        )
    }

    fn all_states(p: u32, n: usize) -> Vec<State> {
        (0..p.pow(n as u32))
            .map(|mut i| {
                let mut v = vec![0; n];
                for slot in v.iter_mut().rev() {
                    *slot = i % p;
                    i /= p;
                }
                State::new(v)
            })
            .collect()
    }

    #[test]
    fn steps_of_the_example() {
        let f = example();
        assert_eq!(f.step(&State::new(vec![0, 1, 0])).unwrap(), State::new(vec![1, 1, 1]));
        assert_eq!(f.step(&State::new(vec![0, 0, 0])).unwrap(), State::new(vec![0, 0, 0]));
        assert!(f.step(&State::new(vec![0, 0])).is_err());
        let id = Pds::identity(PrimeField::binary(), 3);
        for x in all_states(2, 3) {
            assert_eq!(id.step(&x).unwrap(), x);
        }
    }

    #[test]
    fn second_iterate_matches_printed_composition() {
        let f = example();
        assert_eq!(f.iterate(1).unwrap(), f);
        let g = f.iterate(2).unwrap();
        let expected = ["x1*x2+x2*x3", "x1*x2*x3+x1*x2+x1*x3+x1+x2", "x1*x2*x3+x2"];
        for (gi, e) in g.functions().iter().zip(expected) {
            assert_eq!(gi.to_string(), e);
        }
        for x in all_states(2, 3) {
            assert_eq!(g.step(&x).unwrap(), f.step(&f.step(&x).unwrap()).unwrap());
        }
        assert!(f.iterate(0).is_err());
    }

    #[test]
    fn swap_under_sequential_order() {
        let f2 = PrimeField::binary();
        let f = pds(&["x2", "x1"], f2);
        let seq = f
            .sequential_to_synchronous(&UpdateSchedule::sequential(vec![0, 1], 2).unwrap())
            .unwrap();
        assert_eq!(seq, pds(&["x2", "x2"], f2));
        let id = Pds::identity(f2, 3);
        let s = UpdateSchedule::sequential(vec![2, 0, 1], 3).unwrap();
        assert_eq!(id.sequential_to_synchronous(&s).unwrap(), id);
    }

    #[test]
    fn composition_cap_is_enforced() {
        let f3 = PrimeField::new(3).unwrap();
        let f = pds(&["x1*x2+x3+1", "x2*x3+x1^2", "x1+x2+x3^2"], f3);
        assert!(matches!(f.iterate_limited(4, 5), Err(Error::Resource(_))));
    }

    #[test]
    fn probabilistic_construction() {
        let f2 = PrimeField::binary();
        let x1 = parse_polynomial("x1", f2, 2).unwrap();
        let x2 = parse_polynomial("x2", f2, 2).unwrap();
        let p = ProbabilisticPds::uniform(f2, vec![vec![x1.clone(), x2.clone()], vec![x2.clone()]]).unwrap();
        assert_eq!(p.selection_count(), Some(2));
        assert_eq!(p.choices()[0][1].probability, BigRational::new(1.into(), 2.into()));
        assert_eq!(
            p.select(&[1, 0]).unwrap(),
            Pds::new(f2, vec![x2.clone(), x2.clone()]).unwrap()
        );
        assert!(!p.is_deterministic());
        let bad = ProbabilisticPds::new(
            f2,
            vec![
                vec![(x1, BigRational::new(1.into(), 2.into()))],
                vec![(x2, BigRational::one())],
            ],
        );
        assert!(bad.is_err());
    }
}
