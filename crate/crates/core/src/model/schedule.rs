use std::fmt;

use crate::error::{Error, Result};

/// How the coordinates of a system are updated within one time step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum UpdateSchedule {
    /// All coordinates at once.
    #[default]
    Synchronous,
    /// One coordinate at a time in the given order (zero-based indices); each update
    /// sees the ones before it.
    Sequential(Vec<usize>),
}

impl UpdateSchedule {
    /// A sequential schedule; `order` must be a permutation of `0..n`.
    pub fn sequential(order: Vec<usize>, n: usize) -> Result<Self> {
        let s = UpdateSchedule::Sequential(order);
        s.check(n)?;
        Ok(s)
    }

    /// Verify the schedule against `n` variables.
    pub fn check(&self, n: usize) -> Result<()> {
        let UpdateSchedule::Sequential(order) = self else {
            return Ok(());
        };
        if order.len() != n {
            return Err(Error::Invalid(format!(
                "schedule lists {} variables, system has {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n {
                return Err(Error::Invalid(format!("schedule refers to x{} of {n}", i + 1)));
            }
            if seen[i] {
                return Err(Error::Invalid(format!("schedule repeats x{}", i + 1)));
            }
            seen[i] = true;
        }
        Ok(())
    }

    /// Parse `2,1,3` (1-based indices).
    pub fn parse_order(text: &str, n: usize) -> Result<Self> {
        let order = text
            .split(',')
            .map(|t| {
                let t = t.trim().trim_start_matches('x');
                t.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| Error::Invalid(format!("bad schedule entry '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::sequential(order, n)
    }
}

impl fmt::Display for UpdateSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateSchedule::Synchronous => write!(f, "synchronous"),
            UpdateSchedule::Sequential(order) => {
                let s: Vec<String> = order.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "{}", s.join(","))
            }
        }
    }
}
