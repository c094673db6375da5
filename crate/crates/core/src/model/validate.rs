use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ffpoly::{Polynomial, PrimeField};

/// One structural problem with a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A coordinate polynomial has the wrong number of variables.
    Arity {
        coordinate: usize,
        expected: usize,
        found: usize,
    },
    Field {
        coordinate: usize,
        expected: PrimeField,
        found: PrimeField,
    },
    NoChoices {
        coordinate: usize,
    },
    NegativeProbability {
        coordinate: usize,
        choice: usize,
    },
    ProbabilitySum {
        coordinate: usize,
        sum: BigRational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity {
                coordinate,
                expected,
                found,
            } => write!(
                f,
                "f{}: polynomial in {found} variables, system has {expected}",
                coordinate + 1
            ),
            Violation::Field {
                coordinate,
                expected,
                found,
            } => write!(
                f,
                "f{}: defined over {found}, system is over {expected}",
                coordinate + 1
            ),
            Violation::NoChoices { coordinate } => {
                write!(f, "f{}: no candidate functions", coordinate + 1)
            }
            Violation::NegativeProbability { coordinate, choice } => write!(
                f,
                "f{}: choice {} has a negative probability",
                coordinate + 1,
                choice + 1
            ),
            Violation::ProbabilitySum { coordinate, sum } => {
                write!(f, "f{}: probabilities sum to {}", coordinate + 1, format_rational(sum))
            }
        }
    }
}

/// Decimal form when the expansion terminates within a few digits, `a/b` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let ten = BigInt::from(10);
    let mut scaled = r.abs();
    let mut digits = 0;
    while !scaled.is_integer() && digits < 9 {
        scaled *= BigRational::from_integer(ten.clone());
        digits += 1;
    }
    if !scaled.is_integer() {
        return r.to_string();
    }
    let s = scaled.numer().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

/// Structural checks for a deterministic system with these coordinate functions.
pub fn validate_pds(field: PrimeField, functions: &[Polynomial]) -> Vec<Violation> {
    let n = functions.len();
    let mut out = Vec::new();
    for (i, f) in functions.iter().enumerate() {
        if f.nvars() != n {
            out.push(Violation::Arity {
                coordinate: i,
                expected: n,
                found: f.nvars(),
            });
        }
        if f.field() != field {
            out.push(Violation::Field {
                coordinate: i,
                expected: field,
                found: f.field(),
            });
        }
    }
    out
}

/// Structural checks for a probabilistic system: per coordinate, a nonempty list of
/// `(polynomial, probability)` with nonnegative probabilities summing to exactly 1.
pub fn validate_probabilistic(field: PrimeField, choices: &[Vec<(Polynomial, BigRational)>]) -> Vec<Violation> {
    let n = choices.len();
    let mut out = Vec::new();
    for (i, options) in choices.iter().enumerate() {
        if options.is_empty() {
            out.push(Violation::NoChoices { coordinate: i });
            continue;
        }
        let mut sum = BigRational::zero();
        for (j, (f, p)) in options.iter().enumerate() {
            if f.nvars() != n {
                out.push(Violation::Arity {
                    coordinate: i,
                    expected: n,
                    found: f.nvars(),
                });
            }
            if f.field() != field {
                out.push(Violation::Field {
                    coordinate: i,
                    expected: field,
                    found: f.field(),
                });
            }
            if p.is_negative() {
                out.push(Violation::NegativeProbability {
                    coordinate: i,
                    choice: j,
                });
            }
            sum += p;
        }
        if !sum.is_one() {
            out.push(Violation::ProbabilitySum { coordinate: i, sum });
        }
    }
    out
}
