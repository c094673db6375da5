use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::ffpoly::PrimeField;

/// A point of F_p^n. Coordinates are residues in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct State(Vec<u32>);

impl State {
    pub fn new(coords: Vec<u32>) -> Self {
        State(coords)
    }

    pub fn zeros(n: usize) -> Self {
        State(vec![0; n])
    }

    /// Checked construction: every coordinate must be a residue of `field`.
    pub fn in_field(coords: Vec<u32>, field: PrimeField) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= field.characteristic()) {
            return Err(Error::Invalid(format!("coordinate {bad} is not an element of {field}")));
        }
        Ok(State(coords))
    }

    /// Parse a digit string such as `011`. Only fields with `p <= 10` have digit encodings.
    pub fn from_digits(s: &str, field: PrimeField) -> Result<Self> {
        if field.characteristic() > 10 {
            return Err(Error::Unsupported(format!("digit strings need p <= 10, got {field}")));
        }
        let coords = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d < field.characteristic())
                    .ok_or_else(|| Error::Invalid(format!("'{c}' is not a digit of {field} in state '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(State(coords))
    }

    /// Digit-string rendering (`(0,1,1)` becomes `011`); wider fields fall back to
    /// comma separation.
    pub fn digits(&self) -> String {
        if self.0.iter().all(|&c| c < 10) {
            self.0.iter().map(|c| char::from(b'0' + *c as u8)).collect()
        } else {
            self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for State {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for State {
    fn from(v: Vec<u32>) -> Self {
        State(v)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}
