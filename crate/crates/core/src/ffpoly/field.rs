use std::fmt;

use crate::error::{Error, Result};

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest characteristic accepted. Products of two residues must fit in a `u64`,
    /// and state spaces over bigger fields are far beyond anything enumerable anyway.
    pub const MAX_CHARACTERISTIC: u32 = 65_521;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > Self::MAX_CHARACTERISTIC as u64 {
            return Err(Error::Unsupported(format!(
                "characteristic {p} exceeds {}",
                Self::MAX_CHARACTERISTIC
            )));
        }
        Ok(PrimeField { p: p as u32 })
    }

    /// F_2, the Boolean field.
    pub const fn binary() -> Self {
        PrimeField { p: 2 }
    }

    #[inline]
    pub const fn characteristic(&self) -> u32 {
        self.p
    }

    /// Smallest prime field with at least `levels` elements.
    pub fn smallest_with_size(levels: u64) -> Result<Self> {
        let mut q = levels.max(2);
        while !is_prime(q) {
            q += 1;
        }
        PrimeField::new(q)
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            field: *self,
        }
    }

    /// All elements `0, 1, ..., p-1` in order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue together with the field it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    pub fn new(field: PrimeField, value: i64) -> Self {
        field.element(value)
    }

    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
