use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::field::PrimeField;

/// A power product `x_{v1}^{e1} * ... * x_{vk}^{ek}`.
///
/// Stored sparsely as `(variable, exponent)` pairs sorted by variable index with every
/// exponent positive. Variables are zero-based internally; `x1` is index 0.
///
/// `Ord` is the lexicographic order with `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: SmallVec<[(u32, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize) -> Self {
        Self::power(index, 1)
    }

    pub fn power(index: usize, exp: u32) -> Self {
        let mut factors = SmallVec::new();
        if exp > 0 {
            factors.push((index as u32, exp));
        }
        Monomial { factors }
    }

    /// Build from a dense exponent vector.
    pub fn from_exponents(exponents: &[u32]) -> Self {
        Monomial {
            factors: exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v as u32, e))
                .collect(),
        }
    }

    /// Build from arbitrary `(variable, exponent)` pairs, merging repeated variables.
    pub fn from_factors(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut factors: SmallVec<[(u32, u32); 4]> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(v, e)| (v as u32, e))
            .collect();
        factors.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: SmallVec<[(u32, u32); 4]> = SmallVec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    /// Dense exponent vector of length `nvars`.
    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(v, e) in &self.factors {
            out[v as usize] = e;
        }
        out
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.factors
            .binary_search_by_key(&(var as u32), |&(v, _)| v)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.factors.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors.iter().map(|&(v, _)| v as usize)
    }

    /// Smallest variable index present, i.e. the most significant variable in lex order.
    pub fn first_var(&self) -> Option<usize> {
        self.factors.first().map(|&(v, _)| v as usize)
    }

    /// Largest variable index present.
    pub fn last_var(&self) -> Option<usize> {
        self.factors.last().map(|&(v, _)| v as usize)
    }

    /// Plain product, no field-equation reduction.
    pub fn mul_raw(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    /// Product reduced by `x^p = x`.
    pub fn mul_reduced(&self, other: &Monomial, field: PrimeField) -> Monomial {
        let p = field.characteristic();
        self.merge(other, |a, b| reduce_exponent(a + b, p))
    }

    /// Apply `x^p = x` to every exponent.
    pub fn reduced(&self, field: PrimeField) -> Monomial {
        let p = field.characteristic();
        Monomial {
            factors: self.factors.iter().map(|&(v, e)| (v, reduce_exponent(e, p))).collect(),
        }
    }

    pub fn is_reduced(&self, field: PrimeField) -> bool {
        self.factors.iter().all(|&(_, e)| e < field.characteristic())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::max)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.factors.len() > other.factors.len() {
            return false;
        }
        let mut j = 0;
        for &(v, e) in &self.factors {
            loop {
                match other.factors.get(j) {
                    None => return false,
                    Some(&(ov, oe)) if ov == v => {
                        if oe < e {
                            return false;
                        }
                        j += 1;
                        break;
                    }
                    Some(&(ov, _)) if ov < v => j += 1,
                    Some(_) => return false,
                }
            }
        }
        true
    }

    /// `self / other`; the caller guarantees `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut factors = SmallVec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            let mut d = 0;
            if let Some(&(ov, oe)) = other.factors.get(j) {
                if ov == v {
                    d = oe;
                    j += 1;
                }
            }
            if e > d {
                factors.push((v, e - d));
            }
        }
        Monomial { factors }
    }

    /// Rename every variable `v` to `map[v]`.
    pub fn rename(&self, map: &[usize]) -> Monomial {
        Monomial::from_factors(self.factors().map(|(v, e)| (map[v], e)))
    }

    /// Evaluate at a point of F_p^n.
    pub fn evaluate(&self, point: &[u32], field: PrimeField) -> u32 {
        let mut acc = 1;
        for &(v, e) in &self.factors {
            let x = point[v as usize];
            if x == 0 {
                return 0;
            }
            acc = field.mul(acc, field.pow(x, e as u64));
        }
        acc
    }

    fn merge(&self, other: &Monomial, combine: impl Fn(u32, u32) -> u32) -> Monomial {
        let mut factors = SmallVec::with_capacity(self.factors.len() + other.factors.len());
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    factors.push((a[i].0, combine(a[i].1, 0)));
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push((b[j].0, combine(0, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a[i].0, combine(a[i].1, b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend(a[i..].iter().map(|&(v, e)| (v, combine(e, 0))));
        factors.extend(b[j..].iter().map(|&(v, e)| (v, combine(0, e))));
        Monomial { factors }
    }
}

/// `x^e = x^(((e-1) mod (p-1)) + 1)` for `e >= 1`.
#[inline]
pub(crate) fn reduce_exponent(e: u32, p: u32) -> u32 {
    if e < p {
        e
    } else {
        (e - 1) % (p - 1) + 1
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        for (&(va, ea), &(vb, eb)) in a.iter().zip(b.iter()) {
            if va != vb {
                // The monomial carrying the lower-indexed (more significant) variable wins.
                return vb.cmp(&va);
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", v + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_matches_dense_comparison() {
        let all: Vec<Vec<u32>> = (0..27).map(|i| vec![i / 9, (i / 3) % 3, i % 3]).collect();
        for a in &all {
            for b in &all {
                assert_eq!(m(a).cmp(&m(b)), a.cmp(b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn one_is_minimal() {
        assert!(Monomial::one() < Monomial::var(5));
        assert!(Monomial::var(0) > Monomial::var(1));
        assert!(m(&[0, 0, 1]) < m(&[0, 1, 0]));
    }

    #[test]
    fn exponent_reduction() {
        assert_eq!(reduce_exponent(2, 2), 1);
        assert_eq!(reduce_exponent(4, 3), 2);
        assert_eq!(reduce_exponent(3, 3), 1);
        assert_eq!(reduce_exponent(5, 3), 1);
        assert_eq!(reduce_exponent(2, 3), 2);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(m(&[2]).mul_reduced(&m(&[2]), f3), m(&[2]));
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 0, 1]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.div(&b), m(&[1, 0, 0]));
        assert_eq!(a.lcm(&m(&[0, 3, 0])), m(&[2, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 1, 1])));
        assert!(!a.is_coprime(&b));
        assert!(Monomial::one().divides(&a));
    }

    #[test]
    fn display() {
        assert_eq!(m(&[1, 2, 0]).to_string(), "x1*x2^2");
        assert_eq!(Monomial::one().to_string(), "1");
    }
}
