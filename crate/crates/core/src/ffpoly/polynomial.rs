use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldElement, PrimeField};
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Products with at least this many term pairs try the dense accumulator.
const DENSE_MUL_MIN_PAIRS: usize = 1 << 12;
/// Largest dense accumulator, in monomials.
const DENSE_MUL_MAX_CELLS: u64 = 1 << 20;

/// A sparse polynomial in `F_p[x1..xn] / (xi^p - xi)`.
///
/// Terms are kept sorted by decreasing lex monomial with nonzero coefficients and fully
/// reduced exponents, so structural equality is polynomial-function equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        let c = field.reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::one(), c)] };
        Polynomial { field, nvars, terms }
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    /// The variable `x_{index+1}`. Panics if `index >= nvars`.
    pub fn var(field: PrimeField, nvars: usize, index: usize) -> Self {
        assert!(
            index < nvars,
            "variable index {index} out of range for {nvars} variables"
        );
        Polynomial {
            field,
            nvars,
            terms: vec![(Monomial::var(index), 1)],
        }
    }

    /// Every variable `x1..xn` as polynomials.
    pub fn vars(field: PrimeField, nvars: usize) -> Vec<Polynomial> {
        (0..nvars).map(|i| Self::var(field, nvars, i)).collect()
    }

    /// Build from arbitrary terms, reducing exponents and combining like terms.
    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, i64)>,
    ) -> Result<Self> {
        let mut raw = Vec::new();
        for (m, c) in terms {
            if let Some(v) = m.last_var() {
                if v >= nvars {
                    return Err(Error::mismatch(format!(
                        "variable x{} used in a ring with {nvars} variables",
                        v + 1
                    )));
                }
            }
            raw.push((m.reduced(field), field.reduce(c)));
        }
        Ok(Self::from_raw(field, nvars, raw))
    }

    /// Terms must already be exponent-reduced and in range.
    pub(crate) fn from_raw(field: PrimeField, nvars: usize, mut terms: Vec<(Monomial, u32)>) -> Self {
        normalize(field, &mut terms);
        Polynomial { field, nvars, terms }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in decreasing lex order.
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Polynomial::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Variables appearing in some term, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for v in m.vars() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter_map(|(v, &s)| s.then_some(v)).collect()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::mismatch(format!(
                "fields differ: {} vs {}",
                self.field, other.field
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::mismatch(format!(
                "variable counts differ: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.add_scaled(other, self.field.neg(1)))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * other`, merging the two sorted term lists.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u32) -> Polynomial {
        let field = self.field;
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((b[j].0.clone(), field.mul(c, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(a[i].1, field.mul(c, b[j].1));
                    if s != 0 {
                        terms.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a[i..]);
        terms.extend(b[j..].iter().map(|(m, k)| (m.clone(), field.mul(c, *k))));
        Polynomial {
            field,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), self.field.mul(c, *k)))
                .collect(),
        }
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if c != 1 => self.scale(self.field.inv(c).expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// `c * m * self` with field-equation reduction.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let field = self.field;
        let c = c % field.characteristic();
        if c == 0 {
            return Polynomial::zero(field, self.nvars);
        }
        let mut overflow = false;
        let terms: Vec<(Monomial, u32)> = self
            .terms
            .iter()
            .map(|(t, k)| {
                let prod = t.mul_raw(m);
                if prod.is_reduced(field) {
                    (prod, field.mul(c, *k))
                } else {
                    overflow = true;
                    (prod.reduced(field), field.mul(c, *k))
                }
            })
            .collect();
        if overflow {
            Polynomial::from_raw(field, self.nvars, terms)
        } else {
            // Multiplication by a monomial is monotone when nothing wraps around.
            Polynomial {
                field,
                nvars: self.nvars,
                terms,
            }
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.len().saturating_mul(other.len()) >= DENSE_MUL_MIN_PAIRS {
            if let Some(product) = self.mul_dense(other) {
                return product;
            }
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(small.len() * large.len());
        let field = self.field;
        for (ms, cs) in &small.terms {
            for (ml, cl) in &large.terms {
                let m = ms.mul_reduced(ml, field);
                let c = field.mul(*cs, *cl);
                let e = acc.entry(m).or_insert(0);
                *e = field.add(*e, c);
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        Polynomial::from_raw(field, self.nvars, terms)
    }

    /// Product accumulated in an array indexed by the exponent digits of the
    /// variables involved; `None` when that array would exceed `DENSE_MUL_MAX_CELLS`.
    fn mul_dense(&self, other: &Polynomial) -> Option<Polynomial> {
        let field = self.field;
        let p = field.characteristic();
        let mut vars = self.support();
        vars.extend(other.support());
        vars.sort_unstable();
        vars.dedup();
        let k = vars.len();
        let cells = u64::from(p)
            .checked_pow(k as u32)
            .filter(|&c| c <= DENSE_MUL_MAX_CELLS)? as usize;
        let mut position = vec![usize::MAX; self.nvars];
        for (j, &v) in vars.iter().enumerate() {
            position[v] = j;
        }
        let digits = |poly: &Polynomial| -> Vec<u32> {
            let mut out = vec![0; poly.len() * k];
            for (t, (m, _)) in poly.terms.iter().enumerate() {
                for (v, e) in m.factors() {
                    out[t * k + position[v]] = e;
                }
            }
            out
        };
        let (da, db) = (digits(self), digits(other));
        let mut place = vec![1usize; k];
        for j in 1..k {
            place[j] = place[j - 1] * p as usize;
        }
        let mut acc = vec![0u64; cells];
        let modulus = u64::from(p);
        for (ta, (_, ca)) in self.terms.iter().enumerate() {
            let ea = &da[ta * k..(ta + 1) * k];
            for (tb, (_, cb)) in other.terms.iter().enumerate() {
                let eb = &db[tb * k..(tb + 1) * k];
                let mut index = 0;
                for j in 0..k {
                    let mut e = ea[j] + eb[j];
                    if e >= p {
                        e -= p - 1;
                    }
                    index += e as usize * place[j];
                }
                acc[index] = (acc[index] + u64::from(*ca) * u64::from(*cb)) % modulus;
            }
        }
        let terms = acc
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(mut index, &c)| {
                let mut factors = Vec::new();
                for &v in &vars {
                    factors.push((v, (index % p as usize) as u32));
                    index /= p as usize;
                }
                (Monomial::from_factors(factors), c as u32)
            })
            .collect();
        Some(Polynomial::from_raw(field, self.nvars, terms))
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Value at a point of F_p^n.
    pub fn evaluate(&self, point: &[u32]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::mismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(FieldElement::new(self.field, self.eval(point) as i64))
    }

    /// Unchecked evaluation; `point` must have at least `nvars` reduced coordinates.
    pub fn eval(&self, point: &[u32]) -> u32 {
        let field = self.field;
        self.terms
            .iter()
            .fold(0, |acc, (m, c)| field.add(acc, field.mul(*c, m.evaluate(point, field))))
    }

    /// Replace `x_{var+1}` by the constant `value`.
    pub fn assign(&self, var: usize, value: u32) -> Polynomial {
        if !self.depends_on(var) {
            return self.clone();
        }
        let field = self.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(var);
                if e == 0 {
                    return Some((m.clone(), *c));
                }
                let k = field.mul(*c, field.pow(value, e as u64));
                (k != 0).then(|| (m.div(&Monomial::power(var, e)), k))
            })
            .collect();
        Polynomial::from_raw(field, self.nvars, terms)
    }

    /// Compose: replace every `x_i` by `g[i]`.
    pub fn substitute(&self, g: &[Polynomial]) -> Result<Polynomial> {
        self.substitute_limited(g, None)
    }

    /// Like [`substitute`](Self::substitute) but fails once any intermediate exceeds `limit` terms.
    pub fn substitute_limited(&self, g: &[Polynomial], limit: Option<usize>) -> Result<Polynomial> {
        if g.len() != self.nvars {
            return Err(Error::mismatch(format!(
                "substituting {} polynomials into {} variables",
                g.len(),
                self.nvars
            )));
        }
        let target_nvars = match g.first() {
            Some(first) => first.nvars,
            None => self.nvars,
        };
        for gi in g {
            if gi.field != self.field || gi.nvars != target_nvars {
                return Err(Error::mismatch("substituted polynomials live in different rings"));
            }
        }
        let check = |p: &Polynomial| -> Result<()> {
            match limit {
                Some(l) if p.len() > l => Err(Error::Resource(format!(
                    "composition produced {} terms (limit {l})",
                    p.len()
                ))),
                _ => Ok(()),
            }
        };
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(self.field, target_nvars);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(self.field, target_nvars, *c as i64);
            for (v, e) in m.factors() {
                let gp = powers.entry((v, e)).or_insert_with(|| g[v].pow(e as u64));
                prod = prod.mul_unchecked(gp);
                check(&prod)?;
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.add_scaled(&prod, 1);
            check(&acc)?;
        }
        Ok(acc)
    }

    /// Move variable `v` to `map[v]` in a ring with `nvars` variables.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.rename(map), *c)).collect();
        Polynomial::from_raw(self.field, nvars, terms)
    }
}

fn normalize(field: PrimeField, terms: &mut Vec<(Monomial, u32)>) {
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
    for (m, c) in terms.drain(..) {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
            _ => {
                if let Some((_, 0)) = out.last() {
                    out.pop();
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, 0)) = out.last() {
        out.pop();
    }
    *terms = out;
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.field.neg(1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            match (m.is_one(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{m}")?,
                (false, c) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}, {} vars]", self, self.field, self.nvars)
    }
}
