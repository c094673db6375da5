//! Buchberger's algorithm in `F_p[x] / (x_i^p - x_i)`.
//!
//! The field equations are adjoined as implicit generators: their leading monomials
//! `x_v^p` take part in the Gebauer–Möller bookkeeping, and the S-polynomial of `g`
//! with `x_v^p - x_v` is the reduced product `x_v^(p-e) * g`, where `e` is the exponent
//! of `x_v` in the leading monomial of `g`. Everything here works in declaration-order
//! lex; other precedences are handled by renaming variables in `groebner::mod`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::ffpoly::{Monomial, Polynomial, PrimeField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Partner {
    Poly(usize),
    FieldEquation(usize),
}

#[derive(Debug, Clone)]
struct Pair {
    first: usize,
    second: Partner,
    lcm: Monomial,
}

impl Pair {
    fn key(&self) -> (u32, &Monomial) {
        (self.lcm.degree(), &self.lcm)
    }
}

pub(crate) struct Buchberger {
    field: PrimeField,
    nvars: usize,
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    /// Whether `x_v^p - x_v` is still part of the (virtual) basis.
    field_active: Vec<bool>,
    pairs: Vec<Pair>,
    index: LeadIndex,
    unit: bool,
    /// Give up once a reduction grows beyond this many terms.
    term_limit: Option<usize>,
    exceeded: bool,
}

impl Buchberger {
    pub(crate) fn new(field: PrimeField, nvars: usize) -> Self {
        Buchberger {
            field,
            nvars,
            polys: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            field_active: vec![true; nvars],
            pairs: Vec::new(),
            index: LeadIndex::new(nvars),
            unit: false,
            term_limit: None,
            exceeded: false,
        }
    }

    pub(crate) fn with_term_limit(mut self, limit: Option<usize>) -> Self {
        self.term_limit = limit;
        self
    }

    /// Whether a reduction hit the term limit; the basis is then incomplete.
    pub(crate) fn exceeded(&self) -> bool {
        self.exceeded
    }

    /// Feed one generator; it is reduced against the current basis first.
    pub(crate) fn add_generator(&mut self, g: &Polynomial) {
        if self.unit || self.exceeded {
            return;
        }
        match self.reduce(g) {
            Some(h) => self.insert(h),
            None => self.exceeded = true,
        }
    }

    pub(crate) fn run(&mut self) {
        while !self.unit && !self.exceeded {
            let Some(pair) = self.select_pair() else {
                break;
            };
            let s = self.s_polynomial(&pair);
            match self.reduce(&s) {
                Some(h) => self.insert(h),
                None => self.exceeded = true,
            }
        }
    }

    /// The reduced Gröbner basis (field equations left implicit), sorted by
    /// increasing leading monomial.
    pub(crate) fn into_reduced_basis(self) -> Vec<Polynomial> {
        if self.unit {
            return vec![Polynomial::one(self.field, self.nvars)];
        }
        let mut basis: Vec<Polynomial> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter_map(|(p, a)| a.then_some(p))
            .collect();
        basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        // Minimality holds by construction; only tails need interreduction. A tail
        // monomial below LM(g_i) can only be divisible by smaller leading monomials.
        for i in 0..basis.len() {
            let (lm, c) = {
                let (m, c) = basis[i].leading_term().expect("nonzero basis element");
                (m.clone(), c)
            };
            let head = Polynomial::from_raw(self.field, self.nvars, vec![(lm, c)]);
            let tail = basis[i].add_scaled(&head, self.field.neg(1));
            let smaller: Vec<&Polynomial> = basis[..i].iter().collect();
            let reduced_tail = reduce_by(&tail, &smaller, self.field, self.nvars);
            basis[i] = head.add_scaled(&reduced_tail, 1).monic();
        }
        basis
    }

    fn insert(&mut self, h: Polynomial) {
        if h.is_zero() {
            return;
        }
        let h = h.monic();
        if h.is_constant() {
            self.unit = true;
            self.pairs.clear();
            return;
        }
        let lm = h.leading_monomial().expect("nonzero").clone();
        let idx = self.polys.len();
        self.polys.push(h);
        self.lms.push(lm.clone());
        self.active.push(true);
        self.update(idx, &lm);
    }

    /// Gebauer–Möller pair update for the new element `idx`.
    fn update(&mut self, idx: usize, lm: &Monomial) {
        let p = self.field.characteristic();
        let mut new_pairs = Vec::new();
        // A new pair (h, g) is redundant when some other basis element g2 has
        // lcm(h, g2) dividing lcm(h, g); that holds exactly when LM(g2) divides
        // lcm(h, g). Among equal lcms one representative survives, none if any of
        // them is coprime with h (product criterion).
        let mut candidates: Vec<usize> = Vec::new();
        for (j, active) in self.active.iter().enumerate() {
            if j != idx && *active && !lm.is_coprime(&self.lms[j]) {
                candidates.push(j);
            }
        }
        for j in candidates {
            let lcm = lm.lcm(&self.lms[j]);
            let dominated = self.index.divisors(&lcm, &self.lms).any(|k| {
                if k == j || k == idx {
                    return false;
                }
                let other = lm.lcm(&self.lms[k]);
                other != lcm || k < j || lm.is_coprime(&self.lms[k])
            });
            if !dominated {
                new_pairs.push(Pair {
                    first: idx,
                    second: Partner::Poly(j),
                    lcm,
                });
            }
        }
        // Pairs with x_v^p - x_v for the variables of LM(h). Any element whose leading
        // monomial divides this lcm yields a strictly smaller one.
        for (v, e) in lm.factors() {
            if !self.field_active[v] {
                continue;
            }
            let lcm = lm.mul_raw(&Monomial::power(v, p - e));
            let dominated = self.index.divisors(&lcm, &self.lms).any(|k| k != idx);
            if !dominated {
                new_pairs.push(Pair {
                    first: idx,
                    second: Partner::FieldEquation(v),
                    lcm,
                });
            }
        }

        // Chain criterion on old pairs.
        let lms = &self.lms;
        let lm_of = |q: Partner| match q {
            Partner::Poly(j) => lms[j].clone(),
            Partner::FieldEquation(v) => Monomial::power(v, p),
        };
        self.pairs.retain(|pair| {
            if !lm.divides(&pair.lcm) {
                return true;
            }
            let l1 = lm.lcm(&lms[pair.first]);
            let l2 = lm.lcm(&lm_of(pair.second));
            l1 == pair.lcm || l2 == pair.lcm
        });
        self.pairs.extend(new_pairs);

        // Basis elements whose leading monomial is now redundant.
        for j in 0..self.active.len() {
            if j != idx && self.active[j] && lm.divides(&self.lms[j]) {
                self.active[j] = false;
                self.index.remove(j, &self.lms[j]);
            }
        }
        self.index.insert(idx, lm);
        if let (Some(v), 1) = (lm.first_var(), lm.factors().count()) {
            // lm = x_v^e with e < p divides x_v^p.
            self.field_active[v] = false;
        }
    }

    /// Normal selection by the true degree of the lcm (no sugar), ties broken by the
    /// term order.
    fn select_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.key().cmp(&b.key()))
            .map(|(i, _)| i)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> Polynomial {
        let f = &self.polys[pair.first];
        match pair.second {
            Partner::Poly(j) => spoly(f, &self.polys[j]),
            Partner::FieldEquation(v) => field_spoly(f, v),
        }
    }

    fn reduce(&self, f: &Polynomial) -> Option<Polynomial> {
        reduce_indexed(
            f,
            &self.polys,
            &self.lms,
            &self.index,
            self.field,
            self.nvars,
            self.term_limit,
        )
    }
}

/// Leading monomials of the active basis elements, bucketed by their most significant
/// variable. A monomial `m` can only be divisible by entries in the buckets of its
/// own variables.
struct LeadIndex {
    buckets: Vec<Vec<usize>>,
    constants: Vec<usize>,
}

impl LeadIndex {
    fn new(nvars: usize) -> Self {
        LeadIndex {
            buckets: vec![Vec::new(); nvars],
            constants: Vec::new(),
        }
    }

    fn insert(&mut self, idx: usize, lm: &Monomial) {
        match lm.first_var() {
            Some(v) => self.buckets[v].push(idx),
            None => self.constants.push(idx),
        }
    }

    fn remove(&mut self, idx: usize, lm: &Monomial) {
        let bucket = match lm.first_var() {
            Some(v) => &mut self.buckets[v],
            None => &mut self.constants,
        };
        bucket.retain(|&j| j != idx);
    }

    fn divisors<'a>(&'a self, m: &'a Monomial, lms: &'a [Monomial]) -> impl Iterator<Item = usize> + 'a {
        self.constants
            .iter()
            .chain(m.vars().flat_map(move |v| self.buckets[v].iter()))
            .copied()
            .filter(move |&j| lms[j].divides(m))
    }
}

fn reduce_indexed(
    f: &Polynomial,
    polys: &[Polynomial],
    lms: &[Monomial],
    index: &LeadIndex,
    field: PrimeField,
    nvars: usize,
    limit: Option<usize>,
) -> Option<Polynomial> {
    if f.is_zero() {
        return Some(f.clone());
    }
    let limit = limit.unwrap_or(usize::MAX);
    let mut work: BTreeMap<Monomial, u32> = f.terms().iter().cloned().collect();
    let mut remainder: Vec<(Monomial, u32)> = Vec::new();
    while let Some((t, c)) = work.pop_last() {
        match index.divisors(&t, lms).min_by_key(|&j| polys[j].len()) {
            None => remainder.push((t, c)),
            Some(j) => subtract_multiple(&mut work, &t, c, &polys[j], field),
        }
        if work.len() + remainder.len() > limit {
            return None;
        }
    }
    Some(Polynomial::from_raw(field, nvars, remainder))
}

/// `work -= (c / lc(g)) * (t / lm(g)) * tail(g)`; the leading terms cancel.
fn subtract_multiple(work: &mut BTreeMap<Monomial, u32>, t: &Monomial, c: u32, g: &Polynomial, field: PrimeField) {
    let (lm, lc) = g.leading_term().expect("nonzero");
    let q = t.div(lm);
    let factor = field.neg(field.mul(c, field.inv(lc).expect("nonzero")));
    for (m, k) in g.terms().iter().skip(1) {
        let prod = q.mul_reduced(m, field);
        let add = field.mul(factor, *k);
        match work.entry(prod) {
            Entry::Occupied(mut e) => {
                let s = field.add(*e.get(), add);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                e.insert(add);
            }
        }
    }
}

/// S-polynomial of two nonzero polynomials.
pub(crate) fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let lcm = lf.lcm(lg);
    let a = f.mul_term(&lcm.div(lf), field.inv(cf).expect("nonzero"));
    let b = g.mul_term(&lcm.div(lg), field.inv(cg).expect("nonzero"));
    a.add_scaled(&b, field.neg(1))
}

/// S-polynomial of `f` with the field equation `x_v^p - x_v`, taken modulo the field
/// equations.
pub(crate) fn field_spoly(f: &Polynomial, var: usize) -> Polynomial {
    let p = f.field().characteristic();
    let e = f.leading_monomial().expect("nonzero").exponent(var);
    debug_assert!(e > 0);
    f.mul_term(&Monomial::power(var, p - e), 1)
}

/// Full reduction of `f` by the leading terms of `basis`.
pub(crate) fn reduce_by(f: &Polynomial, basis: &[&Polynomial], field: PrimeField, nvars: usize) -> Polynomial {
    if basis.is_empty() || f.is_zero() {
        return f.clone();
    }
    let leads: Vec<&Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero basis element"))
        .collect();
    let mut work: BTreeMap<Monomial, u32> = f.terms().iter().cloned().collect();
    let mut remainder: Vec<(Monomial, u32)> = Vec::new();
    while let Some((t, c)) = work.pop_last() {
        let reducer = leads
            .iter()
            .enumerate()
            .filter(|(_, lm)| lm.divides(&t))
            .min_by_key(|(i, _)| basis[*i].len())
            .map(|(i, _)| i);
        match reducer {
            None => remainder.push((t, c)),
            Some(i) => subtract_multiple(&mut work, &t, c, basis[i], field),
        }
    }
    Polynomial::from_raw(field, nvars, remainder)
}
