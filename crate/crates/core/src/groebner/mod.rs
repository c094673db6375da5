//! Lexicographic Gröbner bases over F_p with the field equations adjoined, and
//! extraction of all F_p-rational solutions.

mod buchberger;
mod order;
mod solve;

pub use order::MonomialOrder;
pub use solve::{solve, solve_with_order};

use crate::error::{Error, Result};
use crate::ffpoly::{Polynomial, PrimeField};

use buchberger::{field_spoly, reduce_by, spoly, Buchberger};

/// A list of polynomial equations `g = 0` over a common ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSystem {
    generators: Vec<Polynomial>,
    field: PrimeField,
    nvars: usize,
}

impl PolynomialSystem {
    pub fn new(generators: Vec<Polynomial>, field: PrimeField, nvars: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.field() != field || g.nvars() != nvars {
                return Err(Error::mismatch(format!(
                    "generator {} lives in {} with {} variables, system is {field} with {nvars}",
                    i + 1,
                    g.field(),
                    g.nvars()
                )));
            }
        }
        Ok(PolynomialSystem {
            generators,
            field,
            nvars,
        })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

/// Reduced lex Gröbner basis of `<generators> + <x_i^p - x_i>`.
///
/// Elements are monic and sorted by increasing leading monomial. The field equations
/// themselves are implicit: every element is already reduced modulo them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    field: PrimeField,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Whether the ideal is the whole ring (no solutions).
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Normal form modulo the basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.elements, &self.order)
    }

    /// Ideal membership.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// Remainder of `f` under full multivariate division by `basis` with respect to
/// `order`, modulo the field equations.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    for g in basis {
        if g.field() != f.field() || g.nvars() != f.nvars() {
            return Err(Error::mismatch("basis and polynomial live in different rings"));
        }
    }
    check_order(order, f.nvars())?;
    let (field, nvars) = (f.field(), f.nvars());
    let internal: Vec<Polynomial> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_internal(g, order))
        .collect();
    let refs: Vec<&Polynomial> = internal.iter().collect();
    let r = reduce_by(&to_internal(f, order), &refs, field, nvars);
    Ok(from_internal(&r, order))
}

/// Reduced Gröbner basis of the system together with the field equations.
pub fn buchberger(system: &PolynomialSystem, order: &MonomialOrder) -> Result<GroebnerBasis> {
    check_order(order, system.nvars)?;
    Ok(buchberger_limited(&system.generators, system.field, system.nvars, order, None).expect("no term limit"))
}

/// Reduced basis of `generators`, or `None` once some reduction exceeds `term_limit`.
pub(crate) fn buchberger_limited(
    generators: &[Polynomial],
    field: PrimeField,
    nvars: usize,
    order: &MonomialOrder,
    term_limit: Option<usize>,
) -> Option<GroebnerBasis> {
    let mut engine = Buchberger::new(field, nvars).with_term_limit(term_limit);
    // Sparse generators first keeps early reductions cheap.
    let mut gens: Vec<Polynomial> = generators.iter().map(|g| to_internal(g, order)).collect();
    gens.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in &gens {
        engine.add_generator(g);
    }
    engine.run();
    if engine.exceeded() {
        return None;
    }
    let elements = engine
        .into_reduced_basis()
        .iter()
        .map(|g| from_internal(g, order))
        .collect();
    Some(GroebnerBasis {
        elements,
        order: order.clone(),
        field,
    })
}

/// Buchberger's criterion, including the S-pairs with the implicit field equations.
pub fn is_groebner_basis(elements: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    let Some(first) = elements.first() else {
        return Ok(true);
    };
    let (field, nvars) = (first.field(), first.nvars());
    check_order(order, nvars)?;
    let internal: Vec<Polynomial> = elements
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_internal(g, order))
        .collect();
    let refs: Vec<&Polynomial> = internal.iter().collect();
    for (i, f) in internal.iter().enumerate() {
        for g in &internal[i + 1..] {
            if !reduce_by(&spoly(f, g), &refs, field, nvars).is_zero() {
                return Ok(false);
            }
        }
        let lm = f.leading_monomial().expect("nonzero");
        for v in lm.vars() {
            if !reduce_by(&field_spoly(f, v), &refs, field, nvars).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn check_order(order: &MonomialOrder, nvars: usize) -> Result<()> {
    if order.nvars() != nvars {
        return Err(Error::mismatch(format!(
            "monomial order has {} variables, ring has {nvars}",
            order.nvars()
        )));
    }
    Ok(())
}

fn to_internal(f: &Polynomial, order: &MonomialOrder) -> Polynomial {
    if order.is_declaration_order() {
        f.clone()
    } else {
        f.rename(order.rank(), f.nvars())
    }
}

fn from_internal(f: &Polynomial, order: &MonomialOrder) -> Polynomial {
    if order.is_declaration_order() {
        f.clone()
    } else {
        f.rename(order.precedence(), f.nvars())
    }
}
