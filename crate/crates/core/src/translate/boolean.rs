//! Boolean rules: `!`/`~` (NOT), `&`/`*` (AND), `|` (OR), parentheses, `0`, `1` and
//! `x<i>`. NOT binds tighter than AND, AND tighter than OR.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffpoly::{Polynomial, PrimeField};

/// A Boolean formula over `x1..xn` (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BooleanExpression {
    Var(usize),
    Const(bool),
    Not(Box<BooleanExpression>),
    And(Vec<BooleanExpression>),
    Or(Vec<BooleanExpression>),
}

impl BooleanExpression {
    pub fn var(index: usize) -> Self {
        BooleanExpression::Var(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BooleanExpression) -> Self {
        BooleanExpression::Not(Box::new(e))
    }

    /// Evaluate at a 0/1 point; any nonzero coordinate counts as true.
    pub fn eval(&self, point: &[u32]) -> bool {
        match self {
            BooleanExpression::Var(i) => point[*i] != 0,
            BooleanExpression::Const(b) => *b,
            BooleanExpression::Not(e) => !e.eval(point),
            BooleanExpression::And(es) => es.iter().all(|e| e.eval(point)),
            BooleanExpression::Or(es) => es.iter().any(|e| e.eval(point)),
        }
    }

    /// One more than the largest variable index used, 0 for closed formulas.
    pub fn arity(&self) -> usize {
        match self {
            BooleanExpression::Var(i) => i + 1,
            BooleanExpression::Const(_) => 0,
            BooleanExpression::Not(e) => e.arity(),
            BooleanExpression::And(es) | BooleanExpression::Or(es) => {
                es.iter().map(BooleanExpression::arity).max().unwrap_or(0)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BooleanExpression::Or(es) if es.len() > 1 => 0,
            BooleanExpression::And(es) if es.len() > 1 => 1,
            _ => 2,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for BooleanExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BooleanExpression::Var(i) => write!(f, "x{}", i + 1),
            BooleanExpression::Const(b) => write!(f, "{}", u8::from(*b)),
            BooleanExpression::Not(e) => {
                f.write_str("!")?;
                e.fmt_operand(f, 2)
            }
            BooleanExpression::And(es) | BooleanExpression::Or(es) if es.is_empty() => {
                // Empty conjunction is true, empty disjunction false.
                write!(f, "{}", u8::from(matches!(self, BooleanExpression::And(_))))
            }
            BooleanExpression::And(es) => {
                for (k, e) in es.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" & ")?;
                    }
                    e.fmt_operand(f, 2)?;
                }
                Ok(())
            }
            BooleanExpression::Or(es) => {
                for (k, e) in es.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" | ")?;
                    }
                    e.fmt_operand(f, 1)?;
                }
                Ok(())
            }
        }
    }
}

/// The reduced polynomial over F_2 agreeing with `e` on every 0/1 point.
///
/// NOT a = 1 + a, AND is the product, a OR b = a + b + ab.
pub fn boolean_to_polynomial(e: &BooleanExpression, nvars: usize) -> Result<Polynomial> {
    if e.arity() > nvars {
        return Err(Error::mismatch(format!(
            "expression uses x{} but only {nvars} variables are declared",
            e.arity()
        )));
    }
    Ok(convert(e, PrimeField::binary(), nvars))
}

fn convert(e: &BooleanExpression, f2: PrimeField, n: usize) -> Polynomial {
    match e {
        BooleanExpression::Var(i) => Polynomial::var(f2, n, *i),
        BooleanExpression::Const(b) => Polynomial::constant(f2, n, i64::from(*b)),
        BooleanExpression::Not(a) => &convert(a, f2, n) + &Polynomial::one(f2, n),
        BooleanExpression::And(es) => es
            .iter()
            .fold(Polynomial::one(f2, n), |acc, a| &acc * &convert(a, f2, n)),
        BooleanExpression::Or(es) => es.iter().fold(Polynomial::zero(f2, n), |acc, a| {
            let b = convert(a, f2, n);
            let both = &acc * &b;
            &(&acc + &b) + &both
        }),
    }
}

/// Parse a Boolean rule; variables beyond `nvars` are rejected.
///
/// Errors carry line 1 and the 1-based column of the offending character.
pub fn parse_boolean(text: &str, nvars: usize) -> Result<BooleanExpression> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let e = p.or()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected character '{}'", c as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, message)
    }

    fn eat(&mut self, ops: &[u8]) -> bool {
        self.skip_ws();
        match self.peek() {
            Some(c) if ops.contains(&c) => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn or(&mut self) -> Result<BooleanExpression> {
        let mut items = vec![self.and()?];
        while self.eat(b"|") {
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            BooleanExpression::Or(items)
        })
    }

    fn and(&mut self) -> Result<BooleanExpression> {
        let mut items = vec![self.unary()?];
        while self.eat(b"&*") {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            BooleanExpression::And(items)
        })
    }

    fn unary(&mut self) -> Result<BooleanExpression> {
        if self.eat(b"!~") {
            return Ok(BooleanExpression::not(self.unary()?));
        }
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.or()?;
                if !self.eat(b")") {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(BooleanExpression::Const(false))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(BooleanExpression::Const(true))
            }
            Some(b'x') => self.variable(),
            Some(b'+') => Err(self.error("'+' is not a Boolean operator; use '|' for OR")),
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn variable(&mut self) -> Result<BooleanExpression> {
        let start = self.pos;
        self.pos += 1;
        let digits = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).expect("ascii digits");
        let index: usize = match text.parse() {
            Ok(i) if i >= 1 => i,
            _ => {
                self.pos = start;
                return Err(self.error("expected a variable x<i> with i >= 1"));
            }
        };
        if index > self.nvars {
            self.pos = start;
            return Err(self.error(format!("undeclared variable x{index}")));
        }
        Ok(BooleanExpression::Var(index - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_polynomial;

    fn poly(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, PrimeField::binary(), n).unwrap()
    }

    #[test]
    fn basic_gates() {
        let not = parse_boolean("!x1", 1).unwrap();
        assert_eq!(boolean_to_polynomial(&not, 1).unwrap(), poly("x1+1", 1));
        let and = parse_boolean("x1 & x2", 2).unwrap();
        assert_eq!(boolean_to_polynomial(&and, 2).unwrap(), poly("x1*x2", 2));
        let or = parse_boolean("x1 | x2", 2).unwrap();
        assert_eq!(boolean_to_polynomial(&or, 2).unwrap(), poly("x1+x2+x1*x2", 2));
    }

    #[test]
    fn or_and_not_matches_truth_table() {
        let e = parse_boolean("(x1 | x2) & ~x1", 2).unwrap();
        let f = boolean_to_polynomial(&e, 2).unwrap();
        assert_eq!(f, poly("x1*x2+x2", 2));
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.eval(&[a, b]) == 1, e.eval(&[a, b]));
            }
        }
    }

    #[test]
    fn precedence_and_tree_shape() {
        let e = parse_boolean("(x1 & x2) | !x3", 3).unwrap();
        assert_eq!(
            e,
            BooleanExpression::Or(vec![
                BooleanExpression::And(vec![BooleanExpression::Var(0), BooleanExpression::Var(1)]),
                BooleanExpression::not(BooleanExpression::Var(2)),
            ])
        );
        assert_eq!(parse_boolean("x1 & x2 | !x3", 3).unwrap(), e);
        assert_eq!(parse_boolean("x1 * x2 | ~x3", 3).unwrap(), e);
    }

    #[test]
    fn display_round_trips() {
        for s in ["x1 & (x2 | !x3)", "!(x1 | x2)", "x1 | x2 & x3", "!!x1", "0 | 1"] {
            let e = parse_boolean(s, 3).unwrap();
            assert_eq!(parse_boolean(&e.to_string(), 3).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn errors_point_at_the_culprit() {
        let err = parse_boolean("x1 & x4", 3).unwrap_err();
        assert_eq!(err, Error::parse(1, 6, "undeclared variable x4"));
        assert!(matches!(
            parse_boolean("x1 + x2", 2),
            Err(Error::Parse { column: 4, .. })
        ));
        assert!(parse_boolean("(x1", 1).is_err());
        assert!(parse_boolean("", 1).is_err());
    }
}
