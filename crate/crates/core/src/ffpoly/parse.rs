//! Text syntax for polynomials: `x1*x2^2+2*x3+1`.
//!
//! Terms are joined by `+` (or `-`), factors by `*`, powers by `^`. Parenthesised
//! sub-expressions are accepted as well. Only `x<i>` variable names exist, `i >= 1`.

use super::field::PrimeField;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Parse `text` as a polynomial over `field` in `nvars` variables.
///
/// Errors carry line 1 and the 1-based column of the offending character.
pub fn parse_polynomial(text: &str, field: PrimeField, nvars: usize) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        nvars,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error(format!("unexpected character '{}'", p.src[p.pos] as char)));
    }
    Ok(poly)
}

/// Largest variable index (1-based) referenced in `text`, 0 if none.
pub fn max_variable_index(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > start {
                if let Ok(v) = text[start..j].parse::<usize>() {
                    best = best.max(v);
                }
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: PrimeField,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                let col = self.pos;
                self.pos += 1;
                if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    return Err(self.error("expected variable index after 'x'"));
                }
                let idx = self.integer()? as usize;
                if idx == 0 || idx > self.nvars {
                    return Err(Error::parse(
                        1,
                        col + 1,
                        format!("undeclared variable x{idx} (have {} variables)", self.nvars),
                    ));
                }
                Ok(Polynomial::var(self.field, self.nvars, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let c = (v % self.field.characteristic() as u64) as i64;
                Ok(Polynomial::constant(self.field, self.nvars, c))
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(1, start + 1, "integer too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_canonically() {
        let f3 = PrimeField::new(3).unwrap();
        let p = parse_polynomial("x1*x2^2+2*x3+1", f3, 3).unwrap();
        assert_eq!(p.to_string(), "x1*x2^2+2*x3+1");
        let q = parse_polynomial(" (x1 + 1) * (x1 - 1) ", f3, 1).unwrap();
        assert_eq!(q.to_string(), "x1^2+2");
    }

    #[test]
    fn reports_columns() {
        let f2 = PrimeField::binary();
        match parse_polynomial("x1 + x4", f2, 3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x1 +", f2, 3).is_err());
        assert!(parse_polynomial("x1 $ x2", f2, 3).is_err());
        assert!(parse_polynomial("", f2, 3).is_err());
        assert!(parse_polynomial("x0", f2, 3).is_err());
    }

    #[test]
    fn finds_highest_variable() {
        assert_eq!(max_variable_index("x1*x12+x3"), 12);
        assert_eq!(max_variable_index("1+2"), 0);
    }
}
