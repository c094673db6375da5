use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ffpoly::Monomial;

/// Lexicographic order with a chosen variable precedence.
///
/// `precedence[0]` is the greatest variable. The default is declaration order
/// (`x1 > x2 > ... > xn`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    precedence: Vec<usize>,
    rank: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        let id: Vec<usize> = (0..nvars).collect();
        MonomialOrder {
            precedence: id.clone(),
            rank: id,
        }
    }

    /// `precedence` lists zero-based variable indices from greatest to smallest.
    pub fn with_precedence(precedence: Vec<usize>) -> Result<Self> {
        let n = precedence.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in precedence.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::Invalid(format!(
                    "variable precedence {precedence:?} is not a permutation"
                )));
            }
            rank[v] = r;
        }
        Ok(MonomialOrder { precedence, rank })
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// Position of each variable in the precedence list.
    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    pub fn is_declaration_order(&self) -> bool {
        self.precedence.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.is_declaration_order() {
            a.cmp(b)
        } else {
            a.rename(&self.rank).cmp(&b.rename(&self.rank))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_changes_comparisons() {
        let x1 = Monomial::var(0);
        let x2 = Monomial::var(1);
        assert_eq!(MonomialOrder::lex(2).compare(&x1, &x2), Ordering::Greater);
        let rev = MonomialOrder::with_precedence(vec![1, 0]).unwrap();
        assert_eq!(rev.compare(&x1, &x2), Ordering::Less);
        assert!(MonomialOrder::with_precedence(vec![0, 0]).is_err());
        assert!(MonomialOrder::with_precedence(vec![0, 2]).is_err());
    }

    #[test]
    fn order_is_multiplicative() {
        let ord = MonomialOrder::with_precedence(vec![2, 0, 1]).unwrap();
        let mons: Vec<Monomial> = (0..27u32)
            .map(|i| Monomial::from_exponents(&[i / 9, (i / 3) % 3, i % 3]))
            .collect();
        for u in &mons {
            assert!(ord.compare(&Monomial::one(), u) != Ordering::Greater);
            for v in &mons {
                for w in &mons {
                    if ord.compare(u, v) == Ordering::Less {
                        assert_eq!(ord.compare(&u.mul_raw(w), &v.mul_raw(w)), Ordering::Less);
                    }
                }
            }
        }
    }
}
