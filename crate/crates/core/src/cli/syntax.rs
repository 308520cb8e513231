//! Concrete syntax for Laurent polynomials.
//!
//! ```text
//! poly     := ws [sign] term (ws sign ws term)* ws
//! term     := integer [ws ['*'] ws monomial]* | monomial [ws ['*'] ws monomial]*
//! monomial := 'u' [index] [ws '^' ws exponent]
//! exponent := [sign] integer | '(' ws [sign] integer ws ')'
//! ```
//!
//! `u` is an alias for `u1`. The rank is the largest variable index used.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::groupring::{ExponentVector, GroupRingElement};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxTerm {
    pub coefficient: BigInt,
    /// `(variable index, exponent)`, indices from 1, in source order.
    pub monomial: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSyntaxTree {
    pub terms: Vec<SyntaxTerm>,
}

impl PolynomialSyntaxTree {
    /// Largest variable index, at least 1.
    pub fn rank(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|t| t.monomial.iter().map(|(v, _)| *v))
            .max()
            .unwrap_or(1)
            .max(1)
    }

    /// Merges like terms into an element of the given rank (at least [`Self::rank`]).
    pub fn to_element(&self, rank: usize) -> Result<GroupRingElement, ParseError> {
        assert!(rank >= self.rank(), "rank below the largest variable index");
        let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for t in &self.terms {
            let mut e = vec![0i64; rank];
            for &(v, k) in &t.monomial {
                e[v - 1] = e[v - 1].checked_add(k).ok_or_else(|| ParseError {
                    column: 0,
                    message: "exponent overflow".into(),
                })?;
            }
            *acc.entry(ExponentVector::new(e)).or_insert_with(BigInt::zero) += &t.coefficient;
        }
        Ok(GroupRingElement::from_terms(rank, acc).expect("rank matches"))
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
            self.skip_ws();
        }
        let start = self.pos;
        let neg = self.sign() == Some(true);
        self.skip_ws();
        let ds = self.digits();
        if ds.is_empty() {
            return self.err("expected exponent");
        }
        let v: BigInt = ds.parse().expect("digits");
        let v = if neg { -v } else { v };
        let v: i64 = match i64::try_from(&v) {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("exponent overflow");
            }
        };
        if paren {
            self.skip_ws();
            if self.peek() != Some(')') {
                return self.err("expected ')'");
            }
            self.pos += 1;
        }
        Ok(v)
    }

    fn monomial(&mut self) -> Result<(usize, i64), ParseError> {
        debug_assert_eq!(self.peek(), Some('u'));
        self.pos += 1;
        let start = self.pos;
        let ds = self.digits();
        let var = if ds.is_empty() {
            1
        } else {
            match ds.parse::<usize>() {
                Ok(0) | Err(_) => {
                    self.pos = start;
                    return self.err("variable index must be a positive integer");
                }
                Ok(v) if v > 64 => {
                    self.pos = start;
                    return self.err("variable index too large");
                }
                Ok(v) => v,
            }
        };
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.exponent()?;
            Ok((var, k))
        } else {
            self.pos = save;
            Ok((var, 1))
        }
    }

    fn term(&mut self, negative: bool) -> Result<SyntaxTerm, ParseError> {
        self.skip_ws();
        let mut coefficient = BigInt::from(1);
        let mut saw_any = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coefficient = self.digits().parse().expect("digits");
            saw_any = true;
        }
        let mut monomial = Vec::new();
        loop {
            let save = self.pos;
            self.skip_ws();
            let star = self.peek() == Some('*');
            if star {
                if !saw_any {
                    return self.err("unexpected '*'");
                }
                self.pos += 1;
                self.skip_ws();
            }
            match self.peek() {
                Some('u') => {
                    monomial.push(self.monomial()?);
                    saw_any = true;
                }
                _ if star => return self.err("expected a variable after '*'"),
                Some(c) if c.is_ascii_digit() && saw_any => {
                    return self.err("expected an operator between terms")
                }
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        if !saw_any {
            return match self.peek() {
                Some(c) => self.err(format!("unexpected '{c}'")),
                None => self.err("expected a term"),
            };
        }
        if negative {
            coefficient = -coefficient;
        }
        Ok(SyntaxTerm {
            coefficient,
            monomial,
        })
    }

    fn poly(&mut self) -> Result<PolynomialSyntaxTree, ParseError> {
        self.skip_ws();
        let neg = self.sign() == Some(true);
        let mut terms = vec![self.term(neg)?];
        loop {
            self.skip_ws();
            match self.sign() {
                Some(neg) => terms.push(self.term(neg)?),
                None => break,
            }
        }
        self.skip_ws();
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected '{c}'"));
        }
        Ok(PolynomialSyntaxTree { terms })
    }
}

pub fn parse_syntax(text: &str) -> Result<PolynomialSyntaxTree, ParseError> {
    Parser {
        chars: text.chars().collect(),
        pos: 0,
    }
    .poly()
}

/// Parses with the rank inferred from the largest variable index.
pub fn parse_poly(text: &str) -> Result<GroupRingElement, ParseError> {
    let t = parse_syntax(text)?;
    t.to_element(t.rank())
}

/// Parses several polynomials into a common rank (the largest among them).
pub fn parse_polys(texts: &[&str]) -> Result<Vec<GroupRingElement>, ParseError> {
    let trees = texts
        .iter()
        .map(|t| parse_syntax(t))
        .collect::<Result<Vec<_>, _>>()?;
    let rank = trees.iter().map(|t| t.rank()).max().unwrap_or(1);
    trees.iter().map(|t| t.to_element(rank)).collect()
}

/// Parses a circle constant `p/q`, `p`, or `0`.
pub fn parse_rational(text: &str) -> Result<(BigInt, BigInt), ParseError> {
    let s = text.trim();
    let bad = |m: &str| ParseError {
        column: 1,
        message: m.into(),
    };
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad("bad numerator"))?;
    let q: BigInt = q.parse().map_err(|_| bad("bad denominator"))?;
    if !q.is_positive() {
        return Err(bad("denominator must be positive"));
    }
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_map() {
        let f = parse_poly("u^2 - u - 1").unwrap();
        assert_eq!(f, GroupRingElement::from_univariate(0, &[-1, -1, 1]));
        assert_eq!(f.to_string(), "-1 - u1 + u1^2");
    }

    #[test]
    fn quartic() {
        let f = parse_poly("1 - 2*u1 + u1^2 - 2*u1^3 + u1^4").unwrap();
        assert_eq!(f, GroupRingElement::from_univariate(0, &[1, -2, 1, -2, 1]));
    }

    #[test]
    fn rank_two() {
        let f = parse_poly("u1*u2^-1 + 3").unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.support_len(), 2);
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn spacing_and_forms() {
        let a = parse_poly(" 2 u ^ ( -3 ) + u u").unwrap();
        let b = parse_poly("2*u1^-3+u1^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-u + u").unwrap(), GroupRingElement::zero(1));
        assert_eq!(parse_poly("0").unwrap(), GroupRingElement::zero(1));
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse_poly("u^").unwrap_err().column, 3);
        assert_eq!(parse_poly("1 + x").unwrap_err().column, 5);
        assert_eq!(parse_poly("u0").unwrap_err().column, 2);
        assert_eq!(parse_poly("2 3").unwrap_err().column, 3);
        assert_eq!(
            parse_poly("u^99999999999999999999").unwrap_err().message,
            "exponent overflow"
        );
        assert!(parse_poly("").is_err());
        assert!(parse_poly("u +").is_err());
        assert!(parse_poly("*u").is_err());
    }

    #[test]
    fn common_rank() {
        let v = parse_polys(&["u - 1", "u2"]).unwrap();
        assert_eq!(v[0].rank(), 2);
        assert_eq!(v[1].rank(), 2);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/3").unwrap(), (BigInt::from(1), BigInt::from(3)));
        assert_eq!(parse_rational("0").unwrap(), (BigInt::from(0), BigInt::from(1)));
        assert!(parse_rational("1/0").is_err());
    }
}
