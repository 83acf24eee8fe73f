//! Textual syntax for series and equations in `z`.
//!
//! Grammar: variables `x1..xN` and `z`; integer literals; operators
//! `+ - * / ^` and parentheses. `/` is exact division, defined for scalar
//! divisors and single-term (monomial) divisors. Exponents are integers or
//! parenthesized rationals: `x1^(1/2)`, `x2^(-3/2)`, `z^2`.
//!
//! `3/2 * x1^(1/2) * x2^(-3/2)` and `z^2 - x1 - x2` are both valid; the
//! number of variables is the largest variable index mentioned.

use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::rational::{DegreeBound, Rational};
use crate::series::PuiseuxSeries;
use crate::zpoly::ZPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Integer(BigInt),
    Variable(usize), // 0-based
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<(Vec<(Token, usize)>, usize)> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut max_var = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value = BigInt::from_str(&text[start..i]).expect("digits");
                tokens.push((Token::Integer(value), start));
            }
            'z' => {
                tokens.push((Token::Z, i));
                i += 1;
            }
            'x' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(Error::Parse {
                        position: start,
                        message: "variable needs an index: x1, x2, ...".into(),
                    });
                }
                let idx: usize = text[digits_start..i].parse().map_err(|_| Error::Parse {
                    position: start,
                    message: "variable index out of range".into(),
                })?;
                if idx == 0 {
                    return Err(Error::Parse {
                        position: start,
                        message: "variable indices start at 1".into(),
                    });
                }
                max_var = max_var.max(idx);
                tokens.push((Token::Variable(idx - 1), start));
            }
            _ => {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character '{}'", c),
                });
            }
        }
    }
    Ok((tokens, max_var))
}

/// A parsed expression: a polynomial in `z` whose coefficients are exact
/// Puiseux (Laurent) polynomials.
struct Value {
    coeffs: Vec<PuiseuxSeries>, // by z-degree, may be all zero
}

impl Value {
    fn constant(n: usize, c: Rational) -> Self {
        Value {
            coeffs: vec![PuiseuxSeries::constant(n, c)],
        }
    }

    fn series(s: PuiseuxSeries) -> Self {
        Value { coeffs: vec![s] }
    }

    fn z(n: usize) -> Self {
        Value {
            coeffs: vec![PuiseuxSeries::zero(n), PuiseuxSeries::one(n)],
        }
    }

    fn n(&self) -> usize {
        self.coeffs[0].vars()
    }

    fn add(&self, other: &Value) -> Result<Value> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let n = self.n();
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| PuiseuxSeries::zero(n));
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| PuiseuxSeries::zero(n));
            out.push(a.add(&b)?);
        }
        Ok(Value { coeffs: out })
    }

    fn negate(&self) -> Value {
        Value {
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }

    fn mul(&self, other: &Value) -> Result<Value> {
        let n = self.n();
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![PuiseuxSeries::zero(n); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Value { coeffs: out })
    }

    fn z_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    fn is_z_free(&self) -> bool {
        self.z_degree() == 0
    }

    /// Single-term z-free value, if that is what this is.
    fn as_monomial(&self) -> Option<(ExponentVector, Rational)> {
        if !self.is_z_free() {
            return None;
        }
        let s = &self.coeffs[0];
        if s.num_terms() != 1 {
            return None;
        }
        s.terms().next().map(|(e, c)| (e.clone(), c.clone()))
    }

    fn div(&self, other: &Value, position: usize) -> Result<Value> {
        let (e, c) = other.as_monomial().ok_or(Error::Parse {
            position,
            message: "division is defined for scalars and single-term monomials only".into(),
        })?;
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.n();
        let neg = ExponentVector::zero(n).sub(&e)?;
        let inv = c.recip();
        Ok(Value {
            coeffs: self
                .coeffs
                .iter()
                .map(|s| s.mul_monomial(&neg, &inv))
                .collect(),
        })
    }

    fn pow(&self, exponent: &Rational, position: usize) -> Result<Value> {
        if exponent.denom().is_one() && !exponent.is_negative() {
            let k: u64 = exponent
                .numer()
                .try_into()
                .map_err(|_| Error::Parse {
                    position,
                    message: "exponent too large".into(),
                })?;
            let n = self.n();
            let mut acc = Value::constant(n, Rational::one());
            for _ in 0..k {
                acc = acc.mul(self)?;
            }
            return Ok(acc);
        }
        // fractional or negative exponent: single-term base with unit
        // coefficient
        let (e, c) = self.as_monomial().ok_or(Error::Parse {
            position,
            message: "fractional exponents apply to monomials only".into(),
        })?;
        if !c.is_one() {
            return Err(Error::Parse {
                position,
                message: "fractional exponents need coefficient 1".into(),
            });
        }
        Ok(Value::series(PuiseuxSeries::monomial(
            e.scale(exponent),
            Rational::one(),
        )))
    }
}

struct Parser<'a> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                position: self.position(),
                message: format!("expected {:?}", t),
            })
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs.negate())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs)?;
                }
                Some(Token::Slash) => {
                    let position = self.position();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs, position)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.negate());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            let position = self.position();
            self.pos += 1;
            let exponent = self.exponent()?;
            return base.pow(&exponent, position);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Rational> {
        match self.peek().cloned() {
            Some(Token::Integer(v)) => {
                self.pos += 1;
                Ok(Rational::from_integer(v))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let neg = if self.peek() == Some(&Token::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let num = match self.bump().cloned() {
                    Some(Token::Integer(v)) => v,
                    _ => {
                        return Err(Error::Parse {
                            position: self.position(),
                            message: "expected an integer exponent".into(),
                        })
                    }
                };
                let den = if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.bump().cloned() {
                        Some(Token::Integer(v)) if !v.is_zero() => v,
                        _ => {
                            return Err(Error::Parse {
                                position: self.position(),
                                message: "expected a nonzero denominator".into(),
                            })
                        }
                    }
                } else {
                    BigInt::one()
                };
                self.expect(Token::RParen)?;
                let r = Rational::new(num, den);
                Ok(if neg { -r } else { r })
            }
            _ => Err(Error::Parse {
                position: self.position(),
                message: "expected an exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let position = self.position();
        match self.bump().cloned() {
            Some(Token::Integer(v)) => Ok(Value::constant(self.n, Rational::from_integer(v))),
            Some(Token::Variable(i)) => {
                let mut coords = vec![Rational::zero(); self.n];
                coords[i] = Rational::one();
                Ok(Value::series(PuiseuxSeries::monomial(
                    ExponentVector::new(coords),
                    Rational::one(),
                )))
            }
            Some(Token::Z) => Ok(Value::z(self.n)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            _ => Err(Error::Parse {
                position,
                message: "expected a number, variable, z or parenthesis".into(),
            }),
        }
    }
}

fn parse_value(text: &str, min_vars: usize) -> Result<(Value, usize)> {
    let (tokens, max_var) = tokenize(text)?;
    let n = max_var.max(min_vars).max(1);
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        n,
    };
    let value = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(Error::Parse {
            position: parser.position(),
            message: "trailing input".into(),
        });
    }
    Ok((value, n))
}

/// Parse a polynomial in `z` with series coefficients.
pub fn parse_zpoly(text: &str) -> Result<ZPolynomial> {
    let (value, _) = parse_value(text, 1)?;
    ZPolynomial::new(value.coeffs)
}

/// Parse a z-free series.
pub fn parse_series(text: &str) -> Result<PuiseuxSeries> {
    let (value, _) = parse_value(text, 1)?;
    if !value.is_z_free() {
        return Err(Error::Parse {
            position: 0,
            message: "expected a series without z".into(),
        });
    }
    Ok(value.coeffs.into_iter().next().expect("nonempty")
        .truncate(&DegreeBound::Unbounded))
}

/// Parse a comma-separated exponent vector like `(0,-1,3)` or `(1/2, 0)`.
pub fn parse_vector(text: &str) -> Result<ExponentVector> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or(Error::Parse {
            position: 0,
            message: "expected a parenthesized vector like (0,-1,3)".into(),
        })?;
    let mut coords = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        let r = parse_rational(part)?;
        coords.push(r);
    }
    if coords.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty vector".into(),
        });
    }
    Ok(ExponentVector::new(coords))
}

/// Parse `p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (text, None),
    };
    let num = BigInt::from_str(num_text).map_err(|_| Error::Parse {
        position: 0,
        message: format!("not an integer: '{}'", num_text),
    })?;
    let den = match den_text {
        Some(d) => {
            let v = BigInt::from_str(d).map_err(|_| Error::Parse {
                position: 0,
                message: format!("not an integer: '{}'", d),
            })?;
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            v
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(num, den))
}
