//! Expression grammar: sums of products of rational constants, variables,
//! parenthesized subexpressions and integer powers. Division is allowed by
//! single-term expressions only, so every result is a Laurent polynomial.

use num_bigint::BigInt;

use super::{ExponentVector, LaurentPolynomial};
use crate::num::Rational;
use crate::{Error, Result};

/// `x1, ..., xn`.
pub fn default_variables(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{b7}' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            it.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                it.next();
            }
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !(c.is_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
            continue;
        }
        return Err(Error::Parse {
            position: pos,
            message: format!("unexpected character `{ch}`"),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.eat(&Tok::Slash) {
                let pos = self.pos();
                let d = self.unary()?;
                acc = &acc * &invert(&d, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPolynomial> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPolynomial> {
        let pos = self.pos();
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let paren = self.eat(&Tok::LParen);
        let neg = self.eat(&Tok::Minus);
        let k: u32 = match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                u32::try_from(&v).or_else(|_| self.fail("exponent too large"))?
            }
            _ => return self.fail("expected an integer exponent"),
        };
        if paren && !self.eat(&Tok::RParen) {
            return self.fail("expected `)`");
        }
        let p = base.pow(k);
        if neg {
            invert(&p, pos)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<LaurentPolynomial> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                Ok(LaurentPolynomial::constant(n, Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.at += 1;
                    Ok(LaurentPolynomial::variable(n, i))
                }
                None => self.fail(format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.fail(format!("unexpected token {t:?}")),
            None => self.fail("unexpected end of input"),
        }
    }
}

fn invert(p: &LaurentPolynomial, position: usize) -> Result<LaurentPolynomial> {
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((e, c)), None) => Ok(LaurentPolynomial::monomial(
            ExponentVector::new(e.iter().map(|a| -a).collect()),
            c.recip(),
        )),
        (None, _) => Err(Error::DivisionByZero),
        _ => Err(Error::Parse {
            position,
            message: "only single-term expressions can be inverted".into(),
        }),
    }
}

/// Parses an expression over the variables `vars` (their order fixes the
/// exponent coordinates).
pub fn parse_polynomial(src: &str, vars: &[String]) -> Result<LaurentPolynomial> {
    if vars.is_empty() {
        return Err(Error::Invalid("at least one variable is required".into()));
    }
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
        vars,
    };
    if p.toks.is_empty() {
        return p.fail("empty expression");
    }
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

impl LaurentPolynomial {
    /// Parses with the default variable names `x1..xn`.
    pub fn parse(src: &str, dim: usize) -> Result<Self> {
        parse_polynomial(src, &super::default_variables(dim))
    }
}

