//! Text grammar for numbers and polynomials.
//!
//! Terms are joined by `+`/`-`; factors by `*`. A factor is a rational `a/b`,
//! a root of unity `z(m)` or a variable `x<i>`, optionally raised with `^k`, or a
//! parenthesized expression. Example: `(1/2 + 3*z(6)^2)*x0^2*x3 - x1^3`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{zeta_pow, CycloNumber, Rational};
use crate::poly::{Monomial, Polynomial};

type Expr = BTreeMap<Vec<u16>, CycloNumber>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column0: usize,
}

fn trim(mut e: Vec<u16>) -> Vec<u16> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn expr_mul(a: &Expr, b: &Expr) -> Expr {
    let mut out = Expr::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let n = ea.len().max(eb.len());
            let e: Vec<u16> = (0..n)
                .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                .collect();
            let c = ca * cb;
            match out.get_mut(&e) {
                Some(v) => *v += &c,
                None => {
                    out.insert(e, c);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn expr_add(a: &mut Expr, b: Expr, negate: bool) {
    for (e, c) in b {
        let c = if negate { -c } else { c };
        match a.get_mut(&e) {
            Some(v) => *v += &c,
            None => {
                a.insert(e, c);
            }
        }
    }
    a.retain(|_, c| !c.is_zero());
}

fn constant(c: CycloNumber) -> Expr {
    let mut e = Expr::new();
    if !c.is_zero() {
        e.insert(Vec::new(), c);
    }
    e
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, line: usize, column0: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            line,
            column0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse_at(self.line, self.column0 + self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", ch as char)))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<u32> {
        let s = self.digits()?;
        s.parse().map_err(|_| self.err("integer out of range"))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.small_int()
        } else {
            Ok(1)
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = Expr::new();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            expr_add(&mut acc, t, negate);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = expr_mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                let k = self.exponent()?;
                let mut acc = constant(CycloNumber::one());
                for _ in 0..k {
                    acc = expr_mul(&acc, &inner);
                }
                Ok(acc)
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.small_int()? as usize;
                if i > u16::MAX as usize {
                    return Err(self.err("variable index too large"));
                }
                let k = self.exponent()?;
                let mut e = vec![0u16; i + 1];
                e[i] = u16::try_from(k).map_err(|_| self.err("exponent too large"))?;
                let mut out = Expr::new();
                out.insert(trim(e), CycloNumber::one());
                Ok(out)
            }
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'(')?;
                let m = self.small_int()?;
                if m == 0 {
                    return Err(self.err("conductor must be positive"));
                }
                self.expect(b')')?;
                let k = self.exponent()?;
                Ok(constant(zeta_pow(m, k as i64)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().unwrap();
                let q = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d: BigInt = self.digits()?.parse().unwrap();
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                let k = self.exponent()?;
                Ok(constant(CycloNumber::from_rational(q.pow(k as i32))))
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
        }
    }
}

/// Parses a polynomial located at `line`, starting at column `column0 + 1`.
pub fn parse_polynomial_at(
    src: &str,
    nvars: Option<usize>,
    line: usize,
    column0: usize,
) -> Result<Polynomial> {
    let mut p = Parser::new(src, line, column0);
    let e = p.expr()?;
    p.finish()?;
    let used = e.keys().map(Vec::len).max().unwrap_or(0);
    let nvars = match nvars {
        Some(n) if used > n => {
            return Err(Error::parse_at(
                line,
                column0 + 1,
                format!("variable x{} outside a ring of {n} variables", used - 1),
            ))
        }
        Some(n) => n,
        None => used.max(1),
    };
    let terms = e.into_iter().map(|(mut ex, c)| {
        ex.resize(nvars, 0);
        (Monomial::new(ex), c)
    });
    Polynomial::from_terms(nvars, terms).map_err(|err| match err {
        Error::Inhomogeneous => Error::parse_at(line, column0 + 1, "polynomial is not homogeneous"),
        other => other,
    })
}

/// Parses a homogeneous polynomial; `nvars` defaults to the largest variable index used plus one.
pub fn parse_polynomial(src: &str, nvars: Option<usize>) -> Result<Polynomial> {
    parse_polynomial_at(src, nvars, 1, 0)
}

/// Parses a constant expression in rationals and `z(m)^k` tokens.
pub fn parse_number(src: &str) -> Result<CycloNumber> {
    parse_number_at(src, 1, 0)
}

pub fn parse_number_at(src: &str, line: usize, column0: usize) -> Result<CycloNumber> {
    let mut p = Parser::new(src, line, column0);
    let e = p.expr()?;
    p.finish()?;
    let mut out = CycloNumber::zero();
    for (ex, c) in e {
        if !ex.is_empty() {
            return Err(Error::parse_at(line, column0 + 1, "expected a number, found a variable"));
        }
        out = c;
    }
    Ok(out)
}

/// Parses a rational number, allowing a leading sign.
pub fn parse_rational_at(src: &str, line: usize, column0: usize) -> Result<Rational> {
    parse_number_at(src, line, column0)?
        .is_rational()
        .ok_or_else(|| Error::parse_at(line, column0 + 1, "expected a rational number"))
}
