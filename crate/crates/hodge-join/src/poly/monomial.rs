use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn shifted(&self, offset: usize, new_nvars: usize) -> Monomial {
        let mut e = vec![0; new_nvars];
        e[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Term order used for leading terms, echelon forms and standard monomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(format!("unknown monomial order `{s}`")),
        }
    }
}

fn push_monomials(nvars: usize, e: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == nvars {
        prefix.push(e as u16);
        out.push(Monomial(prefix.clone()));
        prefix.pop();
        return;
    }
    for a in (0..=e).rev() {
        prefix.push(a as u16);
        push_monomials(nvars, e - a, prefix, out);
        prefix.pop();
    }
}

/// All monomials of degree `e` in `nvars` variables, largest first.
pub fn monomial_basis(nvars: usize, e: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if e == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    push_monomials(nvars, e, &mut Vec::with_capacity(nvars), &mut out);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// Number of monomials of degree `e` in `nvars` variables.
pub fn count_monomials(nvars: usize, e: u32) -> usize {
    if nvars == 0 {
        return usize::from(e == 0);
    }
    let (n, k) = (e as u128 + nvars as u128 - 1, nvars as u128 - 1);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        let b = monomial_basis(2, 2, MonomialOrder::Grevlex);
        assert_eq!(
            b.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            ["x0^2", "x0*x1", "x1^2"]
        );
        assert_eq!(monomial_basis(4, 1, MonomialOrder::Grevlex).len(), 4);
        assert_eq!(monomial_basis(4, 3, MonomialOrder::Grevlex).len(), 20);
        for n in 1..6 {
            for e in 0..7 {
                assert_eq!(monomial_basis(n, e, MonomialOrder::Lex).len(), count_monomials(n, e));
            }
        }
    }

    #[test]
    fn grevlex_vs_lex() {
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 2, 1]);
        // x0*x2^2 vs x1^2*x2: lex prefers x0; grevlex prefers the smaller x2 exponent
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
    }
}
