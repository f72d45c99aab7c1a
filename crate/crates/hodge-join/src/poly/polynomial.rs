use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::field::{CycloNumber, Rational};

/// Homogeneous polynomial with cyclotomic coefficients, stored sparsely.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    degree: Option<u32>,
    terms: BTreeMap<Monomial, CycloNumber>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial {
            nvars,
            degree: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycloNumber) -> Polynomial {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Polynomial {
        Polynomial::constant(nvars, CycloNumber::one())
    }

    pub fn var(nvars: usize, i: usize) -> Polynomial {
        Polynomial::term(Monomial::var(nvars, i), CycloNumber::one())
    }

    pub fn term(m: Monomial, c: CycloNumber) -> Polynomial {
        let nvars = m.nvars();
        if c.is_zero() {
            return Polynomial::zero(nvars);
        }
        let degree = Some(m.degree());
        Polynomial {
            nvars,
            degree,
            terms: BTreeMap::from([(m, c)]),
        }
    }

    /// Collects terms, merging duplicates; rejects inhomogeneous or mis-sized input.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, CycloNumber)>,
    ) -> Result<Polynomial> {
        let mut map: BTreeMap<Monomial, CycloNumber> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            match map.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut degree = None;
        for m in map.keys() {
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        Ok(Polynomial {
            nvars,
            degree,
            terms: map,
        })
    }

    /// Builds from terms already known to be homogeneous, nonzero and distinct.
    pub(crate) fn from_map_unchecked(
        nvars: usize,
        terms: BTreeMap<Monomial, CycloNumber>,
    ) -> Polynomial {
        let degree = terms.keys().next().map(Monomial::degree);
        debug_assert!(terms.keys().all(|m| Some(m.degree()) == degree));
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial {
            nvars,
            degree,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycloNumber {
        self.terms.get(m).cloned().unwrap_or_else(CycloNumber::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &CycloNumber)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Coefficients as rationals, if all of them are rational.
    pub fn rational_coefficients(&self) -> Option<Vec<(Monomial, Rational)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_rational().map(|q| (m.clone(), q)))
            .collect()
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, subtract: bool) -> Result<Polynomial> {
        self.check_arity(other)?;
        if let (Some(a), Some(b)) = (self.degree, other.degree) {
            if a != b {
                return Err(Error::DegreeMismatch {
                    expected: a,
                    found: b,
                });
            }
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    if subtract {
                        *v -= c
                    } else {
                        *v += c
                    }
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), if subtract { -c } else { c.clone() });
                }
            }
        }
        Ok(Polynomial::from_map_unchecked(self.nvars, terms))
    }

    pub fn scale(&self, c: &CycloNumber) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Polynomial {
        self.scale(&CycloNumber::from_rational(q.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &CycloNumber) -> Polynomial {
        if c.is_zero() || self.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            degree: self.degree.map(|d| d + m.degree()),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut terms: BTreeMap<Monomial, CycloNumber> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial::from_map_unchecked(self.nvars, terms))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars, "variable index out of range");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            terms.insert(Monomial::new(ex), c.scale(&Rational::from(e as i64)));
        }
        Polynomial::from_map_unchecked(self.nvars, terms)
    }

    pub fn evaluate(&self, point: &[CycloNumber]) -> Result<CycloNumber> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = CycloNumber::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Embeds into a ring with `new_nvars` variables, sending x_i to x_{i+offset}.
    pub fn rename_variables(&self, offset: usize, new_nvars: usize) -> Result<Polynomial> {
        if offset + self.nvars > new_nvars {
            return Err(Error::ArityMismatch {
                expected: new_nvars,
                found: offset + self.nvars,
            });
        }
        Ok(Polynomial {
            nvars: new_nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(offset, new_nvars), c.clone()))
                .collect(),
        })
    }

    /// Exact quotient a / b via division with remainder under `order`.
    pub fn divide_exact(&self, b: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        self.check_arity(b)?;
        let (lm, lc) = match b.leading_term(order) {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let lc_inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quo: BTreeMap<Monomial, CycloNumber> = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term(order) {
            let q = lm.quotient_of(m).ok_or(Error::NotDivisible)?;
            let qc = c * &lc_inv;
            rem = rem.checked_sub(&b.mul_monomial(&q, &qc))?;
            quo.insert(q, qc);
        }
        Ok(Polynomial::from_map_unchecked(self.nvars, quo))
    }

    pub fn map_coefficients(&self, f: impl Fn(&CycloNumber) -> CycloNumber) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial::from_map_unchecked(self.nvars, terms)
    }

    /// Terms in decreasing grevlex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &CycloNumber)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b.0, a.0));
        v
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let is_const = m.degree() == 0;
            let (neg, body) = match c.is_rational() {
                Some(q) => {
                    let a = q.abs();
                    let text = if a.is_one() && !is_const {
                        String::new()
                    } else {
                        a.to_string()
                    };
                    (q.is_negative(), text)
                }
                None => (false, format!("({c})")),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (body.is_empty(), is_const) {
                (_, true) => write!(f, "{body}")?,
                (true, false) => write!(f, "{m}")?,
                (false, false) => write!(f, "{body}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        crate::text::parse_polynomial(&s, None).map_err(serde::de::Error::custom)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&CycloNumber::from_integer(-1))
    }
}
