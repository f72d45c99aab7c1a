use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::Error;

/// Precomputed data for Q(ζ_m): Φ_m and the reductions of ζ_m^j, 0 ≤ j < m.
#[derive(Debug)]
struct CycloField {
    m: u32,
    phi: usize,
    powers: Vec<Vec<i64>>,
}

type FieldTable = RwLock<HashMap<u32, Arc<CycloField>>>;
type PolyTable = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn poly_table() -> &'static PolyTable {
    static TABLE: OnceLock<PolyTable> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn field_table() -> &'static FieldTable {
    static TABLE: OnceLock<FieldTable> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Exact division of integer polynomials (constant term first) by a monic divisor.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                rem[k + j] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quo
}

/// The m-th cyclotomic polynomial Φ_m, coefficients listed from the constant term up.
///
/// Computed by dividing t^m − 1 by Φ_k for every proper divisor k of m; memoized.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = poly_table().read().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for k in 1..m {
        if m % k == 0 {
            num = divide_monic(&num, &cyclotomic_polynomial(k));
        }
    }
    let p = Arc::new(num);
    poly_table()
        .write()
        .unwrap()
        .entry(m)
        .or_insert(p)
        .clone()
}

fn field(m: u32) -> Arc<CycloField> {
    if let Some(f) = field_table().read().unwrap().get(&m) {
        return f.clone();
    }
    let phi_poly = cyclotomic_polynomial(m);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by t and reduce with t^phi = -(phi_0 + ... + phi_{phi-1} t^{phi-1})
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] -= top * phi_poly[j];
            }
        }
    }
    let f = Arc::new(CycloField { m, phi, powers });
    field_table()
        .write()
        .unwrap()
        .entry(m)
        .or_insert(f)
        .clone()
}

/// An element of the cyclotomic field Q(ζ_m), stored as its reduced coefficient
/// vector modulo Φ_m in the power basis 1, ζ_m, …, ζ_m^{φ(m)−1}.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn from_rational(q: Rational) -> CycloNumber {
        CycloNumber {
            field: field(1),
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> CycloNumber {
        CycloNumber::from_rational(Rational::from(n))
    }

    pub fn zero() -> CycloNumber {
        CycloNumber::from_rational(Rational::zero())
    }

    pub fn one() -> CycloNumber {
        CycloNumber::from_rational(Rational::one())
    }

    /// Builds Σ c_k ζ_m^k from arbitrary (unreduced) power-basis coefficients.
    pub fn from_power_coeffs(m: u32, coeffs: &[Rational]) -> CycloNumber {
        let f = field(m);
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[k % m as usize]) {
                if p != 0 {
                    *o += &c.mul_i64(p);
                }
            }
        }
        CycloNumber {
            field: f,
            coeffs: out,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Reduced coefficients in the power basis of Q(ζ_m), length φ(m).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Returns the rational value when the number lies in Q.
    pub fn is_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image of `self` in Q(ζ_l); `l` must be a multiple of the conductor.
    pub fn embed(&self, l: u32) -> CycloNumber {
        let m = self.field.m;
        assert!(l % m == 0, "conductor {m} does not divide {l}");
        if l == m {
            return self.clone();
        }
        let target = field(l);
        let step = (l / m) as usize;
        let mut out = vec![Rational::zero(); target.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&target.powers[(k * step) % l as usize]) {
                if p != 0 {
                    *o += &c.mul_i64(p);
                }
            }
        }
        CycloNumber {
            field: target,
            coeffs: out,
        }
    }

    fn common(&self, other: &CycloNumber) -> (CycloNumber, CycloNumber) {
        let l = self.field.m.lcm(&other.field.m);
        (self.embed(l), other.embed(l))
    }

    fn same_field(&self, other: &CycloNumber) -> bool {
        self.field.m == other.field.m
    }

    pub fn scale(&self, q: &Rational) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn mul_same(&self, other: &CycloNumber) -> CycloNumber {
        let f = &self.field;
        if let Some(q) = other.is_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.is_rational() {
            return other.scale(&q);
        }
        let phi = f.phi;
        let mut conv = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += &(a * b);
                }
            }
        }
        let mut out: Vec<Rational> = conv.drain(..phi).collect();
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[(k + phi) % f.m as usize];
            for (o, &p) in out.iter_mut().zip(row) {
                if p != 0 {
                    *o += &c.mul_i64(p);
                }
            }
        }
        CycloNumber {
            field: f.clone(),
            coeffs: out,
        }
    }

    /// Multiplicative inverse, computed by solving the φ×φ multiplication system.
    pub fn inverse(&self) -> Result<CycloNumber, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.is_rational() {
            return Ok(CycloNumber {
                field: self.field.clone(),
                coeffs: {
                    let mut v = vec![Rational::zero(); self.field.phi];
                    v[0] = q.checked_recip()?;
                    v
                },
            });
        }
        let phi = self.field.phi;
        // column j holds self * ζ^j; augmented with e_0
        let mut mat: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul_same(&zeta_pow(self.field.m, j as i64));
            for i in 0..phi {
                mat[i][j] = col.coeffs[i].clone();
            }
        }
        mat[0][phi] = Rational::one();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !mat[r][col].is_zero())
                .expect("multiplication by a nonzero element is invertible");
            mat.swap(col, piv);
            let inv = mat[col][col].checked_recip()?;
            for v in mat[col].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = mat[col].clone();
            for (r, row) in mat.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (v, p) in row.iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *v -= &(&factor * p);
                        }
                    }
                }
            }
        }
        Ok(CycloNumber {
            field: self.field.clone(),
            coeffs: mat.into_iter().map(|row| row[phi].clone()).collect(),
        })
    }

    pub fn pow(&self, k: i64) -> Result<CycloNumber, Error> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycloNumber::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let zeta = match k {
                0 => None,
                1 => Some(format!("z({})", self.field.m)),
                _ => Some(format!("z({})^{}", self.field.m, k)),
            };
            match zeta {
                None => write!(f, "{abs}")?,
                Some(z) if abs.is_one() => write!(f, "{z}")?,
                Some(z) => write!(f, "{abs}*{z}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }

    /// Textual form suitable as a polynomial coefficient: bare rational or parenthesized sum.
    pub fn to_coefficient_string(&self) -> String {
        match self.is_rational() {
            Some(q) => q.to_string(),
            None => format!("({self})"),
        }
    }
}

/// ζ_m^k, with k reduced modulo m.
pub fn zeta_pow(m: u32, k: i64) -> CycloNumber {
    assert!(m >= 1, "conductor must be positive");
    let f = field(m);
    let k = k.rem_euclid(m as i64) as usize;
    CycloNumber {
        coeffs: f.powers[k].iter().map(|&c| Rational::from(c)).collect(),
        field: f,
    }
}

/// Returns the rational value of `a` if it lies in Q.
pub fn is_rational(a: &CycloNumber) -> Option<Rational> {
    a.is_rational()
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &CycloNumber) -> bool {
        if self.same_field(other) {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.common(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloNumber {}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

impl From<Rational> for CycloNumber {
    fn from(q: Rational) -> Self {
        CycloNumber::from_rational(q)
    }
}

impl From<i64> for CycloNumber {
    fn from(n: i64) -> Self {
        CycloNumber::from_integer(n)
    }
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        crate::text::parse_number(&s).map_err(serde::de::Error::custom)
    }
}

fn zip_add(a: &CycloNumber, b: &CycloNumber, sign: bool) -> CycloNumber {
    let combine = |x: &CycloNumber, y: &CycloNumber| CycloNumber {
        field: x.field.clone(),
        coeffs: x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(p, q)| if sign { p + q } else { p - q })
            .collect(),
    };
    if a.same_field(b) {
        combine(a, b)
    } else {
        let (x, y) = a.common(b);
        combine(&x, &y)
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        zip_add(self, rhs, true)
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        zip_add(self, rhs, false)
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.same_field(rhs) {
            self.mul_same(rhs)
        } else if let Some(q) = rhs.is_rational() {
            self.scale(&q)
        } else if let Some(q) = self.is_rational() {
            rhs.scale(&q)
        } else {
            let (a, b) = self.common(rhs);
            a.mul_same(&b)
        }
    }
}

impl Div for &CycloNumber {
    type Output = CycloNumber;
    fn div(self, rhs: &CycloNumber) -> CycloNumber {
        self * &rhs.inverse().expect("division by zero")
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                $tr::$method(&self, rhs)
            }
        }
        impl $tr<CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                $tr::$method(self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        if self.same_field(rhs) {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        if self.same_field(rhs) {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl Sum for CycloNumber {
    fn sum<I: Iterator<Item = CycloNumber>>(iter: I) -> CycloNumber {
        iter.fold(CycloNumber::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Naive oracle: multiply all Φ_k for k | m and compare with t^m − 1.
    fn product_of_divisors(m: u32) -> Vec<i64> {
        let mut acc = vec![1i64];
        for k in 1..=m {
            if m % k == 0 {
                let p = cyclotomic_polynomial(k);
                let mut next = vec![0i64; acc.len() + p.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                acc = next;
            }
        }
        acc
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn cyclotomic_product_identity() {
        for m in 1..=60u32 {
            let mut expect = vec![0i64; m as usize + 1];
            expect[0] = -1;
            expect[m as usize] = 1;
            assert_eq!(product_of_divisors(m), expect, "m = {m}");
        }
    }

    #[test]
    fn zeta_powers() {
        assert_eq!(zeta_pow(6, 3), CycloNumber::from_integer(-1));
        assert_eq!(zeta_pow(8, 4), CycloNumber::from_integer(-1));
        // t^2 mod t^4 - t^2 + 1 is just t^2
        let z = zeta_pow(12, 2);
        assert_eq!(z.conductor(), 12);
        assert_eq!(z.coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(z, zeta_pow(6, 1));
        assert_eq!(zeta_pow(6, -1), zeta_pow(6, 5));
    }

    #[test]
    fn inverse_and_units() {
        let z = zeta_pow(6, 1);
        let inv = z.inverse().unwrap();
        assert_eq!(inv, zeta_pow(6, 5));
        assert!((&z * &inv).is_one());
        // ζ^5 = ζ^2·ζ^3 = −ζ^2 = 1 − ζ
        assert_eq!(inv.coeffs(), &[rat(1, 1), rat(-1, 1)]);
        for d in 2..8u32 {
            let p = &zeta_pow(2 * d, 1) * &zeta_pow(2 * d, 2 * d as i64 - 1);
            assert!(p.is_one());
        }
        assert!((&z + &(-&z)).is_zero());
        assert!(CycloNumber::zero().inverse().is_err());
    }

    #[test]
    fn rationality() {
        let s = &zeta_pow(6, 1) + &zeta_pow(6, 5);
        assert_eq!(s.is_rational(), Some(Rational::one()));
        assert_eq!(zeta_pow(8, 1).is_rational(), None);
        assert_eq!(
            CycloNumber::from_rational(rat(3, 2)).is_rational(),
            Some(rat(3, 2))
        );
    }

    #[test]
    fn mixed_conductors() {
        let a = &zeta_pow(4, 1) * &zeta_pow(6, 1);
        assert_eq!(a.conductor(), 12);
        assert_eq!(a, zeta_pow(12, 5));
        let b = &zeta_pow(3, 1) + &zeta_pow(6, 2);
        assert_eq!(b, &zeta_pow(3, 1) * &CycloNumber::from_integer(2));
    }

    #[test]
    fn display() {
        let a = &CycloNumber::from_rational(rat(1, 2)) + &zeta_pow(6, 1).scale(&rat(-3, 1));
        assert_eq!(a.to_string(), "1/2 - 3*z(6)");
        assert_eq!(zeta_pow(8, 3).to_string(), "z(8)^3");
        assert_eq!(CycloNumber::zero().to_string(), "0");
    }

    fn arb_cyclo() -> impl Strategy<Value = CycloNumber> {
        (
            prop::sample::select(vec![3u32, 4, 6, 8, 12]),
            prop::collection::vec((-5i64..=5, 1i64..=4), 1..6),
        )
            .prop_map(|(m, cs)| {
                let coeffs: Vec<Rational> = cs.into_iter().map(|(n, d)| rat(n, d)).collect();
                CycloNumber::from_power_coeffs(m, &coeffs)
            })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn zeta_order(m in 1u32..=24, k in -30i64..30) {
            let z = zeta_pow(m, k);
            let g = (m as i64).gcd(&k.rem_euclid(m as i64)).max(1);
            let order = if k.rem_euclid(m as i64) == 0 { 1 } else { m as i64 / g };
            prop_assert!(z.pow(order).unwrap().is_one());
            for j in 1..order {
                prop_assert!(!z.pow(j).unwrap().is_one());
            }
        }

        #[test]
        fn equality_is_conductor_independent(a in arb_cyclo(), b in arb_cyclo(), mult in 1u32..=3) {
            let l = a.conductor().lcm(&b.conductor()) * mult;
            prop_assert_eq!(a == b, a.embed(l) == b.embed(l));
            prop_assert_eq!(a.embed(l), a.clone());
        }
    }
}
