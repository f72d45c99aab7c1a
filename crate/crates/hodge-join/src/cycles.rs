//! Cycle polynomials: linear cycles, points, fake points, joins and combinations,
//! together with the Hilbert function calculus of joins.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{CycloNumber, Rational};
use crate::jacobian::{classes_proportional, colon_piece, hilbert_function, Colon, HypersurfaceSpec};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// How a cycle polynomial was constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Linear { c: Vec<CycloNumber> },
    Point { r: CycloNumber },
    FakePoint { c: Rational, roots: Vec<Rational> },
    Join { left: Box<CycleSpec>, right: Box<CycleSpec> },
    Combination { parts: Vec<(Rational, CycleSpec)> },
    Raw,
}

/// A Hodge cycle presented by its polynomial P of degree (d−2)(n/2+1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSpec {
    pub poly: Polynomial,
    pub d: u32,
    pub provenance: Provenance,
}

impl CycleSpec {
    pub fn raw(poly: Polynomial, d: u32) -> CycleSpec {
        CycleSpec {
            poly,
            d,
            provenance: Provenance::Raw,
        }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn scaled(&self, q: &Rational) -> CycleSpec {
        CycleSpec {
            poly: self.poly.scale_rational(q),
            d: self.d,
            provenance: Provenance::Combination {
                parts: vec![(q.clone(), self.clone())],
            },
        }
    }
}

/// Hilbert function values in degrees 0, 1, …, σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFn(pub Vec<usize>);

impl HilbertFn {
    /// Drops trailing zeros.
    pub fn new(mut values: Vec<usize>) -> HilbertFn {
        while values.len() > 1 && values.last() == Some(&0) {
            values.pop();
        }
        HilbertFn(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn socle_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Hilbert function of a linear cycle: (1,…,1) of length d−1, convolved n/2+1 times.
    pub fn linear(d: u32, n: usize) -> HilbertFn {
        let point = HilbertFn(vec![1; d as usize - 1]);
        (0..n / 2).fold(point.clone(), |acc, _| hf_convolution(&acc, &point))
    }
}

impl fmt::Display for HilbertFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Convolution of Hilbert functions, the Hilbert function of a join.
pub fn hf_convolution(h1: &HilbertFn, h2: &HilbertFn) -> HilbertFn {
    let mut out = vec![0usize; h1.0.len() + h2.0.len() - 1];
    for (p, a) in h1.0.iter().enumerate() {
        for (q, b) in h2.0.iter().enumerate() {
            out[p + q] += a * b;
        }
    }
    HilbertFn(out)
}

/// Hilbert function of a cycle as a [`HilbertFn`] (trailing zero removed).
pub fn cycle_hilbert(spec: &HypersurfaceSpec, p: &Polynomial) -> Result<HilbertFn> {
    Ok(HilbertFn::new(hilbert_function(spec, p)?))
}

fn telescoped(nvars: usize, i: usize, d: u32, c: &CycloNumber) -> Result<Polynomial> {
    let x = Polynomial::var(nvars, i);
    let y = Polynomial::var(nvars, i + 1).scale(c);
    let num = &x.pow(d - 1) - &y.pow(d - 1);
    num.divide_exact(&(&x - &y), MonomialOrder::Lex)
}

/// ∏_j (x_{2j}^{d−1} − (c_j x_{2j+1})^{d−1}) / (x_{2j} − c_j x_{2j+1}).
pub fn linear_cycle_poly(d: u32, n: usize, c: &[CycloNumber]) -> Result<CycleSpec> {
    if n % 2 != 0 || c.len() != n / 2 + 1 {
        return Err(Error::Domain(format!(
            "need n even and n/2+1 = {} parameters, got {}",
            n / 2 + 1,
            c.len()
        )));
    }
    if c.iter().any(CycloNumber::is_zero) {
        return Err(Error::Domain("linear cycle parameters must be nonzero".into()));
    }
    let nvars = n + 2;
    let mut poly = Polynomial::one(nvars);
    for (j, cj) in c.iter().enumerate() {
        poly = &poly * &telescoped(nvars, 2 * j, d, cj)?;
    }
    Ok(CycleSpec {
        poly,
        d,
        provenance: Provenance::Linear { c: c.to_vec() },
    })
}

fn check_binary(fbin: &HypersurfaceSpec) -> Result<()> {
    if fbin.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: fbin.nvars(),
        });
    }
    Ok(())
}

/// (a ∂F/∂x0 + b ∂F/∂x1) / (b x0 − a x1) for a point (a : b) of a binary form.
pub fn projective_point_poly(
    fbin: &HypersurfaceSpec,
    a: &CycloNumber,
    b: &CycloNumber,
) -> Result<Polynomial> {
    check_binary(fbin)?;
    if !fbin.f().evaluate(&[a.clone(), b.clone()])?.is_zero() {
        return Err(Error::RootMismatch(format!("({a} : {b})")));
    }
    let [f0, f1] = [&fbin.partials()[0], &fbin.partials()[1]];
    let num = &f0.scale(a) + &f1.scale(b);
    let den = &Polynomial::var(2, 0).scale(b) - &Polynomial::var(2, 1).scale(a);
    num.divide_exact(&den, MonomialOrder::Lex)
}

/// Point cycle (r ∂F/∂x0 + ∂F/∂x1)/(x0 − r x1) of the root (r : 1).
pub fn point_poly(fbin: &HypersurfaceSpec, r: &CycloNumber) -> Result<CycleSpec> {
    let poly = projective_point_poly(fbin, r, &CycloNumber::one())?;
    Ok(CycleSpec {
        poly,
        d: fbin.d(),
        provenance: Provenance::Point { r: r.clone() },
    })
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            small.push(k.clone());
            let other = &n / &k;
            if other != k {
                large.push(other);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The d roots (r : 1) of a binary form, when all are rational and distinct.
pub fn rational_roots(f: &Polynomial) -> Option<Vec<Rational>> {
    if f.nvars() != 2 {
        return None;
    }
    let d = f.degree()? as usize;
    let coeffs = f.rational_coefficients()?;
    // a_k is the coefficient of x0^k x1^{d−k}, i.e. of t^k in F(t, 1)
    let mut a = vec![Rational::zero(); d + 1];
    for (m, q) in coeffs {
        a[m.exponents()[0] as usize] = q;
    }
    if a[d].is_zero() {
        return None;
    }
    let l = Rational::lcm_denominators(a.iter());
    let ints: Vec<BigInt> = a
        .iter()
        .map(|q| (q * &Rational::from_integer(l.clone())).numer().clone())
        .collect();
    let eval = |r: &Rational| -> Rational {
        ints.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * r) + &Rational::from_integer(c.clone()))
    };
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 1 {
        return None;
    }
    if low == 1 {
        roots.push(Rational::zero());
    }
    let lead = &ints[d];
    let tail = &ints[low];
    for p in divisors(tail) {
        for q in divisors(lead) {
            if !p.gcd(&q).is_one() {
                continue;
            }
            for s in [1i64, -1] {
                let r = Rational::new(&p * BigInt::from(s), q.clone());
                if eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    (roots.len() == d).then(|| {
        roots.sort();
        roots
    })
}

/// Binary form ∏ (x0 − r_i x1).
pub fn binary_form_from_roots(roots: &[Rational]) -> Polynomial {
    roots.iter().fold(Polynomial::one(2), |acc, r| {
        let lin = &Polynomial::var(2, 0) - &Polynomial::var(2, 1).scale_rational(r);
        &acc * &lin
    })
}

/// Fake point cycle (a ∂F/∂x0 − b ∂F/∂x1)/(x0 − c x1) with a = ∂F/∂x1(c,1),
/// b = ∂F/∂x0(c,1), on a binary form with distinct rational roots.
pub fn fake_point_poly(fbin: &HypersurfaceSpec, c: &Rational) -> Result<CycleSpec> {
    check_binary(fbin)?;
    let roots = rational_roots(fbin.f()).ok_or(Error::NonRationalRoots)?;
    if roots.contains(c) {
        return Err(Error::RootCollision(c.to_string()));
    }
    let pt = [CycloNumber::from_rational(c.clone()), CycloNumber::one()];
    let a = fbin.partials()[1].evaluate(&pt)?;
    let b = fbin.partials()[0].evaluate(&pt)?;
    let num = &fbin.partials()[0].scale(&a) - &fbin.partials()[1].scale(&b);
    let den = &Polynomial::var(2, 0) - &Polynomial::var(2, 1).scale_rational(c);
    let poly = num.divide_exact(&den, MonomialOrder::Lex)?;
    Ok(CycleSpec {
        poly,
        d: fbin.d(),
        provenance: Provenance::FakePoint {
            c: c.clone(),
            roots,
        },
    })
}

/// The values a = ∂F/∂x1(c,1) and b = ∂F/∂x0(c,1).
pub fn fake_point_parameters(fbin: &HypersurfaceSpec, c: &Rational) -> Result<(Rational, Rational)> {
    let pt = [CycloNumber::from_rational(c.clone()), CycloNumber::one()];
    let a = fbin.partials()[1].evaluate(&pt)?;
    let b = fbin.partials()[0].evaluate(&pt)?;
    match (a.is_rational(), b.is_rational()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::NonRationalRoots),
    }
}

/// Coefficients q_1 … q_{d−1} with P = Σ q_i P_i over the point cycles of the
/// first d−1 roots of F = ∏ (x0 − r_i x1).
pub fn express_in_point_basis(p: &Polynomial, roots: &[Rational]) -> Result<Vec<Rational>> {
    let d = roots.len();
    if d < 2 {
        return Err(Error::Domain("need at least two roots".into()));
    }
    let spec = HypersurfaceSpec::new(binary_form_from_roots(roots))?;
    if p.nvars() != 2 || p.degree().map_or(false, |e| e as usize != d - 2) {
        return Err(Error::DegreeMismatch {
            expected: d as u32 - 2,
            found: p.degree().unwrap_or(0),
        });
    }
    let coeffs = p
        .rational_coefficients()
        .ok_or_else(|| Error::Domain("cycle polynomial has non-rational coefficients".into()))?;
    let basis: Vec<Polynomial> = roots[..d - 1]
        .iter()
        .map(|r| point_poly(&spec, &CycloNumber::from_rational(r.clone())).map(|c| c.poly))
        .collect::<Result<_>>()?;
    // equations: one per monomial x0^{d−2−k} x1^k
    let mono = |k: usize| Monomial::new(vec![(d - 2 - k) as u16, k as u16]);
    let equations: Vec<Vec<(usize, CycloNumber)>> = (0..d - 1)
        .map(|k| {
            basis
                .iter()
                .enumerate()
                .filter_map(|(i, b)| {
                    let c = b.coeff(&mono(k));
                    (!c.is_zero()).then_some((i, c))
                })
                .collect()
        })
        .collect();
    let rhs: Vec<CycloNumber> = (0..d - 1)
        .map(|k| {
            coeffs
                .iter()
                .find(|(m, _)| *m == mono(k))
                .map(|(_, q)| CycloNumber::from_rational(q.clone()))
                .unwrap_or_else(CycloNumber::zero)
        })
        .collect();
    let rank = crate::linalg::Echelon::from_rows(equations.clone()).rank();
    if rank != d - 1 {
        return Err(Error::SingularSystem);
    }
    let x = crate::linalg::solve(equations, rhs, d - 1).ok_or(Error::SingularSystem)?;
    Ok(x.into_iter().map(|v| v.is_rational().expect("rational system")).collect())
}

/// F(x) + G(y) over the concatenated variables.
pub fn join_hypersurface(f: &HypersurfaceSpec, g: &HypersurfaceSpec) -> Result<HypersurfaceSpec> {
    if f.d() != g.d() {
        return Err(Error::DegreeMismatch {
            expected: f.d(),
            found: g.d(),
        });
    }
    let n = f.nvars() + g.nvars();
    let sum = &f.f().rename_variables(0, n)? + &g.f().rename_variables(f.nvars(), n)?;
    HypersurfaceSpec::with_order(sum, f.order())
}

/// P_{Z1}(x) · P_{Z2}(y) over the concatenated variables.
pub fn join_poly(left: &CycleSpec, right: &CycleSpec) -> Result<CycleSpec> {
    if left.d != right.d {
        return Err(Error::DegreeMismatch {
            expected: left.d,
            found: right.d,
        });
    }
    let n = left.nvars() + right.nvars();
    let poly = &left.poly.rename_variables(0, n)? * &right.poly.rename_variables(left.nvars(), n)?;
    let expected = (left.d - 2) * (n as u32 / 2);
    if poly.degree() != Some(expected) {
        return Err(Error::DegreeMismatch {
            expected,
            found: poly.degree().unwrap_or(0),
        });
    }
    Ok(CycleSpec {
        poly,
        d: left.d,
        provenance: Provenance::Join {
            left: Box::new(left.clone()),
            right: Box::new(right.clone()),
        },
    })
}

/// Σ multiplicity_i · P_i.
pub fn combination_poly(spec: &HypersurfaceSpec, parts: &[(Rational, CycleSpec)]) -> Result<CycleSpec> {
    let mut poly = Polynomial::zero(spec.nvars());
    for (q, c) in parts {
        if c.nvars() != spec.nvars() {
            return Err(Error::ArityMismatch {
                expected: spec.nvars(),
                found: c.nvars(),
            });
        }
        poly = poly.checked_add(&c.poly.scale_rational(q))?;
    }
    if poly.is_zero() || spec.reduce_mod_jacobian(&poly).is_empty() {
        return Err(Error::ZeroClass);
    }
    Ok(CycleSpec {
        poly,
        d: spec.d(),
        provenance: Provenance::Combination {
            parts: parts.to_vec(),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinearType {
    Linear,
    FakeLinear,
    NotLinearType,
}

/// Classification of a cycle against linear cycles of a product-type hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearVerdict {
    pub verdict: LinearType,
    pub hilbert: HilbertFn,
    pub linear_hilbert: HilbertFn,
    /// Points (a : b) cut out by the degree-one colon forms, one per variable pair.
    pub points: Vec<(CycloNumber, CycloNumber)>,
}

/// Splits a product-type form into its binary summands F_j(x_{2j}, x_{2j+1}).
pub fn binary_blocks(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let nvars = f.nvars();
    if nvars % 2 != 0 {
        return Err(Error::Domain("odd number of variables".into()));
    }
    let mut blocks: Vec<Vec<(Monomial, CycloNumber)>> = vec![Vec::new(); nvars / 2];
    for (m, c) in f.terms() {
        let used: Vec<usize> = (0..nvars).filter(|&i| m.exponents()[i] > 0).collect();
        let j = used[0] / 2;
        if used.iter().any(|&i| i / 2 != j) {
            return Err(Error::Domain(
                "hypersurface is not a sum of binary forms in variable pairs".into(),
            ));
        }
        let e = m.exponents();
        blocks[j].push((Monomial::new(vec![e[2 * j], e[2 * j + 1]]), c.clone()));
    }
    blocks
        .into_iter()
        .map(|terms| Polynomial::from_terms(2, terms))
        .collect()
}

/// Linear, fake linear, or neither, for a cycle on F = Σ F_j(x_{2j}, x_{2j+1}).
pub fn is_fake_linear(spec: &HypersurfaceSpec, p: &Polynomial) -> Result<LinearVerdict> {
    let blocks = binary_blocks(spec.f())?;
    let hilbert = cycle_hilbert(spec, p)?;
    let linear_hilbert = HilbertFn::linear(spec.d(), spec.n());
    let verdict = |v, points| LinearVerdict {
        verdict: v,
        hilbert: hilbert.clone(),
        linear_hilbert: linear_hilbert.clone(),
        points,
    };
    if hilbert != linear_hilbert {
        return Ok(verdict(LinearType::NotLinearType, Vec::new()));
    }
    let forms = colon_piece(spec, p, 1)?;
    let mut points: Vec<Option<(CycloNumber, CycloNumber)>> = vec![None; blocks.len()];
    for row in forms.basis_polynomials() {
        let vars: Vec<usize> = row
            .terms()
            .map(|(m, _)| m.exponents().iter().position(|&e| e > 0).unwrap())
            .collect();
        let j = vars[0] / 2;
        if vars.iter().any(|&v| v / 2 != j) || points[j].is_some() {
            return Ok(verdict(LinearType::FakeLinear, Vec::new()));
        }
        // row = α x_{2j} + β x_{2j+1} vanishes at (β : −α)
        let alpha = row.coeff(&Monomial::var(spec.nvars(), 2 * j));
        let beta = row.coeff(&Monomial::var(spec.nvars(), 2 * j + 1));
        points[j] = Some((beta, -alpha));
    }
    let Some(points) = points.into_iter().collect::<Option<Vec<_>>>() else {
        return Ok(verdict(LinearType::FakeLinear, Vec::new()));
    };
    let nvars = spec.nvars();
    let mut honest = Polynomial::one(nvars);
    let mut all_on = true;
    for (j, (fj, (a, b))) in blocks.iter().zip(&points).enumerate() {
        if !fj.evaluate(&[a.clone(), b.clone()])?.is_zero() {
            all_on = false;
            break;
        }
        let bspec = HypersurfaceSpec::with_order(fj.clone(), spec.order())?;
        let pp = projective_point_poly(&bspec, a, b)?;
        honest = &honest * &pp.rename_variables(2 * j, nvars)?;
    }
    let v = if all_on && classes_proportional(spec, p, &honest)? {
        LinearType::Linear
    } else {
        LinearType::FakeLinear
    };
    Ok(verdict(v, points))
}

/// Checks R^{f+g,δ} = R^{f,P1} ⊗ R^{g,P2}: the Hilbert function of the joined
/// algebra is the convolution and every lifted colon generator lies in (J^{f+g} : δ).
/// `delta` defaults to P1·P2.
pub fn verify_tensor_decomposition(
    f: &HypersurfaceSpec,
    g: &HypersurfaceSpec,
    p1: &Polynomial,
    p2: &Polynomial,
    delta: Option<&Polynomial>,
) -> Result<bool> {
    let joined = join_hypersurface(f, g)?;
    let n = joined.nvars();
    let default_delta;
    let delta = match delta {
        Some(d) => d,
        None => {
            default_delta = &p1.rename_variables(0, n)? * &p2.rename_variables(f.nvars(), n)?;
            &default_delta
        }
    };
    let h1 = cycle_hilbert(f, p1)?;
    let h2 = cycle_hilbert(g, p2)?;
    let hj = match cycle_hilbert(&joined, delta) {
        Ok(h) => h,
        Err(Error::ZeroClass) => return Ok(false),
        Err(e) => return Err(e),
    };
    if hj != hf_convolution(&h1, &h2) {
        return Ok(false);
    }
    let colon = Colon::new(&joined, delta)?;
    for (spec, p, offset, h) in [(f, p1, 0, &h1), (g, p2, f.nvars(), &h2)] {
        let inner = Colon::new(spec, p)?;
        for e in 0..=h.socle_degree() as u32 + 1 {
            for gen in inner.piece(e).basis_polynomials() {
                if !colon.contains(&gen.rename_variables(offset, n)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
