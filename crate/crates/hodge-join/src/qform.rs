//! The quadratic fundamental form q(G, H) = Σ (H ∂Q_i/∂x_i − R_i ∂G/∂x_i) with
//! values in R^F/⟨P⟩, its join identity, and the non-smoothness witnesses.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cycles::{
    fake_point_poly, is_fake_linear, join_hypersurface, point_poly, rational_roots, LinearType,
};
use crate::error::{Error, Result};
use crate::field::{zeta_pow, CycloNumber, Rational};
use crate::grading::{sub_keys, Grading};
use crate::jacobian::{ideal_piece, reduce_in, Colon, GradedIdeal, HypersurfaceSpec};
use crate::linalg::{solve, SparseRow};
use crate::poly::{monomial_basis, Monomial, Polynomial};

/// Q_0, …, Q_{n+1} with A = Σ Q_i ∂F/∂x_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulDecomposition {
    pub components: Vec<Polynomial>,
}

impl KoszulDecomposition {
    /// Σ Q_i ∂F/∂x_i.
    pub fn expand(&self, spec: &HypersurfaceSpec) -> Polynomial {
        let mut out = Polynomial::zero(spec.nvars());
        for (q, f) in self.components.iter().zip(spec.partials()) {
            out = out.checked_add(&q.checked_mul(f).unwrap()).unwrap();
        }
        out
    }
}

fn decompose_in(spec: &HypersurfaceSpec, grading: &Grading, a: &Polynomial) -> Result<KoszulDecomposition> {
    let nvars = spec.nvars();
    let mut comps: Vec<Vec<(Monomial, CycloNumber)>> = vec![Vec::new(); nvars];
    if a.is_zero() {
        return Ok(KoszulDecomposition {
            components: vec![Polynomial::zero(nvars); nvars],
        });
    }
    let deg = a.degree().unwrap();
    if deg + 1 < spec.d() {
        return Err(Error::NotInIdeal);
    }
    let pkeys: Vec<Option<Vec<u32>>> = spec.partials().iter().map(|p| grading.poly_key(p)).collect();
    let mut parts: Vec<_> = grading.split(a).into_iter().collect();
    parts.sort_by(|x, y| x.0.cmp(&y.0));
    for (key, terms) in parts {
        let mut row_of: HashMap<Monomial, usize> = HashMap::new();
        let mut equations: Vec<SparseRow> = Vec::new();
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        for (i, pk) in pkeys.iter().enumerate() {
            let Some(pk) = pk else { continue };
            let Some(mk) = sub_keys(&key, pk) else { continue };
            for m in grading.monomials(&mk, spec.order()) {
                let u = unknowns.len();
                for (fm, fc) in spec.partials()[i].terms() {
                    let target = m.mul(fm);
                    let r = *row_of.entry(target).or_insert_with(|| {
                        equations.push(Vec::new());
                        equations.len() - 1
                    });
                    equations[r].push((u, fc.clone()));
                }
                unknowns.push((i, m));
            }
        }
        let mut rhs = vec![CycloNumber::zero(); equations.len()];
        for (m, c) in &terms {
            match row_of.get(m) {
                Some(&r) => rhs[r] = c.clone(),
                None => return Err(Error::NotInIdeal),
            }
        }
        let x = solve(equations, rhs, unknowns.len()).ok_or(Error::NotInIdeal)?;
        for ((i, m), v) in unknowns.into_iter().zip(x) {
            if !v.is_zero() {
                comps[i].push((m, v));
            }
        }
    }
    let components = comps
        .into_iter()
        .map(|t| Polynomial::from_terms(nvars, t))
        .collect::<Result<_>>()?;
    Ok(KoszulDecomposition { components })
}

/// Writes A ∈ J^F as Σ Q_i ∂F/∂x_i; free variables of the linear system are set to zero.
pub fn koszul_decompose(spec: &HypersurfaceSpec, a: &Polynomial) -> Result<KoszulDecomposition> {
    decompose_in(spec, &spec.grading_with(&[]), a)
}

/// A value of q as a class in R^F/⟨P⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QffValue {
    pub representative: Polynomial,
    pub degree: i64,
    /// Normal form modulo J^F + ⟨P⟩ on standard monomials.
    pub class_coords: Vec<(Monomial, CycloNumber)>,
    pub is_zero: bool,
    /// Both arguments have degree d.
    pub maclean_certified: bool,
}

/// Shared data for evaluating q for a fixed hypersurface and cycle polynomial.
pub struct QffContext<'a> {
    spec: &'a HypersurfaceSpec,
    p: Polynomial,
    grading: Grading,
    quotient: GradedIdeal,
}

impl<'a> QffContext<'a> {
    pub fn new(spec: &'a HypersurfaceSpec, p: &Polynomial) -> Result<QffContext<'a>> {
        if p.nvars() != spec.nvars() {
            return Err(Error::ArityMismatch {
                expected: spec.nvars(),
                found: p.nvars(),
            });
        }
        let grading = spec.grading_with(&[p]);
        let mut gens = spec.partials().to_vec();
        gens.push(p.clone());
        let quotient = GradedIdeal::new(&gens, grading.clone(), spec.order());
        Ok(QffContext {
            spec,
            p: p.clone(),
            grading,
            quotient,
        })
    }

    pub fn spec(&self) -> &HypersurfaceSpec {
        self.spec
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    /// Decomposition of G·P; `NotInColonIdeal` when G·P ∉ J^F.
    pub fn decompose(&self, g: &Polynomial) -> Result<KoszulDecomposition> {
        let gp = g.checked_mul(&self.p)?;
        decompose_in(self.spec, &self.grading, &gp).map_err(|e| match e {
            Error::NotInIdeal => Error::NotInColonIdeal,
            e => e,
        })
    }

    /// Class of a polynomial in R^F/⟨P⟩.
    pub fn class_of(&self, a: &Polynomial) -> Vec<(Monomial, CycloNumber)> {
        reduce_in(&self.quotient, a)
    }

    /// q(G, H) from given decompositions G·P = Σ Q_i F_i and H·P = Σ R_i F_i.
    pub fn evaluate_with(
        &self,
        g: &Polynomial,
        h: &Polynomial,
        qg: &KoszulDecomposition,
        rh: &KoszulDecomposition,
    ) -> Result<QffValue> {
        let nvars = self.spec.nvars();
        let mut rep = Polynomial::zero(nvars);
        for i in 0..nvars {
            let a = h.checked_mul(&qg.components[i].partial_derivative(i))?;
            let b = rh.components[i].checked_mul(&g.partial_derivative(i))?;
            rep = rep.checked_add(&a)?.checked_sub(&b)?;
        }
        let degree = g.degree().unwrap_or(0) as i64 + h.degree().unwrap_or(0) as i64
            + self.p.degree().unwrap_or(0) as i64
            - self.spec.d() as i64;
        let class_coords = self.class_of(&rep);
        let d = Some(self.spec.d());
        Ok(QffValue {
            is_zero: class_coords.is_empty(),
            representative: rep,
            degree,
            class_coords,
            maclean_certified: g.degree() == d && h.degree() == d,
        })
    }

    pub fn evaluate(&self, g: &Polynomial, h: &Polynomial) -> Result<QffValue> {
        let qg = self.decompose(g)?;
        let rh = self.decompose(h)?;
        self.evaluate_with(g, h, &qg, &rh)
    }
}

/// q(G, H) ∈ R^F/⟨P⟩.
pub fn qff_pair(spec: &HypersurfaceSpec, p: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<QffValue> {
    QffContext::new(spec, p)?.evaluate(g, h)
}

/// Outcome of evaluating q on all pairs of a basis of (J^F : P)_e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QffVanishing {
    pub degree: u32,
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub vanishes: bool,
    pub witness: Option<(Polynomial, Polynomial, QffValue)>,
}

/// Whether q vanishes on Sym²((J^F : P)_e).
pub fn qff_vanishes_on_degree(spec: &HypersurfaceSpec, p: &Polynomial, e: u32) -> Result<QffVanishing> {
    let ctx = QffContext::new(spec, p)?;
    let basis = Colon::new(spec, p)?.piece(e).basis_polynomials();
    let decs: Vec<KoszulDecomposition> = basis
        .par_iter()
        .map(|g| ctx.decompose(g))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i..basis.len()).map(move |j| (i, j)))
        .collect();
    let values: Vec<QffValue> = pairs
        .par_iter()
        .map(|&(i, j)| ctx.evaluate_with(&basis[i], &basis[j], &decs[i], &decs[j]))
        .collect::<Result<_>>()?;
    let witness = pairs
        .iter()
        .zip(values)
        .find(|(_, v)| !v.is_zero)
        .map(|(&(i, j), v)| (basis[i].clone(), basis[j].clone(), v));
    Ok(QffVanishing {
        degree: e,
        basis_size: basis.len(),
        pairs_checked: pairs.len(),
        vanishes: witness.is_none(),
        witness,
    })
}

/// Both sides of the join identity
/// q(G, H) = A1 B1 P2 q1(G1, H1) + A2 B2 P1 q2(G2, H2) in R^{f+g}/⟨P1 P2⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinIdentityCheck {
    pub lhs: QffValue,
    pub rhs_class: Vec<(Monomial, CycloNumber)>,
    pub holds: bool,
}

/// Arguments of [`qff_join_check`]: G_i, H_i live in the factor rings, A_i, B_i in the joined ring.
#[derive(Clone, Debug)]
pub struct JoinQffInput {
    pub g1: Polynomial,
    pub h1: Polynomial,
    pub g2: Polynomial,
    pub h2: Polynomial,
    pub a1: Polynomial,
    pub a2: Polynomial,
    pub b1: Polynomial,
    pub b2: Polynomial,
}

fn lin_comb(x1: &Polynomial, y1: &Polynomial, x2: &Polynomial, y2: &Polynomial) -> Result<Polynomial> {
    let a = x1.checked_mul(y1)?;
    let b = x2.checked_mul(y2)?;
    a.checked_add(&b)
}

pub fn qff_join_check(
    f: &HypersurfaceSpec,
    g: &HypersurfaceSpec,
    p1: &Polynomial,
    p2: &Polynomial,
    input: &JoinQffInput,
) -> Result<JoinIdentityCheck> {
    let joined = join_hypersurface(f, g)?;
    let n = joined.nvars();
    let lift1 = |p: &Polynomial| p.rename_variables(0, n);
    let lift2 = |p: &Polynomial| p.rename_variables(f.nvars(), n);
    let (p1u, p2u) = (lift1(p1)?, lift2(p2)?);
    let delta = p1u.checked_mul(&p2u)?;
    let big_g = lin_comb(&input.a1, &lift1(&input.g1)?, &input.a2, &lift2(&input.g2)?)?;
    let big_h = lin_comb(&input.b1, &lift1(&input.h1)?, &input.b2, &lift2(&input.h2)?)?;
    let ctx = QffContext::new(&joined, &delta)?;
    let lhs = ctx.evaluate(&big_g, &big_h)?;
    let q1 = qff_pair(f, p1, &input.g1, &input.h1)?;
    let q2 = qff_pair(g, p2, &input.g2, &input.h2)?;
    let t1 = input
        .a1
        .checked_mul(&input.b1)?
        .checked_mul(&p2u)?
        .checked_mul(&lift1(&q1.representative)?)?;
    let t2 = input
        .a2
        .checked_mul(&input.b2)?
        .checked_mul(&p1u)?
        .checked_mul(&lift2(&q2.representative)?)?;
    let rhs = if t1.is_zero() { t2 } else if t2.is_zero() { t1 } else { t1.checked_add(&t2)? };
    let rhs_class = ctx.class_of(&rhs);
    let diff = if rhs.is_zero() || lhs.representative.is_zero() || rhs.degree() == lhs.representative.degree() {
        lhs.representative.checked_sub(&rhs)?
    } else {
        return Err(Error::DegreeMismatch {
            expected: lhs.representative.degree().unwrap_or(0),
            found: rhs.degree().unwrap_or(0),
        });
    };
    Ok(JoinIdentityCheck {
        holds: ctx.class_of(&diff).is_empty(),
        lhs,
        rhs_class,
    })
}

/// One restriction obligation q1|Sym²(J_ℓ) · C[x]_j = 0 for a join with a factor of
/// total dimension `n_rest` = n − k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obligation {
    pub l: u32,
    pub j: u32,
    pub holds: bool,
}

/// Enumerates the (ℓ, j) with ℓ ≤ e, j ≤ 2(e−ℓ), 2(e−ℓ)−j ≤ (d−2)(n−k)/2 and checks
/// q1(G, H)·x^β = 0 in R^f/⟨P1⟩ for basis pairs of (J^f : P1)_ℓ and monomials x^β of degree j.
pub fn join_restriction_obligations(
    f: &HypersurfaceSpec,
    p1: &Polynomial,
    n_minus_k: u32,
    e: u32,
) -> Result<Vec<Obligation>> {
    let ctx = QffContext::new(f, p1)?;
    let colon = Colon::new(f, p1)?;
    let bound = (f.d() - 2) * n_minus_k / 2;
    let mut out = Vec::new();
    for l in 0..=e {
        let basis = colon.piece(l).basis_polynomials();
        let decs: Vec<KoszulDecomposition> = basis.iter().map(|g| ctx.decompose(g)).collect::<Result<_>>()?;
        let mut reps = Vec::new();
        for i in 0..basis.len() {
            for k in i..basis.len() {
                let v = ctx.evaluate_with(&basis[i], &basis[k], &decs[i], &decs[k])?;
                if !v.is_zero {
                    reps.push(v.representative);
                }
            }
        }
        for j in 0..=2 * (e - l) {
            if 2 * (e - l) - j > bound {
                continue;
            }
            let monos = monomial_basis(f.nvars(), j, f.order());
            let holds = reps.iter().all(|r| {
                monos.iter().all(|m| {
                    let prod = r.mul_monomial(m, &CycloNumber::one());
                    ctx.class_of(&prod).is_empty()
                })
            });
            out.push(Obligation { l, j, holds });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessStatus {
    Computed,
    Degenerate,
}

/// Determinant witness for a combination r·[point at ζ] + ř·[point at ζ^α0] on x0^d + x1^d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem4Report {
    pub d: u32,
    pub alpha0: u32,
    pub r: Rational,
    pub r_check: Rational,
    pub status: WitnessStatus,
    pub cycle: Option<Polynomial>,
    /// G with the sign making it a member of the colon ideal.
    pub g: Option<Polynomial>,
    pub printed_g_in_colon: Option<bool>,
    pub qgg: Option<Polynomial>,
    pub printed_qgg_same_class: Option<bool>,
    /// Columns (q(G,G), Q1, Q2) in the basis x0^{d−2}x1^{d−4}, x0^{d−3}x1^{d−3}, x0^{d−4}x1^{d−2}.
    pub matrix: Vec<Vec<CycloNumber>>,
    pub det: Option<CycloNumber>,
    /// ζ^{3α0+3}(ζ^{α0} − ζ)^3 r² ř² (r − ř)
    pub printed_formula: Option<CycloNumber>,
    /// ζ^{3α0+3}(ζ^{α0} − ζ)^5 r² ř² (r − ř)
    pub corrected_formula: Option<CycloNumber>,
    pub printed_sign: Option<i8>,
    pub corrected_sign: Option<i8>,
    pub nonzero: bool,
    /// det ≠ 0 exactly when r ≠ ř.
    pub verdict_consistent: bool,
}

fn sign_relation(det: &CycloNumber, formula: &CycloNumber) -> Option<i8> {
    if det == formula {
        Some(1)
    } else if *det == -formula {
        Some(-1)
    } else {
        None
    }
}

fn det3(m: &[Vec<CycloNumber>]) -> CycloNumber {
    let minor = |a: usize, b: usize, c: usize, e: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][e]);
    let t0 = &m[0][0] * &minor(1, 2, 2, 1);
    let t1 = &m[0][1] * &minor(0, 2, 2, 0);
    let t2 = &m[0][2] * &minor(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

/// Evaluates the determinant witness; d = 3 is reported as degenerate.
pub fn theorem4_witness(d: u32, alpha0: u32, r: &Rational, r_check: &Rational) -> Result<Theorem4Report> {
    if d < 3 {
        return Err(Error::Domain(format!("degree {d} < 3")));
    }
    if alpha0 % 2 == 0 || alpha0 < 3 || alpha0 >= 2 * d {
        return Err(Error::Domain(format!("alpha0 = {alpha0} must be odd in 3..{}", 2 * d - 1)));
    }
    if r.is_zero() || r_check.is_zero() {
        return Err(Error::Domain("multiplicities must be nonzero".into()));
    }
    let mut report = Theorem4Report {
        d,
        alpha0,
        r: r.clone(),
        r_check: r_check.clone(),
        status: WitnessStatus::Degenerate,
        cycle: None,
        g: None,
        printed_g_in_colon: None,
        qgg: None,
        printed_qgg_same_class: None,
        matrix: Vec::new(),
        det: None,
        printed_formula: None,
        corrected_formula: None,
        printed_sign: None,
        corrected_sign: None,
        nonzero: false,
        verdict_consistent: false,
    };
    if d == 3 {
        return Ok(report);
    }
    let f = HypersurfaceSpec::fermat(d, 2);
    let z = zeta_pow(2 * d, 1);
    let w = zeta_pow(2 * d, alpha0 as i64);
    let rc = CycloNumber::from_rational(r.clone());
    let rcc = CycloNumber::from_rational(r_check.clone());
    let mix = |k: i64| -> CycloNumber { &(&rc * &z.pow(k).unwrap()) + &(&rcc * &w.pow(k).unwrap()) };
    let p = point_poly(&f, &z)?
        .poly
        .scale(&rc)
        .checked_add(&point_poly(&f, &w)?.poly.scale(&rcc))?;
    let x0 = Polynomial::var(2, 0);
    let x1 = Polynomial::var(2, 1);
    let x1pow = x1.pow(d - 3);
    let g = &x1pow * &(&x0.scale(&mix(1)) - &x1.scale(&mix(2)));
    let printed_g = &x1pow * &(&x0.scale(&mix(1)) + &x1.scale(&mix(2)));
    let colon = Colon::new(&f, &p)?;
    report.printed_g_in_colon = Some(colon.contains(&printed_g));
    let ctx = QffContext::new(&f, &p)?;
    let q = ctx.evaluate(&g, &g)?;
    let qred = f.reduce_mod_jacobian(&q.representative);
    let basis: Vec<Monomial> = (0..3)
        .map(|k| Monomial::new(vec![(d - 2 - k) as u16, (d - 4 + k) as u16]))
        .collect();
    let qcol: Vec<CycloNumber> = basis
        .iter()
        .map(|b| {
            qred.iter()
                .find(|(m, _)| m == b)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(CycloNumber::zero)
        })
        .collect();
    let q1: Vec<CycloNumber> = (1..=3).map(mix).collect();
    let q2: Vec<CycloNumber> = (2..=4).map(mix).collect();
    // rows indexed by basis monomials, columns (q, Q1, Q2)
    let matrix: Vec<Vec<CycloNumber>> = (0..3)
        .map(|k| vec![qcol[k].clone(), q1[k].clone(), q2[k].clone()])
        .collect();
    let det = det3(&matrix);

    // printed representative of q1(G,G)
    let dd = CycloNumber::from_integer(d as i64 - 1);
    let zp = |k: i64| z.pow(k).unwrap();
    let wp = |k: i64| w.pow(k).unwrap();
    let a0 = alpha0 as i64;
    let pre = &(&(&rc * &rcc) * &zp(a0 + 1)) * &(&w - &z).pow(2)?;
    let cx0 = &(&rc * &(&(&zp(2) * &dd) + &zp(a0 + 1))) + &(&rcc * &(&(&wp(2) * &dd) + &zp(a0 + 1)));
    let cx1 = &(&rc * &(&(&(&dd * &zp(2)) * &(&w + &z)) + &(&CycloNumber::from_integer(2) * &zp(2 * a0 + 1))))
        + &(&rcc * &(&(&(&dd * &wp(2)) * &(&w + &z)) + &(&CycloNumber::from_integer(2) * &zp(a0 + 2))));
    let printed_q = Polynomial::from_terms(
        2,
        [
            (Monomial::new(vec![(d - 3) as u16, (d - 3) as u16]), &pre * &cx0),
            (Monomial::new(vec![(d - 4) as u16, (d - 2) as u16]), &pre * &cx1),
        ],
    )?;
    report.printed_qgg_same_class = Some(ctx.class_of(&q.representative.checked_sub(&printed_q)?).is_empty());

    let rr = CycloNumber::from_rational(&(&(r * r) * &(r_check * r_check)) * &(r - r_check));
    let base = &zp(3 * a0 + 3) * &rr;
    let printed = &base * &(&w - &z).pow(3)?;
    let corrected = &base * &(&w - &z).pow(5)?;
    report.status = WitnessStatus::Computed;
    report.cycle = Some(p);
    report.g = Some(g);
    report.qgg = Some(q.representative);
    report.matrix = matrix;
    report.printed_sign = sign_relation(&det, &printed);
    report.corrected_sign = sign_relation(&det, &corrected);
    report.nonzero = !det.is_zero();
    report.verdict_consistent = report.nonzero == (r != r_check);
    report.det = Some(det);
    report.printed_formula = Some(printed);
    report.corrected_formula = Some(corrected);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem6Verdict {
    NotSmoothCertified,
    SmoothExpected,
    Degenerate,
    /// A fake factor exists but d ≥ 2 + 6/n fails.
    OutsideHypothesis,
}

/// Certificate data for one binary factor F_i with parameter c_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCertificate {
    pub index: usize,
    pub fake: bool,
    pub c: CycloNumber,
    pub cycle: Polynomial,
    /// q_i(x − c y, x − c y) as computed from the definition.
    pub computed_constant: Option<CycloNumber>,
    /// d·F_i(c, 1).
    pub stated_constant: CycloNumber,
    pub matches_stated: Option<bool>,
    pub nonzero: Option<bool>,
    /// dim (R^{F_i}/⟨P⟩)_{2d−5}.
    pub quotient_dim: Option<usize>,
    /// A monomial Q of degree 2d−5 with Q·(x − c y) ∉ J^{F_i} and Q ∉ J^{F_i} + ⟨P⟩.
    pub multiplier: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem6Report {
    pub verdict: Theorem6Verdict,
    pub d: u32,
    pub n: usize,
    pub hypothesis_holds: bool,
    pub factors: Vec<FactorCertificate>,
    pub join_type: Option<LinearType>,
}

fn factor_certificate(index: usize, fi: &HypersurfaceSpec, c: &CycloNumber) -> Result<FactorCertificate> {
    let d = fi.d();
    let pt = [c.clone(), CycloNumber::one()];
    let value = fi.f().evaluate(&pt)?;
    let stated_constant = &CycloNumber::from_integer(d as i64) * &value;
    if value.is_zero() {
        return Ok(FactorCertificate {
            index,
            fake: false,
            c: c.clone(),
            cycle: point_poly(fi, c)?.poly,
            computed_constant: None,
            stated_constant,
            matches_stated: None,
            nonzero: None,
            quotient_dim: None,
            multiplier: None,
        });
    }
    let cq = c
        .is_rational()
        .ok_or_else(|| Error::Domain(format!("fake parameter {c} is not rational")))?;
    rational_roots(fi.f()).ok_or(Error::NonRationalRoots)?;
    let p = fake_point_poly(fi, &cq)?.poly;
    let ell = &Polynomial::var(2, 0) - &Polynomial::var(2, 1).scale(c);
    let ctx = QffContext::new(fi, &p)?;
    let q = ctx.evaluate(&ell, &ell)?;
    let constant = q
        .class_coords
        .first()
        .map(|(_, v)| v.clone())
        .unwrap_or_else(CycloNumber::zero);
    let mut quotient_dim = None;
    let mut multiplier = None;
    if d >= 3 {
        let e = 2 * d - 5;
        let monos = monomial_basis(2, e, fi.order());
        let mut gens = fi.partials().to_vec();
        gens.push(p.clone());
        quotient_dim = Some(monos.len() - ideal_piece(&gens, fi, e).rank());
        multiplier = monos
            .into_iter()
            .map(|m| Polynomial::term(m, CycloNumber::one()))
            .find(|qm| {
                let prod = qm * &ell;
                !fi.reduce_mod_jacobian(&prod).is_empty() && !ctx.class_of(qm).is_empty()
            });
    }
    Ok(FactorCertificate {
        index,
        fake: true,
        c: c.clone(),
        cycle: p,
        matches_stated: Some(constant == stated_constant),
        nonzero: Some(!constant.is_zero()),
        computed_constant: Some(constant),
        stated_constant,
        quotient_dim,
        multiplier,
    })
}

/// Non-smoothness certificate for the join of point or fake point cycles on
/// X = {F_0(x0,x1) + F_1(x2,x3) + … = 0}. A factor is honest when F_i(c_i, 1) = 0.
pub fn theorem6_check(factors: &[HypersurfaceSpec], c: &[CycloNumber]) -> Result<Theorem6Report> {
    if factors.is_empty() || factors.len() != c.len() {
        return Err(Error::Domain("need one parameter per binary factor".into()));
    }
    let d = factors[0].d();
    if factors.iter().any(|f| f.d() != d || f.nvars() != 2) {
        return Err(Error::Domain("factors must be binary forms of a common degree".into()));
    }
    let n = 2 * (factors.len() - 1);
    let hypothesis_holds = n > 0 && n as u32 * (d - 2) >= 6;
    if d <= 2 {
        return Ok(Theorem6Report {
            verdict: Theorem6Verdict::Degenerate,
            d,
            n,
            hypothesis_holds,
            factors: Vec::new(),
            join_type: None,
        });
    }
    let certs: Vec<FactorCertificate> = factors
        .par_iter()
        .zip(c.par_iter())
        .enumerate()
        .map(|(i, (f, ci))| factor_certificate(i, f, ci))
        .collect::<Result<_>>()?;
    let any_fake = certs.iter().any(|c| c.fake);
    let certified = certs.iter().filter(|c| c.fake).all(|c| {
        c.nonzero == Some(true) && c.quotient_dim.map_or(false, |q| q > 0) && c.multiplier.is_some()
    });
    let mut join_type = None;
    if factors.len() > 1 {
        let mut spec = factors[0].clone();
        let mut poly = certs[0].cycle.clone();
        for (f, cert) in factors[1..].iter().zip(&certs[1..]) {
            let n2 = spec.nvars() + 2;
            poly = &poly.rename_variables(0, n2)? * &cert.cycle.rename_variables(spec.nvars(), n2)?;
            spec = join_hypersurface(&spec, f)?;
        }
        join_type = Some(is_fake_linear(&spec, &poly)?.verdict);
    }
    let verdict = if !any_fake {
        Theorem6Verdict::SmoothExpected
    } else if !hypothesis_holds {
        Theorem6Verdict::OutsideHypothesis
    } else if certified {
        Theorem6Verdict::NotSmoothCertified
    } else {
        Theorem6Verdict::Degenerate
    };
    Ok(Theorem6Report {
        verdict,
        d,
        n,
        hypothesis_holds,
        factors: certs,
        join_type,
    })
}

#[cfg(test)]
mod tests;
