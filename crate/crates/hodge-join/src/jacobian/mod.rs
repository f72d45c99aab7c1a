//! Graded linear algebra on Jacobian rings: colon ideals, Hilbert functions,
//! Gorenstein certification, ideal equality and membership.

mod ideal;
mod subspace;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

pub(crate) use ideal::GradedIdeal;
pub use subspace::{GradedSubspace, QuotientPresentation};

use crate::error::{Error, Result};
use crate::field::{CycloNumber, Rational};
use crate::grading::{add_keys, sub_keys, Grading};
use crate::linalg::{kernel, Echelon, SparseRow};
use crate::poly::{monomial_basis, Monomial, MonomialOrder, Polynomial};

/// A hypersurface {F = 0} with its Jacobian ideal.
#[derive(Debug)]
pub struct HypersurfaceSpec {
    f: Polynomial,
    d: u32,
    order: MonomialOrder,
    partials: Vec<Polynomial>,
    smooth: bool,
    jacobian: RwLock<HashMap<Grading, Arc<GradedIdeal>>>,
}

impl Clone for HypersurfaceSpec {
    fn clone(&self) -> Self {
        HypersurfaceSpec {
            f: self.f.clone(),
            d: self.d,
            order: self.order,
            partials: self.partials.clone(),
            smooth: self.smooth,
            jacobian: RwLock::new(self.jacobian.read().unwrap().clone()),
        }
    }
}

impl HypersurfaceSpec {
    /// Builds and certifies a smooth hypersurface of even dimension (grevlex order).
    pub fn new(f: Polynomial) -> Result<HypersurfaceSpec> {
        HypersurfaceSpec::with_order(f, MonomialOrder::Grevlex)
    }

    pub fn with_order(f: Polynomial, order: MonomialOrder) -> Result<HypersurfaceSpec> {
        let spec = HypersurfaceSpec::uncertified(f, order)?;
        if spec.nvars() % 2 != 0 {
            return Err(Error::Domain(format!(
                "hypersurface in {} variables has odd dimension",
                spec.nvars()
            )));
        }
        if !spec.smooth {
            return Err(Error::NotSmooth(
                "Jacobian ring is not Artinian with one-dimensional socle".into(),
            ));
        }
        Ok(spec)
    }

    /// Builds the spec and records (but does not require) smoothness.
    pub fn uncertified(f: Polynomial, order: MonomialOrder) -> Result<HypersurfaceSpec> {
        let d = f
            .degree()
            .ok_or_else(|| Error::Domain("defining form is zero".into()))?;
        if d < 2 {
            return Err(Error::Domain(format!("degree {d} is below 2")));
        }
        let partials = (0..f.nvars()).map(|i| f.partial_derivative(i)).collect();
        let mut spec = HypersurfaceSpec {
            f,
            d,
            order,
            partials,
            smooth: false,
            jacobian: RwLock::new(HashMap::new()),
        };
        spec.smooth = spec.compute_smoothness();
        Ok(spec)
    }

    /// Fermat form x_0^d + … + x_{nvars−1}^d.
    pub fn fermat(d: u32, nvars: usize) -> HypersurfaceSpec {
        HypersurfaceSpec::new(fermat_poly(d, nvars)).expect("Fermat hypersurfaces are smooth")
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Dimension n = nvars − 2.
    pub fn n(&self) -> usize {
        self.nvars() - 2
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn partials(&self) -> &[Polynomial] {
        &self.partials
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Socle degree (d−2)(n+2) of the Jacobian ring.
    pub fn jacobian_socle_degree(&self) -> u32 {
        (self.d - 2) * self.nvars() as u32
    }

    /// Socle degree (d−2)(n/2+1) of the algebra of a Hodge cycle.
    pub fn cycle_degree(&self) -> u32 {
        (self.d - 2) * (self.nvars() as u32 / 2)
    }

    fn monomial_partials(&self) -> Option<Vec<Monomial>> {
        self.partials
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.is_monomial().then(|| p.terms().next().unwrap().0.clone()))
            .collect()
    }

    pub(crate) fn jacobian_ideal(&self, grading: &Grading) -> Arc<GradedIdeal> {
        if let Some(j) = self.jacobian.read().unwrap().get(grading) {
            return j.clone();
        }
        let j = Arc::new(GradedIdeal::new(&self.partials, grading.clone(), self.order));
        self.jacobian
            .write()
            .unwrap()
            .entry(grading.clone())
            .or_insert(j)
            .clone()
    }

    pub(crate) fn grading_with(&self, extra: &[&Polynomial]) -> Grading {
        let mut polys: Vec<&Polynomial> = self.partials.iter().collect();
        polys.extend_from_slice(extra);
        Grading::finest(self.nvars(), &polys)
    }

    /// dim R^F_e.
    pub fn jacobian_quotient_dim(&self, e: u32) -> usize {
        if let Some(lead) = self.monomial_partials() {
            return monomial_basis(self.nvars(), e, self.order)
                .iter()
                .filter(|m| !lead.iter().any(|l| l.divides(m)))
                .count();
        }
        let grading = self.grading_with(&[]);
        let jac = self.jacobian_ideal(&grading);
        grading
            .components(e)
            .par_iter()
            .map(|k| jac.component(k).dim_quotient())
            .sum()
    }

    fn compute_smoothness(&self) -> bool {
        let s = self.jacobian_socle_degree();
        self.jacobian_quotient_dim(s) == 1 && self.jacobian_quotient_dim(s + 1) == 0
    }

    /// Normal form of `a` modulo J^F as coset coordinates, or `None` when `a` is in J^F.
    pub fn reduce_mod_jacobian(&self, a: &Polynomial) -> Vec<(Monomial, CycloNumber)> {
        let grading = self.grading_with(&[]);
        let jac = self.jacobian_ideal(&grading);
        reduce_in(&jac, a)
    }
}

/// Coset coordinates (standard monomial, coefficient) of `a` modulo a graded ideal.
pub(crate) fn reduce_in(ideal: &GradedIdeal, a: &Polynomial) -> Vec<(Monomial, CycloNumber)> {
    let mut out = Vec::new();
    let mut parts: Vec<_> = ideal.grading().split(a).into_iter().collect();
    parts.sort_by(|x, y| x.0.cmp(&y.0));
    for (key, terms) in parts {
        let comp = ideal.component(&key);
        for (pos, c) in comp.reduce_terms(terms.iter().map(|(m, c)| (m, c))) {
            out.push((comp.monomials[comp.standard[pos]].clone(), c));
        }
    }
    out
}

pub fn fermat_poly(d: u32, nvars: usize) -> Polynomial {
    let terms = (0..nvars).map(|i| {
        let mut e = vec![0u16; nvars];
        e[i] = d as u16;
        (Monomial::new(e), CycloNumber::one())
    });
    Polynomial::from_terms(nvars, terms).unwrap()
}

/// Returns the degree-`e` piece of the ideal generated by `gens`.
pub fn ideal_piece(gens: &[Polynomial], spec: &HypersurfaceSpec, e: u32) -> GradedSubspace {
    let nvars = spec.nvars();
    let refs: Vec<&Polynomial> = gens.iter().collect();
    let grading = Grading::finest(nvars, &refs);
    let ideal = GradedIdeal::new(gens, grading.clone(), spec.order());
    let mut out = GradedSubspace::builder(nvars, e, spec.order());
    for key in grading.components(e) {
        let comp = ideal.component(&key);
        out.add_component(&comp.monomials, comp.echelon.rows());
    }
    out.finish()
}

/// True iff dim R^F at the socle degree is 1 and vanishes one degree above.
pub fn smoothness_check(spec: &HypersurfaceSpec) -> bool {
    spec.is_smooth()
}

/// Whether `g` lies in (J^F : P).
pub fn colon_contains(spec: &HypersurfaceSpec, p: &Polynomial, g: &Polynomial) -> Result<bool> {
    Ok(Colon::new(spec, p)?.contains(g))
}

/// Multiplication-by-P context for the colon ideal (J^F : P).
pub(crate) struct Colon<'a> {
    pub spec: &'a HypersurfaceSpec,
    pub p: Polynomial,
    pub grading: Grading,
    pub key_p: Vec<u32>,
    jac: Arc<GradedIdeal>,
}

/// One component of a colon ideal: kernel rows in local monomial coordinates.
pub(crate) struct ColonComponent {
    pub monomials: Vec<Monomial>,
    pub rows: Vec<SparseRow>,
    pub nonpivots: Vec<usize>,
    pub pivots: HashMap<usize, usize>,
}

impl<'a> Colon<'a> {
    pub fn new(spec: &'a HypersurfaceSpec, p: &Polynomial) -> Result<Colon<'a>> {
        Colon::with_extra(spec, p, &[])
    }

    /// Colon context whose grading also keeps `extra` multihomogeneous.
    pub fn with_extra(
        spec: &'a HypersurfaceSpec,
        p: &Polynomial,
        extra: &[&Polynomial],
    ) -> Result<Colon<'a>> {
        if p.nvars() != spec.nvars() {
            return Err(Error::ArityMismatch {
                expected: spec.nvars(),
                found: p.nvars(),
            });
        }
        if p.is_zero() {
            return Err(Error::ZeroClass);
        }
        let mut polys: Vec<&Polynomial> = vec![p];
        polys.extend_from_slice(extra);
        let grading = spec.grading_with(&polys);
        let key_p = grading.poly_key(p).unwrap();
        let jac = spec.jacobian_ideal(&grading);
        let comp = jac.component(&key_p);
        if comp.reduce_terms(p.terms()).is_empty() {
            return Err(Error::ZeroClass);
        }
        Ok(Colon {
            spec,
            p: p.clone(),
            grading,
            key_p,
            jac,
        })
    }

    pub fn degree_p(&self) -> u32 {
        self.p.degree().unwrap()
    }

    /// Socle degree of R^{F,P}.
    pub fn socle_degree(&self) -> u32 {
        self.spec.jacobian_socle_degree() - self.degree_p()
    }

    /// Images of the chosen monomials times P, in coset coordinates of R^F.
    fn images(&self, key: &[u32], monomials: &[Monomial]) -> Vec<SparseRow> {
        let target = self.jac.component(&add_keys(key, &self.key_p));
        if target.dim_quotient() == 0 {
            return vec![Vec::new(); monomials.len()];
        }
        monomials
            .iter()
            .map(|m| {
                let prod: Vec<(Monomial, CycloNumber)> =
                    self.p.terms().map(|(t, c)| (t.mul(m), c.clone())).collect();
                target.reduce_terms(prod.iter().map(|(m, c)| (m, c)))
            })
            .collect()
    }

    /// dim of the component of R^{F,P} with multidegree `key`.
    pub fn quotient_dim(&self, key: &[u32]) -> usize {
        let own = self.jac.component(key);
        if own.dim_quotient() == 0 {
            return 0;
        }
        let std: Vec<Monomial> = own.standard.iter().map(|&i| own.monomials[i].clone()).collect();
        Echelon::from_rows(self.images(key, &std)).rank()
    }

    pub fn hilbert(&self, e: u32) -> usize {
        self.grading
            .components(e)
            .par_iter()
            .map(|k| self.quotient_dim(k))
            .sum()
    }

    pub fn component(&self, key: &[u32]) -> ColonComponent {
        let monomials = self.grading.monomials(key, self.spec.order());
        let images = self.images(key, &monomials);
        let ntarget = images
            .iter()
            .flat_map(|r| r.iter().map(|e| e.0 + 1))
            .max()
            .unwrap_or(0);
        let mut constraints: Vec<SparseRow> = vec![Vec::new(); ntarget];
        for (j, row) in images.into_iter().enumerate() {
            for (t, v) in row {
                constraints[t].push((j, v));
            }
        }
        let (_, rows) = kernel(constraints, monomials.len());
        let pivots: HashMap<usize, usize> =
            rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        let nonpivots = (0..monomials.len())
            .filter(|c| !pivots.contains_key(c))
            .collect();
        ColonComponent {
            monomials,
            rows,
            nonpivots,
            pivots,
        }
    }

    pub fn piece(&self, e: u32) -> GradedSubspace {
        let comps: Vec<(Vec<Monomial>, Vec<SparseRow>)> = self
            .grading
            .components(e)
            .par_iter()
            .map(|k| {
                let c = self.component(k);
                (c.monomials, c.rows)
            })
            .collect();
        let mut out = GradedSubspace::builder(self.spec.nvars(), e, self.spec.order());
        for (m, r) in &comps {
            out.add_component(m, r);
        }
        out.finish()
    }

    pub fn contains(&self, g: &Polynomial) -> bool {
        if g.is_zero() {
            return true;
        }
        let prod = g * &self.p;
        reduce_in(&self.jac, &prod).is_empty()
    }
}

/// Degree-`e` piece of (J^F : P).
pub fn colon_piece(spec: &HypersurfaceSpec, p: &Polynomial, e: u32) -> Result<GradedSubspace> {
    Ok(Colon::new(spec, p)?.piece(e))
}

/// Hilbert function of R^{F,P} in degrees 0 … σ+1 with σ = (d−2)(n+2) − deg P.
pub fn hilbert_function(spec: &HypersurfaceSpec, p: &Polynomial) -> Result<Vec<usize>> {
    let colon = Colon::new(spec, p)?;
    let s = colon.socle_degree();
    Ok((0..=s + 1).map(|e| colon.hilbert(e)).collect())
}

/// Outcome of [`is_artinian_gorenstein`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GorensteinCertificate {
    pub socle_degree: u32,
    pub hilbert: Vec<usize>,
    pub passed: bool,
    pub first_failure: Option<u32>,
    pub reason: Option<String>,
}

/// Checks that R^{F,P} is Artinian Gorenstein: vanishing above the socle, a
/// one-dimensional socle and perfect multiplication pairings.
pub fn is_artinian_gorenstein(
    spec: &HypersurfaceSpec,
    p: &Polynomial,
) -> Result<GorensteinCertificate> {
    let colon = Colon::new(spec, p)?;
    let s = colon.socle_degree();
    let hilbert: Vec<usize> = (0..=s + 1).map(|e| colon.hilbert(e)).collect();
    let fail = |degree: u32, reason: String| GorensteinCertificate {
        socle_degree: s,
        hilbert: hilbert.clone(),
        passed: false,
        first_failure: Some(degree),
        reason: Some(reason),
    };
    if hilbert[s as usize + 1] != 0 {
        return Ok(fail(s + 1, "nonzero above the socle degree".into()));
    }
    if hilbert[s as usize] != 1 {
        return Ok(fail(s, format!("socle has dimension {}", hilbert[s as usize])));
    }
    let socle_key = colon
        .grading
        .components(s)
        .into_iter()
        .find(|k| colon.quotient_dim(k) == 1)
        .expect("one-dimensional socle lies in one component");
    let socle = colon.component(&socle_key);
    let w = socle.nonpivots[0];
    let socle_index: HashMap<&Monomial, usize> =
        socle.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // coordinate of a socle-degree monomial on the coset generator
    let coord = |m: &Monomial| -> CycloNumber {
        let i = socle_index[m];
        if i == w {
            return CycloNumber::one();
        }
        match socle.pivots.get(&i) {
            Some(&r) => socle.rows[r]
                .iter()
                .find(|e| e.0 == w)
                .map(|e| -&e.1)
                .unwrap_or_else(CycloNumber::zero),
            None => CycloNumber::zero(),
        }
    };
    for i in 0..=s / 2 {
        if hilbert[i as usize] != hilbert[(s - i) as usize] {
            return Ok(fail(i, "Hilbert function is not symmetric".into()));
        }
        for key in colon.grading.components(i) {
            let Some(dual) = sub_keys(&socle_key, &key) else {
                if colon.quotient_dim(&key) != 0 {
                    return Ok(fail(i, "component without a dual".into()));
                }
                continue;
            };
            let a = colon.component(&key);
            let b = colon.component(&dual);
            if a.nonpivots.len() != b.nonpivots.len() {
                return Ok(fail(i, "pairing blocks are not square".into()));
            }
            let rows: Vec<SparseRow> = a
                .nonpivots
                .iter()
                .map(|&u| {
                    b.nonpivots
                        .iter()
                        .enumerate()
                        .filter_map(|(j, &v)| {
                            let c = coord(&a.monomials[u].mul(&b.monomials[v]));
                            (!c.is_zero()).then_some((j, c))
                        })
                        .collect()
                })
                .collect();
            if Echelon::from_rows(rows).rank() != a.nonpivots.len() {
                return Ok(fail(i, "multiplication pairing is degenerate".into()));
            }
        }
    }
    Ok(GorensteinCertificate {
        socle_degree: s,
        hilbert,
        passed: true,
        first_failure: None,
        reason: None,
    })
}

/// Coset coordinates of `p` in R^F at its degree.
fn jacobian_coords(
    spec: &HypersurfaceSpec,
    grading: &Grading,
    p: &Polynomial,
) -> Vec<(Monomial, CycloNumber)> {
    reduce_in(&spec.jacobian_ideal(grading), p)
}

/// Whether (J^F : P1) = (J^F : P2). Both the degreewise comparison and the
/// proportionality of classes in R^F are evaluated; they must agree.
pub fn ideal_equal(spec: &HypersurfaceSpec, p1: &Polynomial, p2: &Polynomial) -> Result<bool> {
    let by_class = classes_proportional(spec, p1, p2)?;
    let by_pieces = colon_pieces_equal(spec, p1, p2)?;
    if by_class != by_pieces {
        return Err(Error::Domain(
            "colon comparison and class proportionality disagree".into(),
        ));
    }
    Ok(by_class)
}

/// Whether P2 ∈ span{P1} modulo J^F.
pub fn classes_proportional(
    spec: &HypersurfaceSpec,
    p1: &Polynomial,
    p2: &Polynomial,
) -> Result<bool> {
    if p1.degree() != p2.degree() {
        return Ok(false);
    }
    let grading = spec.grading_with(&[p1, p2]);
    let a = jacobian_coords(spec, &grading, p1);
    let b = jacobian_coords(spec, &grading, p2);
    if a.is_empty() || b.is_empty() {
        return Err(Error::ZeroClass);
    }
    let index: HashMap<&Monomial, usize> = a
        .iter()
        .chain(&b)
        .map(|(m, _)| m)
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let row = |v: &[(Monomial, CycloNumber)]| -> SparseRow {
        let mut r: SparseRow = v.iter().map(|(m, c)| (index[m], c.clone())).collect();
        r.sort_by_key(|e| e.0);
        r
    };
    Ok(Echelon::from_rows([row(&a), row(&b)]).rank() == 1)
}

fn colon_pieces_equal(spec: &HypersurfaceSpec, p1: &Polynomial, p2: &Polynomial) -> Result<bool> {
    if p1.degree() != p2.degree() {
        return Ok(false);
    }
    let c1 = Colon::with_extra(spec, p1, &[p2])?;
    let c2 = Colon::with_extra(spec, p2, &[p1])?;
    debug_assert_eq!(c1.grading, c2.grading);
    let s = c1.socle_degree();
    for e in 0..=s {
        for key in c1.grading.components(e) {
            let a = c1.component(&key);
            let b = c2.component(&key);
            if a.rows != b.rows {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `q` lies in the ideal generated by `gens` and the partials of F.
pub fn membership(spec: &HypersurfaceSpec, gens: &[Polynomial], q: &Polynomial) -> Result<bool> {
    if q.is_zero() {
        return Ok(true);
    }
    let mut all: Vec<Polynomial> = gens.to_vec();
    all.extend(spec.partials().iter().cloned());
    let mut refs: Vec<&Polynomial> = all.iter().collect();
    refs.push(q);
    let grading = Grading::finest(spec.nvars(), &refs);
    let ideal = GradedIdeal::new(&all, grading, spec.order());
    Ok(reduce_in(&ideal, q).is_empty())
}

/// Determinant of the Hessian matrix of F, by fraction-free elimination.
pub fn hessian_det(spec: &HypersurfaceSpec) -> Polynomial {
    let n = spec.nvars();
    let mut m: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| spec.partials()[i].partial_derivative(j)).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = Polynomial::one(n);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Polynomial::zero(n);
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .divide_exact(&prev, spec.order())
                    .expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(n);
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale_rational(&Rational::from(sign))
}

#[cfg(test)]
mod tests;
