use std::collections::HashMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::field::CycloNumber;
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{monomial_basis, Monomial, MonomialOrder, Polynomial};

/// A subspace of the degree-e polynomials, as an RREF matrix over the monomial
/// basis (largest monomial first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    degree: u32,
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<Monomial>,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

pub(crate) struct SubspaceBuilder {
    inner: GradedSubspace,
    index: HashMap<Monomial, usize>,
}

impl SubspaceBuilder {
    /// Adds rows of one multigraded component given in local coordinates.
    pub fn add_component(&mut self, monomials: &[Monomial], rows: &[SparseRow]) {
        for row in rows {
            let mut r: SparseRow = row
                .iter()
                .map(|(c, v)| (self.index[&monomials[*c]], v.clone()))
                .collect();
            r.sort_by_key(|e| e.0);
            self.inner.rows.push(r);
        }
    }

    pub fn finish(mut self) -> GradedSubspace {
        self.inner.rows.sort_by_key(|r| r[0].0);
        self.inner.pivots = self.inner.rows.iter().map(|r| r[0].0).collect();
        debug_assert!(self.inner.pivots.windows(2).all(|w| w[0] < w[1]));
        self.inner
    }
}

impl GradedSubspace {
    pub(crate) fn builder(nvars: usize, degree: u32, order: MonomialOrder) -> SubspaceBuilder {
        let basis = monomial_basis(nvars, degree, order);
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        SubspaceBuilder {
            inner: GradedSubspace {
                degree,
                nvars,
                order,
                basis,
                rows: Vec::new(),
                pivots: Vec::new(),
            },
            index,
        }
    }

    /// Span of the given degree-e polynomials.
    pub fn span(nvars: usize, degree: u32, order: MonomialOrder, polys: &[Polynomial]) -> Self {
        let mut b = GradedSubspace::builder(nvars, degree, order);
        let rows: Vec<SparseRow> = polys.iter().map(|p| b.inner.row_of(p)).collect();
        let ech = Echelon::from_rows(rows);
        b.inner.rows = ech.into_rows();
        b.finish()
    }

    fn row_of(&self, p: &Polynomial) -> SparseRow {
        let mut r: SparseRow = p
            .terms()
            .map(|(m, c)| {
                let i = self
                    .basis
                    .iter()
                    .position(|b| b == m)
                    .expect("polynomial of the subspace degree");
                (i, c.clone())
            })
            .collect();
        r.sort_by_key(|e| e.0);
        r
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Basis rows as polynomials.
    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        self.rows
            .iter()
            .map(|r| {
                Polynomial::from_terms(
                    self.nvars,
                    r.iter().map(|(c, v)| (self.basis[*c].clone(), v.clone())),
                )
                .unwrap()
            })
            .collect()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        if p.degree() != Some(self.degree) {
            return false;
        }
        self.presentation().coordinates(p).iter().all(|c| c.is_zero())
    }

    /// Coset basis and reducer for the quotient by this subspace.
    pub fn presentation(&self) -> QuotientPresentation {
        let standard: Vec<usize> = (0..self.basis.len())
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect();
        QuotientPresentation {
            degree: self.degree,
            standard_monomials: standard.iter().map(|&c| self.basis[c].clone()).collect(),
            basis: self.basis.clone(),
            echelon: Echelon::from_rows(self.rows.clone()),
            standard,
        }
    }
}

impl Serialize for GradedSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut dense = vec!["0".to_string(); self.basis.len()];
                for (c, v) in r {
                    dense[*c] = v.to_string();
                }
                dense
            })
            .collect();
        let monomials: Vec<String> = self.basis.iter().map(|m| m.to_string()).collect();
        let mut s = serializer.serialize_struct("GradedSubspace", 6)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("ambient_dim", &self.basis.len())?;
        s.serialize_field("order", self.order.tag())?;
        s.serialize_field("monomials", &monomials)?;
        s.serialize_field("pivot_columns", &self.pivots)?;
        s.serialize_field("rows", &rows)?;
        s.end()
    }
}

/// Quotient of the degree-e polynomials by a [`GradedSubspace`], presented by
/// standard monomials (the non-pivot columns).
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub degree: u32,
    pub standard_monomials: Vec<Monomial>,
    basis: Vec<Monomial>,
    echelon: Echelon,
    standard: Vec<usize>,
}

impl QuotientPresentation {
    /// Coordinates of `p` on the standard monomials after reduction.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<CycloNumber> {
        let index: HashMap<&Monomial, usize> =
            self.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v: SparseRow = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        let red = self.echelon.reduce(v);
        let mut out = vec![CycloNumber::zero(); self.standard.len()];
        for (c, x) in red {
            let pos = self.standard.binary_search(&c).expect("reduced to a standard monomial");
            out[pos] = x;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }
}
