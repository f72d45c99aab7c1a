use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::field::CycloNumber;
use crate::grading::{sub_keys, Grading};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// One multigraded component of an ideal: its echelon basis in the monomial
/// coordinates of the component, and the standard (non-pivot) monomials.
#[derive(Debug)]
pub(crate) struct IdealComponent {
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
    pub echelon: Echelon,
    pub standard: Vec<usize>,
    pub standard_pos: HashMap<usize, usize>,
}

impl IdealComponent {
    /// Coordinates of a vector (given by terms of this component) in the coset basis.
    pub fn reduce_terms<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a Monomial, &'a CycloNumber)>,
    ) -> SparseRow {
        let mut v: SparseRow = terms
            .into_iter()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        self.echelon
            .reduce(v)
            .into_iter()
            .map(|(c, x)| (self.standard_pos[&c], x))
            .collect()
    }

    pub fn dim_quotient(&self) -> usize {
        self.standard.len()
    }
}

/// Ideal generated by multihomogeneous polynomials, with memoized components.
#[derive(Debug)]
pub(crate) struct GradedIdeal {
    gens: Vec<(Polynomial, Vec<u32>)>,
    grading: Grading,
    order: MonomialOrder,
    cache: RwLock<HashMap<Vec<u32>, Arc<IdealComponent>>>,
}

impl GradedIdeal {
    pub fn new(gens: &[Polynomial], grading: Grading, order: MonomialOrder) -> GradedIdeal {
        let gens = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| (g.clone(), grading.poly_key(g).unwrap()))
            .collect();
        GradedIdeal {
            gens,
            grading,
            order,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn component(&self, key: &[u32]) -> Arc<IdealComponent> {
        if let Some(c) = self.cache.read().unwrap().get(key) {
            return c.clone();
        }
        let monomials = self.grading.monomials(key, self.order);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows: Vec<SparseRow> = Vec::new();
        for (g, gk) in &self.gens {
            let Some(rest) = sub_keys(key, gk) else { continue };
            for m in self.grading.monomials(&rest, self.order) {
                let mut row: SparseRow = g
                    .terms()
                    .map(|(t, c)| (index[&t.mul(&m)], c.clone()))
                    .collect();
                row.sort_by_key(|e| e.0);
                rows.push(row);
            }
        }
        // monomial generators give unit rows; order them so no elimination is needed
        rows.sort_by_key(|r| r.len());
        let echelon = Echelon::from_rows(rows);
        let standard: Vec<usize> = (0..monomials.len())
            .filter(|&c| !echelon.is_pivot(c))
            .collect();
        let standard_pos = standard.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let comp = Arc::new(IdealComponent {
            monomials,
            index,
            echelon,
            standard,
            standard_pos,
        });
        self.cache
            .write()
            .unwrap()
            .entry(key.to_vec())
            .or_insert(comp)
            .clone()
    }
}
