//! Sparse exact linear algebra: reduced row echelon forms, kernels and solves.

use std::collections::{BTreeMap, HashMap};

use crate::field::CycloNumber;

/// Sparse row: strictly increasing columns with nonzero values.
pub type SparseRow = Vec<(usize, CycloNumber)>;

type Acc = BTreeMap<usize, CycloNumber>;

fn axpy(acc: &mut Acc, factor: &CycloNumber, row: &[(usize, CycloNumber)]) {
    for (c, v) in row {
        let t = factor * v;
        match acc.get_mut(c) {
            Some(x) => {
                *x -= &t;
                if x.is_zero() {
                    acc.remove(c);
                }
            }
            None => {
                acc.insert(*c, -t);
            }
        }
    }
}

fn to_acc(row: SparseRow) -> Acc {
    row.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Reduced row echelon form of a sparse matrix. Rows are sorted by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
    pivot_index: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    /// Canonical RREF of the row space spanned by `rows`.
    pub fn from_rows(rows: impl IntoIterator<Item = SparseRow>) -> Echelon {
        let mut basis: Vec<SparseRow> = Vec::new();
        let mut pivot_of: HashMap<usize, usize> = HashMap::new();
        for row in rows {
            let mut acc = to_acc(row);
            let mut cursor = 0usize;
            while let Some((&c, v)) = acc.range(cursor..).next() {
                if let Some(&k) = pivot_of.get(&c) {
                    let v = v.clone();
                    axpy(&mut acc, &v, &basis[k]);
                }
                cursor = c + 1;
            }
            if let Some((&lead, lv)) = acc.iter().next() {
                let inv = lv.inverse().expect("nonzero leading entry");
                let row: SparseRow = acc
                    .into_iter()
                    .map(|(c, v)| (c, if c == lead { CycloNumber::one() } else { &v * &inv }))
                    .collect();
                pivot_of.insert(lead, basis.len());
                basis.push(row);
            }
        }
        basis.sort_by_key(|r| r[0].0);
        let pivots: Vec<usize> = basis.iter().map(|r| r[0].0).collect();
        let pivot_index: HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        for i in (0..basis.len()).rev() {
            let needs = basis[i][1..].iter().any(|(c, _)| pivot_index.contains_key(c));
            if !needs {
                continue;
            }
            let mut acc = to_acc(std::mem::take(&mut basis[i]));
            let hits: Vec<(usize, CycloNumber)> = acc
                .iter()
                .skip(1)
                .filter(|(c, _)| pivot_index.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (c, v) in hits {
                axpy(&mut acc, &v, &basis[pivot_index[&c]]);
            }
            basis[i] = acc.into_iter().collect();
        }
        Echelon {
            rows: basis,
            pivots,
            pivot_index,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_index.contains_key(&col)
    }

    /// Normal form of `v` modulo the row space: all pivot entries eliminated.
    pub fn reduce(&self, v: SparseRow) -> SparseRow {
        let mut acc = to_acc(v);
        let hits: Vec<(usize, CycloNumber)> = acc
            .iter()
            .filter(|(c, _)| self.pivot_index.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, v) in hits {
            axpy(&mut acc, &v, &self.rows[self.pivot_index[&c]]);
        }
        acc.into_iter().collect()
    }

    pub fn contains(&self, v: SparseRow) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Left kernel of the map whose matrix has the given columns-as-constraints form:
/// returns `(rank, kernel)` where `kernel` is the RREF basis of
/// `{ v ∈ Q^ncols : Σ_j v_j · col_j = 0 }`, and each constraint row lists, for
/// one output coordinate, the coefficient of every input column.
pub fn kernel(constraints: Vec<SparseRow>, ncols: usize) -> (usize, Vec<SparseRow>) {
    let flip = |c: usize| ncols - 1 - c;
    let reversed = constraints.into_iter().map(|row| {
        let mut r: SparseRow = row.into_iter().map(|(c, v)| (flip(c), v)).collect();
        r.sort_by_key(|e| e.0);
        r
    });
    let ech = Echelon::from_rows(reversed);
    let rank = ech.rank();
    // column f (reversed) free: v = e_f − Σ_i R[i][f] e_{p_i}
    let mut by_free: BTreeMap<usize, Vec<(usize, CycloNumber)>> = BTreeMap::new();
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        for (c, v) in &row[1..] {
            by_free.entry(*c).or_default().push((flip(p), -v));
        }
    }
    let mut out = Vec::with_capacity(ncols - rank);
    for f in (0..ncols).rev() {
        if ech.is_pivot(f) {
            continue;
        }
        let mut row: SparseRow = vec![(flip(f), CycloNumber::one())];
        if let Some(extra) = by_free.remove(&f) {
            row.extend(extra);
        }
        row.sort_by_key(|e| e.0);
        out.push(row);
    }
    (rank, out)
}

/// Solves `Σ_j x_j · col_j = rhs` where equations are given row-wise over `nunknowns`
/// columns; free unknowns are set to zero. Returns `None` if inconsistent.
pub fn solve(
    equations: Vec<SparseRow>,
    rhs: Vec<CycloNumber>,
    nunknowns: usize,
) -> Option<Vec<CycloNumber>> {
    let rows = equations.into_iter().zip(rhs).map(|(mut row, b)| {
        if !b.is_zero() {
            row.push((nunknowns, b));
        }
        row
    });
    let ech = Echelon::from_rows(rows);
    let mut x = vec![CycloNumber::zero(); nunknowns];
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        if p == nunknowns {
            return None;
        }
        if let Some((c, v)) = row.last() {
            if *c == nunknowns {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{zeta_pow, Rational};

    fn r(n: i64) -> CycloNumber {
        CycloNumber::from_integer(n)
    }

    fn dense(rows: &[SparseRow], ncols: usize) -> Vec<Vec<CycloNumber>> {
        rows.iter()
            .map(|row| {
                let mut v = vec![CycloNumber::zero(); ncols];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = vec![
            vec![(0, r(1)), (1, r(2)), (2, r(3))],
            vec![(0, r(2)), (1, r(4)), (2, r(7))],
            vec![(1, r(1)), (2, r(1))],
        ];
        let mut b = a.clone();
        b.reverse();
        let ea = Echelon::from_rows(a);
        let eb = Echelon::from_rows(b);
        assert_eq!(ea.pivots(), &[0, 1, 2]);
        assert_eq!(dense(ea.rows(), 3), dense(eb.rows(), 3));
        assert_eq!(ea.rank(), 3);
    }

    #[test]
    fn reduce_and_contains() {
        let e = Echelon::from_rows(vec![vec![(0, r(1)), (1, r(1))], vec![(1, r(1)), (2, r(1))]]);
        assert!(e.contains(vec![(0, r(1)), (2, r(-1))]));
        assert!(!e.contains(vec![(2, r(1))]));
        assert_eq!(e.rows()[0], vec![(0, r(1)), (2, r(-1))]);
    }

    #[test]
    fn kernel_basis() {
        // constraint: v0 + v1 + v2 = 0 and v1 - z v2 = 0
        let z = zeta_pow(6, 1);
        let cons = vec![
            vec![(0, r(1)), (1, r(1)), (2, r(1))],
            vec![(1, r(1)), (2, -&z)],
        ];
        let (rank, ker) = kernel(cons.clone(), 3);
        assert_eq!(rank, 2);
        assert_eq!(ker.len(), 1);
        let v = dense(&ker, 3).remove(0);
        assert!(v[0].is_one());
        for row in dense(&cons, 3) {
            let s: CycloNumber = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        // kernel rows already form an RREF
        let again = Echelon::from_rows(ker.clone());
        assert_eq!(dense(again.rows(), 3), dense(&ker, 3));
    }

    #[test]
    fn solve_system() {
        // x0 + x1 = 3, x1 = 1/2
        let eqs = vec![vec![(0, r(1)), (1, r(1))], vec![(1, r(1))]];
        let half = CycloNumber::from_rational(Rational::new(1, 2));
        let x = solve(eqs.clone(), vec![r(3), half.clone()], 2).unwrap();
        assert_eq!(x, vec![CycloNumber::from_rational(Rational::new(5, 2)), half]);
        assert!(solve(vec![vec![(0, r(1))], vec![(0, r(2))]], vec![r(1), r(1)], 1).is_none());
        let free = solve(vec![vec![(0, r(1)), (1, r(1))]], vec![r(2)], 2).unwrap();
        assert_eq!(free, vec![r(2), r(0)]);
    }
}
