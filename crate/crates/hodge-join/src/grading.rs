//! Multigradings by blocks of variables.
//!
//! Every polynomial handled by a computation is homogeneous for the block
//! multidegree, so graded pieces split into independent components.

use std::collections::{HashMap, HashSet};

use crate::poly::{monomial_basis, Monomial, MonomialOrder, Polynomial};

/// Partition of the variables into blocks; the block multidegree of a monomial is
/// the vector of its degrees in each block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl Grading {
    pub fn trivial(nvars: usize) -> Grading {
        Grading::from_parent(&mut (0..nvars).map(|_| 0).collect::<Vec<_>>())
    }

    fn from_parent(parent: &mut [usize]) -> Grading {
        let n = parent.len();
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut block_of = Vec::with_capacity(n);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let r = find(parent, v);
            let id = *label.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            block_of.push(id);
            blocks[id].push(v);
        }
        Grading { block_of, blocks }
    }

    /// A fine block partition for which every given polynomial is multihomogeneous.
    ///
    /// Exponent differences between terms must have zero sum on every block;
    /// blocks with nonzero sums are merged greedily, positive with negative,
    /// starting from the differences with the smallest support.
    pub fn finest(nvars: usize, polys: &[&Polynomial]) -> Grading {
        let mut diffs: HashSet<Vec<i32>> = HashSet::new();
        for p in polys {
            let exps: Vec<&[u16]> = p.terms().map(|(m, _)| m.exponents()).collect();
            let pairs: Vec<(usize, usize)> = if exps.len() <= 300 {
                (0..exps.len())
                    .flat_map(|i| (i + 1..exps.len()).map(move |j| (i, j)))
                    .collect()
            } else {
                (1..exps.len()).flat_map(|j| [(0, j), (j - 1, j)]).collect()
            };
            for (i, j) in pairs {
                let d: Vec<i32> = exps[i]
                    .iter()
                    .zip(exps[j])
                    .map(|(&a, &b)| a as i32 - b as i32)
                    .collect();
                diffs.insert(d);
            }
        }
        let mut diffs: Vec<Vec<i32>> = diffs.into_iter().collect();
        diffs.sort_by_key(|d| (d.iter().filter(|&&x| x != 0).count(), d.clone()));
        let mut parent: Vec<usize> = (0..nvars).collect();
        loop {
            let mut changed = false;
            for d in &diffs {
                loop {
                    let mut sums: Vec<(usize, i32)> = Vec::new();
                    for (v, &x) in d.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        let r = find(&mut parent, v);
                        match sums.iter_mut().find(|s| s.0 == r) {
                            Some(s) => s.1 += x,
                            None => sums.push((r, x)),
                        }
                    }
                    let pos = sums.iter().find(|s| s.1 > 0).map(|s| s.0);
                    let neg = sums.iter().find(|s| s.1 < 0).map(|s| s.0);
                    match (pos, neg) {
                        (Some(a), Some(b)) => {
                            parent[a] = b;
                            changed = true;
                        }
                        _ => break,
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Grading::from_parent(&mut parent)
    }

    pub fn nblocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn key(&self, m: &Monomial) -> Vec<u32> {
        let mut k = vec![0u32; self.blocks.len()];
        for (v, &e) in m.exponents().iter().enumerate() {
            k[self.block_of[v]] += e as u32;
        }
        k
    }

    /// Multidegree of a multihomogeneous polynomial (`None` for zero).
    pub fn poly_key(&self, p: &Polynomial) -> Option<Vec<u32>> {
        p.terms().next().map(|(m, _)| self.key(m))
    }

    /// Splits a polynomial into its multihomogeneous components.
    pub fn split(&self, p: &Polynomial) -> HashMap<Vec<u32>, Vec<(Monomial, crate::field::CycloNumber)>> {
        let mut out: HashMap<Vec<u32>, Vec<_>> = HashMap::new();
        for (m, c) in p.terms() {
            out.entry(self.key(m)).or_default().push((m.clone(), c.clone()));
        }
        out
    }

    /// All multidegrees of total degree `e`.
    pub fn components(&self, e: u32) -> Vec<Vec<u32>> {
        fn rec(nb: usize, e: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if prefix.len() + 1 == nb {
                prefix.push(e);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for a in (0..=e).rev() {
                prefix.push(a);
                rec(nb, e - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if self.blocks.is_empty() {
            if e == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        rec(self.blocks.len(), e, &mut Vec::new(), &mut out);
        out
    }

    /// Monomials of the given multidegree, largest first under `order`.
    pub fn monomials(&self, key: &[u32], order: MonomialOrder) -> Vec<Monomial> {
        let nvars = self.block_of.len();
        let mut acc: Vec<Vec<u16>> = vec![vec![0; nvars]];
        for (b, vars) in self.blocks.iter().enumerate() {
            let local = monomial_basis(vars.len(), key[b], MonomialOrder::Lex);
            let mut next = Vec::with_capacity(acc.len() * local.len());
            for base in &acc {
                for m in &local {
                    let mut e = base.clone();
                    for (k, &v) in vars.iter().enumerate() {
                        e[v] = m.exponents()[k];
                    }
                    next.push(e);
                }
            }
            acc = next;
        }
        let mut out: Vec<Monomial> = acc.into_iter().map(Monomial::new).collect();
        out.sort_by(|a, b| order.cmp(b, a));
        out
    }
}

/// Componentwise sum of multidegrees.
pub fn add_keys(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise difference, if nonnegative.
pub fn sub_keys(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    #[test]
    fn fermat_with_pair_product() {
        let f = parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3", None).unwrap();
        let partials: Vec<Polynomial> = (0..4).map(|i| f.partial_derivative(i)).collect();
        let p = parse_polynomial("(x0 + z(6)*x1)*(x2 + z(6)*x3)", None).unwrap();
        let mut refs: Vec<&Polynomial> = partials.iter().collect();
        assert_eq!(Grading::finest(4, &refs).nblocks(), 4);
        refs.push(&p);
        let g = Grading::finest(4, &refs);
        assert_eq!(g.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(g.components(2).len(), 3);
        assert_eq!(g.monomials(&[1, 1], MonomialOrder::Grevlex).len(), 4);
    }

    #[test]
    fn monomials_cover_degree() {
        let g = Grading::finest(5, &[&parse_polynomial("x0*x1 + x2^2", Some(5)).unwrap()]);
        let total: usize = g
            .components(3)
            .iter()
            .map(|k| g.monomials(k, MonomialOrder::Grevlex).len())
            .sum();
        assert_eq!(total, crate::poly::count_monomials(5, 3));
    }
}
