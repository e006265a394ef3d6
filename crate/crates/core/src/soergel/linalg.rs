//! Exact linear algebra over `Q`.

use super::poly::Q;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

pub type SparseRow = BTreeMap<usize, Q>;

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    /// pivot column -> row position
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let cols: Vec<usize> = row.keys().copied().filter(|c| self.pivots.contains_key(c)).collect();
        for c in cols {
            let Some(f) = row.get(&c).cloned() else { continue };
            for (k, v) in &self.rows[self.pivots[&c]] {
                let e = row.entry(*k).or_insert_with(Q::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        row
    }

    /// Adds a row, returning whether it was independent of the previous ones.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else { return false };
        let inv = Q::one() / lead;
        row.values_mut().for_each(|v| *v *= &inv);
        for r in &mut self.rows {
            if let Some(f) = r.get(&p).cloned() {
                for (k, v) in &row {
                    let e = r.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(k);
                    }
                }
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Basis of the solutions `x` of `row · x = 0` for all inserted rows.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !self.pivots.contains_key(c)) {
            let mut x = vec![Q::zero(); ncols];
            x[f] = Q::one();
            for (&p, &r) in &self.pivots {
                if let Some(v) = self.rows[r].get(&f) {
                    x[p] = -v.clone();
                }
            }
            out.push(x);
        }
        out
    }
}

pub fn dense_to_sparse(row: &[Q]) -> SparseRow {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(dense_to_sparse(r));
    }
    e.rank()
}

/// Indices of a maximal set of linearly independent rows, greedily from the top.
pub fn independent_rows(rows: &[Vec<Q>]) -> Vec<usize> {
    let mut e = Echelon::new();
    (0..rows.len()).filter(|&i| e.insert(dense_to_sparse(&rows[i]))).collect()
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = Q::one() / &a[c][c];
        a[c].iter_mut().for_each(|v| *v *= &inv);
        let pr = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                row.iter_mut().zip(&pr).for_each(|(v, w)| *v -= &f * w);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..m)
                .map(|j| r.iter().zip(b).fold(Q::zero(), |s, (x, row)| if x.is_zero() { s } else { s + x * &row[j] }))
                .collect()
        })
        .collect()
}

/// Coefficients of `target` in the span of `basis`, if it lies there.
pub fn solve_combination(basis: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = basis.len();
    let len = target.len();
    // columns: basis vectors, then the target; find the dependency with last coefficient -1
    let rows: Vec<SparseRow> = (0..len)
        .map(|k| {
            let mut r: SparseRow = SparseRow::new();
            for (i, b) in basis.iter().enumerate() {
                if !b[k].is_zero() {
                    r.insert(i, b[k].clone());
                }
            }
            if !target[k].is_zero() {
                r.insert(n, target[k].clone());
            }
            r
        })
        .collect();
    let mut e = Echelon::new();
    rows.into_iter().for_each(|r| {
        e.insert(r);
    });
    let null = e.nullspace(n + 1);
    let v = null.into_iter().find(|v| !v[n].is_zero())?;
    let s = -Q::one() / &v[n];
    Some(v[..n].iter().map(|x| x * &s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soergel::poly::q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let mut e = Echelon::new();
        a.iter().for_each(|r| {
            e.insert(dense_to_sparse(r));
        });
        let ns = e.nullspace(3);
        assert_eq!(ns.len(), 1);
        for r in &a {
            let s: Q = r.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        assert_eq!(independent_rows(&a), vec![0, 2]);
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), m(&[&[1, 0], &[0, 1]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        let c = solve_combination(&m(&[&[1, 0, 1], &[0, 1, 1]]), &[q(2), q(3), q(5)]).unwrap();
        assert_eq!(c, vec![q(2), q(3)]);
        assert!(solve_combination(&m(&[&[1, 0, 1]]), &[q(0), q(1), q(0)]).is_none());
    }
}
