//! Small fixed-size integer vectors and matrices.
//!
//! Everything in the crate lives in lattices of rank at most [`MAX_RANK`];
//! unused coordinates are kept at zero so that derived `Eq`/`Hash`/`Ord`
//! are canonical.

use num_rational::Rational64;
use num_traits::{One, Zero};
use std::fmt;

pub const MAX_RANK: usize = 4;

/// Integer vector padded with zeros past the ambient rank.
pub type Vector = [i64; MAX_RANK];

pub fn vector(coords: &[i64]) -> Vector {
    assert!(coords.len() <= MAX_RANK, "rank {} exceeds MAX_RANK", coords.len());
    let mut v = [0; MAX_RANK];
    v[..coords.len()].copy_from_slice(coords);
    v
}

pub fn dot(a: &Vector, b: &Vector) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &Vector, b: &Vector) -> Vector {
    let mut r = *a;
    r.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    r
}

pub fn sub(a: &Vector, b: &Vector) -> Vector {
    let mut r = *a;
    r.iter_mut().zip(b).for_each(|(x, y)| *x -= y);
    r
}

pub fn scale(a: &Vector, k: i64) -> Vector {
    let mut r = *a;
    r.iter_mut().for_each(|x| *x *= k);
    r
}

pub fn neg(a: &Vector) -> Vector {
    scale(a, -1)
}

pub fn is_zero(a: &Vector) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Square integer matrix of size `n <= MAX_RANK`, acting on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IMat {
    n: u8,
    a: [[i64; MAX_RANK]; MAX_RANK],
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut a = [[0; MAX_RANK]; MAX_RANK];
        for (i, row) in a.iter_mut().enumerate().take(n) {
            row[i] = 1;
        }
        IMat { n: n as u8, a }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(n <= MAX_RANK);
        let mut a = [[0; MAX_RANK]; MAX_RANK];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            a[i][..n].copy_from_slice(r);
        }
        IMat { n: n as u8, a }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim()).map(|i| self.a[i][..self.dim()].to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IMat::identity(self.dim())
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        let n = self.dim();
        let mut a = [[0; MAX_RANK]; MAX_RANK];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i][k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i][j] += x * other.a[k][j];
                }
            }
        }
        IMat { n: self.n, a }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut r = [0; MAX_RANK];
        for (i, out) in r.iter_mut().enumerate().take(self.dim()) {
            *out = (0..self.dim()).map(|j| self.a[i][j] * v[j]).sum();
        }
        r
    }

    pub fn transpose(&self) -> IMat {
        let mut a = [[0; MAX_RANK]; MAX_RANK];
        for (i, row) in a.iter_mut().enumerate().take(self.dim()) {
            for (j, x) in row.iter_mut().enumerate().take(self.dim()) {
                *x = self.a[j][i];
            }
        }
        IMat { n: self.n, a }
    }

    /// `I - coroot ⊗ root`: the reflection `v ↦ v - <root, v> coroot`.
    pub fn reflection(n: usize, root: &Vector, coroot: &Vector) -> IMat {
        let mut m = IMat::identity(n);
        for i in 0..n {
            for j in 0..n {
                m.a[i][j] -= coroot[i] * root[j];
            }
        }
        m
    }

    /// Inverse of a unimodular matrix; `None` if it is singular or the
    /// inverse is not integral.
    pub fn inverse(&self) -> Option<IMat> {
        let n = self.dim();
        let rows: Vec<Vec<Rational64>> = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from_integer(self.a[i][j])).collect())
            .collect();
        let inv = rational_inverse(&rows)?;
        let mut a = [[0; MAX_RANK]; MAX_RANK];
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_integer() {
                    return None;
                }
                a[i][j] = inv[i][j].to_integer();
            }
        }
        Some(IMat { n: self.n, a })
    }
}

/// Gauss-Jordan inverse over the rationals.
pub fn rational_inverse(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let p = aug[col][col];
        aug[col].iter_mut().for_each(|x| *x /= p);
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col];
                let pivot_row = aug[col].clone();
                aug[r].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Expresses `target` as a rational combination of `basis` (linearly
/// independent vectors of length `n`); `None` if it is not in their span.
pub fn solve_in_span(basis: &[Vector], target: &Vector, n: usize) -> Option<Vec<Rational64>> {
    let k = basis.len();
    // rows = coordinates, columns = basis vectors, last column = target
    let mut rows: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rational64> = basis.iter().map(|b| Rational64::from_integer(b[i])).collect();
            r.push(Rational64::from_integer(target[i]));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let pv = rows[row][col];
        rows[row].iter_mut().for_each(|x| *x /= pv);
        for r in 0..n {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col];
                let pr = rows[row].clone();
                rows[r].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational64::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = rows[r][k];
    }
    Some(sol)
}

/// Rank of a list of integer vectors.
pub fn rank_of(vs: &[Vector], n: usize) -> usize {
    let mut rows: Vec<Vec<Rational64>> =
        vs.iter().map(|v| v[..n].iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pr = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let f = rows[r][col] / pr[col];
                rows[r].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_is_involution() {
        let m = IMat::reflection(2, &vector(&[0, 2]), &vector(&[0, 1]));
        assert!(m.mul(&m).is_identity());
        assert_eq!(m.apply(&vector(&[3, 5])), vector(&[3, -5]));
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IMat::from_rows(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(IMat::from_rows(&[vec![2, 0], vec![0, 1]]).inverse().is_none());
    }

    #[test]
    fn span_solving() {
        let b = [vector(&[1, -1]), vector(&[0, 2])];
        let s = solve_in_span(&b, &vector(&[2, 0]), 2).unwrap();
        assert_eq!(s, vec![Rational64::from_integer(2), Rational64::from_integer(1)]);
        assert!(solve_in_span(&[vector(&[1, 1])], &vector(&[1, 0]), 2).is_none());
        assert_eq!(rank_of(&b, 2), 2);
    }
}
