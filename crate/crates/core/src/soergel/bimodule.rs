//! Graded bimodules that are free of finite rank as left modules.
//!
//! A module is stored by the degrees of a left basis `e_i` and, for each
//! generator `a` of the right action, the matrix with `e_i · a = Σ_k ρ(a)_{ik} e_k`.
//! A left-linear map sends `e_i ↦ Σ_j Φ_{ij} f_j`, so composition "first `Φ`
//! then `Ψ`" is the matrix product `ΦΨ`.

use super::poly::{Mono, Poly, Q, NVARS, Z};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub type PMat = Vec<Vec<Poly>>;

pub fn pm_zero(n: usize, m: usize) -> PMat {
    vec![vec![Poly::zero(); m]; n]
}

pub fn pm_identity(n: usize) -> PMat {
    let mut a = pm_zero(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Poly::one();
    }
    a
}

pub fn pm_mul(a: &PMat, b: &PMat) -> PMat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![Poly::zero(); m];
            for (x, brow) in row.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o += &(x * y);
                    }
                }
            }
            out
        })
        .collect()
}

pub fn pm_add(a: &PMat, b: &PMat) -> PMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn pm_sub(a: &PMat, b: &PMat) -> PMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn pm_scale(a: &PMat, c: &Poly) -> PMat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn pm_is_zero(a: &PMat) -> bool {
    a.iter().flatten().all(Poly::is_zero)
}

pub fn pm_eval(a: &PMat, point: &[Q; NVARS]) -> Vec<Vec<Q>> {
    a.iter().map(|r| r.iter().map(|x| x.eval(point)).collect()).collect()
}

/// Which ring acts and how `z` enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    /// `R = Q[x]` on both sides, no `z`.
    Plain,
    /// Modules over `S`: `R` on both sides and a central operator `Z`.
    Split,
    /// `R̃ = Q[x, z]` on both sides.
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ring {
    pub rank: usize,
    pub level: Level,
}

impl Ring {
    pub fn new(rank: usize, level: Level) -> Self {
        Ring { rank, level }
    }

    /// Variables of the left coefficient ring.
    pub fn left_vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.rank).collect();
        if self.level == Level::Extended {
            v.push(Z);
        }
        v
    }

    /// Number of right-action generators: the `x_i`, then `z` or `Z`.
    pub fn num_ops(&self) -> usize {
        self.rank + usize::from(self.level != Level::Plain)
    }

    /// Variable slot of right generator `k`.
    pub fn op_var(&self, k: usize) -> usize {
        if k < self.rank {
            k
        } else {
            Z
        }
    }

    pub fn has_z_operator(&self) -> bool {
        self.level == Level::Split
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bimodule {
    pub ring: Ring,
    pub label: String,
    pub degrees: Vec<i32>,
    pub ops: Vec<PMat>,
}

impl Bimodule {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Graded left rank `Σ v^{deg e_i}`.
    pub fn graded_rank(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.degrees.iter().map(|&d| (d, 1)))
    }

    /// `M⟨k⟩`: every generator moves to degree `d - k`.
    pub fn shift(&self, k: i32) -> Self {
        Bimodule {
            ring: self.ring,
            label: format!("{}<{k}>", self.label),
            degrees: self.degrees.iter().map(|d| d - k).collect(),
            ops: self.ops.clone(),
        }
    }

    /// Checks sizes, homogeneity of the action matrices and that they commute.
    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        if self.ops.len() != self.ring.num_ops() {
            return Err(Error::DimensionMismatch { expected: self.ring.num_ops(), got: self.ops.len() });
        }
        for (k, a) in self.ops.iter().enumerate() {
            if a.len() != n || a.iter().any(|r| r.len() != n) {
                return Err(Error::Invariant(format!("{}: action matrix {k} is not {n}x{n}", self.label)));
            }
            for (i, row) in a.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let deg = self.degrees[i] + 2 - self.degrees[j];
                    if !x.is_homogeneous_of(deg) {
                        return Err(Error::Invariant(format!("{}: entry ({i},{j}) of action {k} not of degree {deg}", self.label)));
                    }
                    if self.ring.level != Level::Extended && x.uses_var(Z) {
                        return Err(Error::Invariant(format!("{}: z in a coefficient", self.label)));
                    }
                }
            }
        }
        for a in 0..self.ops.len() {
            for b in a + 1..self.ops.len() {
                if pm_mul(&self.ops[a], &self.ops[b]) != pm_mul(&self.ops[b], &self.ops[a]) {
                    return Err(Error::Invariant(format!("{}: right actions {a} and {b} do not commute", self.label)));
                }
            }
        }
        Ok(())
    }

    /// Matrix of right multiplication by `f`, a polynomial in the left ring.
    pub fn act(&self, f: &Poly) -> PMat {
        self.act_cached(f, &mut HashMap::new())
    }

    fn op_for_var(&self, v: usize) -> &PMat {
        if v == Z {
            &self.ops[self.ring.rank]
        } else {
            &self.ops[v]
        }
    }

    fn act_mono(&self, m: &Mono, cache: &mut HashMap<Mono, PMat>) -> PMat {
        if let Some(a) = cache.get(m) {
            return a.clone();
        }
        let r = match m.iter().position(|&e| e > 0) {
            None => pm_identity(self.rank()),
            Some(i) => {
                let mut rest = *m;
                rest[i] -= 1;
                let a = self.act_mono(&rest, cache);
                pm_mul(&a, self.op_for_var(i))
            }
        };
        cache.insert(*m, r.clone());
        r
    }

    pub(crate) fn act_cached(&self, f: &Poly, cache: &mut HashMap<Mono, PMat>) -> PMat {
        let n = self.rank();
        let mut out = pm_zero(n, n);
        for (m, c) in f.terms() {
            let a = self.act_mono(m, cache);
            for (orow, arow) in out.iter_mut().zip(&a) {
                for (o, x) in orow.iter_mut().zip(arow) {
                    if !x.is_zero() {
                        *o += &x.scale(c);
                    }
                }
            }
        }
        out
    }

    /// `M ⊗ N` over the common ring, basis `e_i ⊗ f_j` in lexicographic order.
    pub fn tensor(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.ring != other.ring {
            return Err(Error::Precondition(format!("cannot tensor over different rings {:?} and {:?}", self.ring, other.ring)));
        }
        let (n, m) = (self.rank(), other.rank());
        let degrees = self.degrees.iter().flat_map(|a| other.degrees.iter().map(move |b| a + b)).collect();
        let mut cache = HashMap::new();
        let mut ops = Vec::with_capacity(self.ops.len());
        for (k, b) in other.ops.iter().enumerate() {
            let mut a = pm_zero(n * m, n * m);
            for j in 0..m {
                for l in 0..m {
                    if b[j][l].is_zero() {
                        continue;
                    }
                    let inner = self.act_cached(&b[j][l], &mut cache);
                    for i in 0..n {
                        for kk in 0..n {
                            a[i * m + j][kk * m + l] = inner[i][kk].clone();
                        }
                    }
                }
            }
            if self.ring.has_z_operator() && k == self.ring.rank {
                for i in 0..n {
                    for kk in 0..n {
                        for j in 0..m {
                            a[i * m + j][kk * m + j] += &self.ops[k][i][kk];
                        }
                    }
                }
            }
            ops.push(a);
        }
        Ok(Bimodule { ring: self.ring, label: format!("{}*{}", self.label, other.label), degrees, ops })
    }

    /// The fiber dimension at the point `(left, right)` of the spectrum of
    /// the two-sided ring: the corank of the stacked `ρ(a)(left) - a(right)·I`.
    pub fn fiber_dimension(&self, left: &[Q; NVARS], right: &[Q; NVARS]) -> usize {
        let n = self.rank();
        let mut rows = Vec::new();
        for (k, a) in self.ops.iter().enumerate() {
            let v = self.ring.op_var(k);
            let rv = &right[v];
            let e = pm_eval(a, left);
            for (i, mut row) in e.into_iter().enumerate() {
                row[i] -= rv;
                rows.push(row);
            }
        }
        n - super::linalg::rank(&rows)
    }
}

/// A homogeneous left-linear map between two modules.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleMap {
    pub degree: i32,
    pub mat: PMat,
}

impl BimoduleMap {
    pub fn identity(m: &Bimodule) -> Self {
        BimoduleMap { degree: 0, mat: pm_identity(m.rank()) }
    }

    pub fn zero(src: &Bimodule, dst: &Bimodule, degree: i32) -> Self {
        BimoduleMap { degree, mat: pm_zero(src.rank(), dst.rank()) }
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &BimoduleMap) -> Self {
        BimoduleMap { degree: self.degree + next.degree, mat: pm_mul(&self.mat, &next.mat) }
    }

    pub fn add(&self, o: &BimoduleMap) -> Self {
        BimoduleMap { degree: self.degree, mat: pm_add(&self.mat, &o.mat) }
    }

    pub fn sub(&self, o: &BimoduleMap) -> Self {
        BimoduleMap { degree: self.degree, mat: pm_sub(&self.mat, &o.mat) }
    }

    pub fn scale(&self, c: &Q) -> Self {
        BimoduleMap { degree: self.degree, mat: self.mat.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        pm_is_zero(&self.mat)
    }

    /// Whether the map is homogeneous of its degree and commutes with the
    /// right actions.
    pub fn is_morphism(&self, src: &Bimodule, dst: &Bimodule) -> bool {
        if self.mat.len() != src.rank() || self.mat.iter().any(|r| r.len() != dst.rank()) || src.ring != dst.ring {
            return false;
        }
        for (i, row) in self.mat.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_homogeneous_of(src.degrees[i] + self.degree - dst.degrees[j]) {
                    return false;
                }
            }
        }
        src.ops.iter().zip(&dst.ops).all(|(a, b)| pm_mul(a, &self.mat) == pm_mul(&self.mat, b))
    }

    /// `self ⊗ id_N`.
    pub fn tensor_id(&self, n: &Bimodule) -> Self {
        let m = n.rank();
        let (r, c) = (self.mat.len(), self.mat.first().map_or(0, |x| x.len()));
        let mut out = pm_zero(r * m, c * m);
        for i in 0..r {
            for k in 0..c {
                for j in 0..m {
                    out[i * m + j][k * m + j] = self.mat[i][k].clone();
                }
            }
        }
        BimoduleMap { degree: self.degree, mat: out }
    }

    /// `id_M ⊗ self`.
    pub fn id_tensor(&self, m: &Bimodule) -> Self {
        let n = m.rank();
        let (r, c) = (self.mat.len(), self.mat.first().map_or(0, |x| x.len()));
        let mut out = pm_zero(n * r, n * c);
        let mut cache = HashMap::new();
        for j in 0..r {
            for l in 0..c {
                if self.mat[j][l].is_zero() {
                    continue;
                }
                let inner = m.act_cached(&self.mat[j][l], &mut cache);
                for i in 0..n {
                    for k in 0..n {
                        out[i * r + j][k * c + l] = inner[i][k].clone();
                    }
                }
            }
        }
        BimoduleMap { degree: self.degree, mat: out }
    }

    /// The degree-zero constant part, as a matrix over `Q`.
    pub fn constant_part(&self) -> Vec<Vec<Q>> {
        self.mat.iter().map(|r| r.iter().map(Poly::constant_term).collect()).collect()
    }
}
