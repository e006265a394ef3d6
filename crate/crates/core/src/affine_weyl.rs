//! The extended affine Weyl group `W ⋉ X_*(T)` and its Coxeter subsystems.
//!
//! An [`AffineSystem`] is a set of finite roots (closed under negation and
//! the reflections it generates) together with simple affine reflections.
//! Its length function is the inversion count over the affine roots
//! `(α, n)` with `α` in that set, so the same code serves the ambient group
//! and the affine Weyl group of an endoscopic group.

use crate::error::{Error, Result};
use crate::lattice::{self, dot, IMat, Vector, MAX_RANK};
use crate::root_datum::{RootDatum, TorusCharacter, WeylElem};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

const OMEGA_LIMIT: usize = 4096;

/// `(w, λ)`, acting on `X_*(T) ⊗ Q` by `v ↦ wv + λ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffWElem {
    w: WeylElem,
    lambda: Vector,
}

impl AffWElem {
    pub fn identity(rank: usize) -> Self {
        AffWElem { w: WeylElem::identity(rank), lambda: [0; MAX_RANK] }
    }

    pub fn new(w: WeylElem, lambda: Vector) -> Self {
        AffWElem { w, lambda }
    }

    pub fn finite(w: WeylElem) -> Self {
        AffWElem { w, lambda: [0; MAX_RANK] }
    }

    pub fn translation(rank: usize, lambda: Vector) -> Self {
        AffWElem { w: WeylElem::identity(rank), lambda }
    }

    /// The affine reflection `(s_α, m α^∨)` through the hyperplane `<α, v> = m`.
    pub fn reflection(d: &RootDatum, root_index: usize, m: i64) -> Self {
        AffWElem { w: WeylElem::reflection(d, root_index), lambda: lattice::scale(&d.coroot(root_index), m) }
    }

    pub fn rank(&self) -> usize {
        self.w.matrix().dim()
    }

    pub fn finite_part(&self) -> &WeylElem {
        &self.w
    }

    pub fn translation_part(&self) -> &Vector {
        &self.lambda
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && lattice::is_zero(&self.lambda)
    }

    pub fn mul(&self, o: &Self) -> Self {
        AffWElem { w: self.w.mul(&o.w), lambda: lattice::add(&self.lambda, &self.w.act_cochar(&o.lambda)) }
    }

    pub fn inverse(&self) -> Self {
        let wi = self.w.inverse();
        AffWElem { w: wi, lambda: lattice::neg(&wi.act_cochar(&self.lambda)) }
    }

    /// Conjugate `x⁻¹ g x`.
    pub fn conj_by(&self, x: &Self) -> Self {
        x.inverse().mul(self).mul(x)
    }

    pub fn act_point(&self, v: &Vector) -> Vector {
        lattice::add(&self.w.act_cochar(v), &self.lambda)
    }

    /// Acts on a torus character through the finite part.
    pub fn act_char(&self, l: &TorusCharacter) -> TorusCharacter {
        crate::root_datum::char_act(&self.w, l)
    }

    pub fn to_json(&self) -> AffWElemJson {
        let n = self.rank();
        AffWElemJson { w: self.w.matrix().rows(), lambda: self.lambda[..n].to_vec() }
    }

    pub fn from_json(j: &AffWElemJson) -> Result<Self> {
        let n = j.w.len();
        if n == 0 || n > MAX_RANK || j.w.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("finite part must be a square matrix".into()));
        }
        if j.lambda.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: j.lambda.len() });
        }
        let w = WeylElem::from_matrix(IMat::from_rows(&j.w))
            .ok_or_else(|| Error::Parse("finite part is not invertible over Z".into()))?;
        Ok(AffWElem { w, lambda: lattice::vector(&j.lambda) })
    }
}

impl fmt::Debug for AffWElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        write!(f, "({:?}, {:?})", self.w.matrix(), &self.lambda[..n])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffWElemJson {
    pub w: Vec<Vec<i64>>,
    pub lambda: Vec<i64>,
}

impl Serialize for AffWElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffWElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AffWElemJson::deserialize(d)?;
        AffWElem::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// The affine function `v ↦ <root, v> + level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffRoot {
    pub root: Vector,
    pub level: i64,
}

/// `g·(α, n) = (wα, n - <wα, λ>)`.
pub fn aff_act(g: &AffWElem, a: &AffRoot) -> AffRoot {
    let b = g.w.act_char(&a.root);
    AffRoot { root: b, level: a.level - dot(&b, &g.lambda) }
}

/// A simple reflection of an [`AffineSystem`].
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub elem: AffWElem,
    /// The positive simple affine root it reflects.
    pub root: AffRoot,
    /// Index in the ambient datum of the finite root of `root`.
    pub root_index: usize,
}

impl Generator {
    /// Finite coroot attached to the generator (up to sign).
    pub fn coroot(&self, d: &RootDatum) -> Vector {
        d.coroot(self.root_index)
    }
}

/// A Coxeter system realized inside the extended affine Weyl group.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    datum: Arc<RootDatum>,
    roots: Vec<usize>,
    sign: Vector,
    gens: Vec<Generator>,
    omega: Vec<AffWElem>,
}

impl AffineSystem {
    /// The ambient extended affine Weyl group `W ⋉ X_*(T)` with the
    /// standard Iwahori simple reflections.
    pub fn ambient(datum: Arc<RootDatum>) -> Result<Self> {
        let roots: Vec<usize> = (0..datum.num_roots()).collect();
        let mut simple: Vec<(usize, AffRoot)> = datum
            .simple_indices()
            .iter()
            .map(|&i| (i, AffRoot { root: datum.root(i), level: 0 }))
            .collect();
        let comps = datum.components();
        for c in &comps {
            let neg = datum.index_of_root(&lattice::neg(&datum.root(c.highest))).expect("negative root");
            simple.push((neg, AffRoot { root: datum.root(neg), level: 1 }));
        }
        let mut names: Vec<String> = (1..=datum.simple_indices().len()).map(|i| format!("s{i}")).collect();
        if comps.len() == 1 {
            names.push("s0".into());
        } else {
            names.extend((1..=comps.len()).map(|c| format!("s0_{c}")));
        }
        let mut sys = Self::build(datum, roots, simple, names);
        sys.omega = sys.compute_omega()?;
        Ok(sys)
    }

    /// A Coxeter subsystem spanned by the affine roots over `roots` with the
    /// given simple affine roots. Its length-zero part is trivial.
    pub fn subsystem(datum: Arc<RootDatum>, roots: Vec<usize>, simple: Vec<(usize, AffRoot)>, names: Vec<String>) -> Self {
        let mut sys = Self::build(datum, roots, simple, names);
        sys.omega = vec![AffWElem::identity(sys.datum.rank())];
        sys
    }

    fn build(datum: Arc<RootDatum>, roots: Vec<usize>, simple: Vec<(usize, AffRoot)>, names: Vec<String>) -> Self {
        assert_eq!(simple.len(), names.len());
        let sign = datum.sum_positive_coroots();
        let gens = simple
            .into_iter()
            .zip(names)
            .map(|((idx, root), name)| Generator {
                name,
                elem: AffWElem::reflection(&datum, idx, -root.level),
                root,
                root_index: idx,
            })
            .collect();
        AffineSystem { datum, roots, sign, gens, omega: vec![] }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn identity(&self) -> AffWElem {
        AffWElem::identity(self.rank())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &AffWElem {
        &self.gens[i].elem
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn generator_of(&self, g: &AffWElem) -> Option<usize> {
        self.gens.iter().position(|s| s.elem == *g)
    }

    /// Root indices (into the ambient datum) of the finite roots underlying
    /// the affine roots of this system.
    pub fn root_indices(&self) -> &[usize] {
        &self.roots
    }

    /// Length-zero elements.
    pub fn omega(&self) -> &[AffWElem] {
        &self.omega
    }

    fn root_positive(&self, r: &Vector) -> bool {
        dot(r, &self.sign) > 0
    }

    pub fn is_positive(&self, a: &AffRoot) -> bool {
        a.level > 0 || (a.level == 0 && self.root_positive(&a.root))
    }

    /// Number of positive affine roots of the system sent to negative ones.
    pub fn length(&self, g: &AffWElem) -> usize {
        let mut total = 0i64;
        for &i in &self.roots {
            let a = self.datum.root(i);
            let b = g.w.act_char(&a);
            let c = dot(&b, &g.lambda);
            let k = c - self.root_positive(&b) as i64 - (!self.root_positive(&a)) as i64 + 1;
            if k > 0 {
                total += k;
            }
        }
        total as usize
    }

    /// Whether `s_i g < g`.
    pub fn is_left_descent(&self, i: usize, g: &AffWElem) -> bool {
        !self.is_positive(&aff_act(&g.inverse(), &self.gens[i].root))
    }

    /// Whether `g s_i < g`.
    pub fn is_right_descent(&self, g: &AffWElem, i: usize) -> bool {
        !self.is_positive(&aff_act(g, &self.gens[i].root))
    }

    pub fn left_descents(&self, g: &AffWElem) -> Vec<usize> {
        let gi = g.inverse();
        (0..self.gens.len()).filter(|&i| !self.is_positive(&aff_act(&gi, &self.gens[i].root))).collect()
    }

    pub fn right_descents(&self, g: &AffWElem) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| self.is_right_descent(g, i)).collect()
    }

    /// Greedy reduced decomposition `g = s_{i1} ⋯ s_{ik} ω` choosing the
    /// smallest-index left descent at each step.
    pub fn reduced_word(&self, g: &AffWElem) -> (Vec<usize>, AffWElem) {
        let mut word = Vec::new();
        let mut cur = *g;
        loop {
            let gi = cur.inverse();
            let Some(i) = (0..self.gens.len()).find(|&i| !self.is_positive(&aff_act(&gi, &self.gens[i].root))) else {
                break;
            };
            word.push(i);
            cur = self.gens[i].elem.mul(&cur);
        }
        (word, cur)
    }

    pub fn word_elem(&self, word: &[usize]) -> AffWElem {
        word.iter().fold(self.identity(), |acc, &i| acc.mul(&self.gens[i].elem))
    }

    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&i| self.gens[i].name.clone()).collect()
    }

    /// Parses a comma-separated word of generator names such as `s3,s1`.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        if s.trim().is_empty() {
            return Ok(vec![]);
        }
        s.split(',')
            .map(|t| {
                let t = t.trim();
                self.generator_index(t).ok_or_else(|| Error::Parse(format!("unknown generator {t:?}")))
            })
            .collect()
    }

    /// Bruhat order: `u ≤ v`.
    pub fn bruhat_leq(&self, u: &AffWElem, v: &AffWElem) -> bool {
        let (mut u, mut v) = (*u, *v);
        let (mut lu, mut lv) = (self.length(&u), self.length(&v));
        loop {
            if lu > lv {
                return false;
            }
            if lv == 0 {
                return u == v;
            }
            let vi = v.inverse();
            let s = (0..self.gens.len())
                .find(|&i| !self.is_positive(&aff_act(&vi, &self.gens[i].root)))
                .expect("positive length element has a descent");
            let sg = &self.gens[s].elem;
            if self.is_left_descent(s, &u) {
                u = sg.mul(&u);
                lu -= 1;
            }
            v = sg.mul(&v);
            lv -= 1;
        }
    }

    /// All elements `u ≤ v`, via subwords of a reduced word of `v`.
    pub fn lower_interval(&self, v: &AffWElem) -> Vec<AffWElem> {
        let (word, omega) = self.reduced_word(v);
        let mut set: HashSet<AffWElem> = HashSet::from([omega]);
        for &i in word.iter().rev() {
            let s = self.gens[i].elem;
            let add: Vec<AffWElem> = set.iter().map(|x| s.mul(x)).collect();
            set.extend(add);
        }
        let mut out: Vec<AffWElem> = set.into_iter().collect();
        out.sort_by_cached_key(|x| (self.length(x), *x));
        out
    }

    fn compute_omega(&self) -> Result<Vec<AffWElem>> {
        let n = self.rank();
        let mut gens = Vec::new();
        for j in 0..n {
            let mut e = [0; MAX_RANK];
            e[j] = 1;
            let (_, om) = self.reduced_word(&AffWElem::translation(n, e));
            gens.push(om);
        }
        let id = self.identity();
        let mut out = vec![id];
        let mut seen = HashSet::from([id]);
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &gens {
                for y in [x.mul(g), x.mul(&g.inverse())] {
                    if seen.insert(y) {
                        if out.len() >= OMEGA_LIMIT {
                            return Err(Error::BoundExceeded { what: "length-zero subgroup".into(), bound: OMEGA_LIMIT });
                        }
                        out.push(y);
                    }
                }
            }
            i += 1;
        }
        out.sort();
        Ok(out)
    }

    /// All elements of length at most `bound`, grouped by length.
    pub fn elements_by_length(&self, bound: usize) -> Vec<Vec<AffWElem>> {
        let mut levels = vec![self.omega.clone()];
        let mut seen: HashSet<AffWElem> = self.omega.iter().copied().collect();
        for _ in 0..bound {
            let prev = levels.last().unwrap();
            let mut next = Vec::new();
            for g in prev {
                for s in &self.gens {
                    let h = s.elem.mul(g);
                    if seen.insert(h) && self.is_positive(&aff_act(&g.inverse(), &s.root)) {
                        next.push(h);
                    }
                }
            }
            next.sort();
            levels.push(next);
        }
        levels
    }

    pub fn elements_up_to(&self, bound: usize) -> Vec<AffWElem> {
        self.elements_by_length(bound).into_iter().flatten().collect()
    }

    /// Affine reflections `(s_α, mα^∨)` of the system with length at most `max_len`.
    pub fn reflections_up_to(&self, max_len: usize) -> Vec<AffWElem> {
        let mut out = Vec::new();
        for &i in &self.roots {
            if !self.root_positive(&self.datum.root(i)) {
                continue;
            }
            // the length of (s_α, mα^∨) grows linearly in |m|
            for m in -(max_len as i64) - 1..=(max_len as i64) + 1 {
                let t = AffWElem::reflection(&self.datum, i, m);
                if self.length(&t) <= max_len {
                    out.push(t);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether `g` lies in the subgroup generated by the simple reflections,
    /// with a certificate word when it does.
    pub fn membership_word(&self, g: &AffWElem) -> Option<Vec<usize>> {
        let (word, rest) = self.reduced_word(g);
        rest.is_identity().then_some(word)
    }

    pub fn contains(&self, g: &AffWElem) -> bool {
        self.membership_word(g).is_some()
    }

    /// `x ∈ M(w, w')`: `x ≥ uv` for all `u ≤ w`, `v ≤ w'`.
    pub fn in_m(&self, x: &AffWElem, w: &AffWElem, w2: &AffWElem, bound: usize) -> Result<bool> {
        for y in [w, w2] {
            let l = self.length(y);
            if l > bound {
                return Err(Error::BoundExceeded { what: format!("interval below element of length {l}"), bound });
            }
        }
        let lower1 = self.lower_interval(w);
        let lower2 = self.lower_interval(w2);
        let mut products: HashSet<AffWElem> = HashSet::new();
        for u in &lower1 {
            for v in &lower2 {
                products.insert(u.mul(v));
            }
        }
        Ok(products.iter().all(|p| self.bruhat_leq(p, x)))
    }

    /// Bruhat covers `(lower, upper)` among elements of length at most `bound`.
    pub fn covers(&self, levels: &[Vec<AffWElem>]) -> Vec<(AffWElem, AffWElem)> {
        let mut out = Vec::new();
        for k in 1..levels.len() {
            for u in &levels[k] {
                for v in &levels[k - 1] {
                    if self.bruhat_leq(v, u) {
                        out.push((*v, *u));
                    }
                }
            }
        }
        out
    }

    /// Element-to-index map for a list of elements.
    pub fn index_map(elems: &[AffWElem]) -> HashMap<AffWElem, usize> {
        elems.iter().enumerate().map(|(i, e)| (*e, i)).collect()
    }
}
