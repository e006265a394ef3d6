//! Bruhat cover graphs, diamonds and anti-commutative edge functions, and
//! the level-by-level gauge fixing between two such functions.
//!
//! Edge functions are written `f(u, v)` with `u` the upper end of the cover.

use crate::affine_weyl::{AffWElem, AffineSystem};
use crate::error::{Error, Result};
use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// A cover `upper ⋗ lower`, by vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub upper: usize,
    pub lower: usize,
}

/// An interval `[lower, upper]` of length two with its two midpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub upper: usize,
    pub lower: usize,
    pub mid: [usize; 2],
}

/// The Bruhat cover graph of all elements of length at most `bound`.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    sys: AffineSystem,
    bound: usize,
    vertices: Vec<AffWElem>,
    lengths: Vec<usize>,
    index: HashMap<AffWElem, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, usize>,
    below: Vec<Vec<usize>>,
    diamonds: Vec<Diamond>,
}

/// A nonzero-valued (or not) rational function on the edges.
pub type EdgeFn = Vec<Rational64>;

impl CoverGraph {
    pub fn new(sys: &AffineSystem, bound: usize) -> Result<Self> {
        let levels = sys.elements_by_length(bound);
        let vertices: Vec<AffWElem> = levels.iter().flatten().copied().collect();
        let lengths: Vec<usize> = levels.iter().enumerate().flat_map(|(k, l)| std::iter::repeat_n(k, l.len())).collect();
        let index = AffineSystem::index_map(&vertices);
        let mut edges = Vec::new();
        let mut below = vec![Vec::new(); vertices.len()];
        for (lower, upper) in sys.covers(&levels) {
            let e = Edge { upper: index[&upper], lower: index[&lower] };
            below[e.upper].push(e.lower);
            edges.push(e);
        }
        edges.sort();
        let edge_index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut g = CoverGraph {
            sys: sys.clone(),
            bound,
            vertices,
            lengths,
            index,
            edges,
            edge_index,
            below,
            diamonds: vec![],
        };
        g.diamonds = g.find_diamonds()?;
        Ok(g)
    }

    fn find_diamonds(&self) -> Result<Vec<Diamond>> {
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            let mut mids: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &x in &self.below[u] {
                for &v in &self.below[x] {
                    mids.entry(v).or_default().push(x);
                }
            }
            for (v, xs) in mids {
                if xs.len() != 2 {
                    return Err(Error::Invariant(format!(
                        "interval [{:?}, {:?}] has {} midpoints",
                        self.vertices[v],
                        self.vertices[u],
                        xs.len()
                    )));
                }
                out.push(Diamond { upper: u, lower: v, mid: [xs[0], xs[1]] });
            }
        }
        Ok(out)
    }

    pub fn system(&self) -> &AffineSystem {
        &self.sys
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn vertices(&self) -> &[AffWElem] {
        &self.vertices
    }

    pub fn vertex_length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn vertex_index(&self, w: &AffWElem) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, upper: usize, lower: usize) -> Option<usize> {
        self.edge_index.get(&Edge { upper, lower }).copied()
    }

    pub fn covers_below(&self, u: usize) -> &[usize] {
        &self.below[u]
    }

    pub fn diamonds(&self) -> &[Diamond] {
        &self.diamonds
    }

    /// Whether the edge is `(u, us)` for a simple reflection `s`.
    pub fn is_simple_edge(&self, e: &Edge) -> bool {
        let d = self.vertices[e.upper].inverse().mul(&self.vertices[e.lower]);
        self.sys.generator_of(&d).is_some()
    }

    /// The block vertices `w^β v` corresponding to the neutral vertices `v`.
    pub fn translate(&self, minimal: &AffWElem) -> Vec<AffWElem> {
        self.vertices.iter().map(|v| minimal.mul(v)).collect()
    }

    fn diamond_sum(&self, f: &[Rational64], d: &Diamond) -> Rational64 {
        let e = |a: usize, b: usize| f[self.edge_index[&Edge { upper: a, lower: b }]];
        e(d.upper, d.mid[0]) * e(d.mid[0], d.lower) + e(d.upper, d.mid[1]) * e(d.mid[1], d.lower)
    }

    pub fn is_anticommutative(&self, f: &[Rational64]) -> bool {
        f.len() == self.edges.len() && self.diamonds.iter().all(|d| self.diamond_sum(f, d).is_zero())
    }

    /// A `±1` anti-commutative function, by solving the parity system
    /// "the four edge signs around each diamond have odd sum" over GF(2).
    pub fn sign_solution(&self) -> Result<EdgeFn> {
        let n = self.edges.len();
        let words = n / 64 + 1;
        // each row: n coefficient bits followed by the right-hand side bit
        let mut rows: Vec<(Vec<u64>, bool, usize)> = self
            .diamonds
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let mut bits = vec![0u64; words];
                for (a, b) in [(d.upper, d.mid[0]), (d.mid[0], d.lower), (d.upper, d.mid[1]), (d.mid[1], d.lower)] {
                    let i = self.edge_index[&Edge { upper: a, lower: b }];
                    bits[i / 64] ^= 1 << (i % 64);
                }
                (bits, true, k)
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let bit = |row: &Vec<u64>| row[col / 64] >> (col % 64) & 1 == 1;
            let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i].0)) else { continue };
            rows.swap(r, p);
            let (pr, prhs, _) = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && bit(&row.0) {
                    row.0.iter_mut().zip(&pr).for_each(|(a, b)| *a ^= b);
                    row.1 ^= prhs;
                }
            }
            pivots.push((r, col));
            r += 1;
        }
        let bad: Vec<usize> = rows[r..].iter().filter(|row| row.1).map(|row| row.2).collect();
        if !bad.is_empty() {
            return Err(Error::Invariant(format!("sign system inconsistent on diamonds {bad:?}")));
        }
        let mut f = vec![Rational64::one(); n];
        for (row, col) in pivots {
            if rows[row].1 {
                f[col] = -Rational64::one();
            }
        }
        Ok(f)
    }

    /// `f(u, v) g(v) / g(u)`.
    pub fn gauge_conjugate(&self, f: &[Rational64], g: &[Rational64]) -> EdgeFn {
        self.edges.iter().zip(f).map(|(e, x)| x * g[e.lower] / g[e.upper]).collect()
    }

    /// The vertex function `g` with `g = 1` in length zero and
    /// `f1(u, v) g(v) = g(u) f2(u, v)` on every edge, built by induction on
    /// length.
    pub fn gauge_fix(&self, f1: &[Rational64], f2: &[Rational64]) -> Result<Vec<Rational64>> {
        for (name, f) in [("f1", f1), ("f2", f2)] {
            if f.len() != self.edges.len() || f.iter().any(|x| x.is_zero()) {
                return Err(Error::Precondition(format!("{name} is not a nowhere-zero edge function")));
            }
            if !self.is_anticommutative(f) {
                return Err(Error::Precondition(format!("{name} is not anti-commutative")));
            }
        }
        let mut g = vec![Rational64::zero(); self.vertices.len()];
        for (u, gu) in g.iter_mut().enumerate() {
            if self.lengths[u] == 0 {
                *gu = Rational64::one();
            }
        }
        // vertices are stored in order of length
        for u in 0..self.vertices.len() {
            if self.lengths[u] == 0 {
                continue;
            }
            let mut h: Option<Rational64> = None;
            for &v in &self.below[u] {
                let e = self.edge_index[&Edge { upper: u, lower: v }];
                let cand = f1[e] * g[v] / f2[e];
                match h {
                    None => h = Some(cand),
                    Some(x) if x != cand => {
                        return Err(Error::Invariant(format!(
                            "gauge at {:?} is not well defined: {x} != {cand}",
                            self.vertices[u]
                        )))
                    }
                    _ => {}
                }
            }
            let below = &self.below[u];
            for k in 1..below.len() {
                connect_data(&self.sys, &self.vertices[u], &self.vertices[below[0]], &self.vertices[below[k]])?;
            }
            g[u] = h.ok_or_else(|| Error::Invariant(format!("{:?} has no cover below", self.vertices[u])))?;
        }
        Ok(g)
    }

    /// Whether `f1(u, v) g(v) = g(u) f2(u, v)` on every edge.
    pub fn gauge_relation_holds(&self, f1: &[Rational64], f2: &[Rational64], g: &[Rational64]) -> bool {
        self.edges.iter().enumerate().all(|(i, e)| f1[i] * g[e.lower] == g[e.upper] * f2[i])
    }
}

/// The two elements strictly between `v < u` when `ℓ(u) = ℓ(v) + 2`.
pub fn diamond_between(sys: &AffineSystem, u: &AffWElem, v: &AffWElem) -> Result<[AffWElem; 2]> {
    let (lu, lv) = (sys.length(u), sys.length(v));
    if lu != lv + 2 || !sys.bruhat_leq(v, u) {
        return Err(Error::Precondition("expected v < u with lengths differing by two".into()));
    }
    let mids: Vec<AffWElem> = sys
        .lower_interval(u)
        .into_iter()
        .filter(|x| sys.length(x) == lv + 1 && sys.bruhat_leq(v, x))
        .collect();
    match mids.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::Invariant(format!("{} midpoints between {v:?} and {u:?}", mids.len()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectData {
    pub y: AffWElem,
    pub z: [AffWElem; 2],
}

/// For covers `v1, v2 ⋖ u`: `y = s u` with `s` the first letter of the
/// reduced word of `u`, and `z_k` the word of `v_k` with its first letter
/// removed (or the word of `y` with its first letter removed when `v_k = y`).
pub fn connect_data(sys: &AffineSystem, u: &AffWElem, v1: &AffWElem, v2: &AffWElem) -> Result<ConnectData> {
    let lu = sys.length(u);
    for v in [v1, v2] {
        if sys.length(v) + 1 != lu || !sys.bruhat_leq(v, u) {
            return Err(Error::Precondition(format!("{v:?} is not covered by {u:?}")));
        }
    }
    let (word, om) = sys.reduced_word(u);
    let s = *sys.gen(word[0]);
    let y = s.mul(u);
    let z_of = |v: &AffWElem| -> Result<AffWElem> {
        if v == &y {
            if word.len() < 2 {
                return Ok(y);
            }
            Ok(sys.gen(word[1]).mul(&y))
        } else {
            let del = (0..word.len())
                .find(|&j| {
                    let mut w = word.clone();
                    w.remove(j);
                    sys.word_elem(&w).mul(&om) == *v
                })
                .ok_or_else(|| Error::Invariant(format!("{v:?} is not a one-letter deletion of {u:?}")))?;
            debug_assert!(del > 0);
            Ok(s.mul(v))
        }
    };
    let z = [z_of(v1)?, z_of(v2)?];
    if lu >= 2 {
        for (v, zk) in [v1, v2].into_iter().zip(&z) {
            let ok = sys.bruhat_leq(zk, v)
                && sys.bruhat_leq(zk, &y)
                && sys.bruhat_leq(&y, u)
                && sys.length(zk) + 2 == lu
                && sys.length(&y) + 1 == lu;
            if !ok {
                return Err(Error::Invariant(format!("connecting data for {u:?} fails its order relations")));
            }
        }
    }
    Ok(ConnectData { y, z })
}

/// Outcome of randomized gauge-recovery trials.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GaugeTrials {
    pub trials: usize,
    pub passed: usize,
    pub edges: usize,
    pub diamonds: usize,
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational64 {
    let mut n: i64 = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    Rational64::new(n, rng.gen_range(1..=9))
}

/// Plants a random gauge `r` (with `r = 1` in length zero) between a
/// random anti-commutative function and its conjugate, and checks that
/// [`CoverGraph::gauge_fix`] recovers `r` exactly.
pub fn gauge_trials(graph: &CoverGraph, trials: usize, seed: u64) -> Result<GaugeTrials> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sign = graph.sign_solution()?;
    let mut out = GaugeTrials { trials, edges: graph.edges().len(), diamonds: graph.diamonds().len(), ..Default::default() };
    let n = graph.vertices().len();
    let gauge = |rng: &mut ChaCha8Rng| -> Vec<Rational64> {
        (0..n)
            .map(|i| if graph.vertex_length(i) == 0 { Rational64::one() } else { random_nonzero(rng) })
            .collect()
    };
    for _ in 0..trials {
        let base = gauge(&mut rng);
        let f1 = graph.gauge_conjugate(&sign, &base);
        let r = gauge(&mut rng);
        let f2: EdgeFn = graph.edges().iter().zip(&f1).map(|(e, x)| x * r[e.lower] / r[e.upper]).collect();
        let g = graph.gauge_fix(&f1, &f2)?;
        if g == r && graph.gauge_relation_holds(&f1, &f2, &g) {
            out.passed += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endoscopy::Endoscopy;
    use crate::fixtures;
    use std::sync::Arc;

    fn dihedral() -> AffineSystem {
        AffineSystem::ambient(Arc::new(fixtures::sl2())).unwrap()
    }

    fn sp4_h() -> AffineSystem {
        Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,1/2".parse().unwrap()).unwrap().system().clone()
    }

    #[test]
    fn dihedral_diamonds() {
        let s = dihedral();
        let w = |x: &[usize]| s.word_elem(x);
        let mut d = diamond_between(&s, &w(&[0, 1, 0]), &w(&[0])).unwrap().to_vec();
        d.sort();
        let mut expect = vec![w(&[0, 1]), w(&[1, 0])];
        expect.sort();
        assert_eq!(d, expect);
        let mut d = diamond_between(&s, &w(&[0, 1, 0, 1]), &w(&[0, 1])).unwrap().to_vec();
        d.sort();
        let mut expect = vec![w(&[0, 1, 0]), w(&[1, 0, 1])];
        expect.sort();
        assert_eq!(d, expect);
        assert!(diamond_between(&s, &w(&[0, 1, 0]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn connect_examples() {
        let s = dihedral();
        let w = |x: &[usize]| s.word_elem(x);
        let e = s.identity();
        let c = connect_data(&s, &w(&[0]), &e, &e).unwrap();
        assert_eq!(c, ConnectData { y: e, z: [e, e] });
        let c = connect_data(&s, &w(&[0, 1, 0]), &w(&[0, 1]), &w(&[1, 0])).unwrap();
        assert_eq!(c.y, w(&[1, 0]));
        assert_eq!(c.z, [w(&[1]), w(&[0])]);
        let h = sp4_h();
        let g = CoverGraph::new(&h, 2).unwrap();
        for u in 0..g.vertices().len() {
            if g.vertex_length(u) == 2 {
                let b = g.covers_below(u);
                for &v1 in b {
                    for &v2 in b {
                        connect_data(&h, &g.vertices()[u], &g.vertices()[v1], &g.vertices()[v2]).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn diamond_lemma_exhaustive() {
        for sys in [dihedral(), sp4_h()] {
            let g = CoverGraph::new(&sys, 4).unwrap();
            assert!(!g.diamonds().is_empty());
            let elems = g.vertices();
            for u in elems {
                for v in elems {
                    if sys.length(u) == sys.length(v) + 2 && sys.bruhat_leq(v, u) {
                        assert!(diamond_between(&sys, u, v).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn sign_solutions() {
        let g = CoverGraph::new(&dihedral(), 1).unwrap();
        assert!(g.diamonds().is_empty());
        assert!(g.sign_solution().unwrap().iter().all(|x| x.is_one()));
        for (sys, n) in [(dihedral(), 3), (sp4_h(), 2), (sp4_h(), 4)] {
            let g = CoverGraph::new(&sys, n).unwrap();
            let f = g.sign_solution().unwrap();
            assert!(g.is_anticommutative(&f));
            let d = g.diamonds()[0];
            let mut bad = f.clone();
            let e = g.edge_id(d.upper, d.mid[0]).unwrap();
            bad[e] = -bad[e];
            assert!(!g.is_anticommutative(&bad));
        }
    }

    #[test]
    fn gauge_fixing() {
        let g = CoverGraph::new(&sp4_h(), 3).unwrap();
        let f = g.sign_solution().unwrap();
        let one = g.gauge_fix(&f, &f).unwrap();
        assert!(one.iter().all(|x| x.is_one()));
        let t = gauge_trials(&g, 20, 7).unwrap();
        assert_eq!(t.passed, 20);
        let mut bad = f.clone();
        let d = g.diamonds()[0];
        let e = g.edge_id(d.upper, d.mid[1]).unwrap();
        bad[e] = -bad[e];
        assert!(g.gauge_fix(&f, &bad).is_err());
    }

    #[test]
    fn gauge_composition_and_closure() {
        let g = CoverGraph::new(&dihedral(), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = g.vertices().len();
        let mut r = || -> Vec<Rational64> {
            (0..n).map(|i| if g.vertex_length(i) == 0 { Rational64::one() } else { random_nonzero(&mut rng) }).collect()
        };
        let f1 = g.sign_solution().unwrap();
        let (a, b) = (r(), r());
        let f2 = g.gauge_conjugate(&f1, &a);
        let f3 = g.gauge_conjugate(&f2, &b);
        assert!(g.is_anticommutative(&f3));
        let g12 = g.gauge_fix(&f1, &f2).unwrap();
        let g23 = g.gauge_fix(&f2, &f3).unwrap();
        let g13 = g.gauge_fix(&f1, &f3).unwrap();
        let composed: Vec<Rational64> = g12.iter().zip(&g23).map(|(x, y)| x * y).collect();
        assert_eq!(composed, g13);
    }

    #[test]
    fn vanishing_spreads_from_non_simple_edges() {
        let g = CoverGraph::new(&sp4_h(), 3).unwrap();
        let f = g.sign_solution().unwrap();
        for (i, e) in g.edges().iter().enumerate() {
            if g.is_simple_edge(e) {
                continue;
            }
            let mut h = f.clone();
            h[i] = Rational64::zero();
            assert!(!g.is_anticommutative(&h));
        }
    }
}
