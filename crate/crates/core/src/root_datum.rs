//! Root data, torus characters and the finite Weyl group.
//!
//! Characters and cocharacters are written in a fixed pair of dual bases,
//! so the perfect pairing `X^*(T) × X_*(T) → Z` is the coordinate dot
//! product. A rank-one character sheaf is modelled by a finite-order point
//! of `(Q/Z)^rank`.

use crate::error::{Error, Result};
use crate::lattice::{self, dot, neg, IMat, Vector, MAX_RANK};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

const ROOT_CLOSURE_LIMIT: usize = 512;
const WEYL_GROUP_LIMIT: usize = 20_000;

/// JSON form of a root datum: only simple roots and coroots are given.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootDatumJson {
    pub name: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    Shape,
    Pairing,
    CartanIntegrality,
    ReflectionClosure,
    SimpleIndependence,
    SimpleSpan,
    ClosureLimit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    pub message: String,
}

/// Empty iff the datum satisfies every axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, indices: Vec<usize>, message: String) {
        self.violations.push(Violation { kind, indices, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let msgs: Vec<&str> = self.violations.iter().map(|v| v.message.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

/// A root datum with its full root and coroot sets.
#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    simple: Vec<usize>,
    simple_coords: Vec<Option<Vec<Rational64>>>,
    positive: Vec<bool>,
    root_index: HashMap<Vector, usize>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        let a: HashSet<(Vector, Vector)> = self.roots.iter().copied().zip(self.coroots.iter().copied()).collect();
        let b: HashSet<(Vector, Vector)> = other.roots.iter().copied().zip(other.coroots.iter().copied()).collect();
        self.rank == other.rank && a == b && self.simple_roots_set() == other.simple_roots_set()
    }
}

impl RootDatum {
    /// Builds a datum from explicit root and coroot lists without checking
    /// the axioms; use [`RootDatum::validate`] for that.
    pub fn from_parts(
        name: impl Into<String>,
        rank: usize,
        roots: Vec<Vector>,
        coroots: Vec<Vector>,
        simple: Vec<usize>,
    ) -> Self {
        assert!(rank <= MAX_RANK && rank > 0);
        assert_eq!(roots.len(), coroots.len());
        let simple_vecs: Vec<Vector> = simple.iter().map(|&i| roots[i]).collect();
        let simple_coords: Vec<_> = roots.iter().map(|r| lattice::solve_in_span(&simple_vecs, r, rank)).collect();
        let positive = simple_coords
            .iter()
            .map(|c| c.as_ref().is_some_and(|c| c.iter().all(|x| !x.is_negative())))
            .collect();
        let root_index = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        RootDatum { name: name.into(), rank, roots, coroots, simple, simple_coords, positive, root_index }
    }

    /// Generates the full root system from simple roots and coroots by
    /// reflection closure.
    pub fn from_simple(
        name: impl Into<String>,
        rank: usize,
        simple_roots: &[Vec<i64>],
        simple_coroots: &[Vec<i64>],
    ) -> Result<Self> {
        let json = RootDatumJson {
            name: name.into(),
            rank,
            simple_roots: simple_roots.to_vec(),
            simple_coroots: simple_coroots.to_vec(),
        };
        let (datum, report) = build_from_json(&json);
        match datum {
            Some(d) if report.is_valid() => Ok(d),
            _ => Err(Error::InvalidDatum(report)),
        }
    }

    pub fn from_json(json: &RootDatumJson) -> Result<Self> {
        Self::from_simple(json.name.clone(), json.rank, &json.simple_roots, &json.simple_coroots)
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            name: self.name.clone(),
            rank: self.rank,
            simple_roots: self.simple.iter().map(|&i| self.roots[i][..self.rank].to_vec()).collect(),
            simple_coroots: self.simple.iter().map(|&i| self.coroots[i][..self.rank].to_vec()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> Vector {
        self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> Vector {
        self.coroots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn index_of_root(&self, r: &Vector) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    fn simple_roots_set(&self) -> HashSet<Vector> {
        self.simple.iter().map(|&i| self.roots[i]).collect()
    }

    /// Coordinates of root `i` in the basis of simple roots.
    pub fn simple_coordinates(&self, i: usize) -> Option<&[Rational64]> {
        self.simple_coords[i].as_deref()
    }

    /// Height of a root: the sum of its simple-root coordinates.
    pub fn height(&self, i: usize) -> Rational64 {
        self.simple_coords[i].as_ref().map(|c| c.iter().sum()).unwrap_or_default()
    }

    /// Sum of the positive coroots, `2ρ^∨`.
    pub fn sum_positive_coroots(&self) -> Vector {
        self.positive_indices().fold([0; MAX_RANK], |acc, i| lattice::add(&acc, &self.coroots[i]))
    }

    /// Coxeter number of each irreducible component.
    pub fn coxeter_numbers(&self) -> Vec<usize> {
        self.components().iter().map(|c| c.roots.len() / c.simple.len()).collect()
    }

    /// Simple reflection matrix `s_i` on the cocharacter lattice.
    pub fn reflection_matrix(&self, root_index: usize) -> IMat {
        IMat::reflection(self.rank, &self.roots[root_index], &self.coroots[root_index])
    }

    /// Reflection acting on a character: `μ ↦ μ - <μ, α^∨> α`.
    pub fn reflect_character(&self, root_index: usize, mu: &Vector) -> Vector {
        let a = self.roots[root_index];
        lattice::sub(mu, &lattice::scale(&a, dot(mu, &self.coroots[root_index])))
    }

    /// Reflection acting on a cocharacter: `v ↦ v - <α, v> α^∨`.
    pub fn reflect_cocharacter(&self, root_index: usize, v: &Vector) -> Vector {
        let c = self.coroots[root_index];
        lattice::sub(v, &lattice::scale(&c, dot(&self.roots[root_index], v)))
    }

    /// Checks every root datum axiom and reports the violations with indices.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.roots.len();
        for i in 0..n {
            let p = dot(&self.roots[i], &self.coroots[i]);
            if p != 2 {
                report.push(ViolationKind::Pairing, vec![i], format!("<alpha_{i}, alpha_{i}^vee> = {p} != 2"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        let root_set: HashMap<Vector, usize> = self.roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        for i in 0..n {
            for j in 0..n {
                let img = self.reflect_character(i, &self.roots[j]);
                let co = self.reflect_cocharacter(i, &self.coroots[j]);
                match root_set.get(&img) {
                    Some(&k) if self.coroots[k] == co => {}
                    _ => report.push(
                        ViolationKind::ReflectionClosure,
                        vec![i, j],
                        format!("s_{i} does not map (alpha_{j}, alpha_{j}^vee) to a root/coroot pair"),
                    ),
                }
            }
        }
        let simple_vecs: Vec<Vector> = self.simple.iter().map(|&i| self.roots[i]).collect();
        if lattice::rank_of(&simple_vecs, self.rank) != simple_vecs.len() {
            report.push(
                ViolationKind::SimpleIndependence,
                self.simple.clone(),
                "simple roots are linearly dependent".into(),
            );
        }
        for (i, c) in self.simple_coords.iter().enumerate() {
            let ok = c.as_ref().is_some_and(|c| {
                c.iter().all(|x| x.is_integer())
                    && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()))
            });
            if !ok {
                report.push(
                    ViolationKind::SimpleSpan,
                    vec![i],
                    format!("root {i} is not a same-sign integer combination of simple roots"),
                );
            }
        }
        report
    }

    /// Irreducible components: connected pieces of the Dynkin graph.
    pub fn components(&self) -> Vec<Component> {
        let k = self.simple.len();
        let mut comp = vec![usize::MAX; k];
        let mut out = Vec::new();
        for start in 0..k {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = vec![];
            while let Some(a) = stack.pop() {
                members.push(a);
                for b in 0..k {
                    if comp[b] == usize::MAX
                        && dot(&self.roots[self.simple[b]], &self.coroots[self.simple[a]]) != 0
                    {
                        comp[b] = id;
                        stack.push(b);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out.into_iter()
            .map(|members| {
                let simple: Vec<usize> = members.iter().map(|&m| self.simple[m]).collect();
                let roots: Vec<usize> = (0..self.roots.len())
                    .filter(|&r| {
                        self.simple_coords[r].as_ref().is_some_and(|c| {
                            c.iter().enumerate().all(|(j, x)| x.is_zero() || members.contains(&j))
                        })
                    })
                    .collect();
                let highest = roots
                    .iter()
                    .copied()
                    .filter(|&r| self.positive[r])
                    .max_by_key(|&r| (self.height(r), std::cmp::Reverse(r)))
                    .expect("component has a positive root");
                Component { simple, roots, highest }
            })
            .collect()
    }

    /// The finite Weyl group, generated by the simple reflections.
    pub fn weyl_group(&self) -> Result<WeylGroup> {
        WeylGroup::generate(self)
    }

    /// A W-invariant map `X_*(T) → X^*(T)` (sum over roots of `<β,λ> β`),
    /// scaled to be primitive. Zero on central directions.
    pub fn invariant_form(&self) -> IMat {
        let n = self.rank;
        let mut rows = vec![vec![0i64; n]; n];
        for r in &self.roots {
            for i in 0..n {
                for j in 0..n {
                    rows[i][j] += r[i] * r[j];
                }
            }
        }
        let g = rows.iter().flatten().fold(0i64, |g, &x| num_integer::gcd(g, x));
        if g > 1 {
            rows.iter_mut().flatten().for_each(|x| *x /= g);
        }
        IMat::from_rows(&rows)
    }
}

/// One irreducible component of a root system.
#[derive(Clone, Debug)]
pub struct Component {
    /// Root indices of the simple roots in this component.
    pub simple: Vec<usize>,
    /// Root indices of all roots in this component.
    pub roots: Vec<usize>,
    /// Root index of the highest root.
    pub highest: usize,
}

fn build_from_json(json: &RootDatumJson) -> (Option<RootDatum>, ValidationReport) {
    let mut report = ValidationReport::default();
    let n = json.rank;
    if n == 0 || n > MAX_RANK {
        report.push(ViolationKind::Shape, vec![], format!("rank {n} outside 1..={MAX_RANK}"));
        return (None, report);
    }
    if json.simple_roots.len() != json.simple_coroots.len() {
        report.push(ViolationKind::Shape, vec![], "simple roots and coroots differ in number".into());
        return (None, report);
    }
    for (i, v) in json.simple_roots.iter().chain(&json.simple_coroots).enumerate() {
        if v.len() != n {
            report.push(ViolationKind::Shape, vec![i], format!("vector {i} has length {} != rank {n}", v.len()));
        }
    }
    if !report.is_valid() {
        return (None, report);
    }
    let sr: Vec<Vector> = json.simple_roots.iter().map(|v| lattice::vector(v)).collect();
    let sc: Vec<Vector> = json.simple_coroots.iter().map(|v| lattice::vector(v)).collect();
    for i in 0..sr.len() {
        for j in 0..sr.len() {
            let p = dot(&sr[i], &sc[j]);
            if i == j && p != 2 {
                report.push(ViolationKind::Pairing, vec![i], format!("<alpha_{i}, alpha_{i}^vee> = {p} != 2"));
            }
            if i != j && p > 0 {
                report.push(
                    ViolationKind::CartanIntegrality,
                    vec![i, j],
                    format!("off-diagonal Cartan entry <alpha_{i}, alpha_{j}^vee> = {p} is positive"),
                );
            }
        }
    }
    if !report.is_valid() {
        return (None, report);
    }
    // reflection closure over pairs (root, coroot)
    let mut roots: Vec<Vector> = Vec::new();
    let mut coroots: Vec<Vector> = Vec::new();
    let mut seen: HashMap<Vector, usize> = HashMap::new();
    let mut queue: VecDeque<(Vector, Vector)> = VecDeque::new();
    for (r, c) in sr.iter().zip(&sc) {
        queue.push_back((*r, *c));
        queue.push_back((neg(r), neg(c)));
    }
    while let Some((r, c)) = queue.pop_front() {
        if let Some(&k) = seen.get(&r) {
            if coroots[k] != c {
                report.push(
                    ViolationKind::ReflectionClosure,
                    vec![k],
                    format!("root {:?} acquires two different coroots", &r[..n]),
                );
                return (None, report);
            }
            continue;
        }
        if roots.len() >= ROOT_CLOSURE_LIMIT {
            report.push(ViolationKind::ClosureLimit, vec![], "root closure does not terminate".into());
            return (None, report);
        }
        seen.insert(r, roots.len());
        roots.push(r);
        coroots.push(c);
        for (a, ac) in sr.iter().zip(&sc) {
            let r2 = lattice::sub(&r, &lattice::scale(a, dot(&r, ac)));
            let c2 = lattice::sub(&c, &lattice::scale(ac, dot(a, &c)));
            queue.push_back((r2, c2));
        }
    }
    let simple = sr.iter().map(|r| seen[r]).collect();
    let datum = RootDatum::from_parts(json.name.clone(), n, roots, coroots, simple);
    let report = datum.validate();
    (Some(datum), report)
}

/// Validates a JSON root datum, including the axioms that only make sense
/// once the full root system has been generated.
pub fn validate_root_datum(json: &RootDatumJson) -> ValidationReport {
    build_from_json(json).1
}

/// An element of Q/Z, stored as a rational in `[0, 1)`.
pub fn frac(r: Rational64) -> Rational64 {
    let f = r - r.floor();
    debug_assert!(!f.is_negative() && f < Rational64::one());
    f
}

/// A finite-order character `X_*(T) → Q/Z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusCharacter {
    rank: u8,
    values: [Rational64; MAX_RANK],
}

impl TorusCharacter {
    pub fn new(values: &[Rational64]) -> Self {
        assert!(!values.is_empty() && values.len() <= MAX_RANK);
        let mut v = [Rational64::zero(); MAX_RANK];
        for (o, x) in v.iter_mut().zip(values) {
            *o = frac(*x);
        }
        TorusCharacter { rank: values.len() as u8, values: v }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::new(&vec![Rational64::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values[..self.rank()]
    }

    pub fn is_trivial(&self) -> bool {
        self.values().iter().all(|x| x.is_zero())
    }

    /// Least common denominator of the values.
    pub fn order(&self) -> i64 {
        self.values().iter().fold(1, |l, x| num_integer::lcm(l, *x.denom()))
    }

    /// `L(μ) = Σ values_j μ_j mod 1`.
    pub fn eval(&self, mu: &Vector) -> Rational64 {
        frac(self.values().iter().zip(mu).map(|(v, &m)| v * m).sum())
    }

    pub fn eval_slice(&self, mu: &[i64]) -> Result<Rational64> {
        if mu.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: mu.len() });
        }
        Ok(self.eval(&lattice::vector(mu)))
    }

    /// `(wL)(μ) = L(w^{-1} μ)`; `dual` is the inverse transpose of the
    /// cocharacter matrix of `w`.
    pub fn act_by_dual(&self, dual: &IMat) -> Self {
        let n = self.rank();
        let vals: Vec<Rational64> = (0..n)
            .map(|i| (0..n).map(|j| self.values[j] * dual.get(i, j)).sum())
            .collect();
        Self::new(&vals)
    }
}

impl fmt::Debug for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for TorusCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vals = s
            .split(',')
            .map(|p| {
                let p = p.trim();
                let r = Rational64::from_str(p).map_err(|e| Error::Parse(format!("bad rational {p:?}: {e}")))?;
                if r.is_negative() || r >= Rational64::one() {
                    return Err(Error::Parse(format!("character value {p} not in [0,1)")));
                }
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()?;
        if vals.is_empty() || vals.len() > MAX_RANK {
            return Err(Error::Parse(format!("character {s:?} has unsupported length")));
        }
        Ok(TorusCharacter::new(&vals))
    }
}

impl Serialize for TorusCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TorusCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `char_eval`: evaluate a character on a cocharacter.
pub fn char_eval(l: &TorusCharacter, mu: &[i64]) -> Result<Rational64> {
    l.eval_slice(mu)
}

/// Element of the finite Weyl group, stored as its matrix on cocharacters
/// together with the inverse transpose (its matrix on characters).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylElem {
    mat: IMat,
    dual: IMat,
}

impl WeylElem {
    pub fn identity(rank: usize) -> Self {
        WeylElem { mat: IMat::identity(rank), dual: IMat::identity(rank) }
    }

    pub fn from_matrix(mat: IMat) -> Option<Self> {
        let dual = mat.inverse()?.transpose();
        Some(WeylElem { mat, dual })
    }

    pub fn reflection(d: &RootDatum, root_index: usize) -> Self {
        let m = d.reflection_matrix(root_index);
        WeylElem { mat: m, dual: m.transpose() }
    }

    pub fn matrix(&self) -> &IMat {
        &self.mat
    }

    pub fn dual(&self) -> &IMat {
        &self.dual
    }

    pub fn mul(&self, o: &Self) -> Self {
        WeylElem { mat: self.mat.mul(&o.mat), dual: self.dual.mul(&o.dual) }
    }

    pub fn inverse(&self) -> Self {
        WeylElem { mat: self.dual.transpose(), dual: self.mat.transpose() }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    /// Action on cocharacters.
    pub fn act_cochar(&self, v: &Vector) -> Vector {
        self.mat.apply(v)
    }

    /// Action on characters, preserving the pairing.
    pub fn act_char(&self, mu: &Vector) -> Vector {
        self.dual.apply(mu)
    }
}

/// `char_act`: `(wL)(μ) = L(w^{-1}μ)`.
pub fn char_act(w: &WeylElem, l: &TorusCharacter) -> TorusCharacter {
    l.act_by_dual(&w.dual)
}

/// The finite Weyl group as an explicit list of matrices.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElem>,
    index: HashMap<WeylElem, usize>,
    generators: Vec<usize>,
}

impl WeylGroup {
    fn generate(d: &RootDatum) -> Result<Self> {
        let gens: Vec<WeylElem> = d.simple_indices().iter().map(|&i| WeylElem::reflection(d, i)).collect();
        let e = WeylElem::identity(d.rank());
        let mut elements = vec![e];
        let mut index = HashMap::from([(e, 0)]);
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.mul(g);
                if !index.contains_key(&y) {
                    if elements.len() >= WEYL_GROUP_LIMIT {
                        return Err(Error::BoundExceeded { what: "Weyl group generation".into(), bound: WEYL_GROUP_LIMIT });
                    }
                    index.insert(y, elements.len());
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(WeylGroup { elements, index, generators })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElem] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn get(&self, i: usize) -> &WeylElem {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &WeylElem) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &WeylElem) -> bool {
        self.index.contains_key(w)
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }
}

/// W-orbit of a character and its stabilizer `W_L`.
#[derive(Clone, Debug)]
pub struct OrbitStabilizer {
    pub orbit: Vec<TorusCharacter>,
    pub stabilizer: Vec<WeylElem>,
}

pub fn orbit_and_stabilizer(l: &TorusCharacter, w: &WeylGroup) -> OrbitStabilizer {
    let mut orbit: Vec<TorusCharacter> = Vec::new();
    let mut stabilizer = Vec::new();
    for g in w.elements() {
        let m = char_act(g, l);
        if m == *l {
            stabilizer.push(*g);
        }
        if !orbit.contains(&m) {
            orbit.push(m);
        }
    }
    orbit.sort();
    OrbitStabilizer { orbit, stabilizer }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn fixtures_validate() {
        for j in [fixtures::sp4_json(), fixtures::sl2_json(), fixtures::a1a1_json()] {
            assert!(validate_root_datum(&j).is_valid(), "{}", j.name);
        }
    }

    #[test]
    fn bad_sp4_coroot_is_reported() {
        let mut j = fixtures::sp4_json();
        j.simple_coroots[1] = vec![0, 2];
        let rep = validate_root_datum(&j);
        assert!(!rep.is_valid());
        let v = &rep.violations[0];
        assert_eq!(v.kind, ViolationKind::Pairing);
        assert_eq!(v.indices, vec![1]);
        assert!(v.message.contains("= 4"));
    }

    #[test]
    fn sp4_roots_and_coroots() {
        let d = fixtures::sp4();
        assert_eq!(d.num_roots(), 8);
        assert_eq!(d.positive_indices().count(), 4);
        let long = d.index_of_root(&lattice::vector(&[2, 0])).unwrap();
        assert_eq!(d.coroot(long), lattice::vector(&[1, 0]));
        assert!(d.is_positive(long));
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.components()[0].highest, long);
        assert_eq!(d.coxeter_numbers(), vec![4]);
        assert_eq!(d.sum_positive_coroots(), lattice::vector(&[3, 1]));
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(fixtures::sp4().weyl_group().unwrap().order(), 8);
        assert_eq!(fixtures::sl2().weyl_group().unwrap().order(), 2);
        assert_eq!(fixtures::a1a1().weyl_group().unwrap().order(), 4);
    }

    #[test]
    fn weyl_elements_permute_coroots() {
        let d = fixtures::sp4();
        let w = d.weyl_group().unwrap();
        let coroots: HashSet<Vector> = d.coroots().iter().copied().collect();
        for g in w.elements() {
            let img: HashSet<Vector> = d.coroots().iter().map(|c| g.act_cochar(c)).collect();
            assert_eq!(img, coroots);
        }
    }

    #[test]
    fn character_evaluation() {
        let l = TorusCharacter::new(&[r(1, 2), r(1, 2)]);
        assert_eq!(char_eval(&l, &[1, 1]).unwrap(), r(0, 1));
        assert_eq!(char_eval(&l, &[0, 1]).unwrap(), r(1, 2));
        assert!(char_eval(&l, &[1]).is_err());
        let t = TorusCharacter::trivial(2);
        assert_eq!(char_eval(&t, &[3, -7]).unwrap(), r(0, 1));
        assert_eq!(l.order(), 2);
    }

    #[test]
    fn character_action() {
        let d = fixtures::sp4();
        let w = d.weyl_group().unwrap();
        let l = TorusCharacter::new(&[r(1, 2), r(1, 2)]);
        for g in w.elements() {
            assert_eq!(char_act(g, &l), l);
        }
        let swap = WeylElem::reflection(&d, d.index_of_root(&lattice::vector(&[1, -1])).unwrap());
        let l10 = TorusCharacter::new(&[r(1, 2), r(0, 1)]);
        assert_eq!(char_act(&swap, &l10), TorusCharacter::new(&[r(0, 1), r(1, 2)]));
        assert_eq!(char_act(&WeylElem::identity(2), &l10), l10);
    }

    #[test]
    fn orbit_stabilizer_counts() {
        let d = fixtures::sp4();
        let w = d.weyl_group().unwrap();
        let os = orbit_and_stabilizer(&TorusCharacter::new(&[r(1, 2), r(1, 2)]), &w);
        assert_eq!((os.orbit.len(), os.stabilizer.len()), (1, 8));
        let os = orbit_and_stabilizer(&TorusCharacter::trivial(2), &w);
        assert_eq!((os.orbit.len(), os.stabilizer.len()), (1, 8));
        let os = orbit_and_stabilizer(&TorusCharacter::new(&[r(1, 2), r(0, 1)]), &w);
        assert_eq!(os.orbit.len() * os.stabilizer.len(), 8);
        assert_eq!(os.orbit.len(), 2);
    }

    #[test]
    fn parse_character() {
        let l: TorusCharacter = "1/2, 1/2".parse().unwrap();
        assert_eq!(l.to_string(), "1/2,1/2");
        assert!("3/2".parse::<TorusCharacter>().is_err());
        assert!("x".parse::<TorusCharacter>().is_err());
    }
}
