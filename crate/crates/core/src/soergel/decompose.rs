//! Splitting of `B_s ⊗ B_s`, supports, and the extraction of an
//! indecomposable summand from a Bott–Samelson module.

use super::bimodule::{pm_eval, pm_identity, pm_is_zero, pm_mul, pm_sub, pm_zero, Bimodule, BimoduleMap, Level, PMat};
use super::hom::hom_space;
use super::linalg::{self, dense_to_sparse, Echelon};
use super::poly::{kappa, q, Mono, Poly, Q, NVARS, Z};
use super::standard::{b_atom, Reflection};
use crate::affine_weyl::AffWElem;
use crate::error::{Error, Result};
use crate::lattice::MAX_RANK;
use crate::root_datum::RootDatum;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// `B_s ⊗ B_s ≅ B_s⟨1⟩ ⊕ B_s⟨-1⟩` with inclusions and projections; index 0
/// is the `⟨1⟩` summand.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub summands: [Bimodule; 2],
    pub product: Bimodule,
    pub incl: [BimoduleMap; 2],
    pub proj: [BimoduleMap; 2],
}

impl Splitting {
    /// All maps are morphisms, `p_a i_b = δ_{ab}` and `Σ i_a p_a = id`.
    pub fn verify(&self) -> bool {
        let morphisms = (0..2).all(|a| {
            self.incl[a].is_morphism(&self.summands[a], &self.product) && self.proj[a].is_morphism(&self.product, &self.summands[a])
        });
        let orth = (0..2).all(|a| {
            (0..2).all(|b| {
                let c = self.incl[a].then(&self.proj[b]);
                if a == b {
                    c == BimoduleMap::identity(&self.summands[a])
                } else {
                    c.is_zero()
                }
            })
        });
        let total = self.proj[0].then(&self.incl[0]).add(&self.proj[1].then(&self.incl[1]));
        morphisms && orth && total == BimoduleMap::identity(&self.product)
    }
}

/// If `c` is a scalar multiple of the identity, that scalar.
fn scalar_of(c: &BimoduleMap) -> Option<Q> {
    let k = c.mat.first()?.first()?.constant_term();
    let id = pm_identity(c.mat.len());
    (c.mat == id.iter().map(|r| r.iter().map(|x| x.scale(&k)).collect()).collect::<PMat>()).then_some(k)
}

fn retract(x: &Bimodule, m: &Bimodule) -> Result<(BimoduleMap, BimoduleMap)> {
    let ins = hom_space(x, m, 0)?;
    let outs = hom_space(m, x, 0)?;
    let mut candidates: Vec<(BimoduleMap, BimoduleMap)> = Vec::new();
    for a in &ins {
        for b in &outs {
            candidates.push((a.clone(), b.clone()));
        }
    }
    if let (Some(a0), Some(b0)) = (ins.first(), outs.first()) {
        let sum = |v: &[BimoduleMap], z: &BimoduleMap| {
            v.iter().enumerate().fold(z.clone(), |acc, (k, f)| acc.add(&f.scale(&q(k as i64 + 1))))
        };
        candidates.push((sum(&ins, &a0.scale(&Q::zero())), sum(&outs, &b0.scale(&Q::zero()))));
    }
    for (a, b) in candidates {
        if let Some(k) = scalar_of(&a.then(&b)) {
            if !k.is_zero() {
                return Ok((a, b.scale(&(Q::one() / k))));
            }
        }
    }
    Err(Error::Invariant(format!("{} is not a retract of {}", x.label, m.label)))
}

/// Solves for the splitting of `B_s ⊗ B_s` from degree-zero hom spaces.
pub fn split_bs_bs(d: &RootDatum, s: &Reflection, ring: super::bimodule::Ring) -> Result<Splitting> {
    let b = b_atom(d, s, ring)?;
    let bb = b.tensor(&b)?;
    let (up, down) = (b.shift(1), b.shift(-1));
    let (i0, p0) = retract(&up, &bb)?;
    let (i1, p1) = retract(&down, &bb)?;
    let id = BimoduleMap::identity(&bb);
    let comp = id.sub(&p0.then(&i0));
    let i1 = i1.then(&comp);
    let p1 = comp.then(&p1);
    let k = scalar_of(&i1.then(&p1)).filter(|k| !k.is_zero()).ok_or_else(|| Error::Invariant("second summand degenerates".into()))?;
    let p1 = p1.scale(&(Q::one() / k));
    Ok(Splitting { summands: [up, down], product: bb, incl: [i0, i1], proj: [p0, p1] })
}

fn random_point(rng: &mut ChaCha8Rng) -> [i64; NVARS] {
    std::array::from_fn(|_| {
        let v: i64 = rng.gen_range(1..=997);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    })
}

/// The left point `p` with `(w·a)(p) = a(right)` for every variable `a`.
fn graph_point(d: &RootDatum, w: &AffWElem, right: &[i64; NVARS]) -> ([Q; NVARS], [Q; NVARS]) {
    let mut qx = [0i64; MAX_RANK];
    qx[..d.rank()].copy_from_slice(&right[..d.rank()]);
    let px = w.finite_part().act_cochar(&qx);
    let mut left: [Q; NVARS] = std::array::from_fn(|_| Q::zero());
    for i in 0..d.rank() {
        left[i] = q(px[i]);
    }
    let r: [Q; NVARS] = std::array::from_fn(|i| q(right[i]));
    left[Z] = &r[Z] - kappa(d, w.translation_part()).eval(&left);
    (left, r)
}

/// Whether `Γ(w)` lies in the support of `m`, tested at random points of
/// the graph; all trials must agree.
pub fn support_contains(d: &RootDatum, m: &Bimodule, w: &AffWElem, trials: usize, seed: u64) -> Result<bool> {
    if m.ring.level == Level::Split {
        return Err(Error::Precondition("support is tested on extended or plain modules".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = None;
    for _ in 0..trials.max(1) {
        let (l, r) = graph_point(d, w, &random_point(&mut rng));
        let hit = m.fiber_dimension(&l, &r) > 0;
        match seen {
            None => seen = Some(hit),
            Some(h) if h != hit => return Err(Error::Invariant(format!("support test of {} inconsistent at {w:?}", m.label))),
            _ => {}
        }
    }
    Ok(seen.unwrap_or(false))
}

/// The summand of `m` cut out by a degree-zero idempotent.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Bimodule,
    /// `summand → m`
    pub inclusion: BimoduleMap,
    /// `m → summand`
    pub projection: BimoduleMap,
}

fn pm_const(a: &PMat) -> Vec<Vec<Q>> {
    a.iter().map(|r| r.iter().map(Poly::constant_term).collect()).collect()
}

fn pm_from_const(a: &[Vec<Q>]) -> PMat {
    a.iter().map(|r| r.iter().map(|x| Poly::constant(x.clone())).collect()).collect()
}

/// Inverse of a square polynomial matrix whose constant part is invertible
/// and whose remaining part is nilpotent after normalization.
fn graded_inverse(c: &PMat) -> Option<PMat> {
    let k = c.len();
    let c0 = pm_const(c);
    let c0_inv = pm_from_const(&linalg::inverse(&c0)?);
    let n = pm_mul(&c0_inv, &pm_sub(c, &pm_from_const(&c0)));
    let mut sum = pm_identity(k);
    let mut term = pm_identity(k);
    for step in 1..=k + 1 {
        term = pm_mul(&term, &n);
        if pm_is_zero(&term) {
            return Some(pm_mul(&sum, &c0_inv));
        }
        let signed = if step % 2 == 1 { pm_sub(&pm_zero(k, k), &term) } else { term.clone() };
        sum = super::bimodule::pm_add(&sum, &signed);
    }
    None
}

/// The image of an idempotent `e ∈ End^0(m)`, with a left basis given by
/// rows of `e` (graded Nakayama).
pub fn image_of_idempotent(m: &Bimodule, e: &BimoduleMap, label: String) -> Result<Summand> {
    let e0 = pm_const(&e.mat);
    let rows = linalg::independent_rows(&e0);
    if rows.is_empty() {
        return Err(Error::Precondition("zero idempotent".into()));
    }
    let sub: Vec<Vec<Q>> = rows.iter().map(|&i| e0[i].clone()).collect();
    let transposed: Vec<Vec<Q>> = (0..m.rank()).map(|j| sub.iter().map(|r| r[j].clone()).collect()).collect();
    let cols = linalg::independent_rows(&transposed);
    let ej: PMat = rows.iter().map(|&i| e.mat[i].clone()).collect();
    let pick_cols = |a: &PMat| -> PMat { a.iter().map(|r| cols.iter().map(|&k| r[k].clone()).collect()).collect() };
    let cinv = graded_inverse(&pick_cols(&ej)).ok_or_else(|| Error::Invariant("summand basis matrix not invertible".into()))?;
    let mut ops = Vec::with_capacity(m.ops.len());
    for a in &m.ops {
        let img = pm_mul(&ej, a);
        let na = pm_mul(&pick_cols(&img), &cinv);
        if pm_mul(&na, &ej) != img {
            return Err(Error::Invariant("image of the idempotent is not closed under the right action".into()));
        }
        ops.push(na);
    }
    let module = Bimodule { ring: m.ring, label, degrees: rows.iter().map(|&i| m.degrees[i]).collect(), ops };
    module.validate()?;
    let projection = BimoduleMap { degree: 0, mat: pm_mul(&pick_cols(&e.mat), &cinv) };
    Ok(Summand { module, inclusion: BimoduleMap { degree: 0, mat: ej }, projection })
}

type UPoly = Vec<Q>;

fn upoly_trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn upoly_divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let b = upoly_trim(b.clone());
    let mut r = upoly_trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut quo = vec![Q::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, x) in b.iter().enumerate() {
            r[k + i] -= &c * x;
        }
        quo[k] = c;
        r = upoly_trim(r);
    }
    (upoly_trim(quo), r)
}

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    upoly_trim(out)
}

fn upoly_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    upoly_trim((0..n).map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero)).collect())
}

/// `s` with `s·a ≡ 1 mod b`, for coprime `a`, `b`.
fn upoly_inverse_mod(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let (mut r0, mut r1) = (b.clone(), upoly_divrem(a, b).1);
    let (mut s0, mut s1): (UPoly, UPoly) = (vec![], vec![Q::one()]);
    while !r1.is_empty() {
        let (qt, r) = upoly_divrem(&r0, &r1);
        let s = upoly_sub(&s0, &upoly_mul(&qt, &s1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = Q::one() / &r0[0];
    Some(upoly_divrem(&s0.iter().map(|c| c * &inv).collect(), b).1)
}

fn flatten(maps: &[PMat]) -> Vec<Vec<Q>> {
    let mut keys: BTreeMap<(usize, usize, Mono), usize> = BTreeMap::new();
    for a in maps {
        for (i, r) in a.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                for (m, _) in x.terms() {
                    let n = keys.len();
                    keys.entry((i, j, *m)).or_insert(n);
                }
            }
        }
    }
    maps.iter()
        .map(|a| {
            let mut v = vec![Q::zero(); keys.len()];
            for (i, r) in a.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    for (m, c) in x.terms() {
                        v[keys[&(i, j, *m)]] = c.clone();
                    }
                }
            }
            v
        })
        .collect()
}

/// The scalar by which `phi` acts on the one-dimensional fiber at `(l, r)`.
fn fiber_scalar(m: &Bimodule, phi: &BimoduleMap, l: &[Q; NVARS], r: &[Q; NVARS]) -> Option<Q> {
    let n = m.rank();
    let mut ech = Echelon::new();
    for (k, a) in m.ops.iter().enumerate() {
        let v = m.ring.op_var(k);
        for (i, mut row) in pm_eval(a, l).into_iter().enumerate() {
            row[i] -= &r[v];
            ech.insert(dense_to_sparse(&row));
        }
    }
    let f = ech.nullspace(n);
    if f.len() != 1 {
        return None;
    }
    let f = &f[0];
    let k = (0..n).find(|&k| !f[k].is_zero())?;
    let p = pm_eval(&phi.mat, l);
    // image of e_k is row k of p; pair with the functional f
    let img: Q = p[k].iter().zip(f).map(|(x, y)| x * y).sum();
    Some(img / &f[k])
}

/// Extracts the indecomposable summand of `m` whose support contains
/// `Γ(target)`, assuming that graph meets the support in a one-dimensional fiber.
pub fn indecomposable_summand(d: &RootDatum, m: &Bimodule, target: &AffWElem, seed: u64, attempts: usize) -> Result<Option<Summand>> {
    let end0 = hom_space(m, m, 0)?;
    if end0.len() <= 1 {
        let id = BimoduleMap::identity(m);
        return Ok(Some(Summand { module: m.clone(), inclusion: id.clone(), projection: id }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let phi = end0.iter().fold(BimoduleMap::zero(m, m, 0), |acc, e| acc.add(&e.scale(&q(rng.gen_range(-20..=20)))));
        let (l, r) = graph_point(d, target, &random_point(&mut rng));
        let Some(chi) = fiber_scalar(m, &phi, &l, &r) else { continue };
        // minimal polynomial of phi
        let mut powers = vec![pm_identity(m.rank())];
        let minpoly = loop {
            let next = pm_mul(powers.last().unwrap(), &phi.mat);
            let flat = flatten(&[powers.clone(), vec![next.clone()]].concat());
            let (target_v, basis) = flat.split_last().unwrap();
            if let Some(c) = linalg::solve_combination(basis, target_v) {
                let mut p: UPoly = c.into_iter().map(|x| -x).collect();
                p.push(Q::one());
                break p;
            }
            powers.push(next);
        };
        let lin: UPoly = vec![-chi.clone(), Q::one()];
        let (mut g, mut a) = (minpoly, 0usize);
        loop {
            let (qt, rem) = upoly_divrem(&g, &lin);
            if !rem.is_empty() {
                break;
            }
            g = qt;
            a += 1;
        }
        if a == 0 {
            continue;
        }
        let la = (0..a).fold(vec![Q::one()], |acc, _| upoly_mul(&acc, &lin));
        let Some(h) = upoly_inverse_mod(&g, &la) else { continue };
        let e_poly = upoly_mul(&g, &h);
        let mut e = pm_zero(m.rank(), m.rank());
        let mut pw = pm_identity(m.rank());
        for c in &e_poly {
            if !c.is_zero() {
                e = super::bimodule::pm_add(&e, &pw.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect());
            }
            pw = pm_mul(&pw, &phi.mat);
        }
        let e = BimoduleMap { degree: 0, mat: e };
        if e.then(&e) != e || e.is_zero() {
            continue;
        }
        let Ok(s) = image_of_idempotent(m, &e, format!("B({target:?})")) else { continue };
        if hom_space(&s.module, &s.module, 0)?.len() == 1 && support_contains(d, &s.module, target, 4, seed ^ 0x5eed)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
