//! Polynomials over `Q` in `x_1, …, x_r` and the central variable `z`, with
//! every variable in degree two.

use crate::affine_weyl::AffWElem;
use crate::lattice::{Vector, MAX_RANK};
use crate::root_datum::RootDatum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type Q = BigRational;

pub const NVARS: usize = MAX_RANK + 1;
/// Slot of `z`.
pub const Z: usize = MAX_RANK;

pub type Mono = [u8; NVARS];

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut m = *a;
    for i in 0..NVARS {
        m[i] += b[i];
    }
    m
}

/// All monomials of polynomial degree `d` in the given variables.
pub fn monomials(vars: &[usize], d: u32) -> Vec<Mono> {
    fn rec(vars: &[usize], d: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        match vars {
            [] => {
                if d == 0 {
                    out.push(*cur)
                }
            }
            [v, rest @ ..] => {
                for e in (0..=d).rev() {
                    cur[*v] = e as u8;
                    rec(rest, d - e, cur, out);
                }
                cur[*v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut [0; NVARS], &mut out);
    out
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; NVARS];
        m[i] = 1;
        let mut p = Self::zero();
        p.add_term(m, Q::one());
        p
    }

    /// The linear form `Σ μ_i x_i` of a character.
    pub fn character(mu: &Vector, rank: usize) -> Self {
        let mut p = Self::zero();
        for (i, &c) in mu.iter().enumerate().take(rank) {
            let mut m = [0; NVARS];
            m[i] = 1;
            p.add_term(m, q(c));
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&[0; NVARS])
    }

    /// Cohomological degree (twice the polynomial degree) if homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(mono_degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(2 * d as i32)
    }

    pub fn is_homogeneous_of(&self, deg: i32) -> bool {
        self.terms.keys().all(|m| 2 * mono_degree(m) as i32 == deg)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, x)| (mono_mul(k, m), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Q; NVARS]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            s += t;
        }
        s
    }

    /// The ring endomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly; NVARS]) -> Self {
        let mut powers: Vec<Vec<Poly>> = (0..NVARS).map(|_| vec![Poly::one()]).collect();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for i in 0..NVARS {
                let e = m[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out += &t;
        }
        out
    }

    /// Exact quotient by a nonzero linear form, `None` if it does not divide.
    pub fn div_linear(&self, a: &Poly) -> Option<Poly> {
        let (pivot, lead) = (0..NVARS).find_map(|i| {
            let mut m = [0; NVARS];
            m[i] = 1;
            a.terms.get(&m).map(|c| (i, c.clone()))
        })?;
        let mut rest = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rest.terms.iter().filter(|(m, _)| m[pivot] > 0).max_by_key(|(m, _)| m[pivot]).map(|(m, c)| (*m, c.clone())) {
            let mut mq = m;
            mq[pivot] -= 1;
            let cq = c / &lead;
            rest -= &a.mul_mono(&mq, &cq);
            quot.add_term(mq, cq);
        }
        rest.is_zero().then_some(quot)
    }
}

/// The action of `(w, λ)` on polynomials: `x ↦ w·x` on characters and
/// `z ↦ z + κ(λ)` for the invariant form `κ`.
#[derive(Clone, Debug)]
pub struct RingAction {
    images: [Poly; NVARS],
}

impl RingAction {
    pub fn new(d: &RootDatum, g: &AffWElem, with_z: bool) -> Self {
        let r = d.rank();
        let dual = g.finite_part().dual();
        let mut images: [Poly; NVARS] = std::array::from_fn(Poly::var);
        for (i, img) in images.iter_mut().enumerate().take(r) {
            let mut col = [0i64; MAX_RANK];
            for (j, c) in col.iter_mut().enumerate().take(r) {
                *c = dual.get(j, i);
            }
            *img = Poly::character(&col, r);
        }
        if with_z {
            images[Z] = &Poly::var(Z) + &kappa(d, g.translation_part());
        }
        RingAction { images }
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        f.substitute(&self.images)
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }
}

/// `κ(λ) = Σ_β <β, λ> β` up to the normalizing scalar of the invariant form.
pub fn kappa(d: &RootDatum, lambda: &Vector) -> Poly {
    let k = d.invariant_form();
    let r = d.rank();
    let mut v = [0i64; MAX_RANK];
    for (i, c) in v.iter_mut().enumerate().take(r) {
        *c = (0..r).map(|j| k.get(i, j) * lambda[j]).sum();
    }
    Poly::character(&v, r)
}

fn var_name(i: usize) -> String {
    if i == Z {
        "z".into()
    } else {
        format!("x{}", i + 1)
    }
}

fn mono_string(m: &Mono) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { var_name(i) } else { format!("{}^{}", var_name(i), e) })
        .collect();
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let ms = mono_string(m);
            if ms.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{ms}")?;
            } else {
                write!(f, "{a}*{ms}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: Vec<(Mono, String)> = self.terms.iter().map(|(k, c)| (*k, c.to_string())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = Vec::<(Mono, String)>::deserialize(d)?;
        let mut p = Poly::zero();
        for (k, c) in m {
            p.add_term(k, c.parse().map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn arithmetic_and_degree() {
        let p = &x(0) + &x(1);
        let sq = &p * &p;
        assert_eq!(sq.degree(), Some(4));
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.div_linear(&p), Some(p.clone()));
        assert_eq!(x(0).div_linear(&x(1)), None);
        assert_eq!(monomials(&[0, 1, Z], 2).len(), 6);
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn reflection_action_and_divided_difference() {
        let d = fixtures::sp4();
        let i = d.index_of_root(&crate::lattice::vector(&[1, -1])).unwrap();
        let s = RingAction::new(&d, &AffWElem::reflection(&d, i, 0), false);
        assert_eq!(s.apply(&x(0)), x(1));
        let alpha = Poly::character(&d.root(i), 2);
        let dd = |f: &Poly| (f - &s.apply(f)).div_linear(&alpha).unwrap();
        assert_eq!(dd(&x(0)), Poly::one());
        assert_eq!(dd(&(&x(0) * &x(0))), &x(0) + &x(1));
    }

    #[test]
    fn action_is_multiplicative() {
        let d = fixtures::sp4();
        let a = AffWElem::reflection(&d, 0, 1);
        let b = AffWElem::reflection(&d, 1, -1);
        let f = &(&x(0) * &x(Z)) + &x(1).pow(2);
        let ra = RingAction::new(&d, &a, true);
        let rb = RingAction::new(&d, &b, true);
        let rab = RingAction::new(&d, &a.mul(&b), true);
        assert_eq!(ra.apply(&rb.apply(&f)), rab.apply(&f));
    }

    #[test]
    fn serde_roundtrip() {
        let f = &(&x(0) * &x(Z)).scale(&q_frac(3, 2)) - &Poly::one();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), f);
        assert_eq!(f.to_string(), "3/2*x1*z - 1");
    }
}
