//! The Iwahori-Hecke algebra of the Coxeter system `(W̃_H, S_H)` and its
//! Kazhdan-Lusztig basis, computed from the Bruhat order alone.

use crate::affine_weyl::{AffWElem, AffineSystem};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use std::collections::{BTreeMap, HashMap};

/// Element of the Hecke algebra of `W̃_H` in the standard basis.
pub type HElt = BTreeMap<AffWElem, LaurentPoly>;

fn add_term(x: &mut HElt, w: AffWElem, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(w).or_default();
    *e += c;
    if e.is_zero() {
        x.remove(&w);
    }
}

/// Hecke algebra of a Coxeter system with memoized KL polynomials.
#[derive(Clone, Debug)]
pub struct HeckeH {
    sys: AffineSystem,
    kl: HashMap<(AffWElem, AffWElem), LaurentPoly>,
    canonical: HashMap<AffWElem, HElt>,
}

impl HeckeH {
    pub fn new(sys: AffineSystem) -> Self {
        HeckeH { sys, kl: HashMap::new(), canonical: HashMap::new() }
    }

    pub fn system(&self) -> &AffineSystem {
        &self.sys
    }

    pub fn basis(w: AffWElem) -> HElt {
        BTreeMap::from([(w, LaurentPoly::one())])
    }

    /// `X · T_σ` with `(T_σ - q)(T_σ + 1) = 0`.
    pub fn mul_gen_right(&self, x: &HElt, i: usize) -> HElt {
        let s = self.sys.gen(i);
        let mut out = HElt::new();
        for (w, c) in x {
            let ws = w.mul(s);
            if self.sys.is_right_descent(w, i) {
                add_term(&mut out, *w, &(c * &(LaurentPoly::q() - LaurentPoly::one())));
                add_term(&mut out, ws, &(c * &LaurentPoly::q()));
            } else {
                add_term(&mut out, ws, c);
            }
        }
        out
    }

    pub fn mul(&self, a: &HElt, b: &HElt) -> Result<HElt> {
        let mut out = HElt::new();
        for (y, c) in b {
            let word = self
                .sys
                .membership_word(y)
                .ok_or_else(|| Error::NotInGroup(format!("{y:?} is not in the Coxeter group")))?;
            let mut x = a.clone();
            for &i in &word {
                x = self.mul_gen_right(&x, i);
            }
            for (w, d) in &x {
                add_term(&mut out, *w, &(c * d));
            }
        }
        Ok(out)
    }

    fn length(&self, w: &AffWElem) -> usize {
        self.sys.length(w)
    }

    /// The Kazhdan-Lusztig polynomial `P_{x,w}` as a polynomial in `q`.
    pub fn kl_poly(&mut self, x: &AffWElem, w: &AffWElem, bound: usize) -> Result<LaurentPoly> {
        let lw = self.length(w);
        if lw > bound {
            return Err(Error::BoundExceeded { what: format!("KL polynomial of an element of length {lw}"), bound });
        }
        Ok(self.kl_rec(x, w))
    }

    fn kl_rec(&mut self, x: &AffWElem, w: &AffWElem) -> LaurentPoly {
        if x == w {
            return LaurentPoly::one();
        }
        if !self.sys.bruhat_leq(x, w) {
            return LaurentPoly::zero();
        }
        if let Some(p) = self.kl.get(&(*x, *w)) {
            return p.clone();
        }
        let s = self.sys.left_descents(w)[0];
        let sg = *self.sys.gen(s);
        let v = sg.mul(w);
        let sx = sg.mul(x);
        let c = self.sys.is_left_descent(s, x);
        let (a, b) = if c { (0, 1) } else { (1, 0) };
        let mut p = self.kl_rec(&sx, &v).shift(a) + self.kl_rec(x, &v).shift(b);
        let lw = self.length(w) as i32;
        for z in self.sys.lower_interval(&v) {
            if z == v || !self.sys.is_left_descent(s, &z) || !self.sys.bruhat_leq(x, &z) {
                continue;
            }
            let m = self.mu(&z, &v);
            if m != 0 {
                let e = (lw - self.length(&z) as i32) / 2;
                p -= &self.kl_rec(x, &z).shift(e).scale(m);
            }
        }
        self.kl.insert((*x, *w), p.clone());
        p
    }

    /// Coefficient of `q^{(ℓ(w)-ℓ(x)-1)/2}` in `P_{x,w}`.
    pub fn mu(&mut self, x: &AffWElem, w: &AffWElem) -> i64 {
        let (lx, lw) = (self.length(x), self.length(w));
        if lw <= lx || (lw - lx) % 2 == 0 {
            return 0;
        }
        self.kl_rec(x, w).coeff(((lw - lx - 1) / 2) as i32)
    }

    /// `C'_w = v^{-ℓ(w)} Σ_{x ≤ w} P_{x,w}(q) T_x`.
    pub fn canonical(&mut self, w: &AffWElem) -> HElt {
        if let Some(c) = self.canonical.get(w) {
            return c.clone();
        }
        let lw = self.length(w) as i32;
        let mut out = HElt::new();
        for x in self.sys.lower_interval(w) {
            let p = self.kl_rec(&x, w).q_to_v().shift(-lw);
            add_term(&mut out, x, &p);
        }
        self.canonical.insert(*w, out.clone());
        out
    }

    /// Coordinates of `x` in the canonical basis.
    pub fn decompose(&mut self, x: &HElt) -> BTreeMap<AffWElem, LaurentPoly> {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        while let Some(z) = rest.keys().copied().max_by_key(|z| (self.length(z), *z)) {
            let c = rest[&z].shift(self.length(&z) as i32);
            let cz = self.canonical(&z);
            for (u, d) in &cz {
                add_term(&mut rest, *u, &(&c * d).scale(-1));
            }
            out.insert(z, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endoscopy::Endoscopy;
    use crate::fixtures;
    use crate::root_datum::RootDatum;
    use std::sync::Arc;

    #[test]
    fn affine_a1_polynomials_are_trivial() {
        let e = Endoscopy::new(Arc::new(fixtures::sl2()), "0".parse().unwrap()).unwrap();
        let mut h = HeckeH::new(e.system().clone());
        let elems = e.system().elements_up_to(6);
        for w in &elems {
            assert_eq!(h.kl_poly(w, w, 6).unwrap(), LaurentPoly::one());
            for x in &elems {
                let p = h.kl_poly(x, w, 6).unwrap();
                if e.system().bruhat_leq(x, w) {
                    assert_eq!(p, LaurentPoly::one());
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        assert!(h.kl_poly(&elems[0], &elems[elems.len() - 1], 5).is_err());
    }

    #[test]
    fn a3_has_nontrivial_polynomial() {
        // finite A3 inside the affine group: P_{s2, s2 s1 s3 s2} = 1 + q
        let d = RootDatum::from_simple(
            "SL4",
            3,
            &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let e = Endoscopy::new(Arc::new(d), "0,0,0".parse().unwrap()).unwrap();
        let sys = e.system();
        let mut h = HeckeH::new(sys.clone());
        let w = sys.word_elem(&[1, 0, 2, 1]);
        let x = *sys.gen(1);
        assert_eq!(h.kl_poly(&x, &w, 4).unwrap(), LaurentPoly::from_terms([(0, 1), (1, 1)]));
        assert_eq!(h.kl_poly(&sys.identity(), &w, 4).unwrap(), LaurentPoly::from_terms([(0, 1), (1, 1)]));
    }

    #[test]
    fn canonical_basis_products() {
        let e = Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,1/2".parse().unwrap()).unwrap();
        let mut h = HeckeH::new(e.system().clone());
        for i in 0..e.system().num_generators() {
            let s = *e.system().gen(i);
            let c = h.canonical(&s);
            let sq = h.mul(&c, &c).unwrap();
            let d = h.decompose(&sq);
            assert_eq!(d, BTreeMap::from([(s, LaurentPoly::quantum_two())]));
        }
    }
}
