//! The monodromic affine Hecke groupoid-algebra over `Z[v, v⁻¹]`.
//!
//! The basis element `T_w` with right character `L` goes from `L` to
//! `w·L`. Products are computed by writing the right factor as a reduced
//! word times a length-zero element and folding in one simple reflection
//! at a time.

mod canonical;
mod h_side;
mod theta;

pub use canonical::{compare_neutral_block, rank_character, CompareReport, NeutralCanonical};
pub use h_side::{HElt, HeckeH};
pub use theta::{theta_eigen_check, theta_vector, ThetaTerm, ThetaVector};

use crate::affine_weyl::{AffWElem, AffineSystem};
use crate::endoscopy::Endoscopy;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::root_datum::TorusCharacter;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite combination of basis elements `T_w` between two characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "HeckeEltJson", try_from = "HeckeEltJson")]
pub struct HeckeElt {
    left_char: TorusCharacter,
    right_char: TorusCharacter,
    terms: BTreeMap<AffWElem, LaurentPoly>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeTermJson {
    pub w: AffWElem,
    pub coeff: LaurentPoly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeEltJson {
    pub left_char: TorusCharacter,
    pub right_char: TorusCharacter,
    pub terms: Vec<HeckeTermJson>,
}

impl From<HeckeElt> for HeckeEltJson {
    fn from(h: HeckeElt) -> Self {
        HeckeEltJson {
            left_char: h.left_char,
            right_char: h.right_char,
            terms: h.terms.into_iter().map(|(w, coeff)| HeckeTermJson { w, coeff }).collect(),
        }
    }
}

impl TryFrom<HeckeEltJson> for HeckeElt {
    type Error = Error;

    fn try_from(j: HeckeEltJson) -> Result<Self> {
        let mut h = HeckeElt::zero(j.left_char, j.right_char);
        for t in j.terms {
            if t.w.act_char(&j.right_char) != j.left_char {
                return Err(Error::CharacterMismatch(format!("{:?} does not map {} to {}", t.w, j.right_char, j.left_char)));
            }
            h.add_term(t.w, &t.coeff);
        }
        Ok(h)
    }
}

impl HeckeElt {
    pub fn zero(left_char: TorusCharacter, right_char: TorusCharacter) -> Self {
        HeckeElt { left_char, right_char, terms: BTreeMap::new() }
    }

    /// `T_w` with right character `right`.
    pub fn basis(w: AffWElem, right: TorusCharacter) -> Self {
        let mut h = HeckeElt::zero(w.act_char(&right), right);
        h.terms.insert(w, LaurentPoly::one());
        h
    }

    /// The unit `T_e` at a character.
    pub fn unit(l: TorusCharacter) -> Self {
        Self::basis(AffWElem::identity(l.rank()), l)
    }

    pub fn left_char(&self) -> &TorusCharacter {
        &self.left_char
    }

    pub fn right_char(&self) -> &TorusCharacter {
        &self.right_char
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffWElem, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &AffWElem) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &AffWElem> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, w: AffWElem, c: &LaurentPoly) {
        debug_assert_eq!(w.act_char(&self.right_char), self.left_char);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn check_same_chars(&self, o: &Self) -> Result<()> {
        if self.left_char != o.left_char || self.right_char != o.right_char {
            return Err(Error::CharacterMismatch(format!(
                "cannot add elements of ({}, {}) and ({}, {})",
                self.left_char, self.right_char, o.left_char, o.right_char
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_chars(o)?;
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(*w, c);
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same_chars(o)?;
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(*w, &c.scale(-1));
        }
        Ok(r)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut r = HeckeElt::zero(self.left_char, self.right_char);
        for (w, d) in &self.terms {
            r.add_term(*w, &(c * d));
        }
        r
    }

    /// Coefficientwise bar on the coefficients only.
    fn bar_coeffs(&self) -> Self {
        let mut r = HeckeElt::zero(self.left_char, self.right_char);
        for (w, d) in &self.terms {
            r.add_term(*w, &d.bar());
        }
        r
    }
}

/// The monodromic Hecke algebra of a root datum.
#[derive(Clone, Debug)]
pub struct MonoHecke {
    sys: AffineSystem,
}

impl MonoHecke {
    pub fn new(ambient: AffineSystem) -> Self {
        MonoHecke { sys: ambient }
    }

    pub fn from_endoscopy(e: &Endoscopy) -> Self {
        Self::new(e.ambient().clone())
    }

    pub fn system(&self) -> &AffineSystem {
        &self.sys
    }

    /// Whether the ambient simple reflection `i` lies in the neutral block
    /// group of `l`.
    pub fn is_block_simple(&self, i: usize, l: &TorusCharacter) -> bool {
        let g = &self.sys.generators()[i];
        l.eval(&g.coroot(self.sys.datum())).is_zero()
    }

    /// `X · T_s` for the ambient simple reflection `s = s_i`.
    pub fn mul_gen_right(&self, x: &HeckeElt, i: usize) -> HeckeElt {
        let s = self.sys.gen(i);
        let r = x.right_char;
        let block = self.is_block_simple(i, &r);
        let mut out = HeckeElt::zero(x.left_char, s.act_char(&r));
        for (w, c) in &x.terms {
            let ws = w.mul(s);
            if !self.sys.is_right_descent(w, i) || !block {
                out.add_term(ws, c);
            } else {
                out.add_term(*w, &(c * &(LaurentPoly::q() - LaurentPoly::one())));
                out.add_term(ws, &(c * &LaurentPoly::q()));
            }
        }
        out
    }

    /// `T_s · X`.
    pub fn mul_gen_left(&self, i: usize, x: &HeckeElt) -> HeckeElt {
        let s = self.sys.gen(i);
        let l = x.left_char;
        let block = self.is_block_simple(i, &l);
        let mut out = HeckeElt::zero(s.act_char(&l), x.right_char);
        for (w, c) in &x.terms {
            let sw = s.mul(w);
            if !self.sys.is_left_descent(i, w) || !block {
                out.add_term(sw, c);
            } else {
                out.add_term(*w, &(c * &(LaurentPoly::q() - LaurentPoly::one())));
                out.add_term(sw, &(c * &LaurentPoly::q()));
            }
        }
        out
    }

    fn mul_omega_right(&self, x: &HeckeElt, om: &AffWElem) -> HeckeElt {
        let mut out = HeckeElt::zero(x.left_char, om.inverse().act_char(&x.right_char));
        for (w, c) in &x.terms {
            out.add_term(w.mul(om), c);
        }
        out
    }

    fn mul_omega_left(&self, om: &AffWElem, x: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(om.act_char(&x.left_char), x.right_char);
        for (w, c) in &x.terms {
            out.add_term(om.mul(w), c);
        }
        out
    }

    fn check_composable(a: &HeckeElt, b: &HeckeElt) -> Result<()> {
        if a.right_char != b.left_char {
            return Err(Error::CharacterMismatch(format!(
                "right character {} of the left factor differs from left character {} of the right factor",
                a.right_char, b.left_char
            )));
        }
        Ok(())
    }

    /// `a · b`, peeling reduced words off the right factor.
    pub fn t_mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        Self::check_composable(a, b)?;
        let mut out = HeckeElt::zero(a.left_char, b.right_char);
        for (y, c) in &b.terms {
            let (word, om) = self.sys.reduced_word(y);
            let mut x = a.clone();
            for &i in &word {
                x = self.mul_gen_right(&x, i);
            }
            x = self.mul_omega_right(&x, &om);
            debug_assert_eq!(x.right_char, b.right_char);
            for (w, d) in &x.terms {
                out.add_term(*w, &(c * d));
            }
        }
        Ok(out)
    }

    /// `a · b`, peeling reduced words off the left factor.
    pub fn t_mul_left(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        Self::check_composable(a, b)?;
        let mut out = HeckeElt::zero(a.left_char, b.right_char);
        for (x, c) in &a.terms {
            let (word, om) = self.sys.reduced_word(x);
            let mut y = self.mul_omega_left(&om, b);
            for &i in word.iter().rev() {
                y = self.mul_gen_left(i, &y);
            }
            for (w, d) in &y.terms {
                out.add_term(*w, &(c * d));
            }
        }
        Ok(out)
    }

    /// `X · T_s⁻¹`.
    fn mul_gen_inv_right(&self, x: &HeckeElt, i: usize) -> HeckeElt {
        let xs = self.mul_gen_right(x, i);
        if !self.is_block_simple(i, &x.right_char) {
            return xs;
        }
        let mut out = xs.scale(&LaurentPoly::q_inv());
        for (w, c) in &x.terms {
            out.add_term(*w, &(c * &(LaurentPoly::q_inv() - LaurentPoly::one())));
        }
        out
    }

    /// `bar(T_w)` for a basis element with right character `r`.
    pub fn bar_basis(&self, w: &AffWElem, r: &TorusCharacter) -> HeckeElt {
        let (word, om) = self.sys.reduced_word(w);
        let mut x = HeckeElt::unit(w.act_char(r));
        for &i in &word {
            x = self.mul_gen_inv_right(&x, i);
        }
        self.mul_omega_right(&x, &om)
    }

    /// The bar involution: `v ↦ v⁻¹`, `T_w ↦ T_{w⁻¹}⁻¹`.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(h.left_char, h.right_char);
        for (w, c) in &h.terms {
            let b = self.bar_basis(w, &h.right_char);
            let cb = c.bar();
            for (u, d) in &b.terms {
                out.add_term(*u, &(&cb * d));
            }
        }
        out
    }

    /// `b_σ = v⁻¹(T_σ + T_e)` for the element `σ = S_H[h]` of the neutral
    /// block group of `endo`.
    pub fn b_simple(&self, endo: &Endoscopy, h: usize) -> Result<HeckeElt> {
        if h >= endo.system().num_generators() {
            return Err(Error::NotInGroup(format!("s{} is not a simple reflection of the neutral block group", h + 1)));
        }
        let l = *endo.character();
        let sigma = *endo.system().gen(h);
        let mut b = HeckeElt::basis(sigma, l);
        b.add_term(AffWElem::identity(l.rank()), &LaurentPoly::one());
        Ok(b.scale(&LaurentPoly::v_inv()))
    }

    /// Substitutes `v = 1`.
    pub fn specialize_q1(h: &HeckeElt) -> BTreeMap<AffWElem, i64> {
        h.terms
            .iter()
            .map(|(w, c)| (*w, c.eval_one()))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    /// Whether `bar(h) = h`.
    pub fn is_bar_invariant(&self, h: &HeckeElt) -> bool {
        self.bar(h) == *h
    }

    /// The coefficient-only bar, exposed for canonical-basis bookkeeping.
    pub fn bar_coefficients(h: &HeckeElt) -> HeckeElt {
        h.bar_coeffs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice;
    use std::sync::Arc;

    fn setup() -> (Endoscopy, MonoHecke) {
        let e = Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,1/2".parse().unwrap()).unwrap();
        let m = MonoHecke::from_endoscopy(&e);
        (e, m)
    }

    fn refl(e: &Endoscopy, root: &[i64]) -> AffWElem {
        let d = e.datum();
        AffWElem::reflection(d, d.index_of_root(&lattice::vector(root)).unwrap(), 0)
    }

    #[test]
    fn quadratic_rules() {
        let (e, m) = setup();
        let l = *e.character();
        let t2 = HeckeElt::basis(refl(&e, &[0, 2]), l);
        assert_eq!(m.t_mul(&t2, &t2).unwrap(), HeckeElt::unit(l));
        let t1 = HeckeElt::basis(refl(&e, &[1, -1]), l);
        let mut expect = t1.scale(&(LaurentPoly::q() - LaurentPoly::one()));
        expect.add_term(AffWElem::identity(2), &LaurentPoly::q());
        assert_eq!(m.t_mul(&t1, &t1).unwrap(), expect);
        let ta = HeckeElt::basis(refl(&e, &[1, 1]), l);
        let mut expect = ta.scale(&(LaurentPoly::q() - LaurentPoly::one()));
        expect.add_term(AffWElem::identity(2), &LaurentPoly::q());
        assert_eq!(m.t_mul(&ta, &ta).unwrap(), expect);
    }

    #[test]
    fn length_additive_products() {
        let (e, m) = setup();
        let l = *e.character();
        let sys = m.system();
        for u in sys.elements_up_to(3) {
            for v in sys.elements_up_to(3) {
                let uv = u.mul(&v);
                if sys.length(&uv) == sys.length(&u) + sys.length(&v) {
                    let p = m.t_mul(&HeckeElt::basis(u, l), &HeckeElt::basis(v, l)).unwrap();
                    assert_eq!(p, HeckeElt::basis(uv, l));
                }
            }
        }
    }

    #[test]
    fn bar_examples() {
        let (e, m) = setup();
        let l = *e.character();
        assert_eq!(m.bar(&HeckeElt::unit(l)), HeckeElt::unit(l));
        let t2 = HeckeElt::basis(refl(&e, &[0, 2]), l);
        assert_eq!(m.bar(&t2), t2);
        for w in m.system().elements_up_to(4) {
            let t = HeckeElt::basis(w, l);
            assert_eq!(m.bar(&m.bar(&t)), t);
        }
    }

    #[test]
    fn b_simple_is_idempotent_up_to_scalar() {
        let (e, m) = setup();
        for h in 0..e.system().num_generators() {
            let b = m.b_simple(&e, h).unwrap();
            assert!(m.is_bar_invariant(&b));
            assert_eq!(m.t_mul(&b, &b).unwrap(), b.scale(&LaurentPoly::quantum_two()));
        }
        assert!(m.b_simple(&e, 9).is_err());
    }

    #[test]
    fn character_mismatch() {
        let e = Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,0".parse().unwrap()).unwrap();
        let m = MonoHecke::from_endoscopy(&e);
        let a = HeckeElt::unit("1/2,0".parse().unwrap());
        let b = HeckeElt::unit("0,1/2".parse().unwrap());
        assert!(m.t_mul(&a, &b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let (e, m) = setup();
        let b = m.b_simple(&e, 0).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<HeckeElt>(&s).unwrap(), b);
    }
}
