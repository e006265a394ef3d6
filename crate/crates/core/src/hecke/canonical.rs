//! Canonical basis of the neutral block, computed inside the monodromic
//! algebra, and its comparison with the Kazhdan-Lusztig basis of `W̃_H`.

use super::{HeckeElt, HeckeH, MonoHecke};
use crate::affine_weyl::AffWElem;
use crate::endoscopy::Endoscopy;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Canonical basis `{b_w}` of the neutral block of a character.
#[derive(Clone, Debug)]
pub struct NeutralCanonical {
    endo: Endoscopy,
    hecke: MonoHecke,
    cache: HashMap<AffWElem, HeckeElt>,
}

impl NeutralCanonical {
    pub fn new(endo: Endoscopy) -> Self {
        let hecke = MonoHecke::from_endoscopy(&endo);
        NeutralCanonical { endo, hecke, cache: HashMap::new() }
    }

    pub fn endoscopy(&self) -> &Endoscopy {
        &self.endo
    }

    pub fn hecke(&self) -> &MonoHecke {
        &self.hecke
    }

    fn endo_len(&self, w: &AffWElem) -> usize {
        self.endo.system().length(w)
    }

    /// The bar-invariant `b_w ∈ v^{-ℓ_L(w)} T_w + Σ_{u < w} v^{-ℓ_L(u)-1} Z[v⁻¹] T_u`.
    pub fn kl_basis(&mut self, w: &AffWElem, bound: usize) -> Result<HeckeElt> {
        let lw = self.endo.endo_length(w)?;
        if lw > bound {
            return Err(Error::BoundExceeded { what: format!("canonical basis element of length {lw}"), bound });
        }
        Ok(self.b(w))
    }

    fn b(&mut self, w: &AffWElem) -> HeckeElt {
        if let Some(b) = self.cache.get(w) {
            return b.clone();
        }
        let l = *self.endo.character();
        let sys = self.endo.system().clone();
        let out = if w.is_identity() {
            HeckeElt::unit(l)
        } else {
            let i = sys.right_descents(w)[0];
            let y = w.mul(sys.gen(i));
            let by = self.b(&y);
            let bs = self.hecke.b_simple(&self.endo, i).expect("generator index in range");
            let mut x = self.hecke.t_mul(&by, &bs).expect("neutral block is closed");
            loop {
                let next = x
                    .terms()
                    .filter(|(z, _)| *z != w)
                    .map(|(z, c)| (self.endo_len(z), *z, c.shift(self.endo_len(z) as i32)))
                    .filter(|(_, _, h)| !h.in_negative_part())
                    .max_by_key(|(lz, z, _)| (*lz, *z));
                let Some((_, z, h)) = next else { break };
                let p = h.symmetrize_nonnegative();
                let bz = self.b(&z);
                x = x.sub(&bz.scale(&p)).expect("same characters");
            }
            x
        };
        debug_assert_eq!(out.coeff(w), LaurentPoly::monomial(1, -(self.endo_len(w) as i32)));
        self.cache.insert(*w, out.clone());
        out
    }

    /// Coordinates of a neutral-block element in the canonical basis.
    pub fn decompose(&mut self, x: &HeckeElt) -> Result<BTreeMap<AffWElem, LaurentPoly>> {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        while let Some(z) = rest.support().copied().max_by_key(|z| (self.endo_len(z), *z)) {
            if !self.endo.contains(&z) {
                return Err(Error::NotInGroup(format!("{z:?} lies outside the neutral block")));
            }
            let c = rest.coeff(&z).shift(self.endo_len(&z) as i32);
            let bz = self.b(&z);
            rest = rest.sub(&bz.scale(&c))?;
            out.insert(z, c);
        }
        Ok(out)
    }
}

/// `T_u ↦ v^{2ℓ_L(u)}`: sends `b_σ` to `v + v⁻¹`, matching graded ranks of
/// Bott-Samelson bimodules.
pub fn rank_character(endo: &Endoscopy, h: &HeckeElt) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (u, c) in h.terms() {
        out += &c.shift(2 * endo.endo_length(u)? as i32);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CompareReport {
    pub bound: usize,
    pub elements: usize,
    pub coefficient_checks: usize,
    pub product_checks: usize,
    pub mismatches: Vec<String>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the canonical basis of the neutral block with the KL basis of
/// `W̃_H` for all elements with `ℓ_L ≤ bound`: T-coefficients against
/// `v^{-ℓ_L(w)} P_{u,w}(q)`, bar invariance, and all structure constants.
pub fn compare_neutral_block(endo: &Endoscopy, bound: usize) -> Result<CompareReport> {
    let mut mono = NeutralCanonical::new(endo.clone());
    let mut hh = HeckeH::new(endo.system().clone());
    let sys = endo.system();
    let elems = sys.elements_up_to(bound);
    let mut rep = CompareReport { bound, elements: elems.len(), ..Default::default() };
    for w in &elems {
        let lw = sys.length(w) as i32;
        let bw = mono.kl_basis(w, bound)?;
        if !mono.hecke().is_bar_invariant(&bw) {
            rep.mismatches.push(format!("b_{w:?} is not bar invariant"));
        }
        let mut us: Vec<AffWElem> = sys.lower_interval(w);
        us.extend(bw.support().copied());
        us.sort();
        us.dedup();
        for u in us {
            let expect = hh.kl_poly(&u, w, bound)?.q_to_v().shift(-lw);
            rep.coefficient_checks += 1;
            if bw.coeff(&u) != expect {
                rep.mismatches.push(format!("coefficient of T_{u:?} in b_{w:?}: {} != {expect}", bw.coeff(&u)));
            }
        }
    }
    for u in &elems {
        for w in &elems {
            let bu = mono.kl_basis(u, bound)?;
            let bw = mono.kl_basis(w, bound)?;
            let left = mono.decompose(&mono.hecke().t_mul(&bu, &bw)?)?;
            let cu = hh.canonical(u);
            let cw = hh.canonical(w);
            let prod = hh.mul(&cu, &cw)?;
            let right = hh.decompose(&prod);
            rep.product_checks += 1;
            if left != right {
                rep.mismatches.push(format!("structure constants of b_{u:?} b_{w:?}: {left:?} != {right:?}"));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice;
    use std::sync::Arc;

    fn sp4() -> Endoscopy {
        Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,1/2".parse().unwrap()).unwrap()
    }

    #[test]
    fn simple_elements() {
        let e = sp4();
        let mut c = NeutralCanonical::new(e.clone());
        let id = e.system().identity();
        assert_eq!(c.kl_basis(&id, 0).unwrap(), HeckeElt::unit(*e.character()));
        for i in 0..e.system().num_generators() {
            let s = *e.system().gen(i);
            assert_eq!(c.kl_basis(&s, 1).unwrap(), c.hecke().b_simple(&e, i).unwrap());
        }
    }

    #[test]
    fn commuting_product() {
        let e = sp4();
        let d = e.datum();
        let a = AffWElem::reflection(d, d.index_of_root(&lattice::vector(&[1, 1])).unwrap(), 0);
        let b = AffWElem::reflection(d, d.index_of_root(&lattice::vector(&[1, -1])).unwrap(), 0);
        let mut c = NeutralCanonical::new(e.clone());
        let ba = c.kl_basis(&a, 2).unwrap();
        let bb = c.kl_basis(&b, 2).unwrap();
        let prod = c.hecke().t_mul(&ba, &bb).unwrap();
        assert_eq!(c.kl_basis(&a.mul(&b), 2).unwrap(), prod);
        assert!(c.kl_basis(&a.mul(&b), 1).is_err());
    }

    #[test]
    fn comparison_small_bounds() {
        let e = sp4();
        assert!(compare_neutral_block(&e, 0).unwrap().passed());
        let r = compare_neutral_block(&e, 2).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        let t = Endoscopy::new(Arc::new(fixtures::sl2()), "0".parse().unwrap()).unwrap();
        let r = compare_neutral_block(&t, 3).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn unitriangular() {
        let e = sp4();
        let mut c = NeutralCanonical::new(e.clone());
        for w in e.system().elements_up_to(3) {
            let b = c.kl_basis(&w, 3).unwrap();
            for (u, coef) in b.terms() {
                if *u == w {
                    continue;
                }
                assert!(e.system().bruhat_leq(u, &w));
                assert!(coef.shift(e.system().length(u) as i32).in_negative_part());
            }
        }
    }
}
