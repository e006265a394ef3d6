//! Soergel bimodules over `R̃ = Q[x, z]` for the endoscopic affine Weyl
//! group, their split-level counterparts over `S`, and the checks relating them.

pub mod bimodule;
pub mod decompose;
pub mod hom;
pub mod linalg;
pub mod poly;
pub mod standard;

pub use bimodule::{Bimodule, BimoduleMap, Level, Ring};
pub use decompose::{indecomposable_summand, split_bs_bs, support_contains, Splitting, Summand};
pub use hom::{hom_dims, hom_space};
pub use poly::{Poly, RingAction};
pub use standard::{b_atom, bott_samelson, conv, counit, induce, regular, twisted, unit, unit_counit_check, AdjunctionCheck, Reflection};

use crate::affine_weyl::AffWElem;
use crate::blocks::min_rep;
use crate::endoscopy::Endoscopy;
use crate::error::{Error, Result};
use serde::Serialize;

/// `S(w)_L = R̃(w^β) ⊗ S(x)` for `w = w^β x` with `w^β` minimal in its block.
#[derive(Clone, Debug, Serialize)]
pub struct ExtendedSoergel {
    pub w: AffWElem,
    pub minimal: AffWElem,
    /// Reduced word of the block factor in `S_H`.
    pub word: Vec<usize>,
    pub module: Bimodule,
    /// False when extraction failed and `module` is the full Bott–Samelson product.
    pub indecomposable: bool,
    /// Index of the generator in the lowest degree, `-ℓ_L(w)`.
    pub bottom: usize,
}

pub fn extended_ring(endo: &Endoscopy) -> Ring {
    Ring::new(endo.datum().rank(), Level::Extended)
}

pub fn extended_soergel(endo: &Endoscopy, w: &AffWElem, seed: u64) -> Result<ExtendedSoergel> {
    let d = endo.datum();
    let sys = endo.system();
    let minimal = min_rep(endo, w);
    let x = minimal.inverse().mul(w);
    let (word, omega) = sys.reduced_word(&x);
    if !omega.is_identity() {
        return Err(Error::Invariant(format!("block factor {x:?} has a nontrivial length-zero part")));
    }
    let ring = extended_ring(endo);
    let refl: Vec<Reflection> = word.iter().map(|&i| Reflection::simple(sys, i)).collect();
    let bs = bott_samelson(d, &refl, ring)?;
    let (factor, indecomposable) = if word.len() <= 1 {
        (bs, true)
    } else {
        match indecomposable_summand(d, &bs, &x, seed, 6)? {
            Some(s) => (s.module, true),
            None => (bs, false),
        }
    };
    let mut module = twisted(d, &minimal, ring).tensor(&factor)?;
    module.label = format!("S({w:?})");
    let lowest = *module.degrees.iter().min().unwrap();
    let bottom = module.degrees.iter().position(|&g| g == lowest).unwrap();
    Ok(ExtendedSoergel { w: *w, minimal, word, module, indecomposable, bottom })
}

#[cfg(test)]
mod tests;
