//! The truncated θ-vector of a block.
//!
//! The block sum carries the coefficient `v^{ℓ_β(w)}` on the normalized
//! class `v^{-ℓ_β(w)} T_w`, so in the raw standard basis every `T_w` of the
//! block occurs with coefficient one.

use super::{HeckeElt, MonoHecke};
use crate::affine_weyl::AffWElem;
use crate::blocks::is_block_minimal;
use crate::endoscopy::Endoscopy;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaTerm {
    pub w: AffWElem,
    pub block_length: usize,
    /// Coefficient on the normalized class `v^{-ℓ_β(w)} T_w`.
    pub coeff: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaVector {
    pub minimal: AffWElem,
    pub truncation: usize,
    pub terms: Vec<ThetaTerm>,
    /// The same vector in the raw standard basis.
    pub raw: HeckeElt,
}

/// `θ_{≤N}` for the block with minimal element `minimal`.
pub fn theta_vector(endo: &Endoscopy, minimal: &AffWElem, n: usize) -> Result<ThetaVector> {
    if !is_block_minimal(endo, minimal) {
        return Err(Error::Precondition(format!("{minimal:?} is not the minimal element of its block")));
    }
    let l = *endo.character();
    let mut raw = HeckeElt::zero(minimal.act_char(&l), l);
    let mut terms = Vec::new();
    for (k, level) in endo.system().elements_by_length(n).into_iter().enumerate() {
        for v in level {
            let w = minimal.mul(&v);
            raw.add_term(w, &LaurentPoly::one());
            terms.push(ThetaTerm { w, block_length: k, coeff: LaurentPoly::monomial(1, k as i32) });
        }
    }
    Ok(ThetaVector { minimal: *minimal, truncation: n, terms, raw })
}

/// Checks `θ_{≤N} T_σ ≡ q θ_{≤N}` on all terms with `ℓ_β ≤ N - 1`, and that
/// the product stays inside the block.
pub fn theta_eigen_check(endo: &Endoscopy, minimal: &AffWElem, ambient_gen: usize, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::Precondition(format!("truncation {n} is too small to test the eigen-property")));
    }
    let amb = endo.ambient();
    let sigma = amb
        .generators()
        .get(ambient_gen)
        .ok_or_else(|| Error::Precondition(format!("no ambient simple reflection {ambient_gen}")))?;
    if endo.h_index_of(&sigma.elem).is_none() {
        return Err(Error::Precondition(format!("{} is not block-simple", sigma.name)));
    }
    let theta = theta_vector(endo, minimal, n)?;
    let hecke = MonoHecke::from_endoscopy(endo);
    let ts = HeckeElt::basis(sigma.elem, *endo.character());
    let prod = hecke.t_mul(&theta.raw, &ts)?;
    let inv = minimal.inverse();
    for u in prod.support() {
        if !endo.contains(&inv.mul(u)) {
            return Ok(false);
        }
    }
    Ok(theta
        .terms
        .iter()
        .filter(|t| t.block_length < n)
        .all(|t| prod.coeff(&t.w) == LaurentPoly::q()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::enumerate_blocks;
    use crate::fixtures;
    use std::sync::Arc;

    #[test]
    fn theta_truncations() {
        let e = Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,1/2".parse().unwrap()).unwrap();
        let id = e.system().identity();
        let t0 = theta_vector(&e, &id, 0).unwrap();
        assert_eq!(t0.terms.len(), 1);
        assert_eq!(t0.raw, HeckeElt::unit(*e.character()));
        let t1 = theta_vector(&e, &id, 1).unwrap();
        assert_eq!(t1.terms.len(), 5);
        let gens = e.affine_simple_system();
        for t in &t1.terms[1..] {
            assert!(gens.contains(&t.w));
            assert_eq!(t.coeff, LaurentPoly::v());
        }
    }

    #[test]
    fn eigen_property() {
        let e = Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,1/2".parse().unwrap()).unwrap();
        let s1 = e.ambient().generator_index("s1").unwrap();
        let blocks = enumerate_blocks(&e, e.character(), 4).unwrap();
        for b in &blocks.blocks {
            assert!(theta_eigen_check(&e, &b.representative, s1, 2).unwrap());
            assert!(theta_eigen_check(&e, &b.representative, s1, 3).unwrap());
        }
        let id = e.system().identity();
        assert!(theta_eigen_check(&e, &id, s1, 1).is_err());
        let s2 = e.ambient().generator_index("s2").unwrap();
        assert!(theta_eigen_check(&e, &id, s2, 2).is_err());
        let t = Endoscopy::new(Arc::new(fixtures::sl2()), "0".parse().unwrap()).unwrap();
        let id = t.system().identity();
        assert!(theta_eigen_check(&t, &id, 0, 2).unwrap());
        assert!(theta_eigen_check(&t, &id, 1, 2).unwrap());
    }
}
