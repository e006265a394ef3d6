//! Blocks of `_{L'}W̃_L` modulo `W̃°_L`, minimal elements, block lengths
//! and the conjugation of block-simple reflections to ambient simples.

use crate::affine_weyl::{AffWElem, AffineSystem};
use crate::endoscopy::Endoscopy;
use crate::error::{Error, Result};
use crate::root_datum::TorusCharacter;
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub left_char: TorusCharacter,
    pub right_char: TorusCharacter,
    pub representative: AffWElem,
    pub minimal: Option<AffWElem>,
}

/// Blocks of `_{L'}W̃_L` restricted to elements of length at most `bound`.
#[derive(Clone, Debug, Serialize)]
pub struct BlockEnumeration {
    pub bound: usize,
    pub blocks: Vec<Block>,
    /// Members of each block, sorted by ambient length.
    pub members: Vec<Vec<AffWElem>>,
}

impl BlockEnumeration {
    /// Number of members of each ambient length, per block.
    pub fn sizes_by_length(&self, ambient: &AffineSystem) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|m| {
                let mut sizes = vec![0; self.bound + 1];
                for g in m {
                    sizes[ambient.length(g)] += 1;
                }
                sizes
            })
            .collect()
    }

    pub fn block_of(&self, endo: &Endoscopy, g: &AffWElem) -> Option<usize> {
        let m = min_rep(endo, g);
        self.blocks.iter().position(|b| b.minimal == Some(m))
    }
}

/// Whether `g` sends every positive affine root of `Φ_L` to a positive one.
pub fn is_block_minimal(endo: &Endoscopy, g: &AffWElem) -> bool {
    endo.system().length(g) == 0
}

/// The minimal element of the block of `g`: right-multiply by elements of
/// `S_H` sending their simple root negative until none is left.
pub fn min_rep(endo: &Endoscopy, g: &AffWElem) -> AffWElem {
    let sys = endo.system();
    let mut cur = *g;
    while let Some(i) = (0..sys.num_generators()).find(|&i| sys.is_right_descent(&cur, i)) {
        cur = cur.mul(sys.gen(i));
    }
    cur
}

fn check_orbit(endo: &Endoscopy, left: &TorusCharacter) -> Result<()> {
    let w = endo.datum().weyl_group()?;
    if w.elements().iter().any(|g| crate::root_datum::char_act(g, endo.character()) == *left) {
        Ok(())
    } else {
        Err(Error::CharacterMismatch(format!("{left} is not in the W-orbit of {}", endo.character())))
    }
}

/// Partition of all `g` with `ℓ(g) ≤ bound` and `g·L = L'` into blocks.
pub fn enumerate_blocks(endo: &Endoscopy, left: &TorusCharacter, bound: usize) -> Result<BlockEnumeration> {
    check_orbit(endo, left)?;
    let l = *endo.character();
    let amb = endo.ambient();
    let mut by_min: HashMap<AffWElem, usize> = HashMap::new();
    let mut blocks = Vec::new();
    let mut members: Vec<Vec<AffWElem>> = Vec::new();
    for g in amb.elements_by_length(bound).into_iter().flatten() {
        if g.act_char(&l) != *left {
            continue;
        }
        let m = min_rep(endo, &g);
        let k = *by_min.entry(m).or_insert_with(|| {
            blocks.push(Block { left_char: *left, right_char: l, representative: m, minimal: Some(m) });
            members.push(Vec::new());
            blocks.len() - 1
        });
        members[k].push(g);
    }
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&i| (amb.length(&blocks[i].representative), blocks[i].representative));
    Ok(BlockEnumeration {
        bound,
        blocks: order.iter().map(|&i| blocks[i].clone()).collect(),
        members: order.iter().map(|&i| members[i].clone()).collect(),
    })
}

/// Whether `u` and `v` lie in the same block.
pub fn same_block(endo: &Endoscopy, u: &AffWElem, v: &AffWElem) -> bool {
    endo.contains(&u.inverse().mul(v))
}

/// The unique element of the block of length at most `bound` satisfying
/// the positivity characterization.
pub fn minimal_element(endo: &Endoscopy, block: &Block, bound: usize) -> Result<AffWElem> {
    let amb = endo.ambient();
    let found: Vec<AffWElem> = amb
        .elements_up_to(bound)
        .into_iter()
        .filter(|g| same_block(endo, &block.representative, g) && is_block_minimal(endo, g))
        .collect();
    match found.len() {
        0 => Err(Error::BoundExceeded { what: "minimal element search".into(), bound }),
        1 => Ok(found[0]),
        n => Err(Error::Invariant(format!("{n} elements satisfy the minimality characterization"))),
    }
}

/// `v` with `w = w^β v`, `v ∈ W̃°_L`.
pub fn block_factor(endo: &Endoscopy, w: &AffWElem, minimal: &AffWElem) -> Result<AffWElem> {
    let v = minimal.inverse().mul(w);
    if endo.contains(&v) {
        Ok(v)
    } else {
        Err(Error::NotInGroup(format!("{w:?} is not in the block of {minimal:?}")))
    }
}

/// `ℓ_β(w)`.
pub fn block_length(endo: &Endoscopy, w: &AffWElem, minimal: &AffWElem) -> Result<usize> {
    endo.endo_length(&block_factor(endo, w, minimal)?)
}

/// `w ≤_β w'`, the Bruhat order of `(W̃°_L, S_H)` on block factors.
pub fn block_leq(endo: &Endoscopy, w: &AffWElem, w2: &AffWElem, minimal: &AffWElem) -> Result<bool> {
    let v = block_factor(endo, w, minimal)?;
    let v2 = block_factor(endo, w2, minimal)?;
    Ok(endo.system().bruhat_leq(&v, &v2))
}

/// A palindromic reduced word for a reflection `t` of the Coxeter system.
pub fn palindromic_reduced(sys: &AffineSystem, t: &AffWElem) -> Result<Vec<usize>> {
    if let Some(i) = sys.generator_of(t) {
        return Ok(vec![i]);
    }
    let l = sys.length(t);
    if l.is_multiple_of(2) || !t.mul(t).is_identity() {
        return Err(Error::Precondition(format!("{t:?} is not a reflection")));
    }
    for s in sys.left_descents(t) {
        let g = sys.gen(s);
        let inner = g.mul(t).mul(g);
        if sys.length(&inner) + 2 == l {
            let mut w = vec![s];
            w.extend(palindromic_reduced(sys, &inner)?);
            w.push(s);
            return Ok(w);
        }
    }
    Err(Error::Precondition(format!("{t:?} has no palindromic reduced word")))
}

/// Output of [`conjugating_element`]: `σ = x⁻¹ σ' x`.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub x: AffWElem,
    /// Index of `σ'` among the ambient simple reflections.
    pub ambient_simple: usize,
    /// The palindromic ambient word of `σ`.
    pub word: Vec<usize>,
}

/// Writes the block-simple reflection `S_H[h]` as `x⁻¹σ'x` with `σ'`
/// ambient simple, `x` block-minimal, and each letter of `x` outside the
/// neutral block group of the character it acts on.
pub fn conjugating_element(endo: &Endoscopy, h: usize) -> Result<Conjugation> {
    let amb = endo.ambient();
    let sigma = *endo.system().gen(h);
    let word = palindromic_reduced(amb, &sigma)?;
    let k = word.len().div_ceil(2);
    let prefix = &word[..k - 1];
    let ambient_simple = word[k - 1];
    let mut x = amb.identity();
    let mut lj = *endo.character();
    let d = endo.datum();
    for &i in prefix {
        let g = &amb.generators()[i];
        if lj.eval(&g.coroot(d)).is_zero() {
            return Err(Error::Invariant(format!("letter {} lies in the neutral block group", g.name)));
        }
        x = g.elem.mul(&x);
        lj = g.elem.act_char(&lj);
    }
    let last = &amb.generators()[ambient_simple];
    if !lj.eval(&last.coroot(d)).is_zero() {
        return Err(Error::Invariant("conjugated reflection is not block-simple".into()));
    }
    if x.inverse().mul(&last.elem).mul(&x) != sigma
        || amb.length(&sigma) != 2 * amb.length(&x) + 1
        || !is_block_minimal(endo, &x)
    {
        return Err(Error::Invariant("conjugating element fails its defining relations".into()));
    }
    Ok(Conjugation { x, ambient_simple, word })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice;
    use std::sync::Arc;

    fn sp4_endo(l: &str) -> Endoscopy {
        Endoscopy::new(Arc::new(fixtures::sp4()), l.parse().unwrap()).unwrap()
    }

    fn refl(e: &Endoscopy, root: &[i64], m: i64) -> AffWElem {
        let d = e.datum();
        AffWElem::reflection(d, d.index_of_root(&lattice::vector(root)).unwrap(), m)
    }

    #[test]
    fn sp4_four_blocks() {
        let e = sp4_endo("1/2,1/2");
        let l = *e.character();
        for bound in [4, 6] {
            let b = enumerate_blocks(&e, &l, bound).unwrap();
            assert_eq!(b.blocks.len(), 4, "bound {bound}");
        }
        let t = sp4_endo("0,0");
        assert_eq!(enumerate_blocks(&t, t.character(), 4).unwrap().blocks.len(), 1);
    }

    #[test]
    fn sl2_singleton_blocks() {
        let e = Endoscopy::new(Arc::new(fixtures::sl2()), "1/2".parse().unwrap()).unwrap();
        let b = enumerate_blocks(&e, e.character(), 4).unwrap();
        assert_eq!(b.blocks.len(), e.ambient().elements_up_to(4).len());
        assert!(b.members.iter().all(|m| m.len() == 1));
    }

    #[test]
    fn orbit_precondition() {
        let e = sp4_endo("1/2,0");
        assert!(enumerate_blocks(&e, &"1/2,1/2".parse().unwrap(), 2).is_err());
        assert!(enumerate_blocks(&e, &"0,1/2".parse().unwrap(), 2).is_ok());
    }

    #[test]
    fn minimal_elements() {
        let e = sp4_endo("1/2,1/2");
        let b = enumerate_blocks(&e, e.character(), 6).unwrap();
        assert!(b.blocks[0].representative.is_identity());
        let s2 = refl(&e, &[0, 2], 0);
        assert!(is_block_minimal(&e, &s2));
        assert!(b.blocks.iter().any(|x| x.minimal == Some(s2)));
        for blk in &b.blocks {
            assert_eq!(minimal_element(&e, blk, 8).unwrap(), blk.representative);
        }
        for g in &b.blocks {
            for h in &b.blocks {
                let p = g.representative.mul(&h.representative);
                assert_eq!(min_rep(&e, &p), p);
            }
        }
    }

    #[test]
    fn block_lengths_and_order() {
        let e = sp4_endo("1/2,1/2");
        let id = e.system().identity();
        let a = refl(&e, &[1, 1], 0);
        let b = refl(&e, &[1, -1], 0);
        assert_eq!(block_length(&e, &id, &id).unwrap(), 0);
        assert_eq!(block_length(&e, &a, &id).unwrap(), 1);
        assert_eq!(block_length(&e, &a.mul(&b), &id).unwrap(), 2);
        assert!(block_leq(&e, &id, &a, &id).unwrap());
        assert!(e.ambient().bruhat_leq(&id, &a));
        assert!(!block_leq(&e, &a, &b, &id).unwrap());
        assert!(!block_leq(&e, &b, &a, &id).unwrap());
        assert!(block_length(&e, &refl(&e, &[0, 2], 0), &id).is_err());
    }

    #[test]
    fn palindromes() {
        let e = sp4_endo("1/2,1/2");
        let amb = e.ambient();
        let t = refl(&e, &[1, 1], 0);
        assert_eq!(amb.word_names(&palindromic_reduced(amb, &t).unwrap()), vec!["s2", "s1", "s2"]);
        assert_eq!(palindromic_reduced(amb, amb.gen(0)).unwrap(), vec![0]);
        for t in amb.reflections_up_to(9) {
            let w = palindromic_reduced(amb, &t).unwrap();
            assert_eq!(w.len(), amb.length(&t));
            assert_eq!(amb.word_elem(&w), t);
            assert!(w.iter().eq(w.iter().rev()));
        }
        let sl2 = AffineSystem::ambient(Arc::new(fixtures::sl2())).unwrap();
        let sts = sl2.word_elem(&[0, 1, 0]);
        assert_eq!(palindromic_reduced(&sl2, &sts).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn conjugation() {
        let e = sp4_endo("1/2,1/2");
        let amb = e.ambient();
        let a = refl(&e, &[1, 1], 0);
        let h = e.h_index_of(&a).unwrap();
        let c = conjugating_element(&e, h).unwrap();
        assert_eq!(c.x, refl(&e, &[0, 2], 0));
        assert_eq!(amb.generators()[c.ambient_simple].name, "s1");
        let b = refl(&e, &[1, -1], 0);
        let c = conjugating_element(&e, e.h_index_of(&b).unwrap()).unwrap();
        assert!(c.x.is_identity());
        for h in 0..e.system().num_generators() {
            let c = conjugating_element(&e, h).unwrap();
            assert_eq!(c.x.inverse().mul(amb.gen(c.ambient_simple)).mul(&c.x), *e.system().gen(h));
        }
    }
}
