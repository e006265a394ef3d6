//! The endoscopic root system of a torus character and the affine Weyl
//! group of the endoscopic group, realized inside the ambient group.

use crate::affine_weyl::{AffRoot, AffWElem, AffineSystem};
use crate::error::{Error, Result};
use crate::lattice;
use crate::root_datum::{RootDatum, TorusCharacter};
use num_traits::Zero;
use std::sync::Arc;

/// Indices of the coroots on which `l` is trivial.
pub fn endoscopic_coroots(d: &RootDatum, l: &TorusCharacter) -> Vec<usize> {
    (0..d.num_roots()).filter(|&i| l.eval(&d.coroot(i)).is_zero()).collect()
}

/// Ambient indices of the simple roots of `Φ_L`, positivity inherited from `d`.
pub fn endoscopic_simple(d: &RootDatum, roots: &[usize]) -> Vec<usize> {
    let pos: Vec<usize> = roots.iter().copied().filter(|&i| d.is_positive(i)).collect();
    pos.iter()
        .copied()
        .filter(|&a| {
            pos.iter().all(|&b| {
                b == a || {
                    let img = d.reflect_character(a, &d.root(b));
                    d.index_of_root(&img).is_some_and(|k| d.is_positive(k))
                }
            })
        })
        .collect()
}

/// The root datum of the endoscopic group: same lattices, roots `Φ_L`.
pub fn endoscopic_datum(d: &RootDatum, l: &TorusCharacter) -> RootDatum {
    let idx = endoscopic_coroots(d, l);
    let simple = endoscopic_simple(d, &idx);
    let roots = idx.iter().map(|&i| d.root(i)).collect();
    let coroots = idx.iter().map(|&i| d.coroot(i)).collect();
    let local_simple = simple.iter().map(|s| idx.iter().position(|i| i == s).unwrap()).collect();
    let name = if l.is_trivial() { d.name().to_string() } else { format!("H({}, {})", d.name(), l) };
    RootDatum::from_parts(name, d.rank(), roots, coroots, local_simple)
}

/// Endoscopic data of a character: `Φ_L`, the datum of `H` and the
/// Coxeter system `(W̃°_L, S_H)` inside the ambient extended affine Weyl group.
#[derive(Clone, Debug)]
pub struct Endoscopy {
    character: TorusCharacter,
    ambient: AffineSystem,
    roots: Vec<usize>,
    h_simple: Vec<usize>,
    h_datum: RootDatum,
    system: AffineSystem,
}

impl Endoscopy {
    pub fn new(datum: Arc<RootDatum>, character: TorusCharacter) -> Result<Self> {
        if character.rank() != datum.rank() {
            return Err(Error::DimensionMismatch { expected: datum.rank(), got: character.rank() });
        }
        let ambient = AffineSystem::ambient(datum.clone())?;
        Ok(Self::with_ambient(ambient, character))
    }

    pub fn with_ambient(ambient: AffineSystem, character: TorusCharacter) -> Self {
        let d = ambient.datum_arc().clone();
        let roots = endoscopic_coroots(&d, &character);
        let h_simple = endoscopic_simple(&d, &roots);
        let h_datum = endoscopic_datum(&d, &character);
        let mut simple: Vec<(usize, AffRoot)> =
            h_simple.iter().map(|&i| (i, AffRoot { root: d.root(i), level: 0 })).collect();
        for c in h_datum.components() {
            let theta = h_datum.root(c.highest);
            let neg = d.index_of_root(&lattice::neg(&theta)).expect("negative root");
            simple.push((neg, AffRoot { root: d.root(neg), level: 1 }));
        }
        let names = (1..=simple.len()).map(|i| format!("s{i}")).collect();
        let system = AffineSystem::subsystem(d, roots.clone(), simple, names);
        Endoscopy { character, ambient, roots, h_simple, h_datum, system }
    }

    pub fn character(&self) -> &TorusCharacter {
        &self.character
    }

    pub fn datum(&self) -> &RootDatum {
        self.ambient.datum()
    }

    pub fn ambient(&self) -> &AffineSystem {
        &self.ambient
    }

    /// The Coxeter system `(W̃°_L, S_H)`.
    pub fn system(&self) -> &AffineSystem {
        &self.system
    }

    pub fn h_datum(&self) -> &RootDatum {
        &self.h_datum
    }

    /// Ambient indices of the `L`-trivial coroots.
    pub fn coroot_indices(&self) -> &[usize] {
        &self.roots
    }

    /// Ambient indices of the finite simple roots of `H`.
    pub fn h_simple_indices(&self) -> &[usize] {
        &self.h_simple
    }

    /// `S_H` as affine Weyl group elements.
    pub fn affine_simple_system(&self) -> Vec<AffWElem> {
        self.system.generators().iter().map(|g| g.elem).collect()
    }

    pub fn is_trivial_group(&self) -> bool {
        self.roots.is_empty()
    }

    /// Whether `g ∈ W̃°_L`.
    pub fn contains(&self, g: &AffWElem) -> bool {
        self.system.contains(g)
    }

    /// `ℓ_L(g)` for `g ∈ W̃°_L`.
    pub fn endo_length(&self, g: &AffWElem) -> Result<usize> {
        match self.system.membership_word(g) {
            Some(w) => Ok(w.len()),
            None => Err(Error::NotInGroup(format!("{g:?} is not in the neutral block group"))),
        }
    }

    /// Whether the affine reflection `(s_α, mα^∨)` lies in `W̃°_L`, by the
    /// character criterion.
    pub fn reflection_is_neutral(&self, root_index: usize) -> bool {
        self.character.eval(&self.datum().coroot(root_index)).is_zero()
    }

    /// Index of the ambient simple reflection in `S_H`, if it is one.
    pub fn h_index_of(&self, g: &AffWElem) -> Option<usize> {
        self.system.generator_of(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_rational::Rational64;

    fn ch(s: &str) -> TorusCharacter {
        s.parse().unwrap()
    }

    fn coroot_set(d: &RootDatum, l: &TorusCharacter) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> =
            endoscopic_coroots(d, l).iter().map(|&i| d.coroot(i)[..d.rank()].to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn sp4_coroots() {
        let d = fixtures::sp4();
        assert_eq!(coroot_set(&d, &ch("1/2,1/2")), vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]);
        assert_eq!(endoscopic_coroots(&d, &TorusCharacter::trivial(2)).len(), 8);
        for c in coroot_set(&d, &ch("1/2,0")) {
            assert_eq!(c[0] % 2, 0);
        }
        assert_eq!(coroot_set(&d, &ch("1/2,0")), vec![vec![0, -1], vec![0, 1]]);
    }

    #[test]
    fn sp4_endoscopic_group() {
        let d = fixtures::sp4();
        let h = endoscopic_datum(&d, &ch("1/2,1/2"));
        assert!(h.validate().is_valid());
        assert_eq!(h.components().len(), 2);
        assert_eq!(h.weyl_group().unwrap().order(), 4);
        let g = endoscopic_datum(&d, &TorusCharacter::trivial(2));
        assert_eq!(g, d);
        let t = endoscopic_datum(&fixtures::sl2(), &ch("1/2"));
        assert_eq!(t.num_roots(), 0);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn affine_simple_counts() {
        let e = Endoscopy::new(Arc::new(fixtures::sp4()), ch("1/2,1/2")).unwrap();
        assert_eq!(e.affine_simple_system().len(), 4);
        let e = Endoscopy::new(Arc::new(fixtures::sl2()), ch("0")).unwrap();
        assert_eq!(e.affine_simple_system().len(), 2);
        let e = Endoscopy::new(Arc::new(fixtures::sl2()), ch("1/2")).unwrap();
        assert!(e.affine_simple_system().is_empty());
        assert!(e.is_trivial_group());
    }

    #[test]
    fn endo_lengths() {
        let d = Arc::new(fixtures::sp4());
        let e = Endoscopy::new(d.clone(), ch("1/2,1/2")).unwrap();
        let a = d.index_of_root(&lattice::vector(&[1, 1])).unwrap();
        let b = d.index_of_root(&lattice::vector(&[1, -1])).unwrap();
        let sa = AffWElem::reflection(&d, a, 0);
        let sb = AffWElem::reflection(&d, b, 0);
        assert_eq!(e.endo_length(&e.system().identity()).unwrap(), 0);
        assert_eq!(e.endo_length(&sa).unwrap(), 1);
        assert_eq!(e.ambient().length(&sa), 3);
        assert_eq!(e.endo_length(&sa.mul(&sb)).unwrap(), 2);
        let c = d.index_of_root(&lattice::vector(&[0, 2])).unwrap();
        assert!(e.endo_length(&AffWElem::reflection(&d, c, 0)).is_err());
    }

    #[test]
    fn reflection_membership_matches_character() {
        let d = Arc::new(fixtures::sp4());
        for l in ["1/2,1/2", "1/2,0", "0,0", "1/3,2/3"] {
            let e = Endoscopy::new(d.clone(), ch(l)).unwrap();
            for t in e.ambient().reflections_up_to(7) {
                let w = t.finite_part();
                let i = (0..d.num_roots())
                    .find(|&i| d.is_positive(i) && *w == crate::root_datum::WeylElem::reflection(&d, i))
                    .unwrap();
                assert_eq!(e.contains(&t), e.reflection_is_neutral(i), "{l} {t:?}");
            }
        }
    }

    #[test]
    fn length_comparison_and_parity() {
        let d = Arc::new(fixtures::sp4());
        for l in ["1/2,1/2", "1/2,0", "0,0"] {
            let e = Endoscopy::new(d.clone(), ch(l)).unwrap();
            for g in e.system().elements_up_to(5) {
                let lh = e.endo_length(&g).unwrap();
                let la = e.ambient().length(&g);
                assert!(lh <= la);
                assert_eq!(lh % 2, la % 2);
            }
        }
    }

    #[test]
    fn idempotent() {
        let d = fixtures::sp4();
        let l = TorusCharacter::new(&[Rational64::new(1, 2), Rational64::new(1, 2)]);
        let h = endoscopic_datum(&d, &l);
        assert_eq!(endoscopic_datum(&h, &TorusCharacter::trivial(2)), h);
    }
}
