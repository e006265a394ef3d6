use super::*;
use crate::fixtures;
use crate::laurent::LaurentPoly;
use crate::root_datum::TorusCharacter;
use std::sync::Arc;

fn endo(datum: crate::root_datum::RootDatum, l: &str) -> Endoscopy {
    Endoscopy::new(Arc::new(datum), l.parse::<TorusCharacter>().unwrap()).unwrap()
}

fn sp4() -> Endoscopy {
    endo(fixtures::sp4(), "1/2,1/2")
}

fn sl2() -> Endoscopy {
    endo(fixtures::sl2(), "0")
}

fn refl(e: &Endoscopy, i: usize) -> Reflection {
    Reflection::simple(e.system(), i)
}

#[test]
fn atoms_are_bimodules_at_every_level() {
    for e in [sp4(), sl2()] {
        let r = e.datum().rank();
        for i in 0..e.system().num_generators() {
            for level in [Level::Plain, Level::Split, Level::Extended] {
                let b = b_atom(e.datum(), &refl(&e, i), Ring::new(r, level)).unwrap();
                b.validate().unwrap();
                assert_eq!(b.graded_rank(), LaurentPoly::quantum_two());
            }
        }
    }
}

#[test]
fn end_of_b_s_over_sl2() {
    let e = sl2();
    let b = b_atom(e.datum(), &refl(&e, 0), Ring::new(1, Level::Plain)).unwrap();
    let dims = hom_dims(&b, &b, [-2, 0, 2]).unwrap();
    assert_eq!(dims, vec![(-2, 0), (0, 1), (2, 2)]);
}

#[test]
fn triangle_identities() {
    for e in [sp4(), sl2()] {
        let ring = extended_ring(&e);
        for i in 0..e.system().num_generators() {
            let c = unit_counit_check(e.datum(), &refl(&e, i), ring).unwrap();
            assert!(c.passed(), "{i}: {c:?}");
        }
    }
}

#[test]
fn b_s_squared_splits() {
    for e in [sp4(), sl2()] {
        let ring = extended_ring(&e);
        for i in 0..e.system().num_generators() {
            let s = split_bs_bs(e.datum(), &refl(&e, i), ring).unwrap();
            assert!(s.verify(), "generator {i}");
        }
    }
}

#[test]
fn twisted_modules_multiply_and_have_no_maps_from_unit() {
    let e = sp4();
    let d = e.datum();
    let ring = extended_ring(&e);
    let amb = e.ambient();
    let elems = amb.elements_up_to(2);
    for u in &elems {
        for v in &elems {
            assert_eq!(twisted(d, u, ring).tensor(&twisted(d, v, ring)).unwrap().ops, twisted(d, &u.mul(v), ring).ops);
        }
    }
    let one = regular(d, ring);
    for w in elems.iter().filter(|w| !w.is_identity()) {
        for deg in [0, 2, 4] {
            assert!(hom_space(&one, &twisted(d, w, ring), deg).unwrap().is_empty(), "{w:?} {deg}");
        }
    }
    assert_eq!(hom_space(&one, &one, 2).unwrap().len(), 3);
}

#[test]
fn induction_matches_extended_modules() {
    for e in [sp4(), sl2()] {
        let d = e.datum();
        let r = d.rank();
        let (split, ext) = (Ring::new(r, Level::Split), Ring::new(r, Level::Extended));
        for w in e.ambient().elements_up_to(2) {
            assert_eq!(induce(&twisted(d, &w, split)).unwrap().ops, twisted(d, &w, ext).ops);
        }
        for i in 0..e.system().num_generators() {
            let s = refl(&e, i);
            let bs = b_atom(d, &s, split).unwrap();
            bs.validate().unwrap();
            assert_eq!(induce(&bs).unwrap().ops, b_atom(d, &s, ext).unwrap().ops);
        }
    }
}

#[test]
fn induction_on_hom_spaces() {
    let e = sl2();
    let d = e.datum();
    let split = Ring::new(1, Level::Split);
    let s0 = refl(&e, 1);
    let m = b_atom(d, &s0, split).unwrap();
    let n = m.tensor(&twisted(d, &e.ambient().gen(0).clone(), split)).unwrap();
    for (a, b) in [(&m, &m), (&m, &n), (&n, &n)] {
        let (ia, ib) = (induce(a).unwrap(), induce(b).unwrap());
        for deg in [0, 2, 4] {
            let lhs = hom_space(&ia, &ib, deg).unwrap().len();
            let rhs: usize = (0..=deg / 2).map(|k| hom_space(a, b, deg - 2 * k).unwrap().len()).sum();
            assert_eq!(lhs, rhs, "degree {deg}");
        }
    }
}

#[test]
fn supports() {
    let e = sp4();
    let d = e.datum();
    let ring = extended_ring(&e);
    let amb = e.ambient();
    let by_len = amb.elements_by_length(2);
    for w in &by_len[2] {
        let m = twisted(d, w, ring);
        assert!(support_contains(d, &m, w, 3, 1).unwrap());
        for w2 in by_len[2].iter().filter(|w2| *w2 != w) {
            assert!(!support_contains(d, &m, w2, 3, 1).unwrap());
        }
    }
    let s = refl(&e, 3);
    let b = b_atom(d, &s, ring).unwrap();
    assert!(support_contains(d, &b, &amb.identity(), 3, 2).unwrap());
    assert!(support_contains(d, &b, &s.elem, 3, 2).unwrap());
    assert!(!support_contains(d, &b, amb.gen(0), 3, 2).unwrap());
}

#[test]
fn tensor_is_associative() {
    let e = sp4();
    let d = e.datum();
    let ring = extended_ring(&e);
    let (a, b, c) = (
        b_atom(d, &refl(&e, 0), ring).unwrap(),
        twisted(d, e.ambient().gen(1), ring),
        b_atom(d, &refl(&e, 3), ring).unwrap(),
    );
    let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
    let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
    assert_eq!(left.ops, right.ops);
    assert_eq!(left.degrees, right.degrees);
}

#[test]
fn bott_samelson_ranks_match_hecke_products() {
    use crate::hecke::{rank_character, MonoHecke};
    let e = sp4();
    let h = MonoHecke::from_endoscopy(&e);
    let ring = extended_ring(&e);
    for word in [vec![0], vec![0, 2], vec![1, 3, 1], vec![3, 0, 3]] {
        let refls: Vec<Reflection> = word.iter().map(|&i| refl(&e, i)).collect();
        let bs = bott_samelson(e.datum(), &refls, ring).unwrap();
        bs.validate().unwrap();
        let prod = word.iter().try_fold(crate::hecke::HeckeElt::unit(*e.character()), |acc, &i| {
            h.t_mul(&acc, &h.b_simple(&e, i).unwrap())
        });
        assert_eq!(bs.graded_rank(), rank_character(&e, &prod.unwrap()).unwrap(), "{word:?}");
    }
}

#[test]
fn extraction_in_affine_a1() {
    let e = sl2();
    let sys = e.system();
    let x = sys.word_elem(&[0, 1, 0]);
    let s = extended_soergel(&e, &x, 7).unwrap();
    assert!(s.indecomposable);
    assert_eq!(s.module.graded_rank(), LaurentPoly::from_terms([(3, 1), (1, 2), (-1, 2), (-3, 1)]));
    assert!(support_contains(e.datum(), &s.module, &x, 3, 3).unwrap());
    assert_eq!(s.module.degrees[s.bottom], -3);
}

#[test]
fn extended_modules_in_a_nonneutral_block() {
    let e = sp4();
    let blocks = crate::blocks::enumerate_blocks(&e, e.character(), 3).unwrap();
    for b in &blocks.blocks {
        let m = b.minimal.unwrap();
        let w = m.mul(e.system().gen(0));
        let s = extended_soergel(&e, &w, 1).unwrap();
        assert_eq!(s.minimal, m);
        assert_eq!(s.module.graded_rank(), LaurentPoly::quantum_two());
        assert!(support_contains(e.datum(), &s.module, &w, 3, 5).unwrap());
        assert!(support_contains(e.datum(), &s.module, &m, 3, 5).unwrap());
    }
}
