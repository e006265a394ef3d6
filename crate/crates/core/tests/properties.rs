use endohecke::affine_weyl::{AffWElem, AffineSystem};
use endohecke::fixtures;
use endohecke::root_datum::{char_act, orbit_and_stabilizer, TorusCharacter};
use endohecke::soergel::poly::{q, Poly, RingAction};
use proptest::prelude::*;
use std::sync::Arc;

fn sp4_system() -> AffineSystem {
    AffineSystem::ambient(Arc::new(fixtures::sp4())).unwrap()
}

fn elem(sys: &AffineSystem, word: &[usize]) -> AffWElem {
    sys.word_elem(&word.iter().map(|&i| i % sys.num_generators()).collect::<Vec<_>>())
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..3, 0..7)
}

fn character() -> impl Strategy<Value = TorusCharacter> {
    (1i64..5, 1i64..5)
        .prop_flat_map(|(b, d)| (0..b, Just(b), 0..d, Just(d)))
        .prop_map(|(a, b, c, d)| format!("{a}/{b},{c}/{d}").parse().unwrap())
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0usize..2, 0usize..2, -3i64..4), 1..5).prop_map(|terms| {
        terms.iter().fold(Poly::zero(), |acc, &(i, j, c)| &acc + &(&Poly::var(i) * &Poly::var(j)).scale(&q(c)))
    })
}

/// `(f - s f) / α`, computed by exact division.
fn demazure(sys: &AffineSystem, i: usize, f: &Poly) -> Poly {
    let d = sys.datum();
    let g = sys.generators()[i].clone();
    let alpha = Poly::character(&g.root.root, d.rank());
    let s = RingAction::new(d, &g.elem, false);
    let diff = f - &s.apply(f);
    if diff.is_zero() {
        return diff;
    }
    diff.div_linear(&alpha).expect("divisible by the root")
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_laws(a in word(), b in word(), c in word()) {
        let sys = sp4_system();
        let (x, y, z) = (elem(&sys, &a), elem(&sys, &b), elem(&sys, &c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert_eq!(sys.length(&x.inverse()), sys.length(&x));
        prop_assert!(sys.length(&x.mul(&y)) <= sys.length(&x) + sys.length(&y));
    }

    #[test]
    fn reduced_words_rebuild_the_element(a in word()) {
        let sys = sp4_system();
        let x = elem(&sys, &a);
        let (w, omega) = sys.reduced_word(&x);
        prop_assert_eq!(w.len(), sys.length(&x));
        prop_assert_eq!(sys.word_elem(&w).mul(&omega), x);
    }

    #[test]
    fn character_action_composes(a in word(), b in word(), l in character()) {
        let sys = sp4_system();
        let (x, y) = (elem(&sys, &a), elem(&sys, &b));
        prop_assert_eq!(x.mul(&y).act_char(&l), x.act_char(&y.act_char(&l)));
        let (u, v) = (x.finite_part(), y.finite_part());
        prop_assert_eq!(char_act(&u.mul(v), &l), char_act(u, &char_act(v, &l)));
    }

    #[test]
    fn orbit_times_stabilizer_is_group_order(l in character()) {
        let w = fixtures::sp4().weyl_group().unwrap();
        let os = orbit_and_stabilizer(&l, &w);
        prop_assert_eq!(os.orbit.len() * os.stabilizer.len(), w.order());
    }

    #[test]
    fn ring_action_is_a_left_action(a in word(), b in word(), f in poly()) {
        let sys = sp4_system();
        let d = sys.datum();
        let (x, y) = (elem(&sys, &a), elem(&sys, &b));
        let z = Poly::var(endohecke::soergel::poly::Z);
        for g in [f.clone(), &f * &z] {
            let lhs = RingAction::new(d, &x.mul(&y), true).apply(&g);
            let rhs = RingAction::new(d, &x, true).apply(&RingAction::new(d, &y, true).apply(&g));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn demazure_operators(i in 0usize..3, f in poly(), g in poly()) {
        let sys = sp4_system();
        let d = sys.datum();
        let s = RingAction::new(d, &sys.gen(i).clone(), false);
        prop_assert!(demazure(&sys, i, &demazure(&sys, i, &f)).is_zero());
        // twisted Leibniz rule
        let lhs = demazure(&sys, i, &(&f * &g));
        let rhs = &(&demazure(&sys, i, &f) * &g) + &(&s.apply(&f) * &demazure(&sys, i, &g));
        prop_assert_eq!(lhs, rhs);
    }
}
