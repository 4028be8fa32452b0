use dimer_core::relator::standard_relator;
use dimer_core::words::{find_automorphism, minimize, Alphabet, FreeGroupMap, Letter, SearchOptions, Word};
use dimer_core::{QPoly, Rational};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn alpha() -> Alphabet {
    Alphabet::new(["a", "b", "c", "d"]).unwrap()
}

fn arb_letters(len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..4usize, prop::bool::ANY), 0..=len).prop_map(|v| {
        v.into_iter()
            .map(|(g, inv)| Letter::new(g, if inv { -1 } else { 1 }))
            .collect()
    })
}

fn arb_word(len: usize) -> impl Strategy<Value = Word> {
    arb_letters(len).prop_map(|l| Word::reduce(&alpha(), l).unwrap())
}

fn is_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| !p[0].cancels(p[1]))
}

/// Nielsen move `x_i ↦ x_i x_j^{±1}` on the surface alphabet.
fn nielsen(alphabet: &Alphabet, i: usize, j: usize, e: i32) -> FreeGroupMap {
    let images = (0..alphabet.len())
        .map(|k| {
            let gen = Word::reduce(alphabet, [Letter::new(k, 1)]).unwrap();
            if k == i {
                gen.multiply(&Word::reduce(alphabet, [Letter::new(j, e)]).unwrap()).unwrap()
            } else {
                gen
            }
        })
        .collect();
    FreeGroupMap::new(alphabet, alphabet, images).unwrap()
}

proptest! {
    #[test]
    fn reduction_is_free_and_idempotent(l in arb_letters(24)) {
        let w = Word::reduce(&alpha(), l.clone()).unwrap();
        prop_assert!(is_reduced(&w));
        prop_assert_eq!(Word::reduce(&alpha(), w.letters().to_vec()).unwrap(), w.clone());
        prop_assert!(w.len() <= l.len() && (l.len() - w.len()) % 2 == 0);
    }

    #[test]
    fn inverse_cancels(w in arb_word(16)) {
        prop_assert!(w.multiply(&w.inverse()).unwrap().is_identity());
        prop_assert!(w.inverse().multiply(&w).unwrap().is_identity());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn multiplication_is_associative(u in arb_word(8), v in arb_word(8), w in arb_word(8)) {
        let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
        let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cyclic_reduction_is_a_conjugation(w in arb_word(16)) {
        let (core, u) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(u.conjugate(&core).unwrap(), w);
    }

    #[test]
    fn rotations_are_cyclically_equal(w in arb_word(16), k in 0..32usize) {
        let (core, _) = w.cyclic_reduce();
        prop_assert!(core.rotate(k).cyclically_equal(&core));
    }

    #[test]
    fn conjugates_are_detected(w in arb_word(10), u in arb_word(6)) {
        let c = u.conjugate(&w).unwrap();
        let witness = c.conjugacy_witness(&w).unwrap();
        prop_assert!(witness.is_some());
        prop_assert_eq!(witness.unwrap().conjugate(&c).unwrap(), w);
    }

    #[test]
    fn render_parse_round_trip(w in arb_word(16)) {
        prop_assert_eq!(Word::parse(&alpha(), &w.render()).unwrap(), w);
    }

    #[test]
    fn maps_are_homomorphisms(
        images in prop::collection::vec(arb_word(4), 4),
        u in arb_word(8),
        v in arb_word(8),
    ) {
        let f = FreeGroupMap::new(&alpha(), &alpha(), images).unwrap();
        let uv = f.apply(&u.multiply(&v).unwrap()).unwrap();
        prop_assert_eq!(uv, f.apply(&u).unwrap().multiply(&f.apply(&v).unwrap()).unwrap());
        prop_assert_eq!(f.apply(&u.inverse()).unwrap(), f.apply(&u).unwrap().inverse());
    }

    #[test]
    fn polynomial_product_distributes(
        a in arb_word(4), b in arb_word(4), c in arb_word(4), k in -3i64..3,
    ) {
        let r = |n: i64| Rational::from_integer(n.into());
        let pa = QPoly::monomial(&a, r(k));
        let pb = QPoly::from_word(&b);
        let pc = QPoly::monomial(&c, r(2));
        prop_assert_eq!(pa.mul(&pb.add(&pc)), pa.mul(&pb).add(&pa.mul(&pc)));
        prop_assert!(pa.sub(&pa).is_zero());
        prop_assert_eq!(QPoly::parse(&alpha(), &pa.add(&pc).render()).unwrap(), pa.add(&pc));
    }
}

#[test]
fn standard_relator_is_product_of_commutators() {
    let s = Alphabet::surface(2);
    assert_eq!(
        standard_relator(2),
        Word::parse(&s, "x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1").unwrap()
    );
    let (min, _) = minimize(&standard_relator(2)).unwrap();
    assert_eq!(min.len(), 8);
}

#[test]
fn automorphic_images_of_the_standard_relator_are_recovered() {
    let s = Alphabet::surface(2);
    let target = standard_relator(2);
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let moves = prop::collection::vec((0..4usize, 0..4usize, prop::bool::ANY), 1..5);
    for _ in 0..12 {
        let seq = moves.new_tree(&mut runner).unwrap().current();
        let mut phi = FreeGroupMap::identity(&s);
        for (i, j, inv) in seq {
            if i != j {
                phi = phi.then(&nielsen(&s, i, j, if inv { -1 } else { 1 })).unwrap();
            }
        }
        let word = phi.apply(&target).unwrap();
        let outcome = find_automorphism(&word, &target, SearchOptions::default()).unwrap();
        let witness = outcome.witness().expect("an automorphism exists by construction");
        assert!(witness.verify(&word, &target), "witness for {} fails", word.render());
    }
}

#[test]
fn primitive_element_is_not_a_relator_image() {
    let s = Alphabet::surface(2);
    let w = Word::parse(&s, "x1 y1 x1^-1").unwrap();
    let outcome = find_automorphism(&w, &standard_relator(2), SearchOptions::default()).unwrap();
    assert!(outcome.witness().is_none());
}
