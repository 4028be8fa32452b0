use dimer_core::fixtures::GENUS2_TILING;
use dimer_core::quiver::{Localization, PolyMatrix, QuiverWithPotential};
use dimer_core::tiling::RotationSystem;
use dimer_core::words::{Letter, Word};
use dimer_core::QPoly;
use proptest::prelude::*;

fn fixture_qp() -> QuiverWithPotential {
    QuiverWithPotential::dual_of(&RotationSystem::parse(GENUS2_TILING).unwrap()).unwrap()
}

/// The worked genus-2 potential, written with fresh names and terms rotated and reordered.
const EXPECTED: &str = "\
vertex P
vertex Q
vertex R
vertex S
arrow A: P -> S
arrow B: P -> S
arrow C: P -> S
arrow D: S -> R
arrow E: S -> R
arrow F: S -> R
arrow G: R -> Q
arrow H: R -> Q
arrow I: R -> Q
arrow J: Q -> P
arrow K: Q -> P
arrow L: Q -> P
term - : F C L I
term + : I D C K
term + : A J G E
term - : G D A K
term + : B L H F
term - : E B J H
";

fn localization() -> Localization {
    let qp = fixture_qp();
    let q = qp.quiver();
    let data = qp
        .cut_data(
            &q.arrow_indices(&["a", "b", "c"]).unwrap(),
            &q.arrow_indices(&["e", "h", "k"]).unwrap(),
        )
        .unwrap();
    Localization::new(&qp, &data).unwrap()
}

fn poly(qp: &QuiverWithPotential, text: &str) -> QPoly {
    QPoly::parse(qp.alphabet(), text).unwrap()
}

#[test]
fn dual_matches_worked_potential_up_to_relabeling() {
    let qp = fixture_qp();
    assert_eq!(qp.quiver().num_vertices(), 4);
    assert_eq!(qp.quiver().num_arrows(), 12);
    let expected = QuiverWithPotential::parse(EXPECTED).unwrap();
    let (sign, map) = qp.relabeling_to(&expected).expect("potentials agree");
    assert_eq!(sign, 1);
    let mut sorted = map.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..12).collect::<Vec<_>>());
    let targets = expected.canonical_terms();
    for t in qp.terms() {
        let image: Vec<String> = t.arrows.iter().map(|&a| expected.quiver().arrow(map[a]).id.clone()).collect();
        let hit = targets.iter().any(|(s, u)| {
            *s == t.sign && (0..u.len()).any(|r| (0..u.len()).all(|i| u[(r + i) % u.len()] == image[i]))
        });
        assert!(hit, "term {image:?} has no counterpart");
    }
    assert_eq!(qp.potential_string(), "jgea + lhfb + kidc − kgda − jheb − lifc");
}

#[test]
fn relabeling_rejects_a_different_potential() {
    let wrong = EXPECTED.replace("term - : F C L I", "term + : F C L I");
    let other = QuiverWithPotential::parse(&wrong).unwrap();
    assert!(fixture_qp().relabeling_to(&other).is_none());
}

#[test]
fn cyclic_derivatives_of_the_fixture() {
    let qp = fixture_qp();
    let d = |id: &str| qp.cyclic_derivative_by_id(id).unwrap();
    assert_eq!(d("a"), poly(&qp, "1 * j g e - 1 * k g d"));
    assert_eq!(d("f"), poly(&qp, "1 * b l h - 1 * c l i"));
    assert_eq!(d("j"), poly(&qp, "1 * g e a - 1 * h e b"));
}

#[test]
fn each_named_dimer_is_a_cut() {
    let qp = fixture_qp();
    let q = qp.quiver();
    for cut in [["a", "b", "c"], ["d", "e", "f"], ["g", "h", "i"], ["j", "k", "l"]] {
        assert!(qp.is_cut(&q.arrow_indices(&cut).unwrap()));
    }
    assert!(!qp.is_cut(&q.arrow_indices(&["a", "d", "g"]).unwrap()));
}

#[test]
fn contraction_leaves_four_generators() {
    let qp = fixture_qp();
    let q = qp.quiver();
    let data = qp
        .cut_data(
            &q.arrow_indices(&["a", "b", "c"]).unwrap(),
            &q.arrow_indices(&["e", "h", "k"]).unwrap(),
        )
        .unwrap();
    let c = qp.contract(&data).unwrap();
    assert_eq!(c.qp.quiver().num_vertices(), 1);
    assert_eq!(c.free_arrows().len(), 6);
    assert_eq!(c.free_arrows().len() - (c.cut.len() - 1), 4);
    let d = |id: &str| c.qp.cyclic_derivative_by_id(id).unwrap();
    let p = |s: &str| QPoly::parse(c.qp.alphabet(), s).unwrap();
    assert_eq!(d("a"), p("1 * j g - 1 * g d"));
    assert_eq!(d("b"), p("1 * l f - 1 * j"));
    assert_eq!(d("c"), p("1 * i d - 1 * l i f"));
}

#[test]
fn automatic_tree_avoids_the_cut_and_spans() {
    let qp = fixture_qp();
    let q = qp.quiver();
    let cut = q.arrow_indices(&["d", "e", "f"]).unwrap();
    let tree = qp.auto_tree(&cut).unwrap();
    assert_eq!(tree.len(), 3);
    assert!(tree.iter().all(|a| !cut.contains(a)));
    qp.cut_data(&cut, &tree).unwrap();
}

#[test]
fn quiver_text_round_trip() {
    let qp = fixture_qp();
    assert_eq!(QuiverWithPotential::parse(&qp.render()).unwrap(), qp);
}

/// A random walk from `start` steered by `choices`; cut arrows only forwards.
fn walk(loc: &Localization, start: usize, choices: &[usize]) -> Word {
    let qp = fixture_qp();
    let q = qp.quiver();
    let cut = q.arrow_indices(&["a", "b", "c"]).unwrap();
    let mut at = start;
    let mut letters: Vec<Letter> = Vec::new();
    for &c in choices {
        let mut options: Vec<(Letter, usize)> = Vec::new();
        for (i, a) in q.arrows().iter().enumerate() {
            if a.source == at {
                options.push((Letter::new(i, 1), a.target));
            }
            if a.target == at && !cut.contains(&i) {
                options.push((Letter::new(i, -1), a.source));
            }
        }
        let (l, next) = options[c % options.len()];
        letters.insert(0, l);
        at = next;
    }
    Word::reduce(loc.source_alphabet(), letters).unwrap()
}

fn contracted_word(loc: &Localization, picks: &[(usize, bool)]) -> Word {
    let c = loc.contraction();
    let letters = picks.iter().map(|&(k, inv)| {
        let g = k % c.qp.quiver().num_arrows();
        let e = if inv && !c.cut.contains(&g) { -1 } else { 1 };
        Letter::new(g, e)
    });
    Word::reduce(loc.target_alphabet(), letters).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sigma_inverse_undoes_sigma(start in 0..4usize, choices in prop::collection::vec(0..64usize, 0..=10)) {
        let loc = localization();
        let word = walk(&loc, start, &choices);
        let path = loc.path(start, &word).unwrap();
        let back = loc.sigma_inv(&loc.sigma(&path)).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!((back[0].0, back[0].1), (path.source, path.target));
        prop_assert_eq!(&back[0].2, &QPoly::from_word(&word));
    }

    #[test]
    fn sigma_undoes_sigma_inverse(
        i in 0..4usize,
        j in 0..4usize,
        picks in prop::collection::vec((0..64usize, prop::bool::ANY), 0..=10),
    ) {
        let loc = localization();
        let w = contracted_word(&loc, &picks);
        let path = loc.sigma_inv_entry(i, j, &w).unwrap();
        prop_assert_eq!((path.target, path.source), (i, j));
        prop_assert_eq!(loc.sigma(&path), PolyMatrix::unit(4, i, j, QPoly::from_word(&w)));
    }

    #[test]
    fn sigma_is_multiplicative(
        start in 0..4usize,
        first in prop::collection::vec(0..64usize, 0..=5),
        second in prop::collection::vec(0..64usize, 0..=5),
    ) {
        let loc = localization();
        let p = loc.path(start, &walk(&loc, start, &first)).unwrap();
        let q = loc.path(p.target, &walk(&loc, p.target, &second)).unwrap();
        let pq = loc.path(start, &q.word.multiply(&p.word).unwrap()).unwrap();
        prop_assert_eq!(loc.sigma(&pq), loc.sigma(&q).mul(&loc.sigma(&p)));
    }
}
