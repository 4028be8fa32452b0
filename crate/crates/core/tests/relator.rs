use dimer_core::fixtures::{GENUS2_INVERTED_TILING, GENUS2_TILING};
use dimer_core::relator::{
    enumerate_choices, run_pipeline, standard_relator, PipelineOptions, PipelineRun, RelatorError,
};
use dimer_core::report::{pipeline_report, Report};
use dimer_core::tiling::{RotationSystem, TilingError};
use dimer_core::words::{Alphabet, FreeGroupMap, SearchOptions, SignChoice, Word};
use dimer_core::QPoly;

fn ids(v: &[&str]) -> Option<Vec<String>> {
    Some(v.iter().map(|s| s.to_string()).collect())
}

fn worked_options() -> PipelineOptions {
    PipelineOptions {
        cut: ids(&["a", "b", "c"]),
        tree: ids(&["e", "h", "k"]),
        complement: ids(&["f", "j"]),
        ..PipelineOptions::default()
    }
}

fn run(text: &str, options: &PipelineOptions) -> PipelineRun {
    run_pipeline(&RotationSystem::parse(text).unwrap(), options).unwrap()
}

fn name(run: &PipelineRun, arrow: usize) -> String {
    run.qp.quiver().arrow(arrow).id.clone()
}

/// `ε(relator) = u λ^c u⁻¹` and `ε⁻¹ ∘ ε = id`, checked from scratch.
fn assert_normalized(run: &PipelineRun) {
    let n = run.normalization.as_ref().expect("normalization found");
    let lambda = standard_relator(run.genus);
    let image = n.map.apply(&run.relator.relator).unwrap();
    assert_eq!(image, n.conjugator.conjugate(&lambda.pow(n.sign)).unwrap());
    assert!(n.map.then(&n.inverse).unwrap().is_identity());
    assert!(n.sign == 1 || n.sign == -1);
}

#[test]
fn worked_example_relations_and_substitutions() {
    let r = run(GENUS2_TILING, &worked_options());
    let alphabet = r.contraction.qp.alphabet().clone();
    let p = |s: &str| QPoly::parse(&alphabet, s).unwrap();
    let relations: Vec<QPoly> = r
        .contracted_cut()
        .iter()
        .map(|&e| r.contraction.qp.cyclic_derivative(e))
        .collect();
    assert_eq!(relations, [p("1 * j g - 1 * g d"), p("1 * l f - 1 * j"), p("1 * i d - 1 * l i f")]);

    let pairs: Vec<(String, String)> = r
        .pairing
        .pairs
        .iter()
        .map(|&(h, e)| (name(&r, h), name(&r, e)))
        .collect();
    assert!(pairs.contains(&("f".into(), "c".into())));
    assert!(pairs.contains(&("j".into(), "a".into())));
    assert_eq!(name(&r, r.pairing.leftover), "b");
    assert_eq!(r.route_lengths, [1, 1]);

    let w = |s: &str| Word::parse(&alphabet, s).unwrap();
    let tau = r.certificate.tau();
    assert_eq!(tau.image_of("f").unwrap(), &w("i^-1 l^-1 i d"));
    assert_eq!(tau.image_of("j").unwrap(), &w("g d g^-1"));
}

#[test]
fn hand_written_substitution_kills_paired_relations() {
    let r = run(GENUS2_TILING, &worked_options());
    let alphabet = r.contraction.qp.alphabet().clone();
    let mut text = String::from("f -> i^-1 l^-1 i d; j -> g d g^-1");
    for g in alphabet.names().iter().filter(|g| *g != "f" && *g != "j") {
        text.push_str(&format!("; {g} -> {g}"));
    }
    let tau = FreeGroupMap::parse(&alphabet, &alphabet, &text).unwrap();
    for e in ["a", "c"] {
        let d = r.contraction.qp.cyclic_derivative_by_id(e).unwrap();
        assert!(d.apply_map(&tau).unwrap().is_zero(), "relation {e} survives");
    }
    let b = r.contraction.qp.cyclic_derivative_by_id("b").unwrap();
    assert!(!b.apply_map(&tau).unwrap().is_zero());
}

#[test]
fn worked_example_relator() {
    let r = run(GENUS2_TILING, &worked_options());
    assert_eq!(r.relator.reduced_alphabet.len(), 4);
    let expected = Word::parse(&r.relator.reduced_alphabet, "l i^-1 l^-1 i d g d^-1 g^-1").unwrap();
    assert!(r.relator.relator.cyclically_equal(&expected));
    r.certificate.replay(&r.contraction.qp).unwrap();
    assert_normalized(&r);
}

#[test]
fn worked_renaming_is_a_valid_normalization() {
    let r = run(GENUS2_TILING, &worked_options());
    let surface = Alphabet::surface(2);
    let renaming = FreeGroupMap::parse(
        &r.relator.reduced_alphabet,
        &surface,
        "l -> x1; i -> y1^-1; d -> x2; g -> y2",
    )
    .unwrap();
    let image = renaming.apply(&r.relator.relator).unwrap();
    assert!(image.cyclically_equal(&standard_relator(2)));
}

#[test]
fn arrow_words_satisfy_the_relator_map() {
    let r = run(GENUS2_TILING, &worked_options());
    let map = r.arrow_map().unwrap();
    let alphabet = r.contraction.qp.alphabet();
    for &e in r.contracted_cut() {
        if e == r.leftover() {
            continue;
        }
        let d = r.contraction.qp.cyclic_derivative(e).apply_map(&map).unwrap();
        assert!(d.is_zero(), "∂W/∂{} does not vanish", alphabet.name(e));
    }
    let b = r.contraction.qp.cyclic_derivative(r.leftover()).apply_map(&map).unwrap();
    let terms: Vec<Word> = b.terms().map(|(w, _)| w).collect();
    assert_eq!(terms.len(), 2);
    let quotient = terms[0].multiply(&terms[1].inverse()).unwrap();
    let lambda = standard_relator(2);
    assert!(quotient.cyclically_equal(&lambda) || quotient.cyclically_equal(&lambda.inverse()));
}

#[test]
fn every_choice_replays_and_normalizes() {
    let tiling = RotationSystem::parse(GENUS2_TILING).unwrap();
    let choices = enumerate_choices(&tiling, 50).unwrap();
    assert_eq!(choices.len(), 50);
    let mut cuts = std::collections::BTreeSet::new();
    for options in &choices {
        let r = run_pipeline(&tiling, options).unwrap();
        r.certificate.replay(&r.contraction.qp).unwrap();
        let tau = r.certificate.tau();
        for &(_, e) in &r.contracted_pairs() {
            let d = r.contraction.qp.cyclic_derivative(e).apply_map(&tau).unwrap();
            assert!(d.is_zero());
        }
        assert_normalized(&r);
        cuts.insert(options.cut.clone());
    }
    assert!(cuts.len() >= 4);
}

#[test]
fn named_cuts_with_automatic_choices_all_normalize() {
    let tiling = RotationSystem::parse(GENUS2_TILING).unwrap();
    for cut in [["a", "b", "c"], ["d", "e", "f"], ["g", "h", "i"], ["j", "k", "l"]] {
        let options = PipelineOptions {
            cut: ids(&cut),
            ..PipelineOptions::default()
        };
        assert_normalized(&run_pipeline(&tiling, &options).unwrap());
    }
}

#[test]
fn inverted_fixture_gives_inverse_power() {
    let r = run(GENUS2_INVERTED_TILING, &worked_options());
    assert_eq!(r.normalization.as_ref().unwrap().sign, -1);
    assert_normalized(&r);
    let expected = Word::parse(&r.relator.reduced_alphabet, "g^-1 d g l^-1 i l i^-1 d^-1").unwrap();
    assert!(r.relator.relator.cyclically_equal(&expected));
}

#[test]
fn constructed_inverse_relator_is_recovered() {
    let r = run(GENUS2_TILING, &worked_options());
    let n = r.normalization.as_ref().unwrap();
    let lambda_inverse = standard_relator(2).inverse();
    let surface = Alphabet::surface(2);
    let rename = FreeGroupMap::rename(&r.relator.reduced_alphabet, &surface).unwrap();
    let relator = rename.apply(&n.inverse.apply(&lambda_inverse).unwrap()).unwrap();
    assert_ne!(relator, lambda_inverse);
    let minus = SearchOptions {
        sign: SignChoice::Minus,
        ..SearchOptions::default()
    };
    let outcome = dimer_core::words::find_automorphism(&relator, &standard_relator(2), minus).unwrap();
    let witness = outcome.witness().unwrap();
    assert_eq!(witness.sign, -1);
    assert!(witness.verify(&relator, &standard_relator(2)));
}

#[test]
fn forced_sign_is_honoured() {
    let options = PipelineOptions {
        search: SearchOptions {
            sign: SignChoice::Minus,
            ..SearchOptions::default()
        },
        ..worked_options()
    };
    let r = run(GENUS2_TILING, &options);
    assert_eq!(r.normalization.as_ref().unwrap().sign, -1);
    assert_normalized(&r);
}

#[test]
fn exhausted_budget_is_reported_not_fatal() {
    let options = PipelineOptions {
        search: SearchOptions {
            budget: 0,
            ..SearchOptions::default()
        },
        ..worked_options()
    };
    let r = run(GENUS2_TILING, &options);
    if r.normalization.is_none() {
        let report = pipeline_report(&r);
        assert_eq!(report.get("NORMALIZATION", "status"), Some("budget-exhausted"));
        assert!(!report.passed());
    }
}

#[test]
fn complement_through_a_tree_arrow_is_rejected() {
    let options = PipelineOptions {
        complement: ids(&["e", "j"]),
        ..worked_options()
    };
    let err = run_pipeline(&RotationSystem::parse(GENUS2_TILING).unwrap(), &options).unwrap_err();
    assert!(matches!(err, RelatorError::Pairing(_) | RelatorError::Tiling(_)));
}

#[test]
fn non_dimer_cut_is_rejected() {
    let options = PipelineOptions {
        cut: ids(&["a", "d", "g"]),
        ..PipelineOptions::default()
    };
    let err = run_pipeline(&RotationSystem::parse(GENUS2_TILING).unwrap(), &options).unwrap_err();
    assert!(matches!(err, RelatorError::Tiling(TilingError::InvalidDimer(_))));
}

#[test]
fn malformed_tiling_error_names_the_line() {
    let text = GENUS2_TILING.replace("edge k : k_w k_b", "edge k : k_w");
    let line = text.lines().position(|l| l.starts_with("edge k")).unwrap() + 1;
    match RotationSystem::parse(&text).unwrap_err() {
        TilingError::Parse { line: got, .. } => assert_eq!(got, line),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn report_is_deterministic_and_reparses() {
    let tiling = RotationSystem::parse(GENUS2_TILING).unwrap();
    let a = pipeline_report(&run_pipeline(&tiling, &PipelineOptions::default()).unwrap());
    let b = pipeline_report(&run_pipeline(&tiling, &PipelineOptions::default()).unwrap());
    assert_eq!(a.render(), b.render());
    let parsed = Report::parse(&a.render()).unwrap();
    assert_eq!(parsed, a);
    for section in ["TILING", "QUIVER", "CUT", "CERTIFICATE", "RELATOR", "NORMALIZATION"] {
        assert!(parsed.get_section(section).is_some(), "missing {section}");
    }
    assert_eq!(parsed.get("TILING", "genus"), Some("2"));
}

#[test]
fn worked_report_records_the_relator() {
    let report = pipeline_report(&run(GENUS2_TILING, &worked_options()));
    assert_eq!(report.get("RELATOR", "relator-compact"), Some("li⁻¹l⁻¹idgd⁻¹g⁻¹"));
    assert_eq!(report.get("CERTIFICATE", "replay"), Some("ok"));
    assert!(report.passed());
}
