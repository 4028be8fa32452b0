use dimer_core::fixtures::{GENUS2_INVERTED_TILING, GENUS2_TILING};
use dimer_core::relator::{run_pipeline, PipelineOptions};
use dimer_core::replab::{
    block_corner, block_lower_left, lambda_n, random_block_point, run_verification, sample_rng,
    sample_v, sample_v_block, Assignment, CMat, Lab, Tolerances, VerifyConfig,
};
use dimer_core::tiling::RotationSystem;
use nalgebra::DMatrix;
use num_complex::Complex;

type M = DMatrix<Complex<f64>>;

fn ids(v: &[&str]) -> Option<Vec<String>> {
    Some(v.iter().map(|s| s.to_string()).collect())
}

fn lab(text: &str) -> Lab {
    let options = PipelineOptions {
        cut: ids(&["a", "b", "c"]),
        tree: ids(&["e", "h", "k"]),
        complement: ids(&["f", "j"]),
        ..PipelineOptions::default()
    };
    let run = run_pipeline(&RotationSystem::parse(text).unwrap(), &options).unwrap();
    Lab::from_run(&run).unwrap()
}

fn inv(a: &M) -> M {
    a.clone().try_inverse().unwrap()
}

/// `(A₁, B₁, A₂, B₂)` of a surface assignment.
fn surface(s: &Assignment<f64>) -> [M; 4] {
    [0, 1, 2, 3].map(|g| s.get(g).unwrap().clone())
}

fn arrow(lab: &Lab, name: &str) -> usize {
    lab.alphabet().index_of(name).unwrap()
}

fn cut_slot(lab: &Lab, name: &str) -> usize {
    lab.cut.iter().position(|&e| e == arrow(lab, name)).unwrap()
}

fn rel(a: &M, b: &M) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

#[test]
fn free_arrow_images_match_hand_products() {
    let lab = lab(GENUS2_TILING);
    let mut rng = sample_rng(11, 0);
    for n in 1..=3 {
        let s = random_block_point::<f64, _>(&lab.surface, n, 1, &mut rng).unwrap();
        let [a1, b1, a2, b2] = surface(&s);
        let phi = lab.phi_prime(&s).unwrap();
        let expected = [
            ("d", a2.clone()),
            ("f", &b1 * inv(&a1) * inv(&b1) * &a2),
            ("g", b2.clone()),
            ("i", inv(&b1)),
            ("j", &b2 * &a2 * inv(&b2)),
            ("l", a1.clone()),
        ];
        for (name, want) in expected {
            let got = phi.get(arrow(&lab, name)).unwrap();
            assert!(rel(got, &want) < 1e-12, "arrow {name}");
        }
    }
}

#[test]
fn substituted_relations_vanish_identically() {
    let lab = lab(GENUS2_TILING);
    for i in 0..20 {
        let mut rng = sample_rng(5, i);
        let s = random_block_point::<f64, _>(&lab.surface, 2, 2, &mut rng).unwrap();
        let values = lab.derivative_values(&lab.phi_prime(&s).unwrap()).unwrap();
        for name in ["a", "c"] {
            assert!(values[cut_slot(&lab, name)].norm() < 1e-10, "relation {name}");
        }
    }
}

#[test]
fn comparison_map_middles_differ() {
    let lab = lab(GENUS2_TILING);
    let (b, samples) = (cut_slot(&lab, "b"), 120);
    let mut differ = 0;
    for i in 0..samples {
        let (m, n) = [(1, 1), (1, 2), (2, 1), (2, 2)][i % 4];
        let mut rng = sample_rng(2, i as u64);
        let s = random_block_point::<f64, _>(&lab.surface, m, n, &mut rng).unwrap();
        let [a1, b1, a2, b2] = surface(&s);
        let id = M::identity(m + n, m + n);
        let lhs = lab.map_f_dd(&lab.phi_prime(&s).unwrap(), m).unwrap();
        let middle = &a1 * &b1 * inv(&a1) * inv(&b1) * &a2 - &b2 * &a2 * inv(&b2);
        let rhs = lab.psi_prime(&lab.map_f(&s, m).unwrap()).unwrap();
        let lambda = &a1 * &b1 * inv(&a1) * inv(&b1) * &a2 * &b2 * inv(&a2) * inv(&b2) - id;
        for (k, (x, y)) in lhs.r.iter().zip(&rhs.r).enumerate() {
            if k == b {
                assert!((x - block_corner(&middle, m)).norm() < 1e-9);
                assert!((y - block_corner(&lambda, m)).norm() < 1e-9);
            } else {
                assert!(x.norm() < 1e-9 && y.norm() < 1e-9);
            }
        }
        let scale = (0..4).map(|g| s.get(g).unwrap().norm()).fold(1.0, f64::max);
        if (&lhs.r[b] - &rhs.r[b]).norm() / scale > 1e-3 {
            differ += 1;
        }
    }
    assert!(differ * 10 >= samples * 8, "{differ}/{samples}");
}

#[test]
fn surface_samples_lie_on_the_variety() {
    let lab = lab(GENUS2_TILING);
    for i in 0..30 {
        let mut rng = sample_rng(9, i);
        let n = 2 + (i as usize % 3);
        let v = sample_v::<f64, _>(2, n, &mut rng).unwrap();
        assert!(lambda_n(&v).unwrap().norm() < 1e-10);
        let z = lab.phi_prime(&v).unwrap();
        assert!(lab.derivative_values(&z).unwrap().iter().all(|d| d.norm() < 1e-9));
        let vb = sample_v_block::<f64, _>(2, 1, 2, &mut rng).unwrap();
        for g in 0..4 {
            assert_eq!(block_lower_left(vb.get(g).unwrap(), 1).norm(), 0.0);
        }
    }
}

#[test]
fn single_precision_transport_is_close() {
    let lab = lab(GENUS2_TILING);
    let mut rng = sample_rng(4, 0);
    let v = sample_v::<f32, _>(2, 3, &mut rng).unwrap();
    let z = lab.phi_prime(&v).unwrap();
    let worst = lab
        .derivative_values(&z)
        .unwrap()
        .iter()
        .map(|d| d.norm())
        .fold(0.0f32, f32::max);
    assert!(worst < 1e-3, "{worst}");
}

#[test]
fn correcting_isomorphism_round_trips() {
    for text in [GENUS2_TILING, GENUS2_INVERTED_TILING] {
        let lab = lab(text);
        for i in 0..20 {
            let mut rng = sample_rng(8, i);
            let (m, n) = [(1, 1), (2, 1)][i as usize % 2];
            let mut rho = Assignment::new(lab.alphabet(), m + n);
            let noise = random_block_point::<f64, _>(lab.alphabet(), m, n, &mut rng).unwrap();
            for &a in &lab.free {
                rho.set(a, noise.get(a).unwrap().clone()).unwrap();
            }
            let p = lab.f0_times_id(&lab.gamma(&rho, m).unwrap(), m).unwrap();
            let there = lab.delta(&p).unwrap();
            assert!(lab.delta_inv(&there).unwrap().distance(&p) < 1e-9 * p.norm().max(1.0));
            let f0dd = lab.split(&lab.map_f0_dd(&rho, m).unwrap()).unwrap();
            assert!(there.distance(&f0dd) < 1e-8);
            let back = lab.gamma_inv(&lab.gamma(&rho, m).unwrap(), m).unwrap();
            for &a in &lab.free {
                assert!((back.get(a).unwrap() - rho.get(a).unwrap()).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn correcting_isomorphism_fixes_zero_locus_points() {
    for (text, sign) in [(GENUS2_TILING, 1), (GENUS2_INVERTED_TILING, -1)] {
        let lab = lab(text);
        assert_eq!(lab.sign, sign);
        for i in 0..20 {
            let mut rng = sample_rng(6, i);
            let z = lab.z_split_point::<f64, _>(1, 2, &mut rng).unwrap();
            assert!(lab.delta_inv(&z).unwrap().distance(&z) < 1e-10);
        }
    }
}

#[test]
fn default_verification_passes_on_both_fixtures() {
    for text in [GENUS2_TILING, GENUS2_INVERTED_TILING] {
        let lab = lab(text);
        let config = VerifyConfig {
            samples: 40,
            ..VerifyConfig::default()
        };
        let report = run_verification::<f64>(&lab, &config).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{} {:.2e}", c.name, c.max_residual);
        }
        for s in &report.diagrams.squares {
            assert!(s.passed, "{} {:.2e}", s.name, s.max_residual);
        }
        let top_right = report.diagrams.square("comparison/top-right").unwrap();
        assert!(top_right.generic_failures * 10 >= top_right.samples * 8);
    }
}

#[test]
fn impossible_tolerance_fails() {
    let lab = lab(GENUS2_TILING);
    let config = VerifyConfig {
        samples: 8,
        tolerances: Tolerances {
            arithmetic: 0.0,
            solve: 0.0,
            composite: 0.0,
            long: 0.0,
            ..Tolerances::default()
        },
        ..VerifyConfig::default()
    };
    assert!(!run_verification::<f64>(&lab, &config).unwrap().passed());
}

#[test]
fn verification_is_reproducible() {
    let lab = lab(GENUS2_TILING);
    let config = VerifyConfig {
        samples: 12,
        ..VerifyConfig::default()
    };
    let a = run_verification::<f64>(&lab, &config).unwrap();
    let b = run_verification::<f64>(&lab, &config).unwrap();
    assert_eq!(a, b);
}

#[test]
fn corners_use_the_upper_right_block() {
    let m = CMat::<f64>::from_fn(3, 3, |i, j| Complex::new((10 * i + j) as f64, 0.0));
    let c = block_corner(&m, 1);
    assert_eq!(c.shape(), (1, 2));
    assert_eq!(c[(0, 1)], Complex::new(2.0, 0.0));
}
