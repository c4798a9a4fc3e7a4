//! Acceptance suite: one criterion per test, each printing a single
//! pass/fail line (run with --nocapture to see them).

use std::time::{Duration, Instant};

use num::rational::Rational64;
use num::{BigRational, FromPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyrep::interpolant::{build_params, epsilon_params, eval_f_k, grad_f_k, quantitative_k};
use polyrep::linalg;
use polyrep::poly::{Monomial, SparsePoly};
use polyrep::polytope::{
    facet_forms, form_scales, metric_params, polytope_from_text, FacetForms, FormMode, Polytope,
};
use polyrep::representation::{
    build_representation, verify_cone_separation, verify_face_vanishing, verify_membership,
    PolyRepresentation, VerificationReport, VerifyConfig,
};
use polyrep::shapes;
use polyrep::symmetric::{convolution_split, elem_sym_all, orthant_member_by_signs};

fn criterion<F>(n: usize, name: &str, budget: Duration, f: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    let start = Instant::now();
    let result = std::panic::catch_unwind(f);
    let elapsed = start.elapsed();
    let status = if result.is_err() {
        "FAIL"
    } else if elapsed > budget {
        "FAIL (over time budget)"
    } else {
        "pass"
    };
    println!("criterion {n:2} ({name}): {status} [{elapsed:.2?}]");
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
    assert!(elapsed <= budget, "criterion {n} exceeded {budget:?}");
}

fn rat(n: i64) -> BigRational {
    BigRational::from_i64(n).unwrap()
}

struct Built {
    p: Polytope,
    forms: FacetForms,
    rep: PolyRepresentation,
    eps3: f64,
}

fn build(text: &str, mode: FormMode) -> Built {
    let p = polytope_from_text(text).unwrap();
    let forms = facet_forms(&p, FormMode::Normalized);
    let mp = metric_params(&p, &forms).unwrap();
    let eps = epsilon_params(&mp, p.facets.len(), p.dim).unwrap();
    let k = quantitative_k(&mp, p.dim, p.vertices.len(), None).k();
    let params = build_params(&p, &forms, k, form_scales(&p)).unwrap();
    let rep = build_representation(&p, mode, params);
    Built {
        p,
        forms,
        rep,
        eps3: eps.eps3,
    }
}

fn exact_polys(rep: &PolyRepresentation) -> &[SparsePoly<BigRational>] {
    match &rep.expanded {
        polyrep::representation::ExpandedPolys::Exact(polys) => polys,
        _ => panic!("expected exact expansion"),
    }
}

#[test]
fn criterion_01_tetrahedron_coefficients() {
    criterion(1, "tetrahedron exact coefficients", Duration::from_secs(1), || {
        let built = build(&shapes::tetrahedron_json(), FormMode::Raw);
        let polys = exact_polys(&built.rep);
        // p_1 = 4 - 4 x1^2 - 4 x2^2 - 4 x3^2 - 8 x1 x2 x3
        let mut p1 = SparsePoly::zero(3);
        p1.add_term(Monomial(vec![0, 0, 0]), rat(4));
        for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            p1.add_term(Monomial(e.to_vec()), rat(-4));
        }
        p1.add_term(Monomial(vec![1, 1, 1]), rat(-8));
        assert_eq!(polys[0], p1);
        // p_2 = 1 - 2(x1^2+x2^2+x3^2) - 8 x1 x2 x3
        //       - 2(x1^2 x2^2 + x1^2 x3^2 + x2^2 x3^2) + x1^4 + x2^4 + x3^4
        let mut p2 = SparsePoly::zero(3);
        p2.add_term(Monomial(vec![0, 0, 0]), rat(1));
        for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            p2.add_term(Monomial(e.to_vec()), rat(-2));
        }
        p2.add_term(Monomial(vec![1, 1, 1]), rat(-8));
        for e in [[2, 2, 0], [2, 0, 2], [0, 2, 2]] {
            p2.add_term(Monomial(e.to_vec()), rat(-2));
        }
        for e in [[4, 0, 0], [0, 4, 0], [0, 0, 4]] {
            p2.add_term(Monomial(e.to_vec()), rat(1));
        }
        assert_eq!(polys[1], p2);
    });
}

#[test]
fn criterion_02_cube_coefficients() {
    criterion(2, "cube exact coefficients", Duration::from_secs(1), || {
        let built = build(&shapes::cube_json(), FormMode::Raw);
        let polys = exact_polys(&built.rep);
        // p_1 = 2(3 - 2 x1^2 - 2 x2^2 - 2 x3^2 + x1^2 x2^2 + x1^2 x3^2 + x2^2 x3^2)
        let mut p1 = SparsePoly::zero(3);
        p1.add_term(Monomial(vec![0, 0, 0]), rat(6));
        for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            p1.add_term(Monomial(e.to_vec()), rat(-4));
        }
        for e in [[2, 2, 0], [2, 0, 2], [0, 2, 2]] {
            p1.add_term(Monomial(e.to_vec()), rat(2));
        }
        assert_eq!(polys[0], p1);
        // p_2 = (1 - x1^2)(1 - x2^2)(1 - x3^2) expanded
        let factor = |axis: usize| {
            let mut f = SparsePoly::zero(3);
            f.add_term(Monomial(vec![0, 0, 0]), rat(1));
            let mut e = vec![0u32; 3];
            e[axis] = 2;
            f.add_term(Monomial(e), rat(-1));
            f
        };
        let p2 = factor(0).mul(&factor(1)).mul(&factor(2));
        assert_eq!(polys[1], p2);
    });
}

#[test]
fn criterion_03_orthant_equivalence() {
    criterion(3, "orthant sign equivalence", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..=6usize {
            for _ in 0..100_000 {
                let x: Vec<Rational64> = (0..d)
                    .map(|_| {
                        Rational64::new(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=8))
                    })
                    .collect();
                let zero = Rational64::new(0, 1);
                let nonneg = x.iter().all(|v| *v >= zero);
                assert_eq!(
                    orthant_member_by_signs(&x),
                    nonneg,
                    "d = {d}, x = {x:?}"
                );
            }
        }
    });
}

#[test]
fn criterion_04_convolution_identity() {
    criterion(4, "symmetric convolution identity", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10_000 {
            let n1 = rng.gen_range(1..=8usize);
            let n2 = rng.gen_range(1..=8usize);
            let x: Vec<f64> = (0..n1).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let y: Vec<f64> = (0..n2).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let z: Vec<f64> = x.iter().chain(&y).copied().collect();
            let spectrum = elem_sym_all(&z);
            for i in 1..=n1 + n2 {
                let conv = convolution_split(&x, &y, i);
                let direct = spectrum.values[i];
                let err = (conv - direct).abs() / direct.abs().max(1.0);
                assert!(err <= 1e-12, "i = {i}, {conv} vs {direct}");
            }
        }
    });
}

#[test]
fn criterion_05_interpolation_and_weights() {
    criterion(5, "interpolation and weight bounds", Duration::from_secs(30), || {
        for text in [shapes::cube_json(), shapes::tetrahedron_json()] {
            let built = build(&text, FormMode::Normalized);
            let params = &built.rep.params;
            assert!(params.a_deviation <= 0.25, "{}", params.a_deviation);
            for &w in &params.y {
                assert!((2.0 / 3.0..=4.0 / 3.0).contains(&w), "weight {w}");
            }
            for v in &built.p.vertices {
                let f = eval_f_k(&built.p, &built.forms, params, v);
                assert!((f - 1.0).abs() <= 1e-9, "f_k at vertex = {f}");
            }
        }
    });
}

#[test]
fn criterion_06_membership_equivalence() {
    criterion(6, "membership equivalence", Duration::from_secs(12 * 60), || {
        let mut texts = vec![
            shapes::cube_json(),
            shapes::tetrahedron_json(),
            shapes::triangle_product_json(),
        ];
        for m in 5..=8 {
            texts.push(shapes::ngon_json(m));
        }
        for text in texts {
            let per_shape = Instant::now();
            let built = build(&text, FormMode::Normalized);
            let cfg = VerifyConfig::new(100_000, 6, built.p.diameter);
            let mut report = VerificationReport::default();
            verify_membership(&built.rep, &built.p, built.eps3, &cfg, &mut report);
            assert!(
                report.violations.is_empty(),
                "dim {} m {}: {:?}",
                built.p.dim,
                built.p.facets.len(),
                &report.violations[..report.violations.len().min(3)]
            );
            assert!(report.samples_inside + report.samples_outside >= 90_000);
            assert!(per_shape.elapsed() <= Duration::from_secs(120));
        }
    });
}

#[test]
fn criterion_07_face_vanishing() {
    criterion(7, "face vanishing", Duration::from_secs(10 * 60), || {
        let mut texts = vec![
            shapes::cube_json(),
            shapes::tetrahedron_json(),
            shapes::square_json(),
            shapes::triangle_product_json(),
        ];
        for m in 5..=8 {
            texts.push(shapes::ngon_json(m));
        }
        for text in texts {
            let built = build(&text, FormMode::Normalized);
            let cfg = VerifyConfig::new(1, 7, built.p.diameter);
            let mut report = VerificationReport::default();
            verify_face_vanishing(&built.rep, &built.p, &cfg, &mut report);
            assert!(report.violations.is_empty(), "{:?}", report.violations);
            for (i, &mx) in report.face_vanish_max.iter().enumerate() {
                assert!(mx <= 1e-8, "i = {i}, max = {mx}");
            }
        }
    });
}

#[test]
fn criterion_08_cone_separation() {
    criterion(8, "vertex cone separation", Duration::from_secs(10 * 60), || {
        for text in [
            shapes::cube_json(),
            shapes::tetrahedron_json(),
            shapes::ngon_json(6),
        ] {
            let built = build(&text, FormMode::Normalized);
            let mut cfg = VerifyConfig::new(1, 8, built.p.diameter);
            cfg.cone_samples_per_vertex = 1000;
            let mut report = VerificationReport::default();
            verify_cone_separation(&built.rep, &built.p, &cfg, &mut report);
            assert!(report.cone_ok, "{:?}", &report.violations[..3.min(report.violations.len())]);
            assert!(report.violations.is_empty());
        }
    });
}

#[test]
fn criterion_09_gradient_correctness() {
    criterion(9, "analytic gradient", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for text in [
            shapes::cube_json(),
            shapes::tetrahedron_json(),
            shapes::ngon_json(5),
        ] {
            let built = build(&text, FormMode::Normalized);
            let (p, forms, params) = (&built.p, &built.forms, &built.rep.params);
            let h = 1e-6;
            for _ in 0..100 {
                // stay in the mildly inflated polytope: further out the
                // high powers overflow and neither side is finite
                let x: Vec<f64> = loop {
                    let x: Vec<f64> =
                        (0..p.dim).map(|_| rng.gen_range(-1.2..1.2)).collect();
                    if forms.eval_all(&x).iter().all(|&q| q >= -0.05) {
                        break x;
                    }
                };
                let grad = grad_f_k(p, forms, params, &x);
                let mut fd = vec![0.0; p.dim];
                for a in 0..p.dim {
                    let mut xp = x.clone();
                    let mut xm = x.clone();
                    xp[a] += h;
                    xm[a] -= h;
                    fd[a] = (eval_f_k(p, forms, params, &xp)
                        - eval_f_k(p, forms, params, &xm))
                        / (2.0 * h);
                }
                let scale = linalg::norm(&grad).max(linalg::norm(&fd)).max(1e-6);
                let err = linalg::norm(&linalg::sub(&grad, &fd)) / scale;
                assert!(err <= 1e-5, "x = {x:?}, err = {err}");
            }
        }
    });
}

#[test]
fn criterion_10_parameter_arithmetic() {
    criterion(10, "frozen parameter values", Duration::from_secs(10), || {
        let cube = polytope_from_text(&shapes::cube_json()).unwrap();
        let forms = facet_forms(&cube, FormMode::Normalized);
        let mp = metric_params(&cube, &forms).unwrap();
        assert!((mp.gamma - 0.42265).abs() < 5e-5);
        assert!((mp.alpha - 1.0).abs() < 1e-9);
        let eps = epsilon_params(&mp, 6, 3).unwrap();
        assert!((eps.eps1 - 4.698e-5).abs() / 4.698e-5 < 5e-4, "{}", eps.eps1);
        assert!((eps.eps3 - 1.472e-9).abs() / 1.472e-9 < 5e-4, "{}", eps.eps3);
        let bounds = quantitative_k(&mp, 3, 8, None);
        assert_eq!(bounds.gamma_bound.unwrap().ceil(), 1.0);
        assert_eq!(bounds.n_bound, 10.0);
        assert_eq!(bounds.cone_bound.ceil(), 27.0);
        assert_eq!(bounds.k(), 27);

        let tetra = polytope_from_text(&shapes::tetrahedron_json()).unwrap();
        let tforms = facet_forms(&tetra, FormMode::Normalized);
        let tmp = metric_params(&tetra, &tforms).unwrap();
        assert!((tmp.gamma - 0.18350).abs() < 5e-5, "{}", tmp.gamma);
    });
}
