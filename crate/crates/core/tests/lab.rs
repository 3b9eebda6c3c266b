mod common;

use common::c;
use dzeta::kernel::{riemann_zeta_em, QuadratureSpec};
use dzeta::lab::*;
use dzeta::series::{av2_accelerated, ZetaArgs};
use dzeta::{Constants, ZetaError};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LADDER: [f64; 4] = [50.0, 100.0, 200.0, 400.0];

fn plan(target: Target, s: [f64; 3], samples: &[f64], evaluator: Evaluator, eps: f64) -> MeanSquarePlan {
    MeanSquarePlan::new(target, c(s[0], 0.0), c(s[1], 0.0), s[2], samples.to_vec(), evaluator, QuadratureSpec::default(), eps)
        .unwrap()
}

fn doubled(p: &MeanSquarePlan) -> MeanSquarePlan {
    p.with_quad(p.quad().with_panels(2 * p.quad().panels()).unwrap())
}

fn assert_report_invariants(r: &MeanSquareReport) {
    let mut last = 0.0;
    for (k, &(t, i)) in r.i_values.iter().enumerate() {
        assert!(i >= last, "I must be non-negative and non-decreasing");
        last = i;
        assert_eq!(r.coefficient_estimates[k], i / t);
        assert_eq!(r.residuals[k], i - r.zeta_sq_ref * t);
    }
}

fn assert_stable(a: &MeanSquareReport, b: &MeanSquareReport) {
    for (x, y) in a.i_values.iter().zip(&b.i_values) {
        assert!((x.1 - y.1).abs() < 5e-3 * x.1, "T = {}: {} vs {}", x.0, x.1, y.1);
    }
}

/// The hypotheses of each theorem, written out independently of the
/// library's table (real s1, s2; points drawn off the boundaries).
fn holds(th: Theorem, s: [f64; 3]) -> bool {
    let [s1, s2, s3] = s;
    let (s13, s23, sum) = (s1 + s3, s2 + s3, s1 + s2 + s3);
    let mid_strip = s3 > 0.0 && s13 > 0.5 && s13 <= 1.0 && sum > 2.0;
    let low_sum = s3 > 0.0 && s13 > 0.5 && sum > 1.5 && sum <= 2.0;
    let mt_domain = s3 > 0.0 && s13 <= 1.0 && s23 <= 1.0 && sum > 1.5;
    match th {
        Theorem::T1_1 => s13 > 1.0 && sum > 2.0,
        Theorem::T1_2A => mid_strip && s13 <= 0.75,
        Theorem::T1_2B => mid_strip && s13 > 0.75,
        Theorem::T1_3A => low_sum && s2 >= 0.5 + s13,
        Theorem::T1_3B => low_sum && s2 < 0.5 + s13 && sum < 2.0,
        Theorem::T1_3C => low_sum && s2 < 0.5 + s13 && sum == 2.0,
        Theorem::T1_4A => mt_domain && sum < 2.0,
        Theorem::T1_4B => mt_domain && sum == 2.0,
        Theorem::None => false,
    }
}

fn predicted(th: Theorem, s: [f64; 3]) -> (f64, u32) {
    let [s1, s2, s3] = s;
    match th {
        Theorem::T1_1 | Theorem::None => (0.0, 0),
        Theorem::T1_2A | Theorem::T1_3A => (2.0 - 2.0 * (s1 + s3), 1),
        Theorem::T1_2B => (0.5, 0),
        Theorem::T1_3B | Theorem::T1_4A => (2.5 - s1 - s2 - s3, 0),
        Theorem::T1_3C | Theorem::T1_4B => (0.5, 1),
    }
}

#[test]
fn regime_table_is_complete_and_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4E61);
    for _ in 0..10_000 {
        let s = [rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0)];
        for target in [Target::Av, Target::Mt] {
            let r = classify_regime(target, c(s[0], 0.0), c(s[1], 0.0), s[2]);
            let expected: Vec<Theorem> =
                Theorem::ALL.into_iter().filter(|&th| th.target() == Some(target) && holds(th, s)).collect();
            if expected.is_empty() {
                assert_eq!(r.theorem, Theorem::None, "{s:?}");
                continue;
            }
            assert!(holds(r.theorem, s), "{s:?}: {:?} does not re-verify", r.theorem);
            let (e0, l0) = predicted(r.theorem, s);
            assert!((r.error_exponent - e0).abs() < 1e-12 && r.log_power == l0, "{s:?}: {:?}", r.theorem);
            let mut listed = r.alternates.clone();
            listed.push(r.theorem);
            for th in &expected {
                assert!(listed.contains(th), "{s:?}: {th:?} holds but is not recorded");
                let (e, l) = predicted(*th, s);
                // the winner is the smallest (exponent, log power) pair
                let tie = (r.error_exponent - e).abs() < 1e-12;
                assert!(r.error_exponent < e || (tie && r.log_power <= l), "{s:?}: {:?} beats {th:?}", r.theorem);
            }
            assert_eq!(listed.len(), expected.len());
        }
    }
}

#[test]
fn regime_examples() {
    let r = classify_regime(Target::Av, c(0.3, 0.0), c(0.8, 0.0), 0.6);
    assert_eq!(r.theorem, Theorem::T1_3B);
    assert!((r.error_exponent - 0.8).abs() < 1e-12);
    assert_eq!(classify_regime(Target::Av, c(0.1, 0.0), c(0.1, 0.0), 0.1).theorem, Theorem::None);
    assert_eq!(classify_regime(Target::Mt, c(0.55, 0.0), c(0.55, 0.0), 0.45).theorem, Theorem::T1_4A);
}

#[test]
fn absolute_region_run_matches_square_series() {
    let p = plan(Target::Av, [2.0, 2.0, 2.0], &LADDER, Evaluator::Direct, 1e-10);
    let r = mean_square(&p).unwrap();
    assert_report_invariants(&r);
    let last = r.coefficient_estimates[3];
    assert!((last - r.zeta_sq_ref).abs() <= 0.05 * r.zeta_sq_ref);
    assert!(r.fitted_exponent.unwrap() <= 0.3);
    assert_stable(&r, &mean_square(&doubled(&p)).unwrap());
}

#[test]
fn continued_region_runs_are_stable_under_panel_doubling() {
    for (target, s) in [(Target::Av, [0.5, 1.6, 0.4]), (Target::Mt, [0.55, 0.55, 0.45])] {
        let p = plan(target, s, &LADDER, Evaluator::SecondApprox, 1e-10);
        let r = mean_square(&p).unwrap();
        assert_report_invariants(&r);
        assert_stable(&r, &mean_square(&doubled(&p)).unwrap());
    }
}

#[test]
fn empty_range_integrates_to_zero() {
    let p = plan(Target::Av, [2.0, 2.0, 2.0], &[2.0], Evaluator::Direct, 1e-8);
    let r = mean_square(&p).unwrap();
    assert_eq!(r.i_values, vec![(2.0, 0.0)]);
    assert_eq!(r.fitted_exponent, None);
}

#[test]
fn direct_and_second_routes_agree_within_budgets() {
    let samples = [10.0, 20.0, 40.0];
    let d = mean_square(&plan(Target::Av, [2.0, 2.0, 2.0], &samples, Evaluator::Direct, 1e-10)).unwrap();
    let s = mean_square(&plan(Target::Av, [2.0, 2.0, 2.0], &samples, Evaluator::SecondApprox, 1e-10)).unwrap();
    for (k, t) in samples.iter().enumerate() {
        let gap = (d.i_values[k].1 - s.i_values[k].1).abs();
        assert!(gap <= d.evaluation_budgets[k] + s.evaluation_budgets[k], "T = {t}");
    }
}

/// Composite Simpson on `[2, T]` with step `h` of the relation route
/// `2^{-s3}ζ(s1+s2+s3) + ζ_AV(s1,s2,s3) + ζ_AV(s2,s1,s3)`.
fn relation_route_mean_square(t_end: f64, h: f64) -> f64 {
    let two = c(2.0, 0.0);
    let f = |t: f64| -> f64 {
        let a = ZetaArgs::new(two, two, c(2.0, t)).unwrap();
        let z = riemann_zeta_em(a.sum(), 64, 8).unwrap().value;
        let av = av2_accelerated(&a, 1e-13, None).unwrap().value;
        let va = av2_accelerated(&a.swapped(), 1e-13, None).unwrap().value;
        ((-a.s3() * 2f64.ln()).exp() * z + av + va).norm_sqr()
    };
    let n = (((t_end - 2.0) / h).ceil() as usize).next_multiple_of(2);
    let h = (t_end - 2.0) / n as f64;
    let mut acc = f(2.0) + f(t_end);
    for k in 1..n {
        acc += if k % 2 == 1 { 4.0 } else { 2.0 } * f(2.0 + k as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn mordell_tornheim_run_matches_relation_route() {
    let samples = [10.0, 20.0];
    let r = mean_square(&plan(Target::Mt, [2.0, 2.0, 2.0], &samples, Evaluator::Direct, 1e-10)).unwrap();
    for (k, &t) in samples.iter().enumerate() {
        let oracle = relation_route_mean_square(t, 0.02);
        let coarse = relation_route_mean_square(t, 0.04);
        let quad_err = (oracle - coarse).abs();
        let gap = (r.i_values[k].1 - oracle).abs();
        assert!(gap <= r.evaluation_budgets[k] + 16.0 * quad_err + 1e-12 * oracle, "T = {t}: gap {gap:e}");
    }
}

#[test]
fn path_errors_name_the_first_failing_t3() {
    // s1 + s2 + s3 = 2 at t3 = 10
    let p = MeanSquarePlan::new(
        Target::Av,
        c(0.6, 0.0),
        c(0.8, -10.0),
        0.6,
        vec![50.0],
        Evaluator::SecondApprox,
        QuadratureSpec::default(),
        1e-8,
    )
    .unwrap();
    match mean_square(&p) {
        Err(ZetaError::Path { t3, .. }) => assert!((t3 - 10.0).abs() < 1e-2, "t3 = {t3}"),
        other => panic!("expected a path error, got {other:?}"),
    }
}

#[test]
fn fit_examples() {
    let ts: [f64; 6] = [50.0, 100.0, 200.0, 400.0, 800.0, 1600.0];
    let pure: Vec<(f64, f64)> = ts.iter().map(|&t| (t, 3.0 * t.sqrt())).collect();
    assert!((fit_power_law(&pure, 0.0).unwrap().exponent - 0.5).abs() < 1e-10);
    let logged: Vec<(f64, f64)> = ts.iter().map(|&t| (t, t.powf(0.8) * t.ln())).collect();
    assert!((fit_power_law(&logged, 1.0).unwrap().exponent - 0.8).abs() < 1e-6);
    assert!(matches!(fit_power_law(&pure[..1], 0.0), Err(ZetaError::InsufficientData(_))));

    // a run with three T values is too short for a growth fit
    let r = mean_square(&plan(Target::Av, [2.0, 2.0, 2.0], &[10.0, 20.0, 40.0], Evaluator::Direct, 1e-8)).unwrap();
    assert!(matches!(residual_exponent_fit(&r), Err(ZetaError::InsufficientData(_))));
}

/// `∫_2^T |Σ a_n n^{it}|² dt` in closed form.
fn mv_exact(terms: &[(u64, Complex64)], t_end: f64) -> f64 {
    let mut total = (t_end - 2.0) * terms.iter().map(|t| t.1.norm_sqr()).sum::<f64>();
    for &(m, a) in terms {
        for &(n, b) in terms {
            if m != n {
                let w = (m as f64 / n as f64).ln();
                let phase = |t: f64| Complex64::from_polar(1.0, w * t);
                total += (a * b.conj() * (phase(t_end) - phase(2.0)) / Complex64::new(0.0, w)).re;
            }
        }
    }
    total
}

#[test]
fn mean_value_checks() {
    let quad = QuadratureSpec::default();
    let kappa = Constants::builtin().mv_kappa;

    let terms: Vec<(u64, Complex64)> = (1..=10u64).map(|n| (n, c((n as f64).powi(-2), 0.0))).collect();
    let poly = DirichletPoly::new(terms.clone()).unwrap();
    let check = mv_check(&poly, 100.0, &quad).unwrap();
    assert!((check.lhs - mv_exact(&terms, 100.0)).abs() < 1e-10);
    let cubes: f64 = (1..=10).map(|n| (n as f64).powi(-3)).sum();
    assert!((check.lhs - check.main).abs() <= kappa * cubes);

    let single = mv_check(&DirichletPoly::new(vec![(1, c(1.0, 0.0))]).unwrap(), 100.0, &quad).unwrap();
    assert_eq!((single.lhs, single.main, single.budget), (98.0, 100.0, 1.0));
    assert!(single.passes(kappa));
    let empty = mv_check(&DirichletPoly::new(Vec::new()).unwrap(), 100.0, &quad).unwrap();
    assert_eq!((empty.lhs, empty.main, empty.budget), (0.0, 0.0, 0.0));
    assert!(empty.passes(kappa));

    let mut rng = ChaCha8Rng::seed_from_u64(0x3E);
    for _ in 0..50 {
        let mut terms: Vec<(u64, Complex64)> = Vec::new();
        for n in 1..=32u64 {
            if rng.gen_bool(0.5) {
                terms.push((n, Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..6.3))));
            }
        }
        let poly = DirichletPoly::new(terms.clone()).unwrap();
        let check = mv_check(&poly, 100.0, &quad).unwrap();
        assert!((check.lhs - mv_exact(&terms, 100.0)).abs() <= 1e-9 * check.lhs.max(1.0));
        assert!(check.passes(kappa));
    }
}

#[test]
fn report_round_trips_through_json_and_csv_is_well_formed() {
    let p = plan(Target::Mt, [0.55, 0.55, 0.45], &LADDER, Evaluator::SecondApprox, 1e-8);
    let r = mean_square(&p).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    let back: MeanSquareReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);

    let csv = r.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("T,I,I_over_T,zeta_sq_ref,residual"));
    for (line, &(t, i)) in lines.zip(&r.i_values) {
        let cols: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(cols.len(), 5);
        assert_eq!((cols[0], cols[1]), (t, i));
    }
}
