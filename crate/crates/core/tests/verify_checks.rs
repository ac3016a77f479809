use hcube_core::constructions::chebyshev_function;
use hcube_core::cube::{CubeFunction, C64};
use hcube_core::interpolation::{default_boundary_samples, make_params, three_lines_check};
use hcube_core::report::{Verdict, VerificationReport};
use hcube_core::spectral::{heat, laplacian_power};
use hcube_core::verify::*;

fn in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(job)
}

fn all_checks() -> Vec<VerificationReport> {
    let corpus = standard_corpus().unwrap();
    let search = SearchConfig { restarts: 4, steps: 100, seed: 9, ..SearchConfig::default() };
    vec![
        check_bm_l2(8, 3, 50, 7).unwrap(),
        search_bernstein_ratio(6, 2, 1, 4.0, 4.0, &search).unwrap(),
        search_bernstein_ratio(4, 2, 1, f64::INFINITY, 0.0, &search).unwrap(),
        check_boolean_l1(&corpus).unwrap(),
        check_corma(&corpus, 1.5).unwrap(),
        check_heat_tail(8, 3, 4.0, 2.0, &[0.1, 1.0], 30, 2).unwrap(),
        check_helo(8, 2, 3.0, 1.0, &[0.5, 1.0], 30, 2).unwrap(),
        check_imaginary_powers(7, 4.0, &[-1.0, 2.0], 1.0, 20, 3).unwrap(),
        check_chebyshev_lower(&[4, 8], 2).unwrap(),
        check_kushilevitz(1).unwrap(),
        check_three_lines(6, 2, 4.0, 4.0, 1, 1.0, 17, 5).unwrap(),
    ]
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let one: Vec<String> = in_pool(1, || all_checks().iter().map(|r| r.body_json()).collect());
    let four: Vec<String> = in_pool(4, || all_checks().iter().map(|r| r.body_json()).collect());
    let again: Vec<String> = in_pool(4, || all_checks().iter().map(|r| r.body_json()).collect());
    assert_eq!(one, four);
    assert_eq!(four, again);
}

#[test]
fn reports_roundtrip_through_json() {
    for r in all_checks() {
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r, "{}", r.check_id);
    }
}

#[test]
fn witnesses_reproduce_observed() {
    let cfg = SearchConfig { restarts: 3, steps: 150, seed: 1, ..SearchConfig::default() };
    for (n, d, k, p, eps) in [
        (6, 2, 1, 4.0, 4.0),
        (5, 3, 2, 1.5, 0.25),
        (4, 3, 1, f64::INFINITY, 0.0),
    ] {
        let r = search_bernstein_ratio(n, d, k, p, eps, &cfg).unwrap();
        let w = r.witness_function().unwrap().unwrap();
        let again = bernstein_ratio(&w, d, k, p, eps).unwrap();
        assert!((again - r.observed).abs() <= 1e-9, "{} vs {}", again, r.observed);
        assert!(r.observed <= again + 1e-12);
    }
    let r = check_heat_tail(8, 3, 4.0, 2.0, &[0.5], 10, 4).unwrap();
    assert!(r.witness_function().unwrap().is_ok());
}

#[test]
fn bm_l2_ten_three() {
    let r = check_bm_l2(10, 3, 500, 7).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn search_beats_chebyshev_and_is_stable_in_k() {
    let cheb = chebyshev_function(8, 2).unwrap();
    let cfg = SearchConfig { seed: 3, ..SearchConfig::default() };
    let mut roots = Vec::new();
    for k in 1..=3 {
        let r = search_bernstein_ratio(8, 2, k, 4.0, 4.0, &cfg).unwrap();
        assert!(r.observed >= bernstein_ratio(&cheb, 2, k, 4.0, 4.0).unwrap());
        roots.push(r.details["implied_constant_lower_bound"].as_f64().unwrap());
    }
    let (lo, hi) = roots.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(hi <= 3.0 * lo);
}

#[test]
fn search_matches_oracle_on_small_cubes() {
    let cfg = SearchConfig { seed: 11, ..SearchConfig::default() };
    for (n, d) in [(2, 2), (3, 2), (4, 3)] {
        let brute = brute_linf_operator_norm(n, d, 1).unwrap();
        let r = search_bernstein_ratio(n, d, 1, f64::INFINITY, 0.0, &cfg).unwrap();
        assert!(r.observed * d as f64 >= 0.95 * brute);
        assert!(r.observed * d as f64 <= brute + 1e-9);
    }
}

#[test]
fn heat_tail_single_character() {
    let n = 6;
    let f = CubeFunction::character(n, (1 << n) - 1).unwrap();
    let prm = make_params(4.0, 2.0, 1).unwrap();
    for t in [0.1, 0.5, 1.0] {
        let lhs = heat(&f, t).unwrap().lp_norm(4.0).unwrap();
        assert!((lhs - (-t * n as f64).exp()).abs() < 1e-12);
        assert!(lhs <= (-(1.0 - prm.theta) * t * n as f64).exp());
    }
    let r = check_heat_tail(10, 4, 4.0, 2.0, &[0.1, 0.5, 1.0], 200, 1).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn helo_constant_and_stability() {
    let f = CubeFunction::constant(5, C64::new(2.0, 0.0)).unwrap();
    let h = heat(&f, 1.0).unwrap();
    assert!((h.lp_norm(4.0).unwrap() - f.lp_norm(2.0).unwrap()).abs() < 1e-12);
    let a = check_helo(10, 3, 2.0, 2.0, &[0.25, 0.5, 1.0], 100, 1).unwrap().observed;
    let b = check_helo(10, 3, 2.0, 2.0, &[0.25, 0.5, 1.0], 100, 2).unwrap().observed;
    assert!(a.is_finite() && b.is_finite());
    assert!((a - b).abs() <= 0.2 * a.abs().max(b.abs()));
}

#[test]
fn imaginary_powers_envelope() {
    let r = check_imaginary_powers(10, 4.0, &[-2.0, -1.0, -0.5, 0.5, 1.0, 2.0], 1.0, 200, 1).unwrap();
    assert_eq!(r.verdict, Verdict::Report);
    assert!(r.observed.is_finite() && r.observed <= 10.0);
    let r = check_imaginary_powers(8, 2.0, &[0.5, 2.0], 1.0, 20, 1).unwrap();
    assert_eq!(r.verdict, Verdict::Report);
}

#[test]
fn kushilevitz_two() {
    let r = check_kushilevitz(2).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.observed, 36.0);
    assert_eq!(r.details["degree"], 9);
}

#[test]
fn three_lines_at_a_character() {
    let prm = make_params(4.0, 4.0, 1).unwrap();
    let w = CubeFunction::character(5, 0b01101).unwrap();
    let r = three_lines_check(&default_boundary_samples(), &w, &w, &prm, 1.0).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn chebyshev_sup_equals_closed_form() {
    for n in [4, 8, 16] {
        let f = chebyshev_function(n, 2).unwrap();
        let r = laplacian_power(&f, 1).lp_norm(f64::INFINITY).unwrap();
        assert!((r - (4.0 - 4.0 / n as f64)).abs() < 1e-12);
    }
}
