use hcube_core::constructions::{compose, sensitivity, Boolean01Function, MultilinearPoly};
use hcube_core::cube::{
    fwht_forward, fwht_inverse, inner_product, CubeData, CubeFunction, Spectrum, C64,
    DEFAULT_DEGREE_TOL,
};
use hcube_core::interpolation::{boundary_bound, build_g_z, make_params, StripPoint};
use hcube_core::spectral::{
    apply_to_function, complex_power, heat, laplacian_by_partials, laplacian_power, project,
    LevelMultiplier, Window,
};
use hcube_core::verify::bernstein_ratio;
use proptest::prelude::*;

fn function(max_n: usize) -> impl Strategy<Value = CubeFunction> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 1 << n).prop_map(move |v| {
            CubeFunction::new(n, v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap()
        })
    })
}

fn real_function(max_n: usize) -> impl Strategy<Value = CubeFunction> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-10.0..10.0f64, 1 << n)
            .prop_map(move |v| CubeFunction::from_real(n, &v).unwrap())
    })
}

fn pair(max_n: usize) -> impl Strategy<Value = (CubeFunction, CubeFunction)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = || {
            prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 1 << n).prop_map(move |v| {
                CubeFunction::new(n, v.into_iter().map(|(re, im)| C64::new(re, im)).collect())
                    .unwrap()
            })
        };
        (one(), one())
    })
}

fn table(max_n: usize) -> impl Strategy<Value = Boolean01Function> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |v| Boolean01Function::new(n, v).unwrap())
    })
}

fn scale(f: &CubeFunction) -> f64 {
    f.lp_norm(f64::INFINITY).unwrap().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_roundtrip(f in function(10)) {
        let back = fwht_inverse(&fwht_forward(&f));
        prop_assert!(back.max_abs_diff(&f) <= 1e-12 * scale(&f));
    }

    #[test]
    fn parseval(f in function(10)) {
        let l2 = f.lp_norm(2.0).unwrap().powi(2);
        prop_assert!((f.spectrum().energy() - l2).abs() <= 1e-10 * l2.max(1.0));
    }

    #[test]
    fn plancherel((f, g) in pair(8)) {
        let direct = inner_product(&f, &g).unwrap();
        let (a, b) = (f.spectrum(), g.spectrum());
        let spectral: C64 = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x * y.conj()).sum();
        prop_assert!((direct - spectral).norm() <= 1e-10 * (1.0 + direct.norm()));
    }

    #[test]
    fn norms_increase_with_exponent(f in function(8)) {
        let ps = [1.0, 1.5, 2.0, 3.0, 4.0, 8.0, f64::INFINITY];
        let norms: Vec<f64> = ps.iter().map(|&p| f.lp_norm(p).unwrap()).collect();
        for w in norms.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn multipliers_are_linear(
        (f, g) in pair(8),
        a in -3.0..3.0f64,
        b in -3.0..3.0f64,
        t in 0.0..2.0f64,
    ) {
        let (ca, cb) = (C64::new(a, 0.5), C64::new(b, -1.0));
        let m = LevelMultiplier::heat(t).unwrap();
        let lhs = apply_to_function(&f.combine(ca, &g, cb).unwrap(), &m).unwrap();
        let rhs = apply_to_function(&f, &m).unwrap()
            .combine(ca, &apply_to_function(&g, &m).unwrap(), cb)
            .unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10 * (scale(&f) + scale(&g)));
    }

    #[test]
    fn heat_semigroup(f in function(8), s in 0.0..2.0f64, t in 0.0..2.0f64) {
        let twice = heat(&heat(&f, s).unwrap(), t).unwrap();
        let once = heat(&f, s + t).unwrap();
        prop_assert!(twice.max_abs_diff(&once) <= 1e-11 * scale(&f));
    }

    #[test]
    fn heat_contracts_every_norm(f in function(8), t in 0.0..3.0f64) {
        let h = heat(&f, t).unwrap();
        for p in [1.0, 2.0, 4.0, f64::INFINITY] {
            prop_assert!(h.lp_norm(p).unwrap() <= f.lp_norm(p).unwrap() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn power_law(
        f in function(7),
        z1 in (0.0..2.0f64, -2.0..2.0f64),
        z2 in (0.0..2.0f64, -2.0..2.0f64),
        gamma in 0.1..2.0f64,
    ) {
        let (z1, z2) = (C64::new(z1.0, z1.1), C64::new(z2.0, z2.1));
        let twice = complex_power(&complex_power(&f, z1, gamma).unwrap(), z2, gamma).unwrap();
        let once = complex_power(&f, z1 + z2, gamma).unwrap();
        let size = scale(&once).max(scale(&twice));
        prop_assert!(twice.max_abs_diff(&once) <= 1e-9 * size);
    }

    #[test]
    fn laplacian_routes_agree(f in function(9)) {
        let spectral = laplacian_power(&f, 1);
        let pointwise = laplacian_by_partials(&f);
        prop_assert!(spectral.max_abs_diff(&pointwise) <= 1e-10 * scale(&f));
    }

    #[test]
    fn projections_split_the_spectrum(f in function(8), d in 0usize..8) {
        let s = f.spectrum();
        prop_assume!(d < s.n());
        let low = project(&s, Window::Low(d)).unwrap();
        let tail = project(&s, Window::Tail(d + 1)).unwrap();
        let sum: Vec<C64> = low.coeffs().iter().zip(tail.coeffs()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(Spectrum::new(s.n(), sum).unwrap(), s);
        prop_assert!(low.degree(DEFAULT_DEGREE_TOL) <= d);
    }

    #[test]
    fn json_roundtrip(f in function(6)) {
        let data = CubeData::Point(f.clone());
        let back = CubeData::from_json(&data.to_json()).unwrap();
        prop_assert_eq!(back.to_function(), f);
    }

    #[test]
    fn ratio_is_scale_invariant(f in real_function(6), lambda in 0.001..10.0f64, k in 1u32..3) {
        prop_assume!(f.lp_norm(2.0).unwrap() > 1e-6);
        let n = f.n();
        let g = f.scaled(C64::new(lambda, 0.0));
        for (p, eps) in [(4.0, 4.0), (1.5, 0.25), (f64::INFINITY, 0.0)] {
            let a = bernstein_ratio(&f, n, k, p, eps).unwrap();
            let b = bernstein_ratio(&g, n, k, p, eps).unwrap();
            prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
        }
    }

    #[test]
    fn exponent_identities(p in 1.01..12.0f64, frac in 0.01..0.99f64, k in 1u32..5) {
        prop_assume!((p - 2.0).abs() > 1e-3);
        let eps = if p < 2.0 { frac * (p - 1.0) } else { frac * 10.0 };
        let prm = make_params(p, eps, k).unwrap();
        prop_assert!((1.0 / p - prm.theta / prm.p_eps - (1.0 - prm.theta) / 2.0).abs() < 1e-12);
        prop_assert!((1.0 / prm.p_dual - (1.0 - prm.theta) / 2.0 - prm.theta / prm.q_dual).abs() < 1e-12);
        prop_assert!((prm.big_n * (1.0 - prm.theta) - k as f64).abs() < 1e-12);
        for u in [0.0, 0.3, 1.7, 5.0] {
            prop_assert_eq!(boundary_bound(u, &prm), boundary_bound(-u, &prm));
        }
    }

    #[test]
    fn g_theta_is_g(g in real_function(6)) {
        let prm = make_params(4.0, 4.0, 1).unwrap();
        let gt = build_g_z(&g, &prm, StripPoint::new(C64::new(prm.theta, 0.0)).unwrap()).unwrap();
        prop_assert!(gt.max_abs_diff(&g) <= 1e-12 * scale(&g));
    }

    #[test]
    fn sensitivity_is_sup_of_laplacian(f in table(7)) {
        let lap = laplacian_power(&f.to_pm1(), 1).lp_norm(f64::INFINITY).unwrap();
        prop_assert!((lap - sensitivity(&f).0 as f64).abs() < 1e-9);
    }

    #[test]
    fn composition_degree_submultiplicative(f in table(3), g in table(3)) {
        let h = compose(&f, &g).unwrap();
        let deg = |t: &Boolean01Function| MultilinearPoly::from_table(t).degree();
        prop_assert!(deg(&h) <= deg(&f) * deg(&g));
        let fourier = h.to_pm1().spectrum().degree(DEFAULT_DEGREE_TOL);
        prop_assert_eq!(fourier, deg(&h));
    }
}
