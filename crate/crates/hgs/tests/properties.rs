use num_complex::Complex64;
use proptest::prelude::*;

use hgs::closed_forms::{g1, l1_closed};
use hgs::format::fmt_g;
use hgs::hopf::{hopf_frame, lyapunov_from_frame, ClosedForms, DEGENERACY_TOL};
use hgs::model::{derived_frequencies, equilibrium, jacobian, rescale_physical, vector_field};
use hgs::numeric::{cubic_roots, hermitian_inner, solve3, CMat3, CVec3};
use hgs::stability::{charpoly, classify, epsilon_critical, routh_hurwitz, vyshnegradskii, Classification};
use hgs::{DimensionlessParams, PhysicalParams, State};

fn zeta() -> impl Strategy<Value = DimensionlessParams> {
    (0.05..0.95f64, 0.1..5.0f64, 0.01..5.0f64, 0.0..3.0f64, 0.0..0.95f64)
        .prop_map(|(b, a, e, r, k)| DimensionlessParams::new(b, a, e, r, k).unwrap())
}

fn critical() -> impl Strategy<Value = DimensionlessParams> {
    zeta().prop_map(|z| z.at_critical_damping())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn cvec() -> impl Strategy<Value = CVec3> {
    (complex(), complex(), complex()).prop_map(|(a, b, c)| CVec3::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cubic_vieta(c2 in -10.0..10.0f64, c1 in -10.0..10.0f64, c0 in -10.0..10.0f64) {
        let r = cubic_roots(c2, c1, c0);
        let sum = r[0] + r[1] + r[2];
        let prod = r[0] * r[1] * r[2];
        prop_assert!((sum + c2).norm() <= 1e-9 * c2.abs().max(1.0));
        prop_assert!((prod + c0).norm() <= 1e-9 * c0.abs().max(1.0));
    }

    #[test]
    fn solve_multiply_back(b in cvec(), off in prop::array::uniform9(complex())) {
        // diagonally dominant, so well conditioned
        let mut m = CMat3::from_fn(|i, j| off[3 * i + j] / 3.0);
        for i in 0..3 {
            m[(i, i)] += Complex64::new(4.0, 0.0);
        }
        let x = solve3(&m, &b).unwrap();
        let res = (m * x - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(res < 1e-12 * (1.0 + b.iter().map(|z| z.norm()).fold(0.0, f64::max)));
    }

    #[test]
    fn inner_product_of_vector_with_itself(q in cvec()) {
        let s = hermitian_inner(&q, &q);
        prop_assert!(s.im == 0.0 || s.im.abs() < 1e-15 * s.re);
        prop_assert!(s.re >= 0.0);
    }

    #[test]
    fn equilibrium_is_a_zero(z in zeta()) {
        prop_assert!(vector_field(&equilibrium(&z), &z).unwrap().norm() < 1e-12);
    }

    #[test]
    fn classify_routh_roots_agree(z in zeta()) {
        let v = classify(&z);
        prop_assume!(v.classification != Classification::Critical);
        let rh = routh_hurwitz(&charpoly(&z));
        let roots_stable = v.roots.iter().all(|r| r.re < 0.0);
        prop_assert_eq!(v.classification == Classification::AsymptoticallyStable, rh);
        prop_assert_eq!(rh, roots_stable);
    }

    #[test]
    fn hurwitz_gap_slope_is_p2(z in zeta(), de in 0.01..1.0f64) {
        let a = charpoly(&z);
        let b = charpoly(&z.with_epsilon(z.epsilon() + de).unwrap());
        let slope = (b.hurwitz_gap() - a.hurwitz_gap()) / de;
        prop_assert!(b.hurwitz_gap() > a.hurwitz_gap());
        prop_assert!((slope - a.p2).abs() < 1e-9 * a.p2.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_equivalence(z in critical()) {
        let frame = hopf_frame(&z).unwrap();
        let rep = lyapunov_from_frame(&frame, &ClosedForms::new(&z), DEGENERACY_TOL).unwrap();
        let closed = l1_closed(z.beta(), z.alpha(), z.rho(), z.kappa());
        prop_assert!((rep.l1 - closed).abs() / rep.l1.abs().max(1e-12) < 1e-6);
        prop_assert!(rep.h20_residual < 1e-10);
        prop_assert!(rep.fredholm_residual < 1e-10);
    }

    #[test]
    fn gauge_scales_g21_by_modulus_squared(z in critical(), c in complex()) {
        prop_assume!(c.norm() > 0.1);
        let frame = hopf_frame(&z).unwrap();
        let forms = ClosedForms::new(&z);
        let a = lyapunov_from_frame(&frame, &forms, DEGENERACY_TOL).unwrap();
        let b = lyapunov_from_frame(&frame.regauged(c), &forms, DEGENERACY_TOL).unwrap();
        let want = a.g21 * c.norm_sqr();
        prop_assert!((b.g21 - want).norm() <= 1e-9 * want.norm().max(1e-12));
        prop_assert_eq!(a.classification, b.classification);
    }

    #[test]
    fn jacobian_matches_finite_differences(
        z in zeta(),
        x in 0.1..1.4f64,
        y in -1.0..1.0f64,
        w in 0.0..3.0f64,
    ) {
        let s = State::new(x, y, w);
        let j = jacobian(&s, &z).unwrap();
        let h = 1e-6;
        for k in 0..3 {
            let mut e = State::zeros();
            e[k] = h;
            let d = (vector_field(&(s + e), &z).unwrap() - vector_field(&(s - e), &z).unwrap()) / (2.0 * h);
            for i in 0..3 {
                prop_assert!((j[(i, k)] - d[i]).abs() < 1e-6, "entry ({}, {})", i, k);
            }
        }
    }

    #[test]
    fn rho_zero_gives_omega0_equal_omega1(b in 0.05..0.95f64, a in 0.1..5.0f64, k in 0.0..0.95f64) {
        let f = derived_frequencies(&DimensionlessParams::new(b, a, 1.0, 0.0, k).unwrap());
        prop_assert!((f.omega0 - f.omega1).abs() <= 4.0 * f64::EPSILON * f.omega1);
    }

    #[test]
    fn vyshnegradskii_criterion_is_eps_over_eps_c(
        m in 0.1..5.0f64, l in 0.1..2.0f64, big_l in 0.0..1.0f64, k in 0.0..20.0f64,
        b in 0.01..5.0f64, c in 0.5..5.0f64, mu in 0.5..5.0f64, inertia in 0.1..10.0f64, f in 0.05..0.95f64,
    ) {
        let p = PhysicalParams { m, l, big_l, k, b, g: 9.81, c, mu, inertia, load: f * mu };
        let v = vyshnegradskii(&p).unwrap();
        let z = rescale_physical(&p).unwrap().params;
        let want = z.epsilon() / epsilon_critical(&z);
        prop_assert!((v.criterion - want).abs() < 1e-10 * want);
    }

    #[test]
    fn fmt_g_round_trips_to_12_digits(x in prop::num::f64::NORMAL) {
        let back: f64 = fmt_g(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs());
    }
}

#[test]
fn g1_has_one_root_for_small_alpha() {
    for alpha in [0.0, 1e-4, 1e-3, 1e-2, 5e-2] {
        let n = 4000;
        let signs: Vec<bool> = (1..n).map(|i| g1(i as f64 / n as f64, alpha, 0.0) > 0.0).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1, "alpha {alpha}");
    }
    let root = |alpha: f64| hgs::closed_forms::bisect(|b| g1(b, alpha, 0.0), 0.05, 0.99, 80).unwrap();
    let limit = (3.0f64 / 5.0).sqrt();
    assert!((root(1e-2) - limit).abs() > (root(1e-3) - limit).abs());
    assert!((root(1e-4) - limit).abs() < 1e-6);
}
