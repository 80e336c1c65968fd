use std::f64::consts::PI;

use approx::assert_relative_eq;
use dini::{
    bessel_j, bessel_j_prime, dini, dini_prime, g_pair, gamma, EvalPolicy, Error, Order,
};
use proptest::prelude::*;

fn o(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

fn p() -> EvalPolicy {
    EvalPolicy::default()
}

/// Bessel's integral J_n(x) = (1/π) ∫_0^π cos(nτ − x sin τ) dτ. The trapezoid
/// rule converges geometrically for this periodic integrand.
fn bessel_integral(n: u32, x: f64) -> f64 {
    let m = 4000;
    let h = PI / m as f64;
    let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
    let mut s = 0.5 * (f(0.0) + f(PI));
    for k in 1..m {
        s += f(k as f64 * h);
    }
    s * h / PI
}

#[test]
fn integer_orders_match_bessel_integral() {
    for n in [0u32, 1, 2, 5, 11, 25, 38] {
        for x in [0.1, 1.0, 4.5, 10.0, 29.0, 41.0, 47.5, 55.0, 63.0, 100.0, 250.0] {
            let j = bessel_j(o(n as f64), x, &p()).unwrap();
            let r = bessel_integral(n, x);
            assert!((j - r).abs() < 2e-14, "n = {n}, x = {x}: {j} vs {r}");
        }
    }
}

#[test]
fn spherical_order_closed_form() {
    for k in 1..200 {
        let x = 0.37 * k as f64;
        let (s, c) = x.sin_cos();
        let exact = (2.0 / (PI * x)).sqrt() * (s / x - c);
        let j = bessel_j(o(1.5), x, &p()).unwrap();
        assert!((j - exact).abs() < 1e-14 * (1.0 + exact.abs()), "x = {x}");
    }
}

#[test]
fn three_term_recurrence() {
    for nu in [0.3, 1.7, 4.25] {
        for k in 1..120 {
            let x = 0.55 * k as f64;
            let jm = bessel_j(o(nu - 1.0), x, &p()).unwrap();
            let j = bessel_j(o(nu), x, &p()).unwrap();
            let jp = bessel_j(o(nu + 1.0), x, &p()).unwrap();
            let scale = jm.abs() + jp.abs() + (2.0 * nu / x * j).abs();
            assert!((jm + jp - 2.0 * nu / x * j).abs() < 1e-14 * scale.max(1e-3), "nu = {nu}, x = {x}");
        }
    }
}

#[test]
fn dini_definitions_agree() {
    for nu in [-0.7, 0.0, 0.5, 2.2] {
        for k in 1..60 {
            let x = 0.7 * k as f64;
            let d = dini(o(nu), x, &p()).unwrap();
            let j = bessel_j(o(nu), x, &p()).unwrap();
            let jp = bessel_j_prime(o(nu), x, &p()).unwrap();
            let alt = (1.0 - nu) * j + x * jp;
            assert!((d - alt).abs() < 1e-13 * (1.0 + x), "nu = {nu}, x = {x}");
        }
    }
}

#[test]
fn dini_prime_matches_finite_difference() {
    let h = 1e-5;
    for nu in [-0.5, 0.0, 1.0, 3.5] {
        for x in [0.3, 1.1, 2.9, 7.4, 18.0, 52.0] {
            let fd = (dini(o(nu), x + h, &p()).unwrap() - dini(o(nu), x - h, &p()).unwrap()) / (2.0 * h);
            let an = dini_prime(o(nu), x, &p()).unwrap();
            assert!((fd - an).abs() < 1e-8, "nu = {nu}, x = {x}: {fd} vs {an}");
        }
    }
}

#[test]
fn reference_values() {
    assert_relative_eq!(dini(o(1.0), 1.0, &p()).unwrap(), 0.325_147_100_813_033_1, max_relative = 1e-14);
    assert_relative_eq!(dini(o(0.0), 1.0, &p()).unwrap(), 0.325_147_100_813_033_1, max_relative = 1e-14);
    assert_eq!(dini(o(0.0), 0.0, &p()).unwrap(), 1.0);
    assert_eq!(dini(o(2.0), 0.0, &p()).unwrap(), 0.0);
    let gp = g_pair(o(-0.5), 0.0, &p()).unwrap();
    assert_eq!((gp.g, gp.g_prime), (0.0, 1.0));
}

#[test]
fn domain_errors() {
    assert!(matches!(Order::new(-1.0), Err(Error::Domain(_))));
    assert!(Order::new(f64::NAN).is_err());
    assert!(matches!(dini(o(-0.5), 0.0, &p()), Err(Error::Domain(_))));
    assert!(bessel_j(o(0.0), -1.0, &p()).is_err());
    assert!(bessel_j(o(0.0), f64::INFINITY, &p()).is_err());
    assert!(EvalPolicy::new(0, 1e-15, 1e-300).is_err());
}

#[test]
fn truncation_is_reported() {
    let tight = EvalPolicy::new(8, 1e-15, 1e-300).unwrap();
    assert!(matches!(dini(o(0.0), 20.0, &tight), Err(Error::Truncation { .. })));
    assert!(dini(o(0.0), 0.5, &tight).is_ok());
}

proptest! {
    #[test]
    fn g_prime_is_normalized_dini(nu in -0.95f64..8.0, x in 0.01f64..70.0) {
        let order = o(nu);
        let gp = g_pair(order, x, &p()).unwrap();
        let d = dini(order, x, &p()).unwrap();
        let c = 2f64.powf(nu) * gamma(nu + 1.0).unwrap() * x.powf(-nu);
        let j = bessel_j(order, x, &p()).unwrap();
        let j1 = bessel_j(order.next(), x, &p()).unwrap();
        let scale = c * (j.abs() + x * j1.abs());
        prop_assert!((gp.g_prime - c * d).abs() <= 1e-12 * scale);
        prop_assert!((gp.g - c * x * j).abs() <= 1e-12 * c * x * j.abs().max(1e-3));
    }

    #[test]
    fn small_argument_limit(nu in -0.95f64..10.0) {
        let gp = g_pair(o(nu), 1e-6, &p()).unwrap();
        prop_assert!((gp.g_prime - 1.0).abs() < 1e-10);
        prop_assert!((gp.g / 1e-6 - 1.0).abs() < 1e-10);
    }
}
