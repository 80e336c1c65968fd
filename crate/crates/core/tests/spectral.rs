use std::f64::consts::FRAC_PI_2;

use dini::{
    dini, dini_zero, eta2_exact, g_pair, logderiv_power_series, logderiv_series,
    rayleigh_enclosure, weierstrass_product, EvalPolicy, Error, Order,
};

fn o(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

/// η_2, …, η_{2M} from the Taylor coefficients of g_ν′ in y = x²:
/// g_ν′ = Σ c_k y^k with c_k = (2k+1)(−1/4)^k / (k! (ν+1)_k), and
/// −ln g_ν′ = Σ η_{2m} y^m / m, so Newton's identities give
/// η_{2m} = −m c_m − Σ_{i<m} c_i η_{2(m−i)}.
fn newton_etas(nu: f64, m_max: usize) -> Vec<f64> {
    let mut c = vec![1.0];
    let mut t = 1.0;
    for k in 1..=m_max {
        let kf = k as f64;
        t *= -0.25 / (kf * (nu + kf));
        c.push((2.0 * kf + 1.0) * t);
    }
    let mut eta = vec![0.0; m_max + 1];
    for m in 1..=m_max {
        let mut v = -(m as f64) * c[m];
        for i in 1..m {
            v -= c[i] * eta[m - i];
        }
        eta[m] = v;
    }
    eta
}

#[test]
fn newton_oracle_reproduces_known_values() {
    let e = newton_etas(0.5, 3);
    assert!((e[1] - 0.5).abs() < 1e-15);
    assert!((e[2] - 1.0 / 6.0).abs() < 1e-15);
    assert!((e[3] - 1.0 / 15.0).abs() < 1e-15);
}

#[test]
fn enclosures_contain_newton_values() {
    for nu in [-0.7, 0.0, 1.3, 4.0] {
        let oracle = newton_etas(nu, 8);
        let a1 = dini_zero(o(nu), 1).unwrap();
        for m in 1..=8u32 {
            let width = if m == 1 { 1e-7 } else { 1e-10 * a1.powi(-2 * m as i32) };
            let e = rayleigh_enclosure(o(nu), m, width).unwrap();
            let v = oracle[m as usize];
            let slack = 1e-13 * v;
            assert!(e.lower - slack <= v && v <= e.upper + slack, "nu = {nu}, m = {m}: {e:?} vs {v}");
        }
        assert!((oracle[1] - eta2_exact(o(nu))).abs() < 1e-15 * oracle[1]);
    }
}

#[test]
fn unreachable_width_is_reported() {
    match rayleigh_enclosure(o(0.0), 1, 1e-14) {
        Err(Error::Unreachable { requested, best }) => {
            assert_eq!(requested, 1e-14);
            assert!(best > 1e-14 && best < 1e-9);
        }
        other => panic!("expected Unreachable, got {other:?}"),
    }
}

#[test]
fn product_tail_bound_holds() {
    let p = EvalPolicy::default();
    for nu in [-0.9, 0.0, 3.3] {
        let a2 = dini_zero(o(nu), 2).unwrap();
        for n in [5, 50, 500] {
            for k in 1..20 {
                let x = a2 * k as f64 / 20.0;
                let v = weierstrass_product(o(nu), x, n).unwrap();
                let d = dini(o(nu), x, &p).unwrap();
                let tb = v.tail_bound.unwrap();
                assert!((v.value - d).abs() <= tb * d.abs() + 1e-13, "nu = {nu}, N = {n}, x = {x}");
            }
        }
    }
}

#[test]
fn logderiv_series_matches_closed_forms() {
    for k in 1..30 {
        let x = 1.4 * k as f64 / 30.0;
        let v = logderiv_series(o(0.5), x, 3000).unwrap();
        assert!((v + x.tan()).abs() < 1e-8 * (1.0 + x.tan().powi(2)), "x = {x}");
        // ν = −1/2: g′ = cos x − x sin x, g″ = −2 sin x − x cos x.
        let (s, c) = x.sin_cos();
        let a1 = dini_zero(o(-0.5), 1).unwrap();
        if x < 0.95 * a1 {
            let exact = (-2.0 * s - x * c) / (c - x * s);
            let v = logderiv_series(o(-0.5), x, 3000).unwrap();
            assert!((v - exact).abs() < 1e-7 * (1.0 + exact.abs()), "x = {x}");
        }
    }
}

#[test]
fn logderiv_series_matches_finite_difference() {
    let p = EvalPolicy::default();
    let h = 1e-5;
    for nu in [-0.3, 1.0, 6.0] {
        for x in [0.4, 1.7, 9.5] {
            let lg = |t: f64| g_pair(o(nu), t, &p).unwrap().g_prime.abs().ln();
            let fd = (lg(x + h) - lg(x - h)) / (2.0 * h);
            match logderiv_series(o(nu), x, 2000) {
                Ok(v) => assert!((v - fd).abs() < 1e-5, "nu = {nu}, x = {x}: {v} vs {fd}"),
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn logderiv_series_is_odd() {
    for x in [0.3, 2.0, 7.7] {
        let a = logderiv_series(o(2.0), x, 500).unwrap();
        let b = logderiv_series(o(2.0), -x, 500).unwrap();
        assert_eq!(a, -b);
    }
}

#[test]
fn power_series_coefficients_and_bound() {
    let p = EvalPolicy::default();
    for nu in [-0.5, 0.0, 2.0] {
        let oracle = newton_etas(nu, 6);
        let a1 = dini_zero(o(nu), 1).unwrap();
        for frac in [-0.6, 0.1, 0.5, 0.9] {
            let x = frac * a1;
            let s = logderiv_power_series(o(nu), x, 30).unwrap();
            for m in 1..=6 {
                assert!((s.coefficients[m - 1] - oracle[m]).abs() <= s.coefficient_widths[m - 1] + 1e-13 * oracle[m]);
            }
            // x d′/d is even in x.
            let ax = x.abs();
            let exact = ax * dini::dini_prime(o(nu), ax, &p).unwrap() / dini(o(nu), ax, &p).unwrap();
            assert!((s.value - exact).abs() <= s.remainder_bound + 1e-12, "nu = {nu}, x = {x}");
        }
    }
}

#[test]
fn power_series_domain() {
    let a1 = dini_zero(o(0.5), 1).unwrap();
    assert!((a1 - FRAC_PI_2).abs() < 1e-14);
    assert!(matches!(logderiv_power_series(o(0.5), a1, 5), Err(Error::Domain(_))));
    assert!(matches!(logderiv_power_series(o(0.5), 0.1, 0), Err(Error::Domain(_))));
}
