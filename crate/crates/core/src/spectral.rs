//! Product and partial-fraction expansions over the Dini zeros and the
//! Rayleigh-type sums η_{2m}(ν) = Σ_n α_{ν,n}^{−2m}.
//!
//! Tails over n > N are enclosed with the interlacing j_{ν,n−1} < α_{ν,n} < j_{ν,n}:
//!
//! ```text
//! Σ_{n>N} j_{ν,n}^{−2m}  ≤  Σ_{n>N} α_{ν,n}^{−2m}  ≤  Σ_{n≥N} j_{ν,n}^{−2m}
//! ```
//!
//! The Bessel-zero sums are taken from the zero table up to an index K and
//! beyond it bounded by integral comparison on McMahon's expansion of
//! j_{ν,n}, which at K is accurate far below the enclosure widths used here.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::eval::Order;
use crate::gamma::ln_gamma_unchecked;
use crate::zeros::{cached_table, ZeroKind, MAX_TABLE};

/// Two-sided enclosure of η_{2m}(ν).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayleighEnclosure {
    pub order: Order,
    pub m: u32,
    pub lower: f64,
    pub upper: f64,
    /// Number of Dini zeros summed explicitly.
    pub n_used: usize,
}

impl RayleighEnclosure {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Bounds on a tail sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Tail {
    pub lo: f64,
    pub hi: f64,
}

impl Tail {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// McMahon coefficients a1, a3, a5 with j ≈ β (1 − a1/β² − a3/β⁴ − a5/β⁶).
fn mcmahon_coefficients(nu: f64) -> [f64; 3] {
    let mu = 4.0 * nu * nu;
    let a1 = (mu - 1.0) / 8.0;
    let a3 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * 512.0);
    let a5 = 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * 32768.0);
    [a1, a3, a5]
}

fn beta(nu: f64, t: f64) -> f64 {
    (t + 0.5 * nu - 0.25) * PI
}

fn mcmahon_zero(nu: f64, t: f64) -> f64 {
    let [a1, a3, a5] = mcmahon_coefficients(nu);
    let b = beta(nu, t);
    let w = 1.0 / (b * b);
    b * (1.0 - w * (a1 + w * (a3 + w * a5)))
}

/// First index from which McMahon's expansion is used for the Bessel tail.
fn far_start(nu: f64) -> usize {
    let b_min = 100f64.max(30.0 * (nu.abs() + 1.0));
    (b_min / PI - 0.5 * nu + 0.25).ceil().max(1.0) as usize
}

/// ∫_T^∞ j(t)^{−p} dt with j(t) from McMahon, as (value, error allowance).
fn far_integral(nu: f64, p: f64, t: f64) -> (f64, f64) {
    let [a1, a3, a5] = mcmahon_coefficients(nu);
    // (1 − u)^{−p} with u = a1 w + a3 w² + a5 w³, w = β^{−2}, collected by powers of w.
    let c = [
        1.0,
        p * a1,
        p * a3 + 0.5 * p * (p + 1.0) * a1 * a1,
        p * a5 + p * (p + 1.0) * a1 * a3 + p * (p + 1.0) * (p + 2.0) / 6.0 * a1.powi(3),
    ];
    let b = beta(nu, t);
    let mut total = 0.0;
    let mut last = 0.0;
    for (i, ci) in c.iter().enumerate() {
        let q = p + 2.0 * i as f64;
        last = ci * b.powf(1.0 - q) / ((q - 1.0) * PI);
        total += last;
    }
    (total, last.abs())
}

/// Σ_{n>K} j_{ν,n}^{−p} bounded via the trapezoid (lower) and midpoint (upper)
/// rules, both valid for a convex decreasing summand.
fn far_tail(nu: f64, p: f64, k: usize) -> Tail {
    let k = k as f64;
    let (i_lo, e_lo) = far_integral(nu, p, k + 1.0);
    let (i_hi, e_hi) = far_integral(nu, p, k + 0.5);
    let h_next = mcmahon_zero(nu, k + 1.0).powf(-p);
    Tail {
        lo: i_lo + 0.5 * h_next - e_lo,
        hi: i_hi + e_hi,
    }
}

/// Encloses Σ_{n>N} α_{ν,n}^{−2m}, N ≥ 1.
pub(crate) fn dini_power_tail(order: Order, m: u32, n: usize) -> Result<Tail> {
    let nu = order.nu();
    let p = 2.0 * m as f64;
    let k = n.max(far_start(nu));
    if k > MAX_TABLE {
        return Err(domain(format!("tail needs {k} Bessel zeros (max {MAX_TABLE})")));
    }
    let bessel = cached_table(order, ZeroKind::Bessel, k)?;
    // Σ_{i=N+1}^{K} j_i^{−p}, summed from the small end.
    let mut mid = Dd::ZERO;
    for i in (n + 1..=k).rev() {
        mid = mid + Dd::new(bessel.zero(i).powf(-p));
    }
    let far = far_tail(nu, p, k);
    let mid = mid.to_f64();
    Ok(Tail {
        lo: mid + far.lo,
        hi: mid + bessel.zero(n).powf(-p) + far.hi,
    })
}

fn head_sum(values: &[f64], p: f64) -> f64 {
    let mut acc = Dd::ZERO;
    for v in values.iter().rev() {
        acc = acc + Dd::new(v.powf(-p));
    }
    acc.to_f64()
}

/// η_2(ν) = Σ_n α_{ν,n}^{−2} = 3 / (4(ν + 1)).
pub fn eta2_exact(order: Order) -> f64 {
    0.75 / (order.nu() + 1.0)
}

/// Encloses η_{2m}(ν) to at most `width`, growing the number of explicit
/// zeros until the interlacing tail is narrow enough.
pub fn rayleigh_enclosure(order: Order, m: u32, width: f64) -> Result<RayleighEnclosure> {
    if m == 0 {
        return Err(domain("m must be >= 1"));
    }
    if !width.is_finite() || width <= 0.0 {
        return Err(domain(format!("width must be finite and > 0, got {width}")));
    }
    let p = 2.0 * m as f64;
    // The enclosure width is about j_{ν,N}^{−2m}.
    let j_needed = width.powf(-1.0 / p);
    let guess = (1.05 * j_needed / PI + 0.5 * order.nu().abs() + 2.0).ceil();
    let mut n = (guess.min(MAX_TABLE as f64) as usize).max(8);
    let mut best = f64::INFINITY;
    loop {
        let dini = cached_table(order, ZeroKind::Dini, n)?;
        let head = head_sum(&dini.values()[..n], p);
        let tail = dini_power_tail(order, m, n)?;
        let enc = RayleighEnclosure {
            order,
            m,
            lower: head + tail.lo,
            upper: head + tail.hi,
            n_used: n,
        };
        if enc.width() <= width {
            return Ok(enc);
        }
        best = best.min(enc.width());
        if n >= MAX_TABLE {
            return Err(Error::Unreachable {
                requested: width,
                best,
            });
        }
        n = (2 * n).min(MAX_TABLE);
    }
}

/// Truncated product and a bound on its relative error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductValue {
    pub value: f64,
    /// Bound on |value − d_ν(x)| / |d_ν(x)|; `None` when x ≥ α_{ν,N+1}.
    pub tail_bound: Option<f64>,
}

/// x^ν / (2^ν Γ(ν+1)) · Π_{n≤N} (1 − x²/α²_{ν,n}).
pub fn weierstrass_product(order: Order, x: f64, n_factors: usize) -> Result<ProductValue> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain(format!("x must be finite and >= 0, got {x}")));
    }
    if n_factors == 0 {
        return Err(domain("n_factors must be >= 1"));
    }
    let nu = order.nu();
    if x == 0.0 {
        let value = if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            return Err(domain(format!("product prefactor is unbounded at x = 0 for nu = {nu}")));
        };
        return Ok(ProductValue {
            value,
            tail_bound: Some(0.0),
        });
    }
    let table = cached_table(order, ZeroKind::Dini, n_factors + 1)?;
    let prefactor = (nu * x.ln() - nu * std::f64::consts::LN_2 - ln_gamma_unchecked(nu + 1.0)).exp();
    let mut prod = 1.0;
    for n in 1..=n_factors {
        if table.hits(n, x) {
            prod = 0.0;
            break;
        }
        let r = x / table.zero(n);
        prod *= (1.0 - r) * (1.0 + r);
    }
    let next = table.zero(n_factors + 1);
    let tail_bound = if x < next {
        let u = dini_power_tail(order, 1, n_factors)?.hi;
        let y = (x / next) * (x / next);
        Some((x * x * u / (1.0 - y)).exp_m1())
    } else {
        None
    };
    Ok(ProductValue {
        value: prefactor * prod,
        tail_bound,
    })
}

/// Partial-fraction form of g_ν″(x)/g_ν′(x) = −Σ_n 2x / (α²_{ν,n} − x²) with
/// `n_terms` explicit terms and the midpoint of the enclosed remainder.
pub fn logderiv_series(order: Order, x: f64, n_terms: usize) -> Result<f64> {
    Ok(logderiv_series_detail(order, x, n_terms)?.0)
}

/// Value and half-width of the tail uncertainty.
pub(crate) fn logderiv_series_detail(order: Order, x: f64, n_terms: usize) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(domain(format!("x must be finite, got {x}")));
    }
    if n_terms == 0 {
        return Err(domain("n_terms must be >= 1"));
    }
    let table = cached_table(order, ZeroKind::Dini, n_terms + 1)?;
    let ax = x.abs();
    let mut acc = Dd::ZERO;
    for n in (1..=n_terms).rev() {
        if table.hits(n, ax) {
            return Err(Error::Pole { n, x });
        }
        let a = table.zero(n);
        acc = acc + Dd::new(2.0 * x / ((a - ax) * (a + ax)));
    }
    let next = table.zero(n_terms + 1);
    let mut value = -acc.to_f64();
    let mut half = 0.0;
    if ax < next {
        let t = dini_power_tail(order, 1, n_terms)?;
        let y = (ax / next) * (ax / next);
        let tail = Tail {
            lo: t.lo,
            hi: t.hi / (1.0 - y),
        };
        value -= 2.0 * x * tail.mid();
        half = (x * (tail.hi - tail.lo)).abs();
    }
    Ok((value, half))
}

/// Truncated power series x d_ν′(x)/d_ν(x) = ν − 2 Σ_m η_{2m}(ν) x^{2m}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeriesValue {
    pub value: f64,
    /// Midpoints of η_2, η_4, …, η_{2 m_max}.
    pub coefficients: Vec<f64>,
    /// Widths of the corresponding enclosures.
    pub coefficient_widths: Vec<f64>,
    /// Bound on |value − x d_ν′(x)/d_ν(x)|: omitted orders plus coefficient uncertainty.
    pub remainder_bound: f64,
}

pub fn logderiv_power_series(order: Order, x: f64, m_max: u32) -> Result<PowerSeriesValue> {
    if m_max == 0 {
        return Err(domain("m_max must be >= 1"));
    }
    let a1 = cached_table(order, ZeroKind::Dini, 1)?.zero(1);
    if !x.is_finite() || x.abs() >= a1 {
        return Err(domain(format!(
            "power series needs |x| < alpha_1 = {a1}, got {x}"
        )));
    }
    let x2 = x * x;
    let mut coefficients = Vec::with_capacity(m_max as usize);
    let mut coefficient_widths = Vec::with_capacity(m_max as usize);
    let mut sum = 0.0;
    let mut coeff_err = 0.0;
    let mut xp = 1.0;
    let mut eta2_upper = 0.0;
    for m in 1..=m_max {
        xp *= x2;
        let width = coefficient_width(a1, m);
        let enc = rayleigh_enclosure(order, m, width)?;
        if m == 1 {
            eta2_upper = enc.upper;
        }
        coefficients.push(enc.midpoint());
        coefficient_widths.push(enc.width());
        sum += enc.midpoint() * xp;
        coeff_err += enc.width() * xp;
    }
    // η_{2m} ≤ η_2 α_1^{−2(m−1)}, so the omitted orders form a geometric tail.
    let r = x2 / (a1 * a1);
    let omitted = 2.0 * eta2_upper * x2 * r.powi(m_max as i32) / (1.0 - r);
    Ok(PowerSeriesValue {
        value: order.nu() - 2.0 * sum,
        coefficients,
        coefficient_widths,
        remainder_bound: omitted + coeff_err,
    })
}

/// Target enclosure width for η_{2m}: 1e-9 relative to α_1^{−2m}, never below
/// 1e-9 for m = 1 (the slowest tail).
fn coefficient_width(a1: f64, m: u32) -> f64 {
    let w = 1e-9 * a1.powf(-2.0 * m as f64);
    if m == 1 {
        w.max(1e-9)
    } else {
        w.max(1e-300)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{dini, EvalPolicy};
    use std::f64::consts::FRAC_PI_2;

    fn o(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn eta2_values() {
        assert_eq!(eta2_exact(o(0.0)), 0.75);
        assert_eq!(eta2_exact(o(0.5)), 0.5);
        assert_eq!(eta2_exact(o(2.0)), 0.25);
    }

    #[test]
    fn mcmahon_matches_table_far_out() {
        for nu in [-0.9, 0.0, 2.5, 10.0] {
            let k = far_start(nu);
            let j = crate::zeros::bessel_zero(o(nu), k).unwrap();
            let err = (mcmahon_zero(nu, k as f64) - j).abs() / j;
            assert!(err < 1e-12, "nu = {nu}: {err:e}");
        }
    }

    #[test]
    fn far_tail_encloses_explicit_sum() {
        // Σ_{n>K} j_n^{-4} against a long explicit sum plus a crude remainder.
        let nu = 0.0;
        let k = far_start(nu);
        let t = cached_table(o(nu), ZeroKind::Bessel, 4000).unwrap();
        let explicit: f64 = (k + 1..=4000).map(|i| t.zero(i).powi(-4)).sum();
        let rest = far_tail(nu, 4.0, 4000);
        let tail = far_tail(nu, 4.0, k);
        assert!(tail.lo <= explicit + rest.hi && explicit + rest.lo <= tail.hi);
    }

    #[test]
    fn enclosure_examples() {
        let e = rayleigh_enclosure(o(0.5), 2, 1e-9).unwrap();
        assert!(e.contains(1.0 / 6.0) && e.width() <= 1e-9);
        let e = rayleigh_enclosure(o(0.5), 3, 1e-9).unwrap();
        assert!(e.contains(1.0 / 15.0));
        let e = rayleigh_enclosure(o(0.0), 1, 1e-7).unwrap();
        assert!(e.contains(0.75), "{e:?}");
        assert!(rayleigh_enclosure(o(0.0), 0, 1e-7).is_err());
        assert!(rayleigh_enclosure(o(0.0), 1, 0.0).is_err());
    }

    #[test]
    fn product_examples() {
        let v = weierstrass_product(o(0.0), 0.0, 10).unwrap();
        assert_eq!(v.value, 1.0);
        assert_eq!(v.tail_bound, Some(0.0));
        let v = weierstrass_product(o(0.0), 1.0, 2000).unwrap();
        let d = dini(o(0.0), 1.0, &EvalPolicy::default()).unwrap();
        let tb = v.tail_bound.unwrap();
        assert!((v.value - d).abs() <= tb * d.abs(), "{v:?} vs {d}");
        let v = weierstrass_product(o(0.5), FRAC_PI_2, 5).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(weierstrass_product(o(-0.5), 0.0, 5).is_err());
        let far = weierstrass_product(o(0.0), 20.0, 3).unwrap();
        assert!(far.tail_bound.is_none());
    }

    #[test]
    fn logderiv_examples() {
        let v = logderiv_series(o(0.5), 1.0, 2000).unwrap();
        assert!((v + 1f64.tan()).abs() < 1e-9, "{v}");
        assert_eq!(logderiv_series(o(3.0), 0.0, 10).unwrap(), 0.0);
        match logderiv_series(o(0.5), 3.0 * FRAC_PI_2, 10) {
            Err(Error::Pole { n, .. }) => assert_eq!(n, 2),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn power_series_examples() {
        let v = logderiv_power_series(o(0.5), 0.5, 8).unwrap();
        let exact = 0.5 - 0.5 * 0.5f64.tan();
        assert!((v.value - exact).abs() < 1e-6);
        assert!((v.coefficients[0] - 0.5).abs() < 1e-9);
        assert!((v.coefficients[1] - 1.0 / 6.0).abs() < 1e-9);
        assert!((v.coefficients[2] - 1.0 / 15.0).abs() < 1e-9);
        assert_eq!(logderiv_power_series(o(1.3), 0.0, 4).unwrap().value, 1.3);
        assert!(logderiv_power_series(o(0.5), 1.6, 4).is_err());
    }
}
