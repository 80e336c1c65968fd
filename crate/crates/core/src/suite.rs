//! Batch runner that evaluates every checker over a grid of orders and
//! collects the reports under fixed identifiers.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::eval::{dini, EvalPolicy, Order};
use crate::monotonicity::{
    abs_monotone_report, bound_check_parts, corput_check, corput_log_margin, log_concavity_check,
    logderiv_bound_check, nu_monotone_check, trig_case_check, x_logderiv, BoundParts,
    ConcavityTarget, MonotoneTarget,
};
use crate::report::{GridSpec, PropertyReport, ReportBuilder, DEFAULT_TOLERANCE};
use crate::spectral::{eta2_exact, logderiv_power_series, rayleigh_enclosure, weierstrass_product};
use crate::zeros::{dini_zero, nu_zero_monotone_check, positivity_domain};

/// Report identifiers in output order.
pub const SUITE_KEYS: [&str; 15] = [
    "T1", "T2", "T3", "T4", "T5", "T6", "C1", "C2", "E6", "E7", "E8", "E9", "E10", "E11", "E12",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub nu_grid: Vec<f64>,
    /// μ − ν for the two-order properties; 0 checks the equality case.
    pub mu_offsets: Vec<f64>,
    /// Points per grid on each interval.
    pub grid_points: usize,
    /// Random (a, b) pairs per order for the van der Corput checks.
    pub corput_pairs: usize,
    pub seed: u64,
    /// Factors in the truncated product.
    pub product_factors: usize,
    /// Orders of the truncated power series of x d′/d.
    pub series_orders: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            nu_grid: vec![-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0],
            mu_offsets: vec![0.0, 0.5, 2.0],
            grid_points: 20,
            corput_pairs: 200,
            seed: 20_130_601,
            product_factors: 2000,
            series_orders: 40,
        }
    }
}

impl SuiteConfig {
    fn validate(&self) -> Result<(Vec<Order>, Vec<f64>)> {
        if self.nu_grid.is_empty() {
            return Err(domain("nu grid must not be empty"));
        }
        if self.mu_offsets.is_empty() {
            return Err(domain("mu offsets must not be empty"));
        }
        if let Some(d) = self.mu_offsets.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(domain(format!("mu offsets must be finite and >= 0, got {d}")));
        }
        if self.grid_points < 2 {
            return Err(domain("grid_points must be >= 2"));
        }
        if self.product_factors == 0 || self.series_orders == 0 {
            return Err(domain("product_factors and series_orders must be >= 1"));
        }
        let mut nus = self.nu_grid.clone();
        nus.sort_by(f64::total_cmp);
        nus.dedup();
        let orders = nus.iter().map(|&v| Order::new(v)).collect::<Result<Vec<_>>>()?;
        let mut offsets = self.mu_offsets.clone();
        offsets.sort_by(f64::total_cmp);
        offsets.dedup();
        Ok((orders, offsets))
    }
}

/// Reports keyed by identifier, in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub entries: Vec<(String, PropertyReport)>,
}

impl SuiteReport {
    pub fn get(&self, key: &str) -> Option<&PropertyReport> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, r)| r)
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.passed())
    }

    /// 0 when every report passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl Serialize for SuiteReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for (k, r) in &self.entries {
            map.serialize_entry(k, r)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SuiteReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Entries;

        impl<'de> Visitor<'de> for Entries {
            type Value = SuiteReport;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from identifiers to reports")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> std::result::Result<SuiteReport, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = m.next_entry::<String, PropertyReport>()? {
                    entries.push((k, v));
                }
                Ok(SuiteReport { entries })
            }
        }

        d.deserialize_map(Entries)
    }
}

/// `points` equally spaced interior points of (lo, hi).
fn interior(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (1..=points)
        .map(|k| lo + (hi - lo) * k as f64 / (points + 1) as f64)
        .collect()
}

fn first_component_grid(nu: Order, points: usize) -> Result<GridSpec> {
    let a1 = dini_zero(nu, 1)?;
    let pts = interior(0.0, a1, points);
    Ok(GridSpec::new("interior of (0, alpha_1)", pts[0], pts[points - 1], points))
}

/// Compares the truncated product with `factors` factors against d_ν at each
/// point: |product − d| ≤ max(1e-8, tail_bound · |d|).
pub fn product_check(nu: Order, factors: usize, points: &[f64]) -> Result<PropertyReport> {
    let policy = EvalPolicy::default();
    let mut b = ReportBuilder::new("truncated product reproduces d_nu", DEFAULT_TOLERANCE);
    b.param("nu", nu.nu()).param("factors", factors as f64);
    for &x in points {
        let d = dini(nu, x, &policy)?;
        let pv = weierstrass_product(nu, x, factors)?;
        let allowed = match pv.tail_bound {
            Some(tb) => 1e-8f64.max(tb * d.abs()),
            None => f64::NAN,
        };
        b.record("|product - d| within tail bound", x, pv.value, d, allowed - (pv.value - d).abs());
    }
    Ok(b.finish(GridSpec::of_points("sample points", points)))
}

/// Checks that the η_2 enclosure contains 3/(4(ν+1)) and that η_2, …, η_{2 m_max}
/// have positive lower bounds.
pub fn eta_check(nu: Order, m_max: u32) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new("zero sums eta_2m", DEFAULT_TOLERANCE);
    let exact = eta2_exact(nu);
    b.param("nu", nu.nu()).param("closed_form", exact);
    let e = rayleigh_enclosure(nu, 1, 1e-7)?;
    b.param("eta2_lower", e.lower).param("eta2_upper", e.upper);
    b.record(
        "eta_2 enclosure contains 3/(4(nu+1))",
        nu.nu(),
        exact,
        e.midpoint(),
        (exact - e.lower).min(e.upper - exact),
    );
    let a1 = dini_zero(nu, 1)?;
    for m in 1..=m_max {
        let e = rayleigh_enclosure(nu, m, 1e-9 * a1.powi(-2 * m as i32))?;
        let label = format!("eta_{} > 0", 2 * m);
        b.record(&label, m as f64, e.lower, 0.0, if e.lower > 0.0 { e.lower } else { -1.0 });
    }
    Ok(b.finish(GridSpec::new("orders m", 1.0, m_max as f64, m_max as usize)))
}

/// Compares the power series of x d_ν′/d_ν truncated after `orders` terms
/// with the Bessel-recurrence value, allowing the reported remainder bound.
pub fn power_series_check(nu: Order, orders: u32, points: &[f64]) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new("power series of x d'/d", DEFAULT_TOLERANCE);
    b.param("nu", nu.nu()).param("orders", orders as f64);
    for &x in points {
        let s = logderiv_power_series(nu, x, orders)?;
        let exact = x_logderiv(nu, x.abs())?;
        let allowed = s.remainder_bound + 1e-12 * (1.0 + exact.abs());
        b.record("series within remainder bound", x, s.value, exact, allowed - (s.value - exact).abs());
    }
    Ok(b.finish(GridSpec::of_points("sample points", points)))
}

fn first_zero_report(orders: &[Order]) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new("alpha_1 >= sqrt(4(nu+1)/3)", DEFAULT_TOLERANCE);
    let mut nus = Vec::new();
    for &o in orders {
        let a1 = dini_zero(o, 1)?;
        b.record_ge("first zero lower bound", o.nu(), a1, (4.0 * (o.nu() + 1.0) / 3.0).sqrt());
        nus.push(o.nu());
    }
    Ok(b.finish(GridSpec::of_points("orders nu", &nus)))
}

/// Random same-component pairs from the first three components.
fn random_pairs(nu: Order, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(f64, f64)>> {
    let dom = positivity_domain(nu, 3)?;
    Ok((0..count)
        .map(|_| {
            let iv = dom.intervals[rng.random_range(0..3)];
            let a = iv.lo + iv.width() * rng.random_range(0.001..0.999);
            let b = iv.lo + iv.width() * rng.random_range(0.001..0.999);
            (a, b)
        })
        .collect())
}

/// Runs every checker and returns the reports under [`SUITE_KEYS`].
pub fn report_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (orders, offsets) = cfg.validate()?;
    let p = cfg.grid_points;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let pairs: Vec<(Order, Order)> = orders
        .iter()
        .flat_map(|&nu| offsets.iter().map(move |&d| (nu, d)))
        .map(|(nu, d)| Ok((nu, Order::new(nu.nu() + d)?)))
        .collect::<Result<_>>()?;

    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    let mut t4 = Vec::new();
    let mut t5 = Vec::new();
    let mut c1 = Vec::new();
    let mut e6 = Vec::new();
    let mut e7 = Vec::new();
    let mut e8 = Vec::new();
    let mut e9 = Vec::new();
    let mut e10 = Vec::new();
    let mut e11 = Vec::new();
    let mut e12 = Vec::new();

    for &nu in &orders {
        t1.push(product_check(nu, cfg.product_factors, &interior(0.0, dini_zero(nu, 3)?, 50))?);

        let a1 = dini_zero(nu, 1)?;
        let sq_grid = GridSpec::new("[0, 0.95 alpha_1^2]", 0.0, 0.95 * a1 * a1, p);
        t2.push(abs_monotone_report(MonotoneTarget::Q, nu, nu, &sq_grid, 6)?);

        for comp in 0..3 {
            if nu.nu() >= 0.0 {
                t3.push(log_concavity_check(ConcavityTarget::Dini, nu, comp, p)?);
            }
            t4.push(log_concavity_check(ConcavityTarget::GPrime, nu, comp, p)?);
        }

        t5.push(eta_check(nu, 6)?);
        e11.push(power_series_check(nu, cfg.series_orders, &interior(0.0, 0.8 * a1, 10))?);

        let grid = first_component_grid(nu, p)?;
        c1.push(bound_check_parts(nu, &grid, BoundParts::All)?);
        e6.push(bound_check_parts(nu, &grid, BoundParts::Dini)?);
        e7.push(bound_check_parts(nu, &grid, BoundParts::Bessel)?);
        e8.push(logderiv_bound_check(nu, &grid)?);

        let mut pts = random_pairs(nu, cfg.corput_pairs, &mut rng)?;
        pts.push((pts[0].0, pts[0].0));
        let mut strict = ReportBuilder::new("equality only at a = b", DEFAULT_TOLERANCE);
        strict.param("nu", nu.nu());
        for &(a, b) in &pts {
            let r = corput_check(nu, a, b)?;
            let margin = r.min_margin.unwrap_or(f64::NAN);
            if a != b {
                strict.record("margin > 0 for a != b", a, margin, 0.0, if margin > 0.0 { margin } else { -1.0 });
                let mut lb = ReportBuilder::new("logarithmic van der Corput form", DEFAULT_TOLERANCE);
                lb.param("nu", nu.nu()).param("a", a).param("b", b);
                lb.record_ge("log slope >= mean log derivative", a, corput_log_margin(nu, a, b)?, 0.0);
                e10.push(lb.finish(GridSpec::of_points("pair (a, b)", &[a, b])));
            } else {
                strict.record("margin = 0 for a = b", a, margin, 0.0, -margin.abs());
            }
            e9.push(r);
        }
        let xs: Vec<f64> = pts.iter().map(|q| q.0).collect();
        e9.push(strict.finish(GridSpec::of_points("pair left ends", &xs)));
    }

    for &(nu, mu) in &pairs {
        let a1 = dini_zero(nu, 1)?;
        let sq_grid = GridSpec::new("[0, 0.95 alpha_1^2]", 0.0, 0.95 * a1 * a1, p);
        t2.push(abs_monotone_report(MonotoneTarget::F, mu, nu, &sq_grid, 8)?);
        t2.push(abs_monotone_report(MonotoneTarget::GRatio, mu, nu, &sq_grid, 6)?);
        e12.push(nu_monotone_check(nu, mu, &first_component_grid(nu, p)?)?);
    }

    let mut c2 = vec![trig_case_check(0.2, 0.5)?];
    let half = Order::new(-0.5)?;
    for (a, b) in random_pairs(half, cfg.corput_pairs.min(50), &mut rng)? {
        c2.push(trig_case_check(a, b)?);
    }

    let mut t6 = e12.clone();
    t6.push(nu_zero_monotone_check(&orders, 10)?);
    t6.push(first_zero_report(&orders)?);

    let mut t4_all = t4;
    t4_all.extend(e9.iter().cloned());

    let mut t5_all = t5;
    t5_all.extend(e11.iter().cloned());

    let merged = |name: &str, reports: &[PropertyReport]| PropertyReport::merge(name, reports);
    let entries = vec![
        ("T1", merged("product representation of d_nu", &t1)),
        ("T2", merged("absolute monotonicity of f, g_ratio and q", &t2)),
        ("T3", merged("log-concavity of d_nu", &t3)),
        ("T4", merged("log-concavity of g_nu' and van der Corput inequality", &t4_all)),
        ("T5", merged("zero sums and the power series of x d'/d", &t5_all)),
        ("T6", merged("monotonicity in the order", &t6)),
        ("C1", merged("exponential bounds", &c1)),
        ("C2", merged("van der Corput inequality at nu = -1/2", &c2)),
        ("E6", merged("exponential bound for d_nu", &e6)),
        ("E7", merged("exponential bound for J_nu", &e7)),
        ("E8", merged("x d'/d below nu", &e8)),
        ("E9", merged("van der Corput inequality", &e9)),
        ("E10", merged("logarithmic van der Corput form", &e10)),
        ("E11", merged("power series of x d'/d", &e11)),
        ("E12", merged("Dini quotients increase with the order", &e12)),
    ];
    Ok(SuiteReport {
        entries: entries.into_iter().map(|(k, r)| (k.to_string(), r)).collect(),
    })
}
