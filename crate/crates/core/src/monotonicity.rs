//! Monotonicity properties and inequalities derived from the product over the
//! Dini zeros, with checkers that evaluate them on grids.
//!
//! All higher derivatives come from exact zero-sum series combined through the
//! Leibniz rule; no finite differences are used here.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::eval::{bessel_j, dini, dini_prime, g_pair, normalized_j, EvalPolicy, Order};
use crate::gamma::gamma_unchecked;
use crate::report::{GridSpec, PropertyReport, ReportBuilder, DEFAULT_TOLERANCE};
use crate::spectral::{dini_power_tail, Tail};
use crate::zeros::{cached_table, positivity_domain, PositivityDomain, ZeroKind, ZeroTable};

/// Number of zeros summed explicitly when a caller does not choose.
pub const DEFAULT_TERMS: usize = 2000;

fn table(order: Order, n_terms: usize) -> Result<Arc<ZeroTable>> {
    if n_terms == 0 {
        return Err(domain("n_terms must be >= 1"));
    }
    cached_table(order, ZeroKind::Dini, n_terms + 1)
}

/// Accepts 0 ≤ x < α²_{ν,1}.
fn check_square_arg(order: Order, x: f64) -> Result<()> {
    let a1 = cached_table(order, ZeroKind::Dini, 1)?.zero(1);
    if !x.is_finite() || x < 0.0 || x >= a1 * a1 {
        return Err(domain(format!(
            "x must lie in [0, alpha_1^2) = [0, {}) for nu = {order}, got {x}",
            a1 * a1
        )));
    }
    Ok(())
}

fn check_pair(mu: Order, nu: Order) -> Result<()> {
    if mu.nu() < nu.nu() {
        return Err(domain(format!("requires mu >= nu, got mu = {mu}, nu = {nu}")));
    }
    Ok(())
}

/// 2^ν Γ(ν+1).
fn norm_const(nu: f64) -> f64 {
    2f64.powf(nu) * gamma_unchecked(nu + 1.0)
}

fn factorial(k: u32) -> f64 {
    (2..=k).fold(1.0, |acc, i| acc * i as f64)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Σ_{n>N} x / (α²(α² − x)) enclosed from the α^{−4} tail.
fn phi_tail(order: Order, x: f64, t: &ZeroTable, n: usize) -> Result<Tail> {
    if x == 0.0 {
        return Ok(Tail { lo: 0.0, hi: 0.0 });
    }
    let s = dini_power_tail(order, 2, n)?;
    let next = t.zero(n + 1);
    Ok(Tail {
        lo: x * s.lo,
        hi: x * s.hi / (1.0 - x / (next * next)),
    })
}

/// φ_ν(x) = Σ_n [1/(α² − x) − 1/α²] = Σ_n x/(α²(α² − x)) followed by the
/// partial sums Σ_{n≤N} i!/(α² − x)^{i+1} for i = 1..=i_max.
fn phi_derivs(order: Order, x: f64, i_max: u32, n_terms: usize) -> Result<Vec<f64>> {
    let t = table(order, n_terms)?;
    let mut acc = vec![Dd::ZERO; i_max as usize + 1];
    for n in (1..=n_terms).rev() {
        let a2 = t.zero(n) * t.zero(n);
        let u = 1.0 / (a2 - x);
        acc[0] = acc[0] + Dd::new(x * u / a2);
        let mut p = u;
        for slot in acc.iter_mut().skip(1) {
            p *= u;
            *slot = *slot + Dd::new(p);
        }
    }
    let mut out: Vec<f64> = acc.iter().map(|v| v.to_f64()).collect();
    out[0] += phi_tail(order, x, &t, n_terms)?.mid();
    for (i, v) in out.iter_mut().enumerate().skip(1) {
        *v *= factorial(i as u32);
    }
    Ok(out)
}

/// f_{μ,ν}^{(m)}(x) for m = 0..=m_max.
fn f_all(mu: Order, nu: Order, x: f64, m_max: u32, n_terms: usize) -> Result<Vec<f64>> {
    check_pair(mu, nu)?;
    check_square_arg(nu, x)?;
    let tn = table(nu, n_terms)?;
    let tm = table(mu, n_terms)?;
    let mut acc = vec![Dd::ZERO; m_max as usize + 1];
    for n in (1..=n_terms).rev() {
        let (an, am) = (tn.zero(n) * tn.zero(n), tm.zero(n) * tm.zero(n));
        let (un, um) = (1.0 / (an - x), 1.0 / (am - x));
        acc[0] = acc[0] + Dd::new(x * un / an - x * um / am);
        let (mut pn, mut pm) = (un, um);
        for slot in acc.iter_mut().skip(1) {
            pn *= un;
            pm *= um;
            *slot = *slot + Dd::new(pn - pm);
        }
    }
    let mut out: Vec<f64> = acc.iter().map(|v| v.to_f64()).collect();
    if mu != nu {
        out[0] += phi_tail(nu, x, &tn, n_terms)?.mid() - phi_tail(mu, x, &tm, n_terms)?.mid();
    }
    for (m, v) in out.iter_mut().enumerate().skip(1) {
        *v *= factorial(m as u32);
    }
    Ok(out)
}

/// m-th derivative of
///
/// ```text
/// f_{μ,ν}(x) = Σ_n [1/(α²_{ν,n} − x) − 1/(α²_{μ,n} − x)] + 3(ν − μ)/(4(ν+1)(μ+1)).
/// ```
///
/// Since η_2(ν) = 3/(4(ν+1)), the constant cancels the sums of α^{−2}, so the
/// value is evaluated as Σ_n [x/(α²_ν(α²_ν − x)) − x/(α²_μ(α²_μ − x))], whose
/// tail beyond `n_terms` is enclosed and its midpoint added. For m ≥ 1 the
/// result is the partial sum over n ≤ `n_terms`; the omitted terms are
/// positive, so it is a lower bound.
pub fn f_derivs(mu: Order, nu: Order, x: f64, m: u32, n_terms: usize) -> Result<f64> {
    Ok(f_all(mu, nu, x, m, n_terms)?[m as usize])
}

/// Leibniz recursion h^{(k+1)} = Σ_{i≤k} C(k,i) w^{(i)} h^{(k−i)} for h′ = w h.
fn leibniz(h0: f64, w: &[f64], m_max: u32) -> Vec<f64> {
    let mut h = vec![h0];
    for k in 0..m_max {
        let next = (0..=k)
            .map(|i| binomial(k, i) * w[i as usize] * h[(k - i) as usize])
            .sum();
        h.push(next);
    }
    h
}

/// g_{μ,ν}(x) = x^{(ν−μ)/2} e^{(3x/4)(1/(μ+1) − 1/(ν+1))} d_μ(√x)/d_ν(√x),
/// equal to 2^{ν−μ} Γ(ν+1)/Γ(μ+1) at x = 0.
pub fn g_ratio(mu: Order, nu: Order, x: f64) -> Result<f64> {
    check_pair(mu, nu)?;
    check_square_arg(nu, x)?;
    let (a, b) = (mu.nu(), nu.nu());
    let c = norm_const(b) / norm_const(a);
    if x == 0.0 {
        return Ok(c);
    }
    let p = EvalPolicy::default();
    let r = x.sqrt();
    let expo = 0.75 * x * (1.0 / (a + 1.0) - 1.0 / (b + 1.0));
    Ok(c * expo.exp() * g_pair(mu, r, &p)?.g_prime / g_pair(nu, r, &p)?.g_prime)
}

/// g_{μ,ν}^{(m)}(x) for m = 0..=m_max, using (ln g_{μ,ν})′ = f_{μ,ν}.
pub fn g_ratio_derivs(mu: Order, nu: Order, x: f64, m_max: u32, n_terms: usize) -> Result<Vec<f64>> {
    let g0 = g_ratio(mu, nu, x)?;
    let f = f_all(mu, nu, x, m_max.saturating_sub(1), n_terms)?;
    Ok(leibniz(g0, &f, m_max))
}

/// q_ν(x) = x^{ν/2} e^{−3x/(4(ν+1))} / d_ν(√x) and its derivatives for
/// m = 0..=m_max; q_ν(0) = 2^ν Γ(ν+1).
pub fn q_derivs(nu: Order, x: f64, m_max: u32, n_terms: usize) -> Result<Vec<f64>> {
    check_square_arg(nu, x)?;
    let v = nu.nu();
    let q0 = if x == 0.0 {
        norm_const(v)
    } else {
        let gp = g_pair(nu, x.sqrt(), &EvalPolicy::default())?.g_prime;
        norm_const(v) * (-0.75 * x / (v + 1.0)).exp() / gp
    };
    let phi = phi_derivs(nu, x, m_max.saturating_sub(1), n_terms)?;
    Ok(leibniz(q0, &phi, m_max))
}

/// m-th derivative of q_ν at x.
pub fn q_fun(nu: Order, x: f64, m: u32) -> Result<f64> {
    Ok(q_derivs(nu, x, m, DEFAULT_TERMS)?[m as usize])
}

/// Which function `abs_monotone_report` examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneTarget {
    F,
    GRatio,
    Q,
}

impl fmt::Display for MonotoneTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonotoneTarget::F => "f",
            MonotoneTarget::GRatio => "g_ratio",
            MonotoneTarget::Q => "q",
        })
    }
}

impl FromStr for MonotoneTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" => Ok(MonotoneTarget::F),
            "g_ratio" | "g-ratio" | "g" => Ok(MonotoneTarget::GRatio),
            "q" => Ok(MonotoneTarget::Q),
            _ => Err(domain(format!("unknown target '{s}' (expected f, g_ratio or q)"))),
        }
    }
}

/// Checks that derivatives 0..=m_max of the target are nonnegative at every
/// grid point. The grid must lie in [0, α²_{ν,1}). For `Q` only `nu` is used.
pub fn abs_monotone_report(
    target: MonotoneTarget,
    mu: Order,
    nu: Order,
    grid: &GridSpec,
    m_max: u32,
) -> Result<PropertyReport> {
    let mut b = ReportBuilder::new(format!("{target} is absolutely monotonic"), DEFAULT_TOLERANCE);
    b.param("nu", nu.nu()).param("m_max", m_max as f64);
    if target != MonotoneTarget::Q {
        check_pair(mu, nu)?;
        b.param("mu", mu.nu());
    }
    for x in grid.linspace() {
        let values = match target {
            MonotoneTarget::F => f_all(mu, nu, x, m_max, DEFAULT_TERMS)?,
            MonotoneTarget::GRatio => g_ratio_derivs(mu, nu, x, m_max, DEFAULT_TERMS)?,
            MonotoneTarget::Q => q_derivs(nu, x, m_max, DEFAULT_TERMS)?,
        };
        for (m, v) in values.iter().enumerate() {
            b.record_ge(&format!("{target}^({m}) >= 0"), x, *v, 0.0);
        }
    }
    Ok(b.finish(grid.clone()))
}

fn first_zero(order: Order) -> Result<f64> {
    Ok(cached_table(order, ZeroKind::Dini, 1)?.zero(1))
}

/// Accepts grids inside (0, α_{ν,1}).
fn check_first_component(order: Order, grid: &GridSpec) -> Result<f64> {
    let a1 = first_zero(order)?;
    if grid.points == 0 || !(grid.min > 0.0 && grid.max < a1 && grid.min <= grid.max) {
        return Err(domain(format!(
            "grid [{}, {}] must be nonempty and inside (0, alpha_1) = (0, {a1}) for nu = {order}",
            grid.min, grid.max
        )));
    }
    Ok(a1)
}

/// Checks, in the normalized form obtained by multiplying through by
/// 2^ν Γ(ν+1) x^{−ν},
///
/// ```text
/// d_ν(x) ≤ x^ν e^{−3x²/(4(ν+1))} / (2^ν Γ(ν+1))     on (0, α_{ν,1})
/// J_ν(x) ≤ x^ν e^{−x²/(4(ν+1))} / (2^ν Γ(ν+1))      on (0, j_{ν,1})
/// ```
///
/// that the first bound never exceeds the second, and that the ratio of d_ν to
/// its bound tends to 1 at the origin (recorded at the smallest grid point and
/// at x = 1e-3).
pub fn bound_check(nu: Order, grid: &GridSpec) -> Result<PropertyReport> {
    bound_check_parts(nu, grid, BoundParts::All)
}

/// Subsets of [`bound_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BoundParts {
    /// The d_ν bound and its behaviour at the origin.
    Dini,
    /// The J_ν bound and the ordering of the two bounds.
    Bessel,
    All,
}

pub(crate) fn bound_check_parts(nu: Order, grid: &GridSpec, parts: BoundParts) -> Result<PropertyReport> {
    check_first_component(nu, grid)?;
    let v = nu.nu();
    let j1 = cached_table(nu, ZeroKind::Bessel, 1)?.zero(1);
    let p = EvalPolicy::default();
    let name = match parts {
        BoundParts::Dini => "exponential upper bound for d_nu",
        BoundParts::Bessel => "exponential upper bound for J_nu",
        BoundParts::All => "exponential upper bounds for d_nu and J_nu",
    };
    let dini_part = parts != BoundParts::Bessel;
    let bessel_part = parts != BoundParts::Dini;
    let mut b = ReportBuilder::new(name, DEFAULT_TOLERANCE);
    b.param("nu", v);
    let eq6 = |x: f64| (-0.75 * x * x / (v + 1.0)).exp();
    let eq7 = |x: f64| (-0.25 * x * x / (v + 1.0)).exp();
    for x in grid.linspace() {
        if dini_part {
            let gp = g_pair(nu, x, &p)?.g_prime;
            b.record_ge("d_nu below its bound", x, eq6(x), gp);
        }
        if bessel_part {
            if x < j1 {
                b.record_ge("J_nu below its bound", x, eq7(x), normalized_j(v, x)?);
            }
            b.record_ge("d_nu bound below J_nu bound", x, eq7(x), eq6(x));
        }
    }
    if dini_part {
        let x0 = grid.min;
        b.param("ratio_at_grid_min", g_pair(nu, x0, &p)?.g_prime / eq6(x0));
        let xs = 1e-3;
        let ratio = g_pair(nu, xs, &p)?.g_prime / eq6(xs);
        b.param("ratio_at_1e-3", ratio);
        b.record("ratio to bound near the origin", xs, ratio, 1.0, 1e-3 - (1.0 - ratio).abs());
    }
    Ok(b.finish(grid.clone()))
}

/// x d_ν′(x) / d_ν(x) computed from the Bessel recurrences.
pub(crate) fn x_logderiv(nu: Order, x: f64) -> Result<f64> {
    let p = EvalPolicy::default();
    Ok(x * dini_prime(nu, x, &p)? / dini(nu, x, &p)?)
}

/// Checks x d_ν′(x)/d_ν(x) < ν on a grid inside (0, α_{ν,1}). A probe just
/// right of α_{ν,2}, where the quotient is large and positive, is recorded as a
/// note showing the bound does not extend past the first component.
pub fn logderiv_bound_check(nu: Order, grid: &GridSpec) -> Result<PropertyReport> {
    check_first_component(nu, grid)?;
    let v = nu.nu();
    let mut b = ReportBuilder::new("x d'/d below nu on the first component", DEFAULT_TOLERANCE);
    b.param("nu", v);
    for x in grid.linspace() {
        let q = x_logderiv(nu, x)?;
        b.record("x d'/d < nu", x, q, v, v - q);
    }
    let t = cached_table(nu, ZeroKind::Dini, 3)?;
    let probe = t.zero(2) + 0.03 * (t.zero(3) - t.zero(2));
    let q = x_logderiv(nu, probe)?;
    let status = if q >= v { "exceeds" } else { "stays below" };
    b.note(format!(
        "second component probe x = {probe:.6}: x d'/d = {q:.6} {status} nu = {v}"
    ));
    Ok(b.finish(grid.clone()))
}

/// Which function `log_concavity_check` examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConcavityTarget {
    Dini,
    GPrime,
}

impl fmt::Display for ConcavityTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConcavityTarget::Dini => "dini",
            ConcavityTarget::GPrime => "g_prime",
        })
    }
}

impl FromStr for ConcavityTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dini" | "d" => Ok(ConcavityTarget::Dini),
            "g_prime" | "g-prime" | "gprime" => Ok(ConcavityTarget::GPrime),
            _ => Err(domain(format!("unknown target '{s}' (expected dini or g_prime)"))),
        }
    }
}

/// (ln |g_ν′|)″(x) = −2 Σ_n (α² + x²)/(α² − x²)²: the partial sum over
/// n ≤ `n_terms` and the value with the enclosed tail midpoint added.
fn log_gprime_second_parts(nu: Order, x: f64, n_terms: usize) -> Result<(f64, f64)> {
    let t = table(nu, n_terms)?;
    let ax = x.abs();
    let x2 = x * x;
    let mut acc = Dd::ZERO;
    for n in (1..=n_terms).rev() {
        if t.hits(n, ax) {
            return Err(Error::Pole { n, x });
        }
        let a = t.zero(n);
        let den = (a - ax) * (a + ax);
        acc = acc + Dd::new((a * a + x2) / (den * den));
    }
    let partial = -2.0 * acc.to_f64();
    let next = t.zero(n_terms + 1);
    if ax >= next {
        return Ok((partial, partial));
    }
    let y = x2 / (next * next);
    let s = dini_power_tail(nu, 1, n_terms)?;
    let tail = Tail {
        lo: s.lo,
        hi: s.hi * (1.0 + y) / ((1.0 - y) * (1.0 - y)),
    };
    Ok((partial, partial - 2.0 * tail.mid()))
}

/// (ln |g_ν′|)″(x) from the partial-fraction series with its tail estimate.
pub fn log_gprime_second(nu: Order, x: f64, n_terms: usize) -> Result<f64> {
    Ok(log_gprime_second_parts(nu, x, n_terms)?.1)
}

/// Checks (ln target)″ < 0 at `grid_points` interior points of the component
/// `component_index` of the positivity domain. Omitted series terms are all
/// negative, so the partial sum used here overestimates the true value.
pub fn log_concavity_check(
    target: ConcavityTarget,
    nu: Order,
    component_index: usize,
    grid_points: usize,
) -> Result<PropertyReport> {
    let v = nu.nu();
    if target == ConcavityTarget::Dini && v < 0.0 {
        return Err(domain(format!("log-concavity of d_nu is checked for nu >= 0 only, got {v}")));
    }
    if grid_points == 0 {
        return Err(domain("grid_points must be >= 1"));
    }
    let dom = positivity_domain(nu, component_index + 1)?;
    let iv = dom.intervals[component_index];
    let mut b = ReportBuilder::new(format!("{target} is log-concave"), DEFAULT_TOLERANCE);
    b.param("nu", v).param("component", component_index as f64);
    let n_terms = DEFAULT_TERMS.max(4 * component_index + 8);
    let mut pts = Vec::with_capacity(grid_points);
    for k in 1..=grid_points {
        let x = iv.lo + iv.width() * k as f64 / (grid_points + 1) as f64;
        let (partial, _) = log_gprime_second_parts(nu, x, n_terms)?;
        let second = match target {
            ConcavityTarget::GPrime => partial,
            ConcavityTarget::Dini => partial - v / (x * x),
        };
        b.record("(ln target)'' < 0", x, second, 0.0, -second);
        pts.push(x);
    }
    Ok(b.finish(GridSpec::of_points(
        format!("interior of component {component_index}"),
        &pts,
    )))
}

/// Index of the positivity component containing both points.
fn shared_component(nu: Order, a: f64, b: f64) -> Result<usize> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(domain(format!("a and b must be finite and > 0, got {a}, {b}")));
    }
    let far = a.max(b);
    let mut k = 4;
    let dom: PositivityDomain = loop {
        let d = positivity_domain(nu, k)?;
        if d.intervals[k - 1].hi > far || k >= 4096 {
            break d;
        }
        k *= 2;
    };
    let ca = dom.component_of(a);
    let cb = dom.component_of(b);
    match (ca, cb) {
        (Some(i), Some(j)) if i == j => Ok(i),
        (Some(i), Some(j)) => Err(domain(format!(
            "a = {a} and b = {b} lie in different components ({i} and {j}) of the positivity domain; \
             the inequality is only claimed within one component"
        ))),
        _ => Err(domain(format!(
            "a = {a} and b = {b} must both lie in the positivity domain of d_{nu}"
        ))),
    }
}

/// Checks |g_ν(a) − g_ν(b)| ≥ |a − b| √(g_ν′(a) g_ν′(b)) for a, b in one
/// component of the positivity domain, together with the Bessel form
/// |a^{1−ν}J_ν(a) − b^{1−ν}J_ν(b)| ≥ |a − b| √((ab)^{−ν} d_ν(a) d_ν(b)),
/// which must give the same margin up to the factor 2^ν Γ(ν+1).
pub fn corput_check(nu: Order, a: f64, b: f64) -> Result<PropertyReport> {
    let comp = shared_component(nu, a, b)?;
    let v = nu.nu();
    let p = EvalPolicy::default();
    let mut rb = ReportBuilder::new("van der Corput inequality for g_nu", DEFAULT_TOLERANCE);
    rb.param("nu", v).param("a", a).param("b", b).param("component", comp as f64);
    let (ga, gb) = (g_pair(nu, a, &p)?, g_pair(nu, b, &p)?);
    let lhs = (ga.g - gb.g).abs();
    let rhs = (a - b).abs() * (ga.g_prime * gb.g_prime).sqrt();
    rb.record_ge("|g(a) - g(b)| >= |a - b| sqrt(g'(a) g'(b))", a, lhs, rhs);

    let ja = a.powf(1.0 - v) * bessel_j(nu, a, &p)?;
    let jb = b.powf(1.0 - v) * bessel_j(nu, b, &p)?;
    let lhs_b = (ja - jb).abs();
    let rhs_b = (a - b).abs() * ((a * b).powf(-v) * dini(nu, a, &p)? * dini(nu, b, &p)?).sqrt();
    let c = norm_const(v);
    let diff = (lhs - rhs) - c * (lhs_b - rhs_b);
    let scale = 1f64.max(lhs).max(rhs);
    if !(diff.abs() <= 1e-10 * scale) {
        rb.violation("Bessel form gives the same margin", a, lhs - rhs, c * (lhs_b - rhs_b));
    }
    Ok(rb.finish(GridSpec::of_points("pair (a, b)", &[a, b])))
}

/// ln(|g_ν(b) − g_ν(a)| / |b − a|) − ln √(g_ν′(a) g_ν′(b)) for a ≠ b in one
/// component of the positivity domain: the logarithmic form of the
/// van der Corput inequality.
pub fn corput_log_margin(nu: Order, a: f64, b: f64) -> Result<f64> {
    shared_component(nu, a, b)?;
    if a == b {
        return Err(domain("the logarithmic form needs a != b"));
    }
    let p = EvalPolicy::default();
    let (ga, gb) = (g_pair(nu, a, &p)?, g_pair(nu, b, &p)?);
    let slope = ((gb.g - ga.g) / (b - a)).abs();
    Ok(slope.ln() - 0.5 * (ga.g_prime.ln() + gb.g_prime.ln()))
}

/// The order −1/2 instance of the van der Corput inequality, where
/// g(x) = x cos x and g′(x) = cos x − x sin x and the positivity domain is
/// bounded by the roots of cot x = x. The variant with weights (cos x − sin x)
/// is evaluated and reported as a note only.
pub fn trig_case_check(a: f64, b: f64) -> Result<PropertyReport> {
    let nu = Order::new(-0.5)?;
    let comp = shared_component(nu, a, b)?;
    let mut rb = ReportBuilder::new("van der Corput inequality at nu = -1/2", DEFAULT_TOLERANCE);
    rb.param("a", a).param("b", b).param("component", comp as f64);
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    let lhs = (a * ca - b * cb).abs();
    let rhs = (a - b).abs() * ((ca - a * sa) * (cb - b * sb)).sqrt();
    rb.record_ge("|a cos a - b cos b| >= |a - b| sqrt((cos a - a sin a)(cos b - b sin b))", a, lhs, rhs);
    let radicand = (ca - sa) * (cb - sb);
    let alt = (a - b).abs() * radicand.sqrt();
    let status = if radicand < 0.0 {
        "undefined, negative radicand".to_string()
    } else if lhs >= alt {
        "holds".to_string()
    } else {
        "fails".to_string()
    };
    rb.note(format!(
        "variant with weights (cos x - sin x): lhs = {lhs:.10}, rhs = {alt:.10} ({status})"
    ));
    Ok(rb.finish(GridSpec::of_points("pair (a, b)", &[a, b])))
}

/// Checks, for μ ≥ ν on a grid inside (0, α_{ν,1}):
/// (i) x^{ν−μ} d_μ(x)/d_ν(x) ≥ 2^{ν−μ} Γ(ν+1)/Γ(μ+1);
/// (ii) d_μ′(x)/d_μ(x) ≥ d_ν′(x)/d_ν(x);
/// (iii) d_μ/d_ν does not decrease along the grid.
pub fn nu_monotone_check(nu: Order, mu: Order, grid: &GridSpec) -> Result<PropertyReport> {
    check_pair(mu, nu)?;
    check_first_component(nu, grid)?;
    let (v, w) = (nu.nu(), mu.nu());
    let p = EvalPolicy::default();
    let c = norm_const(v) / norm_const(w);
    let mut b = ReportBuilder::new("Dini quotients increase with the order", DEFAULT_TOLERANCE);
    b.param("nu", v).param("mu", w);
    let mut prev: Option<f64> = None;
    for x in grid.linspace() {
        let ratio = c * g_pair(mu, x, &p)?.g_prime / g_pair(nu, x, &p)?.g_prime;
        b.record_ge("x^(nu-mu) d_mu/d_nu >= limit at 0", x, ratio, c);
        let (dm, dn) = (dini(mu, x, &p)?, dini(nu, x, &p)?);
        let lm = dini_prime(mu, x, &p)? / dm;
        let ln = dini_prime(nu, x, &p)? / dn;
        b.record_ge("d_mu'/d_mu >= d_nu'/d_nu", x, lm, ln);
        let r = dm / dn;
        if let Some(r0) = prev {
            b.record_ge("d_mu/d_nu nondecreasing", x, r, r0);
        }
        prev = Some(r);
    }
    Ok(b.finish(grid.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn f_vanishes_for_equal_orders() {
        for m in 0..4 {
            assert_eq!(f_derivs(o(0.5), o(0.5), 0.7, m, 200).unwrap(), 0.0);
        }
    }

    #[test]
    fn f_at_origin() {
        let v = f_derivs(o(1.0), o(0.0), 0.0, 0, DEFAULT_TERMS).unwrap();
        assert!(v.abs() < 1e-8);
    }

    #[test]
    fn f_domain() {
        assert!(f_derivs(o(0.0), o(1.0), 0.1, 0, 10).is_err());
        assert!(f_derivs(o(1.0), o(0.0), 2.0, 0, 10).is_err());
        assert!(f_derivs(o(1.0), o(0.0), -0.1, 0, 10).is_err());
    }

    #[test]
    fn g_ratio_examples() {
        assert!((g_ratio(o(0.3), o(0.3), 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(g_ratio(o(1.0), o(0.0), 0.0).unwrap(), 0.5);
        let a = g_ratio(o(1.0), o(0.0), 0.4).unwrap();
        let b = g_ratio(o(1.0), o(0.0), 0.8).unwrap();
        assert!(b >= a && a >= 0.5);
    }

    #[test]
    fn q_at_origin() {
        assert_eq!(q_fun(o(0.0), 0.0, 0).unwrap(), 1.0);
        assert_eq!(q_fun(o(1.0), 0.0, 0).unwrap(), 2.0);
    }

    #[test]
    fn leibniz_matches_exponential() {
        // h = e^{2x}: w = 2, h^{(k)} = 2^k h.
        let h = leibniz(1.0, &[2.0, 0.0, 0.0, 0.0], 4);
        assert_eq!(h, vec![1.0, 2.0, 4.0, 8.0, 16.0]);
    }

    #[test]
    fn targets_parse() {
        assert_eq!("g_ratio".parse::<MonotoneTarget>().unwrap(), MonotoneTarget::GRatio);
        assert_eq!("g_prime".parse::<ConcavityTarget>().unwrap(), ConcavityTarget::GPrime);
        assert!("h".parse::<MonotoneTarget>().is_err());
    }

    #[test]
    fn bound_check_example() {
        let r = bound_check(o(1.0), &GridSpec::new("g", 1.0, 1.0, 1)).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn corput_rejects_split_pairs() {
        let err = corput_check(o(0.5), 1.0, 5.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(corput_check(o(0.5), 1.0, 2.0).is_err());
    }

    #[test]
    fn trig_case_note() {
        let r = trig_case_check(0.2, 0.5).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::PassWithNotes);
        assert!(r.min_margin.unwrap() > 0.0);
    }
}
