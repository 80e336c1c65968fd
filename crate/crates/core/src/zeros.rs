//! Positive zeros j_{ν,n} of J_ν and α_{ν,n} of d_ν.
//!
//! Bessel zeros are located by scanning the normalized function on the fixed
//! grid `x_k = k/2` (consecutive zeros of J_ν, ν > −1, are more than 2 apart)
//! and refining every sign change with Brent's method. Dini zeros use the
//! interlacing brackets α_{ν,1} ∈ (0, j_{ν,1}), α_{ν,n} ∈ (j_{ν,n−1}, j_{ν,n}):
//! d_ν(j_{ν,n}) = −j_{ν,n} J_{ν+1}(j_{ν,n}) alternates in sign while d_ν > 0 near
//! the origin. Each bracket is sign-scanned before refinement and must show
//! exactly one sign change.
//!
//! Tables are immutable and cached per (ν rounded to 1e-12, kind). Every entry
//! depends only on ν, n and its kind, so a cached prefix is bit-identical to a
//! freshly built table.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, LazyLock, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::eval::{normalized_dini, normalized_j, Order};
use crate::report::{GridSpec, PropertyReport, ReportBuilder, DEFAULT_TOLERANCE};
use crate::roots::brent;

/// Largest table the library will build.
pub const MAX_TABLE: usize = 100_000;
/// Sample points used to validate each Dini bracket.
pub const DEFAULT_SCAN_POINTS: usize = 64;
const SCAN_STEP: f64 = 0.5;
const REL_XTOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    Bessel,
    Dini,
}

impl std::str::FromStr for ZeroKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bessel" => Ok(ZeroKind::Bessel),
            "dini" => Ok(ZeroKind::Dini),
            _ => Err(domain(format!("unknown zero kind '{s}' (expected bessel|dini)"))),
        }
    }
}

/// The first `count` positive zeros of J_ν or d_ν in increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    order: Order,
    kind: ZeroKind,
    values: Vec<f64>,
    bracket_width: f64,
    count: usize,
    #[serde(skip)]
    widths: Vec<f64>,
}

impl ZeroTable {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn kind(&self) -> ZeroKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest final bracket width over all entries.
    pub fn bracket_width(&self) -> f64 {
        self.bracket_width
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// 1-based access: `zero(1)` is the first positive zero.
    pub fn zero(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    /// Final bracket width of entry `n` (1-based).
    pub(crate) fn width(&self, n: usize) -> f64 {
        self.widths[n - 1]
    }

    /// True when `x` is indistinguishable from entry `n` (1-based).
    pub(crate) fn hits(&self, n: usize, x: f64) -> bool {
        let a = self.zero(n);
        (x - a).abs() <= self.width(n).max(4.0 * f64::EPSILON * a)
    }

    fn prefix(&self, count: usize) -> ZeroTable {
        let widths = self.widths[..count].to_vec();
        ZeroTable {
            order: self.order,
            kind: self.kind,
            values: self.values[..count].to_vec(),
            bracket_width: widths.iter().copied().fold(0.0, f64::max),
            count,
            widths,
        }
    }

    fn from_parts(order: Order, kind: ZeroKind, values: Vec<f64>, widths: Vec<f64>) -> Self {
        ZeroTable {
            order,
            kind,
            count: values.len(),
            bracket_width: widths.iter().copied().fold(0.0, f64::max),
            values,
            widths,
        }
    }
}

type CacheKey = (i64, ZeroKind);

static CACHE: LazyLock<Mutex<HashMap<CacheKey, Arc<ZeroTable>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn cache_key(order: Order, kind: ZeroKind) -> CacheKey {
    ((order.nu() * 1e12).round() as i64, kind)
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 || count > MAX_TABLE {
        return Err(domain(format!(
            "zero count must be in 1..={MAX_TABLE}, got {count}"
        )));
    }
    Ok(())
}

/// Shared table holding at least `count` zeros.
pub(crate) fn cached_table(order: Order, kind: ZeroKind, count: usize) -> Result<Arc<ZeroTable>> {
    check_count(count)?;
    let key = cache_key(order, kind);
    let have = {
        let cache = CACHE.lock().expect("zero cache poisoned");
        match cache.get(&key) {
            Some(t) if t.count >= count => return Ok(Arc::clone(t)),
            Some(t) => t.count,
            None => 0,
        }
    };
    // Grow geometrically so that repeated small extensions stay cheap.
    let target = count.max(2 * have).min(MAX_TABLE);
    let table = Arc::new(build_table(order, kind, target, DEFAULT_SCAN_POINTS)?);
    let mut cache = CACHE.lock().expect("zero cache poisoned");
    let entry = cache.entry(key).or_insert_with(|| Arc::clone(&table));
    if entry.count < table.count {
        *entry = Arc::clone(&table);
    }
    Ok(Arc::clone(entry))
}

fn build_table(order: Order, kind: ZeroKind, count: usize, scan_points: usize) -> Result<ZeroTable> {
    match kind {
        ZeroKind::Bessel => build_bessel(order, count),
        ZeroKind::Dini => build_dini(order, count, scan_points),
    }
}

fn xtol(x: f64) -> f64 {
    REL_XTOL * (1.0 + x)
}

/// McMahon's leading term (n + ν/2 − 1/4)π, used only to bound the scan window.
fn mcmahon_leading(nu: f64, n: usize) -> f64 {
    (n as f64 + 0.5 * nu - 0.25) * PI
}

fn build_bessel(order: Order, count: usize) -> Result<ZeroTable> {
    let nu = order.nu();
    let f = |x: f64| normalized_j(nu, x);
    // j_{ν,n} < (n + ν/2 + 1)π comfortably for every ν > −1; the window only
    // guards against a runaway scan.
    let window = mcmahon_leading(nu.max(0.0), count) + 2.0 * nu.max(0.0) + 4.0 * PI;
    let mut values = Vec::with_capacity(count);
    let mut widths = Vec::with_capacity(count);
    let mut k: u64 = 0;
    let mut left = 0.0;
    let mut f_left = 1.0;
    while values.len() < count {
        k += 1;
        let right = k as f64 * SCAN_STEP;
        if right > window {
            return Err(Error::Bracket(format!(
                "scan for zero {} of J_{nu} passed x = {window} without a sign change",
                values.len() + 1
            )));
        }
        let f_right = f(right)?;
        if (f_left >= 0.0) != (f_right >= 0.0) {
            let r = brent(f, left, right, f_left, f_right, xtol(right))?;
            values.push(r.x);
            widths.push(r.width());
        }
        left = right;
        f_left = f_right;
    }
    Ok(ZeroTable::from_parts(order, ZeroKind::Bessel, values, widths))
}

fn build_dini(order: Order, count: usize, scan_points: usize) -> Result<ZeroTable> {
    let nu = order.nu();
    let bessel = cached_table(order, ZeroKind::Bessel, count)?;
    let f = |x: f64| normalized_dini(nu, x);
    let mut values = Vec::with_capacity(count);
    let mut widths = Vec::with_capacity(count);
    for n in 1..=count {
        let lo = if n == 1 { 0.0 } else { bessel.zero(n - 1) };
        let hi = bessel.zero(n);
        let (a, b, fa, fb) = scan_single_change(&f, lo, hi, scan_points).map_err(|e| match e {
            Error::Invariant(msg) => Error::Invariant(format!("alpha_{{{nu},{n}}}: {msg}")),
            other => other,
        })?;
        let r = brent(f, a, b, fa, fb, xtol(b))?;
        if !(r.x > lo && r.x < hi) {
            return Err(Error::Invariant(format!(
                "alpha_{{{nu},{n}}} = {} escaped its interlacing bracket ({lo}, {hi})",
                r.x
            )));
        }
        values.push(r.x);
        widths.push(r.width());
    }
    Ok(ZeroTable::from_parts(order, ZeroKind::Dini, values, widths))
}

/// Samples `f` at `points + 1` equispaced nodes of `[lo, hi]` and returns the
/// unique cell with a sign change.
fn scan_single_change<F>(f: &F, lo: f64, hi: f64, points: usize) -> Result<(f64, f64, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let points = points.max(1);
    let h = (hi - lo) / points as f64;
    let mut prev_x = lo;
    let mut prev_f = f(lo)?;
    let mut found = None;
    let mut changes = 0;
    for i in 1..=points {
        let x = if i == points { hi } else { lo + i as f64 * h };
        let fx = f(x)?;
        if (prev_f >= 0.0) != (fx >= 0.0) {
            changes += 1;
            found.get_or_insert((prev_x, x, prev_f, fx));
        }
        prev_x = x;
        prev_f = fx;
    }
    match (changes, found) {
        (1, Some(cell)) => Ok(cell),
        _ => Err(Error::Invariant(format!(
            "expected exactly one sign change in ({lo}, {hi}), found {changes}"
        ))),
    }
}

/// n-th positive zero of J_ν.
pub fn bessel_zero(order: Order, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(domain("zero index n must be >= 1"));
    }
    Ok(cached_table(order, ZeroKind::Bessel, n)?.zero(n))
}

/// n-th positive zero α_{ν,n} of the Dini function d_ν.
pub fn dini_zero(order: Order, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(domain("zero index n must be >= 1"));
    }
    Ok(cached_table(order, ZeroKind::Dini, n)?.zero(n))
}

/// The first `count` zeros of the given kind.
pub fn zero_table(order: Order, kind: ZeroKind, count: usize) -> Result<ZeroTable> {
    Ok(cached_table(order, kind, count)?.prefix(count))
}

/// Builds a table without touching the cache, with a custom number of
/// bracket-validation samples.
pub fn zero_table_uncached(
    order: Order,
    kind: ZeroKind,
    count: usize,
    scan_points: usize,
) -> Result<ZeroTable> {
    check_count(count)?;
    build_table(order, kind, count, scan_points)
}

/// An open interval (lo, hi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Leading components (α_{ν,2k}, α_{ν,2k+1}) of the set where d_ν > 0, with α_{ν,0} = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityDomain {
    pub order: Order,
    pub intervals: Vec<Interval>,
}

impl PositivityDomain {
    /// Index of the component containing `x`, if any.
    pub fn component_of(&self, x: f64) -> Option<usize> {
        self.intervals.iter().position(|iv| iv.contains(x))
    }
}

pub fn positivity_domain(order: Order, k_components: usize) -> Result<PositivityDomain> {
    if k_components == 0 {
        return Err(domain("k_components must be >= 1"));
    }
    let table = cached_table(order, ZeroKind::Dini, 2 * k_components - 1)?;
    let mut intervals = Vec::with_capacity(k_components);
    for k in 0..k_components {
        let lo = if k == 0 { 0.0 } else { table.zero(2 * k) };
        let hi = table.zero(2 * k + 1);
        let iv = Interval { lo, hi };
        let mid = normalized_dini(order.nu(), iv.midpoint())?;
        if mid <= 0.0 {
            return Err(Error::Invariant(format!(
                "d_{} is not positive at the midpoint {} of component {k}",
                order.nu(),
                iv.midpoint()
            )));
        }
        intervals.push(iv);
    }
    Ok(PositivityDomain { order, intervals })
}

/// Checks α_{ν_i,n} < α_{ν_{i+1},n} for consecutive orders of a strictly
/// increasing grid and every n ≤ `n_max`. Margin is the gap α_{ν_{i+1},n} − α_{ν_i,n}.
pub fn nu_zero_monotone_check(nu_grid: &[Order], n_max: usize) -> Result<PropertyReport> {
    if n_max == 0 {
        return Err(domain("n_max must be >= 1"));
    }
    if nu_grid.windows(2).any(|w| w[1].nu() <= w[0].nu()) {
        return Err(domain("nu grid must be strictly increasing"));
    }
    let mut b = ReportBuilder::new("dini zeros increase with the order", DEFAULT_TOLERANCE);
    b.param("n_max", n_max as f64);
    // Strict increase: a zero gap is a violation, not a tolerance-level pass.
    let tables = nu_grid
        .iter()
        .map(|&o| cached_table(o, ZeroKind::Dini, n_max))
        .collect::<Result<Vec<_>>>()?;
    for (w, t) in nu_grid.windows(2).zip(tables.windows(2)) {
        for n in 1..=n_max {
            let (a0, a1) = (t[0].zero(n), t[1].zero(n));
            let label = format!("alpha_{{{},{n}}} < alpha_{{{},{n}}}", w[0], w[1]);
            let gap = a1 - a0;
            b.record(&label, w[0].nu(), a0, a1, if gap > 0.0 { gap } else { gap.min(-1.0) });
        }
    }
    b.param("pairs", nu_grid.len().saturating_sub(1) as f64);
    let nus: Vec<f64> = nu_grid.iter().map(|o| o.nu()).collect();
    Ok(b.finish(GridSpec::of_points("orders nu", &nus)))
}
