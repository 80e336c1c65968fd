//! Evaluation of J_ν, J_ν′, the Dini function d_ν and the normalized pair (g_ν, g_ν′).
//!
//! For `x <= 40` everything is summed from the ascending power series
//!
//! ```text
//! J_ν(x) = (x/2)^ν / Γ(ν+1) · Σ_k t_k,      t_k = (-x²/4)^k / (k! (ν+1)_k)
//! g_ν′(x) = 2^ν Γ(ν+1) x^-ν d_ν(x) = Σ_k (2k+1) t_k
//! ```
//!
//! with the terms and partial sums carried in double-double arithmetic, which
//! absorbs the cancellation of the alternating series. Beyond `x = 40` the
//! Hankel expansion is used whenever its first neglected term is below 1e-15.
//! Otherwise, when x ≥ ν + 2, J is evaluated by Hankel at the fractional part
//! of ν and carried up by forward recurrence, which is stable while the order
//! stays below x; the series remains the fallback for x < ν + 2.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::gamma::ln_gamma_unchecked;

const SERIES_LIMIT: f64 = 40.0;
const HANKEL_TOL: f64 = 1e-15;

/// Order ν of the Bessel / Dini family. Always satisfies ν > −1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= -1.0 {
            return Err(domain(format!("order must be finite and > -1, got {nu}")));
        }
        Ok(Order(nu))
    }

    #[inline]
    pub fn nu(self) -> f64 {
        self.0
    }

    /// The order ν + 1 (always valid).
    #[inline]
    pub fn next(self) -> Order {
        Order(self.0 + 1.0)
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;
    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}

impl From<Order> for f64 {
    fn from(o: Order) -> f64 {
        o.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Truncation control for the power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPolicy {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl EvalPolicy {
    pub fn new(max_terms: usize, rel_tol: f64, abs_tol: f64) -> Result<Self> {
        if max_terms < 8 {
            return Err(domain(format!("max_terms must be >= 8, got {max_terms}")));
        }
        for (name, v) in [("rel_tol", rel_tol), ("abs_tol", abs_tol)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(EvalPolicy {
            max_terms,
            rel_tol,
            abs_tol,
        })
    }
}

impl Default for EvalPolicy {
    fn default() -> Self {
        EvalPolicy {
            max_terms: 400,
            rel_tol: 1e-15,
            abs_tol: 1e-300,
        }
    }
}

/// Normalized series sums S_ν(x) = Σ t_k and D_ν(x) = Σ (2k+1) t_k.
fn normalized_series(nu: f64, x: f64, policy: &EvalPolicy) -> Result<(Dd, Dd)> {
    let y = Dd::prod(x, x).mul_f64(0.25);
    let mut t = Dd::ONE;
    let mut s = Dd::ONE;
    let mut d = Dd::ONE;
    for k in 1..=policy.max_terms {
        let kf = k as f64;
        let den = Dd::sum(kf, nu).mul_f64(kf);
        t = -(t * y) / den;
        let w = (2 * k + 1) as f64;
        s = s + t;
        d = d + t.mul_f64(w);

        // Once y / ((k+1)(k+1+ν)) < 1/2 the remaining terms shrink geometrically
        // and the tail of either sum is bounded by twice the next term.
        let next = (kf + 1.0) * (kf + 1.0 + nu);
        if 2.0 * y.hi < next {
            let mag = t.hi.abs();
            let s_ok = mag <= policy.abs_tol.max(policy.rel_tol * s.hi.abs());
            let d_ok = mag * w <= policy.abs_tol.max(policy.rel_tol * d.hi.abs());
            if s_ok && d_ok {
                return Ok((s, d));
            }
        }
        if k == policy.max_terms {
            return Err(Error::Truncation {
                terms: k,
                last_term: mag_f64(t) * w,
            });
        }
    }
    unreachable!("loop returns on its last iteration")
}

fn mag_f64(t: Dd) -> f64 {
    t.abs().to_f64()
}

/// Hankel expansion of J_ν(x) for large x. Returns the value and the bound on
/// |ΔP| + |ΔQ| given by the first neglected terms.
fn hankel(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    let bound;
    let mut k = 1usize;
    loop {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (8.0 * k as f64 * x);
        let mag = next.abs();
        if next == 0.0 {
            // ν + 1/2 is an integer: the expansion terminates.
            bound = 0.0;
            break;
        }
        if mag > prev && k > 2 {
            // Asymptotic divergence: neither this term nor the next one is added.
            let odd_next = (2 * k + 1) as f64;
            let ratio = ((mu - odd_next * odd_next) / (8.0 * (k + 1) as f64 * x)).abs();
            bound = mag * (1.0 + ratio);
            break;
        }
        // Sign pattern: P = t0 - t2 + t4 - ..., Q = t1 - t3 + ...
        match k % 4 {
            0 => p += next,
            1 => q += next,
            2 => p -= next,
            _ => q -= next,
        }
        if mag < 1e-18 {
            bound = 2.0 * mag;
            break;
        }
        if k > 200 {
            bound = mag;
            break;
        }
        prev = mag;
        term = next;
        k += 1;
    }
    let c = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sc, cc) = c.sin_cos();
    let cos_w = cx * cc + sx * sc;
    let sin_w = sx * cc - cx * sc;
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * cos_w - q * sin_w), bound)
}

/// (x/2)^ν / Γ(ν+1) for x > 0, via exp/log.
fn prefactor(nu: f64, x: f64) -> f64 {
    (nu * (0.5 * x).ln() - ln_gamma_unchecked(nu + 1.0)).exp()
}

/// J_ν(x) for x > 40 from the Hankel expansion, directly or through forward
/// recurrence from the fractional part of ν; `None` when the series should be used.
fn hankel_value(nu: f64, x: f64) -> Option<f64> {
    if x <= SERIES_LIMIT {
        return None;
    }
    let (v, b) = hankel(nu, x);
    if b <= HANKEL_TOL {
        return Some(v);
    }
    if nu < 1.0 || x < nu + 2.0 {
        return None;
    }
    let base = nu - nu.floor();
    let (mut prev, b0) = hankel(base, x);
    let (mut cur, b1) = hankel(base + 1.0, x);
    if b0 > HANKEL_TOL || b1 > HANKEL_TOL {
        return None;
    }
    let mut k = base + 1.0;
    while k < nu - 0.5 {
        let next = 2.0 * k / x * cur - prev;
        prev = cur;
        cur = next;
        k += 1.0;
    }
    Some(cur)
}

/// J_ν(x) for x > 0 (no argument checks).
fn j_positive(nu: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    match hankel_value(nu, x) {
        Some(v) => Ok(v),
        None => {
            let (s, _) = normalized_series(nu, x, policy)?;
            Ok(prefactor(nu, x) * s.to_f64())
        }
    }
}

/// Bessel function of the first kind J_ν(x) for x ≥ 0.
///
/// At `x = 0` the value is 1 for ν = 0 and 0 for ν > 0; for ν < 0 the function
/// is unbounded there and a domain error is returned.
pub fn bessel_j(order: Order, x: f64, policy: &EvalPolicy) -> Result<f64> {
    let nu = order.nu();
    check_x(x)?;
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(domain(format!("J_nu(0) is unbounded for nu = {nu} < 0")))
        };
    }
    j_positive(nu, x, policy)
}

/// J_ν′(x) = (ν J_ν(x) − x J_{ν+1}(x)) / x for x > 0.
pub fn bessel_j_prime(order: Order, x: f64, policy: &EvalPolicy) -> Result<f64> {
    check_positive(x)?;
    let nu = order.nu();
    let j0 = j_positive(nu, x, policy)?;
    let j1 = j_positive(nu + 1.0, x, policy)?;
    Ok((nu * j0 - x * j1) / x)
}

/// Dini function d_ν(x) = (1 − ν) J_ν(x) + x J_ν′(x) = J_ν(x) − x J_{ν+1}(x).
pub fn dini(order: Order, x: f64, policy: &EvalPolicy) -> Result<f64> {
    let nu = order.nu();
    check_x(x)?;
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(domain(format!(
                "d_nu(0) is unbounded for nu = {nu} < 0; use g_pair for the normalized value"
            )))
        };
    }
    let j0 = j_positive(nu, x, policy)?;
    let j1 = j_positive(nu + 1.0, x, policy)?;
    Ok(j0 - x * j1)
}

/// d_ν′(x) = J_ν′(x) − J_{ν+1}(x) − x J_{ν+1}′(x), each derivative from the
/// recurrence x J_μ′ = μ J_μ − x J_{μ+1}.
pub fn dini_prime(order: Order, x: f64, policy: &EvalPolicy) -> Result<f64> {
    check_positive(x)?;
    let nu = order.nu();
    let j0 = j_positive(nu, x, policy)?;
    let j1 = j_positive(nu + 1.0, x, policy)?;
    let j2 = j_positive(nu + 2.0, x, policy)?;
    let jp0 = (nu * j0 - x * j1) / x;
    let jp1 = ((nu + 1.0) * j1 - x * j2) / x;
    Ok(jp0 - j1 - x * jp1)
}

/// The pair g_ν(x) = 2^ν Γ(ν+1) x^(1−ν) J_ν(x) and its derivative
/// g_ν′(x) = 2^ν Γ(ν+1) x^−ν d_ν(x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GPair {
    pub g: f64,
    pub g_prime: f64,
}

/// Evaluates (g_ν, g_ν′). Both are entire in x and finite for every ν > −1;
/// `x = 0` gives exactly (0, 1).
pub fn g_pair(order: Order, x: f64, policy: &EvalPolicy) -> Result<GPair> {
    check_x(x)?;
    if x == 0.0 {
        return Ok(GPair {
            g: 0.0,
            g_prime: 1.0,
        });
    }
    let nu = order.nu();
    if hankel_value(nu, x).is_some() {
        let p = prefactor(nu, x);
        let j0 = j_positive(nu, x, policy)?;
        let j1 = j_positive(nu + 1.0, x, policy)?;
        return Ok(GPair {
            g: x * j0 / p,
            g_prime: (j0 - x * j1) / p,
        });
    }
    let (s, d) = normalized_series(nu, x, policy)?;
    Ok(GPair {
        g: x * s.to_f64(),
        g_prime: d.to_f64(),
    })
}

/// Γ(ν+1) (2/x)^ν J_ν(x), equal to 1 at the origin. Same sign as J_ν for x > 0.
pub(crate) fn normalized_j(nu: f64, x: f64) -> Result<f64> {
    let policy = EvalPolicy::default();
    if x == 0.0 {
        return Ok(1.0);
    }
    match hankel_value(nu, x) {
        Some(v) => Ok(v / prefactor(nu, x)),
        None => Ok(normalized_series(nu, x, &policy)?.0.to_f64()),
    }
}

/// g_ν′(x), equal to 1 at the origin. Same sign as d_ν for x > 0.
pub(crate) fn normalized_dini(nu: f64, x: f64) -> Result<f64> {
    Ok(g_pair(Order(nu), x, &EvalPolicy::default())?.g_prime)
}

/// Closed forms at ν = ±1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfIntValues {
    pub j: f64,
    pub d: f64,
    pub g: f64,
    pub g_prime: f64,
}

/// Elementary closed forms of J_ν, d_ν, g_ν, g_ν′ for ν = ±1/2, using
/// J_{1/2}(x) = √(2/(πx)) sin x and J_{−1/2}(x) = √(2/(πx)) cos x.
pub fn halfint_oracle(order: Order, x: f64) -> Result<HalfIntValues> {
    check_positive(x)?;
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = x.sin_cos();
    if order.nu() == 0.5 {
        Ok(HalfIntValues {
            j: amp * s,
            d: amp * x * c,
            g: s,
            g_prime: c,
        })
    } else if order.nu() == -0.5 {
        Ok(HalfIntValues {
            j: amp * c,
            d: amp * (c - x * s),
            g: x * c,
            g_prime: c - x * s,
        })
    } else {
        Err(domain(format!(
            "closed forms exist only for nu = +/-1/2, got {}",
            order.nu()
        )))
    }
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain(format!("x must be finite and >= 0, got {x}")));
    }
    Ok(())
}

fn check_positive(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(format!("x must be finite and > 0, got {x}")));
    }
    Ok(())
}
