//! Numerics for the Dini function d_ν(x) = (1 − ν) J_ν(x) + x J_ν′(x).
//!
//! The crate evaluates J_ν, d_ν and the normalized pair
//! g_ν(x) = 2^ν Γ(ν+1) x^(1−ν) J_ν(x), g_ν′(x) = 2^ν Γ(ν+1) x^−ν d_ν(x);
//! locates the positive zeros α_{ν,n} of d_ν; evaluates the product
//!
//! ```text
//! d_ν(x) = x^ν / (2^ν Γ(ν+1)) · Π_n (1 − x²/α²_{ν,n})
//! ```
//!
//! and the partial-fraction and power-series expansions that follow from it;
//! and checks numerically the monotonicity properties and inequalities those
//! expansions imply (absolute monotonicity, log-concavity, van der Corput
//! type bounds, monotonicity in ν).
//!
//! ```
//! use dini::{dini, dini_zero, EvalPolicy, Order};
//!
//! let nu = Order::new(0.5).unwrap();
//! let a1 = dini_zero(nu, 1).unwrap();
//! assert!((a1 - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
//! assert!(dini(nu, a1, &EvalPolicy::default()).unwrap().abs() < 1e-12);
//! ```

mod dd;
mod error;
pub mod eval;
pub mod figure;
mod gamma;
pub mod monotonicity;
pub mod report;
mod roots;
pub mod spectral;
pub mod suite;
pub mod zeros;

pub use error::{Error, Result};
pub use eval::{
    bessel_j, bessel_j_prime, dini, dini_prime, g_pair, halfint_oracle, EvalPolicy, GPair,
    HalfIntValues, Order,
};
pub use gamma::{gamma, ln_gamma};
pub use report::{GridSpec, PropertyReport, Verdict, Violation};
pub use spectral::{
    eta2_exact, logderiv_power_series, logderiv_series, rayleigh_enclosure, weierstrass_product,
    PowerSeriesValue, ProductValue, RayleighEnclosure,
};
pub use zeros::{
    bessel_zero, dini_zero, nu_zero_monotone_check, positivity_domain, zero_table, Interval,
    PositivityDomain, ZeroKind, ZeroTable,
};
