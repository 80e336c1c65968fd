//! Gamma function for positive real arguments (Lanczos, g = 7, n = 9).

use crate::error::{domain, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;
const LN_SQRT_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Lanczos sum A_g(z) for Γ(z + 1).
fn lanczos_sum(z: f64) -> f64 {
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

fn check(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(format!("gamma requires finite x > 0, got {x}")));
    }
    Ok(())
}

/// Γ(x) for finite x > 0. Overflows to `+inf` above x ≈ 171.6.
pub fn gamma(x: f64) -> Result<f64> {
    check(x)?;
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x.fract() == 0.0 && (1.0..=171.0).contains(&x) {
        return (2..x as u32).fold(1.0, |acc, k| acc * k as f64);
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos argument away from the left edge.
        return gamma_unchecked(x + 1.0) / x;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // t^(z + 1/2) split in two halves to postpone overflow.
    let half = t.powf(0.5 * (z + 0.5));
    SQRT_TWO_PI * half * (half * (-t).exp()) * lanczos_sum(z)
}

/// ln Γ(x) for finite x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check(x)?;
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return ln_gamma_unchecked(x + 1.0) - x.ln();
    }
    if x < 20.0 {
        return gamma_unchecked(x).ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_TWO_PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-14);
        assert!(rel(gamma(0.5).unwrap(), std::f64::consts::PI.sqrt()) < 1e-14);
        assert!(rel(gamma(1.5).unwrap(), 0.5 * std::f64::consts::PI.sqrt()) < 1e-14);
    }

    #[test]
    fn factorials_up_to_170() {
        let mut fact = 1.0f64;
        for n in 1..=170u32 {
            // Γ(n + 1) = n!; the running product is exact up to 22! and within
            // n ulp afterwards.
            fact *= n as f64;
            let tol = if n <= 22 { 1e-13 } else { 1e-13 + n as f64 * 2.3e-16 };
            assert!(rel(gamma(n as f64 + 1.0).unwrap(), fact) < tol, "n = {n}");
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
        assert!(gamma(f64::NAN).is_err());
        assert!(ln_gamma(f64::INFINITY).is_err());
    }

    proptest! {
        #[test]
        fn recurrence_holds(x in 0.01f64..60.0) {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            prop_assert!(rel(lhs, rhs) < 2e-14);
        }

        #[test]
        fn duplication_formula(x in 0.05f64..40.0) {
            // Γ(x) Γ(x + 1/2) = 2^(1 - 2x) √π Γ(2x)
            let lhs = ln_gamma(x).unwrap() + ln_gamma(x + 0.5).unwrap();
            let rhs = (1.0 - 2.0 * x) * std::f64::consts::LN_2
                + 0.5 * std::f64::consts::PI.ln()
                + ln_gamma(2.0 * x).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-13 * (1.0 + lhs.abs()));
        }
    }
}
