//! Bracketed scalar root refinement (Brent's method).

use crate::error::{Error, Result};

/// A refined root together with the final sign-change bracket `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Root {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Root {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn exact(x: f64) -> Root {
        Root { x, lo: x, hi: x }
    }
}

/// Brent's method on `[a, b]` given `fa = f(a)`, `fb = f(b)` of opposite sign
/// (a zero endpoint counts as a root). Stops once the maintained bracket is no
/// wider than `xtol + 4ε|x|`.
pub(crate) fn brent<F>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, xtol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    const MAX_ITER: usize = 200;
    if fa == 0.0 {
        return Ok(Root::exact(a));
    }
    if fb == 0.0 {
        return Ok(Root::exact(b));
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Err(Error::Bracket(format!(
            "no sign change on [{a}, {b}] (f(a) = {fa:e}, f(b) = {fb:e})"
        )));
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 {
            return Ok(Root {
                x: b,
                lo: b.min(c),
                hi: b.max(c),
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
        if fb == 0.0 {
            return Ok(Root::exact(b));
        }
    }
    Err(Error::Bracket(format!(
        "Brent iteration did not converge near {b} (bracket [{}, {}])",
        b.min(c),
        b.max(c)
    )))
}
