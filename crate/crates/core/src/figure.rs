//! Data for the plot of d_1 against its exponential envelope (x/2) e^{−3x²/8}.

use crate::error::{domain, Result};
use crate::eval::{dini, EvalPolicy, Order};

/// Column names of the figure CSV.
pub const FIGURE_HEADER: &str = "x,d1,envelope";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub x: f64,
    pub d1: f64,
    pub envelope: f64,
}

/// `points` rows on [0, x_max], endpoints included. Only `fig = 1` exists.
pub fn figure_data(fig: u32, x_max: f64, points: usize) -> Result<Vec<FigureRow>> {
    if fig != 1 {
        return Err(domain(format!("unknown figure {fig}; only figure 1 is available")));
    }
    if !x_max.is_finite() || x_max <= 0.0 {
        return Err(domain(format!("x_max must be finite and > 0, got {x_max}")));
    }
    if points < 2 {
        return Err(domain(format!("points must be >= 2, got {points}")));
    }
    let one = Order::new(1.0)?;
    let policy = EvalPolicy::default();
    let step = x_max / (points - 1) as f64;
    (0..points)
        .map(|k| {
            let x = if k == points - 1 { x_max } else { step * k as f64 };
            Ok(FigureRow {
                x,
                d1: dini(one, x, &policy)?,
                envelope: 0.5 * x * (-0.375 * x * x).exp(),
            })
        })
        .collect()
}

/// Fixed-point CSV with ten decimals, LF line endings and a header row.
pub fn figure_csv(rows: &[FigureRow]) -> String {
    let mut out = String::with_capacity(40 * (rows.len() + 1));
    out.push_str(FIGURE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{:.10},{:.10},{:.10}\n", r.x, r.d1, r.envelope));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_count() {
        let rows = figure_data(1, 5.0, 11).unwrap();
        assert_eq!(rows.len(), 11);
        assert_eq!(rows[0], FigureRow { x: 0.0, d1: 0.0, envelope: 0.0 });
        assert_eq!(rows[10].x, 5.0);
        assert_eq!(rows[2].x, 1.0);
        assert!((rows[2].d1 - 0.325_147_100_813_033_1).abs() < 1e-12);
        assert!((rows[2].envelope - 0.343_644_6).abs() < 1e-7);
    }

    #[test]
    fn csv_layout() {
        let csv = figure_csv(&figure_data(1, 1.0, 2).unwrap());
        assert_eq!(
            csv,
            "x,d1,envelope\n0.0000000000,0.0000000000,0.0000000000\n1.0000000000,0.3251471008,0.3436446394\n"
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(figure_data(2, 5.0, 10).is_err());
        assert!(figure_data(1, -1.0, 10).is_err());
        assert!(figure_data(1, 5.0, 1).is_err());
    }
}
