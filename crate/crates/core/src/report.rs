//! Verification reports and their JSON encoding.
//!
//! Floating-point fields are written with 17 significant digits
//! (`{:.16e}`) so that every binary64 value survives a round trip.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default absolute tolerance for margins that are nonnegative in exact arithmetic.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "PASS_WITH_NOTES")]
    PassWithNotes,
}

impl Verdict {
    pub fn passed(self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

/// Where a property was sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub description: String,
    #[serde(with = "real")]
    pub min: f64,
    #[serde(with = "real")]
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(description: impl Into<String>, min: f64, max: f64, points: usize) -> Self {
        GridSpec {
            description: description.into(),
            min,
            max,
            points,
        }
    }

    /// `points` equally spaced values from `min` to `max` inclusive.
    pub fn linspace(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.min],
            n => {
                let step = (self.max - self.min) / (n - 1) as f64;
                (0..n)
                    .map(|k| if k == n - 1 { self.max } else { self.min + step * k as f64 })
                    .collect()
            }
        }
    }

    /// Bounds and count of an explicit point list.
    pub fn of_points(description: impl Into<String>, points: &[f64]) -> Self {
        let min = points.iter().copied().fold(f64::INFINITY, f64::min);
        let max = points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (min, max) = if points.is_empty() { (0.0, 0.0) } else { (min, max) };
        GridSpec::new(description, min, max, points.len())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    #[serde(with = "real")]
    pub point: f64,
    #[serde(with = "real")]
    pub lhs: f64,
    #[serde(with = "real")]
    pub rhs: f64,
}

/// Outcome of checking one inequality or monotonicity property on a grid.
///
/// Margins are oriented so that a satisfied property has margin ≥ 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    #[serde(with = "real_map")]
    pub params: BTreeMap<String, f64>,
    pub grid: GridSpec,
    #[serde(with = "real_opt")]
    pub min_margin: Option<f64>,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Combines several reports on the same property into one.
    pub fn merge(name: impl Into<String>, reports: &[PropertyReport]) -> PropertyReport {
        let mut b = ReportBuilder::new(name, DEFAULT_TOLERANCE);
        b.param("sub_reports", reports.len() as f64);
        let mut points = 0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut failed = false;
        for r in reports {
            points += r.grid.points;
            if r.grid.points > 0 {
                min = min.min(r.grid.min);
                max = max.max(r.grid.max);
            }
            if let Some(m) = r.min_margin {
                b.min_margin = Some(b.min_margin.map_or(m, |cur: f64| cur.min(m)));
            }
            for v in &r.violations {
                b.violations.push(Violation {
                    label: format!("{}: {}", r.name, v.label),
                    ..v.clone()
                });
            }
            for n in &r.notes {
                b.notes.push(format!("{}: {}", r.name, n));
            }
            failed |= !r.passed();
        }
        if points == 0 {
            min = 0.0;
            max = 0.0;
        }
        let mut out = b.finish(GridSpec::new("union of sub-report grids", min, max, points));
        if failed {
            out.verdict = Verdict::Fail;
        }
        out
    }
}

/// Accumulates margins and violations for one report.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    name: String,
    tol: f64,
    params: BTreeMap<String, f64>,
    min_margin: Option<f64>,
    violations: Vec<Violation>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(name: impl Into<String>, tol: f64) -> Self {
        let mut params = BTreeMap::new();
        params.insert("tolerance".to_string(), tol);
        ReportBuilder {
            name: name.into(),
            tol,
            params,
            min_margin: None,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: f64) -> &mut Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Records one comparison `lhs` vs `rhs` with the given oriented margin.
    /// A margin below `-tolerance` (or NaN) is a violation.
    pub fn record(&mut self, label: &str, point: f64, lhs: f64, rhs: f64, margin: f64) {
        if margin.is_nan() || margin < -self.tol {
            self.violations.push(Violation {
                label: label.to_string(),
                point,
                lhs,
                rhs,
            });
        }
        if !margin.is_nan() {
            self.min_margin = Some(self.min_margin.map_or(margin, |m| m.min(margin)));
        }
    }

    /// Records a failed check that has no natural margin.
    pub fn violation(&mut self, label: &str, point: f64, lhs: f64, rhs: f64) {
        self.violations.push(Violation {
            label: label.to_string(),
            point,
            lhs,
            rhs,
        });
    }

    /// Records `lhs >= rhs`.
    pub fn record_ge(&mut self, label: &str, point: f64, lhs: f64, rhs: f64) {
        self.record(label, point, lhs, rhs, lhs - rhs);
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.min_margin
    }

    pub fn finish(self, grid: GridSpec) -> PropertyReport {
        let ok = self.violations.is_empty() && self.min_margin.is_none_or(|m| m >= -self.tol);
        let verdict = match (ok, self.notes.is_empty()) {
            (false, _) => Verdict::Fail,
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::PassWithNotes,
        };
        PropertyReport {
            name: self.name,
            params: self.params,
            grid,
            min_margin: self.min_margin,
            violations: self.violations,
            notes: self.notes,
            verdict,
        }
    }
}

/// Formats a finite f64 with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn real_number(x: f64) -> Option<serde_json::Number> {
    if x.is_finite() {
        serde_json::Number::from_str(&format_real(x)).ok()
    } else {
        None
    }
}

/// A JSON number with 17 significant digits, or `null` if `x` is not finite.
pub fn json_real(x: f64) -> serde_json::Value {
    real_number(x).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

/// Serializes f64 fields as 17-significant-digit JSON numbers (`null` if not finite).
pub mod real {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        match real_number(*x) {
            Some(n) => n.serialize(s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

pub mod real_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x.and_then(real_number) {
            Some(n) => n.serialize(s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<f64>::deserialize(d)
    }
}

pub mod real_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            match real_number(*x) {
                Some(n) => seq.serialize_element(&n)?,
                None => seq.serialize_element(&Option::<f64>::None)?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        let raw = Vec::<Option<f64>>::deserialize(d)?;
        Ok(raw.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())
    }
}

pub mod real_map {
    use super::*;
    use serde::ser::SerializeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            match real_number(*v) {
                Some(n) => map.serialize_entry(k, &n)?,
                None => map.serialize_entry(k, &Option::<f64>::None)?,
            }
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        let raw = BTreeMap::<String, Option<f64>>::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|(k, v)| (k, v.unwrap_or(f64::NAN)))
            .collect())
    }
}
