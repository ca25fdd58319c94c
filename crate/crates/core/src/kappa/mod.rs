//! Residue bounds for Dedekind zeta functions.
//!
//! For a number field of degree n ≥ 2 and discriminant Δ, with d = n − 1 and
//! N = |Δ|, the residue κ at s = 1 satisfies
//!
//! e^{−K} / log log |Δ| ≤ κ ≤ e^{H} (log log |Δ|)^{n−1},
//!
//! conditional on GRH and on ζ_K/ζ being entire. Neither is checked here.

mod ingest;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{h_and_k, BoundInput};
use crate::envelope::ParamTriple;
use crate::optimizer::{minimize_hk, OptimConfig};
use crate::reference::{COROLLARY_EXPONENTS, GENERAL_EXPONENT, HK_TABLE, MINIMAL_FIELDS};
use crate::{Error, Result};

pub use ingest::{parse_records, ParsedRecords};

pub const ASSUMPTIONS: [&str; 2] = ["generalized Riemann hypothesis", "zeta_K / zeta is entire"];

/// Largest degree with a tabulated minimal discriminant.
pub const MAX_TABULATED_DEGREE: u32 = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldRecord {
    pub degree: u32,
    pub abs_discriminant: f64,
    pub label: Option<String>,
}

impl FieldRecord {
    pub fn new(degree: u32, abs_discriminant: f64, label: Option<String>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::domain("degree", f64::from(degree), "[2, inf)"));
        }
        if !(abs_discriminant >= 3.0) || abs_discriminant.is_infinite() {
            return Err(Error::domain(
                "|discriminant|",
                abs_discriminant,
                "[3, inf)",
            ));
        }
        if let Some(min) = minimal_discriminant(degree) {
            if abs_discriminant < min {
                return Err(Error::Precondition(format!(
                    "no degree-{degree} field has |discriminant| {abs_discriminant} < {min}"
                )));
            }
        }
        Ok(FieldRecord {
            degree,
            abs_discriminant,
            label,
        })
    }

    /// Non-fatal remarks about the record.
    pub fn warnings(&self) -> Vec<String> {
        if self.degree > MAX_TABULATED_DEGREE {
            vec![format!(
                "degree {} is above {MAX_TABULATED_DEGREE}; minimal discriminant not checked",
                self.degree
            )]
        } else {
            Vec::new()
        }
    }

    fn log_log_disc(&self) -> f64 {
        let v = self.abs_discriminant.ln().ln();
        assert!(v > 0.0, "|discriminant| >= 3 > e");
        v
    }
}

/// Minimal absolute discriminant of a degree-n field, for n ≤ 6.
pub fn minimal_discriminant(degree: u32) -> Option<f64> {
    MINIMAL_FIELDS
        .iter()
        .find(|f| f.degree == degree)
        .map(|f| f.abs_discriminant())
}

pub fn minimal_discriminants() -> &'static [crate::reference::MinimalField] {
    &MINIMAL_FIELDS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KappaSource {
    #[serde(rename = "general_17_81")]
    General,
    #[serde(rename = "per_degree_table")]
    PerDegree,
    #[serde(rename = "freshly_optimized")]
    Fresh,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaBounds {
    pub lower: f64,
    pub upper: f64,
    /// K, or 17.81 (n − 1) in general mode.
    pub exponent_lower: f64,
    /// H, or 17.81 (n − 1) in general mode.
    pub exponent_upper: f64,
    pub source: KappaSource,
    /// Natural logs of the bounds, finite even when the bounds overflow.
    pub ln_lower: f64,
    pub ln_upper: f64,
}

impl KappaBounds {
    fn from_exponents(field: &FieldRecord, k: f64, h: f64, source: KappaSource) -> Self {
        let lld = field.log_log_disc();
        let d = f64::from(field.degree - 1);
        KappaBounds {
            lower: (-k).exp() / lld,
            upper: lld.powf(d) * h.exp(),
            exponent_lower: k,
            exponent_upper: h,
            source,
            ln_lower: -k - lld.ln(),
            ln_upper: d * lld.ln() + h,
        }
    }
}

/// Round up at the second decimal. Never returns less than `x`.
pub fn ceil_2(x: f64) -> f64 {
    let r = (x * 100.0).ceil() / 100.0;
    if r < x {
        r + 0.01
    } else {
        r
    }
}

/// (H, K) at the tabulated triple for `degree`, evaluated at N0.
pub fn per_degree_values(degree: u32) -> Result<(f64, f64)> {
    let row = HK_TABLE
        .iter()
        .find(|r| r.degree == degree)
        .ok_or_else(|| {
            Error::Unsupported(format!("no per-degree constants for degree {degree}"))
        })?;
    let (b, dl, e) = row.triple;
    h_and_k(&BoundInput::new(
        ParamTriple::new(b, dl, e)?,
        row.d,
        row.n0,
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    General,
    PerDegree,
    Fresh,
}

pub fn kappa_bounds(field: &FieldRecord, mode: Mode, cfg: &OptimConfig) -> Result<KappaBounds> {
    match mode {
        Mode::General => {
            let e = GENERAL_EXPONENT * f64::from(field.degree - 1);
            Ok(KappaBounds::from_exponents(
                field,
                e,
                e,
                KappaSource::General,
            ))
        }
        Mode::PerDegree => {
            let (h, k) = per_degree_values(field.degree)?;
            Ok(KappaBounds::from_exponents(
                field,
                ceil_2(k),
                ceil_2(h),
                KappaSource::PerDegree,
            ))
        }
        Mode::Fresh => {
            let (h, k) = minimize_hk(field.degree - 1, field.abs_discriminant, cfg)?;
            Ok(KappaBounds::from_exponents(
                field,
                k.value,
                h.value,
                KappaSource::Fresh,
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryRow {
    pub degree: u32,
    pub h: f64,
    pub k: f64,
    pub upper_rounded: f64,
    pub lower_rounded: f64,
    pub published_upper: f64,
    pub published_lower: f64,
}

impl CorollaryRow {
    /// Same numbers as the published exponents at two decimals.
    pub fn matches_published(&self) -> bool {
        let cents = |v: f64| (v * 100.0).round() as i64;
        cents(self.upper_rounded) == cents(self.published_upper)
            && cents(self.lower_rounded) == cents(self.published_lower)
    }
}

/// Optimize H and K at each tabulated (d, N0) and round both up.
pub fn corollary_exponents(cfg: &OptimConfig) -> Result<Vec<CorollaryRow>> {
    HK_TABLE
        .iter()
        .zip(COROLLARY_EXPONENTS)
        .map(|(row, (degree, published_upper, published_lower))| {
            debug_assert_eq!(row.degree, degree);
            let (h, k) = minimize_hk(row.d, row.n0, cfg)?;
            Ok(CorollaryRow {
                degree,
                h: h.value,
                k: k.value,
                upper_rounded: ceil_2(h.value),
                lower_rounded: ceil_2(k.value),
                published_upper,
                published_lower,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub line: usize,
    pub degree: u32,
    pub abs_discriminant: f64,
    pub label: Option<String>,
    pub bounds: Option<KappaBounds>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub rows: usize,
    pub errors: usize,
    pub min_ln_lower: Option<f64>,
    pub max_ln_upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReport {
    pub assumptions: [&'static str; 2],
    pub rows: Vec<ReportRow>,
    pub errors: Vec<RowError>,
    pub summary: BatchSummary,
}

/// One row per parsed record, in input order. A record the chosen mode cannot
/// handle becomes a row error and falls back to general mode.
pub fn batch_report(parsed: &ParsedRecords, mode: Mode, cfg: &OptimConfig) -> BatchReport {
    let outcomes: Vec<(ReportRow, Option<RowError>)> = parsed
        .records
        .par_iter()
        .map(|(line, rec)| {
            let mut notes = rec.warnings();
            let mut error = None;
            let bounds = match kappa_bounds(rec, mode, cfg) {
                Ok(b) => Some(b),
                Err(e) => {
                    error = Some(RowError {
                        line: *line,
                        message: e.to_string(),
                    });
                    let fallback = kappa_bounds(rec, Mode::General, cfg).ok();
                    if fallback.is_some() {
                        notes.push("fell back to general mode".into());
                    }
                    fallback
                }
            };
            let row = ReportRow {
                line: *line,
                degree: rec.degree,
                abs_discriminant: rec.abs_discriminant,
                label: rec.label.clone(),
                bounds,
                notes,
            };
            (row, error)
        })
        .collect();

    let mut errors: Vec<RowError> = parsed
        .errors
        .iter()
        .map(|e| match e {
            Error::Parse { line, message } => RowError {
                line: *line,
                message: message.clone(),
            },
            other => RowError {
                line: 0,
                message: other.to_string(),
            },
        })
        .collect();
    let mut rows = Vec::with_capacity(outcomes.len());
    for (row, err) in outcomes {
        errors.extend(err);
        rows.push(row);
    }
    errors.sort_by_key(|e| e.line);

    let bounds = rows.iter().filter_map(|r| r.bounds.as_ref());
    let summary = BatchSummary {
        rows: rows.len(),
        errors: errors.len(),
        min_ln_lower: bounds.clone().map(|b| b.ln_lower).reduce(f64::min),
        max_ln_upper: bounds.map(|b| b.ln_upper).reduce(f64::max),
    };
    BatchReport {
        assumptions: ASSUMPTIONS,
        rows,
        errors,
        summary,
    }
}
