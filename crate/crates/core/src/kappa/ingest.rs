//! Reader for `degree,abs_discriminant[,label]` records.

use super::FieldRecord;
use crate::Error;

/// Records that parsed, each with its 1-based line number, plus per-line errors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedRecords {
    pub records: Vec<(usize, FieldRecord)>,
    pub errors: Vec<Error>,
}

/// Parse one record per line. Blank lines and `#` comments are skipped; a
/// leading sign on the discriminant is accepted and dropped.
pub fn parse_records(text: &str) -> ParsedRecords {
    let mut out = ParsedRecords::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        match parse_line(body) {
            Ok(rec) => out.records.push((line, rec)),
            Err(message) => out.errors.push(Error::Parse { line, message }),
        }
    }
    out
}

fn parse_line(body: &str) -> Result<FieldRecord, String> {
    let fields: Vec<&str> = body.split(',').map(str::trim).collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(format!("expected 2 or 3 fields, found {}", fields.len()));
    }
    let degree: u32 = fields[0]
        .parse()
        .map_err(|_| format!("degree {:?} is not a non-negative integer", fields[0]))?;
    let disc = fields[1].trim_start_matches(['+', '-']);
    let abs_discriminant: f64 = disc
        .parse()
        .ok()
        .filter(|v: &f64| v.is_finite())
        .ok_or_else(|| format!("discriminant {:?} is not a number", fields[1]))?;
    let label = fields
        .get(2)
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string());
    FieldRecord::new(degree, abs_discriminant, label).map_err(|e| e.to_string())
}
