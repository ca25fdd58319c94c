use std::fmt::Write as _;

use duke_bounds::kappa::BatchReport;
use duke_bounds::VerificationReport;

/// CSV text: `# key=value` lines, a column row, then the data rows.
pub fn csv<R>(meta: &[(&str, String)], columns: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = Vec<String>>,
{
    let mut out = String::new();
    for (k, v) in meta {
        writeln!(out, "# {k}={v}").unwrap();
    }
    writeln!(out, "{}", columns.join(",")).unwrap();
    for row in rows {
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    out
}

pub fn num(v: f64) -> String {
    format!("{v:e}")
}

pub fn report_line(r: &VerificationReport) -> String {
    let witness: Vec<String> = r.witness.iter().map(|w| format!("{w}")).collect();
    format!(
        "{:<5} {:<28} margin={:<12.6e} witness=[{}] points={}",
        if r.passed { "ok" } else { "FAIL" },
        r.name,
        r.worst_margin,
        witness.join(", "),
        r.points_checked
    )
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn kappa_csv(report: &BatchReport, mode: &str) -> String {
    let meta = vec![
        ("assumptions", report.assumptions.join("; ")),
        ("mode", mode.to_string()),
        ("rows", report.summary.rows.to_string()),
        ("errors", report.summary.errors.to_string()),
    ];
    let columns = [
        "line",
        "degree",
        "abs_discriminant",
        "label",
        "source",
        "exponent_lower",
        "exponent_upper",
        "lower",
        "upper",
        "ln_lower",
        "ln_upper",
        "notes",
    ];
    let rows = report.rows.iter().map(|r| {
        let mut row = vec![
            r.line.to_string(),
            r.degree.to_string(),
            format!("{}", r.abs_discriminant),
            quote(r.label.as_deref().unwrap_or("")),
        ];
        match &r.bounds {
            Some(b) => {
                let source = serde_json::to_value(b.source).unwrap();
                row.push(source.as_str().unwrap_or("").to_string());
                row.extend([
                    format!("{}", b.exponent_lower),
                    format!("{}", b.exponent_upper),
                    num(b.lower),
                    num(b.upper),
                    format!("{}", b.ln_lower),
                    format!("{}", b.ln_upper),
                ]);
            }
            None => row.extend(std::iter::repeat_n(String::new(), 7)),
        }
        row.push(quote(&r.notes.join("; ")));
        row
    });
    csv(&meta, &columns, rows)
}
