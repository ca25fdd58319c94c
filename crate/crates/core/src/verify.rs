use serde::Serialize;

/// Outcome of checking an inequality over a finite region.
///
/// `worst_margin` is the smallest value of `bound - quantity` seen over the
/// checked points and `witness` is where it occurred. A report passes exactly
/// when that margin is strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub window: [f64; 2],
    pub passed: bool,
    pub worst_margin: f64,
    pub witness: Vec<f64>,
    pub points_checked: u64,
}

impl VerificationReport {
    pub(crate) fn new(name: impl Into<String>, window: [f64; 2]) -> Self {
        VerificationReport {
            name: name.into(),
            window,
            passed: false,
            worst_margin: f64::INFINITY,
            witness: Vec::new(),
            points_checked: 0,
        }
    }

    /// Record one checked point. NaN margins count as violations.
    pub(crate) fn observe(&mut self, margin: f64, at: &[f64]) {
        self.points_checked += 1;
        let margin = if margin.is_nan() {
            f64::NEG_INFINITY
        } else {
            margin
        };
        if margin < self.worst_margin {
            self.worst_margin = margin;
            self.witness = at.to_vec();
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.passed = self.worst_margin > 0.0;
        self
    }
}
