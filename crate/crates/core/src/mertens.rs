//! The RH-conditional Mertens envelope
//!
//! |Σ_{p≤x} 1/p − log log x − M| < m(x),  m(x) = (3 log x + 4)/(8π√x) + 5/x²,
//!
//! and its machine verification on the window [1.048, 13.5] where the
//! classical explicit estimate does not apply.

use std::f64::consts::PI;

use crate::specfun::{prime_recip_sum, sieve, CompensatedSum, PrimeTable};
use crate::{Error, Result, VerificationReport};

/// Meissel–Mertens constant.
pub const MEISSEL_MERTENS: f64 = 0.261_497_212_847_642_783_755;

/// Default verification window.
pub const WINDOW_LO: f64 = 1.048;
pub const WINDOW_HI: f64 = 13.5;

/// Bisection depth used when certifying the interior of a prime gap.
const MAX_CERT_DEPTH: u32 = 48;

/// m(x) for x ≥ 1.
pub fn m_envelope(x: f64) -> Result<f64> {
    if !(x >= 1.0) || x.is_infinite() {
        return Err(Error::domain("x", x, "[1, inf)"));
    }
    Ok(m_envelope_ln(x.ln()))
}

/// m(x) written in terms of ln x, for arguments too large for binary64.
pub fn m_envelope_ln(ln_x: f64) -> f64 {
    (3.0 * ln_x + 4.0) / (8.0 * PI) * (-0.5 * ln_x).exp() + 5.0 * (-2.0 * ln_x).exp()
}

/// Mertens data: the constant M and a prime table for the partial sums.
#[derive(Debug, Clone)]
pub struct MertensEnvelope {
    pub meissel_mertens: f64,
    table: PrimeTable,
}

impl MertensEnvelope {
    pub fn new(table: PrimeTable) -> Self {
        MertensEnvelope {
            meissel_mertens: MEISSEL_MERTENS,
            table,
        }
    }

    /// Sieves primes up to `limit` (at least 14).
    pub fn with_limit(limit: u64) -> Result<Self> {
        Ok(Self::new(sieve(limit.max(14))?))
    }

    pub fn table(&self) -> &PrimeTable {
        &self.table
    }

    fn defect_from_sum(&self, sum: f64, x: f64) -> f64 {
        sum - x.ln().ln() - self.meissel_mertens
    }

    fn recip_sum(&self, x: f64) -> f64 {
        let acc: CompensatedSum = self
            .table
            .up_to(x)
            .iter()
            .map(|&p| 1.0 / p as f64)
            .collect();
        acc.value()
    }

    /// Left and right limits of the defect at x (equal unless x is prime).
    pub fn defect_limits(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 1.0) {
            return Err(Error::domain("x", x, "(1, inf)"));
        }
        self.table.covers(x)?;
        let right = self.recip_sum(x);
        let left = match self.table.up_to(x).last() {
            Some(&p) if p as f64 == x => right - 1.0 / x,
            _ => right,
        };
        Ok((
            self.defect_from_sum(left, x),
            self.defect_from_sum(right, x),
        ))
    }

    /// m(x) − |defect(x)| using the worse of the two one-sided limits.
    pub fn clearance(&self, x: f64) -> Result<f64> {
        let (left, right) = self.defect_limits(x)?;
        Ok(m_envelope(x)? - left.abs().max(right.abs()))
    }
}

/// Σ_{p≤x} 1/p − log log x − M.
pub fn mertens_defect(x: f64, env: &MertensEnvelope) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::domain("x", x, "[2, inf)"));
    }
    Ok(env.defect_from_sum(prime_recip_sum(x, &env.table)?, x))
}

/// Checks |defect(x)| < m(x) on [lo, hi].
///
/// The partial sum is constant between primes, so on each gap the defect is
/// monotone decreasing and m is decreasing. Both one-sided limits are checked
/// at every prime and at the endpoints; the interior of each gap is then
/// certified with the bound m(x) − |defect(x)| ≥ m(v) − max(|defect(u)|,
/// |defect(v⁻)|) on subintervals [u, v], bisecting where that bound is not
/// yet positive.
pub fn verify_lemma_window(lo: f64, hi: f64, env: &MertensEnvelope) -> Result<VerificationReport> {
    if !(lo >= 1.0 && lo < hi) {
        return Err(Error::Precondition(format!(
            "window [{lo}, {hi}] must satisfy 1 <= lo < hi"
        )));
    }
    env.table.covers(hi)?;

    let mut report = VerificationReport::new("mertens-window", [lo, hi]);
    let mut breaks = vec![lo];
    breaks.extend(
        env.table
            .primes()
            .iter()
            .map(|&p| p as f64)
            .filter(|&p| p > lo && p <= hi),
    );
    if *breaks.last().expect("nonempty") < hi {
        breaks.push(hi);
    }

    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        // sum is constant on [a, b)
        let sum = env.recip_sum(a);
        let point = |x: f64| -> f64 {
            if x <= 1.0 {
                f64::INFINITY
            } else {
                env.defect_from_sum(sum, x)
            }
        };
        let m = |x: f64| m_envelope_ln(x.ln());
        report.observe(m(a) - point(a).abs(), &[a]);
        report.observe(m(b) - point(b).abs(), &[b]);
        certify_gap(a, b, &point, &m, 0, &mut report);
    }
    // right limit at hi
    let sum_hi = env.recip_sum(hi);
    report.observe(
        m_envelope_ln(hi.ln()) - env.defect_from_sum(sum_hi, hi).abs(),
        &[hi],
    );
    Ok(report.finish())
}

fn certify_gap(
    u: f64,
    v: f64,
    defect: &impl Fn(f64) -> f64,
    m: &impl Fn(f64) -> f64,
    depth: u32,
    report: &mut VerificationReport,
) {
    let bound = m(v) - defect(u).abs().max(defect(v).abs());
    if bound > 0.0 {
        return;
    }
    let mid = 0.5 * (u + v);
    let actual = m(mid) - defect(mid).abs();
    report.observe(actual, &[mid]);
    if depth >= MAX_CERT_DEPTH || actual <= 0.0 {
        // could not separate; the bound itself enters the report
        report.observe(bound.min(actual), &[u, v]);
        return;
    }
    certify_gap(u, mid, defect, m, depth + 1, report);
    certify_gap(mid, v, defect, m, depth + 1, report);
}

/// Samples (x, |defect(x)|, m(x)) on a uniform grid over [lo, hi].
pub fn envelope_samples(
    lo: f64,
    hi: f64,
    points: usize,
    env: &MertensEnvelope,
) -> Result<Vec<(f64, f64, f64)>> {
    if points < 2 || !(lo > 1.0 && lo < hi) {
        return Err(Error::Precondition(format!(
            "need lo > 1, lo < hi and at least two points (got [{lo}, {hi}], {points})"
        )));
    }
    env.table.covers(hi)?;
    (0..points)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
            let defect = env.defect_from_sum(env.recip_sum(x), x);
            Ok((x, defect.abs(), m_envelope(x)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> MertensEnvelope {
        MertensEnvelope::with_limit(100).unwrap()
    }

    #[test]
    fn envelope_values() {
        assert!((m_envelope(1.0).unwrap() - (4.0 / (8.0 * PI) + 5.0)).abs() < 1e-15);
        assert!((m_envelope(1.0).unwrap() - 5.159_154_943_1).abs() < 1e-10);
        let e2 = std::f64::consts::E.powi(2);
        // 40-digit reference
        assert!((m_envelope(e2).unwrap() - 0.237_952_773_254_468_8).abs() < 1e-14);
        assert!(m_envelope(0.99).is_err());
    }

    #[test]
    fn envelope_decreasing_near_window_end() {
        let h = 1e-6;
        let d = (m_envelope(13.5 + h).unwrap() - m_envelope(13.5 - h).unwrap()) / (2.0 * h);
        assert!(d < 0.0);
    }

    #[test]
    fn envelope_strictly_decreasing_on_grid() {
        let mut prev = m_envelope(2.0).unwrap();
        for i in 1..=10_000 {
            let x = 2.0 + 1000.0 * i as f64 / 10_000.0;
            let cur = m_envelope(x).unwrap();
            assert!(cur < prev, "not decreasing at {x}");
            prev = cur;
        }
    }

    #[test]
    fn ln_form_matches_direct() {
        for x in [1.0f64, 1.5, 13.5, 1e6, 1e100] {
            let direct = (3.0 * x.ln() + 4.0) / (8.0 * PI * x.sqrt()) + 5.0 / (x * x);
            let via_ln = m_envelope_ln(x.ln());
            assert!(
                (direct - via_ln).abs() <= 1e-14 * direct,
                "{x}: {direct} vs {via_ln}"
            );
        }
        // x = e^{1000} would overflow binary64
        assert!(m_envelope_ln(1000.0) > 0.0);
    }

    #[test]
    fn defect_at_two() {
        let d = mertens_defect(2.0, &env()).unwrap();
        assert!((d - 0.605_015_707_734_021_5).abs() < 1e-14);
        assert!(mertens_defect(1.9, &env()).is_err());
    }

    #[test]
    fn clearances_at_figure_points() {
        let env = env();
        let expected = [(5.0, 0.061), (7.0, 0.0010), (11.0, 0.045), (13.0, 0.018)];
        for (x, c) in expected {
            let got = env.clearance(x).unwrap();
            let tol = if x == 7.0 { 0.0006 } else { 0.003 };
            assert!((got - c).abs() <= tol, "clearance at {x}: {got}");
        }
        // 40-digit references
        assert!((env.clearance(7.0).unwrap() - 0.001_024_321_286_629_29).abs() < 1e-13);
        assert!((env.clearance(13.0).unwrap() - 0.018_056_543_071_145_48).abs() < 1e-13);
    }

    #[test]
    fn lemma_window_passes() {
        let env = env();
        let r = verify_lemma_window(WINDOW_LO, WINDOW_HI, &env).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.worst_margin > 0.0);
        // tightest spot is the right limit at 7
        assert_eq!(r.witness, vec![7.0]);
        assert!((r.worst_margin - 0.001_024_321_286_629_29).abs() < 1e-12);
        let at_13 = mertens_defect(13.5, &env).unwrap().abs();
        assert!(at_13 < m_envelope(13.5).unwrap());
    }

    #[test]
    fn window_from_one_fails() {
        let r = verify_lemma_window(1.0, WINDOW_HI, &env()).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn window_preconditions() {
        assert!(verify_lemma_window(5.0, 5.0, &env()).is_err());
        assert!(verify_lemma_window(0.5, 5.0, &env()).is_err());
        let small = MertensEnvelope::new(sieve(14).unwrap());
        assert!(verify_lemma_window(1.048, 20.0, &small).is_err());
    }

    #[test]
    fn dense_grid_agrees_with_certificate() {
        let env = env();
        let samples = envelope_samples(WINDOW_LO, WINDOW_HI, 100_000, &env).unwrap();
        let mut worst = (f64::INFINITY, 0.0);
        for (x, d, m) in samples {
            assert!(d < m, "violation at {x}");
            if m - d < worst.0 {
                worst = (m - d, x);
            }
        }
        // the grid's tightest point sits just right of 7
        assert!(worst.1 >= 7.0 && worst.1 < 7.01, "{worst:?}");
    }
}
