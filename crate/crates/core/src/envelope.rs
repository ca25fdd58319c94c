//! The gamma envelope f(s) on the strip σ ∈ [−1+δ, −1/2+δ], its critical
//! root τ, the maximum μ(δ) and the derived constants C₁ … C₇.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::quadrature::{integrate_to_infinity, Quadrature};
use crate::specfun::{log_abs_gamma, zeta_real, EvalOptions};
use crate::{Error, Result, VerificationReport};

pub const BETA_MIN: f64 = 4.5;
pub const BETA_MAX: f64 = 300.0;
pub const ETA_MAX: f64 = 1.5;

/// Bracket searched for τ.
const TAU_BRACKET: (f64, f64) = (0.01, 0.49);

/// Relative slack on μ(δ) in the strip check; the maximum is attained on the
/// lattice, and at δ = τ at two lattice points.
const STRIP_SLACK: f64 = 1e-9;

/// Slack, in log space, absorbed by the gamma evaluation.
const GAMMA_SLACK: f64 = 1e-9;

/// Half-width of the t-range sampled by [`verify_gamma_envelope`].
const GAMMA_T_MAX: f64 = 30.0;

const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;

/// A point of the search region [4.5, 300] × (0, τ] × (1, 3/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamTriple {
    pub beta: f64,
    pub delta: f64,
    pub eta: f64,
}

impl ParamTriple {
    pub fn new(beta: f64, delta: f64, eta: f64) -> Result<Self> {
        if !(BETA_MIN..=BETA_MAX).contains(&beta) {
            return Err(Error::domain("beta", beta, "[4.5, 300]"));
        }
        if !(delta > 0.0 && delta <= tau()) {
            return Err(Error::domain("delta", delta, "(0, tau]"));
        }
        if !(eta > 1.0 && eta <= ETA_MAX) {
            return Err(Error::domain("eta", eta, "(1, 3/2]"));
        }
        Ok(ParamTriple { beta, delta, eta })
    }

    /// Skips the region check, e.g. for surface plots that extend β past 300.
    /// The formulas still need δ ∈ (0, 1/2) and η > 1 to be finite.
    pub fn unchecked(beta: f64, delta: f64, eta: f64) -> Self {
        ParamTriple { beta, delta, eta }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.beta, self.delta, self.eta]
    }
}

/// The constants that depend on (δ, η), plus τ and μ(δ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantSet {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
    pub tau: f64,
    pub mu: f64,
}

impl ConstantSet {
    /// Evaluates the constants without checking that (δ, η) lies in the
    /// search region.
    pub fn for_delta_eta(delta: f64, eta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::domain("delta", delta, "(0, 1/2)"));
        }
        if !(eta > 1.0) {
            return Err(Error::domain("eta", eta, "(1, inf)"));
        }
        let opts = EvalOptions::default();
        let c1 = c1();
        let c2 = (2.0 * eta - 1.0) / (2.0 * delta * delta);
        let ratio = c1 * zeta_real(eta, &opts)? / zeta_real(2.0 * eta, &opts)?;
        let c3 = ratio * ratio;
        let c4 = c4(delta);
        let c5 = c4 * (c3.ln() + FRAC_PI_2);
        Ok(ConstantSet {
            c1,
            c2,
            c3,
            c4,
            c5,
            c6: c2 * c4 / (2.0 * PI),
            c7: c2 * c5 / (2.0 * PI),
            tau: tau(),
            mu: mu(delta),
        })
    }
}

/// All constants at a point of the search region.
pub fn constants_for(p: &ParamTriple) -> Result<ConstantSet> {
    ConstantSet::for_delta_eta(p.delta, p.eta)
}

/// C₁ = ζ(3/2)/√(2π).
pub fn c1() -> f64 {
    static C1: OnceLock<f64> = OnceLock::new();
    *C1.get_or_init(|| zeta_real(1.5, &EvalOptions::default()).expect("3/2 > 1") / SQRT_TWO_PI)
}

/// C₄(δ) = 4√2 δ^{δ−1/2} e^{1/(6δ)} / (√π (1 − δ)), which equals 4μ(δ)/π.
pub fn c4(delta: f64) -> f64 {
    4.0 * std::f64::consts::SQRT_2 * delta.powf(delta - 0.5) * (1.0 / (6.0 * delta)).exp()
        / (PI.sqrt() * (1.0 - delta))
}

/// μ(δ) = √(2π) δ^{δ−1/2} e^{1/(6δ)} / (1 − δ), the value of f at s = −1+δ.
pub fn mu(delta: f64) -> f64 {
    SQRT_TWO_PI * delta.powf(delta - 0.5) * (1.0 / (6.0 * delta)).exp() / (1.0 - delta)
}

/// f(s) = √(2π) |s+1|^{σ+1/2} exp(1/(6|s+1|)) / |s| at s = σ + it.
pub fn f_abs(sigma: f64, t: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::domain("delta", delta, "(0, 1/2)"));
    }
    let eps = 1e-12;
    if !(sigma >= -1.0 + delta - eps && sigma <= -0.5 + delta + eps) {
        return Err(Error::domain("sigma", sigma, "[-1+delta, -1/2+delta]"));
    }
    Ok(f_unchecked(sigma, t))
}

fn f_unchecked(sigma: f64, t: f64) -> f64 {
    let shifted = (sigma + 1.0).hypot(t);
    let modulus = sigma.hypot(t);
    SQRT_TWO_PI * shifted.powf(sigma + 0.5) * (1.0 / (6.0 * shifted)).exp() / modulus
}

/// g(δ) = f(−1+δ) − f(−1/2+δ) on the real axis; τ is its root.
pub fn tau_gap(delta: f64) -> f64 {
    f_unchecked(-1.0 + delta, 0.0) - f_unchecked(-0.5 + delta, 0.0)
}

/// Bisection for the unique root of [`tau_gap`] in (0.01, 0.49).
pub fn solve_tau() -> Result<f64> {
    let (mut lo, mut hi) = TAU_BRACKET;
    let (g_lo, g_hi) = (tau_gap(lo), tau_gap(hi));
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::NoBracket { lo, hi });
    }
    let lo_positive = g_lo > 0.0;
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = tau_gap(mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if (g > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Cached τ.
pub fn tau() -> f64 {
    static TAU: OnceLock<f64> = OnceLock::new();
    *TAU.get_or_init(|| solve_tau().expect("tau bracket is valid"))
}

/// An upper bound for f valid for |t| ≥ 1 on the strip.
fn strip_tail_bound(delta: f64, t: f64) -> f64 {
    SQRT_TWO_PI * (1.0 / (6.0 * delta)).exp() * (0.5 + delta + t).powf(delta) / t
}

/// Smallest power-of-two T ≥ 1 beyond which the uniform tail bound already
/// lies below μ(δ), so that only |t| ≤ T needs sampling.
pub fn strip_cutoff(delta: f64) -> f64 {
    let target = mu(delta);
    let mut t = 1.0;
    while strip_tail_bound(delta, t) >= target {
        t *= 2.0;
    }
    t
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= tau()) {
        return Err(Error::Precondition(format!(
            "delta = {delta} must lie in (0, tau]"
        )));
    }
    Ok(())
}

/// Checks f(σ + it) ≤ μ(δ) on a `grid × grid` lattice covering
/// [−1+δ, −1/2+δ] × [−T, T], with T from [`strip_cutoff`].
pub fn verify_strip_max(delta: f64, grid: usize) -> Result<VerificationReport> {
    check_delta(delta)?;
    if grid < 100 {
        return Err(Error::Precondition(format!(
            "grid = {grid} must be at least 100"
        )));
    }
    let cutoff = strip_cutoff(delta);
    let bound = mu(delta) * (1.0 + STRIP_SLACK);
    let mut report = VerificationReport::new(format!("strip-max delta={delta}"), [-cutoff, cutoff]);
    let step = |i: usize, lo: f64, hi: f64| lo + (hi - lo) * i as f64 / (grid - 1) as f64;
    for i in 0..grid {
        let sigma = step(i, -1.0 + delta, -0.5 + delta);
        for j in 0..grid {
            let t = step(j, -cutoff, cutoff);
            report.observe(bound - f_unchecked(sigma, t), &[sigma, t]);
        }
    }
    // the tail region |t| > T is covered analytically
    report.observe(bound - strip_tail_bound(delta, cutoff), &[f64::NAN, cutoff]);
    Ok(report.finish())
}

/// Checks |Γ(σ + it)| ≤ μ(δ) e^{−π|t|/2} on roughly `samples` lattice points
/// of the strip × [−30, 30], comparing logarithms.
pub fn verify_gamma_envelope(delta: f64, samples: usize) -> Result<VerificationReport> {
    check_delta(delta)?;
    if samples < 4 {
        return Err(Error::Precondition(format!(
            "samples = {samples} must be at least 4"
        )));
    }
    let n_sigma = (samples as f64).sqrt().ceil() as usize;
    let n_t = samples.div_ceil(n_sigma).max(2);
    let ln_mu = mu(delta).ln();
    let mut report = VerificationReport::new(
        format!("gamma-envelope delta={delta}"),
        [-GAMMA_T_MAX, GAMMA_T_MAX],
    );
    for i in 0..n_sigma {
        let sigma = -1.0 + delta + 0.5 * i as f64 / (n_sigma - 1).max(1) as f64;
        for j in 0..n_t {
            let t = -GAMMA_T_MAX + 2.0 * GAMMA_T_MAX * j as f64 / (n_t - 1) as f64;
            let bound = ln_mu - FRAC_PI_2 * t.abs() + GAMMA_SLACK;
            report.observe(bound - log_abs_gamma(sigma, t)?, &[sigma, t]);
        }
    }
    Ok(report.finish())
}

/// C₄ log N / d + C₅, the bound on ∫ |Γ(σ+it)| log(C₃ N^{1/d}(|t|+4)) dt.
pub fn gamma_integral_rhs(delta: f64, eta: f64, d: u32, n: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::domain("d", 0.0, "[1, inf)"));
    }
    if !(n >= 3.0) {
        return Err(Error::domain("N", n, "[3, inf)"));
    }
    check_delta(delta)?;
    let c = ConstantSet::for_delta_eta(delta, eta)?;
    Ok(c.c4 * n.ln() / f64::from(d) + c.c5)
}

/// ∫_0^∞ e^{−πt/2} log(t + 4) dt, which the integral bound takes to be ≤ 1.
pub fn gamma_weight_integral() -> Result<Quadrature> {
    integrate_to_infinity(
        |t| (-FRAC_PI_2 * t).exp() * (t + 4.0).ln(),
        0.0,
        1e-13,
        1e-13,
    )
}

/// Report form of the weight-integral check: margin 1 − (value + error estimate).
pub fn verify_weight_integral() -> Result<VerificationReport> {
    let q = gamma_weight_integral()?;
    let mut report = VerificationReport::new("weight-integral", [0.0, f64::INFINITY]);
    report.observe(1.0 - (q.value + q.error_estimate), &[q.value]);
    Ok(report.finish())
}

/// (δ, g(δ)) samples on (0, 1/2).
pub fn tau_gap_samples(points: usize) -> Vec<(f64, f64)> {
    (1..=points)
        .map(|i| {
            let delta = 0.5 * i as f64 / (points + 1) as f64;
            (delta, tau_gap(delta))
        })
        .collect()
}

/// (δ, C₄(δ)) samples on [lo, τ].
pub fn c4_samples(lo: f64, points: usize) -> Vec<(f64, f64)> {
    let hi = tau();
    (0..points)
        .map(|i| {
            let delta = lo + (hi - lo) * i as f64 / (points - 1).max(1) as f64;
            (delta, c4(delta))
        })
        .collect()
}

/// (σ, t, f) samples on the strip for a fixed δ.
pub fn strip_samples(delta: f64, t_max: f64, points: usize) -> Result<Vec<(f64, f64, f64)>> {
    check_delta(delta)?;
    let n = points.max(2);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let sigma = -1.0 + delta + 0.5 * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let t = -t_max + 2.0 * t_max * j as f64 / (n - 1) as f64;
            out.push((sigma, t, f_unchecked(sigma, t)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_matches_reference() {
        let t = solve_tau().unwrap();
        assert!((t - 0.219_733_068_786_773).abs() < 1e-12, "{t}");
        assert!(tau_gap(t).abs() < 1e-10);
    }

    #[test]
    fn tau_bracket_signs() {
        assert!(tau_gap(0.1) * tau_gap(0.4) < 0.0);
    }

    #[test]
    fn single_sign_change_on_grid() {
        let mut changes = 0;
        let mut prev = tau_gap(1e-3);
        for i in 1..10_000 {
            let g = tau_gap(1e-3 + 0.488 * i as f64 / 10_000.0);
            if g.signum() != prev.signum() {
                changes += 1;
            }
            prev = g;
        }
        assert_eq!(changes, 1);
    }

    #[test]
    fn f_at_left_edge_is_mu() {
        for delta in [0.05, 0.125, 0.2, tau()] {
            let f = f_abs(-1.0 + delta, 0.0, delta).unwrap();
            assert!(((f - mu(delta)) / mu(delta)).abs() < 1e-14);
        }
    }

    #[test]
    fn f_edges_agree_at_tau() {
        let t = tau();
        let left = f_abs(-1.0 + t, 0.0, t).unwrap();
        let right = f_abs(-0.5 + t, 0.0, t).unwrap();
        assert!((left - right).abs() < 1e-9);
    }

    #[test]
    fn f_decays_in_t() {
        assert!(f_abs(-0.3, 1e6, 0.2).unwrap() < 1e-4);
    }

    #[test]
    fn f_rejects_points_off_strip() {
        assert!(f_abs(-0.2, 0.0, 0.2).is_err());
        assert!(f_abs(-0.9, 0.0, 0.2).is_err());
    }

    #[test]
    fn c1_matches_reference() {
        assert!((c1() - 1.042_186_978_869_076_554_6).abs() < 1e-12);
    }

    #[test]
    fn c2_arithmetic() {
        let c = ConstantSet::for_delta_eta(0.2, 1.2).unwrap();
        assert!((c.c2 - 17.5).abs() < 1e-12);
    }

    #[test]
    fn constants_internally_consistent() {
        let p = ParamTriple::new(155.648, 0.213_503, 1.188_18).unwrap();
        let c = constants_for(&p).unwrap();
        assert!((c.c6 * 2.0 * PI - c.c2 * c.c4).abs() < 1e-12 * c.c2 * c.c4);
        assert!((c.c7 * 2.0 * PI - c.c2 * c.c5).abs() < 1e-12 * c.c2 * c.c5);
        assert!((c.c4 - 4.0 * c.mu / PI).abs() < 1e-12 * c.c4);
        for v in [c.c1, c.c2, c.c3, c.c4, c.c5, c.c6, c.c7, c.tau, c.mu] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn c4_decreasing_up_to_tau() {
        let samples = c4_samples(0.005, 10_000);
        for w in samples.windows(2) {
            assert!(w[1].1 < w[0].1, "C4 not decreasing at {}", w[1].0);
        }
    }

    #[test]
    fn c2_and_c3_monotone() {
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let delta = tau() * i as f64 / 100.0;
            let c = ConstantSet::for_delta_eta(delta, 1.2).unwrap();
            assert!(c.c2 < prev);
            prev = c.c2;
        }
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let eta = 1.0 + 0.5 * i as f64 / 100.0;
            let c = ConstantSet::for_delta_eta(0.2, eta).unwrap();
            assert!(c.c3 < prev, "C3 not decreasing at {eta}");
            prev = c.c3;
        }
    }

    #[test]
    fn mu_equals_f_on_delta_grid() {
        for i in 1..=200 {
            let delta = tau() * i as f64 / 200.0;
            let f = f_abs(-1.0 + delta, 0.0, delta).unwrap();
            // −1 + δ loses low bits of δ, amplified by e^{1/(6δ)} for small δ
            assert!(((f - mu(delta)) / mu(delta)).abs() < 1e-10);
        }
    }

    #[test]
    fn strip_max_holds() {
        for delta in [tau(), 0.2, 0.125] {
            let r = verify_strip_max(delta, 500).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn strip_max_requires_delta_at_most_tau() {
        // beyond τ the right edge f(−1/2+δ) exceeds μ(δ)
        let delta = 0.3;
        assert!(f_abs(-0.5 + delta, 0.0, delta).unwrap() > mu(delta));
        assert!(matches!(
            verify_strip_max(delta, 200),
            Err(Error::Precondition(_))
        ));
        assert!(verify_strip_max(0.2, 50).is_err());
    }

    #[test]
    fn gamma_envelope_holds() {
        for delta in [tau(), 0.2, 0.125] {
            let r = verify_gamma_envelope(delta, 10_000).unwrap();
            assert!(r.passed, "{r:?}");
        }
        let delta = tau();
        let g = log_abs_gamma(-1.0 + delta, 0.0).unwrap().exp();
        assert!(g <= mu(delta));
    }

    #[test]
    fn gamma_envelope_loose_far_out() {
        let delta = tau();
        let sigma = -0.7;
        let t = 20.0;
        let ratio = (mu(delta).ln() - FRAC_PI_2 * t - log_abs_gamma(sigma, t).unwrap()).exp();
        assert!(ratio > 100.0, "{ratio}");
    }

    #[test]
    fn integral_rhs_formula() {
        let c = ConstantSet::for_delta_eta(tau(), 1.18818).unwrap();
        let v = gamma_integral_rhs(tau(), 1.18818, 1, 3.0).unwrap();
        assert!((v - (c.c4 * 3f64.ln() + c.c5)).abs() < 1e-12 * v);
        let big_d = gamma_integral_rhs(tau(), 1.18818, 1_000_000_000, 3.0).unwrap();
        assert!((big_d - c.c5).abs() < 1e-6);
        assert!(gamma_integral_rhs(tau(), 1.18818, 0, 3.0).is_err());
        assert!(gamma_integral_rhs(tau(), 1.18818, 1, 2.0).is_err());
    }

    #[test]
    fn weight_integral_below_one() {
        let r = verify_weight_integral().unwrap();
        assert!(r.passed && (r.witness[0] - 0.971_320_970_157_263_3).abs() < 1e-12);
        let q = gamma_weight_integral().unwrap();
        assert!(q.value + q.error_estimate <= 1.0);
    }

    #[test]
    fn region_validation() {
        assert!(ParamTriple::new(4.5, tau(), 1.5).is_ok());
        assert!(ParamTriple::new(4.4, 0.2, 1.2).is_err());
        assert!(ParamTriple::new(10.0, 0.0, 1.2).is_err());
        assert!(ParamTriple::new(10.0, 0.221, 1.2).is_err());
        assert!(ParamTriple::new(10.0, 0.2, 1.0).is_err());
        assert!(ParamTriple::new(10.0, 0.2, 1.51).is_err());
    }
}
