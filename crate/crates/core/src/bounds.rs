//! The explicit bound functions F, A, B, G, H and K.
//!
//! With x = (log N)^β and y = (log N)^{1/2} the short-sum error is bounded by
//! G(β, δ, η; d, N) = A + B·d. Everything is evaluated through ln x and ln y:
//! x itself overflows binary64 once β · log log N exceeds ~709.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::envelope::{ConstantSet, ParamTriple};
use crate::mertens::{m_envelope, m_envelope_ln, MEISSEL_MERTENS};
use crate::{Error, Result, VerificationReport};

/// Additive constant of the weighted prime-sum bound: 0.38 + P(3/2) + log ζ(3/2)
/// with P(3/2) < 0.849567 and log ζ(3/2) < 0.96026, rounded up.
pub const WEIGHTED_SUM_OFFSET: f64 = 2.19;

/// Cap on Σ_p log p / (p(p−1)), used for the prime-power terms.
pub const PRIME_POWER_TAIL: f64 = 0.76;

/// π(t) < ROSSER_PI_CONSTANT · t / log t for t > 1.
pub const ROSSER_PI_CONSTANT: f64 = 1.25506;

/// Which leading term to use in F(x, y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum FVariant {
    /// y/x, the bound derived for the short-range sum.
    #[default]
    Body,
    /// (e − 1)·y/x, as listed in the constant summary.
    Summary,
    /// 1.25506·y/(x log y), the sharper prime-counting estimate.
    Rosser,
}

/// Degree, conductor and parameters for one evaluation of the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInput {
    pub params: ParamTriple,
    pub d: u32,
    /// Conductor, or |Δ_K| for residue bounds. Only log N is used.
    pub n: f64,
}

impl BoundInput {
    pub fn new(params: ParamTriple, d: u32, n: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("d", 0.0, "[1, inf)"));
        }
        if !(n >= 3.0) || n.is_infinite() {
            return Err(Error::domain("N", n, "[3, inf)"));
        }
        Ok(BoundInput { params, d, n })
    }

    /// (ln x, ln y) = (β log log N, ½ log log N).
    pub fn ln_xy(&self) -> (f64, f64) {
        let lln = self.n.ln().ln();
        (self.params.beta * lln, 0.5 * lln)
    }
}

/// x = (log N)^β and y = (log N)^{1/2}. x may be +inf for large β·log log N.
pub fn xy_of(input: &BoundInput) -> (f64, f64) {
    let (ln_x, ln_y) = input.ln_xy();
    (ln_x.exp(), ln_y.exp())
}

/// F(x, y) = y/x + m(x²) + m(y) + 4/(x e^x).
pub fn big_f(x: f64, y: f64) -> Result<f64> {
    if !(x > 1.0) || x.is_infinite() {
        return Err(Error::domain("x", x, "(1, inf)"));
    }
    if !(y >= 1.0) || y.is_infinite() {
        return Err(Error::domain("y", y, "[1, inf)"));
    }
    Ok(big_f_ln(x.ln(), y.ln(), FVariant::Body))
}

/// F in terms of ln x and ln y, with a choice of leading term.
pub fn big_f_ln(ln_x: f64, ln_y: f64, variant: FVariant) -> f64 {
    let y_over_x = (ln_y - ln_x).exp();
    let leading = match variant {
        FVariant::Body => y_over_x,
        FVariant::Summary => (std::f64::consts::E - 1.0) * y_over_x,
        FVariant::Rosser => ROSSER_PI_CONSTANT * y_over_x / ln_y,
    };
    let x = ln_x.exp();
    // 4/(x e^x) = 4 exp(−x − ln x)
    let tail = 4.0 * (-x - ln_x).exp();
    leading + m_envelope_ln(2.0 * ln_x) + m_envelope_ln(ln_y) + tail
}

/// The two coefficients of G = A + B·d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObjectiveParts {
    pub a: f64,
    pub b: f64,
}

impl ObjectiveParts {
    pub fn g(&self, d: u32) -> f64 {
        self.a + self.b * f64::from(d)
    }
}

/// A = C₆ log N / (x^{1/2−δ} log x) and
/// B = 2.19 + log 4β + F(x, y) + C₇ / (x^{1/2−δ} log x).
pub fn objective_parts(input: &BoundInput) -> Result<ObjectiveParts> {
    objective_parts_with(input, FVariant::Body)
}

pub fn objective_parts_with(input: &BoundInput, variant: FVariant) -> Result<ObjectiveParts> {
    let p = &input.params;
    let c = ConstantSet::for_delta_eta(p.delta, p.eta)?;
    let (ln_x, ln_y) = input.ln_xy();
    let denom = ((0.5 - p.delta) * ln_x).exp() * ln_x;
    let a = c.c6 * input.n.ln() / denom;
    let b =
        WEIGHTED_SUM_OFFSET + (4.0 * p.beta).ln() + big_f_ln(ln_x, ln_y, variant) + c.c7 / denom;
    Ok(ObjectiveParts { a, b })
}

/// G(β, δ, η; d, N).
pub fn big_g(input: &BoundInput) -> Result<f64> {
    Ok(objective_parts(input)?.g(input.d))
}

/// log ½ + M + m(√log N), the Mertens-sum offset shared by H and K.
pub fn mertens_offset(n: f64) -> Result<f64> {
    let y = n.ln().sqrt();
    Ok(-LN_2 + MEISSEL_MERTENS + m_envelope(y)?)
}

/// H = d(log ½ + M + m(√log N)) + G and K = log ½ + M + m(√log N) + G.
pub fn h_and_k(input: &BoundInput) -> Result<(f64, f64)> {
    let g = big_g(input)?;
    let offset = mertens_offset(input.n)?;
    Ok((f64::from(input.d) * offset + g, offset + g))
}

/// |e^t − 1| ≤ |t| on (−1, 0] and |e^t − 1| > |t|/4 on 0 < |t| < 1,
/// each checked on a uniform grid of `points` points.
pub fn verify_elementary_inequalities(points: usize) -> Result<VerificationReport> {
    if points < 2 {
        return Err(Error::Precondition("need at least two grid points".into()));
    }
    let mut report = VerificationReport::new("elementary-exp", [-1.0, 1.0]);
    // t = 0 is the equality 0 ≤ 0; the grid covers t ∈ (−1, 0)
    for i in 1..points {
        let t = -(i as f64) / points as f64;
        report.observe(t.abs() - t.exp_m1().abs(), &[t]);
    }
    for i in 1..points {
        // t ∈ (−1, 1) \ {0}
        let t = -1.0 + 2.0 * i as f64 / points as f64;
        if t == 0.0 {
            continue;
        }
        report.observe(t.exp_m1().abs() - 0.25 * t.abs(), &[t]);
    }
    Ok(report.finish())
}

/// Σ_{k ≥ ⌊x²⌋} e^{−k/x} / x² ≤ 4/(x e^x), summed directly.
pub fn verify_geometric_tail(x: f64) -> Result<VerificationReport> {
    if !(x > 1.0 && x <= 50.0) {
        return Err(Error::domain("x", x, "(1, 50]"));
    }
    let start = (x * x).floor() as u64;
    let mut sum = 0.0;
    let mut k = start;
    loop {
        let term = (-(k as f64) / x).exp();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    let lhs = sum / (x * x);
    let rhs = 4.0 / (x * x.exp());
    let mut report = VerificationReport::new(format!("geometric-tail x={x}"), [x, x]);
    report.observe(rhs - lhs, &[x]);
    Ok(report.finish())
}
