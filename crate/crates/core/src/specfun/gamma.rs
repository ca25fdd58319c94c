use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9
const LANCZOS_COEFF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// log|Γ(σ + it)|.
///
/// Lanczos approximation on σ ≥ 1/2 and the reflection formula
/// |Γ(z)| = π / (|sin πz| · |Γ(1 − z)|) to the left of it.
pub fn log_abs_gamma(sigma: f64, t: f64) -> Result<f64> {
    if !sigma.is_finite() || !t.is_finite() {
        return Err(Error::domain("sigma + it", sigma, "finite complex numbers"));
    }
    if t == 0.0 && sigma <= 0.0 && sigma.fract() == 0.0 {
        return Err(Error::Pole(sigma));
    }
    if sigma < 0.5 {
        Ok(PI.ln() - ln_abs_sin_pi(sigma, t) - lanczos_ln_abs(1.0 - sigma, -t))
    } else {
        Ok(lanczos_ln_abs(sigma, t))
    }
}

fn lanczos_ln_abs(sigma: f64, t: f64) -> f64 {
    let z = Complex64::new(sigma - 1.0, t);
    let mut series = Complex64::new(LANCZOS_COEFF[0], 0.0);
    for (i, c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        series += *c / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    let ln_gamma = HALF_LN_TWO_PI + (z + 0.5) * w.ln() - w + series.ln();
    ln_gamma.re
}

/// log|sin(π(σ + it))|, stable for large |t|.
fn ln_abs_sin_pi(sigma: f64, t: f64) -> f64 {
    // reduce σ into [-1, 1]; |sin| has period 1 in σ
    let x = PI * (sigma - 2.0 * (sigma / 2.0).round());
    let y = PI * t.abs();
    if y < 20.0 {
        let s = x.sin();
        let sh = y.sinh();
        0.5 * (s * s + sh * sh).ln()
    } else {
        // sin²x + sinh²y = e^{2y}/4 · (1 − 2 cos 2x · e^{-2y} + e^{-4y})
        let e2 = (-2.0 * y).exp();
        y - std::f64::consts::LN_2 + 0.5 * (1.0 - 2.0 * (2.0 * x).cos() * e2 + e2 * e2).ln()
    }
}
