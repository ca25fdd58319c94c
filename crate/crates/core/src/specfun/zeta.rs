use super::{CompensatedSum, EvalOptions};
use crate::{Error, Result};

/// Direct Dirichlet terms before the Euler–Maclaurin tail takes over.
const DIRECT_TERMS: u32 = 50;

/// B_{2k} / (2k)! for k = 1..=10.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
];

/// ζ(s) − 1 for real s > 1.
///
/// Kept separate from [`zeta_real`] so that log ζ(s) = log1p(ζ(s) − 1) stays
/// accurate when s is large and ζ(s) is within rounding of 1.
pub fn zeta_minus_one(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain("s", s, "(1, inf)"));
    }
    let n = f64::from(DIRECT_TERMS);
    let mut acc: CompensatedSum = (2..DIRECT_TERMS).map(|k| f64::from(k).powf(-s)).collect();

    let n_pow = n.powf(-s);
    // Euler–Maclaurin tail: ∫_N^∞ u^{-s} du + N^{-s}/2 + Σ B_{2k}/(2k)! · (s)_{2k-1} N^{-s-2k+1}
    let mut tail = CompensatedSum::new();
    tail.add(n * n_pow / (s - 1.0));
    tail.add(0.5 * n_pow);
    let mut rising = s; // s (s+1) … (s+2k-2)
    let mut power = n_pow / n; // N^{-s-2k+1}
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail.add(coeff * rising * power);
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        power /= n * n;
    }
    acc.add(tail.value());
    Ok(acc.value())
}

/// The Riemann zeta function at a real argument s > 1.
///
/// Uses 50 direct terms and ten Bernoulli corrections, which puts the
/// truncation error below 1e-14 for s ≥ 1.1. Near the pole the result is
/// limited by binary64 relative precision rather than `opts.abs_tol`.
pub fn zeta_real(s: f64, opts: &EvalOptions) -> Result<f64> {
    opts.validate()?;
    Ok(1.0 + zeta_minus_one(s)?)
}

/// The prime zeta function P(s) = Σ_p p^{-s}, via Möbius inversion
/// P(s) = Σ_k μ(k)/k · log ζ(ks).
///
/// Terms shrink at least geometrically with ratio 2^{-s} < 1/2, so stopping
/// once a term falls below `abs_tol / 2` bounds the neglected tail by
/// `abs_tol`.
pub fn prime_zeta(s: f64, opts: &EvalOptions) -> Result<f64> {
    opts.validate()?;
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain("s", s, "(1, inf)"));
    }
    let mut acc = CompensatedSum::new();
    for k in 1u32.. {
        let kf = f64::from(k);
        let log_zeta = zeta_minus_one(kf * s)?.ln_1p();
        let magnitude = log_zeta / kf;
        let mu = mobius(k);
        if mu != 0 {
            acc.add(f64::from(mu) * magnitude);
        }
        if magnitude < 0.5 * opts.abs_tol {
            break;
        }
    }
    Ok(acc.value())
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn opts() -> EvalOptions {
        EvalOptions::default()
    }

    /// Σ_{n ≤ N} n^{-s} plus integral brackets for the tail:
    /// ∫_{N+1}^∞ u^{-s} du ≤ Σ_{n>N} n^{-s} ≤ ∫_N^∞ u^{-s} du.
    fn raw_series_bracket(s: f64, terms: u64) -> (f64, f64) {
        let mut acc = CompensatedSum::new();
        for n in (1..=terms).rev() {
            acc.add((n as f64).powf(-s));
        }
        let head = acc.value();
        let n = terms as f64;
        (
            head + (n + 1.0).powf(1.0 - s) / (s - 1.0),
            head + n.powf(1.0 - s) / (s - 1.0),
        )
    }

    #[test]
    fn zeta_two_closed_form() {
        let z = zeta_real(2.0, &opts()).unwrap();
        assert!((z - PI * PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn zeta_four_closed_form() {
        let z = zeta_real(4.0, &opts()).unwrap();
        assert!((z - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn zeta_three_halves_inside_raw_series_bracket() {
        let (lo, hi) = raw_series_bracket(1.5, 1_000_000);
        let z = zeta_real(1.5, &opts()).unwrap();
        assert!(z >= lo - 1e-12 && z <= hi + 1e-12, "{lo} <= {z} <= {hi}");
        // high-precision reference, 40 digits
        assert!((z - 2.612_375_348_685_488_3).abs() < 1e-13);
    }

    #[test]
    fn zeta_near_pole_matches_laurent_expansion() {
        // ζ(1+ε) = 1/ε + γ − γ₁ ε + …
        let eps = 1e-4;
        let z = zeta_real(1.0 + eps, &opts()).unwrap();
        let euler_gamma = 0.577_215_664_901_532_9;
        let stieltjes1 = -0.072_815_845_483_676_72;
        let laurent = 1.0 / eps + euler_gamma - stieltjes1 * eps;
        assert!((z - laurent).abs() < 1e-8, "{z} vs {laurent}");
    }

    #[test]
    fn zeta_rejects_s_at_most_one() {
        assert!(matches!(zeta_real(1.0, &opts()), Err(Error::Domain { .. })));
        assert!(zeta_real(0.5, &opts()).is_err());
        assert!(zeta_real(f64::NAN, &opts()).is_err());
    }

    #[test]
    fn zeta_minus_one_large_argument() {
        let z = zeta_minus_one(60.0).unwrap();
        let expected = 2f64.powi(-60) + 3f64.powi(-60);
        assert!(((z - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn prime_zeta_two_against_reference() {
        let p = prime_zeta(2.0, &opts()).unwrap();
        assert!((p - 0.452_247_420_041_065_5).abs() < 1e-13);
    }

    #[test]
    fn prime_zeta_three_halves_bounds() {
        let p = prime_zeta(1.5, &opts()).unwrap();
        assert!(p < 0.849567 && p > 0.8494, "{p}");
        assert!((p - 0.849_562_683_621_566_4).abs() < 1e-12);
    }

    #[test]
    fn prime_zeta_ten_dominated_by_small_primes() {
        let p = prime_zeta(10.0, &opts()).unwrap();
        let head: f64 = [2.0f64, 3.0, 5.0, 7.0, 11.0, 13.0]
            .iter()
            .map(|q| q.powi(-10))
            .sum();
        // remaining primes start at 17: Σ_{n≥17} n^{-10} ≤ ∫_16^∞ u^{-10} du
        let tail = 16f64.powi(-9) / 9.0;
        assert!(p >= head - 1e-15 && p <= head + tail, "{p} vs {head}");
        assert!((p - 0.000_993_603_574_436_980_2).abs() < 1e-12);
    }

    #[test]
    fn prime_zeta_sieve_cross_check() {
        // direct Σ p^{-2} over primes ≤ 10^6 plus Σ_{n>10^6}n^{-2} as a tail cap
        let table = crate::specfun::sieve(1_000_000).unwrap();
        let direct: CompensatedSum = table
            .primes()
            .iter()
            .map(|&p| (p as f64).powi(-2))
            .collect();
        let p = prime_zeta(2.0, &opts()).unwrap();
        assert!(p >= direct.value());
        assert!(p - direct.value() <= 1e-6);
    }

    #[test]
    fn mobius_small_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, mu) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u32 + 1), *mu, "mu({})", i + 1);
        }
    }
}
