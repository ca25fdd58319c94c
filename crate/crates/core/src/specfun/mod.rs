//! Special functions and prime sums.
//!
//! Everything here is binary64 and deterministic; prime sums are accumulated
//! in ascending prime order with compensated summation.

mod gamma;
mod primes;
mod zeta;

pub use gamma::log_abs_gamma;
pub use primes::{
    prime_log_weight_partial, prime_log_weight_sum, prime_recip_sum, sieve, sieve_bounded,
    PrimeTable, WeightedPrimeSum, MAX_SIEVE_LIMIT,
};
pub use zeta::{prime_zeta, zeta_minus_one, zeta_real};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Tolerances and truncation points shared by the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Largest prime included in explicit prime sums before a tail bound
    /// takes over.
    pub tail_cutoff: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            tail_cutoff: 10_000_000,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain("abs_tol", self.abs_tol, "(0, inf)"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::domain("rel_tol", self.rel_tol, "(0, inf)"));
        }
        if self.tail_cutoff < 10_000 {
            return Err(Error::domain(
                "tail_cutoff",
                self.tail_cutoff as f64,
                "[10^4, inf)",
            ));
        }
        Ok(())
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-12)).abs() < 1e-20);
    }

    #[test]
    fn options_validation() {
        assert!(EvalOptions::default().validate().is_ok());
        let bad = EvalOptions {
            tail_cutoff: 10,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = EvalOptions {
            abs_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
