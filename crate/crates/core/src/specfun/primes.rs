use serde::Serialize;

use super::{CompensatedSum, EvalOptions};
use crate::{Error, Result};

/// Largest sieve limit accepted by [`sieve`]. The odd-only byte sieve needs
/// roughly `limit / 2` bytes of scratch space.
pub const MAX_SIEVE_LIMIT: u64 = 2_000_000_000;

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `p <= x`.
    pub fn up_to(&self, x: f64) -> &[u64] {
        let end = self.primes.partition_point(|&p| (p as f64) <= x);
        &self.primes[..end]
    }

    pub(crate) fn covers(&self, x: f64) -> Result<()> {
        if x.floor() > self.limit as f64 {
            return Err(Error::Precondition(format!(
                "prime table limit {} is below x = {x}",
                self.limit
            )));
        }
        Ok(())
    }
}

/// Sieve of Eratosthenes over the odd numbers up to `limit`.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    sieve_bounded(limit, MAX_SIEVE_LIMIT)
}

/// As [`sieve`], with an explicit memory bound on the limit.
pub fn sieve_bounded(limit: u64, bound: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::domain("limit", limit as f64, "[2, inf)"));
    }
    if limit > bound {
        return Err(Error::Resource { limit, bound });
    }
    // index i stands for 2i + 1
    let half = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_count(limit));
    primes.push(2);
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    Ok(PrimeTable { limit, primes })
}

fn estimate_count(limit: u64) -> usize {
    let x = limit as f64;
    if x < 17.0 {
        8
    } else {
        (1.26 * x / x.ln()) as usize
    }
}

/// Σ_{p ≤ x} 1/p, a right-continuous step function of x.
pub fn prime_recip_sum(x: f64, table: &PrimeTable) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::domain("x", x, "[2, inf)"));
    }
    table.covers(x)?;
    let acc: CompensatedSum = table.up_to(x).iter().map(|&p| 1.0 / p as f64).collect();
    Ok(acc.value())
}

/// Result of [`prime_log_weight_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedPrimeSum {
    /// Σ (log p)/(p(p−1)) over primes up to the cutoff.
    pub value: f64,
    /// Rigorous cap on the neglected primes p > cutoff.
    pub tail_bound: f64,
    pub cutoff: u64,
}

impl WeightedPrimeSum {
    pub fn upper(&self) -> f64 {
        self.value + self.tail_bound
    }
}

/// Σ_p (log p)/(p(p−1)) over primes up to `opts.tail_cutoff`, with a tail
/// bound over all integers n > cutoff:
/// Σ_{n>c} log n/(n(n−1)) ≤ ∫_c^∞ log u/(u−1)² du = log c/(c−1) − log(1 − 1/c).
pub fn prime_log_weight_sum(opts: &EvalOptions) -> Result<WeightedPrimeSum> {
    opts.validate()?;
    let table = sieve(opts.tail_cutoff)?;
    let c = opts.tail_cutoff as f64;
    Ok(WeightedPrimeSum {
        value: prime_log_weight_partial(&table),
        tail_bound: c.ln() / (c - 1.0) - (-1.0 / c).ln_1p(),
        cutoff: opts.tail_cutoff,
    })
}

/// Σ (log p)/(p(p−1)) over every prime in `table`.
pub fn prime_log_weight_partial(table: &PrimeTable) -> f64 {
    let acc: CompensatedSum = table
        .primes()
        .iter()
        .map(|&p| {
            let p = p as f64;
            p.ln() / (p * (p - 1.0))
        })
        .collect();
    acc.value()
}
