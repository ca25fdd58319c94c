//! The reproduction checklist: each criterion recomputes a published value
//! and compares it at a fixed tolerance.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bounds::{big_g, h_and_k, objective_parts, verify_elementary_inequalities, BoundInput};
use crate::envelope::{
    c1, gamma_weight_integral, solve_tau, tau, verify_gamma_envelope, verify_strip_max, ParamTriple,
};
use crate::kappa::corollary_exponents;
use crate::mertens::{verify_lemma_window, MertensEnvelope, WINDOW_HI, WINDOW_LO};
use crate::optimizer::{minimize_hk, minimize_theorem_objective, Objective, OptimConfig};
use crate::reference as published;
use crate::specfun::{prime_log_weight_sum, prime_zeta, zeta_real, EvalOptions};
use crate::Result;

pub const TAU_TOL: f64 = 1e-12;
pub const C1_TOL: f64 = 1e-12;
pub const THEOREM_FLOOR: f64 = 13.0;
pub const FLAT_MINIMUM_TOL: f64 = 0.005;
pub const CLEARANCE_TOL: f64 = 0.003;
pub const CLEARANCE_TOL_AT_7: f64 = 0.0006;
pub const HK_TOL: f64 = 0.001;
pub const HK_OPT_ABOVE: f64 = 0.01;
pub const HK_OPT_BELOW: f64 = 0.05;
pub const PRIME_WEIGHT_TOL: f64 = 1e-6;

pub const STRIP_GRID: usize = 400;
pub const GAMMA_SAMPLES: usize = 10_000;
pub const ELEMENTARY_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub limit_ms: Option<f64>,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{verdict}] {}. {} ({:.0} ms",
            self.id, self.name, self.elapsed_ms
        )?;
        if let Some(limit) = self.limit_ms {
            write!(f, ", limit {limit:.0} ms")?;
        }
        write!(f, "): {}", self.detail)
    }
}

/// Runs `body`, which returns (passed, detail), and folds in the time limit.
fn timed<F>(id: u8, name: &'static str, limit: Option<Duration>, body: F) -> Outcome
where
    F: FnOnce() -> Result<(bool, String)>,
{
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; too slow: {elapsed:?} > {limit:?}"));
        }
    }
    Outcome {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
        limit_ms: limit.map(|l| l.as_secs_f64() * 1e3),
    }
}

pub fn tau_reproduction() -> Outcome {
    timed(1, "tau", Some(Duration::from_secs(1)), || {
        let t = solve_tau()?;
        let err = (t - published::TAU).abs();
        Ok((err <= TAU_TOL, format!("tau = {t:.15}, |err| = {err:.2e}")))
    })
}

pub fn c1_reproduction() -> Outcome {
    timed(
        2,
        "C1 = zeta(3/2)/sqrt(2 pi)",
        Some(Duration::from_secs(1)),
        || {
            let v = c1();
            let err = (v - published::C1).abs();
            Ok((err <= C1_TOL, format!("C1 = {v:.16}, |err| = {err:.2e}")))
        },
    )
}

pub fn theorem_constant(cfg: &OptimConfig) -> Outcome {
    timed(3, "theorem constant", Some(Duration::from_secs(60)), || {
        let res = minimize_theorem_objective(3.0, cfg)?;
        let (b, d, e) = published::OPTIMAL_TRIPLE;
        let at_published = Objective::Theorem { n: 3.0 }.evaluate(&ParamTriple::new(b, d, e)?);
        let gap = at_published - res.value;
        let passed = res.value <= published::THEOREM_CONSTANT
            && res.value >= THEOREM_FLOOR
            && gap.abs() < FLAT_MINIMUM_TOL;
        let p = res.best;
        Ok((
            passed,
            format!(
                "min A+B = {:.6} at ({:.3}, {:.6}, {:.5}); at published triple {:.6}",
                res.value, p.beta, p.delta, p.eta, at_published
            ),
        ))
    })
}

pub fn mertens_window() -> Outcome {
    timed(4, "Mertens window", Some(Duration::from_secs(5)), || {
        let env = MertensEnvelope::with_limit(1000)?;
        let report = verify_lemma_window(WINDOW_LO, WINDOW_HI, &env)?;
        let mut passed = report.passed;
        let mut parts = vec![format!(
            "window [{WINDOW_LO}, {WINDOW_HI}] worst margin {:.5}",
            report.worst_margin
        )];
        for (x, expected) in published::MERTENS_CLEARANCES {
            let c = env.clearance(x)?;
            let tol = if x == 7.0 {
                CLEARANCE_TOL_AT_7
            } else {
                CLEARANCE_TOL
            };
            passed &= (c - expected).abs() <= tol;
            parts.push(format!("c({x}) = {c:.5}"));
        }
        Ok((passed, parts.join(", ")))
    })
}

pub fn hk_table(cfg: &OptimConfig) -> Outcome {
    timed(5, "H/K table", Some(Duration::from_secs(300)), || {
        let mut passed = true;
        let mut parts = Vec::new();
        for row in published::HK_TABLE {
            let (b, dl, e) = row.triple;
            let (h, k) = h_and_k(&BoundInput::new(
                ParamTriple::new(b, dl, e)?,
                row.d,
                row.n0,
            )?)?;
            let (ho, ko) = minimize_hk(row.d, row.n0, cfg)?;
            let close = (h - row.h).abs() <= HK_TOL && (k - row.k).abs() <= HK_TOL;
            let within = |v: f64, q: f64| v <= q + HK_OPT_ABOVE && v >= q - HK_OPT_BELOW;
            let optimized = within(ho.value, row.h) && within(ko.value, row.k);
            passed &= close && optimized;
            parts.push(format!(
                "n={}: H {h:.4}/{:.4} K {k:.4}/{:.4}",
                row.degree, ho.value, ko.value
            ));
        }
        Ok((passed, parts.join("; ")))
    })
}

pub fn corollary(cfg: &OptimConfig) -> Outcome {
    timed(6, "residue exponents", None, || {
        let rows = corollary_exponents(cfg)?;
        let passed = rows.iter().all(|r| r.matches_published());
        let parts: Vec<String> = rows
            .iter()
            .map(|r| {
                let flag = if r.matches_published() {
                    ""
                } else {
                    " MISMATCH"
                };
                format!(
                    "n={}: ({:.2}, {:.2}) vs ({}, {}){flag}",
                    r.degree,
                    r.upper_rounded,
                    r.lower_rounded,
                    r.published_upper,
                    r.published_lower
                )
            })
            .collect();
        Ok((passed, parts.join("; ")))
    })
}

pub fn proof_constants(opts: &EvalOptions) -> Outcome {
    timed(7, "proof-internal constants", None, || {
        let w = prime_log_weight_sum(opts)?;
        let p = prime_zeta(1.5, opts)?;
        let lz = zeta_real(1.5, opts)?.ln();
        let passed = (w.value - published::PRIME_LOG_WEIGHT).abs() <= PRIME_WEIGHT_TOL
            && w.upper() < crate::bounds::PRIME_POWER_TAIL
            && p < published::PRIME_ZETA_THREE_HALVES_MAX
            && lz < published::LOG_ZETA_THREE_HALVES_MAX;
        Ok((
            passed,
            format!(
                "weight sum {:.8} (+ tail {:.1e}), P(3/2) = {p:.8}, log zeta(3/2) = {lz:.8}",
                w.value, w.tail_bound
            ),
        ))
    })
}

/// Triples spread over the search region, used by the structural checks.
fn sample_triples() -> Vec<ParamTriple> {
    let mut out = Vec::new();
    for beta in [4.5, 50.0, 155.648, 300.0] {
        for delta in [0.01, 0.1, tau()] {
            for eta in [1.01, 1.2, 1.5] {
                out.push(ParamTriple::unchecked(beta, delta, eta));
            }
        }
    }
    out
}

const CONDUCTOR_GRID: [f64; 7] = [3.0, 10.0, 1e2, 1e4, 1e6, 1e9, 1e12];

pub fn property_suites(cfg: &OptimConfig) -> Outcome {
    timed(8, "property suites", None, || {
        let mut failures = Vec::new();
        for delta in [tau(), 0.2, 0.125] {
            if !verify_strip_max(delta, STRIP_GRID)?.passed {
                failures.push(format!("strip max at delta = {delta}"));
            }
            if !verify_gamma_envelope(delta, GAMMA_SAMPLES)?.passed {
                failures.push(format!("gamma envelope at delta = {delta}"));
            }
        }
        let q = gamma_weight_integral()?;
        if q.value + q.error_estimate > 1.0 {
            failures.push(format!("weight integral {} > 1", q.value));
        }
        if !verify_elementary_inequalities(ELEMENTARY_POINTS)?.passed {
            failures.push("elementary inequalities".into());
        }
        for p in sample_triples() {
            let base = objective_parts(&BoundInput::new(p, 1, 3.0)?)?;
            let mut prev = [(f64::INFINITY, f64::INFINITY, f64::INFINITY); 5];
            for n in CONDUCTOR_GRID {
                for d in 1..=5u32 {
                    let input = BoundInput::new(p, d, n)?;
                    if n == 3.0 {
                        let parts = objective_parts(&input)?;
                        if parts != base || big_g(&input)? != parts.a + parts.b * f64::from(d) {
                            failures.push(format!("G not affine in d at {p:?}"));
                        }
                    }
                    let g = big_g(&input)?;
                    let (h, k) = h_and_k(&input)?;
                    let last = &mut prev[d as usize - 1];
                    if !(g < last.0 && h < last.1 && k < last.2) {
                        failures.push(format!("not decreasing in N at {p:?}, d = {d}, N = {n}"));
                    }
                    *last = (g, h, k);
                }
            }
        }
        let traced = OptimConfig {
            record_trace: true,
            ..cfg.clone()
        };
        let first = minimize_theorem_objective(3.0, &traced)?;
        let second = minimize_theorem_objective(3.0, &traced)?;
        if first != second {
            failures.push("optimizer runs differ".into());
        }
        let passed = failures.is_empty();
        let detail = if passed {
            format!(
                "strip/gamma at 3 deltas, integral = {:.6}, {} triples x {} conductors, optimizer repeatable",
                q.value,
                sample_triples().len(),
                CONDUCTOR_GRID.len()
            )
        } else {
            failures.join("; ")
        };
        Ok((passed, detail))
    })
}

/// All eight criteria in order.
pub fn run_all(cfg: &OptimConfig, opts: &EvalOptions) -> Vec<Outcome> {
    vec![
        tau_reproduction(),
        c1_reproduction(),
        theorem_constant(cfg),
        mertens_window(),
        hk_table(cfg),
        corollary(cfg),
        proof_constants(opts),
        property_suites(cfg),
    ]
}
