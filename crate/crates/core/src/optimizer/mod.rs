//! Grid scan plus multi-start Nelder–Mead over the search region
//! [4.5, 300] × (0, τ] × (1, 3/2].
//!
//! All randomness comes from one ChaCha stream seeded by [`OptimConfig::seed`],
//! drawn before any parallel work starts, so results are bit-identical for any
//! thread count.

mod nelder_mead;

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{big_g, h_and_k, BoundInput};
use crate::envelope::{tau, ParamTriple, BETA_MAX, BETA_MIN, ETA_MAX};
use crate::{Error, Result};

use nelder_mead::Point;

/// Open endpoints δ = 0 and η = 1 are moved inward by this much.
pub const OPEN_SHRINK: f64 = 1e-6;

/// Simplex edge as a fraction of each axis range.
const SIMPLEX_STEP: f64 = 0.02;

/// Re-seeded simplexes per restart once a run converges.
const MAX_POLISH: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimConfig {
    pub grid_resolution: usize,
    pub nm_restarts: usize,
    pub nm_tol: f64,
    pub max_evals: u64,
    pub seed: u64,
    pub record_trace: bool,
}

impl Default for OptimConfig {
    fn default() -> Self {
        OptimConfig {
            grid_resolution: 24,
            nm_restarts: 16,
            nm_tol: 1e-10,
            max_evals: 1_000_000,
            seed: 0,
            record_trace: false,
        }
    }
}

impl OptimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_resolution < 2 {
            return Err(Error::Precondition(
                "grid_resolution must be at least 2".into(),
            ));
        }
        if self.nm_restarts == 0 {
            return Err(Error::Precondition("nm_restarts must be positive".into()));
        }
        if !(self.nm_tol > 0.0 && self.nm_tol.is_finite()) {
            return Err(Error::Precondition(format!(
                "nm_tol must be positive, got {}",
                self.nm_tol
            )));
        }
        let grid = self.grid_points();
        if self.max_evals < grid + 8 * self.nm_restarts as u64 {
            return Err(Error::Precondition(format!(
                "max_evals = {} cannot cover the {grid}-point grid and {} restarts",
                self.max_evals, self.nm_restarts
            )));
        }
        Ok(())
    }

    fn grid_points(&self) -> u64 {
        (self.grid_resolution as u64).pow(3)
    }
}

/// Which function of (β, δ, η) to minimize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Objective {
    /// A + B at conductor `n`.
    Theorem {
        n: f64,
    },
    H {
        d: u32,
        n: f64,
    },
    K {
        d: u32,
        n: f64,
    },
}

impl Objective {
    fn check(&self) -> Result<()> {
        let (d, n) = match *self {
            Objective::Theorem { n } => (1, n),
            Objective::H { d, n } | Objective::K { d, n } => (d, n),
        };
        BoundInput::new(ParamTriple::unchecked(BETA_MIN, 0.2, 1.2), d, n).map(|_| ())
    }

    /// Objective value; NaN if the point is outside every formula's domain.
    pub fn evaluate(&self, p: &ParamTriple) -> f64 {
        let value = match *self {
            Objective::Theorem { n } => big_g(&BoundInput {
                params: *p,
                d: 1,
                n,
            }),
            Objective::H { d, n } => h_and_k(&BoundInput { params: *p, d, n }).map(|hk| hk.0),
            Objective::K { d, n } => h_and_k(&BoundInput { params: *p, d, n }).map(|hk| hk.1),
        };
        value.unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    pub restart: usize,
    pub point: ParamTriple,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimResult {
    pub best: ParamTriple,
    pub value: f64,
    pub evaluations: u64,
    /// False if any restart ran out of budget before reaching `nm_tol`.
    pub converged: bool,
    pub trace: Option<Vec<TracePoint>>,
}

/// The shrunk search region as (lower, upper) per axis.
pub fn search_region() -> [(f64, f64); 3] {
    [
        (BETA_MIN, BETA_MAX),
        (OPEN_SHRINK, tau()),
        (1.0 + OPEN_SHRINK, ETA_MAX),
    ]
}

fn to_params(u: &Point, region: &[(f64, f64); 3]) -> ParamTriple {
    let c = |i: usize| {
        let (lo, hi) = region[i];
        (lo + u[i] * (hi - lo)).clamp(lo, hi)
    };
    ParamTriple::unchecked(c(0), c(1), c(2))
}

fn lexicographic(a: &(f64, ParamTriple), b: &(f64, ParamTriple)) -> Ordering {
    a.0.total_cmp(&b.0)
        .then(a.1.beta.total_cmp(&b.1.beta))
        .then(a.1.delta.total_cmp(&b.1.delta))
        .then(a.1.eta.total_cmp(&b.1.eta))
}

fn finite_or_inf(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimize `objective` over the search region.
pub fn minimize(objective: Objective, cfg: &OptimConfig) -> Result<OptimResult> {
    cfg.validate()?;
    objective.check()?;
    let region = search_region();
    let r = cfg.grid_resolution;
    let node = |i: usize| i as f64 / (r - 1) as f64;

    let mut cells: Vec<(f64, Point)> = (0..r * r * r)
        .into_par_iter()
        .map(|k| {
            let u = [node(k / (r * r)), node((k / r) % r), node(k % r)];
            (
                finite_or_inf(objective.evaluate(&to_params(&u, &region))),
                u,
            )
        })
        .collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.partial_cmp(&b.1).unwrap()));
    let starts: Vec<Point> = cells.iter().take(cfg.nm_restarts).map(|c| c.1).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let steps: Vec<Point> = starts
        .iter()
        .map(|_| {
            [(); 3].map(|_| {
                if rng.random::<bool>() {
                    SIMPLEX_STEP
                } else {
                    -SIMPLEX_STEP
                }
            })
        })
        .collect();

    let grid_evals = cfg.grid_points();
    let budget = (cfg.max_evals - grid_evals) / starts.len() as u64;
    let f = |u: &Point| objective.evaluate(&to_params(u, &region));

    let runs: Vec<_> = starts
        .par_iter()
        .zip(steps.par_iter())
        .map(|(start, step)| refine(&f, *start, *step, cfg, budget))
        .collect();

    let mut evaluations = grid_evals;
    let mut converged = true;
    let mut trace = cfg.record_trace.then(Vec::new);
    let mut best: Option<(f64, ParamTriple)> = None;
    for (restart, run) in runs.into_iter().enumerate() {
        evaluations += run.evaluations;
        converged &= run.converged;
        let candidate = (run.value, to_params(&run.best, &region));
        if best
            .as_ref()
            .is_none_or(|b| lexicographic(&candidate, b) == Ordering::Less)
        {
            best = Some(candidate);
        }
        if let Some(trace) = trace.as_mut() {
            trace.extend(run.trace.iter().map(|(u, value)| TracePoint {
                restart,
                point: to_params(u, &region),
                value: *value,
            }));
        }
    }
    let (value, best) = best.expect("at least one restart");
    if !value.is_finite() {
        return Err(Error::Precondition(
            "objective is not finite anywhere on the grid".into(),
        ));
    }
    Ok(OptimResult {
        best,
        value,
        evaluations,
        converged,
        trace,
    })
}

/// One restart: Nelder–Mead, then re-seeded simplexes at the optimum until
/// they stop improving.
fn refine<F>(f: &F, start: Point, step: Point, cfg: &OptimConfig, budget: u64) -> nelder_mead::Run
where
    F: Fn(&Point) -> f64 + Sync,
{
    let mut run = nelder_mead::minimize(f, start, step, cfg.nm_tol, budget, cfg.record_trace);
    for _ in 0..MAX_POLISH {
        if !run.converged || run.evaluations + 8 > budget {
            break;
        }
        let next = nelder_mead::minimize(
            f,
            run.best,
            step,
            cfg.nm_tol,
            budget - run.evaluations,
            cfg.record_trace,
        );
        let gain = run.value - next.value;
        let previous = run.value;
        run.evaluations += next.evaluations;
        run.converged = next.converged;
        if next.value < run.value {
            run.best = next.best;
            run.value = next.value;
        }
        // the new simplex contains the old optimum, so its trace starts no higher
        run.trace.extend(next.trace);
        if gain <= cfg.nm_tol * previous.abs().max(1.0) {
            break;
        }
    }
    run
}

/// Minimize A + B at conductor `n` (the degree-free theorem constant at n = 3).
pub fn minimize_theorem_objective(n: f64, cfg: &OptimConfig) -> Result<OptimResult> {
    minimize(Objective::Theorem { n }, cfg)
}

/// Minimize H and K separately at degree `d` and conductor `n0`.
pub fn minimize_hk(d: u32, n0: f64, cfg: &OptimConfig) -> Result<(OptimResult, OptimResult)> {
    let h = minimize(Objective::H { d, n: n0 }, cfg)?;
    let k = minimize(Objective::K { d, n: n0 }, cfg)?;
    Ok((h, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub beta: f64,
    pub eta: f64,
    pub value: f64,
}

pub const SURFACE_BETA_MAX: f64 = 500.0;

/// A + B at N = 3 and δ = τ over β ∈ [4.5, 500], η ∈ (1, 3/2], β-major.
pub fn objective_surface(resolution: usize) -> Result<Vec<SurfacePoint>> {
    if resolution < 10 {
        return Err(Error::Precondition(format!(
            "resolution must be at least 10, got {resolution}"
        )));
    }
    let delta = tau();
    let step_beta = (SURFACE_BETA_MAX - BETA_MIN) / (resolution - 1) as f64;
    let step_eta = (ETA_MAX - 1.0) / resolution as f64;
    let objective = Objective::Theorem { n: 3.0 };
    let points = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let beta = BETA_MIN + (k / resolution) as f64 * step_beta;
            let eta = 1.0 + ((k % resolution) + 1) as f64 * step_eta;
            let value = objective.evaluate(&ParamTriple::unchecked(beta, delta, eta));
            SurfacePoint { beta, eta, value }
        })
        .collect();
    Ok(points)
}
