//! Nelder–Mead on the unit cube [0, 1]^3 with clipping.

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Converged once the simplex is this small in every unit coordinate.
const X_TOL: f64 = 1e-9;

pub(crate) type Point = [f64; 3];

pub(crate) struct Run {
    pub best: Point,
    pub value: f64,
    pub evaluations: u64,
    pub converged: bool,
    /// Best value after each iteration.
    pub trace: Vec<(Point, f64)>,
}

fn clip(p: Point) -> Point {
    p.map(|v| v.clamp(0.0, 1.0))
}

fn lerp(a: &Point, b: &Point, t: f64) -> Point {
    // a + t (b − a)
    [
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    ]
}

/// Minimize `f` from an initial simplex of `start` plus a signed step along
/// each axis. `budget` caps the number of evaluations.
pub(crate) fn minimize<F>(
    f: &F,
    start: Point,
    steps: Point,
    f_tol: f64,
    budget: u64,
    record: bool,
) -> Run
where
    F: Fn(&Point) -> f64,
{
    let evals = std::cell::Cell::new(0u64);
    let eval = |p: &Point| {
        evals.set(evals.get() + 1);
        let v = f(p);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Point, f64)> = Vec::with_capacity(4);
    let start = clip(start);
    simplex.push((start, eval(&start)));
    for (axis, step) in steps.iter().enumerate() {
        let mut p = start;
        p[axis] += step;
        if !(0.0..=1.0).contains(&p[axis]) {
            p[axis] = start[axis] - step;
        }
        let p = clip(p);
        simplex.push((p, eval(&p)));
    }

    let mut trace = Vec::new();
    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.partial_cmp(&b.0).unwrap()));
        if record {
            trace.push(simplex[0]);
        }
        let (lo, hi) = (simplex[0].1, simplex[3].1);
        let spread = hi - lo;
        let anchor = simplex[0].0;
        let size = simplex[1..]
            .iter()
            .flat_map(|(p, _)| (0..3).map(move |i| (p[i] - anchor[i]).abs()))
            .fold(0.0, f64::max);
        if spread <= f_tol * lo.abs().max(1.0) && size <= X_TOL {
            converged = true;
            break;
        }
        if size == 0.0 && spread == 0.0 {
            converged = true;
            break;
        }
        if evals.get() + 4 > budget {
            break;
        }

        let mut centroid = [0.0; 3];
        for (p, _) in &simplex[..3] {
            for i in 0..3 {
                centroid[i] += p[i] / 3.0;
            }
        }
        let worst = simplex[3];
        let reflected = clip(lerp(&centroid, &worst.0, -REFLECT));
        let fr = eval(&reflected);

        if fr < simplex[0].1 {
            let expanded = clip(lerp(&centroid, &worst.0, -EXPAND));
            let fe = eval(&expanded);
            simplex[3] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < simplex[2].1 {
            simplex[3] = (reflected, fr);
            continue;
        }
        // contraction, outside if the reflection beat the worst point
        let (candidate, bar) = if fr < worst.1 {
            (clip(lerp(&centroid, &reflected, CONTRACT)), fr)
        } else {
            (lerp(&centroid, &worst.0, CONTRACT), worst.1)
        };
        let fc = eval(&candidate);
        if fc < bar {
            simplex[3] = (candidate, fc);
            continue;
        }
        let best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            let p = lerp(&best, &vertex.0, SHRINK);
            *vertex = (p, eval(&p));
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.partial_cmp(&b.0).unwrap()));
    Run {
        best: simplex[0].0,
        value: simplex[0].1,
        evaluations: evals.get(),
        converged,
        trace,
    }
}
