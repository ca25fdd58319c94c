use duke_bounds::envelope::{tau, ParamTriple};
use duke_bounds::optimizer::{
    minimize, minimize_hk, minimize_theorem_objective, objective_surface, search_region, Objective,
    OptimConfig,
};

fn traced() -> OptimConfig {
    OptimConfig {
        record_trace: true,
        ..OptimConfig::default()
    }
}

#[test]
fn theorem_optimum_near_published_triple() {
    let res = minimize_theorem_objective(3.0, &OptimConfig::default()).unwrap();
    assert!(res.converged);
    assert!(res.value <= 13.53 && res.value >= 13.0);
    let p = res.best;
    assert!((p.beta - 155.648).abs() < 2.0, "{p:?}");
    assert!((p.delta - 0.213_503).abs() < 0.002, "{p:?}");
    assert!((p.eta - 1.188_18).abs() < 0.005, "{p:?}");
    let at_published = Objective::Theorem { n: 3.0 }
        .evaluate(&ParamTriple::new(155.648, 0.213_503, 1.188_18).unwrap());
    assert!((at_published - res.value).abs() < 0.005);
    assert!(res.value <= at_published);
}

#[test]
fn value_reevaluates_to_best() {
    for obj in [
        Objective::Theorem { n: 3.0 },
        Objective::H { d: 3, n: 117.0 },
        Objective::K { d: 5, n: 9747.0 },
    ] {
        let res = minimize(obj, &OptimConfig::default()).unwrap();
        assert!((obj.evaluate(&res.best) - res.value).abs() <= 1e-12);
    }
}

#[test]
fn quintic_row() {
    let (h, k) = minimize_hk(4, 1609.0, &OptimConfig::default()).unwrap();
    assert!((h.value - 28.1733).abs() < 0.01);
    assert!((k.value - 26.9298).abs() < 0.01);
}

#[test]
fn sextic_minimizer() {
    let (h, _) = minimize_hk(5, 9747.0, &OptimConfig::default()).unwrap();
    let p = h.best;
    assert!((p.beta - 6.800_12).abs() < 0.5, "{p:?}");
    assert!((p.delta - 0.208_989).abs() < 0.003, "{p:?}");
    assert!((p.eta - 1.157_91).abs() < 0.01, "{p:?}");
}

#[test]
fn bit_identical_runs() {
    let a = minimize(Objective::H { d: 2, n: 23.0 }, &traced()).unwrap();
    let b = minimize(Objective::H { d: 2, n: 23.0 }, &traced()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.value.to_bits(), b.value.to_bits());
}

#[test]
fn seed_changes_only_the_path() {
    let a = minimize_theorem_objective(3.0, &OptimConfig::default()).unwrap();
    let b = minimize_theorem_objective(
        3.0,
        &OptimConfig {
            seed: 12345,
            ..OptimConfig::default()
        },
    )
    .unwrap();
    assert!((a.value - b.value).abs() < 1e-8);
}

#[test]
fn trace_stays_in_region_and_improves() {
    let res = minimize_theorem_objective(3.0, &traced()).unwrap();
    let trace = res.trace.unwrap();
    assert!(!trace.is_empty());
    let region = search_region();
    for t in &trace {
        for (v, (lo, hi)) in t.point.as_array().iter().zip(region) {
            assert!(*v >= lo && *v <= hi, "{t:?}");
        }
    }
    for restart in 0..OptimConfig::default().nm_restarts {
        let values: Vec<f64> = trace
            .iter()
            .filter(|t| t.restart == restart)
            .map(|t| t.value)
            .collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]), "restart {restart}");
    }
}

/// Central differences at the optimum, with steps scaled to each axis.
#[test]
fn local_optimality_certificate() {
    for obj in [
        Objective::Theorem { n: 3.0 },
        Objective::K { d: 2, n: 23.0 },
    ] {
        let res = minimize(obj, &OptimConfig::default()).unwrap();
        let region = search_region();
        let x = res.best.as_array();
        let mut grad = [0.0; 3];
        for i in 0..3 {
            let h = 1e-5 * (region[i].1 - region[i].0);
            let mut up = x;
            let mut dn = x;
            up[i] = (x[i] + h).min(region[i].1);
            dn[i] = (x[i] - h).max(region[i].0);
            let f = |p: [f64; 3]| obj.evaluate(&ParamTriple::unchecked(p[0], p[1], p[2]));
            grad[i] = (f(up) - f(dn)) / (up[i] - dn[i]);
        }
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        assert!(norm < 1e-4, "{obj:?}: gradient {grad:?}");
    }
}

#[test]
fn surface_examples() {
    let s = objective_surface(20).unwrap();
    assert!(s.iter().all(|p| p.value.is_finite() && p.value > 0.0));
    let at =
        Objective::Theorem { n: 3.0 }.evaluate(&ParamTriple::unchecked(155.648, tau(), 1.188_18));
    assert!((at - 13.53).abs() < 0.05, "{at}");
    let along: Vec<f64> = [1.2, 1.1, 1.05, 1.01, 1.001]
        .iter()
        .map(|&eta| {
            Objective::Theorem { n: 3.0 }.evaluate(&ParamTriple::unchecked(150.0, tau(), eta))
        })
        .collect();
    assert!(along.windows(2).all(|w| w[1] > w[0]), "{along:?}");
}
