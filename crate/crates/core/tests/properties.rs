use duke_bounds::specfun::{log_abs_gamma, prime_zeta, zeta_real, EvalOptions};
use proptest::prelude::*;

#[test]
fn zeta_strictly_decreasing_on_grid() {
    let opts = EvalOptions::default();
    let grid: Vec<f64> = (1..=400).map(|i| 1.0 + 0.01 * i as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&s| zeta_real(s, &opts).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn prime_zeta_below_log_zeta() {
    let opts = EvalOptions::default();
    for i in 1..=300 {
        let s = 1.0 + 0.01 * i as f64;
        let p = prime_zeta(s, &opts).unwrap();
        let z = zeta_real(s, &opts).unwrap();
        assert!(p.exp() <= z, "s = {s}: exp P = {}, zeta = {z}", p.exp());
    }
}

proptest! {
    #[test]
    fn evaluations_are_pure(s in 1.01f64..6.0, sigma in -4.5f64..4.5, t in 0.1f64..30.0) {
        let opts = EvalOptions::default();
        prop_assert_eq!(zeta_real(s, &opts).unwrap().to_bits(), zeta_real(s, &opts).unwrap().to_bits());
        prop_assert_eq!(prime_zeta(s, &opts).unwrap().to_bits(), prime_zeta(s, &opts).unwrap().to_bits());
        prop_assert_eq!(
            log_abs_gamma(sigma, t).unwrap().to_bits(),
            log_abs_gamma(sigma, t).unwrap().to_bits()
        );
    }
}
