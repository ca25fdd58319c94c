use duke_bounds::kappa::{
    batch_report, corollary_exponents, kappa_bounds, parse_records, FieldRecord, KappaSource, Mode,
};
use duke_bounds::optimizer::OptimConfig;
use duke_bounds::reference::COROLLARY_EXPONENTS;

#[test]
fn corollary_rows() {
    let rows = corollary_exponents(&OptimConfig::default()).unwrap();
    let cubic = &rows[1];
    assert!((cubic.h - 18.8667).abs() < 1e-3 && (cubic.k - 17.5328).abs() < 1e-3);
    assert_eq!((cubic.upper_rounded, cubic.lower_rounded), (18.87, 17.54));
    let sextic = &rows[4];
    assert!((sextic.h - 33.3541).abs() < 1e-3 && (sextic.k - 32.2334).abs() < 1e-3);
    assert_eq!((sextic.upper_rounded, sextic.lower_rounded), (33.36, 32.24));
    for r in &rows {
        assert!(r.upper_rounded >= r.h && r.lower_rounded >= r.k);
        assert!(r.upper_rounded - r.h < 0.01 && r.lower_rounded - r.k < 0.01);
    }
}

#[test]
fn minimal_fields_per_degree_batch() {
    let text = "2,-3\n3,23\n4,117\n5,1609\n6,-9747\n";
    let report = batch_report(
        &parse_records(text),
        Mode::PerDegree,
        &OptimConfig::default(),
    );
    assert_eq!(report.rows.len(), 5);
    assert!(report.errors.is_empty());
    for (row, (degree, upper, lower)) in report.rows.iter().zip(COROLLARY_EXPONENTS) {
        let b = row.bounds.as_ref().unwrap();
        assert_eq!(row.degree, degree);
        assert_eq!(b.source, KappaSource::PerDegree);
        assert_eq!(b.exponent_lower, lower);
        if degree != 5 {
            assert_eq!(b.exponent_upper, upper);
        } else {
            // two-decimal ceiling of 28.1733
            assert_eq!(b.exponent_upper, 28.18);
        }
    }
}

#[test]
fn sandwich_is_strict() {
    let cfg = OptimConfig::default();
    for n in 2..=9u32 {
        for disc in [1e4, 1e8, 1e50] {
            let f = FieldRecord::new(n, disc, None).unwrap();
            for mode in [Mode::General, Mode::PerDegree] {
                match kappa_bounds(&f, mode, &cfg) {
                    Ok(b) => assert!(b.lower < b.upper && b.lower > 0.0),
                    Err(_) => assert!(mode == Mode::PerDegree && n > 6),
                }
            }
        }
    }
}
