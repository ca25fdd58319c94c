//! Published reference values, used only as comparison targets.
//!
//! Nothing in the computation path reads from here.

/// Root of f(−1+δ) = f(−1/2+δ).
pub const TAU: f64 = 0.219_733_068_786_773;

/// ζ(3/2)/√(2π).
pub const C1: f64 = 1.042_186_978_869_076_554_6;

/// Approximate minimizer of A + B at N = 3.
pub const OPTIMAL_TRIPLE: (f64, f64, f64) = (155.648, 0.213_503, 1.188_18);

/// Upper bound on min A + B at N = 3.
pub const THEOREM_CONSTANT: f64 = 13.53;

/// Exponent of the degree-free residue bounds.
pub const GENERAL_EXPONENT: f64 = 17.81;

/// Number fields of minimal absolute discriminant in degrees 2 through 6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalField {
    pub degree: u32,
    pub discriminant: i64,
    pub polynomial: &'static str,
    pub label: &'static str,
}

impl MinimalField {
    pub fn abs_discriminant(&self) -> f64 {
        self.discriminant.unsigned_abs() as f64
    }
}

pub const MINIMAL_FIELDS: [MinimalField; 5] = [
    MinimalField {
        degree: 2,
        discriminant: -3,
        polynomial: "x^2 - x + 1",
        label: "2.0.3.1",
    },
    MinimalField {
        degree: 3,
        discriminant: 23,
        polynomial: "x^3 - x^2 + 1",
        label: "3.1.23.1",
    },
    MinimalField {
        degree: 4,
        discriminant: 117,
        polynomial: "x^4 - x^3 - x^2 + x + 1",
        label: "4.0.117.1",
    },
    MinimalField {
        degree: 5,
        discriminant: 1609,
        polynomial: "x^5 - x^3 - x^2 + x + 1",
        label: "5.1.1609.1",
    },
    MinimalField {
        degree: 6,
        discriminant: -9747,
        polynomial: "x^6 - x^5 + x^4 - 2x^3 + 4x^2 - 3x + 1",
        label: "6.0.9747.1",
    },
];

/// One row of the per-degree optimization table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkRow {
    pub degree: u32,
    pub d: u32,
    pub n0: f64,
    pub triple: (f64, f64, f64),
    pub h: f64,
    pub k: f64,
}

pub const HK_TABLE: [HkRow; 5] = [
    HkRow {
        degree: 2,
        d: 1,
        n0: 3.0,
        triple: (155.648, 0.213_503, 1.188_18),
        h: 17.809,
        k: 17.809,
    },
    HkRow {
        degree: 3,
        d: 2,
        n0: 23.0,
        triple: (13.0627, 0.210_516, 1.167_57),
        h: 18.8667,
        k: 17.5328,
    },
    HkRow {
        degree: 4,
        d: 3,
        n0: 117.0,
        triple: (9.572_19, 0.210_398, 1.166_82),
        h: 24.0981,
        k: 22.5199,
    },
    HkRow {
        degree: 5,
        d: 4,
        n0: 1609.0,
        triple: (7.5451, 0.208_941, 1.157_61),
        h: 28.1733,
        k: 26.9298,
    },
    HkRow {
        degree: 6,
        d: 5,
        n0: 9747.0,
        triple: (6.800_12, 0.208_989, 1.157_91),
        h: 33.3541,
        k: 32.2334,
    },
];

/// Published residue-bound exponents (degree, upper, lower), as printed.
pub const COROLLARY_EXPONENTS: [(u32, f64, f64); 5] = [
    (2, 17.81, 17.81),
    (3, 18.87, 17.54),
    (4, 24.1, 22.52),
    (5, 28.2, 26.93),
    (6, 33.36, 32.24),
];

/// Mertens envelope clearances at x = 5, 7, 11, 13.
pub const MERTENS_CLEARANCES: [(f64, f64); 4] =
    [(5.0, 0.061), (7.0, 0.0010), (11.0, 0.045), (13.0, 0.018)];

/// Prime sum Σ log p / (p(p−1)).
pub const PRIME_LOG_WEIGHT: f64 = 0.755_366_6;

/// Upper bounds on P(3/2) and log ζ(3/2).
pub const PRIME_ZETA_THREE_HALVES_MAX: f64 = 0.849_567;
pub const LOG_ZETA_THREE_HALVES_MAX: f64 = 0.960_26;

/// 5/(2 − 4τ), the lower edge of admissible β, as printed.
pub const BETA_THRESHOLD: f64 = 4.460_03;
