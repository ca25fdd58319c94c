//! Explicit constants behind the GRH-conditional Duke short-sum bound for
//! entire Artin L-functions, and the Dedekind zeta residue bounds that follow
//! from it.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] evaluates ζ(s), the prime zeta function P(s), log|Γ(s)| and
//!   prime sums over a sieved [`PrimeTable`](specfun::PrimeTable).
//! * [`mertens`] implements the RH-conditional Mertens envelope m(x) and
//!   certifies it on the short window below 13.5.
//! * [`envelope`] covers the gamma envelope f(s), its critical root τ, the
//!   maximum μ(δ) and the constants C₁ … C₇.
//! * [`bounds`] assembles F, A, B, G, H and K.
//! * [`optimizer`] minimises those objectives over the search region.
//! * [`kappa`] turns H and K into residue bounds for concrete number fields.
//! * [`reproduce`] runs the full set of reproduction checks in one place.
//!
//! Every bound produced here is conditional on GRH (and, for residues, on
//! ζ_K/ζ being entire).

// `!(x >= a)` is how domain checks reject NaN; literals keep every published digit.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bounds;
pub mod envelope;
mod error;
pub mod kappa;
pub mod mertens;
pub mod optimizer;
pub mod quadrature;
pub mod reference;
pub mod reproduce;
pub mod specfun;
mod verify;

pub use error::{Error, Result};
pub use verify::VerificationReport;
