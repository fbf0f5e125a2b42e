//! Numerical ranges of small complex matrices.
//!
//! The library computes three nested objects for pairs of 2×2 complex
//! matrices `(A, B)`:
//!
//! * the classical numerical range `W(B)` of a single matrix (an elliptical
//!   disc for order 2, sampled via support functions for orders up to 8),
//! * the range `{tr(A · V*BV) : V unitary}` of a 2×2 pair, which is again an
//!   elliptical disc and is computed in closed form from a canonical form of
//!   the pair,
//! * the range of the zero-bordered pair `(A ⊕ 0, B ⊕ 0)` at order `n ≥ 3`,
//!   which in general is only star-shaped; it is sampled by Monte-Carlo over
//!   Haar-random unitaries and bracketed by a deterministic ellipse sweep.
//!
//! The bordered range equals the 2×2 range exactly when certain trace
//! conditions hold, and [`convexity::certify_equality`] decides this
//! numerically: it compares an independent Haar-sampled cloud against the
//! closed-form ellipse and returns a certificate with a violation witness
//! when the two disagree. [`convexity::checks`] implements the individual
//! sufficient/necessary conditions so their predictions can be validated
//! against the sampler.
//!
//! Sampling loops are data-parallel (rayon) by default; build with
//! `--no-default-features` or pass [`Exec::Serial`] for the sequential
//! fallback. Results are identical either way: every sample is derived from
//! its index through a counter-based RNG stream, never from scheduling order.

pub mod cnr;
pub mod convexity;
pub mod error;
pub mod exec;
pub mod hull;
pub mod linalg;
pub mod numrange;
pub mod stream;

pub use cnr::{
    bordered_region, canonical_pair, canonicalize_2x2, compress, dilation_decompose, haar_cloud,
    nakasato_cnr_2x2, scale_offdiag, Canonical2, CanonicalPair, DilationParts, Region,
    SampleBudget,
};
pub use convexity::{
    alpha_star, certify_equality, check_c2, check_c3, check_c4, check_lemma5_zero, check_m0,
    check_m1, check_m2, check_m3, check_m4, m3_conditions, pair_scale, reproduce, AlphaOptions,
    AngleGap, BudgetUsed, Certificate, CertifyOptions, CheckReport, ConditionId, M3Conditions,
    ReproCase, ReproItem, ReproReport, Verdict, Witness, MARGIN_TOL,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use linalg::{haar_unitary, herm_eig, orbit_element_2x2, svd_2x2, CMat, SpectralData, C64};
pub use numrange::{
    boundary_points, ellipse_2x2, numerical_radius, support_classical, AngleGrid, Ellipse,
};
pub use stream::SeedPlan;

/// Shorthand complex constructor used pervasively in tests and fixtures.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Floor applied to the pair scale `r(A)·r(B)` so that relative tolerances
/// stay meaningful for (near-)zero inputs.
pub const SCALE_FLOOR: f64 = 1e-30;

/// Absolute tolerance for structural predicates (hermitian?, unitary?, …).
pub const PREDICATE_TOL: f64 = 1e-10;
