//! Pair ranges of 2×2 matrices and their bordered extensions.
//!
//! The central object is the set of trace values `tr(A V*B V)` over unitary
//! `V`. At order 2 this set is an exactly computable ellipse
//! ([`nakasato_cnr_2x2`]); bordering both matrices with zero rows and columns
//! enlarges it to a union of compressed copies ([`bordered_region`]), and the
//! two agree exactly when that union collapses — the situation the
//! [`crate::convexity`] module certifies.

mod canonical;
mod cloud;
mod compress;
mod dilation;
mod nakasato;
mod region;

pub use canonical::{canonicalize_2x2, Canonical2};
pub use cloud::haar_cloud;
pub use compress::{compress, scale_offdiag};
pub use dilation::{dilation_decompose, DilationParts};
pub use nakasato::{nakasato_cnr_2x2, CanonicalPair};
pub use region::{bordered_region, Region, SampleBudget};

pub(crate) use dilation::bordered_trace;

use crate::error::Result;
use crate::linalg::CMat;

/// Joint canonical form of a 2×2 pair; see [`CanonicalPair::from_matrices`].
pub fn canonical_pair(a: &CMat, b: &CMat) -> Result<CanonicalPair> {
    CanonicalPair::from_matrices(a, b)
}
