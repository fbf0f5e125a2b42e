//! Exact reduction of a bordered trace to order 2.
//!
//! For 2×2 matrices `A, B` and an order-`n` unitary `U` (`n ≥ 3`),
//!
//! ```text
//! tr((A ⊕ 0) · U*(B ⊕ 0)U) = tr(A · K*BK),    K = leading 2×2 block of U,
//! ```
//!
//! and splitting `K = P·diag(s₁, s₂)·Q*` turns the right side into
//! `α · tr(Â · B̂(ε))` with `Â = Q*AQ`, `B̂ = P*BP`, `α = s₁²`, `ε = s₂/s₁`.
//! At `n = 3` the block always has `s₁ = 1`, so `α = 1` there; for `n ≥ 4`
//! every `(α, ε) ∈ [0,1]²` occurs. This identity is what lets the sampled
//! bordered range be swept by closed-form ellipses.

use crate::error::{Error, Result};
use crate::linalg::{svd_2x2, CMat, C64};

/// Output of the reduction: conjugated matrices, the scale `α = s₁²`, the
/// compression parameter `ε = s₂/s₁`, and the bordered trace value itself.
#[derive(Debug, Clone)]
pub struct DilationParts {
    pub a_hat: CMat,
    pub b_hat: CMat,
    pub alpha: f64,
    pub epsilon: f64,
    pub value: C64,
}

/// The bordered trace `tr((A⊕0) U*(B⊕0)U)` evaluated through the leading
/// block; hot path shared by the Monte-Carlo cloud.
pub(crate) fn bordered_trace(a: &CMat, b: &CMat, u: &CMat) -> C64 {
    let k = u.leading_block(2);
    a.trace_product(&k.adjoint().mul(&b.mul(&k)))
}

/// Singular values below this are treated as a vanished leading block.
const BLOCK_FLOOR: f64 = 1e-14;

/// Decompose the bordered trace for one unitary; see the module docs.
pub fn dilation_decompose(a: &CMat, b: &CMat, u: &CMat) -> Result<DilationParts> {
    for (m, name) in [(a, "A"), (b, "B")] {
        if m.order() != 2 {
            return Err(Error::ShapeMismatch(format!(
                "{name} must have order 2, found {}",
                m.order()
            )));
        }
    }
    if u.order() < 3 {
        return Err(Error::EmbeddingTooSmall {
            found: u.order(),
            minimum: 3,
        });
    }
    let residual = u.unitary_residual();
    if residual > crate::PREDICATE_TOL {
        return Err(Error::NotUnitary { residual });
    }

    let k = u.leading_block(2);
    let (p, s1, s2, q) = svd_2x2(&k);
    let value = bordered_trace(a, b, u);
    if s1 <= BLOCK_FLOOR {
        return Ok(DilationParts {
            a_hat: q.adjoint().mul(a).mul(&q),
            b_hat: p.adjoint().mul(b).mul(&p),
            alpha: 0.0,
            epsilon: 0.0,
            value,
        });
    }
    Ok(DilationParts {
        a_hat: q.adjoint().mul(a).mul(&q),
        b_hat: p.adjoint().mul(b).mul(&p),
        alpha: (s1 * s1).min(1.0),
        epsilon: (s2 / s1).min(1.0),
        value,
    })
}
