//! Singular value decomposition of 2×2 complex matrices.
//!
//! Built on the Hermitian eigensolver: the right singular vectors are the
//! eigenvectors of `K*K`, and left vectors follow by applying `K` (with an
//! orthonormal completion when a singular value vanishes). This is exact to
//! roundoff at order 2 and avoids a general bidiagonalization.

use crate::linalg::cmat::{CMat, C64};
use crate::linalg::eig::jacobi_hermitian;

/// Singular values below this floor are treated as zero when forming left
/// vectors; the corresponding column is completed orthonormally instead of
/// dividing by a denormal.
const SINGULAR_FLOOR: f64 = 1e-150;

/// Full SVD `K = P · diag(s1, s2) · Q*` with `s1 ≥ s2 ≥ 0` and unitary `P`, `Q`.
pub fn svd_2x2(k: &CMat) -> (CMat, f64, f64, CMat) {
    assert_eq!(k.order(), 2, "svd_2x2 requires order 2");

    let h = k.adjoint().mul(k).hermitian_part();
    let spec = jacobi_hermitian(&h);
    // Ascending eigenvalues → descending singular values.
    let s1 = spec.eigenvalues[1].max(0.0).sqrt();
    let s2 = spec.eigenvalues[0].max(0.0).sqrt();

    let q1 = spec.vectors.column(1);
    let q2 = spec.vectors.column(0);
    let mut q = CMat::zeros(2);
    for i in 0..2 {
        q[(i, 0)] = q1[i];
        q[(i, 1)] = q2[i];
    }

    let p1 = if s1 > SINGULAR_FLOOR {
        apply(k, &q1).map(|z| z / s1).to_vec()
    } else {
        vec![C64::ONE, C64::ZERO]
    };
    let mut p2 = if s2 > SINGULAR_FLOOR {
        apply(k, &q2).map(|z| z / s2).to_vec()
    } else {
        // Orthonormal completion of p1 in C².
        vec![-p1[1].conj(), p1[0].conj()]
    };
    // One Gram-Schmidt pass keeps P unitary to roundoff even when s1 ≈ s2
    // leaves the eigenbasis of K*K poorly determined.
    let overlap = p1[0].conj() * p2[0] + p1[1].conj() * p2[1];
    p2[0] -= overlap * p1[0];
    p2[1] -= overlap * p1[1];
    let norm = (p2[0].norm_sqr() + p2[1].norm_sqr()).sqrt();
    if norm > SINGULAR_FLOOR {
        p2[0] /= norm;
        p2[1] /= norm;
    } else {
        p2 = vec![-p1[1].conj(), p1[0].conj()];
    }

    let mut p = CMat::zeros(2);
    for i in 0..2 {
        p[(i, 0)] = p1[i];
        p[(i, 1)] = p2[i];
    }
    (p, s1, s2, q)
}

fn apply(m: &CMat, v: &[C64]) -> [C64; 2] {
    [
        m[(0, 0)] * v[0] + m[(0, 1)] * v[1],
        m[(1, 0)] * v[0] + m[(1, 1)] * v[1],
    ]
}
