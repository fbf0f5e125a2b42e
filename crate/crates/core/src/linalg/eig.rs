//! Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! Orders never exceed 8, so Jacobi is both simple and accurate: each sweep
//! annihilates every off-diagonal pair with a complex rotation, and the
//! off-diagonal norm converges quadratically. Eigenvalues come back sorted
//! ascending with the eigenvector columns permuted to match.

use crate::error::{Error, Result};
use crate::linalg::cmat::{CMat, C64};
use crate::PREDICATE_TOL;

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub vectors: CMat,
}

/// Convergence threshold on the off-diagonal Frobenius norm, relative to the
/// matrix size; 1e-12 leaves eigenvalues accurate to a few ulps after the
/// final quadratic sweep.
const OFF_DIAG_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 40;

/// Eigendecomposition of a Hermitian matrix (checked within the predicate
/// tolerance, then symmetrized so roundoff in the input cannot leak through).
pub fn herm_eig(h: &CMat) -> Result<SpectralData> {
    let residual = h.hermitian_residual();
    if residual > PREDICATE_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(jacobi_hermitian(&h.hermitian_part()))
}

/// Jacobi iteration on an exactly Hermitian input. Internal entry point for
/// callers that construct `H` as `M*M` or a Hermitian part and therefore
/// need no tolerance check.
pub(crate) fn jacobi_hermitian(h: &CMat) -> SpectralData {
    let n = h.order();
    let mut a = h.clone();
    let mut v = CMat::identity(n);
    // Relative threshold: convergence must not depend on the overall scale
    // of H (K*K for a tiny contraction K is itself tiny).
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diag_norm(&a) <= OFF_DIAG_TOL * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate_pair(&mut a, &mut v, p, q);
            }
        }
    }

    // Collect and sort ascending, permuting eigenvector columns alongside.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMat::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, dst)] = v[(row, src)];
        }
    }
    SpectralData {
        eigenvalues,
        vectors,
    }
}

fn off_diag_norm(a: &CMat) -> f64 {
    let n = a.order();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
///
/// With `a_pq = r·u` (r > 0, |u| = 1) the unitary
/// `J = [[c, −s·u], [s·ū, c]]` (embedded at rows/cols p, q) maps the 2×2
/// subproblem to a real rotation; `t = s/c` solves `t² − 2τt − 1 = 0` with
/// `τ = (a_qq − a_pp)/(2r)`, taking the root of smaller magnitude for
/// stability.
fn rotate_pair(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let u = apq / r;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    // Roots of t² − 2τt − 1 have product −1; the smaller-magnitude one keeps
    // the rotation angle below π/4.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.order();
    let su = s * u;
    let su_conj = s * u.conj();

    // A ← J* A J, applied as row then column updates.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk + su * aqk;
        a[(q, k)] = -su_conj * apk + c * aqk;
    }
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp + su_conj * akq;
        a[(k, q)] = -su * akp + c * akq;
    }
    // Pin the rotated pair to exactly Hermitian form; roundoff otherwise
    // accumulates skew parts over sweeps.
    a[(p, q)] = C64::ZERO;
    a[(q, p)] = C64::ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp + su_conj * vkq;
        v[(k, q)] = -su * vkp + c * vkq;
    }
}

/// Largest singular value, computed exactly for these orders as
/// `sqrt(λ_max(M*M))`.
pub fn spectral_norm(m: &CMat) -> f64 {
    let h = m.adjoint().mul(m);
    let spec = jacobi_hermitian(&h.hermitian_part());
    spec.eigenvalues
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(0.0)
        .sqrt()
}

/// Contraction predicate: `‖M‖₂ ≤ 1` within the crate predicate tolerance.
pub fn is_contraction(m: &CMat) -> bool {
    spectral_norm(m) <= 1.0 + PREDICATE_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn reconstruct(spec: &SpectralData) -> CMat {
        let n = spec.vectors.order();
        let mut d = CMat::zeros(n);
        for i in 0..n {
            d[(i, i)] = c(spec.eigenvalues[i], 0.0);
        }
        spec.vectors.mul(&d).mul(&spec.vectors.adjoint())
    }

    #[test]
    fn diagonal_matrix_is_fixed_point() {
        let h = CMat::from_rows(&[vec![c(3.0, 0.0), C64::ZERO], vec![C64::ZERO, c(-1.0, 0.0)]])
            .unwrap();
        let spec = herm_eig(&h).unwrap();
        assert_eq!(spec.eigenvalues, vec![-1.0, 3.0]);
    }

    #[test]
    fn known_two_by_two() {
        // [[0, z], [z̄, 0]] has eigenvalues ±|z|.
        let z = c(3.0, 4.0);
        let h = CMat::from_rows(&[vec![C64::ZERO, z], vec![z.conj(), C64::ZERO]]).unwrap();
        let spec = herm_eig(&h).unwrap();
        assert!((spec.eigenvalues[0] + 5.0).abs() < 1e-12);
        assert!((spec.eigenvalues[1] - 5.0).abs() < 1e-12);
        assert!(spec.vectors.is_unitary());
        assert!(reconstruct(&spec).frobenius_dist(&h) < 1e-12);
    }

    #[test]
    fn random_orders_reconstruct_and_sum_to_trace() {
        use rand::Rng;
        let mut rng = crate::SeedPlan::new(11).rng_for(0, 0);
        for order in 2..=8 {
            for _ in 0..20 {
                let entries: Vec<C64> = (0..order * order)
                    .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect();
                let m = CMat::new(order, entries).unwrap();
                let h = m.hermitian_part();
                let spec = herm_eig(&h).unwrap();
                assert!(
                    reconstruct(&spec).frobenius_dist(&h) < 1e-9,
                    "reconstruction failed at order {order}"
                );
                let sum: f64 = spec.eigenvalues.iter().sum();
                assert!((sum - h.trace().re).abs() < 1e-9);
                assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
                assert!(spec.vectors.is_unitary());
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m =
            CMat::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![C64::ZERO, C64::ZERO]]).unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn spectral_norm_of_known_matrices() {
        let m =
            CMat::from_rows(&[vec![C64::ZERO, c(2.0, 0.0)], vec![C64::ZERO, C64::ZERO]]).unwrap();
        assert!((spectral_norm(&m) - 2.0).abs() < 1e-12);
        assert!(is_contraction(&CMat::identity(3)));
        assert!(!is_contraction(&m));
    }
}
