//! One-parameter compressions of 2×2 matrices.
//!
//! `compress` is the two-sided squeeze `diag(1, ε) · B · diag(1, ε)`, the
//! shape a unitary dilation block takes after the singular-value split;
//! `scale_offdiag` damps only the off-diagonal entries, which realizes the
//! convex combination `((1+ε)B + (1−ε)·DBD)/2` with `D = diag(1, −1)` and
//! therefore never grows the pair range.

use crate::error::{Error, Result};
use crate::linalg::CMat;

fn check_args(b: &CMat, eps: f64) -> Result<()> {
    if b.order() != 2 {
        return Err(Error::OrderMismatch {
            expected: 2,
            found: b.order(),
        });
    }
    if !eps.is_finite() || !(0.0..=1.0).contains(&eps) {
        return Err(Error::EpsilonOutOfRange(eps));
    }
    Ok(())
}

/// `[[b11, ε·b12], [ε·b21, b22]]`.
pub fn scale_offdiag(b: &CMat, eps: f64) -> Result<CMat> {
    check_args(b, eps)?;
    let mut out = b.clone();
    out[(0, 1)] *= eps;
    out[(1, 0)] *= eps;
    Ok(out)
}

/// `diag(1, ε) · B · diag(1, ε) = [[b11, ε·b12], [ε·b21, ε²·b22]]`.
pub fn compress(b: &CMat, eps: f64) -> Result<CMat> {
    check_args(b, eps)?;
    let mut out = b.clone();
    out[(0, 1)] *= eps;
    out[(1, 0)] *= eps;
    out[(1, 1)] *= eps * eps;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::cnr::nakasato_cnr_2x2;
    use crate::linalg::C64;

    fn sample() -> CMat {
        CMat::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, -1.0)],
            vec![c(1.0, -2.0), c(-1.0, -1.0)],
        ])
        .unwrap()
    }

    #[test]
    fn endpoint_values() {
        let b = sample();
        assert!(compress(&b, 1.0).unwrap().frobenius_dist(&b) < 1e-15);
        assert!(scale_offdiag(&b, 1.0).unwrap().frobenius_dist(&b) < 1e-15);

        let squeezed = compress(&b, 0.0).unwrap();
        assert_eq!(squeezed[(0, 0)], b[(0, 0)]);
        assert_eq!(squeezed[(0, 1)], C64::ZERO);
        assert_eq!(squeezed[(1, 1)], C64::ZERO);

        let damped = scale_offdiag(&b, 0.0).unwrap();
        assert_eq!(damped[(1, 1)], b[(1, 1)]);
        assert_eq!(damped[(1, 0)], C64::ZERO);
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let b = sample();
        for bad in [-0.1, 1.1, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                compress(&b, bad),
                Err(Error::EpsilonOutOfRange(_))
            ));
            assert!(scale_offdiag(&b, bad).is_err());
        }
        assert!(compress(&CMat::identity(3), 0.5).is_err());
    }

    #[test]
    fn offdiag_damping_shrinks_the_pair_range() {
        // The damped matrix is a convex combination of B and DBD (same
        // orbit), so its range against any A is contained in the original.
        let a = CMat::from_rows(&[
            vec![c(2.0, 1.0), c(3.0, 0.0)],
            vec![c(1.0, -2.0), c(-2.0, -1.0)],
        ])
        .unwrap();
        let b = sample();
        let full = nakasato_cnr_2x2(&a, &b).unwrap();
        let grid = crate::numrange::AngleGrid::new(256);
        for step in 0..=8 {
            let eps = step as f64 / 8.0;
            let damped = nakasato_cnr_2x2(&a, &scale_offdiag(&b, eps).unwrap()).unwrap();
            for k in 0..grid.len() {
                let theta = grid.theta(k);
                assert!(
                    damped.support(theta) <= full.support(theta) + 1e-9,
                    "damped range escaped at ε = {eps}, θ = {theta}"
                );
            }
        }
    }
}
