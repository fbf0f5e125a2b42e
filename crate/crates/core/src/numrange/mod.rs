//! Classical numerical ranges: the exact order-2 ellipse and support-function
//! machinery for orders up to 8.

mod ellipse;
mod support;

pub use ellipse::{AngleGrid, Ellipse};
pub use support::{boundary_points, numerical_radius, support_classical};

use crate::error::{Error, Result};
use crate::linalg::CMat;

/// Exact numerical range of a 2×2 matrix as a filled ellipse.
///
/// The ellipse is centered at `tr B / 2` with the eigenvalues of `B` as foci;
/// the full minor axis is `√(tr(B*B) − |λ₁|² − |λ₂|²)`. Normal matrices give
/// the segment joining the eigenvalues, scalar ones a point.
pub fn ellipse_2x2(b: &CMat) -> Result<Ellipse> {
    if b.order() != 2 {
        return Err(Error::OrderMismatch {
            expected: 2,
            found: b.order(),
        });
    }
    let half_tr = 0.5 * b.trace();
    let det = b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)];
    // λ± = tr/2 ± √((tr/2)² − det).
    let disc = (half_tr * half_tr - det).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;

    let fro_sq: f64 = b.entries().iter().map(|z| z.norm_sqr()).sum();
    let mut minor_sq = (fro_sq - l1.norm_sqr() - l2.norm_sqr()).max(0.0);
    // The subtraction cancels exactly for normal matrices; a residue of a few
    // ulps of fro² is noise and would otherwise surface as a spurious minor
    // axis of order √ulp.
    if minor_sq <= 4.0 * f64::EPSILON * fro_sq {
        minor_sq = 0.0;
    }
    let semi_minor = 0.5 * minor_sq.sqrt();
    let focal = 0.5 * (l1 - l2).norm();
    let semi_major = (semi_minor * semi_minor + focal * focal).sqrt();
    let angle = if focal > 0.0 { (l1 - l2).arg() } else { 0.0 };
    Ok(Ellipse::new(half_tr, semi_major, semi_minor, angle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::linalg::C64;

    #[test]
    fn shifted_jordan_block() {
        // [[0,3],[1,0]]: eigenvalues ±√3, semi-axes (2, 1), axis horizontal.
        let b =
            CMat::from_rows(&[vec![C64::ZERO, c(3.0, 0.0)], vec![c(1.0, 0.0), C64::ZERO]]).unwrap();
        let e = ellipse_2x2(&b).unwrap();
        assert!(e.center().norm() < 1e-15);
        assert!((e.semi_major() - 2.0).abs() < 1e-14);
        assert!((e.semi_minor() - 1.0).abs() < 1e-14);
        assert!(e.angle().abs() < 1e-14);
        let (f1, f2) = e.foci();
        assert!((f1 - c(3f64.sqrt(), 0.0)).norm() < 1e-14);
        assert!((f2 + c(3f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rank_one_nilpotent_gives_disc() {
        let e12 =
            CMat::from_rows(&[vec![C64::ZERO, C64::ONE], vec![C64::ZERO, C64::ZERO]]).unwrap();
        let e = ellipse_2x2(&e12).unwrap();
        assert!(e.center().norm() < 1e-15);
        assert!((e.semi_major() - 0.5).abs() < 1e-15);
        assert!((e.semi_minor() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn normal_matrices_give_segments() {
        // diag(1,−1): the segment [−1, 1].
        let d =
            CMat::from_rows(&[vec![C64::ONE, C64::ZERO], vec![C64::ZERO, c(-1.0, 0.0)]]).unwrap();
        let e = ellipse_2x2(&d).unwrap();
        assert!(e.is_degenerate());
        assert!((e.semi_major() - 1.0).abs() < 1e-15);
        assert!(e.semi_minor() < 1e-15);
        assert!(e.angle().abs() < 1e-15);

        // Skew form [[0,1],[−1,0]]: eigenvalues ±i, vertical segment.
        let s =
            CMat::from_rows(&[vec![C64::ZERO, C64::ONE], vec![c(-1.0, 0.0), C64::ZERO]]).unwrap();
        let e = ellipse_2x2(&s).unwrap();
        assert!(e.is_degenerate());
        assert!((e.angle() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);

        // Hermitian: real segment between the eigenvalues. The minor axis
        // comes from a cancelling subtraction, so allow roundoff-level size.
        let h = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 1.0)],
            vec![c(1.0, -1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let e = ellipse_2x2(&h).unwrap();
        assert!(e.semi_minor() < 1e-7);
        assert!((e.center() - c(2.0, 0.0)).norm() < 1e-14);
        assert!((e.semi_major() - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn scalar_matrix_gives_point() {
        let m = CMat::identity(2).scale(c(0.3, -0.4));
        let e = ellipse_2x2(&m).unwrap();
        assert!(e.semi_major() < 1e-15);
        assert!((e.center() - c(0.3, -0.4)).norm() < 1e-15);
    }

    #[test]
    fn rejects_wrong_order() {
        assert!(matches!(
            ellipse_2x2(&CMat::identity(3)),
            Err(Error::OrderMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn agrees_with_support_on_random_matrices() {
        use rand::Rng;
        let mut rng = crate::SeedPlan::new(17).rng_for(0, 2);
        for _ in 0..100 {
            let entries: Vec<C64> = (0..4)
                .map(|_| {
                    c(
                        2.0 * rng.random::<f64>() - 1.0,
                        2.0 * rng.random::<f64>() - 1.0,
                    )
                })
                .collect();
            let b = CMat::new(2, entries).unwrap();
            let e = ellipse_2x2(&b).unwrap();
            for k in 0..32 {
                let theta = 0.196 * k as f64;
                assert!(
                    (e.support(theta) - support_classical(&b, theta)).abs() < 1e-9,
                    "ellipse/support mismatch"
                );
            }
        }
    }
}
