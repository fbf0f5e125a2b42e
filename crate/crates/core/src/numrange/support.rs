//! Classical numerical range via support functions.
//!
//! For any order, `h(θ) = λ_max(Herm(e^{−iθ} B))` is the support function of
//! the (convex) range of `B`, and the maximizing eigenvector `x` realizes the
//! boundary point `x*Bx`. These three operations are the order-agnostic
//! fallback; order 2 additionally has the exact ellipse in
//! [`ellipse_2x2`](crate::numrange::ellipse_2x2).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{jacobi_hermitian, CMat, C64};
use crate::numrange::ellipse::golden_max;

/// Support function of the numerical range of `b` in direction `θ`.
pub fn support_classical(b: &CMat, theta: f64) -> f64 {
    let rotated = b.scale(Complex64::from_polar(1.0, -theta));
    let spec = jacobi_hermitian(&rotated.hermitian_part());
    *spec
        .eigenvalues
        .last()
        .expect("orders are at least 2, the spectrum is nonempty")
}

/// Number of coarse directions scanned before golden-section refinement of
/// the radius; the support function of an order-8 range is smooth enough
/// that 512 cells isolate the global maximum.
const RADIUS_SCAN: usize = 512;

/// Numerical radius `max{ |z| : z in the range }`, which equals
/// `max_θ h(θ)`; coarse scan plus golden-section refinement.
pub fn numerical_radius(b: &CMat) -> f64 {
    let h = |theta: f64| support_classical(b, theta);
    let mut best = f64::NEG_INFINITY;
    let mut best_k = 0;
    for k in 0..RADIUS_SCAN {
        let v = h(2.0 * std::f64::consts::PI * k as f64 / RADIUS_SCAN as f64);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let step = 2.0 * std::f64::consts::PI / RADIUS_SCAN as f64;
    let center = best_k as f64 * step;
    golden_max(&h, center - step, center + step)
        .max(best)
        .max(0.0)
}

/// Boundary points of the range in `count` uniformly spread directions: the
/// point for direction `θ` is `x*Bx` with `x` the top eigenvector of
/// `Herm(e^{−iθ}B)`.
pub fn boundary_points(b: &CMat, count: usize) -> Result<Vec<C64>> {
    if count < 8 {
        return Err(Error::InvalidArgument(format!(
            "boundary sampling needs at least 8 directions, got {count}"
        )));
    }
    let n = b.order();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
        let rotated = b.scale(Complex64::from_polar(1.0, -theta));
        let spec = jacobi_hermitian(&rotated.hermitian_part());
        let x = spec.vectors.column(n - 1);
        // z = x* B x.
        let mut z = C64::ZERO;
        for i in 0..n {
            for j in 0..n {
                z += x[i].conj() * b[(i, j)] * x[j];
            }
        }
        out.push(z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::numrange::ellipse_2x2;

    #[test]
    fn radius_of_reference_matrices() {
        // Shifted Jordan block [[0,3],[1,0]]: range is an ellipse with
        // semi-axes 2 and 1, so the radius is 2.
        let m =
            CMat::from_rows(&[vec![C64::ZERO, c(3.0, 0.0)], vec![c(1.0, 0.0), C64::ZERO]]).unwrap();
        assert!((numerical_radius(&m) - 2.0).abs() < 1e-8);

        // Rank-one nilpotent: disc of radius 1/2.
        let e12 =
            CMat::from_rows(&[vec![C64::ZERO, C64::ONE], vec![C64::ZERO, C64::ZERO]]).unwrap();
        assert!((numerical_radius(&e12) - 0.5).abs() < 1e-10);

        // Hermitian: radius is the largest absolute eigenvalue.
        let h = CMat::from_rows(&[vec![c(1.0, 0.0), C64::ZERO], vec![C64::ZERO, c(-3.0, 0.0)]])
            .unwrap();
        assert!((numerical_radius(&h) - 3.0).abs() < 1e-10);

        assert_eq!(numerical_radius(&CMat::zeros(3)), 0.0);
    }

    #[test]
    fn support_matches_ellipse_form_at_order_two() {
        let b = CMat::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, -1.0)],
            vec![c(1.0, -2.0), c(-1.0, -1.0)],
        ])
        .unwrap();
        let e = ellipse_2x2(&b).unwrap();
        for k in 0..97 {
            let theta = 0.065 * k as f64;
            assert!(
                (support_classical(&b, theta) - e.support(theta)).abs() < 1e-9,
                "support mismatch at θ = {theta}"
            );
        }
    }

    #[test]
    fn support_is_monotone_under_embedding_with_zero() {
        // Bordering with a zero block can only add the origin to the range.
        let b = CMat::from_rows(&[
            vec![c(0.4, 0.2), c(1.0, 0.0)],
            vec![c(0.0, 0.7), c(-0.3, 0.1)],
        ])
        .unwrap();
        let big = b.embed_with_zeros(4).unwrap();
        for k in 0..64 {
            let theta = 0.1 * k as f64;
            let h2 = support_classical(&b, theta);
            let h4 = support_classical(&big, theta);
            assert!(h4 + 1e-10 >= h2.max(0.0));
            assert!(h4 <= h2.max(0.0) + 1e-10);
        }
    }

    #[test]
    fn boundary_points_realize_their_support() {
        let b = CMat::from_rows(&[vec![c(0.7, 0.0), c(2.0, 0.0)], vec![C64::ZERO, c(0.7, 0.0)]])
            .unwrap();
        let pts = boundary_points(&b, 64).unwrap();
        let e = ellipse_2x2(&b).unwrap();
        for (k, z) in pts.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 64.0;
            let h = support_classical(&b, theta);
            let projected = z.re * theta.cos() + z.im * theta.sin();
            assert!((projected - h).abs() < 1e-10, "not a supporting point");
            assert!(e.contains(*z, 1e-9));
        }
        assert!(boundary_points(&b, 4).is_err());
    }
}
