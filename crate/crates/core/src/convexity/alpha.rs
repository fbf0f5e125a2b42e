//! The largest α with `α·W(A)·W(B) ⊆ W_A(B)`.
//!
//! `W(A)·W(B)` means the set of pairwise products. Its convex hull is spanned
//! by products of boundary points (for fixed `y`, the map `x ↦ xy` is linear,
//! so extreme products use extreme factors), and since the pair range is
//! convex it suffices to test those products. For each product `z` the
//! admissible scalings `{α ≥ 0 : αz ∈ W_A(B)}` form an interval whenever
//! `0 ∈ W_A(B)` — which holds in every case where the constant is meaningful
//! — and its right endpoint has a closed form against the ellipse, so no
//! iteration is needed.

use crate::cnr::nakasato_cnr_2x2;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use crate::numrange::{boundary_points, Ellipse};

use super::checks::pair_scale;

/// Effort and robustness knobs for [`alpha_star`].
#[derive(Debug, Clone)]
pub struct AlphaOptions {
    /// Boundary samples per factor range (the product set gets the square).
    pub boundary_count: usize,
    /// Half-thickness granted to a degenerate (segment) ellipse, relative to
    /// the pair scale; covers the roundoff spread of numerically real data.
    pub degenerate_slack: f64,
}

impl Default for AlphaOptions {
    fn default() -> Self {
        Self {
            boundary_count: 512,
            degenerate_slack: 1e-9,
        }
    }
}

/// Largest admissible α along the ray through `z`, for an ellipse in
/// normalized coordinates: `u = e^{−iφ}z`, `v = e^{−iφ}c`, semi-axes `(r, s)`
/// with `s > 0`. Solves the boundary quadratic exactly.
fn ray_limit_full(u: C64, v: C64, r: f64, s: f64) -> f64 {
    let qa = (u.re / r).powi(2) + (u.im / s).powi(2);
    let qb = -2.0 * (u.re * v.re / (r * r) + u.im * v.im / (s * s));
    let qc = (v.re / r).powi(2) + (v.im / s).powi(2) - 1.0;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return 0.0; // The ray misses the ellipse entirely.
    }
    ((-qb + disc.sqrt()) / (2.0 * qa)).max(0.0)
}

/// Same, for a degenerate ellipse thickened into a slab of half-width `tol`:
/// `|α·u.im − v.im| ≤ tol` and `|α·u.re − v.re| ≤ r + tol`.
fn ray_limit_segment(u: C64, v: C64, r: f64, tol: f64) -> f64 {
    let mut lo = 0.0_f64;
    let mut hi = f64::INFINITY;
    for (num, den, half) in [(v.im, u.im, tol), (v.re, u.re, r + tol)] {
        if den.abs() <= f64::MIN_POSITIVE {
            if num.abs() > half {
                return 0.0; // Constraint can never be met.
            }
            continue; // Constraint holds for every α.
        }
        let (mut a0, mut a1) = ((num - half) / den, (num + half) / den);
        if a0 > a1 {
            std::mem::swap(&mut a0, &mut a1);
        }
        lo = lo.max(a0);
        hi = hi.min(a1);
    }
    if lo > hi {
        0.0
    } else {
        hi
    }
}

fn ray_limit(ell: &Ellipse, z: C64, slack: f64) -> f64 {
    let frame = C64::from_polar(1.0, -ell.angle());
    let u = frame * z;
    let v = frame * ell.center();
    if ell.is_degenerate() {
        ray_limit_segment(u, v, ell.semi_major(), slack)
    } else {
        ray_limit_full(u, v, ell.semi_major(), ell.semi_minor())
    }
}

/// Supremum of `{α ≥ 0 : α·W(A)·W(B) ⊆ W_A(B)}`, by exact ray limits over
/// boundary-point products. Products at the origin impose no constraint
/// (every scaling keeps them at 0, inside by the zero-membership condition)
/// and are skipped; if every product is skipped the constant is unbounded
/// and `f64::INFINITY` is returned.
pub fn alpha_star(a: &CMat, b: &CMat, options: &AlphaOptions) -> Result<f64> {
    for m in [a, b] {
        if m.order() != 2 {
            return Err(Error::OrderMismatch {
                expected: 2,
                found: m.order(),
            });
        }
        if m.frobenius_norm() == 0.0 {
            return Err(Error::ZeroMatrix);
        }
    }
    let ell = nakasato_cnr_2x2(a, b)?;
    let slack = options.degenerate_slack * pair_scale(a, b);
    let xs = boundary_points(a, options.boundary_count)?;
    let ys = boundary_points(b, options.boundary_count)?;
    let product_floor = 1e-14 * pair_scale(a, b);

    let mut best = f64::INFINITY;
    for &x in &xs {
        for &y in &ys {
            let z = x * y;
            if z.norm() <= product_floor {
                continue;
            }
            let limit = ray_limit(&ell, z, slack);
            if limit < best {
                best = limit;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn alpha(a: &CMat, b: &CMat) -> f64 {
        alpha_star(a, b, &AlphaOptions::default()).unwrap()
    }

    #[test]
    fn sharpness_triple() {
        let e11 =
            CMat::from_rows(&[vec![C64::ONE, C64::ZERO], vec![C64::ZERO, C64::ZERO]]).unwrap();
        let e12 =
            CMat::from_rows(&[vec![C64::ZERO, C64::ONE], vec![C64::ZERO, C64::ZERO]]).unwrap();
        let invol =
            CMat::from_rows(&[vec![C64::ONE, C64::ZERO], vec![C64::ZERO, -C64::ONE]]).unwrap();
        assert!((alpha(&e11, &e11) - 1.0).abs() < 1e-3);
        assert!((alpha(&e12, &e12) - 4.0).abs() < 1e-3);
        assert!((alpha(&invol, &invol) - 2.0).abs() < 1e-3);
    }

    #[test]
    fn ray_limits_match_a_bisection_oracle() {
        // Slow membership bisection against the closed form, on a generic
        // ellipse and a generic batch of directions.
        let ell = Ellipse::new(c(0.3, -0.2), 2.0, 0.7, 0.6);
        for k in 0..48 {
            let dir = C64::from_polar(0.1 + 0.05 * k as f64, k as f64 * 0.413);
            let closed = ray_limit(&ell, dir, 0.0);
            let (mut lo, mut hi) = (0.0_f64, 64.0_f64);
            if ell.contains(hi * dir, 1e-12) {
                continue; // Oracle bracket failed; irrelevant direction.
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if ell.contains(mid * dir, 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if closed == 0.0 {
                assert!(
                    lo < 1e-9,
                    "closed form says the ray misses, oracle found {lo}"
                );
            } else {
                assert!(
                    (closed - lo).abs() < 1e-6 * closed.max(1.0),
                    "direction {k}: closed {closed} vs oracle {lo}"
                );
            }
        }
    }

    #[test]
    fn trace_zero_pairs_sit_in_the_two_to_four_band() {
        use rand::Rng;
        let mut rng = crate::SeedPlan::new(5).rng_for(0, 77);
        for _ in 0..25 {
            let mut draw = || {
                c(
                    2.0 * rng.random::<f64>() - 1.0,
                    2.0 * rng.random::<f64>() - 1.0,
                )
            };
            let (p, q) = (draw(), draw());
            let (r, s) = (draw(), draw());
            let a = CMat::from_rows(&[vec![p, q], vec![draw(), -p]]).unwrap();
            let b = CMat::from_rows(&[vec![r, s], vec![draw(), -r]]).unwrap();
            if a.frobenius_norm() < 1e-3 || b.frobenius_norm() < 1e-3 {
                continue;
            }
            let value = alpha(&a, &b);
            assert!(
                (2.0 - 1e-3..=4.0 + 1e-3).contains(&value),
                "trace-zero constant {value} escaped [2, 4]"
            );
        }
    }

    #[test]
    fn rejects_zero_matrices_and_wrong_orders() {
        let z = CMat::zeros(2);
        let e = CMat::identity(2);
        assert!(matches!(
            alpha_star(&z, &e, &AlphaOptions::default()),
            Err(Error::ZeroMatrix)
        ));
        assert!(alpha_star(&CMat::identity(3), &e, &AlphaOptions::default()).is_err());
    }

    #[test]
    fn scalar_pair_has_exact_ratio() {
        // A = B = I: both ranges are points, W(A)W(B) = {1}, range = {2}.
        let id = CMat::identity(2);
        let value = alpha(&id, &id);
        assert!(
            (value - 2.0).abs() < 1e-8,
            "point ranges give the exact ratio, got {value}"
        );
    }
}
