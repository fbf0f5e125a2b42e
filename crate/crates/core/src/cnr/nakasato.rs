//! Closed-form range of a 2×2 pair.
//!
//! For canonical forms `F_A = [[a, a12], [a21, a]]`, `F_B = [[b, b12], [b21, b]]`
//! with phases `μ, ν`, the set `{ tr(A · V*BV) : V unitary }` is the filled
//! ellipse `2μν · W(M)` of the 2×2 core matrix
//!
//! ```text
//! M = [[a·b, a12·b12], [a21·b21, a·b]].
//! ```
//!
//! In particular the range is always convex at order 2; semi-axes come from
//! the classical elliptical form of `W(M)`.

use crate::cnr::canonical::{canonicalize_2x2, Canonical2};
use crate::error::Result;
use crate::linalg::{CMat, C64};
use crate::numrange::{ellipse_2x2, Ellipse};

/// Canonical data of a pair, the input of the closed-form range.
#[derive(Debug, Clone)]
pub struct CanonicalPair {
    pub mu: C64,
    pub nu: C64,
    pub a: C64,
    pub b: C64,
    pub a12: f64,
    pub a21: f64,
    pub b12: f64,
    pub b21: f64,
    pub conj_a: CMat,
    pub conj_b: CMat,
}

impl CanonicalPair {
    pub fn from_parts(ca: &Canonical2, cb: &Canonical2) -> Self {
        Self {
            mu: ca.mu,
            nu: cb.mu,
            a: ca.diag(),
            b: cb.diag(),
            a12: ca.upper(),
            a21: ca.lower(),
            b12: cb.upper(),
            b21: cb.lower(),
            conj_a: ca.conj.clone(),
            conj_b: cb.conj.clone(),
        }
    }

    pub fn from_matrices(a: &CMat, b: &CMat) -> Result<Self> {
        let ca = canonicalize_2x2(a)?;
        let cb = canonicalize_2x2(b)?;
        Ok(Self::from_parts(&ca, &cb))
    }

    /// The 2×2 core whose classical range, scaled by `2μν`, is the pair range.
    pub fn core_matrix(&self) -> CMat {
        let ab = self.a * self.b;
        CMat::from_rows(&[
            vec![ab, C64::new(self.a12 * self.b12, 0.0)],
            vec![C64::new(self.a21 * self.b21, 0.0), ab],
        ])
        .expect("canonical products are finite")
    }

    /// Closed-form pair range as a filled ellipse (possibly degenerate).
    pub fn range_ellipse(&self) -> Ellipse {
        let core =
            ellipse_2x2(&self.core_matrix()).expect("core matrix has order 2 by construction");
        core.scaled(2.0 * self.mu * self.nu)
    }
}

/// Closed-form range of the pair `(A, B)`: canonicalize both matrices and
/// evaluate the core ellipse.
pub fn nakasato_cnr_2x2(a: &CMat, b: &CMat) -> Result<Ellipse> {
    Ok(CanonicalPair::from_matrices(a, b)?.range_ellipse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::linalg::haar_unitary;
    use crate::stream::{SeedPlan, CLOUD_STREAM};

    fn e11() -> CMat {
        CMat::from_rows(&[vec![C64::ONE, C64::ZERO], vec![C64::ZERO, C64::ZERO]]).unwrap()
    }

    fn e12() -> CMat {
        CMat::from_rows(&[vec![C64::ZERO, C64::ONE], vec![C64::ZERO, C64::ZERO]]).unwrap()
    }

    #[test]
    fn projection_pair_gives_unit_interval() {
        let e = nakasato_cnr_2x2(&e11(), &e11()).unwrap();
        assert!((e.center() - c(0.5, 0.0)).norm() < 1e-12);
        assert!((e.semi_major() - 0.5).abs() < 1e-12);
        assert!(e.semi_minor() < 1e-12);
        assert!(e.angle().abs() < 1e-12);
    }

    #[test]
    fn nilpotent_pair_gives_unit_disc() {
        let e = nakasato_cnr_2x2(&e12(), &e12()).unwrap();
        assert!(e.center().norm() < 1e-12);
        assert!((e.semi_major() - 1.0).abs() < 1e-12);
        assert!((e.semi_minor() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn involution_pair_gives_interval() {
        let d =
            CMat::from_rows(&[vec![C64::ONE, C64::ZERO], vec![C64::ZERO, c(-1.0, 0.0)]]).unwrap();
        let e = nakasato_cnr_2x2(&d, &d).unwrap();
        assert!(e.center().norm() < 1e-12);
        assert!((e.semi_major() - 2.0).abs() < 1e-12);
        assert!(e.semi_minor() < 1e-12);
    }

    #[test]
    fn equal_jordan_pair_gives_offset_disc() {
        // A = B = [[0.7, 2], [0, 0.7]]: disc centered at 2·0.49 with radius 4.
        let m = CMat::from_rows(&[vec![c(0.7, 0.0), c(2.0, 0.0)], vec![C64::ZERO, c(0.7, 0.0)]])
            .unwrap();
        let e = nakasato_cnr_2x2(&m, &m).unwrap();
        assert!((e.center() - c(0.98, 0.0)).norm() < 1e-12);
        assert!((e.semi_major() - 4.0).abs() < 1e-12);
        assert!((e.semi_minor() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn phase_twisted_pair_reflects_the_disc() {
        // tr(iA·V*(iB)V) = −tr(A·V*BV): the twisted range is the negated disc.
        let m = CMat::from_rows(&[vec![c(0.0, 0.7), c(0.0, 2.0)], vec![C64::ZERO, c(0.0, 0.7)]])
            .unwrap();
        let e = nakasato_cnr_2x2(&m, &m).unwrap();
        assert!((e.center() - c(-0.98, 0.0)).norm() < 1e-12);
        assert!((e.semi_major() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn sampled_orbit_values_stay_inside_and_reach_the_boundary() {
        let a = CMat::from_rows(&[
            vec![c(2.0, 1.0), c(3.0, 0.0)],
            vec![c(1.0, -2.0), c(-2.0, -1.0)],
        ])
        .unwrap();
        let b = CMat::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, -1.0)],
            vec![c(1.0, -2.0), c(-1.0, -1.0)],
        ])
        .unwrap();
        let e = nakasato_cnr_2x2(&a, &b).unwrap();
        let plan = SeedPlan::new(2024);
        let mut worst_outside = 0.0f64;
        let mut closest_to_major_vertex = f64::INFINITY;
        let vertex = e.boundary_point(0.0);
        for i in 0..4000 {
            let v = haar_unitary(2, &mut plan.rng_for(CLOUD_STREAM, i)).unwrap();
            let z = a.trace_product(&v.adjoint().mul(&b).mul(&v));
            worst_outside = worst_outside.max(e.outward_distance(z));
            closest_to_major_vertex = closest_to_major_vertex.min((z - vertex).norm());
        }
        assert!(
            worst_outside < 1e-10,
            "sampled value escaped the ellipse by {worst_outside}"
        );
        // The boundary is attained: samples approach the major vertex.
        assert!(
            closest_to_major_vertex < 0.5,
            "no sample near the major vertex ({closest_to_major_vertex})"
        );
    }
}
