//! Canonical form of 2×2 matrices under unitary conjugation and scalar phase.
//!
//! Every 2×2 complex `A` factors as `A = μ · V F V*` with `V` unitary,
//! `|μ| = 1`, and
//!
//! ```text
//! F = [[a, a12], [a21, a]],    a12 ≥ a21 ≥ 0 real,  a = (tr A / 2) / μ.
//! ```
//!
//! The pair range of two matrices depends only on these canonical data, which
//! is what makes the closed-form ellipse possible. Conventions pin the
//! remaining freedom: `μ` lies in the closed right half-plane (positive
//! imaginary part on the boundary) and the larger off-diagonal entry sits
//! above the diagonal.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

/// Canonical data of one matrix: `matrix = mu · conj · form · conj*`.
#[derive(Debug, Clone)]
pub struct Canonical2 {
    /// Unimodular scalar, right half-plane convention.
    pub mu: C64,
    /// The equal-diagonal form `[[a, a12], [a21, a]]` with real
    /// `a12 ≥ a21 ≥ 0`.
    pub form: CMat,
    /// The conjugating unitary.
    pub conj: CMat,
}

impl Canonical2 {
    /// Equal diagonal entry `a = (tr A / 2) / μ`.
    pub fn diag(&self) -> C64 {
        self.form[(0, 0)]
    }

    /// Upper off-diagonal entry (the larger one), real nonnegative.
    pub fn upper(&self) -> f64 {
        self.form[(0, 1)].re
    }

    /// Lower off-diagonal entry, real nonnegative.
    pub fn lower(&self) -> f64 {
        self.form[(1, 0)].re
    }

    /// `μ · V F V*`, for testing the factorization against the input.
    pub fn reconstruct(&self) -> CMat {
        self.conj
            .mul(&self.form)
            .mul(&self.conj.adjoint())
            .scale(self.mu)
    }
}

/// Relative size below which the trace-free part counts as zero (scalar
/// matrix); the returned factorization is then exact to that level.
const SCALAR_REL: f64 = 1e-15;

/// Canonicalize a 2×2 matrix; see the module docs for the conventions.
pub fn canonicalize_2x2(a: &CMat) -> Result<Canonical2> {
    if a.order() != 2 {
        return Err(Error::OrderMismatch {
            expected: 2,
            found: a.order(),
        });
    }
    let half_tr = 0.5 * a.trace();
    let a0 = a.trace_zero_part();
    let norm_a0 = a0.frobenius_norm();

    if norm_a0 <= SCALAR_REL * a.frobenius_norm() {
        let mut form = CMat::zeros(2);
        form[(0, 0)] = half_tr;
        form[(1, 1)] = half_tr;
        return Ok(Canonical2 {
            mu: C64::ONE,
            form,
            conj: CMat::identity(2),
        });
    }

    // Schur step: A0 = [[α, β], [γ, −α]] has eigenvalues ±λ with
    // λ² = α² + βγ; triangularize with the better-conditioned eigenvector.
    let alpha = a0[(0, 0)];
    let beta = a0[(0, 1)];
    let gamma = a0[(1, 0)];
    let lambda = (alpha * alpha + beta * gamma).sqrt();
    let cand_a = [beta, lambda - alpha];
    let cand_b = [lambda + alpha, gamma];
    let norm_sq = |v: &[C64; 2]| v[0].norm_sqr() + v[1].norm_sqr();
    let v = if norm_sq(&cand_a) >= norm_sq(&cand_b) {
        cand_a
    } else {
        cand_b
    };
    let vn = norm_sq(&v).sqrt();
    let u = [v[0] / vn, v[1] / vn];
    let w = CMat::from_rows(&[vec![u[0], -u[1].conj()], vec![u[1], u[0].conj()]])
        .expect("unit vector completion is finite");
    let t = w.adjoint().mul(&a0).mul(&w); // upper triangular: [[λ, c], [~0, −λ]]

    // Rotation zeroing the diagonal of the triangular form: with
    // φ = arg λ + π − arg c the (1,1) entry of W₂*TW₂ is
    // |λ|cos 2t − (|c|/2)sin 2t, killed by 2t = atan2(2|λ|, |c|).
    let lam = t[(0, 0)];
    let coupling = t[(0, 1)];
    let phi = lam.arg() + std::f64::consts::PI - coupling.arg();
    let half_angle = 0.5 * f64::atan2(2.0 * lam.norm(), coupling.norm());
    let (ct, st) = (half_angle.cos(), half_angle.sin());
    let ephi = Complex64::from_polar(1.0, phi);
    let w2 = CMat::from_rows(&[
        vec![C64::new(ct, 0.0), -st * ephi.conj()],
        vec![st * ephi, C64::new(ct, 0.0)],
    ])
    .expect("rotation entries are finite");

    let conj_v = w.mul(&w2);
    // Recompute from A itself so errors from the two steps do not stack.
    let pre = conj_v.adjoint().mul(a).mul(&conj_v);
    let p = pre[(0, 1)];
    let q = pre[(1, 0)];

    // Split the off-diagonal phases between a global scalar and a diagonal
    // conjugation: e^{−iχ}·diag(1, e^{iψ})*·pre·diag(1, e^{iψ}) has real
    // nonnegative off-diagonal entries when χ = (arg p + arg q)/2 and
    // ψ = (arg q − arg p)/2. When exactly one off-diagonal vanishes, χ is a
    // free parameter (the diagonal conjugation can rotate the survivor alone);
    // spend it making the surviving entry real, so the twist lives in μ.
    let (arg_p, arg_q) = match (p.norm() > 0.0, q.norm() > 0.0) {
        (true, true) => (p.arg(), q.arg()),
        (true, false) => (p.arg(), p.arg()),
        (false, true) => (q.arg(), q.arg()),
        (false, false) => (0.0, 0.0),
    };
    let mut chi = 0.5 * (arg_p + arg_q);
    let psi = 0.5 * (arg_q - arg_p);

    let mut mu = Complex64::from_polar(1.0, chi);
    let mut diag_phase = Complex64::from_polar(1.0, psi);
    // Right half-plane convention for μ; flipping by π negates `a` and the
    // second column of the conjugating unitary, leaving |p|, |q| untouched.
    let flip = if mu.re.abs() <= 1e-12 {
        mu.im < 0.0
    } else {
        mu.re < 0.0
    };
    if flip {
        chi += std::f64::consts::PI;
        mu = -mu;
        diag_phase = -diag_phase;
    }

    let mut conj = conj_v.clone();
    conj[(0, 1)] = conj_v[(0, 1)] * diag_phase;
    conj[(1, 1)] = conj_v[(1, 1)] * diag_phase;

    let a_diag = half_tr * Complex64::from_polar(1.0, -chi);
    let (mut hi, mut lo) = (p.norm(), q.norm());
    let swap = hi < lo;
    if swap {
        std::mem::swap(&mut hi, &mut lo);
        // Conjugating by the exchange matrix swaps the off-diagonal entries.
        let mut swapped = CMat::zeros(2);
        for i in 0..2 {
            swapped[(i, 0)] = conj[(i, 1)];
            swapped[(i, 1)] = conj[(i, 0)];
        }
        conj = swapped;
    }

    let form = CMat::from_rows(&[
        vec![a_diag, C64::new(hi, 0.0)],
        vec![C64::new(lo, 0.0), a_diag],
    ])
    .expect("canonical entries are finite");

    Ok(Canonical2 { mu, form, conj })
}
