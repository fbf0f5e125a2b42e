//! Haar-distributed random unitaries.
//!
//! A complex Ginibre matrix (i.i.d. standard complex Gaussian entries) is
//! QR-factorized with the R-diagonal pinned real positive; that phase
//! convention makes Q exactly Haar-distributed rather than merely unitary.
//! Gram-Schmidt runs twice per column: a single pass can lose ~6 digits of
//! orthogonality on an ill-conditioned draw, and the crate promises unitarity
//! residuals below 1e-10 for every sample.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::cmat::{CMat, C64, MAX_ORDER, MIN_ORDER};
use crate::Error;

/// Columns shorter than this after projection trigger a fresh Ginibre draw;
/// the event has probability ~0 but would otherwise amplify noise.
const REDRAW_FLOOR: f64 = 1e-8;

/// Haar-random unitary of the given order.
pub fn haar_unitary<R: Rng + ?Sized>(order: usize, rng: &mut R) -> Result<CMat> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    loop {
        let g = ginibre(order, rng);
        if let Some(q) = orthonormalize(&g) {
            return Ok(q);
        }
    }
}

fn ginibre<R: Rng + ?Sized>(order: usize, rng: &mut R) -> CMat {
    let entries: Vec<C64> = (0..order * order)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    CMat::new(order, entries).expect("gaussian draws are finite")
}

/// Modified Gram-Schmidt with re-orthogonalization, diagonal phases pinned by
/// the positive column norms. Returns None when a column degenerates.
fn orthonormalize(g: &CMat) -> Option<CMat> {
    let n = g.order();
    let mut q = g.clone();
    for j in 0..n {
        let mut col = q.column(j);
        for _pass in 0..2 {
            for i in 0..j {
                let qi = q.column(i);
                let proj: C64 = qi.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
                for (ck, qk) in col.iter_mut().zip(&qi) {
                    *ck -= proj * qk;
                }
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < REDRAW_FLOOR {
            return None;
        }
        for (row, value) in col.iter().enumerate() {
            q[(row, j)] = value / norm;
        }
    }
    Some(q)
}

/// Direct parametrization of a 2×2 special-unitary-like orbit element:
/// `[[cos t · e^{iφ}, −sin t · e^{iψ}], [sin t · e^{−iψ}, cos t · e^{−iφ}]]`.
///
/// Useful for deterministic sweeps over the 2×2 orbit where Haar sampling
/// would waste draws; conjugation by a global phase acts trivially, so this
/// family already covers every conjugation of a 2×2 matrix.
pub fn orbit_element_2x2(t: f64, phi: f64, psi: f64) -> CMat {
    let (ct, st) = (t.cos(), t.sin());
    let ephi = Complex64::from_polar(1.0, phi);
    let epsi = Complex64::from_polar(1.0, psi);
    CMat::from_rows(&[
        vec![ct * ephi, -st * epsi],
        vec![st * epsi.conj(), ct * ephi.conj()],
    ])
    .expect("orbit element entries are finite")
}
