//! Complex dense linear algebra for orders 2..=8: the matrix type, a
//! Hermitian eigensolver, 2×2 SVD, and Haar-random unitary sampling.

mod cmat;
mod eig;
mod haar;
mod svd;

pub use cmat::{CMat, C64, MAX_ORDER, MIN_ORDER};
pub use eig::{herm_eig, is_contraction, spectral_norm, SpectralData};
pub use haar::{haar_unitary, orbit_element_2x2};
pub use svd::svd_2x2;

pub(crate) use eig::jacobi_hermitian;
