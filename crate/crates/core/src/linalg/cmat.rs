//! Dense complex matrices of small order (2..=8), row-major.
//!
//! Orders stay tiny, so every operation is a plain loop; no blocking, no
//! allocation tricks. Structural predicates use the crate-wide absolute
//! tolerance [`PREDICATE_TOL`](crate::PREDICATE_TOL) on residual norms.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::PREDICATE_TOL;

pub type C64 = Complex64;

/// Smallest supported matrix order.
pub const MIN_ORDER: usize = 2;
/// Largest supported matrix order.
pub const MAX_ORDER: usize = 8;

/// Square complex matrix with entries stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    order: usize,
    entries: Vec<C64>,
}

impl CMat {
    /// Validating constructor: order in 2..=8, exactly `order²` finite entries.
    pub fn new(order: usize, entries: Vec<C64>) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(Error::UnsupportedOrder(order));
        }
        let expected = order * order;
        if entries.len() != expected {
            return Err(Error::EntryCount {
                order,
                expected,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { order, entries })
    }

    /// Build from explicit rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::EntryCount {
                    order,
                    expected: order * order,
                    found: row.len() * order,
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(order, entries)
    }

    pub fn zeros(order: usize) -> Self {
        assert!((MIN_ORDER..=MAX_ORDER).contains(&order));
        Self {
            order,
            entries: vec![C64::ZERO; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = C64::ONE;
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.order).map(|i| self[(i, j)]).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.order).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = Self::zeros(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.order, rhs.order, "matrix product needs equal orders");
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == C64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.order, rhs.order);
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            order: self.order,
            entries,
        }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.order, rhs.order);
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            order: self.order,
            entries,
        }
    }

    pub fn scale(&self, w: C64) -> CMat {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|z| w * z).collect(),
        }
    }

    /// `tr(self · rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &CMat) -> C64 {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let mut acc = C64::ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self[(i, j)] * rhs[(j, i)];
            }
        }
        acc
    }

    /// Hermitian part `(M + M*)/2`.
    pub fn hermitian_part(&self) -> CMat {
        let mut out = Self::zeros(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                out[(i, j)] = 0.5 * (self[(i, j)] + self[(j, i)].conj());
            }
        }
        out
    }

    /// `M − (tr M / order)·I`, the trace-free part.
    pub fn trace_zero_part(&self) -> CMat {
        let shift = self.trace() / self.order as f64;
        let mut out = self.clone();
        for i in 0..self.order {
            out[(i, i)] -= shift;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn frobenius_dist(&self, rhs: &CMat) -> f64 {
        self.sub(rhs).frobenius_norm()
    }

    /// `‖M − M*‖_F`; zero for exactly Hermitian matrices.
    pub fn hermitian_residual(&self) -> f64 {
        self.sub(&self.adjoint()).frobenius_norm()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_residual() <= PREDICATE_TOL
    }

    /// `‖M*M − I‖_F`; zero for exactly unitary matrices.
    pub fn unitary_residual(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .frobenius_dist(&CMat::identity(self.order))
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_residual() <= PREDICATE_TOL
    }

    /// Leading principal `k×k` block.
    pub fn leading_block(&self, k: usize) -> CMat {
        assert!((MIN_ORDER..=self.order).contains(&k));
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    /// Direct sum with a zero block: `M ⊕ 0` of order `n`.
    pub fn embed_with_zeros(&self, n: usize) -> Result<CMat> {
        if n < self.order {
            return Err(Error::EmbeddingTooSmall {
                found: n,
                minimum: self.order,
            });
        }
        if n > MAX_ORDER {
            return Err(Error::UnsupportedOrder(n));
        }
        let mut out = Self::zeros(n);
        for i in 0..self.order {
            for j in 0..self.order {
                out[(i, j)] = self[(i, j)];
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.order + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.order, self.order)?;
        for i in 0..self.order {
            write!(f, "  ")?;
            for j in 0..self.order {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Wire form: `{"order": n, "entries": [[re, im], ...]}` row-major.
#[derive(Serialize, Deserialize)]
struct CMatRepr {
    order: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for CMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CMatRepr {
            order: self.order,
            entries: self.entries.iter().map(|z| [z.re, z.im]).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CMatRepr::deserialize(deserializer)?;
        let entries = repr.entries.iter().map(|p| C64::new(p[0], p[1])).collect();
        CMat::new(repr.order, entries).map_err(D::Error::custom)
    }
}
