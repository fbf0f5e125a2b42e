//! Sampled outer description of a bordered pair range.
//!
//! The bordered range at order `n` is a union of closed-form ellipses: orbit
//! element `Â = VAV*`, compression parameter `ε`, and (for `n ≥ 4`) a radial
//! scale `α ∈ [0, 1]`. A [`Region`] stores the pointwise maximum of the
//! ellipse support functions on a fixed angle grid — an inner approximation
//! of the true range's support that grows monotonically with the sample
//! budget — plus a small deterministic cloud of witness points on sampled
//! ellipse boundaries.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cnr::canonical::canonicalize_2x2;
use crate::cnr::compress::compress;
use crate::cnr::nakasato::CanonicalPair;
use crate::error::{Error, Result};
use crate::exec::{fold_indexed, map_indexed, Exec};
use crate::linalg::{haar_unitary, CMat, C64, MAX_ORDER};
use crate::numrange::AngleGrid;
use crate::stream::{SeedPlan, ORBIT_STREAM};

/// Sampling effort for region construction and certification.
#[derive(Debug, Clone)]
pub struct SampleBudget {
    /// Haar samples of the 2×2 conjugating unitary.
    pub orbit_samples: usize,
    /// Grid points for the compression parameter ε on [0, 1].
    pub eps_steps: usize,
    /// Grid points for the radial scale α on [0, 1]; only used when `n ≥ 4`.
    pub alpha_steps: usize,
    /// Monte-Carlo samples for the independent Haar cloud.
    pub cloud_samples: usize,
    /// Support-function directions.
    pub angle_count: usize,
    /// Cap on the deterministic witness cloud stored in a [`Region`].
    pub region_cloud_cap: usize,
    /// Scheduling strategy for the sampling loops.
    pub exec: Exec,
}

impl Default for SampleBudget {
    fn default() -> Self {
        Self {
            orbit_samples: 20_000,
            eps_steps: 17,
            alpha_steps: 9,
            cloud_samples: 100_000,
            angle_count: 1024,
            region_cloud_cap: 4096,
            exec: Exec::Parallel,
        }
    }
}

impl SampleBudget {
    fn validate(&self) -> Result<()> {
        if self.orbit_samples == 0 {
            return Err(Error::InvalidArgument(
                "orbit_samples must be positive".into(),
            ));
        }
        if self.eps_steps < 2 || self.alpha_steps < 2 {
            return Err(Error::InvalidArgument(
                "eps_steps and alpha_steps need at least the two endpoint values".into(),
            ));
        }
        if self.angle_count < 4 {
            return Err(Error::InvalidArgument(
                "angle_count must be at least 4".into(),
            ));
        }
        Ok(())
    }
}

/// Support table over a uniform angle grid plus witness points.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    support: Vec<f64>,
    cloud: Vec<C64>,
}

impl Region {
    pub fn from_parts(support: Vec<f64>, cloud: Vec<C64>) -> Result<Self> {
        if support.len() < 4 {
            return Err(Error::InvalidArgument(
                "a region needs at least 4 support directions".into(),
            ));
        }
        if support.iter().any(|h| !h.is_finite()) {
            return Err(Error::InvalidArgument(
                "support values must be finite".into(),
            ));
        }
        Ok(Self { support, cloud })
    }

    pub fn angle_count(&self) -> usize {
        self.support.len()
    }

    pub fn theta(&self, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / self.support.len() as f64
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn cloud(&self) -> &[C64] {
        &self.cloud
    }

    /// Membership against the sampled support: every direction must satisfy
    /// `Re(e^{−iθ}z) ≤ h(θ) + tol`.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        (0..self.support.len()).all(|k| {
            let theta = self.theta(k);
            z.re * theta.cos() + z.im * theta.sin() <= self.support[k] + tol
        })
    }

    /// Largest amount by which this region's support exceeds `other`,
    /// positive when this region pokes out somewhere.
    pub fn max_support_excess(&self, other: &[f64]) -> f64 {
        assert_eq!(self.support.len(), other.len());
        self.support
            .iter()
            .zip(other)
            .map(|(a, b)| a - b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Pointwise maximum with another region's support (clouds concatenate).
    pub fn merged_with(mut self, other: &Region) -> Region {
        assert_eq!(self.support.len(), other.support.len());
        for (h, o) in self.support.iter_mut().zip(&other.support) {
            *h = h.max(*o);
        }
        self.cloud.extend_from_slice(&other.cloud);
        self
    }
}

/// Wire form: `{"angles": N, "support": [...], "cloud": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct RegionRepr {
    angles: usize,
    support: Vec<f64>,
    cloud: Vec<[f64; 2]>,
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RegionRepr {
            angles: self.support.len(),
            support: self.support.clone(),
            cloud: self.cloud.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RegionRepr::deserialize(deserializer)?;
        if repr.angles != repr.support.len() {
            return Err(D::Error::custom(format!(
                "region claims {} angles but carries {} support values",
                repr.angles,
                repr.support.len()
            )));
        }
        let cloud = repr.cloud.iter().map(|p| C64::new(p[0], p[1])).collect();
        Region::from_parts(repr.support, cloud).map_err(D::Error::custom)
    }
}

fn unit_grid(steps: usize) -> Vec<f64> {
    (0..steps).map(|k| k as f64 / (steps - 1) as f64).collect()
}

/// Sampled bordered range of `(A ⊕ 0, B ⊕ 0)` at order `n ≥ 3`.
///
/// Per orbit sample `V` the 2×2 matrix `Â = VAV*` is compressed over the ε
/// grid and each compression contributes its closed-form ellipse to the
/// support table. For `n ≥ 4` the range is additionally starred through the
/// origin (`α` sweep); since the α grid contains 0 and 1, its effect on the
/// support is exactly `h ↦ max(h, 0)`. Deterministic for a fixed seed plan
/// regardless of `budget.exec`.
pub fn bordered_region(
    a: &CMat,
    b: &CMat,
    n: usize,
    budget: &SampleBudget,
    plan: &SeedPlan,
) -> Result<Region> {
    for m in [a, b] {
        if m.order() != 2 {
            return Err(Error::OrderMismatch {
                expected: 2,
                found: m.order(),
            });
        }
    }
    if n < 3 {
        return Err(Error::EmbeddingTooSmall {
            found: n,
            minimum: 3,
        });
    }
    if n > MAX_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    budget.validate()?;

    let grid = AngleGrid::new(budget.angle_count);
    let eps_grid = unit_grid(budget.eps_steps);
    let alpha_grid: Vec<f64> = if n >= 4 {
        unit_grid(budget.alpha_steps)
    } else {
        vec![1.0]
    };
    let floor_at_zero = n >= 4;
    let can_b = canonicalize_2x2(b)?;

    // One orbit sample: the ellipse family for every ε, folded into a local
    // support table.
    let sample_support = |table: &mut [f64], index: usize| {
        let v = haar_unitary(2, &mut plan.rng_for(ORBIT_STREAM, index as u64))
            .expect("order 2 is supported");
        let a_hat = v.mul(a).mul(&v.adjoint());
        for &eps in &eps_grid {
            let squeezed = compress(&a_hat, eps).expect("grid ε lies in [0,1]");
            let can_c = canonicalize_2x2(&squeezed).expect("order 2 by construction");
            let ellipse = CanonicalPair::from_parts(&can_c, &can_b).range_ellipse();
            if floor_at_zero {
                ellipse.support_scan(&grid, |k, h| {
                    let v = h.max(0.0);
                    if v > table[k] {
                        table[k] = v;
                    }
                });
            } else {
                ellipse.support_scan(&grid, |k, h| {
                    if h > table[k] {
                        table[k] = h;
                    }
                });
            }
        }
    };

    let support = fold_indexed(
        budget.exec,
        budget.orbit_samples,
        || vec![f64::NEG_INFINITY; grid.len()],
        |mut table, i| {
            sample_support(&mut table, i);
            table
        },
        |mut left, right| {
            for (l, r) in left.iter_mut().zip(&right) {
                *l = l.max(*r);
            }
            left
        },
    );

    // Witness cloud: boundary points of deterministically re-derived sample
    // ellipses, spread over orbit index, ε, α, and boundary parameter.
    let cloud_n = budget
        .region_cloud_cap
        .min(budget.orbit_samples.saturating_mul(budget.eps_steps).max(1));
    let cloud = map_indexed(budget.exec, cloud_n, |k| {
        let orbit_idx = (k.wrapping_mul(2_654_435_761)) % budget.orbit_samples;
        let eps = eps_grid[(k.wrapping_mul(40_503)) % eps_grid.len()];
        let alpha = alpha_grid[k % alpha_grid.len()];
        let t = k as f64 * 2.399_963_229_728_653; // golden angle
        let v = haar_unitary(2, &mut plan.rng_for(ORBIT_STREAM, orbit_idx as u64))
            .expect("order 2 is supported");
        let a_hat = v.mul(a).mul(&v.adjoint());
        let squeezed = compress(&a_hat, eps).expect("grid ε lies in [0,1]");
        let can_c = canonicalize_2x2(&squeezed).expect("order 2 by construction");
        let ellipse = CanonicalPair::from_parts(&can_c, &can_b).range_ellipse();
        ellipse.boundary_point(t) * alpha
    });

    Region::from_parts(support, cloud)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::cnr::nakasato_cnr_2x2;

    fn pair() -> (CMat, CMat) {
        let a = CMat::from_rows(&[
            vec![c(2.0, 1.0), c(3.0, 0.0)],
            vec![c(1.0, -2.0), c(-2.0, -1.0)],
        ])
        .unwrap();
        let b = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, -1.0)],
            vec![c(1.0, -2.0), c(-3.0, 0.0)],
        ])
        .unwrap();
        (a, b)
    }

    fn small_budget() -> SampleBudget {
        SampleBudget {
            orbit_samples: 300,
            eps_steps: 9,
            alpha_steps: 5,
            cloud_samples: 0,
            angle_count: 256,
            region_cloud_cap: 512,
            exec: Exec::Parallel,
        }
    }

    #[test]
    fn region_contains_the_order_two_range() {
        let (a, b) = pair();
        let plan = SeedPlan::new(42);
        let region = bordered_region(&a, &b, 3, &small_budget(), &plan).unwrap();
        let ellipse = nakasato_cnr_2x2(&a, &b).unwrap();
        for k in 0..region.angle_count() {
            let theta = region.theta(k);
            assert!(
                region.support()[k] >= ellipse.support(theta) - 1e-9,
                "bordered support fell below the 2×2 range at θ = {theta}"
            );
        }
    }

    #[test]
    fn witness_cloud_lies_in_the_region() {
        let (a, b) = pair();
        let plan = SeedPlan::new(42);
        for n in [3, 4] {
            let region = bordered_region(&a, &b, n, &small_budget(), &plan).unwrap();
            assert!(!region.cloud().is_empty());
            for &z in region.cloud() {
                assert!(region.contains(z, 1e-8), "witness point {z} escaped");
            }
        }
    }

    #[test]
    fn support_grows_with_budget_and_embedding_order() {
        let (a, b) = pair();
        let plan = SeedPlan::new(42);
        let small = bordered_region(&a, &b, 3, &small_budget(), &plan).unwrap();
        let mut bigger = small_budget();
        bigger.orbit_samples *= 2;
        let big = bordered_region(&a, &b, 3, &bigger, &plan).unwrap();
        // Same per-index samples, more of them: the support only grows.
        for k in 0..small.angle_count() {
            assert!(big.support()[k] >= small.support()[k] - 1e-12);
        }
        // n = 4 stars the region through 0 and keeps every n = 3 value.
        let at4 = bordered_region(&a, &b, 4, &small_budget(), &plan).unwrap();
        for k in 0..small.angle_count() {
            assert!(at4.support()[k] >= small.support()[k].max(0.0) - 1e-12);
        }
    }

    #[test]
    fn parallel_and_serial_agree_bitwise() {
        let (a, b) = pair();
        let plan = SeedPlan::new(7);
        let mut serial = small_budget();
        serial.exec = Exec::Serial;
        let r_par = bordered_region(&a, &b, 4, &small_budget(), &plan).unwrap();
        let r_ser = bordered_region(&a, &b, 4, &serial, &plan).unwrap();
        assert_eq!(r_par, r_ser);
    }

    #[test]
    fn json_round_trip() {
        let (a, b) = pair();
        let plan = SeedPlan::new(1);
        let mut budget = small_budget();
        budget.orbit_samples = 50;
        let region = bordered_region(&a, &b, 3, &budget, &plan).unwrap();
        let text = serde_json::to_string(&region).unwrap();
        let back: Region = serde_json::from_str(&text).unwrap();
        assert_eq!(region, back);
        assert!(
            serde_json::from_str::<Region>(r#"{"angles":8,"support":[1,1,1,1],"cloud":[]}"#)
                .is_err()
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        let (a, b) = pair();
        let plan = SeedPlan::new(1);
        assert!(matches!(
            bordered_region(&a, &b, 2, &small_budget(), &plan),
            Err(Error::EmbeddingTooSmall { .. })
        ));
        assert!(matches!(
            bordered_region(&a, &b, 9, &small_budget(), &plan),
            Err(Error::UnsupportedOrder(9))
        ));
        let mut bad = small_budget();
        bad.orbit_samples = 0;
        assert!(bordered_region(&a, &b, 3, &bad, &plan).is_err());
    }
}
