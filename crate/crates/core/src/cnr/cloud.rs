//! Independent Monte-Carlo sampling of bordered trace values.

use crate::cnr::dilation::bordered_trace;
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Exec};
use crate::linalg::{haar_unitary, CMat, C64, MAX_ORDER};
use crate::stream::{SeedPlan, CLOUD_STREAM};

/// Haar-sampled values `tr((A ⊕ 0) U*(B ⊕ 0) U)` over `U(n)`.
///
/// This is the slow, assumption-free estimator used to cross-check the
/// closed-form machinery: one full `n × n` Haar unitary per sample, evaluated
/// through the leading-block identity without materializing the embeddings.
/// Deterministic for a fixed seed plan regardless of `exec`.
pub fn haar_cloud(
    a: &CMat,
    b: &CMat,
    n: usize,
    samples: usize,
    plan: &SeedPlan,
    exec: Exec,
) -> Result<Vec<C64>> {
    for m in [a, b] {
        if m.order() != 2 {
            return Err(Error::OrderMismatch {
                expected: 2,
                found: m.order(),
            });
        }
    }
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "cloud needs at least one sample".into(),
        ));
    }
    Ok(map_indexed(exec, samples, |i| {
        let u = haar_unitary(n, &mut plan.rng_for(CLOUD_STREAM, i as u64))
            .expect("order was validated above");
        bordered_trace(a, b, &u)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::cnr::nakasato_cnr_2x2;

    fn pair() -> (CMat, CMat) {
        let a = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 1.0)],
        ])
        .unwrap();
        let b = CMat::from_rows(&[
            vec![c(0.0, 1.0), c(1.0, 1.0)],
            vec![c(3.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        (a, b)
    }

    #[test]
    fn order_two_cloud_stays_inside_the_closed_form() {
        let (a, b) = pair();
        let plan = SeedPlan::new(42);
        let ellipse = nakasato_cnr_2x2(&a, &b).unwrap();
        let cloud = haar_cloud(&a, &b, 2, 3000, &plan, Exec::Parallel).unwrap();
        for z in cloud {
            // At n = 2 the trace identity is over the plain unitary orbit, so
            // every sample sits in the exact range (up to roundoff).
            assert!(
                ellipse.outward_distance(z) < 1e-10,
                "sample {z} left the order-2 range"
            );
        }
    }

    #[test]
    fn deterministic_and_exec_independent() {
        let (a, b) = pair();
        let plan = SeedPlan::new(9);
        let par = haar_cloud(&a, &b, 4, 500, &plan, Exec::Parallel).unwrap();
        let ser = haar_cloud(&a, &b, 4, 500, &plan, Exec::Serial).unwrap();
        assert_eq!(par, ser);
        let again = haar_cloud(&a, &b, 4, 500, &plan, Exec::Parallel).unwrap();
        assert_eq!(par, again);
    }

    #[test]
    fn rejects_bad_arguments() {
        let (a, b) = pair();
        let plan = SeedPlan::new(1);
        assert!(matches!(
            haar_cloud(&a, &b, 9, 10, &plan, Exec::Serial),
            Err(Error::UnsupportedOrder(9))
        ));
        assert!(haar_cloud(&a, &b, 3, 0, &plan, Exec::Serial).is_err());
        let wide = CMat::identity(3);
        assert!(matches!(
            haar_cloud(&wide, &b, 3, 10, &plan, Exec::Serial),
            Err(Error::OrderMismatch { .. })
        ));
    }
}
