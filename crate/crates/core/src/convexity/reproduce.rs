//! Scripted reproductions of the reference scenarios, with frozen seeds.
//!
//! Each case bundles the relevant checkers, the sampling certifier, and an
//! independent Haar oracle into one structured report. The seeds and budgets
//! are fixed so that two runs of the same build produce identical reports.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::c;
use crate::cnr::{bordered_region, haar_cloud, CanonicalPair, SampleBudget};
use crate::error::{Error, Result};
use crate::hull::{convex_hull, densify_closed, hausdorff_closed_curves};
use crate::linalg::{CMat, C64};
use crate::numrange::{ellipse_2x2, Ellipse};
use crate::stream::{SeedPlan, PAIR_STREAM};

use super::alpha::{alpha_star, AlphaOptions};
use super::certify::{certify_equality, Certificate, CertifyOptions, Verdict};
use super::checks::{
    check_c2, check_c3, check_c4, check_lemma5_zero, check_m0, check_m1, check_m4, pair_scale,
};
use super::report::CheckReport;

/// Seed every reproduction runs under.
const REPRO_SEED: u64 = 42;
/// Random pairs drawn when discriminating the two core-matrix variants.
const ORACLE_PAIRS: u64 = 12;
/// Haar samples per discrimination pair.
const ORACLE_CLOUD: usize = 50_000;
/// Boundary resolution when comparing a hull against a closed-form ellipse.
const ORACLE_BOUNDARY: usize = 512;

/// The scripted scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReproCase {
    Example1,
    Example2,
    Example3,
    Example4,
    Sharpness,
    Lemma1Oracle,
}

impl ReproCase {
    pub const ALL: [ReproCase; 6] = [
        ReproCase::Example1,
        ReproCase::Example2,
        ReproCase::Example3,
        ReproCase::Example4,
        ReproCase::Sharpness,
        ReproCase::Lemma1Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReproCase::Example1 => "example1",
            ReproCase::Example2 => "example2",
            ReproCase::Example3 => "example3",
            ReproCase::Example4 => "example4",
            ReproCase::Sharpness => "sharpness",
            ReproCase::Lemma1Oracle => "lemma1_oracle",
        }
    }
}

impl fmt::Display for ReproCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReproCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReproCase::ALL
            .into_iter()
            .find(|case| case.name() == s)
            .ok_or_else(|| Error::UnknownCase(s.to_owned()))
    }
}

/// One measured quantity with its acceptance band.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproItem {
    pub label: String,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReproItem {
    fn around(label: &str, observed: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            label: label.to_owned(),
            observed,
            expected,
            tolerance,
            pass: (observed - expected).abs() <= tolerance,
        }
    }

    fn within(label: &str, observed: f64, lo: f64, hi: f64) -> Self {
        Self {
            label: label.to_owned(),
            observed,
            expected: 0.5 * (lo + hi),
            tolerance: 0.5 * (hi - lo),
            pass: (lo..=hi).contains(&observed),
        }
    }

    fn at_most(label: &str, observed: f64, bound: f64) -> Self {
        Self {
            label: label.to_owned(),
            observed,
            expected: bound,
            tolerance: 0.0,
            pass: observed <= bound,
        }
    }

    fn at_least(label: &str, observed: f64, bound: f64) -> Self {
        Self {
            label: label.to_owned(),
            observed,
            expected: bound,
            tolerance: 0.0,
            pass: observed >= bound,
        }
    }

    fn flag(label: &str, ok: bool) -> Self {
        Self {
            label: label.to_owned(),
            observed: if ok { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
            pass: ok,
        }
    }
}

/// Structured outcome of one reproduction case.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproReport {
    pub case: ReproCase,
    pub items: Vec<ReproItem>,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Only emitted by `example4`: the printed sufficient condition holds
    /// while the disc-radius test it is derived from fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy_flag: Option<bool>,
    pub pass: bool,
}

impl ReproReport {
    fn finish(mut self) -> Self {
        self.pass = self.items.iter().all(|item| item.pass);
        self
    }
}

fn example1_pair() -> (CMat, CMat) {
    let a = CMat::from_rows(&[
        vec![c(2.0, 1.0), c(3.0, 0.0)],
        vec![c(1.0, -2.0), c(-2.0, -1.0)],
    ])
    .expect("entries are finite");
    let b = CMat::from_rows(&[
        vec![c(1.0, 1.0), c(2.0, -1.0)],
        vec![c(1.0, -2.0), c(-1.0, -1.0)],
    ])
    .expect("entries are finite");
    (a, b)
}

fn example2_pair() -> (CMat, CMat) {
    let (a, _) = example1_pair();
    let b = CMat::from_rows(&[
        vec![c(1.0, 0.0), c(2.0, -1.0)],
        vec![c(1.0, -2.0), c(-3.0, 0.0)],
    ])
    .expect("entries are finite");
    (a, b)
}

fn example3_matrix() -> CMat {
    CMat::from_rows(&[vec![c(0.7, 0.0), c(2.0, 0.0)], vec![C64::ZERO, c(0.7, 0.0)]])
        .expect("entries are finite")
}

fn example4_matrix() -> CMat {
    CMat::from_rows(&[
        vec![c(0.0, 1.0), c(3.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 1.0)],
    ])
    .expect("entries are finite")
}

/// Run one scripted scenario. Seeds and budgets are frozen; the same build
/// always returns the identical report.
pub fn reproduce(case: ReproCase) -> Result<ReproReport> {
    let plan = SeedPlan::new(REPRO_SEED);
    let budget = SampleBudget::default();
    let options = CertifyOptions::default();
    match case {
        ReproCase::Example1 => run_example1(&plan, &options),
        ReproCase::Example2 => run_example2(&plan, &options),
        ReproCase::Example3 => run_example3(&plan, &budget, &options),
        ReproCase::Example4 => run_example4(&plan, &options),
        ReproCase::Sharpness => run_sharpness(),
        ReproCase::Lemma1Oracle => run_lemma1_oracle(&plan, &budget),
    }
}

fn run_example1(plan: &SeedPlan, options: &CertifyOptions) -> Result<ReproReport> {
    let (a, b) = example1_pair();
    let m1 = check_m1(&a, &b)?;
    let cert = certify_equality(&a, &b, 3, options, plan)?;
    let alpha = alpha_star(&a, &b, &AlphaOptions::default())?;
    let zero_in = check_lemma5_zero(&a, &b)?;

    let items = vec![
        ReproItem::flag("certified_equal", cert.verdict == Verdict::Equal),
        ReproItem::at_most("range_agreement_gap", cert.max_violation, options.eq_tol),
        ReproItem::flag("trace_zero_condition_holds", m1.holds),
        ReproItem::flag("zero_in_range", zero_in),
        ReproItem::within("alpha_star", alpha, 2.0 - 1e-3, 4.0 + 1e-3),
    ];
    Ok(ReproReport {
        case: ReproCase::Example1,
        items,
        checks: vec![m1],
        certificate: Some(cert),
        discrepancy_flag: None,
        pass: false,
    }
    .finish())
}

fn run_example2(plan: &SeedPlan, options: &CertifyOptions) -> Result<ReproReport> {
    let (a, b) = example2_pair();
    let c2 = check_c2(&a, &b)?;
    let cert = certify_equality(&a, &b, 3, options, plan)?;
    let zero_in = check_lemma5_zero(&a, &b)?;

    let items = vec![
        ReproItem::flag("certified_equal", cert.verdict == Verdict::Equal),
        ReproItem::at_most("range_agreement_gap", cert.max_violation, options.eq_tol),
        ReproItem::flag("half_trace_condition_holds", c2.holds),
        ReproItem::flag("zero_in_range", zero_in),
    ];
    Ok(ReproReport {
        case: ReproCase::Example2,
        items,
        checks: vec![c2],
        certificate: Some(cert),
        discrepancy_flag: None,
        pass: false,
    }
    .finish())
}

fn run_example3(
    plan: &SeedPlan,
    budget: &SampleBudget,
    options: &CertifyOptions,
) -> Result<ReproReport> {
    let a = example3_matrix();
    let c3 = check_c3(&a, &a)?;
    let m0 = check_m0(&a, &a)?;
    let m4 = check_m4(&a, &a)?;
    let cert = certify_equality(&a, &a, 3, options, plan)?;

    // The pair range is the disc centered at 0.98 with radius 4; estimate
    // both from the sampled support table of the bordered region.
    let region = bordered_region(&a, &a, 3, budget, plan)?;
    let h = region.support();
    let n = region.angle_count();
    let center = c(0.5 * (h[0] - h[n / 2]), 0.5 * (h[n / 4] - h[3 * n / 4]));
    let mut radius = f64::NEG_INFINITY;
    for (k, &hk) in h.iter().enumerate() {
        radius = radius.max(hk - 0.98 * region.theta(k).cos());
    }

    let items = vec![
        ReproItem::flag("certified_equal", cert.verdict == Verdict::Equal),
        ReproItem::flag("small_diagonal_condition_holds", c3.holds),
        ReproItem::flag("minkowski_condition_holds", m0.holds),
        ReproItem::flag("disc_radius_condition_holds", m4.holds),
        ReproItem::at_most("region_center_offset", (center - c(0.98, 0.0)).norm(), 1e-2),
        ReproItem::within("region_radius", radius, 3.95, 4.0 + 1e-8),
    ];
    Ok(ReproReport {
        case: ReproCase::Example3,
        items,
        checks: vec![c3, m0, m4],
        certificate: Some(cert),
        discrepancy_flag: None,
        pass: false,
    }
    .finish())
}

fn run_example4(plan: &SeedPlan, options: &CertifyOptions) -> Result<ReproReport> {
    let a = example4_matrix();
    let c4 = check_c4(&a, &a)?;
    let m4 = check_m4(&a, &a)?;
    let m0 = check_m0(&a, &a)?;
    let cert = certify_equality(&a, &a, 3, options, plan)?;

    // The quadratic sufficient condition accepts this pair while the
    // disc-radius test it is printed as a consequence of rejects it; the
    // verdict on actual equality is left to the sampling certificate, which
    // must carry a witness whenever it does not come back `equal`.
    let discrepancy = c4.holds && !m4.holds;
    let witness_ok = cert.verdict == Verdict::Equal || cert.witness.is_some();

    let items = vec![
        ReproItem::flag("quadratic_condition_holds", c4.holds),
        ReproItem::around(
            "quadratic_condition_value",
            c4.scalar_value.unwrap_or(f64::NAN),
            -2.0,
            1e-9,
        ),
        ReproItem::flag("disc_radius_condition_fails", !m4.holds),
        ReproItem::around("disc_radius_gap", m4.margin * m4.scale, -2.0, 1e-6),
        ReproItem::flag("certificate_consistent", cert.is_internally_consistent()),
        ReproItem::flag("witness_when_not_equal", witness_ok),
    ];
    Ok(ReproReport {
        case: ReproCase::Example4,
        items,
        checks: vec![c4, m4, m0],
        certificate: Some(cert),
        discrepancy_flag: Some(discrepancy),
        pass: false,
    }
    .finish())
}

fn run_sharpness() -> Result<ReproReport> {
    let e11 = CMat::from_rows(&[vec![C64::ONE, C64::ZERO], vec![C64::ZERO, C64::ZERO]])
        .expect("entries are finite");
    let e12 = CMat::from_rows(&[vec![C64::ZERO, C64::ONE], vec![C64::ZERO, C64::ZERO]])
        .expect("entries are finite");
    let invol = CMat::from_rows(&[vec![C64::ONE, C64::ZERO], vec![C64::ZERO, -C64::ONE]])
        .expect("entries are finite");
    let opts = AlphaOptions::default();

    let items = vec![
        ReproItem::around(
            "alpha_projection_pair",
            alpha_star(&e11, &e11, &opts)?,
            1.0,
            1e-3,
        ),
        ReproItem::around(
            "alpha_nilpotent_pair",
            alpha_star(&e12, &e12, &opts)?,
            4.0,
            1e-3,
        ),
        ReproItem::around(
            "alpha_involution_pair",
            alpha_star(&invol, &invol, &opts)?,
            2.0,
            1e-3,
        ),
    ];
    Ok(ReproReport {
        case: ReproCase::Sharpness,
        items,
        checks: vec![],
        certificate: None,
        discrepancy_flag: None,
        pass: false,
    }
    .finish())
}

/// The ellipse produced by the alternative reading of the core matrix, with
/// `b` instead of `a·b` in the (2,2) slot.
fn variant_ellipse(pair: &CanonicalPair) -> Ellipse {
    let core = CMat::from_rows(&[
        vec![pair.a * pair.b, c(pair.a12 * pair.b12, 0.0)],
        vec![c(pair.a21 * pair.b21, 0.0), pair.b],
    ])
    .expect("canonical products are finite");
    ellipse_2x2(&core)
        .expect("core matrix has order 2 by construction")
        .scaled(2.0 * pair.mu * pair.nu)
}

fn random_matrix_2x2<R: Rng>(rng: &mut R) -> CMat {
    let entry = |rng: &mut R| {
        c(
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
        )
    };
    CMat::from_rows(&[vec![entry(rng), entry(rng)], vec![entry(rng), entry(rng)]])
        .expect("entries are finite")
}

/// Discriminate the two readings of the core matrix against the Haar oracle:
/// the adopted one (both diagonal entries `a·b`) must contain every sampled
/// orbit value and trace its boundary; the alternative must fail visibly on
/// at least one random pair.
fn run_lemma1_oracle(plan: &SeedPlan, budget: &SampleBudget) -> Result<ReproReport> {
    let mut adopted_outward = 0.0_f64;
    let mut adopted_hausdorff = 0.0_f64;
    let mut variant_defect = 0.0_f64;

    for k in 0..ORACLE_PAIRS {
        let mut rng = plan.rng_for(PAIR_STREAM, k);
        let a = random_matrix_2x2(&mut rng);
        let b = random_matrix_2x2(&mut rng);
        let scale = pair_scale(&a, &b);
        let pair = CanonicalPair::from_matrices(&a, &b)?;
        let adopted = pair.range_ellipse();
        let variant = variant_ellipse(&pair);

        let cloud = haar_cloud(&a, &b, 2, ORACLE_CLOUD, plan, budget.exec)?;
        let hull = densify_closed(&convex_hull(&cloud), 1e-2 * scale);

        let worst = |ell: &Ellipse| {
            let out = cloud
                .iter()
                .map(|&z| ell.outward_distance(z))
                .fold(0.0_f64, f64::max);
            let haus = hausdorff_closed_curves(&hull, &ell.boundary_polyline(ORACLE_BOUNDARY));
            (out / scale, haus / scale)
        };

        let (out_a, haus_a) = worst(&adopted);
        adopted_outward = adopted_outward.max(out_a);
        adopted_hausdorff = adopted_hausdorff.max(haus_a);

        let (out_v, haus_v) = worst(&variant);
        variant_defect = variant_defect.max(out_v.max(haus_v));
    }

    let items = vec![
        ReproItem::at_most("adopted_max_outward", adopted_outward, 1e-8),
        ReproItem::at_most("adopted_hausdorff", adopted_hausdorff, 2e-2),
        ReproItem::at_least("variant_worst_defect", variant_defect, 5e-2),
    ];
    Ok(ReproReport {
        case: ReproCase::Lemma1Oracle,
        items,
        checks: vec![],
        certificate: None,
        discrepancy_flag: None,
        pass: false,
    }
    .finish())
}
