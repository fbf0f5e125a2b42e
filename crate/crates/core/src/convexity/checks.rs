//! Set-inclusion and scalar conditions deciding bordered-range equality.
//!
//! All set comparisons run between closed-form ellipses through their support
//! functions on a fixed angle grid, so a reported violation is genuine (up to
//! roundoff) and a pass can only be wrong by the grid resolution, which is
//! negligible for smooth ellipse data. Margins are expressed in units of the
//! pair scale `r(A)·r(B)` so thresholds transfer across magnitudes.

use crate::cnr::nakasato_cnr_2x2;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, CMat, C64};
use crate::numrange::{ellipse_2x2, numerical_radius, AngleGrid};
use crate::{PREDICATE_TOL, SCALE_FLOOR};

use super::report::{AngleGap, CheckReport, ConditionId, MARGIN_TOL};

/// Fixed support-grid resolution for the checkers.
pub(crate) const CHECK_ANGLES: usize = 1024;

/// Violations listed in a report's `details` are capped at this many angles.
const DETAIL_CAP: usize = 16;

/// Common normalization for tolerances: `r(A)·r(B)`, floored so relative
/// thresholds stay meaningful near the zero matrix.
pub fn pair_scale(a: &CMat, b: &CMat) -> f64 {
    (numerical_radius(a) * numerical_radius(b)).max(SCALE_FLOOR)
}

fn expect_order_2(m: &CMat) -> Result<()> {
    if m.order() != 2 {
        return Err(Error::OrderMismatch {
            expected: 2,
            found: m.order(),
        });
    }
    Ok(())
}

/// Support table of a translated set: adds `Re(e^{−iθ}shift)` per angle.
fn add_shift(table: &mut [f64], shift: C64, grid: &AngleGrid) {
    for (k, h) in table.iter_mut().enumerate() {
        *h += shift.re * grid.cos(k) + shift.im * grid.sin(k);
    }
}

/// Assemble a report comparing inner (`lhs`) against outer (`rhs`) supports.
fn compare_supports(
    condition_id: ConditionId,
    lhs: &[f64],
    rhs: &[f64],
    grid: &AngleGrid,
    scale: f64,
    scalar_value: Option<f64>,
) -> CheckReport {
    let mut margin = f64::INFINITY;
    let mut worst = 0usize;
    let mut violations: Vec<AngleGap> = Vec::new();
    for k in 0..grid.len() {
        let gap = (rhs[k] - lhs[k]) / scale;
        if gap < margin {
            margin = gap;
            worst = k;
        }
        if gap < -MARGIN_TOL {
            violations.push(AngleGap {
                theta: grid.theta(k),
                gap,
            });
        }
    }
    violations.sort_by(|x, y| x.gap.total_cmp(&y.gap));
    violations.truncate(DETAIL_CAP);
    let details = if violations.is_empty() {
        vec![AngleGap {
            theta: grid.theta(worst),
            gap: margin,
        }]
    } else {
        violations
    };
    CheckReport::from_margin(condition_id, margin, scale, scalar_value, details)
}

/// Minkowski-sum sufficient condition for equality of the bordered and 2×2
/// pair ranges:
///
/// ```text
/// (tr A)·W(B₀) + (tr B)·W(A₀) − ½(tr A)(tr B)  ⊆  range of (A₀, B₀)
/// ```
///
/// When this holds, every compression value of the bordered pair is already a
/// 2×2 pair value, so the two ranges coincide at every embedding order.
pub fn check_m0(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let scale = pair_scale(a, b);
    let grid = AngleGrid::new(CHECK_ANGLES);
    let a0 = a.trace_zero_part();
    let b0 = b.trace_zero_part();
    let tr_a = a.trace();
    let tr_b = b.trace();

    let mut lhs = ellipse_2x2(&b0)?.scaled(tr_a).support_table(&grid);
    for (k, h) in ellipse_2x2(&a0)?
        .scaled(tr_b)
        .support_table(&grid)
        .into_iter()
        .enumerate()
    {
        lhs[k] += h; // Minkowski sum: supports add.
    }
    add_shift(&mut lhs, -0.5 * tr_a * tr_b, &grid);

    let rhs = nakasato_cnr_2x2(&a0, &b0)?.support_table(&grid);
    Ok(compare_supports(
        ConditionId::M0,
        &lhs,
        &rhs,
        &grid,
        scale,
        None,
    ))
}

/// Disc-radius strengthening of [`check_m0`]: the 0-centered disc of radius
/// `|tr A|·r(B₀) + |tr B|·r(A₀) + ½|tr A||tr B|` must fit inside the
/// trace-zero pair range, which holds iff the radius is at most that
/// ellipse's semi-minor axis (both are centered at 0). `scalar_value`
/// carries the disc radius.
pub fn check_m4(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let scale = pair_scale(a, b);
    let a0 = a.trace_zero_part();
    let b0 = b.trace_zero_part();
    let radius = a.trace().norm() * numerical_radius(&b0)
        + b.trace().norm() * numerical_radius(&a0)
        + 0.5 * a.trace().norm() * b.trace().norm();
    let ell = nakasato_cnr_2x2(&a0, &b0)?;
    let margin = (ell.semi_minor() - radius) / scale;
    Ok(CheckReport::from_margin(
        ConditionId::M4,
        margin,
        scale,
        Some(radius),
        vec![],
    ))
}

/// For trace-zero `B`, the condition `(tr A)·W(B) ⊆ W_A(B)`, which decides
/// bordered equality exactly (it is both sufficient and necessary).
pub fn check_m1(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let scale = pair_scale(a, b);
    if b.trace().norm() > PREDICATE_TOL * scale {
        return Err(Error::TraceNotZero(b.trace().norm()));
    }
    let grid = AngleGrid::new(CHECK_ANGLES);
    let lhs = ellipse_2x2(b)?.scaled(a.trace()).support_table(&grid);
    let rhs = nakasato_cnr_2x2(a, b)?.support_table(&grid);
    Ok(compare_supports(
        ConditionId::M1,
        &lhs,
        &rhs,
        &grid,
        scale,
        None,
    ))
}

/// Necessary condition for bordered equality:
/// `(tr A)·W(B) ∪ (tr B)·W(A) ⊆ W_A(B)`. The union's support is the
/// pointwise maximum of the two scaled supports.
pub fn check_m2(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let scale = pair_scale(a, b);
    let grid = AngleGrid::new(CHECK_ANGLES);
    let lhs = union_support(a, b, &grid)?;
    let rhs = nakasato_cnr_2x2(a, b)?.support_table(&grid);
    Ok(compare_supports(
        ConditionId::M2,
        &lhs,
        &rhs,
        &grid,
        scale,
        None,
    ))
}

fn union_support(a: &CMat, b: &CMat, grid: &AngleGrid) -> Result<Vec<f64>> {
    let mut table = ellipse_2x2(b)?.scaled(a.trace()).support_table(grid);
    for (k, h) in ellipse_2x2(a)?
        .scaled(b.trace())
        .support_table(grid)
        .into_iter()
        .enumerate()
    {
        table[k] = table[k].max(h);
    }
    Ok(table)
}

/// For Hermitian `B`, bordered equality is equivalent to the union condition
/// of [`check_m2`]; the report's margin refers to that inclusion.
///
/// As a safety net the checker also rebuilds `W_A(B)` from the Hermitian
/// closed form `(b₁−b₂)·W(A) + b₂·tr A` (with `b₁ ≥ b₂` the eigenvalues of
/// `B`) and records the worst support deviation from the canonical-form
/// ellipse in `scalar_value`, in scale units; the two derivations must agree
/// to ~1e-8.
pub fn check_m3(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let residual = b.hermitian_residual();
    if residual > PREDICATE_TOL * (1.0 + b.frobenius_norm()) {
        return Err(Error::NotHermitian { residual });
    }
    let scale = pair_scale(a, b);
    let grid = AngleGrid::new(CHECK_ANGLES);
    let lhs = union_support(a, b, &grid)?;
    let pair = nakasato_cnr_2x2(a, b)?;
    let rhs = pair.support_table(&grid);

    let eig = herm_eig(&b.hermitian_part())?;
    let (b2, b1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    let closed = ellipse_2x2(a)?
        .scaled(C64::new(b1 - b2, 0.0))
        .translated(b2 * a.trace())
        .support_table(&grid);
    let cross_check = closed
        .iter()
        .zip(&rhs)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0_f64, f64::max)
        / scale;

    Ok(compare_supports(
        ConditionId::M3,
        &lhs,
        &rhs,
        &grid,
        scale,
        Some(cross_check),
    ))
}

/// The three equivalent formulations of the Hermitian-`B` criterion, each
/// evaluated independently so their agreement can be tested.
#[derive(Debug, Clone)]
pub struct M3Conditions {
    /// `0 ∈ W(A)` and `0 ∈ W(B)` (i.e. `b₁ ≥ 0 ≥ b₂`).
    pub zero_in_both: bool,
    /// `(tr A)·W(B) ∪ (tr B)·W(A) ⊆ W_A(B)`.
    pub union_contained: bool,
    /// The bordered range at order 3 has the same support as the 2×2 range,
    /// via the exact rearrangement formula for Hermitian conjugators (see
    /// [`m3_conditions`]).
    pub bordered_equal: bool,
    /// Margin of the union inclusion, scale units.
    pub union_margin: f64,
    /// Largest bordered-support excess over the 2×2 support, scale units
    /// (nonnegative up to roundoff; ~0 iff `bordered_equal`).
    pub bordered_gap: f64,
    /// Signed distance of the boolean `zero_in_both` from flipping: the
    /// smallest of the eigenvalue slacks `b₁, −b₂` (relative to `r(B)`) and
    /// the signed membership depth of `0` in `W(A)` (relative to `r(A)`).
    /// Near-zero values mean the case sits on the decision boundary.
    pub zero_margin: f64,
}

/// Decision slack below which the independently computed booleans of
/// [`m3_conditions`] are allowed to disagree (the case is then degenerate).
const KYFAN_TOL: f64 = 1e-9;

/// Evaluate the three equivalent Hermitian-`B` conditions separately.
///
/// The bordered support is computed exactly: for Hermitian `C` the maximum of
/// `tr(C·U*HU)` over unitary `U` is the sorted-eigenvalue dot product, so at
/// order 3 the support of the bordered range in direction `θ` equals
/// `Σᵢ βᵢ↓ · λᵢ↓` with `β = eig(B) ∪ {0}` and
/// `λ = eig(Herm(e^{−iθ}A)) ∪ {0}`, both sorted decreasingly, while the 2×2
/// support pairs the matrices' own eigenvalues the same way.
pub fn m3_conditions(a: &CMat, b: &CMat) -> Result<M3Conditions> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let residual = b.hermitian_residual();
    if residual > PREDICATE_TOL * (1.0 + b.frobenius_norm()) {
        return Err(Error::NotHermitian { residual });
    }
    let scale = pair_scale(a, b);
    let grid = AngleGrid::new(CHECK_ANGLES);

    let eig = herm_eig(&b.hermitian_part())?;
    let (b2, b1) = (eig.eigenvalues[0], eig.eigenvalues[1]);

    // Formulation 1: zero membership on both factors.
    let wa = ellipse_2x2(a)?;
    let depth_a = if wa.outward_distance(C64::ZERO) > 0.0 {
        -wa.outward_distance(C64::ZERO)
    } else {
        // Depth inside = smallest support value (0 has support 0 everywhere).
        (0..grid.len())
            .map(|k| wa.support(grid.theta(k)))
            .fold(f64::INFINITY, f64::min)
    };
    let r_a = numerical_radius(a).max(SCALE_FLOOR);
    let r_b = numerical_radius(b).max(SCALE_FLOOR);
    let zero_margin = (depth_a / r_a).min(b1 / r_b).min(-b2 / r_b);
    let zero_in_both =
        depth_a >= -KYFAN_TOL * r_a && b1 >= -KYFAN_TOL * r_b && b2 <= KYFAN_TOL * r_b;

    // Formulation 2: the union inclusion.
    let lhs = union_support(a, b, &grid)?;
    let rhs = nakasato_cnr_2x2(a, b)?.support_table(&grid);
    let union_margin = lhs
        .iter()
        .zip(&rhs)
        .map(|(l, r)| (r - l) / scale)
        .fold(f64::INFINITY, f64::min);
    let union_contained = union_margin >= -MARGIN_TOL;

    // Formulation 3: exact bordered support at order 3 via sorted pairing.
    let mut bordered_gap = f64::NEG_INFINITY;
    for k in 0..grid.len() {
        let theta = grid.theta(k);
        let rotated = a.scale(C64::from_polar(1.0, -theta));
        let lam = herm_eig(&rotated.hermitian_part())?.eigenvalues;
        let (l2, l1) = (lam[0], lam[1]);
        let h2 = b1 * l1 + b2 * l2;
        let mut beta = [b1, b2, 0.0];
        let mut lambda = [l1, l2, 0.0];
        beta.sort_by(|x, y| y.total_cmp(x));
        lambda.sort_by(|x, y| y.total_cmp(x));
        let h3: f64 = beta.iter().zip(&lambda).map(|(x, y)| x * y).sum();
        bordered_gap = bordered_gap.max((h3 - h2) / scale);
    }
    let bordered_equal = bordered_gap <= KYFAN_TOL;

    Ok(M3Conditions {
        zero_in_both,
        union_contained,
        bordered_equal,
        union_margin,
        bordered_gap,
        zero_margin,
    })
}

/// For `tr A = 0`: holds iff `½tr B ∈ W(B₀)`, a sufficient condition for
/// bordered equality. The margin is the support slack of that point.
pub fn check_c2(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let scale = pair_scale(a, b);
    if a.trace().norm() > PREDICATE_TOL * scale {
        return Err(Error::TraceNotZero(a.trace().norm()));
    }
    let grid = AngleGrid::new(CHECK_ANGLES);
    let point = 0.5 * b.trace();
    let mut lhs = vec![0.0; grid.len()];
    add_shift(&mut lhs, point, &grid);
    let rhs = ellipse_2x2(&b.trace_zero_part())?.support_table(&grid);
    Ok(compare_supports(
        ConditionId::C2,
        &lhs,
        &rhs,
        &grid,
        scale,
        None,
    ))
}

fn expect_equal_pair(a: &CMat, b: &CMat) -> Result<f64> {
    let tol = PREDICATE_TOL * (1.0 + a.frobenius_norm());
    if a.frobenius_dist(b) > tol {
        return Err(Error::ShapeMismatch(
            "this condition is stated for equal pairs (A = B)".into(),
        ));
    }
    Ok(tol)
}

/// Scalar condition for an equal upper-triangular pair
/// `A = B = [[a, b], [0, a]]`: holds iff `|a| ≤ (√3 − 1)/2 · |b|`, in which
/// case the pair range (bordered or not) is the disc centered `2a²` with
/// radius `|b|²`. `scalar_value` is `|a| − (√3 − 1)/2·|b|`.
pub fn check_c3(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let tol = expect_equal_pair(a, b)?;
    if a[(1, 0)].norm() > tol {
        return Err(Error::ShapeMismatch(
            "expected an upper-triangular matrix".into(),
        ));
    }
    if (a[(0, 0)] - a[(1, 1)]).norm() > tol {
        return Err(Error::ShapeMismatch(
            "expected equal diagonal entries".into(),
        ));
    }
    let scale = pair_scale(a, b);
    let diag = a[(0, 0)].norm();
    let off = a[(0, 1)].norm();
    let value = diag - 0.5 * (3.0_f64.sqrt() - 1.0) * off;
    Ok(CheckReport::from_margin(
        ConditionId::C3,
        -value / scale,
        scale,
        Some(value),
        vec![],
    ))
}

/// Scalar condition for an equal pair `A = B = [[a, b], [1, a]]` with real
/// `b > 1`: holds iff `2|a|² + (1 + b)|a| − (b² − 1) ≤ 0`. `scalar_value` is
/// that left-hand side.
pub fn check_c4(a: &CMat, b: &CMat) -> Result<CheckReport> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let tol = expect_equal_pair(a, b)?;
    if (a[(1, 0)] - C64::ONE).norm() > tol {
        return Err(Error::ShapeMismatch(
            "expected lower off-diagonal entry 1".into(),
        ));
    }
    if (a[(0, 0)] - a[(1, 1)]).norm() > tol {
        return Err(Error::ShapeMismatch(
            "expected equal diagonal entries".into(),
        ));
    }
    let upper = a[(0, 1)];
    if upper.im.abs() > tol || upper.re <= 1.0 {
        return Err(Error::ShapeMismatch(
            "expected a real upper off-diagonal entry greater than 1".into(),
        ));
    }
    let scale = pair_scale(a, b);
    let m = a[(0, 0)].norm();
    let off = upper.re;
    let value = 2.0 * m * m + (1.0 + off) * m - (off * off - 1.0);
    Ok(CheckReport::from_margin(
        ConditionId::C4,
        -value / scale,
        scale,
        Some(value),
        vec![],
    ))
}

/// Zero-membership necessary condition: whether `0 ∈ W_A(B)`. Bordered
/// equality at any order forces this, so a `false` here certifies the
/// bordered range is strictly larger.
pub fn check_lemma5_zero(a: &CMat, b: &CMat) -> Result<bool> {
    expect_order_2(a)?;
    expect_order_2(b)?;
    let scale = pair_scale(a, b);
    let ell = nakasato_cnr_2x2(a, b)?;
    Ok(ell.outward_distance(C64::ZERO) <= MARGIN_TOL * scale)
}
