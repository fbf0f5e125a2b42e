//! Report types shared by the condition checkers.

use serde::{Deserialize, Serialize};

/// Short codes naming the testable conditions; they appear verbatim in report
/// JSON and as `--theorem` arguments on the command line.
///
/// * `M0` — Minkowski-sum sufficient condition:
///   `(tr A)·W(B₀) + (tr B)·W(A₀) − ½(tr A)(tr B) ⊆ W_{A₀}(B₀)`.
/// * `M4` — disc-radius strengthening of `M0`: the 0-centered disc of radius
///   `|tr A|·r(B₀) + |tr B|·r(A₀) + ½|tr A|·|tr B|` fits inside `W_{A₀}(B₀)`.
/// * `M1` — for `tr B = 0`, the equality-deciding condition
///   `(tr A)·W(B) ⊆ W_A(B)`.
/// * `M2` — necessary condition `(tr A)·W(B) ∪ (tr B)·W(A) ⊆ W_A(B)`.
/// * `M3` — Hermitian-`B` biconditional (union condition, and for nonzero
///   matrices `0 ∈ W(A) ∩ W(B)`).
/// * `C1` — trace-zero pairs: equality always holds and the product constant
///   of [`crate::convexity::alpha_star`] lies in `[2, 4]`.
/// * `C2` — `tr A = 0` and `½tr B ∈ W(B₀)` imply equality.
/// * `C3` — equal upper-triangular pair `[[a, b], [0, a]]`:
///   `|a| ≤ (√3 − 1)/2 · |b|` implies the range is the disc centered `2a²`
///   with radius `|b|²`.
/// * `C4` — equal pair `[[a, b], [1, a]]`, real `b > 1`:
///   `2|a|² + (1 + b)|a| − (b² − 1) ≤ 0` implies equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionId {
    M0,
    M4,
    M1,
    M2,
    M3,
    C1,
    C2,
    C3,
    C4,
}

impl std::fmt::Display for ConditionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ConditionId::M0 => "M0",
            ConditionId::M4 => "M4",
            ConditionId::M1 => "M1",
            ConditionId::M2 => "M2",
            ConditionId::M3 => "M3",
            ConditionId::C1 => "C1",
            ConditionId::C2 => "C2",
            ConditionId::C3 => "C3",
            ConditionId::C4 => "C4",
        };
        f.write_str(name)
    }
}

/// One support-direction entry of a check: the inclusion gap at angle
/// `theta`, in scale units. Negative gaps are violations.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AngleGap {
    pub theta: f64,
    pub gap: f64,
}

/// Outcome of one condition check.
///
/// `margin` is signed and measured in units of `scale` (the pair scale
/// `r(A)·r(B)`, floored): positive means the condition holds with that much
/// slack, negative by how much it fails. For set-inclusion conditions it is
/// the minimum over the angle grid of (outer support − inner support); for
/// scalar conditions it is the normalized slack of the printed inequality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub condition_id: ConditionId,
    pub holds: bool,
    pub margin: f64,
    pub scale: f64,
    /// Raw value of the condition's scalar expression, where one exists
    /// (`C3`/`C4` inequality left-hand sides, the `M4` disc radius, the
    /// worst closed-form cross-check residual for `M3`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_value: Option<f64>,
    /// Worst angles of the support comparison: all violating angles (capped)
    /// or, when the condition holds, the single tightest angle.
    pub details: Vec<AngleGap>,
}

/// Roundoff slack, in scale units, below which a signed margin still counts
/// as "holds": closed-form supports are exact to ~1e-14, so anything beyond
/// this is a genuine violation.
pub const MARGIN_TOL: f64 = 1e-9;

impl CheckReport {
    /// Assemble a report from a signed margin, enforcing the sign/holds
    /// agreement (a margin within `MARGIN_TOL` of zero counts as holding).
    pub(crate) fn from_margin(
        condition_id: ConditionId,
        margin: f64,
        scale: f64,
        scalar_value: Option<f64>,
        details: Vec<AngleGap>,
    ) -> Self {
        Self {
            condition_id,
            holds: margin >= -MARGIN_TOL,
            margin,
            scale,
            scalar_value,
            details,
        }
    }
}
