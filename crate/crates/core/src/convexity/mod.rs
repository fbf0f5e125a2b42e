//! Equality and convexity certification for bordered pair ranges.
//!
//! The question throughout: for 2×2 matrices `A`, `B` embedded as
//! `A ⊕ 0_{n−2}`, `B ⊕ 0_{n−2}`, does the bordered range collapse back to
//! the order-2 range `W_A(B)`? When it does, the bordered range inherits the
//! ellipse's convexity. This module provides
//!
//! - [`checks`]: closed-form sufficient and necessary conditions, each
//!   returning a [`CheckReport`] with a signed margin in scale units;
//! - [`alpha_star`]: the largest `α` with `α·W(A)W(B) ⊆ W_A(B)`, the scale
//!   factor behind the product-containment conditions;
//! - [`certify_equality`]: the sampling certifier combining the compression
//!   sweep with an independent Haar cloud, returning a [`Certificate`]
//!   whose `Unequal` verdict always carries a concrete witness unitary;
//! - [`reproduce`]: frozen-seed scripted scenarios tying the above together.

mod alpha;
mod certify;
mod checks;
mod report;
mod reproduce;

pub use alpha::{alpha_star, AlphaOptions};
pub use certify::{certify_equality, BudgetUsed, Certificate, CertifyOptions, Verdict, Witness};
pub use checks::{
    check_c2, check_c3, check_c4, check_lemma5_zero, check_m0, check_m1, check_m2, check_m3,
    check_m4, m3_conditions, pair_scale, M3Conditions,
};
pub use report::{AngleGap, CheckReport, ConditionId, MARGIN_TOL};
pub use reproduce::{reproduce, ReproCase, ReproItem, ReproReport};
