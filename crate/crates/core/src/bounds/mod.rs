//! Entropic lower bounds for MUB sets, single SIC-POVMs and pairs of
//! rank-one POVMs, plus a uniform driver that compares them against the
//! entropies actually generated by a state.

mod check;
mod mub;
mod pair;
mod sic;

pub use check::{check_bound, BoundParams, Proposition, Target};
pub use mub::{
    coincidence_sum_check, mub_minentropy_bound, mub_renyi_bound, mub_symmetrized_bound, mub_tsallis_bound,
    mub_tsallis_bound_inefficiency,
};
pub use pair::{mu_g_factor, mu_pair_bounds, riesz_precondition_check, riesz_transform, PairBounds};
pub use sic::{
    sic_index_of_coincidence, sic_minentropy_bound, sic_renyi_bound, sic_tsallis_bound, sic_tsallis_bound_inefficiency,
    simple_bounds, SimpleBounds,
};

use std::fmt;

use crate::entropy::EntropyOrder;
use crate::error::{domain, Result};
use crate::scalar::{clamp_to_range, Real};

/// Direction of the inequality a report checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `lhs ≥ rhs`
    AtLeast,
    /// `lhs ≤ rhs`
    AtMost,
    /// `lhs = rhs`
    Equal,
}

/// Outcome of comparing a computed quantity against a bound.
///
/// `margin` is the signed slack: `lhs - rhs` for lower bounds, `rhs - lhs`
/// for upper bounds and `-|lhs - rhs|` for identities, so that a report
/// passes iff `margin ≥ -tolerance` in every case.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<T> {
    pub label: String,
    pub relation: Relation,
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    pub saturated: bool,
    pub tolerance: T,
}

impl<T: Real> BoundReport<T> {
    pub fn new(label: impl Into<String>, relation: Relation, lhs: T, rhs: T, tolerance: T) -> Self {
        let margin = match relation {
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost => rhs - lhs,
            Relation::Equal => -(lhs - rhs).abs(),
        };
        Self { label: label.into(), relation, lhs, rhs, margin, saturated: (lhs - rhs).abs() <= tolerance, tolerance }
    }

    pub fn lower(label: impl Into<String>, lhs: T, rhs: T, tolerance: T) -> Self {
        Self::new(label, Relation::AtLeast, lhs, rhs, tolerance)
    }

    pub fn upper(label: impl Into<String>, lhs: T, rhs: T, tolerance: T) -> Self {
        Self::new(label, Relation::AtMost, lhs, rhs, tolerance)
    }

    pub fn passed(&self) -> bool {
        self.margin >= -self.tolerance
    }

    /// Keeps whichever of the two reports has the smaller margin.
    pub fn worst(self, other: Self) -> Self {
        if other.margin < self.margin {
            other
        } else {
            self
        }
    }
}

impl<T: Real> fmt::Display for BoundReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Equal => "==",
        };
        write!(
            f,
            "{}: {:.12e} {op} {:.12e} (margin {:.3e}, {})",
            self.label,
            self.lhs,
            self.rhs,
            self.margin,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

fn checked_purity<T: Real>(d: usize, purity: T) -> Result<T> {
    if d == 0 {
        return Err(domain("dimension must be positive"));
    }
    let lo = T::from_usize_exact(d).recip();
    clamp_to_range(purity, lo, T::one()).ok_or_else(|| domain(format!("purity {purity} outside [1/{d}, 1]")))
}

fn checked_count(m: usize) -> Result<()> {
    if m == 0 {
        return Err(domain("measurement count must be positive"));
    }
    Ok(())
}

/// Rejects orders outside `[lo, hi]` (either end may be infinite).
fn checked_order<T: Real>(order: EntropyOrder<T>, lo: f64, hi: f64, what: &str) -> Result<T> {
    let a = order.value();
    if a < T::lit(lo) || a > T::lit(hi) {
        return Err(domain(format!("order {order} outside the range of the {what} bound")));
    }
    Ok(a)
}

/// `α/(2(α-1))`, with the limit `1/2` at `α = ∞`.
fn renyi_prefactor<T: Real>(alpha: T) -> T {
    if alpha.is_infinite() {
        T::lit(0.5)
    } else {
        alpha / (T::lit(2.0) * (alpha - T::one()))
    }
}
