//! Numerical tolerances, in `f64` units.
//!
//! Types whose invariants carry a tolerance validate against these values
//! (rescaled through [`crate::Real::tol`]). Free functions take tolerances
//! from the caller instead.

/// Max entrywise `|A - A†|` for a density matrix.
pub const HERMITIAN: f64 = 1e-12;
/// `|tr ρ - 1|` for a density matrix.
pub const TRACE: f64 = 1e-12;
/// Smallest admissible eigenvalue of a PSD operator.
pub const PSD: f64 = 1e-10;
/// Bloch vector length slack.
pub const BLOCH: f64 = 1e-12;
/// Gram-matrix deviation for orthonormal bases.
pub const GRAM: f64 = 1e-10;
/// Squared-overlap deviation from `1/d` between mutually unbiased bases.
pub const MUB_OVERLAP: f64 = 1e-10;
/// Entrywise completeness deviation of a POVM.
pub const POVM_COMPLETENESS: f64 = 1e-10;
/// SIC overlap and completeness deviation (fiducials are often numerical).
pub const SIC: f64 = 1e-8;
/// Gram deviation that signals a failed two-copy basis construction.
pub const DESIGN_BASIS: f64 = 1e-8;
/// Norm deviation accepted for a caller-supplied fiducial before rescaling.
pub const FIDUCIAL_NORM: f64 = 1e-10;
/// `|Σ p - 1|` for a probability distribution.
pub const PROB_SUM: f64 = 1e-12;
/// Negative probabilities above `-PROB_CLAMP` are rounding and clamp to zero.
pub const PROB_CLAMP: f64 = 1e-14;
/// Outcome probabilities at or below this are treated as zero in ratios.
pub const ZERO_PROB: f64 = 1e-14;
/// Default pass threshold for bound reports.
pub const BOUND: f64 = 1e-10;
/// Rank-one test: every eigenvalue but the largest must be below this.
pub const RANK_ONE: f64 = 1e-10;
