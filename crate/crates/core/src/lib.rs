//! Entropic uncertainty relations for mutually unbiased bases and
//! SIC-POVMs.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar for the common cases.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod entanglement;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod measurements;
pub mod scalar;
pub mod states;
pub mod tol;

pub use bounds::{check_bound, BoundParams, BoundReport, Proposition, Relation, Target};
pub use entanglement::{
    correlation_g, detect_entanglement, maximally_entangled, product_sic_povm, separable_bound,
    universal_separable_bound, BipartitePovm,
};
pub use entropy::{
    alpha_log, binary_tsallis, index_of_coincidence, max_prob_bound, renyi, shannon, symmetrized, tsallis, EntropyKind,
    EntropyOrder, SymOrderPair,
};
pub use error::{Error, Result};
pub use linalg::{conj_vector, hs_inner, kron, vec_qnorm, ComplexMatrix, ComplexVector};
pub use measurements::{
    mub_construct, sic_from_fiducial, Fiducial, Measurement, MubSet, OrthonormalBasis, Povm, ProbDist, RankOnePovm,
    SicPovm,
};
pub use scalar::{Real, C};
pub use states::{purity, random_mixed, random_pure, stream_rng, BlochVector, DensityMatrix};

pub type Complex64 = C<f64>;
pub type Complex32 = C<f32>;
pub type Vector64 = ComplexVector<f64>;
pub type Vector32 = ComplexVector<f32>;
pub type Matrix64 = ComplexMatrix<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type DensityMatrix32 = DensityMatrix<f32>;
pub type ProbDist64 = ProbDist<f64>;
pub type ProbDist32 = ProbDist<f32>;
pub type MubSet64 = MubSet<f64>;
pub type MubSet32 = MubSet<f32>;
pub type SicPovm64 = SicPovm<f64>;
pub type SicPovm32 = SicPovm<f32>;
pub type BoundReport64 = BoundReport<f64>;
pub type BoundReport32 = BoundReport<f32>;
