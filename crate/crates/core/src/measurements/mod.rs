//! Measurements: orthonormal bases, mutually unbiased sets, POVMs and
//! SIC-POVMs, together with the outcome distributions they generate.
//!
//! Every constructor verifies its structural invariant before returning, so
//! holding a `MubSet` or `SicPovm` means the overlaps have been checked.

mod basis;
mod povm;
mod sic;

pub use basis::{is_prime, mub_construct, MubSet, OrthonormalBasis};
pub use povm::{Povm, RankOnePovm};
pub use sic::{
    load_fiducial, parse_fiducial, sic_consequences_check, sic_design_basis, sic_from_fiducial, Fiducial, FiducialJson,
    LoadedFiducial, SicConsequences, SicPovm,
};

use crate::error::{check_dim, domain, Error, Result};
use crate::scalar::Real;
use crate::states::DensityMatrix;
use crate::tol;

/// Finite probability vector, normalized within [`tol::PROB_SUM`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProbDist<T> {
    p: Vec<T>,
}

impl<T: Real> ProbDist<T> {
    /// Validates and clamps rounding-level negatives (above `-PROB_CLAMP`) to 0.
    pub fn new(mut p: Vec<T>) -> Result<Self> {
        if p.is_empty() {
            return Err(domain("empty distribution"));
        }
        let clamp = T::tol(tol::PROB_CLAMP);
        for x in p.iter_mut() {
            if x.is_nan() || *x < -clamp {
                return Err(domain(format!("negative probability {x}")));
            }
            if *x < T::zero() {
                *x = T::zero();
            }
        }
        let sum: T = p.iter().copied().sum();
        if (sum - T::one()).abs() > T::tol(tol::PROB_SUM) {
            return Err(domain(format!("probabilities sum to {sum}")));
        }
        Ok(Self { p })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(w: &[T]) -> Result<Self> {
        if w.iter().any(|x| x.is_nan() || *x < T::zero()) {
            return Err(domain("weights must be nonnegative"));
        }
        let sum: T = w.iter().copied().sum();
        if !(sum > T::zero()) {
            return Err(domain("weights sum to zero"));
        }
        Self::new(w.iter().map(|&x| x / sum).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Self { p: vec![T::from_usize_exact(n).recip(); n] }
    }

    pub fn indicator(n: usize, k: usize) -> Self {
        let mut p = vec![T::zero(); n];
        p[k] = T::one();
        Self { p }
    }

    pub fn values(&self) -> &[T] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn max(&self) -> T {
        self.p.iter().copied().fold(T::zero(), T::max)
    }

    /// Detector-inefficiency model: each outcome scaled by `eta`, with the
    /// no-click outcome `1 - eta` appended last.
    pub fn distort(&self, eta: T) -> Result<Self> {
        if !(T::zero()..=T::one()).contains(&eta) {
            return Err(domain(format!("efficiency {eta} outside [0, 1]")));
        }
        let mut q: Vec<T> = self.p.iter().map(|&x| eta * x).collect();
        q.push(T::one() - eta);
        Ok(Self { p: q })
    }

    /// `λ·self + (1-λ)·other`.
    pub fn mix(&self, other: &Self, lambda: T) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Self::new(self.p.iter().zip(&other.p).map(|(&a, &b)| lambda * a + (T::one() - lambda) * b).collect())
    }
}

pub fn distort<T: Real>(p: &ProbDist<T>, eta: T) -> Result<ProbDist<T>> {
    p.distort(eta)
}

/// Anything that maps a state to an outcome distribution.
pub trait Measurement<T: Real> {
    fn dim(&self) -> usize;

    fn outcome_count(&self) -> usize;

    /// Unvalidated `tr(M_j ρ)`; dimensions are already checked.
    fn raw_probabilities(&self, rho: &DensityMatrix<T>) -> Vec<T>;

    fn probabilities(&self, rho: &DensityMatrix<T>) -> Result<ProbDist<T>> {
        check_dim(self.dim(), rho.dim())?;
        ProbDist::new(self.raw_probabilities(rho)).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("measurement statistics: {msg}")),
            other => other,
        })
    }
}

pub fn probabilities<T: Real, M: Measurement<T> + ?Sized>(meas: &M, rho: &DensityMatrix<T>) -> Result<ProbDist<T>> {
    meas.probabilities(rho)
}
