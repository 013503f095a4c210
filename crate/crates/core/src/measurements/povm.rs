use super::{Measurement, OrthonormalBasis, SicPovm};
use crate::error::{check_dim, domain, Error, Result};
use crate::linalg::{hs_inner, ComplexMatrix, ComplexVector};
use crate::scalar::Real;
use crate::states::DensityMatrix;
use crate::tol;

/// General POVM: PSD elements summing to the identity.
#[derive(Clone, Debug)]
pub struct Povm<T> {
    elements: Vec<ComplexMatrix<T>>,
}

impl<T: Real> Povm<T> {
    pub fn new(elements: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let d = elements.first().map(ComplexMatrix::rows).ok_or_else(|| domain("empty POVM"))?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for (j, m) in elements.iter().enumerate() {
            check_dim(d, m.rows())?;
            check_dim(d, m.cols())?;
            if m.hermitian_deviation()? > T::tol(tol::POVM_COMPLETENESS) {
                return Err(Error::Construction(format!("POVM element {j} is not Hermitian")));
            }
            let min = m.eigenvalues_hermitian()?[0];
            if min < -T::tol(tol::PSD) {
                return Err(Error::Construction(format!("POVM element {j} has eigenvalue {min:e}")));
            }
            sum.accumulate(m)?;
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(d))?;
        if dev > T::tol(tol::POVM_COMPLETENESS) {
            return Err(Error::Construction(format!("POVM elements do not sum to identity (deviation {dev:e})")));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[ComplexMatrix<T>] {
        &self.elements
    }
}

impl<T: Real> Measurement<T> for Povm<T> {
    fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    fn outcome_count(&self) -> usize {
        self.elements.len()
    }

    fn raw_probabilities(&self, rho: &DensityMatrix<T>) -> Vec<T> {
        // Elements are Hermitian, so tr(M ρ) = ⟨M, ρ⟩_hs.
        self.elements.iter().map(|m| hs_inner(m, rho.matrix()).expect("dimension checked").re).collect()
    }
}

/// POVM with rank-one elements `|m_i⟩⟨m_i|`, stored by the (subnormalized)
/// vectors `m_i`.
#[derive(Clone, Debug)]
pub struct RankOnePovm<T> {
    vectors: Vec<ComplexVector<T>>,
}

impl<T: Real> RankOnePovm<T> {
    pub fn new(vectors: Vec<ComplexVector<T>>) -> Result<Self> {
        let d = vectors.first().map(ComplexVector::dim).ok_or_else(|| domain("empty POVM"))?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for v in &vectors {
            check_dim(d, v.dim())?;
            sum.accumulate(&v.outer(v))?;
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(d))?;
        if dev > T::tol(tol::POVM_COMPLETENESS) {
            return Err(Error::Construction(format!("rank-one elements do not sum to identity (deviation {dev:e})")));
        }
        Ok(Self { vectors })
    }

    /// Recovers `m_i` from each element; fails unless every element has at
    /// most one eigenvalue above [`tol::RANK_ONE`].
    pub fn from_povm(povm: &Povm<T>) -> Result<Self> {
        let mut vectors = Vec::with_capacity(povm.elements.len());
        for (j, m) in povm.elements.iter().enumerate() {
            let eig = m.eigh()?;
            let n = eig.values.len();
            if n > 1 && eig.values[n - 2] > T::tol(tol::RANK_ONE) {
                return Err(Error::Precondition(format!(
                    "POVM element {j} is not rank one (second eigenvalue {:e})",
                    eig.values[n - 2]
                )));
            }
            let top = eig.values[n - 1].max(T::zero());
            vectors.push(eig.vector(n - 1).scale_real(top.sqrt()));
        }
        Self::new(vectors)
    }

    pub fn vectors(&self) -> &[ComplexVector<T>] {
        &self.vectors
    }

    pub fn to_povm(&self) -> Result<Povm<T>> {
        Povm::new(self.vectors.iter().map(|v| v.outer(v)).collect())
    }

    /// `max_ij |⟨m_i|n_j⟩|`.
    pub fn max_overlap(&self, other: &Self) -> Result<T> {
        check_dim(self.vectors[0].dim(), other.vectors[0].dim())?;
        let mut worst = T::zero();
        for m in &self.vectors {
            for n in &other.vectors {
                worst = worst.max(m.inner(n)?.norm());
            }
        }
        Ok(worst)
    }
}

impl<T: Real> Measurement<T> for RankOnePovm<T> {
    fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    fn outcome_count(&self) -> usize {
        self.vectors.len()
    }

    fn raw_probabilities(&self, rho: &DensityMatrix<T>) -> Vec<T> {
        self.vectors.iter().map(|m| rho.expectation(m).expect("dimension checked")).collect()
    }
}

impl<T: Real> From<&OrthonormalBasis<T>> for RankOnePovm<T> {
    fn from(b: &OrthonormalBasis<T>) -> Self {
        Self { vectors: b.vectors().to_vec() }
    }
}

impl<T: Real> From<&SicPovm<T>> for RankOnePovm<T> {
    /// Elements `(1/d)|φ_j⟩⟨φ_j|`, i.e. vectors `φ_j/√d`.
    fn from(s: &SicPovm<T>) -> Self {
        let w = T::from_usize_exact(s.dim()).sqrt().recip();
        Self { vectors: s.kets().iter().map(|k| k.scale_real(w)).collect() }
    }
}
