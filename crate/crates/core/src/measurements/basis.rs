use super::Measurement;
use crate::error::{check_dim, domain, Error, Result};
use crate::linalg::ComplexVector;
use crate::scalar::{Real, C};
use crate::states::DensityMatrix;
use crate::tol;

#[derive(Clone, Debug)]
pub struct OrthonormalBasis<T> {
    vectors: Vec<ComplexVector<T>>,
}

impl<T: Real> OrthonormalBasis<T> {
    pub fn new(vectors: Vec<ComplexVector<T>>) -> Result<Self> {
        let d = vectors.first().map(ComplexVector::dim).ok_or_else(|| domain("empty basis"))?;
        check_dim(d, vectors.len())?;
        for v in &vectors {
            check_dim(d, v.dim())?;
        }
        let basis = Self { vectors };
        let dev = basis.gram_deviation();
        if dev > T::tol(tol::GRAM) {
            return Err(Error::Construction(format!("basis is not orthonormal (Gram deviation {dev:e})")));
        }
        Ok(basis)
    }

    pub fn computational(d: usize) -> Self {
        Self { vectors: (0..d).map(|k| ComplexVector::basis(d, k)).collect() }
    }

    pub fn vectors(&self) -> &[ComplexVector<T>] {
        &self.vectors
    }

    /// Max entrywise deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> T {
        let mut worst = T::zero();
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let g = a.inner(b).expect("equal dimensions");
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((g - C::new(target, T::zero())).norm());
            }
        }
        worst
    }
}

impl<T: Real> Measurement<T> for OrthonormalBasis<T> {
    fn dim(&self) -> usize {
        self.vectors.len()
    }

    fn outcome_count(&self) -> usize {
        self.vectors.len()
    }

    fn raw_probabilities(&self, rho: &DensityMatrix<T>) -> Vec<T> {
        self.vectors.iter().map(|b| rho.expectation(b).expect("dimension checked")).collect()
    }
}

/// A set of pairwise mutually unbiased bases.
#[derive(Clone, Debug)]
pub struct MubSet<T> {
    bases: Vec<OrthonormalBasis<T>>,
    dim: usize,
}

impl<T: Real> MubSet<T> {
    pub fn new(bases: Vec<OrthonormalBasis<T>>) -> Result<Self> {
        let dim = bases.first().map(|b| b.vectors.len()).ok_or_else(|| domain("empty MUB set"))?;
        for b in &bases {
            check_dim(dim, b.vectors.len())?;
        }
        let set = Self { bases, dim };
        let dev = set.overlap_deviation();
        if dev > T::tol(tol::MUB_OVERLAP) {
            return Err(Error::Construction(format!("bases are not mutually unbiased (deviation {dev:e})")));
        }
        Ok(set)
    }

    pub fn bases(&self) -> &[OrthonormalBasis<T>] {
        &self.bases
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> usize {
        self.bases.len()
    }

    /// Worst `| |⟨b_j|b'_k⟩|² - 1/d |` over all pairs of distinct bases.
    pub fn overlap_deviation(&self) -> T {
        let target = T::from_usize_exact(self.dim).recip();
        let mut worst = T::zero();
        for (m, a) in self.bases.iter().enumerate() {
            for b in &self.bases[m + 1..] {
                for u in &a.vectors {
                    for v in &b.vectors {
                        let o = u.inner(v).expect("equal dimensions").norm_sqr();
                        worst = worst.max((o - target).abs());
                    }
                }
            }
        }
        worst
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Builds `count` mutually unbiased bases in dimension `d`.
///
/// For `d = 2` these are the eigenbases of `σ_z`, `σ_x`, `σ_y` in that order.
/// For an odd prime `d` the list is the computational basis followed by the
/// quadratic-phase bases `⟨k|b_j^(m)⟩ = ω^(m k² + j k)/√d`, `ω = e^(2πi/d)`,
/// for `m = 0..d-1`; the first `count` entries are returned.
pub fn mub_construct<T: Real>(d: usize, count: usize) -> Result<MubSet<T>> {
    if d != 2 && !(is_prime(d) && d % 2 == 1) {
        return Err(Error::UnsupportedDimension(d));
    }
    if count < 2 || count > d + 1 {
        return Err(domain(format!("MUB count {count} outside 2..={}", d + 1)));
    }
    let bases = if d == 2 { pauli_bases() } else { quadratic_phase_bases(d) };
    let bases = bases.into_iter().take(count).map(OrthonormalBasis::new).collect::<Result<Vec<_>>>()?;
    MubSet::new(bases)
}

fn pauli_bases<T: Real>() -> Vec<Vec<ComplexVector<T>>> {
    let h = T::lit(0.5).sqrt();
    let (re, im) = (C::new(h, T::zero()), C::new(T::zero(), h));
    vec![
        vec![ComplexVector::basis(2, 0), ComplexVector::basis(2, 1)],
        vec![ComplexVector::new(vec![re, re]), ComplexVector::new(vec![re, -re])],
        vec![ComplexVector::new(vec![re, im]), ComplexVector::new(vec![re, -im])],
    ]
}

fn quadratic_phase_bases<T: Real>(d: usize) -> Vec<Vec<ComplexVector<T>>> {
    let norm = T::from_usize_exact(d).sqrt().recip();
    let two_pi_over_d = T::TAU() / T::from_usize_exact(d);
    let root = |e: usize| C::from_polar(norm, two_pi_over_d * T::from_usize_exact(e % d));
    let mut out = vec![(0..d).map(|k| ComplexVector::basis(d, k)).collect()];
    for m in 0..d {
        out.push((0..d).map(|j| ComplexVector::new((0..d).map(|k| root(m * k * k + j * k)).collect())).collect());
    }
    out
}
