//! Density matrices, qubit Bloch parametrization and random state sampling.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, domain, Error, Result};
use crate::linalg::{kron, ComplexMatrix, ComplexVector};
use crate::scalar::{Real, C};
use crate::tol;

/// A validated state: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidState(format!("not square: {}x{}", mat.rows(), mat.cols())));
        }
        let herm = mat.hermitian_deviation()?;
        if herm > T::tol(tol::HERMITIAN) {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = mat.trace();
        if (tr - C::one()).norm() > T::tol(tol::TRACE) {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_eig = mat.eigenvalues_hermitian()?[0];
        if min_eig < -T::tol(tol::PSD) {
            return Err(Error::InvalidState(format!("not PSD (min eigenvalue {min_eig:e})")));
        }
        Ok(Self { mat })
    }

    /// `|ψ⟩⟨ψ|` for the normalized ket.
    pub fn pure(psi: &ComplexVector<T>) -> Result<Self> {
        let n = psi.norm();
        if n.is_zero() {
            return Err(domain("zero ket has no pure state"));
        }
        let psi = psi.scale_real(n.recip());
        Self::new(psi.outer(&psi))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        let w = T::from_usize_exact(d).recip();
        Self { mat: ComplexMatrix::identity(d).scale_real(w) }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    /// `⟨ψ|ρ|ψ⟩`, real by hermiticity.
    pub fn expectation(&self, psi: &ComplexVector<T>) -> Result<T> {
        Ok(self.mat.sandwich(psi, psi)?.re)
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.mat.eigenvalues_hermitian().expect("density matrix is square")
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self { mat: kron(&self.mat, &other.mat) }
    }

    /// Convex combination `λ·self + (1-λ)·other`.
    pub fn mix(&self, other: &Self, lambda: T) -> Result<Self> {
        if !(T::zero()..=T::one()).contains(&lambda) {
            return Err(domain(format!("mixing weight {lambda} outside [0, 1]")));
        }
        check_dim(self.dim(), other.dim())?;
        let mat = self.mat.scale_real(lambda).add(&other.mat.scale_real(T::one() - lambda))?;
        Ok(Self { mat })
    }

    /// Trace over the second factor of a `dim_a·dim_b` system.
    pub fn partial_trace_b(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        check_dim(self.dim(), dim_a * dim_b)?;
        let mat = ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| self.mat[(i * dim_b + k, j * dim_b + k)]).sum()
        });
        Self::new(mat)
    }

    /// Trace over the first factor of a `dim_a·dim_b` system.
    pub fn partial_trace_a(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        check_dim(self.dim(), dim_a * dim_b)?;
        let mat = ComplexMatrix::from_fn(dim_b, dim_b, |i, j| {
            (0..dim_a).map(|k| self.mat[(k * dim_b + i, k * dim_b + j)]).sum()
        });
        Self::new(mat)
    }

    pub fn to_json(&self) -> DensityMatrixJson {
        let d = self.dim();
        let part = |f: fn(C<T>) -> T| -> Vec<Vec<f64>> {
            (0..d).map(|i| (0..d).map(|j| f(self.mat[(i, j)]).to_f64_lossy()).collect()).collect()
        };
        DensityMatrixJson { dim: d, re: part(|z| z.re), im: part(|z| z.im) }
    }

    pub fn from_json(json: &DensityMatrixJson) -> Result<Self> {
        let d = json.dim;
        if d == 0 {
            return Err(domain("dim must be positive"));
        }
        check_dim(d, json.re.len())?;
        check_dim(d, json.im.len())?;
        let mut rows = Vec::with_capacity(d);
        for (re, im) in json.re.iter().zip(&json.im) {
            check_dim(d, re.len())?;
            check_dim(d, im.len())?;
            rows.push(re.iter().zip(im).map(|(&r, &i)| C::new(T::lit(r), T::lit(i))).collect());
        }
        Self::new(ComplexMatrix::from_rows(rows)?)
    }
}

/// Wire format `{"dim": d, "re": [[...]], "im": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// `tr(ρ²)`, computed as `Σ|ρ_ij|²`.
pub fn purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.matrix().frobenius_sqr()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector<T> {
    s: [T; 3],
}

impl<T: Real> BlochVector<T> {
    pub fn new(s: [T; 3]) -> Result<Self> {
        let len = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        if !(len <= T::one() + T::tol(tol::BLOCH)) {
            return Err(domain(format!("Bloch vector length {len} exceeds 1")));
        }
        Ok(Self { s })
    }

    pub fn components(&self) -> [T; 3] {
        self.s
    }

    pub fn length(&self) -> T {
        self.s.iter().map(|&x| x * x).sum::<T>().sqrt()
    }
}

/// Pauli matrices `σ_x, σ_y, σ_z`.
pub fn pauli<T: Real>() -> [ComplexMatrix<T>; 3] {
    let (o, z, i) = (C::one(), C::zero(), C::i());
    [
        ComplexMatrix::from_rows(vec![vec![z, o], vec![o, z]]).unwrap(),
        ComplexMatrix::from_rows(vec![vec![z, -i], vec![i, z]]).unwrap(),
        ComplexMatrix::from_rows(vec![vec![o, z], vec![z, -o]]).unwrap(),
    ]
}

/// `ρ = (I + s·σ)/2`.
pub fn from_bloch<T: Real>(s: &BlochVector<T>) -> Result<DensityMatrix<T>> {
    let mut m = ComplexMatrix::identity(2);
    for (sigma, &sk) in pauli::<T>().iter().zip(&s.components()) {
        m.accumulate(&sigma.scale_real(sk))?;
    }
    DensityMatrix::new(m.scale_real(T::lit(0.5)))
}

/// Reads `s_k = tr(ρ σ_k)` back from a qubit state.
pub fn bloch_vector<T: Real>(rho: &DensityMatrix<T>) -> Result<BlochVector<T>> {
    check_dim(2, rho.dim())?;
    let p = pauli::<T>();
    let comp = |k: usize| rho.matrix().matmul(&p[k]).map(|m| m.trace().re);
    BlochVector::new([comp(0)?, comp(1)?, comp(2)?])
}

/// Counter-based generator for one independent stream of a seeded run.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    C::new(T::standard_normal(rng), T::standard_normal(rng))
}

/// Haar-random pure state from a normalized complex Gaussian column.
pub fn random_pure_with<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix<T>> {
    if d < 2 {
        return Err(domain(format!("random states need d >= 2, got {d}")));
    }
    let psi = ComplexVector::new((0..d).map(|_| gaussian_complex(rng)).collect());
    DensityMatrix::pure(&psi)
}

pub fn random_pure<T: Real>(d: usize, seed: u64) -> Result<DensityMatrix<T>> {
    random_pure_with(d, &mut stream_rng(seed, 0))
}

/// Ginibre-ensemble state `GG†/tr(GG†)` with `G` a `d×rank` Gaussian matrix.
pub fn random_mixed_with<T: Real, R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix<T>> {
    if d == 0 || rank == 0 || rank > d {
        return Err(domain(format!("rank {rank} outside 1..={d}")));
    }
    let g = ComplexMatrix::<T>::from_fn(d, rank, |_, _| gaussian_complex(rng));
    let w = g.matmul(&g.adjoint())?;
    let tr = w.trace().re;
    DensityMatrix::new(w.hermitian_part()?.scale_real(tr.recip()))
}

pub fn random_mixed<T: Real>(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix<T>> {
    random_mixed_with(d, rank, &mut stream_rng(seed, 0))
}
