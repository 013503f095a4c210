use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Measurement;
use crate::error::{check_dim, domain, Error, Result};
use crate::linalg::{conj_vector, ComplexMatrix, ComplexVector};
use crate::scalar::{Real, C};
use crate::states::DensityMatrix;
use crate::tol;

/// SIC-POVM stored by its `d²` unit kets; elements are `(1/d)|φ_j⟩⟨φ_j|`.
#[derive(Clone, Debug)]
pub struct SicPovm<T> {
    kets: Vec<ComplexVector<T>>,
    dim: usize,
}

impl<T: Real> SicPovm<T> {
    /// Verifies unit norms, pairwise overlaps `1/(d+1)` and completeness,
    /// all within [`tol::SIC`].
    pub fn new(kets: Vec<ComplexVector<T>>) -> Result<Self> {
        let dim = kets.first().map(ComplexVector::dim).ok_or_else(|| domain("empty SIC"))?;
        check_dim(dim * dim, kets.len())?;
        for k in &kets {
            check_dim(dim, k.dim())?;
        }
        let sic = Self { kets, dim };
        let worst = sic.worst_deviation();
        let tolerance = tol::SIC;
        if !(worst.to_f64_lossy() <= T::tol(tolerance).to_f64_lossy()) {
            return Err(Error::NotASic { worst_deviation: worst.to_f64_lossy(), tolerance });
        }
        Ok(sic)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kets(&self) -> &[ComplexVector<T>] {
        &self.kets
    }

    /// Largest violation among norms, pairwise overlaps and completeness.
    pub fn worst_deviation(&self) -> T {
        let d = T::from_usize_exact(self.dim);
        let target = (d + T::one()).recip();
        let mut worst = T::zero();
        for (i, a) in self.kets.iter().enumerate() {
            worst = worst.max((a.norm_sqr() - T::one()).abs());
            for b in &self.kets[i + 1..] {
                let o = a.inner(b).expect("equal dimensions").norm_sqr();
                worst = worst.max((o - target).abs());
            }
        }
        worst.max(self.completeness_deviation())
    }

    /// Max entrywise deviation of `(1/d)Σ|φ_j⟩⟨φ_j|` from the identity.
    pub fn completeness_deviation(&self) -> T {
        let d = self.dim;
        let mut sum = ComplexMatrix::zeros(d, d);
        for k in &self.kets {
            sum.accumulate(&k.outer(k)).expect("equal dimensions");
        }
        sum.scale_real(T::from_usize_exact(d).recip()).max_abs_diff(&ComplexMatrix::identity(d)).expect("square")
    }

    pub fn elements(&self) -> Vec<ComplexMatrix<T>> {
        let w = T::from_usize_exact(self.dim).recip();
        self.kets.iter().map(|k| k.outer(k).scale_real(w)).collect()
    }

    /// The SIC `{U|φ_j⟩}` for a unitary `U`.
    pub fn rotated(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        check_dim(self.dim, u.rows())?;
        let unitarity = u.adjoint().matmul(u)?.max_abs_diff(&ComplexMatrix::identity(self.dim))?;
        if unitarity > T::tol(tol::GRAM) {
            return Err(domain(format!("rotation is not unitary (deviation {unitarity:e})")));
        }
        Self::new(self.kets.iter().map(|k| u.mul_vec(k)).collect::<Result<_>>()?)
    }
}

impl<T: Real> Measurement<T> for SicPovm<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn outcome_count(&self) -> usize {
        self.kets.len()
    }

    fn raw_probabilities(&self, rho: &DensityMatrix<T>) -> Vec<T> {
        let w = T::from_usize_exact(self.dim).recip();
        self.kets.iter().map(|k| w * rho.expectation(k).expect("dimension checked")).collect()
    }
}

pub enum Fiducial<T> {
    /// Embedded fiducial for `d = 2` or `d = 3`.
    Builtin,
    Custom(ComplexVector<T>),
}

fn builtin_fiducial<T: Real>(d: usize) -> Result<ComplexVector<T>> {
    match d {
        2 => {
            // Bloch vector (1,1,1)/√3.
            let r = T::lit(3.0).sqrt().recip();
            let top = ((T::one() + r) / T::lit(2.0)).sqrt();
            let den = (T::lit(2.0) * (T::one() + r)).sqrt();
            Ok(ComplexVector::new(vec![C::new(top, T::zero()), C::new(r / den, r / den)]))
        }
        3 => {
            let h = T::lit(0.5).sqrt();
            Ok(ComplexVector::from_real(&[T::zero(), h, -h]))
        }
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

/// Orbit `X^a Z^b |f⟩`, `a, b = 0..d-1`, stored at index `a·d + b`, with
/// `X|k⟩ = |k+1 mod d⟩` and `Z|k⟩ = ω^k|k⟩`.
fn weyl_heisenberg_orbit<T: Real>(fiducial: &ComplexVector<T>) -> Vec<ComplexVector<T>> {
    let d = fiducial.dim();
    let step = T::TAU() / T::from_usize_exact(d);
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            out.push(ComplexVector::new(
                (0..d)
                    .map(|k| {
                        let src = (k + d - a) % d;
                        fiducial[src] * C::from_polar(T::one(), step * T::from_usize_exact((b * src) % d))
                    })
                    .collect(),
            ));
        }
    }
    out
}

/// Weyl–Heisenberg covariant SIC from a fiducial ket.
pub fn sic_from_fiducial<T: Real>(d: usize, fiducial: Fiducial<T>) -> Result<SicPovm<T>> {
    let f = match fiducial {
        Fiducial::Builtin => builtin_fiducial(d)?,
        Fiducial::Custom(v) => v,
    };
    check_dim(d, f.dim())?;
    let n = f.norm();
    if (n - T::one()).abs() > T::tol(tol::FIDUCIAL_NORM) {
        return Err(domain(format!("fiducial norm is {n}, expected 1")));
    }
    SicPovm::new(weyl_heisenberg_orbit(&f))
}

#[derive(Clone, Copy, Debug)]
pub struct SicConsequences<T> {
    /// `|(1/d²)ΣΣ⟨φ_i|A|φ_j⟩⟨φ_j|φ_i⟩ - tr A|`
    pub trace_deviation: T,
    /// max entry of `|(1/d)Σ|φ_j⟩⟨φ_j|ψ⟩ - |ψ⟩|`
    pub reconstruction_deviation: T,
    pub tolerance: T,
    pub passed: bool,
}

/// Checks the trace and resolution-of-identity consequences of completeness.
pub fn sic_consequences_check<T: Real>(
    sic: &SicPovm<T>,
    a: &ComplexMatrix<T>,
    psi: &ComplexVector<T>,
) -> Result<SicConsequences<T>> {
    let d = sic.dim();
    check_dim(d, a.rows())?;
    check_dim(d, a.cols())?;
    check_dim(d, psi.dim())?;
    let df = T::from_usize_exact(d);

    let a_kets: Vec<ComplexVector<T>> = sic.kets.iter().map(|k| a.mul_vec(k)).collect::<Result<_>>()?;
    let mut double = C::zero();
    for phi_i in &sic.kets {
        for (phi_j, a_phi_j) in sic.kets.iter().zip(&a_kets) {
            double = double + phi_i.inner(a_phi_j)? * phi_j.inner(phi_i)?;
        }
    }
    let trace_deviation = (double / (df * df) - a.trace()).norm();

    let mut recon = ComplexVector::zeros(d);
    for phi in &sic.kets {
        recon = recon.add(&phi.scale(phi.inner(psi)?))?;
    }
    let reconstruction_deviation = recon.scale_real(df.recip()).max_abs_diff(psi)?;

    let tolerance = T::tol(1e-10);
    Ok(SicConsequences {
        trace_deviation,
        reconstruction_deviation,
        tolerance,
        passed: trace_deviation <= tolerance && reconstruction_deviation <= tolerance,
    })
}

/// Orthonormal basis of `H⊗H` built from a SIC.
///
/// Returns `|Φ⟩ = d^(-3/2) Σ_j |φ_j⟩⊗|φ_j*⟩` followed by
/// `|Ψ_k⟩ = √(d+1)·d^(-3/2) Σ_j ω^(k·j) |φ_j⟩⊗|φ_j*⟩` for `k = 1..d²-1`,
/// where `j` is the 0-based ket index and `ω = e^(2πi/d²)`.
pub fn sic_design_basis<T: Real>(sic: &SicPovm<T>) -> Result<Vec<ComplexVector<T>>> {
    let d = sic.dim();
    let n = d * d;
    let df = T::from_usize_exact(d);
    let pre = df.powi(3).sqrt().recip();
    let products: Vec<ComplexVector<T>> = sic.kets.iter().map(|k| k.kron(&conj_vector(k))).collect();
    let step = T::TAU() / T::from_usize_exact(n);

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let weight = if k == 0 { pre } else { (df + T::one()).sqrt() * pre };
        let mut acc = ComplexVector::zeros(n);
        for (j, prod) in products.iter().enumerate() {
            let phase = C::from_polar(weight, step * T::from_usize_exact((k * j) % n));
            acc = acc.add(&prod.scale(phase))?;
        }
        out.push(acc);
    }

    let dev = gram_deviation(&out);
    if dev > T::tol(tol::DESIGN_BASIS) {
        return Err(Error::Construction(format!("two-copy basis Gram deviation {dev:e}")));
    }
    Ok(out)
}

pub(crate) fn gram_deviation<T: Real>(vs: &[ComplexVector<T>]) -> T {
    let mut worst = T::zero();
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let target = if i == j { C::one() } else { C::zero() };
            worst = worst.max((a.inner(b).expect("equal dimensions") - target).norm());
        }
    }
    worst
}

/// Fiducial file format `{"dim": d, "re": [...], "im": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiducialJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct LoadedFiducial<T> {
    pub ket: ComplexVector<T>,
    /// Factor the raw vector was multiplied by to reach unit norm.
    pub rescale: T,
}

pub fn parse_fiducial<T: Real>(text: &str) -> Result<LoadedFiducial<T>> {
    let raw: FiducialJson = serde_json::from_str(text)?;
    if raw.dim == 0 {
        return Err(domain("fiducial dim must be positive"));
    }
    check_dim(raw.dim, raw.re.len())?;
    check_dim(raw.dim, raw.im.len())?;
    let re: Vec<T> = raw.re.iter().map(|&x| T::lit(x)).collect();
    let im: Vec<T> = raw.im.iter().map(|&x| T::lit(x)).collect();
    let v = ComplexVector::from_parts(&re, &im)?;
    let n = v.norm();
    if !(n > T::zero()) || !n.is_finite() {
        return Err(domain("fiducial vector has zero or non-finite norm"));
    }
    let rescale = n.recip();
    Ok(LoadedFiducial { ket: v.scale_real(rescale), rescale })
}

pub fn load_fiducial<T: Real>(path: impl AsRef<Path>) -> Result<LoadedFiducial<T>> {
    parse_fiducial(&std::fs::read_to_string(path)?)
}
