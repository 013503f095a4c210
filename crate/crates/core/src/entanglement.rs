//! Entanglement detection with a product SIC-POVM.
//!
//! Party A measures the SIC, party B measures its complex conjugate (in the
//! computational basis). The correlation `G = Σ_j P(j, j)` cannot exceed
//! `2/(d(d+1))` on separable states, while the maximally entangled state
//! reaches `1/d`.

use crate::bounds::BoundReport;
use crate::error::{check_dim, domain, Error, Result};
use crate::linalg::{conj_vector, ComplexMatrix, ComplexVector};
use crate::measurements::{Measurement, SicPovm};
use crate::scalar::{Real, C};
use crate::states::DensityMatrix;
use crate::tol;

/// Rank-one POVM on `H ⊗ H` with elements `(1/d²)|φ_i φ_j*⟩⟨φ_i φ_j*|`,
/// stored at index `i·d² + j`.
#[derive(Clone, Debug)]
pub struct BipartitePovm<T> {
    vectors: Vec<ComplexVector<T>>,
    local_dim: usize,
}

impl<T: Real> BipartitePovm<T> {
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Scaled vectors `(1/d)|φ_i⟩ ⊗ |φ_j*⟩`.
    pub fn vectors(&self) -> &[ComplexVector<T>] {
        &self.vectors
    }

    pub fn element(&self, i: usize, j: usize) -> ComplexMatrix<T> {
        let v = &self.vectors[i * self.local_dim * self.local_dim + j];
        v.outer(v)
    }

    /// Max entrywise deviation of `Σ_ij M_ij` from the identity.
    pub fn completeness_deviation(&self) -> T {
        let n = self.local_dim * self.local_dim;
        let mut sum = ComplexMatrix::zeros(n, n);
        for v in &self.vectors {
            sum.accumulate(&v.outer(v)).expect("equal dimensions");
        }
        sum.max_abs_diff(&ComplexMatrix::identity(n)).expect("equal dimensions")
    }
}

impl<T: Real> Measurement<T> for BipartitePovm<T> {
    fn dim(&self) -> usize {
        self.local_dim * self.local_dim
    }

    fn outcome_count(&self) -> usize {
        self.vectors.len()
    }

    fn raw_probabilities(&self, rho: &DensityMatrix<T>) -> Vec<T> {
        self.vectors.iter().map(|v| rho.expectation(v).expect("dimension checked")).collect()
    }
}

pub fn product_sic_povm<T: Real>(sic: &SicPovm<T>) -> Result<BipartitePovm<T>> {
    let d = sic.dim();
    let w = T::from_usize_exact(d).recip();
    let conj: Vec<_> = sic.kets().iter().map(conj_vector).collect();
    let vectors = sic.kets().iter().flat_map(|a| conj.iter().map(move |b| a.kron(b).scale_real(w))).collect();
    let povm = BipartitePovm { vectors, local_dim: d };
    let dev = povm.completeness_deviation();
    if dev > T::tol(tol::SIC) {
        return Err(Error::Construction(format!("product POVM is incomplete (deviation {dev:e})")));
    }
    Ok(povm)
}

/// `|Φ₊⟩⟨Φ₊|` with `|Φ₊⟩ = d^(-1/2) Σ_n |n⟩ ⊗ |n⟩`.
pub fn maximally_entangled<T: Real>(d: usize) -> Result<DensityMatrix<T>> {
    if d < 2 {
        return Err(domain(format!("maximally entangled state needs d ≥ 2, got {d}")));
    }
    let amp = C::new(T::from_usize_exact(d).sqrt().recip(), T::zero());
    let mut psi = ComplexVector::zeros(d * d);
    for n in 0..d {
        psi[n * d + n] = amp;
    }
    DensityMatrix::pure(&psi)
}

/// `G = Σ_j P(j, j)`.
pub fn correlation_g<T: Real>(povm: &BipartitePovm<T>, rho: &DensityMatrix<T>) -> Result<T> {
    let n = povm.local_dim * povm.local_dim;
    check_dim(n, rho.dim())?;
    let mut g = T::zero();
    for j in 0..n {
        g = g + rho.expectation(&povm.vectors[j * n + j])?;
    }
    Ok(g)
}

/// `√(purity_A + 1)·√(purity_B + 1)/(d(d+1))`, the largest `G` a product
/// state with these local purities can produce.
pub fn separable_bound<T: Real>(d: usize, purity_a: T, purity_b: T) -> Result<T> {
    if d == 0 {
        return Err(domain("dimension must be positive"));
    }
    let df = T::from_usize_exact(d);
    let lo = df.recip() - T::tol(1e-12);
    let hi = T::one() + T::tol(1e-12);
    for p in [purity_a, purity_b] {
        if !(p >= lo && p <= hi) {
            return Err(domain(format!("purity {p} outside [1/{d}, 1]")));
        }
    }
    Ok((purity_a + T::one()).sqrt() * (purity_b + T::one()).sqrt() / (df * (df + T::one())))
}

/// `2/(d(d+1))`, valid for every separable state.
pub fn universal_separable_bound<T: Real>(d: usize) -> Result<T> {
    separable_bound(d, T::one(), T::one())
}

/// Reports `G` against the universal bound; `true` means `G` exceeds it by
/// more than `1e-12`, which certifies entanglement. A `false` result says
/// nothing about separability.
pub fn detect_entanglement<T: Real>(sic: &SicPovm<T>, rho: &DensityMatrix<T>) -> Result<(bool, BoundReport<T>)> {
    let d = sic.dim();
    let povm = product_sic_povm(sic)?;
    let g = correlation_g(&povm, rho)?;
    let bound = universal_separable_bound(d)?;
    let tol = T::tol(1e-12);
    Ok((g > bound + tol, BoundReport::upper("ENT-G", g, bound, tol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurements::{sic_from_fiducial, Fiducial};
    use crate::states::{purity, random_mixed};

    fn sic(d: usize) -> SicPovm<f64> {
        sic_from_fiducial(d, Fiducial::Builtin).unwrap()
    }

    #[test]
    fn product_povm_structure() {
        for d in [2usize, 3] {
            let p = product_sic_povm(&sic(d)).unwrap();
            assert_eq!(p.outcome_count(), d.pow(4));
            assert!(p.completeness_deviation() < 1e-12);
            for i in 0..d * d {
                for j in 0..d * d {
                    let tr = p.element(i, j).trace();
                    assert!((tr.re - 1.0 / (d * d) as f64).abs() < 1e-14 && tr.im.abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn product_states_factorize() {
        let s = sic(3);
        let p = product_sic_povm(&s).unwrap();
        for seed in 0..20 {
            let a = random_mixed::<f64>(3, 2, seed).unwrap();
            let b = random_mixed::<f64>(3, 3, seed + 1000).unwrap();
            let joint = p.probabilities(&a.tensor(&b)).unwrap();
            let pa = s.probabilities(&a).unwrap();
            // Party B sees the conjugate SIC, i.e. the SIC applied to ρ_B*.
            let b_conj = DensityMatrix::new(ComplexMatrix::from_fn(3, 3, |i, j| b.matrix()[(i, j)].conj())).unwrap();
            let pb = s.probabilities(&b_conj).unwrap();
            for i in 0..9 {
                for j in 0..9 {
                    assert!((joint.values()[i * 9 + j] - pa.values()[i] * pb.values()[j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn maximally_entangled_state() {
        let bell = maximally_entangled::<f64>(2).unwrap();
        let h = 0.5;
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((bell.matrix()[(i, j)].re - h).abs() < 1e-15);
        }
        for d in [2usize, 3, 5] {
            let phi = maximally_entangled::<f64>(d).unwrap();
            let mixed = DensityMatrix::<f64>::maximally_mixed(d);
            assert!(phi.partial_trace_a(d, d).unwrap().matrix().max_abs_diff(mixed.matrix()).unwrap() < 1e-13);
            assert!(phi.partial_trace_b(d, d).unwrap().matrix().max_abs_diff(mixed.matrix()).unwrap() < 1e-13);
        }
        assert!(maximally_entangled::<f64>(1).is_err());
        let s = sic(3);
        let phi = maximally_entangled::<f64>(3).unwrap();
        for k in s.kets() {
            let v = k.kron(&conj_vector(k));
            assert!((phi.expectation(&v).unwrap().sqrt() - 1.0 / 3f64.sqrt()).abs() < 1e-13);
        }
    }

    #[test]
    fn correlation_examples() {
        for d in [2usize, 3] {
            let p = product_sic_povm(&sic(d)).unwrap();
            let df = d as f64;
            let g = correlation_g(&p, &maximally_entangled(d).unwrap()).unwrap();
            assert!((g - 1.0 / df).abs() < 1e-12);
            let mixed = DensityMatrix::<f64>::maximally_mixed(d);
            let g = correlation_g(&p, &mixed.tensor(&mixed)).unwrap();
            assert!((g - 1.0 / (df * df)).abs() < 1e-13);
        }
    }

    #[test]
    fn separable_bound_examples() {
        for d in [2usize, 3, 5] {
            let df = d as f64;
            assert!((universal_separable_bound::<f64>(d).unwrap() - 2.0 / (df * (df + 1.0))).abs() < 1e-15);
            assert!((separable_bound(d, 1.0 / df, 1.0 / df).unwrap() - 1.0 / (df * df)).abs() < 1e-15);
        }
        assert!((universal_separable_bound::<f64>(2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(separable_bound(2, 0.2, 1.0).is_err());
    }

    #[test]
    fn product_states_respect_bounds_and_go_undetected() {
        for d in [2usize, 3] {
            let s = sic(d);
            let p = product_sic_povm(&s).unwrap();
            for seed in 0..300 {
                let a = random_mixed::<f64>(d, 1 + seed as usize % d, seed).unwrap();
                let b = random_mixed::<f64>(d, 1 + (seed as usize / d) % d, seed + 7919).unwrap();
                let joint = a.tensor(&b);
                let g = correlation_g(&p, &joint).unwrap();
                assert!((0.0..=1.0).contains(&g));
                assert!(g <= separable_bound(d, purity(&a), purity(&b)).unwrap() + 1e-12);
                let (hit, report) = detect_entanglement(&s, &joint).unwrap();
                assert!(!hit && report.passed());
            }
            assert!(detect_entanglement(&s, &maximally_entangled(d).unwrap()).unwrap().0);
        }
    }

    #[test]
    fn isotropic_threshold_by_bisection() {
        for d in [2usize, 3] {
            let s = sic(d);
            let p = product_sic_povm(&s).unwrap();
            let phi = maximally_entangled::<f64>(d).unwrap();
            let noise = DensityMatrix::maximally_mixed(d * d);
            let g_at = |l: f64| correlation_g(&p, &phi.mix(&noise, l).unwrap()).unwrap();
            let (g0, g1) = (g_at(0.0), g_at(1.0));
            for k in 0..=10 {
                let l = k as f64 / 10.0;
                assert!((g_at(l) - (l * g1 + (1.0 - l) * g0)).abs() < 1e-12);
            }
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if detect_entanglement(&s, &phi.mix(&noise, mid).unwrap()).unwrap().0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let bound = universal_separable_bound::<f64>(d).unwrap();
            let linear = (bound - g0) / (g1 - g0);
            assert!((hi - linear).abs() < 1e-9, "d = {d}: {hi} vs {linear}");
        }
    }
}
