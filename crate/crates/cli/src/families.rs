//! Measurement families the campaign runs against.

use std::path::Path;

use eur_core::measurements::load_fiducial;
use eur_core::{sic_from_fiducial, Complex64, ComplexMatrix, Fiducial, Matrix64, RankOnePovm, SicPovm64};

use crate::error::CliResult;

/// `exp(-iH)` for the fixed Hermitian `H_jk = (j + k + 1)/d + i(j - k)/d`.
pub fn fixed_unitary(d: usize) -> CliResult<Matrix64> {
    let df = d as f64;
    let h = ComplexMatrix::from_fn(d, d, |j, k| Complex64::new((j + k + 1) as f64 / df, (j as f64 - k as f64) / df));
    let eig = h.eigh()?;
    let mut u = ComplexMatrix::zeros(d, d);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let v = eig.vector(k);
        u.accumulate(&v.outer(&v).scale(Complex64::from_polar(1.0, -lambda)))?;
    }
    Ok(u)
}

/// SIC for `d`: the fiducial file when it matches `d`, the builtin otherwise.
pub fn sic_for(d: usize, fiducial: Option<&Path>) -> CliResult<SicPovm64> {
    if let Some(path) = fiducial {
        let loaded = load_fiducial::<f64>(path)?;
        if loaded.ket.dim() == d {
            return Ok(sic_from_fiducial(d, Fiducial::Custom(loaded.ket))?);
        }
    }
    Ok(sic_from_fiducial(d, Fiducial::Builtin)?)
}

/// A SIC and its image under [`fixed_unitary`], as rank-one POVMs.
pub fn sic_pair(sic: &SicPovm64) -> CliResult<(RankOnePovm<f64>, RankOnePovm<f64>)> {
    let rotated = sic.rotated(&fixed_unitary(sic.dim())?)?;
    Ok((RankOnePovm::from(sic), RankOnePovm::from(&rotated)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_unitary_is_unitary_and_nontrivial() {
        for d in [2usize, 3, 5] {
            let u = fixed_unitary(d).unwrap();
            let id = ComplexMatrix::identity(d);
            assert!(u.adjoint().matmul(&u).unwrap().max_abs_diff(&id).unwrap() < 1e-12);
            assert!(u.max_abs_diff(&id).unwrap() > 0.1);
        }
    }

    #[test]
    fn rotated_pair_is_distinct() {
        let sic = sic_for(2, None).unwrap();
        let (m, n) = sic_pair(&sic).unwrap();
        assert!(m.max_overlap(&n).unwrap() < 0.5 - 1e-6);
    }
}
