//! Reports for the construction and coincidence subcommands.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use eur_core::bounds::sic_index_of_coincidence;
use eur_core::states::DensityMatrixJson;
use eur_core::{
    index_of_coincidence, mub_construct, purity, random_mixed, random_pure, ComplexVector, DensityMatrix64, Measurement,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::families::sic_for;

/// Residual allowed between the two sides of the coincidence identity.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct KetJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&ComplexVector<f64>> for KetJson {
    fn from(v: &ComplexVector<f64>) -> Self {
        Self { re: v.iter().map(|z| z.re).collect(), im: v.iter().map(|z| z.im).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MubReport {
    pub dim: usize,
    pub count: usize,
    pub overlap_deviation: f64,
    pub gram_deviation: f64,
    pub passed: bool,
    pub bases: Vec<Vec<KetJson>>,
}

pub fn mub_report(d: usize, count: usize) -> CliResult<MubReport> {
    let set = mub_construct::<f64>(d, count)?;
    let gram = set.bases().iter().map(|b| b.gram_deviation()).fold(0.0, f64::max);
    let overlap = set.overlap_deviation();
    Ok(MubReport {
        dim: d,
        count,
        overlap_deviation: overlap,
        gram_deviation: gram,
        passed: overlap <= eur_core::tol::MUB_OVERLAP && gram <= eur_core::tol::GRAM,
        bases: set.bases().iter().map(|b| b.vectors().iter().map(KetJson::from).collect()).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SicReport {
    pub dim: usize,
    pub worst_deviation: f64,
    pub completeness_deviation: f64,
    pub kets: Vec<KetJson>,
}

pub fn sic_report(d: usize, fiducial: Option<&Path>) -> CliResult<SicReport> {
    let sic = sic_for(d, fiducial)?;
    Ok(SicReport {
        dim: d,
        worst_deviation: sic.worst_deviation(),
        completeness_deviation: sic.completeness_deviation(),
        kets: sic.kets().iter().map(KetJson::from).collect(),
    })
}

/// Where the coincidence subcommand gets its state.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSource {
    /// `I/d`
    Mixed,
    /// `|0⟩⟨0|`
    Pure,
    RandomPure,
    /// Random mixed state of random rank.
    RandomMixed,
    /// Density matrix JSON file.
    File(PathBuf),
}

impl FromStr for StateSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "mixed" => Self::Mixed,
            "pure" => Self::Pure,
            "random-pure" => Self::RandomPure,
            "random-mixed" => Self::RandomMixed,
            path => Self::File(PathBuf::from(path)),
        })
    }
}

impl StateSource {
    pub fn state(&self, d: usize, seed: u64) -> CliResult<DensityMatrix64> {
        Ok(match self {
            Self::Mixed => DensityMatrix64::maximally_mixed(d),
            Self::Pure => DensityMatrix64::pure(&ComplexVector::basis(d, 0))?,
            Self::RandomPure => random_pure(d, seed)?,
            Self::RandomMixed => random_mixed(d, 1 + (seed % d as u64) as usize, seed)?,
            Self::File(path) => {
                let json: DensityMatrixJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                let rho = DensityMatrix64::from_json(&json)?;
                if rho.dim() != d {
                    return Err(CliError::Core(eur_core::Error::DimensionMismatch { expected: d, found: rho.dim() }));
                }
                rho
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceReport {
    pub dim: usize,
    pub purity: f64,
    /// `Σ p_j²` of the SIC statistics.
    pub lhs: f64,
    /// `(tr ρ² + 1)/(d(d+1))`
    pub rhs: f64,
    pub residual: f64,
}

impl CoincidenceReport {
    pub fn passed(&self) -> bool {
        self.residual <= COINCIDENCE_TOLERANCE
    }
}

pub fn coincidence_report(
    d: usize,
    source: &StateSource,
    seed: u64,
    fiducial: Option<&Path>,
) -> CliResult<CoincidenceReport> {
    let sic = sic_for(d, fiducial)?;
    let rho = source.state(d, seed)?;
    let lhs = index_of_coincidence(&sic.probabilities(&rho)?);
    let pur = purity(&rho);
    let rhs = sic_index_of_coincidence(d, pur)?;
    Ok(CoincidenceReport { dim: d, purity: pur, lhs, rhs, residual: (lhs - rhs).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_coincidence_values() {
        let r = coincidence_report(2, &StateSource::Mixed, 0, None).unwrap();
        assert!((r.lhs - 0.25).abs() < 1e-14 && r.residual <= 1e-14);
        let r = coincidence_report(2, &StateSource::Pure, 0, None).unwrap();
        assert!((r.lhs - 1.0 / 3.0).abs() < 1e-14 && (r.rhs - 1.0 / 3.0).abs() < 1e-15);
        let r = coincidence_report(3, &StateSource::RandomMixed, 9, None).unwrap();
        assert!(r.residual <= 1e-12);
    }

    #[test]
    fn mub_report_shapes() {
        let r = mub_report(3, 4).unwrap();
        assert!(r.passed);
        assert_eq!(r.bases.len(), 4);
        assert!(r.bases.iter().all(|b| b.len() == 3));
        assert!(mub_report(6, 3).is_err());
    }
}
