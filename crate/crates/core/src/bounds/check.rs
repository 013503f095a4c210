use std::fmt;
use std::str::FromStr;

use super::mub::{
    mub_minentropy_bound, mub_renyi_bound, mub_symmetrized_bound, mub_tsallis_bound, mub_tsallis_bound_inefficiency,
};
use super::pair::{mu_pair_bounds, riesz_precondition_check};
use super::sic::{
    sic_index_of_coincidence, sic_minentropy_bound, sic_renyi_bound, sic_tsallis_bound, sic_tsallis_bound_inefficiency,
};
use super::{coincidence_sum_check, BoundReport};
use crate::entanglement::{correlation_g, product_sic_povm, universal_separable_bound};
use crate::entropy::{
    index_of_coincidence, max_prob_bound, renyi, symmetrized, tsallis, EntropyKind, EntropyOrder, SymOrderPair,
};
use crate::error::{check_dim, Error, Result};
use crate::linalg::ComplexVector;
use crate::measurements::{Measurement, MubSet, ProbDist, RankOnePovm, SicPovm};
use crate::scalar::Real;
use crate::states::{purity, stream_rng, DensityMatrix};
use crate::tol;

/// Identifiers of the checks [`check_bound`] can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proposition {
    MubTsallis,
    MubRenyi,
    MubMinEntropy,
    MubSymmetrized,
    SicCoincidence,
    SicTsallis,
    SicRenyi,
    SicMinEntropy,
    PairMaassenUffink,
    CoincidenceSum,
    MaxProbability,
    RieszPrecondition,
    EntanglementG,
}

impl Proposition {
    pub const ALL: [Self; 13] = [
        Self::MubTsallis,
        Self::MubRenyi,
        Self::MubMinEntropy,
        Self::MubSymmetrized,
        Self::SicCoincidence,
        Self::SicTsallis,
        Self::SicRenyi,
        Self::SicMinEntropy,
        Self::PairMaassenUffink,
        Self::CoincidenceSum,
        Self::MaxProbability,
        Self::RieszPrecondition,
        Self::EntanglementG,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::MubTsallis => "P1-mub-tsallis",
            Self::MubRenyi => "P2-mub-renyi",
            Self::MubMinEntropy => "P3-mub-minent",
            Self::MubSymmetrized => "P4-mub-sym",
            Self::SicCoincidence => "P5-sic-ic",
            Self::SicTsallis => "P6-sic-tsallis",
            Self::SicRenyi => "P7-sic-renyi",
            Self::SicMinEntropy => "P8-sic-minent",
            Self::PairMaassenUffink => "P9-mu-pair",
            Self::CoincidenceSum => "LWBM-sum",
            Self::MaxProbability => "APXA-max",
            Self::RieszPrecondition => "APXB-riesz",
            Self::EntanglementG => "ENT-G",
        }
    }

    /// Whether the check reads [`BoundParams::order`].
    pub fn uses_order(self) -> bool {
        matches!(self, Self::MubTsallis | Self::MubRenyi | Self::SicTsallis | Self::SicRenyi)
    }

    /// Whether the check reads [`BoundParams::sym`] and [`BoundParams::kind`].
    pub fn uses_sym(self) -> bool {
        matches!(self, Self::MubSymmetrized | Self::PairMaassenUffink)
    }

    /// Whether the check reads [`BoundParams::eta`].
    pub fn uses_eta(self) -> bool {
        matches!(self, Self::MubTsallis | Self::SicTsallis)
    }

    /// Admissible order range `[lo, hi]` for checks that take an order.
    pub fn order_range(self) -> Option<(f64, f64)> {
        match self {
            Self::MubTsallis | Self::SicTsallis => Some((0.0, 2.0)),
            Self::MubRenyi | Self::SicRenyi => Some((2.0, f64::INFINITY)),
            _ => None,
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Proposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// The measurement family a check runs against.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a, T> {
    Mubs(&'a MubSet<T>),
    Sic(&'a SicPovm<T>),
    Pair(&'a RankOnePovm<T>, &'a RankOnePovm<T>),
}

/// Parameters for [`check_bound`]; fields a proposition does not use are ignored.
#[derive(Clone, Copy, Debug)]
pub struct BoundParams<T> {
    pub order: EntropyOrder<T>,
    pub sym: SymOrderPair<T>,
    pub kind: EntropyKind,
    /// Detector efficiency; `None` means ideal detectors.
    pub eta: Option<T>,
    pub state_independent: bool,
    pub tolerance: T,
    /// Seed for the random inputs of the contraction check.
    pub seed: u64,
    /// Number of random inputs for the contraction check.
    pub trials: usize,
}

impl<T: Real> Default for BoundParams<T> {
    fn default() -> Self {
        Self {
            order: EntropyOrder::shannon(),
            sym: SymOrderPair::new(T::zero()).expect("s = 0 is valid"),
            kind: EntropyKind::Tsallis,
            eta: None,
            state_independent: false,
            tolerance: T::tol(tol::BOUND),
            seed: 0,
            trials: 16,
        }
    }
}

impl<T: Real> BoundParams<T> {
    pub fn with_order(order: EntropyOrder<T>) -> Self {
        Self { order, ..Self::default() }
    }
}

fn wrong_target(prop: Proposition, want: &str) -> Error {
    Error::Precondition(format!("{prop} needs {want}"))
}

fn distorted<T: Real>(p: ProbDist<T>, eta: Option<T>) -> Result<ProbDist<T>> {
    match eta {
        Some(eta) => p.distort(eta),
        None => Ok(p),
    }
}

/// Evaluates the quantity a proposition constrains on `rho` and compares it
/// with the matching bound.
///
/// MUB checks average over the bases of the set, SIC checks use the single
/// SIC distribution and pair checks sum the two entropies. `ENT-G` expects a
/// state on the two-party space of the SIC's dimension and compares the
/// correlation `G` with the universal separable bound.
pub fn check_bound<T: Real>(
    target: Target<'_, T>,
    rho: &DensityMatrix<T>,
    prop: Proposition,
    params: &BoundParams<T>,
) -> Result<BoundReport<T>> {
    let tol = params.tolerance;
    let label = prop.label();
    let pur = purity(rho);
    match prop {
        Proposition::MubTsallis | Proposition::MubRenyi | Proposition::MubMinEntropy | Proposition::MubSymmetrized => {
            let Target::Mubs(mubs) = target else { return Err(wrong_target(prop, "a MUB set")) };
            check_dim(mubs.dim(), rho.dim())?;
            let (d, m) = (mubs.dim(), mubs.count());
            let eta = if prop == Proposition::MubTsallis { params.eta } else { None };
            let mut sum = T::zero();
            for b in mubs.bases() {
                let p = distorted(b.probabilities(rho)?, eta)?;
                sum = sum
                    + match prop {
                        Proposition::MubTsallis => tsallis(&p, params.order),
                        Proposition::MubRenyi => renyi(&p, params.order),
                        Proposition::MubMinEntropy => renyi(&p, EntropyOrder::infinity()),
                        _ => symmetrized(&p, params.sym, params.kind),
                    };
            }
            let lhs = sum / T::from_usize_exact(m);
            let si = params.state_independent;
            let rhs = match prop {
                Proposition::MubTsallis => match eta {
                    Some(eta) => mub_tsallis_bound_inefficiency(d, m, params.order, pur, eta, si)?,
                    None => mub_tsallis_bound(d, m, params.order, pur, si)?,
                },
                Proposition::MubRenyi => mub_renyi_bound(d, m, params.order, pur, si)?,
                Proposition::MubMinEntropy => mub_minentropy_bound(d, m, pur, si)?,
                _ => mub_symmetrized_bound(d, params.sym, params.kind)?,
            };
            let label = if prop == Proposition::MubSymmetrized {
                format!("{label}/{}", params.kind.as_str())
            } else {
                label.to_string()
            };
            Ok(BoundReport::lower(label, lhs, rhs, tol))
        }
        Proposition::CoincidenceSum => {
            let Target::Mubs(mubs) = target else { return Err(wrong_target(prop, "a MUB set")) };
            let r = coincidence_sum_check(mubs, rho)?;
            Ok(BoundReport::upper(label, r.lhs, r.rhs, tol))
        }
        Proposition::SicCoincidence | Proposition::SicTsallis | Proposition::SicRenyi | Proposition::SicMinEntropy => {
            let Target::Sic(sic) = target else { return Err(wrong_target(prop, "a SIC-POVM")) };
            check_dim(sic.dim(), rho.dim())?;
            let d = sic.dim();
            let p = sic.probabilities(rho)?;
            let si = params.state_independent;
            Ok(match prop {
                Proposition::SicCoincidence => BoundReport::new(
                    label,
                    super::Relation::Equal,
                    index_of_coincidence(&p),
                    sic_index_of_coincidence(d, pur)?,
                    tol,
                ),
                Proposition::SicTsallis => {
                    let (lhs, rhs) = match params.eta {
                        Some(eta) => (
                            tsallis(&p.distort(eta)?, params.order),
                            sic_tsallis_bound_inefficiency(d, params.order, pur, eta, si)?,
                        ),
                        None => (tsallis(&p, params.order), sic_tsallis_bound(d, params.order, pur, si)?),
                    };
                    BoundReport::lower(label, lhs, rhs, tol)
                }
                Proposition::SicRenyi => {
                    BoundReport::lower(label, renyi(&p, params.order), sic_renyi_bound(d, params.order, pur, si)?, tol)
                }
                _ => BoundReport::lower(label, renyi(&p, EntropyOrder::infinity()), sic_minentropy_bound(d, pur)?, tol),
            })
        }
        Proposition::PairMaassenUffink => {
            let Target::Pair(m, n) = target else { return Err(wrong_target(prop, "a pair of rank-one POVMs")) };
            let r = mu_pair_bounds(m, n, rho, params.sym.alpha(), params.sym.beta())?;
            let report = match params.kind {
                EntropyKind::Tsallis => r.tsallis,
                EntropyKind::Renyi => r.renyi,
            };
            Ok(BoundReport::lower(report.label, report.lhs, report.rhs, tol))
        }
        Proposition::MaxProbability => {
            let dists: Vec<ProbDist<T>> = match target {
                Target::Mubs(mubs) => mubs.bases().iter().map(|b| b.probabilities(rho)).collect::<Result<_>>()?,
                Target::Sic(sic) => vec![sic.probabilities(rho)?],
                Target::Pair(m, n) => vec![m.probabilities(rho)?, n.probabilities(rho)?],
            };
            let mut worst: Option<BoundReport<T>> = None;
            for p in dists {
                let rhs = max_prob_bound(p.len(), index_of_coincidence(&p))?;
                let r = BoundReport::upper(label, p.max(), rhs, tol);
                worst = Some(match worst {
                    Some(w) => w.worst(r),
                    None => r,
                });
            }
            Ok(worst.expect("at least one distribution"))
        }
        Proposition::RieszPrecondition => {
            let Target::Pair(m, n) = target else { return Err(wrong_target(prop, "a pair of rank-one POVMs")) };
            let u: Vec<T> = n.probabilities(rho)?.values().iter().map(|p| p.sqrt()).collect();
            let mut rng = stream_rng(params.seed, 0);
            let r = riesz_precondition_check(m, n, rho, &ComplexVector::from_real(&u), params.trials, &mut rng)?;
            Ok(BoundReport::upper(label, r.lhs, r.rhs, tol))
        }
        Proposition::EntanglementG => {
            let Target::Sic(sic) = target else { return Err(wrong_target(prop, "a SIC-POVM")) };
            let d = sic.dim();
            check_dim(d * d, rho.dim())?;
            let povm = product_sic_povm(sic)?;
            Ok(BoundReport::upper(label, correlation_g(&povm, rho)?, universal_separable_bound(d)?, tol))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurements::{mub_construct, sic_from_fiducial, Fiducial};
    use crate::states::{from_bloch, random_mixed, BlochVector};

    #[test]
    fn labels_round_trip() {
        for p in Proposition::ALL {
            assert_eq!(p.label().parse::<Proposition>().unwrap(), p);
        }
        assert!(matches!("P10-nope".parse::<Proposition>(), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn minentropy_saturated_at_maximally_mixed_qubit() {
        let sic = sic_from_fiducial::<f64>(2, Fiducial::Builtin).unwrap();
        let r = check_bound(
            Target::Sic(&sic),
            &DensityMatrix::maximally_mixed(2),
            Proposition::SicMinEntropy,
            &BoundParams::default(),
        )
        .unwrap();
        assert!(r.saturated && r.passed());
    }

    #[test]
    fn collision_bound_saturated_at_fiducial_bloch_state() {
        let set = mub_construct::<f64>(2, 3).unwrap();
        let r = 1.0 / 3f64.sqrt();
        let rho = from_bloch(&BlochVector::new([r, r, r]).unwrap()).unwrap();
        let params = BoundParams::with_order(EntropyOrder::new(2.0).unwrap());
        let rep = check_bound(Target::Mubs(&set), &rho, Proposition::MubRenyi, &params).unwrap();
        assert!(rep.saturated, "{rep}");
    }

    #[test]
    fn tsallis_campaign_cell_passes() {
        let set = mub_construct::<f64>(3, 4).unwrap();
        let params = BoundParams::with_order(EntropyOrder::new(1.5).unwrap());
        for seed in 0..200 {
            let rho = random_mixed::<f64>(3, 1 + seed as usize % 3, seed).unwrap();
            let r = check_bound(Target::Mubs(&set), &rho, Proposition::MubTsallis, &params).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn wrong_target_and_order_rejected() {
        let set = mub_construct::<f64>(3, 4).unwrap();
        let rho = DensityMatrix::maximally_mixed(3);
        let p = BoundParams::default();
        assert!(matches!(
            check_bound(Target::Mubs(&set), &rho, Proposition::SicTsallis, &p),
            Err(Error::Precondition(_))
        ));
        let p = BoundParams::with_order(EntropyOrder::new(3.0).unwrap());
        assert!(matches!(check_bound(Target::Mubs(&set), &rho, Proposition::MubTsallis, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn entanglement_check_flags_maximally_entangled() {
        let sic = sic_from_fiducial::<f64>(2, Fiducial::Builtin).unwrap();
        let phi = crate::entanglement::maximally_entangled::<f64>(2).unwrap();
        let r = check_bound(Target::Sic(&sic), &phi, Proposition::EntanglementG, &BoundParams::default()).unwrap();
        assert!(!r.passed());
        assert!((r.lhs - 0.5).abs() < 1e-12);
    }
}
