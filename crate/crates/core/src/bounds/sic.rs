use super::{checked_order, checked_purity, renyi_prefactor, BoundReport};
use crate::entropy::{alpha_log, binary_tsallis, entropy, EntropyKind, EntropyOrder};
use crate::error::{domain, Error, Result};
use crate::measurements::ProbDist;
use crate::scalar::Real;
use crate::tol;

/// Exact index of coincidence of SIC statistics: `(purity + 1)/(d(d+1))`.
pub fn sic_index_of_coincidence<T: Real>(d: usize, purity: T) -> Result<T> {
    let p = checked_purity(d, purity)?;
    let d = T::from_usize_exact(d);
    Ok((p + T::one()) / (d * (d + T::one())))
}

/// `d(d+1)/(purity + 1)`, the inverse coincidence index.
fn sic_argument<T: Real>(d: usize, purity: T, state_independent: bool) -> Result<T> {
    let p = if state_independent { T::one() } else { purity };
    Ok(sic_index_of_coincidence(d, p)?.recip())
}

/// Lower bound on the Tsallis `α`-entropy of SIC statistics, `α ∈ (0, 2]`.
pub fn sic_tsallis_bound<T: Real>(d: usize, order: EntropyOrder<T>, purity: T, state_independent: bool) -> Result<T> {
    checked_order(order, 0.0, 2.0, "SIC Tsallis")?;
    alpha_log(sic_argument(d, purity, state_independent)?, order)
}

pub fn sic_tsallis_bound_inefficiency<T: Real>(
    d: usize,
    order: EntropyOrder<T>,
    purity: T,
    eta: T,
    state_independent: bool,
) -> Result<T> {
    let base = sic_tsallis_bound(d, order, purity, state_independent)?;
    let h = binary_tsallis(eta, order)?;
    Ok(eta.powf(order.value()) * base + h)
}

/// Lower bound on the Rényi `α`-entropy of SIC statistics, `α ∈ [2, ∞]`.
///
/// The value depends on the purity; `state_independent` substitutes
/// `purity = 1`.
pub fn sic_renyi_bound<T: Real>(d: usize, order: EntropyOrder<T>, purity: T, state_independent: bool) -> Result<T> {
    let alpha = checked_order(order, 2.0, f64::INFINITY, "SIC Rényi")?;
    Ok(renyi_prefactor(alpha) * sic_argument(d, purity, state_independent)?.ln())
}

/// Lower bound on the min-entropy of SIC statistics.
pub fn sic_minentropy_bound<T: Real>(d: usize, purity: T) -> Result<T> {
    let p = checked_purity(d, purity)?;
    let df = T::from_usize_exact(d);
    let spread = (df - T::one()).sqrt() * (p * df - T::one()).max(T::zero()).sqrt();
    Ok(T::lit(2.0) * df.ln() - spread.ln_1p())
}

/// The two halves of the max-probability bound for SIC statistics.
#[derive(Clone, Debug)]
pub struct SimpleBounds<T> {
    /// Entropy against `ln_α(1/max p)` (Tsallis) or `-ln max p` (Rényi).
    pub direct: BoundReport<T>,
    /// `ln_α(1/max p)` against `ln_α(d)`, or `-ln max p` against `ln d`.
    pub weak: BoundReport<T>,
}

/// Bounds the entropy of SIC statistics through `max p ≤ 1/d`.
pub fn simple_bounds<T: Real>(
    p: &ProbDist<T>,
    d: usize,
    order: EntropyOrder<T>,
    kind: EntropyKind,
) -> Result<SimpleBounds<T>> {
    if d == 0 {
        return Err(domain("dimension must be positive"));
    }
    let df = T::from_usize_exact(d);
    let max = p.max();
    if max > df.recip() + T::tol(1e-12) {
        return Err(Error::Precondition(format!("max probability {max} exceeds 1/{d}")));
    }
    let lhs = entropy(p, order, kind);
    let (rhs, floor) = match kind {
        EntropyKind::Tsallis => (alpha_log(max.recip(), order)?, alpha_log(df, order)?),
        EntropyKind::Renyi => (-max.ln(), df.ln()),
    };
    let tol = T::tol(tol::BOUND);
    let label = format!("simple-{}", kind.as_str());
    Ok(SimpleBounds {
        direct: BoundReport::lower(label.clone(), lhs, rhs, tol),
        weak: BoundReport::lower(label, rhs, floor, tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{index_of_coincidence, renyi, tsallis};
    use crate::measurements::{sic_from_fiducial, Fiducial, Measurement};
    use crate::states::{purity, random_mixed, DensityMatrix};

    fn ord(a: f64) -> EntropyOrder<f64> {
        EntropyOrder::new(a).unwrap()
    }

    #[test]
    fn coincidence_identity_examples() {
        assert!((sic_index_of_coincidence(2, 1.0f64).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((sic_index_of_coincidence(2, 0.5f64).unwrap() - 0.25).abs() < 1e-15);
        for d in [2usize, 3] {
            let sic = sic_from_fiducial::<f64>(d, Fiducial::Builtin).unwrap();
            for seed in 0..200 {
                let rho = random_mixed::<f64>(d, 1 + seed as usize % d, seed).unwrap();
                let c = index_of_coincidence(&sic.probabilities(&rho).unwrap());
                assert!((c - sic_index_of_coincidence(d, purity(&rho)).unwrap()).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn tsallis_bound_examples() {
        for d in [2usize, 3, 5] {
            let df = d as f64;
            let v = sic_tsallis_bound(d, ord(1.0), 1.0, false).unwrap();
            assert!((v - (df * (df + 1.0) / 2.0).ln()).abs() < 1e-14);
            for a in [0.5, 1.0, 2.0] {
                let mixed = sic_tsallis_bound(d, ord(a), 1.0 / df, false).unwrap();
                let exact = tsallis(&ProbDist::uniform(d * d), ord(a));
                assert!((mixed - alpha_log(df * df, ord(a)).unwrap()).abs() < 1e-13);
                assert!((mixed - exact).abs() < 1e-13);
            }
        }
        assert!((sic_tsallis_bound(2, ord(1.0), 1.0, false).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!(sic_tsallis_bound(2, ord(2.1), 1.0, false).is_err());
    }

    #[test]
    fn renyi_bound_examples() {
        for d in [2usize, 3] {
            let df = d as f64;
            let p = 0.8;
            let two = sic_renyi_bound(d, ord(2.0), p, false).unwrap();
            assert!((two - (df * (df + 1.0) / (p + 1.0)).ln()).abs() < 1e-14);
            let mixed = sic_renyi_bound(d, ord(2.0), 1.0 / df, false).unwrap();
            assert!((mixed - (df * df).ln()).abs() < 1e-14);
            let inf = sic_renyi_bound(d, EntropyOrder::infinity(), 1.0, false).unwrap();
            assert!((inf - 0.5 * (df * (df + 1.0) / 2.0).ln()).abs() < 1e-14);
            assert!(inf < df.ln());
            let indep = sic_renyi_bound(d, ord(3.0), 0.4, true).unwrap();
            assert!((indep - sic_renyi_bound(d, ord(3.0), 1.0, false).unwrap()).abs() < 1e-15);
        }
        assert!(sic_renyi_bound(2, ord(1.9), 1.0, false).is_err());
    }

    #[test]
    fn minentropy_bound_examples() {
        for d in [2usize, 3, 5] {
            let df = d as f64;
            assert!((sic_minentropy_bound(d, 1.0).unwrap() - df.ln()).abs() < 1e-14);
            assert!((sic_minentropy_bound(d, 1.0 / df).unwrap() - 2.0 * df.ln()).abs() < 1e-14);
        }
        let v = sic_minentropy_bound(2, 0.68).unwrap();
        assert!((v - (2.0 * 2f64.ln() - 1.6f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn minentropy_saturation() {
        for d in [2usize, 3] {
            let sic = sic_from_fiducial::<f64>(d, Fiducial::Builtin).unwrap();
            let mixed = sic.probabilities(&DensityMatrix::maximally_mixed(d)).unwrap();
            let b = sic_minentropy_bound(d, 1.0 / d as f64).unwrap();
            assert!((renyi(&mixed, EntropyOrder::infinity()) - b).abs() < 1e-12);
            for ket in sic.kets() {
                let p = sic.probabilities(&DensityMatrix::pure(ket).unwrap()).unwrap();
                let b = sic_minentropy_bound(d, 1.0).unwrap();
                assert!((renyi(&p, EntropyOrder::infinity()) - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bounds_monotone_and_dominating() {
        for d in [2usize, 3, 5] {
            let lo = 1.0 / d as f64;
            let grid: Vec<f64> = (0..=30).map(|k| lo + (1.0 - lo) * k as f64 / 30.0).collect();
            for w in grid.windows(2) {
                for a in [0.4, 1.0, 2.0] {
                    let (x, y) = (
                        sic_tsallis_bound(d, ord(a), w[0], false).unwrap(),
                        sic_tsallis_bound(d, ord(a), w[1], false).unwrap(),
                    );
                    assert!(y <= x + 1e-15);
                    assert!(x >= sic_tsallis_bound(d, ord(a), w[0], true).unwrap() - 1e-15);
                }
                for a in [2.0, 5.0, f64::INFINITY] {
                    let o = EntropyOrder::new(a).unwrap();
                    let (x, y) =
                        (sic_renyi_bound(d, o, w[0], false).unwrap(), sic_renyi_bound(d, o, w[1], false).unwrap());
                    assert!(y <= x + 1e-15);
                    assert!(x >= sic_renyi_bound(d, o, w[0], true).unwrap() - 1e-15);
                }
                assert!(sic_minentropy_bound(d, w[1]).unwrap() <= sic_minentropy_bound(d, w[0]).unwrap() + 1e-15);
            }
        }
    }

    #[test]
    fn simple_bounds_examples() {
        let d = 3;
        let u = ProbDist::<f64>::uniform(9);
        let r = simple_bounds(&u, d, ord(2.0), EntropyKind::Tsallis).unwrap();
        assert!((r.direct.rhs - alpha_log(9.0, ord(2.0)).unwrap()).abs() < 1e-14);
        let r = simple_bounds(&u, d, ord(2.0), EntropyKind::Renyi).unwrap();
        assert!((r.direct.rhs - 2.0 * 3f64.ln()).abs() < 1e-14);
        let sic = sic_from_fiducial::<f64>(d, Fiducial::Builtin).unwrap();
        let fid = sic.probabilities(&DensityMatrix::pure(&sic.kets()[0]).unwrap()).unwrap();
        let r = simple_bounds(&fid, d, ord(0.5), EntropyKind::Tsallis).unwrap();
        assert!((r.direct.rhs - alpha_log(3.0, ord(0.5)).unwrap()).abs() < 1e-14);
        assert!(r.weak.saturated);
        let peaked = ProbDist::new(vec![0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(simple_bounds(&peaked, d, ord(1.0), EntropyKind::Renyi), Err(Error::Precondition(_))));
        for seed in 0..300 {
            let rho = random_mixed::<f64>(d, 1 + seed as usize % d, seed).unwrap();
            let p = sic.probabilities(&rho).unwrap();
            for a in [0.5, 3.0] {
                for kind in [EntropyKind::Renyi, EntropyKind::Tsallis] {
                    let r = simple_bounds(&p, d, ord(a), kind).unwrap();
                    assert!(r.direct.passed() && r.weak.passed());
                }
            }
        }
    }
}
