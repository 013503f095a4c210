use super::{checked_count, checked_order, checked_purity, renyi_prefactor, BoundReport};
use crate::entropy::{alpha_log, binary_tsallis, index_of_coincidence, EntropyKind, EntropyOrder, SymOrderPair};
use crate::error::{check_dim, domain, Result};
use crate::measurements::{Measurement, MubSet};
use crate::scalar::Real;
use crate::states::{purity, DensityMatrix};

/// `M d / (purity·d + M - 1)`, the inverse of the averaged coincidence bound.
fn mub_argument<T: Real>(d: usize, m: usize, purity: T, state_independent: bool) -> Result<T> {
    checked_count(m)?;
    let p = if state_independent { T::one() } else { checked_purity(d, purity)? };
    let (d, m) = (T::from_usize_exact(d), T::from_usize_exact(m));
    Ok(m * d / (p * d + m - T::one()))
}

/// Lower bound on the average Tsallis `α`-entropy over `M` MUBs, `α ∈ (0, 2]`.
pub fn mub_tsallis_bound<T: Real>(
    d: usize,
    m: usize,
    order: EntropyOrder<T>,
    purity: T,
    state_independent: bool,
) -> Result<T> {
    checked_order(order, 0.0, 2.0, "MUB Tsallis")?;
    alpha_log(mub_argument(d, m, purity, state_independent)?, order)
}

/// Same bound for detectors that click with probability `η`.
pub fn mub_tsallis_bound_inefficiency<T: Real>(
    d: usize,
    m: usize,
    order: EntropyOrder<T>,
    purity: T,
    eta: T,
    state_independent: bool,
) -> Result<T> {
    let base = mub_tsallis_bound(d, m, order, purity, state_independent)?;
    let h = binary_tsallis(eta, order)?;
    Ok(eta.powf(order.value()) * base + h)
}

/// Lower bound on the average Rényi `α`-entropy over `M` MUBs, `α ∈ [2, ∞]`.
pub fn mub_renyi_bound<T: Real>(
    d: usize,
    m: usize,
    order: EntropyOrder<T>,
    purity: T,
    state_independent: bool,
) -> Result<T> {
    let alpha = checked_order(order, 2.0, f64::INFINITY, "MUB Rényi")?;
    Ok(renyi_prefactor(alpha) * mub_argument(d, m, purity, state_independent)?.ln())
}

/// Lower bound on the average min-entropy over `M` MUBs.
pub fn mub_minentropy_bound<T: Real>(d: usize, m: usize, purity: T, state_independent: bool) -> Result<T> {
    checked_count(m)?;
    let p = if state_independent { T::one() } else { checked_purity(d, purity)? };
    let (df, mf) = (T::from_usize_exact(d), T::from_usize_exact(m));
    let excess = (p * df - T::one()).max(T::zero());
    let spread = (df - T::one()).sqrt() * excess.sqrt() / mf.sqrt();
    Ok(df.ln() - spread.ln_1p())
}

/// Checks `Σ_m C(B_m|ρ) ≤ tr ρ² + (M-1)/d` with tolerance `1e-12`.
pub fn coincidence_sum_check<T: Real>(mubs: &MubSet<T>, rho: &DensityMatrix<T>) -> Result<BoundReport<T>> {
    check_dim(mubs.dim(), rho.dim())?;
    let mut lhs = T::zero();
    for b in mubs.bases() {
        lhs = lhs + index_of_coincidence(&b.probabilities(rho)?);
    }
    let (d, m) = (T::from_usize_exact(mubs.dim()), T::from_usize_exact(mubs.count()));
    let rhs = purity(rho) + (m - T::one()) / d;
    Ok(BoundReport::upper("LWBM-sum", lhs, rhs, T::tol(1e-12)))
}

/// Lower bound on the MUB-averaged symmetrized entropy.
pub fn mub_symmetrized_bound<T: Real>(d: usize, pair: SymOrderPair<T>, kind: EntropyKind) -> Result<T> {
    if d == 0 {
        return Err(domain("dimension must be positive"));
    }
    let d = T::from_usize_exact(d);
    let half = T::lit(0.5);
    Ok(match kind {
        EntropyKind::Tsallis => half * alpha_log(d, pair.mu())?,
        EntropyKind::Renyi => half * d.ln(),
    })
}
