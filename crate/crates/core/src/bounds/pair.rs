use rand::Rng;

use super::BoundReport;
use crate::entropy::{alpha_log, renyi, tsallis, EntropyOrder, SymOrderPair};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::measurements::{Measurement, RankOnePovm};
use crate::scalar::{Real, C};
use crate::states::DensityMatrix;
use crate::tol;

/// `ρ|v⟩` and `⟨v|ρ|v⟩` for every vector of a rank-one POVM.
fn weighted<T: Real>(povm: &RankOnePovm<T>, rho: &DensityMatrix<T>) -> Result<Vec<(ComplexVector<T>, T)>> {
    check_dim(rho.dim(), povm.dim())?;
    povm.vectors()
        .iter()
        .map(|v| {
            let rv = rho.matrix().mul_vec(v)?;
            let w = v.inner(&rv)?.re;
            Ok((rv, w))
        })
        .collect()
}

/// Entries `⟨m_i|n_j⟩⟨n_j|ρ|m_i⟩ / (⟨m_i|ρ|m_i⟩^½ ⟨n_j|ρ|n_j⟩^½)`; pairs with a
/// vanishing weight (at most [`tol::ZERO_PROB`]) give zero.
pub fn riesz_transform<T: Real>(
    m: &RankOnePovm<T>,
    n: &RankOnePovm<T>,
    rho: &DensityMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    let wm = weighted(m, rho)?;
    let wn = weighted(n, rho)?;
    let zero = T::tol(tol::ZERO_PROB);
    let mut t = ComplexMatrix::zeros(wm.len(), wn.len());
    for (i, (mi, (_, pm))) in m.vectors().iter().zip(&wm).enumerate() {
        if *pm <= zero {
            continue;
        }
        for (j, (nj, (rn, pn))) in n.vectors().iter().zip(&wn).enumerate() {
            if *pn <= zero {
                continue;
            }
            // ⟨n_j|ρ|m_i⟩ = conj(⟨m_i|ρ|n_j⟩)
            let cross = mi.inner(rn)?.conj();
            t[(i, j)] = mi.inner(nj)? * cross / (pm.sqrt() * pn.sqrt());
        }
    }
    Ok(t)
}

/// `g(M, N|ρ)`: the largest `|t_ij|` over pairs with nonzero weights.
pub fn mu_g_factor<T: Real>(m: &RankOnePovm<T>, n: &RankOnePovm<T>, rho: &DensityMatrix<T>) -> Result<T> {
    let t = riesz_transform(m, n, rho)?;
    let g = t.data().iter().fold(T::zero(), |acc, z| acc.max(z.norm()));
    if g <= T::zero() {
        return Err(Error::Precondition("no outcome pair has nonzero weight".into()));
    }
    Ok(g)
}

/// Reports for the pair bounds at the state-dependent `g` and at the
/// state-independent `f̄ = max |⟨m_i|n_j⟩|`.
#[derive(Clone, Debug)]
pub struct PairBounds<T> {
    pub g: T,
    pub f_bar: T,
    pub tsallis: BoundReport<T>,
    pub renyi: BoundReport<T>,
    pub tsallis_f_bar: BoundReport<T>,
    pub renyi_f_bar: BoundReport<T>,
}

/// Checks `H_α(M) + H_β(N) ≥ ln_μ(g⁻²)` and `R_α(M) + R_β(N) ≥ -2 ln g` for
/// orders with `1/α + 1/β = 2` and `μ = max{α, β}`.
pub fn mu_pair_bounds<T: Real>(
    m: &RankOnePovm<T>,
    n: &RankOnePovm<T>,
    rho: &DensityMatrix<T>,
    alpha: EntropyOrder<T>,
    beta: EntropyOrder<T>,
) -> Result<PairBounds<T>> {
    let mu = SymOrderPair::from_orders(alpha, beta, T::tol(1e-12))?.mu();
    let g = mu_g_factor(m, n, rho)?;
    let f_bar = m.max_overlap(n)?;
    let (p, q) = (m.probabilities(rho)?, n.probabilities(rho)?);
    let h = tsallis(&p, alpha) + tsallis(&q, beta);
    let r = renyi(&p, alpha) + renyi(&q, beta);
    let tol = T::tol(tol::BOUND);
    let ts = |x: T| alpha_log((x * x).recip(), mu);
    let rn = |x: T| -T::lit(2.0) * x.ln();
    Ok(PairBounds {
        g,
        f_bar,
        tsallis: BoundReport::lower("P9-mu-pair/tsallis", h, ts(g)?, tol),
        renyi: BoundReport::lower("P9-mu-pair/renyi", r, rn(g), tol),
        tsallis_f_bar: BoundReport::lower("P9-mu-pair/tsallis-fbar", h, ts(f_bar)?, tol),
        renyi_f_bar: BoundReport::lower("P9-mu-pair/renyi-fbar", r, rn(f_bar), tol),
    })
}

fn gaussian_vector<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexVector<T> {
    ComplexVector::new((0..n).map(|_| C::new(T::standard_normal(rng), T::standard_normal(rng))).collect())
}

/// Checks `‖t·u‖₂ ≤ ‖u‖₂` for `u` and for `trials` Gaussian inputs; the
/// report carries the worst margin (tolerance `1e-12`).
pub fn riesz_precondition_check<T: Real, R: Rng + ?Sized>(
    m: &RankOnePovm<T>,
    n: &RankOnePovm<T>,
    rho: &DensityMatrix<T>,
    u: &ComplexVector<T>,
    trials: usize,
    rng: &mut R,
) -> Result<BoundReport<T>> {
    let t = riesz_transform(m, n, rho)?;
    check_dim(t.cols(), u.dim())?;
    let tol = T::tol(1e-12);
    let check = |u: &ComplexVector<T>| -> Result<BoundReport<T>> {
        let v = t.mul_vec(u)?;
        Ok(BoundReport::upper("APXB-riesz", v.norm(), u.norm(), tol))
    };
    let mut worst = check(u)?;
    for _ in 0..trials {
        worst = worst.worst(check(&gaussian_vector(t.cols(), rng))?);
    }
    Ok(worst)
}
