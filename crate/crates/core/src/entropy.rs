//! Rényi and Tsallis entropies of finite distributions, in nats.
//!
//! Orders are positive reals with `α = ∞` allowed. `α = 1` dispatches to the
//! Shannon entropy and `α = ∞` to the min-entropy. Near `α = 1` the
//! generic formulas cancel catastrophically, so power sums are evaluated as
//! `Σ p·expm1((α-1) ln p)` and logarithms through `ln_1p`.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::measurements::ProbDist;
use crate::scalar::{clamp_to_range, Real};

/// Entropic order `α > 0`, possibly `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct EntropyOrder<T>(T);

impl<T: Real> EntropyOrder<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha.is_nan() || alpha <= T::zero() {
            return Err(domain(format!("entropic order must be positive, got {alpha}")));
        }
        Ok(Self(alpha))
    }

    pub fn infinity() -> Self {
        Self(T::infinity())
    }

    pub fn shannon() -> Self {
        Self(T::one())
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_shannon(self) -> bool {
        self.0 == T::one()
    }
}

impl<T: Real> fmt::Display for EntropyOrder<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<T: Real> FromStr for EntropyOrder<T> {
    type Err = Error;

    /// Accepts decimal numbers and `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Self::infinity());
        }
        let x: f64 = s.parse().map_err(|_| domain(format!("cannot parse order `{s}`")))?;
        Self::new(T::lit(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntropyKind {
    Renyi,
    Tsallis,
}

impl EntropyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Renyi => "renyi",
            Self::Tsallis => "tsallis",
        }
    }
}

impl FromStr for EntropyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "renyi" => Ok(Self::Renyi),
            "tsallis" => Ok(Self::Tsallis),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

/// Conjugate orders `α = 1/(1-s)`, `β = 1/(1+s)` for `s ∈ [0, 1)`, so that
/// `1/α + 1/β = 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymOrderPair<T> {
    s: T,
}

impl<T: Real> SymOrderPair<T> {
    pub fn new(s: T) -> Result<Self> {
        if !(s >= T::zero() && s < T::one()) {
            return Err(domain(format!("symmetrization parameter {s} outside [0, 1)")));
        }
        Ok(Self { s })
    }

    /// Recovers `s` from an order pair with `1/α + 1/β = 2` (checked within `tol`).
    pub fn from_orders(alpha: EntropyOrder<T>, beta: EntropyOrder<T>, tol: T) -> Result<Self> {
        let (a, b) = (alpha.value(), beta.value());
        let sum = a.recip() + b.recip();
        if !((sum - T::lit(2.0)).abs() <= tol) {
            return Err(domain(format!("orders {a} and {b} do not satisfy 1/α + 1/β = 2")));
        }
        Self::new(T::one() - a.max(b).recip())
    }

    pub fn s(self) -> T {
        self.s
    }

    /// The larger order, `1/(1-s)`.
    pub fn alpha(self) -> EntropyOrder<T> {
        EntropyOrder((T::one() - self.s).recip())
    }

    /// The smaller order, `1/(1+s)`.
    pub fn beta(self) -> EntropyOrder<T> {
        EntropyOrder((T::one() + self.s).recip())
    }

    /// `μ = max{α, β}`.
    pub fn mu(self) -> EntropyOrder<T> {
        self.alpha()
    }
}

/// `Σ p^α - 1` for finite `α`, zero entries skipped.
fn power_sum_minus_one<T: Real>(p: &[T], alpha: T) -> T {
    let e = alpha - T::one();
    if e.abs() < T::lit(0.5) {
        p.iter().filter(|&&x| x > T::zero()).map(|&x| x * (e * x.ln()).exp_m1()).sum()
    } else {
        p.iter().filter(|&&x| x > T::zero()).map(|&x| x.powf(alpha)).sum::<T>() - T::one()
    }
}

/// Shannon entropy `-Σ p ln p`.
pub fn shannon<T: Real>(p: &ProbDist<T>) -> T {
    p.values().iter().filter(|&&x| x > T::zero()).map(|&x| -x * x.ln()).sum()
}

/// Rényi entropy `R_α(p) = ln(Σ p^α)/(1-α)`.
pub fn renyi<T: Real>(p: &ProbDist<T>, order: EntropyOrder<T>) -> T {
    let alpha = order.value();
    if order.is_shannon() {
        return shannon(p);
    }
    if order.is_infinite() {
        return -p.max().ln();
    }
    let e = alpha - T::one();
    let v = p.values();
    let value = if e.abs() < T::lit(0.5) {
        power_sum_minus_one(v, alpha).ln_1p() / -e
    } else {
        // Factor out the largest entry so that large orders do not underflow.
        let m = p.max();
        let scaled: T = v.iter().filter(|&&x| x > T::zero()).map(|&x| (x / m).powf(alpha)).sum();
        (alpha * m.ln() + scaled.ln()) / -e
    };
    value.max(T::zero())
}

pub fn renyi_checked<T: Real>(p: &ProbDist<T>, alpha: T) -> Result<T> {
    Ok(renyi(p, EntropyOrder::new(alpha)?))
}

/// Tsallis entropy `H_α(p) = (Σ p^α - 1)/(1-α)`, evaluated as `Σ p ln_α(1/p)`.
pub fn tsallis<T: Real>(p: &ProbDist<T>, order: EntropyOrder<T>) -> T {
    if order.is_shannon() {
        return shannon(p);
    }
    if order.is_infinite() {
        return T::zero();
    }
    p.values()
        .iter()
        .filter(|&&x| x > T::zero())
        .map(|&x| x * ln_alpha(x.recip(), order.value()))
        .sum::<T>()
        .max(T::zero())
}

pub fn tsallis_checked<T: Real>(p: &ProbDist<T>, alpha: T) -> Result<T> {
    Ok(tsallis(p, EntropyOrder::new(alpha)?))
}

pub fn entropy<T: Real>(p: &ProbDist<T>, order: EntropyOrder<T>, kind: EntropyKind) -> T {
    match kind {
        EntropyKind::Renyi => renyi(p, order),
        EntropyKind::Tsallis => tsallis(p, order),
    }
}

fn ln_alpha<T: Real>(x: T, alpha: T) -> T {
    if alpha == T::one() {
        return x.ln();
    }
    if alpha.is_infinite() {
        return if x >= T::one() { T::zero() } else { T::infinity() };
    }
    let k = T::one() - alpha;
    (k * x.ln()).exp_m1() / k
}

/// `ln_α(x) = (x^(1-α) - 1)/(1-α)`, with `ln_1 = ln`.
pub fn alpha_log<T: Real>(x: T, order: EntropyOrder<T>) -> Result<T> {
    if x.is_nan() || x <= T::zero() {
        return Err(domain(format!("α-logarithm needs x > 0, got {x}")));
    }
    Ok(ln_alpha(x, order.value()))
}

/// `h_α(η) = -η^α ln_α(η) - (1-η)^α ln_α(1-η)`.
pub fn binary_tsallis<T: Real>(eta: T, order: EntropyOrder<T>) -> Result<T> {
    if !(eta >= T::zero() && eta <= T::one()) {
        return Err(domain(format!("η = {eta} outside [0, 1]")));
    }
    let term = |x: T| if x > T::zero() { x * ln_alpha(x.recip(), order.value()) } else { T::zero() };
    Ok((term(eta) + term(T::one() - eta)).max(T::zero()))
}

/// Half-sum of the entropies at the conjugate orders of `pair`.
pub fn symmetrized<T: Real>(p: &ProbDist<T>, pair: SymOrderPair<T>, kind: EntropyKind) -> T {
    let half = T::lit(0.5);
    half * (entropy(p, pair.alpha(), kind) + entropy(p, pair.beta(), kind))
}

/// Index of coincidence `Σ p²`.
pub fn index_of_coincidence<T: Real>(p: &ProbDist<T>) -> T {
    p.values().iter().map(|&x| x * x).sum()
}

/// Upper bound on the largest of `n` nonnegative numbers with sum 1 and
/// sum of squares `b2`: `(1 + √(n-1)·√(n·b2 - 1))/n`.
pub fn max_prob_bound<T: Real>(n: usize, b2: T) -> Result<T> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let nf = T::from_usize_exact(n);
    let b2 = clamp_to_range(b2, nf.recip(), T::one())
        .ok_or_else(|| domain(format!("sum of squares {b2} outside [1/{n}, 1]")))?;
    let excess = (nf * b2 - T::one()).max(T::zero());
    Ok((T::one() + (nf - T::one()).sqrt() * excess.sqrt()) / nf)
}
