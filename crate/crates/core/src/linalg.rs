//! Dense complex vectors and matrices.
//!
//! Storage is row-major and every routine is sized for the small dimensions
//! used here (a few dozen at most). The only decomposition provided is the
//! Hermitian eigensolver, a cyclic complex Jacobi iteration.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{check_dim, domain, Error, Result};
use crate::scalar::{Real, C};

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector<T> {
    entries: Vec<C<T>>,
}

impl<T: Real> ComplexVector<T> {
    pub fn new(entries: Vec<C<T>>) -> Self {
        assert!(!entries.is_empty(), "vector dimension must be positive");
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![C::zero(); dim])
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[k] = C::one();
        v
    }

    pub fn from_real(xs: &[T]) -> Self {
        Self::new(xs.iter().map(|&x| C::new(x, T::zero())).collect())
    }

    pub fn from_parts(re: &[T], im: &[T]) -> Result<Self> {
        check_dim(re.len(), im.len())?;
        if re.is_empty() {
            return Err(domain("empty vector"));
        }
        Ok(Self::new(re.iter().zip(im).map(|(&r, &i)| C::new(r, i)).collect()))
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C<T>> {
        self.entries.iter()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn norm_sqr(&self) -> T {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::new(self.entries.iter().map(|z| z * s).collect())
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::new(self.entries.iter().map(|z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect()))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max))
    }

    /// Kronecker product; entry `i·other.dim() + j` is `self[i]·other[j]`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                out.push(a * b);
            }
        }
        Self::new(out)
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| self.entries[i] * other.entries[j].conj())
    }

    pub fn as_column(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(self.dim(), 1, |i, _| self.entries[i])
    }
}

impl<T> Index<usize> for ComplexVector<T> {
    type Output = C<T>;

    fn index(&self, i: usize) -> &C<T> {
        &self.entries[i]
    }
}

impl<T> IndexMut<usize> for ComplexVector<T> {
    fn index_mut(&mut self, i: usize) -> &mut C<T> {
        &mut self.entries[i]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C<T>>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 || rows[0].is_empty() {
            return Err(domain("empty matrix"));
        }
        let c = rows[0].len();
        for row in &rows {
            check_dim(c, row.len())?;
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { C::new(diag[i], T::zero()) } else { C::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// In-place `self += other`.
    pub fn accumulate(&mut self, other: &Self) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + b;
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] = out.data[i * other.cols + j] + a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &ComplexVector<T>) -> Result<ComplexVector<T>> {
        check_dim(self.cols, v.dim())?;
        Ok(ComplexVector::new((0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()))
    }

    /// `⟨u|self|v⟩`.
    pub fn sandwich(&self, u: &ComplexVector<T>, v: &ComplexVector<T>) -> Result<C<T>> {
        u.inner(&self.mul_vec(v)?)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max))
    }

    /// Max entrywise `|A - A†|`.
    pub fn hermitian_deviation(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(worst)
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Result<Self> {
        let half = T::lit(0.5);
        Ok(self.add(&self.adjoint())?.scale_real(half))
    }

    pub fn frobenius_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigen-decomposition of a Hermitian matrix.
    ///
    /// Only the upper triangle's Hermitian part is meaningful; callers should
    /// validate hermiticity first. Eigenvalues are returned in ascending order
    /// and the eigenvectors are the matching columns of `vectors`.
    pub fn eigh(&self) -> Result<HermitianEigen<T>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        Ok(jacobi_eigh(&self.hermitian_part()?))
    }

    pub fn eigenvalues_hermitian(&self) -> Result<Vec<T>> {
        Ok(self.eigh()?.values)
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;

    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn vector(&self, k: usize) -> ComplexVector<T> {
        ComplexVector::new((0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect())
    }
}

fn jacobi_eigh<T: Real>(a: &ComplexMatrix<T>) -> HermitianEigen<T> {
    let n = a.rows();
    let mut a = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_sqr().sqrt().max(T::min_positive_value());
    let eps = T::epsilon();

    for _sweep in 0..100 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= eps * scale * T::lit(1e-2) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= eps * eps * scale {
                    continue;
                }
                // Phase rotation makes the (p,q) entry real, then a real
                // Jacobi rotation annihilates it.
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (T::lit(2.0) * mag);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // U restricted to (p,q): [[c, s], [-s·conj(phase), c·conj(phase)]]
                let u_pp = C::new(c, T::zero());
                let u_pq = C::new(s, T::zero());
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;

                // A <- A U (columns p, q)
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A <- U† A (rows p, q)
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = C::zero();
                a[(q, p)] = C::zero();
                a[(p, p)] = C::new(a[(p, p)].re, T::zero());
                a[(q, q)] = C::new(a[(q, q)].re, T::zero());
                // V <- V U
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    HermitianEigen { values, vectors }
}

/// Hilbert–Schmidt inner product `tr(X† Y)`.
pub fn hs_inner<T: Real>(x: &ComplexMatrix<T>, y: &ComplexMatrix<T>) -> Result<C<T>> {
    x.check_same_shape(y)?;
    Ok(x.data.iter().zip(&y.data).map(|(a, b)| a.conj() * b).sum())
}

/// Kronecker product; row index is `i_a·rows(b) + i_b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
    })
}

/// Entrywise conjugate in the computational basis, so `⟨φ*|ψ*⟩ = ⟨ψ|φ⟩`.
pub fn conj_vector<T: Real>(v: &ComplexVector<T>) -> ComplexVector<T> {
    ComplexVector::new(v.iter().map(|z| z.conj()).collect())
}

/// Vector `q`-norm for `q >= 1`; `q = ∞` gives the max modulus.
pub fn vec_qnorm<T: Real>(u: &ComplexVector<T>, q: T) -> Result<T> {
    if q.is_nan() || q < T::one() {
        return Err(domain(format!("q-norm needs q >= 1, got {q}")));
    }
    let moduli = u.iter().map(|z| z.norm());
    if q.is_infinite() {
        return Ok(moduli.fold(T::zero(), T::max));
    }
    // Scale by the largest modulus to avoid overflow for large q.
    let top = u.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if top.is_zero() {
        return Ok(T::zero());
    }
    let s: T = moduli.map(|m| (m / top).powf(q)).sum();
    Ok(top * s.powf(q.recip()))
}
