//! Two-dimensional invariant subspace closest to a shift, by shift-invert
//! subspace iteration.
//!
//! Near an exceptional point the two coalescing eigenvalues are
//! individually ill-conditioned, but the subspace they span is not. The
//! 2×2 block `Q^T A Q` on that subspace gives the pair's trace and
//! discriminant to the working precision, which is what root finding on
//! the squared gap needs.

use super::EigError;
use crate::matrix::DenseMatrix;
use crate::scalar::Real;
use num_complex::Complex;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantPair<T> {
    /// `Q^T A Q` for an orthonormal basis `Q` of the subspace.
    pub block: [[T; 2]; 2],
    /// `||A Q - Q B||_F`.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Real> InvariantPair<T> {
    pub fn trace(&self) -> T {
        self.block[0][0] + self.block[1][1]
    }

    /// Mean of the two eigenvalues.
    pub fn mean(&self) -> T {
        self.trace() / T::of(2.0)
    }

    /// Squared difference of the two eigenvalues.
    pub fn gap_sq(&self) -> T {
        let b = &self.block;
        let d = b[0][0] - b[1][1];
        d * d + T::of(4.0) * b[0][1] * b[1][0]
    }

    pub fn eigenvalues(&self) -> [Complex<T>; 2] {
        let m = self.mean();
        let g = self.gap_sq();
        let h = g.abs().sqrt() / T::of(2.0);
        if g >= T::zero() {
            [Complex::new(m - h, T::zero()), Complex::new(m + h, T::zero())]
        } else {
            [Complex::new(m, -h), Complex::new(m, h)]
        }
    }
}

/// Banded LU factorization with partial pivoting, stored densely.
struct BandLu<T> {
    lu: DenseMatrix<T>,
    piv: Vec<usize>,
    lower: usize,
    upper: usize,
}

impl<T: Real> BandLu<T> {
    fn new(mut a: DenseMatrix<T>, lower: usize, upper: usize, tiny: T) -> Self {
        let n = a.rows();
        // Pivoting can widen the upper band by `lower`.
        let upper = (upper + lower).min(n.saturating_sub(1));
        let mut piv = vec![0; n];
        for k in 0..n {
            let last = (k + lower).min(n - 1);
            let mut p = k;
            for i in k + 1..=last {
                if a[(i, k)].abs() > a[(p, k)].abs() {
                    p = i;
                }
            }
            piv[k] = p;
            let jend = (k + upper).min(n - 1);
            if p != k {
                for j in k..=jend {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
            }
            if a[(k, k)] == T::zero() {
                a[(k, k)] = tiny;
            }
            let pivot = a[(k, k)];
            for i in k + 1..=last {
                let m = a[(i, k)] / pivot;
                a[(i, k)] = m;
                if m != T::zero() {
                    for j in k + 1..=jend {
                        a[(i, j)] = a[(i, j)] - m * a[(k, j)];
                    }
                }
            }
        }
        Self { lu: a, piv, lower, upper }
    }

    fn solve(&self, x: &mut [T]) {
        let n = x.len();
        for k in 0..n {
            x.swap(k, self.piv[k]);
            let xk = x[k];
            for i in k + 1..=(k + self.lower).min(n - 1) {
                x[i] = x[i] - self.lu[(i, k)] * xk;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..=(i + self.upper).min(n - 1) {
                s = s - self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

/// Orthonormalize two vectors in place (Gram–Schmidt, applied twice).
fn orthonormalize<T: Real>(u: &mut [T], v: &mut [T]) {
    for _ in 0..2 {
        let nu = dot(u, u).sqrt();
        u.iter_mut().for_each(|x| *x = *x / nu);
        let c = dot(u, v);
        v.iter_mut().zip(u.iter()).for_each(|(y, &x)| *y = *y - c * x);
        let nv = dot(v, v).sqrt();
        v.iter_mut().for_each(|x| *x = *x / nv);
    }
}

fn band_matvec<T: Real>(a: &DenseMatrix<T>, lower: usize, upper: usize, x: &[T], out: &mut [T]) {
    let n = x.len();
    for i in 0..n {
        let row = a.row(i);
        let lo = i.saturating_sub(lower);
        let hi = (i + upper).min(n - 1);
        out[i] = (lo..=hi).fold(T::zero(), |s, j| s + row[j] * x[j]);
    }
}

/// Invariant pair of `a` for the two eigenvalues closest to `shift`.
pub fn nearest_pair<T: Real>(a: &DenseMatrix<T>, shift: T) -> Result<InvariantPair<T>, EigError> {
    if !a.is_square() {
        return Err(EigError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n < 2 {
        return Err(EigError::DimensionMismatch { expected: 2, found: n });
    }
    let anorm = a.as_slice().iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
    let eps = T::unit_roundoff();
    let (lower, upper) = a.bandwidth();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] = shifted[(i, i)] - shift;
    }
    let lu = BandLu::new(shifted, lower, upper, eps * anorm);

    let mut u: Vec<T> = (0..n).map(|i| T::of((0.37 * i as f64 + 0.1).sin() + 1.5 / (1.0 + i as f64))).collect();
    let mut v: Vec<T> = (0..n).map(|i| T::of((1.13 * i as f64 + 0.7).cos() + 0.5 / (1.0 + i as f64))).collect();
    orthonormalize(&mut u, &mut v);
    let mut au = vec![T::zero(); n];
    let mut av = vec![T::zero(); n];

    let tol = T::of(64.0) * eps * anorm;
    let accept = eps.sqrt() * anorm;
    let mut best: Option<InvariantPair<T>> = None;
    let mut stalled = 0;
    for it in 1..=400 {
        lu.solve(&mut u);
        lu.solve(&mut v);
        orthonormalize(&mut u, &mut v);
        band_matvec(a, lower, upper, &u, &mut au);
        band_matvec(a, lower, upper, &v, &mut av);
        let block = [[dot(&u, &au), dot(&u, &av)], [dot(&v, &au), dot(&v, &av)]];
        let mut res = T::zero();
        for i in 0..n {
            let r1 = au[i] - u[i] * block[0][0] - v[i] * block[1][0];
            let r2 = av[i] - u[i] * block[0][1] - v[i] * block[1][1];
            res = res + r1 * r1 + r2 * r2;
        }
        let pair = InvariantPair { block, residual: res.sqrt(), iterations: it };
        if pair.residual <= tol {
            return Ok(pair);
        }
        match best {
            Some(b) if pair.residual >= T::of(0.5) * b.residual => stalled += 1,
            _ => stalled = 0,
        }
        if best.map_or(true, |b| pair.residual < b.residual) {
            best = Some(pair);
        }
        if stalled >= 6 && best.unwrap().residual <= accept {
            break;
        }
    }
    let best = best.expect("at least one iteration");
    if best.residual <= accept {
        Ok(best)
    } else {
        Err(EigError::PairNotConverged { residual: best.residual.as_f64() })
    }
}
