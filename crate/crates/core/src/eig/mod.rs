//! Eigenvalue solvers for dense complex, real and tridiagonal matrices,
//! spectrum ordering and trajectory matching.

mod complex_qr;
mod matching;
mod pair;
mod real_qr;

pub use matching::{match_values, Matching};
pub use pair::{nearest_pair, InvariantPair};
pub use real_qr::eig_real;

use crate::matrix::DenseMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EigError {
    #[error("QR iteration did not converge within {budget} shifts ({} eigenvalues deflated)", partial.len())]
    NoConvergence { budget: usize, partial: Vec<Complex64> },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invariant pair iteration stalled at residual {residual:e}")]
    PairNotConverged { residual: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderConvention {
    /// Non-decreasing real part, ties broken by ascending imaginary part.
    ByRealPart,
    /// Slot order carried over from a previous spectrum by trajectory matching.
    Paired,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub coupling: Complex64,
    pub eigenvalues: Vec<Complex64>,
    pub order: OrderConvention,
    pub n: usize,
}

fn by_real_part(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl Spectrum {
    /// Spectrum sorted by real part.
    pub fn by_real_part(coupling: Complex64, mut eigenvalues: Vec<Complex64>) -> Self {
        eigenvalues.sort_by(by_real_part);
        let n = eigenvalues.len();
        Self { coupling, eigenvalues, order: OrderConvention::ByRealPart, n }
    }

    pub fn with_coupling(mut self, g: Complex64) -> Self {
        self.coupling = g;
        self
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sort_by_real_part(&mut self) {
        self.eigenvalues.sort_by(by_real_part);
        self.order = OrderConvention::ByRealPart;
    }

    /// Reorder by a permutation from [`match_trajectories`].
    pub fn reordered(&self, permutation: &[usize]) -> Self {
        Self {
            coupling: self.coupling,
            eigenvalues: permutation.iter().map(|&j| self.eigenvalues[j]).collect(),
            order: OrderConvention::Paired,
            n: self.n,
        }
    }

    /// Largest distance between the spectrum and its complex conjugate,
    /// after sorting both.
    pub fn conjugation_defect(&self) -> f64 {
        let mut a = self.eigenvalues.clone();
        let mut b: Vec<Complex64> = a.iter().map(|z| z.conj()).collect();
        a.sort_by(by_real_part);
        b.sort_by(by_real_part);
        let m = match_values(&a, &b);
        (0..a.len()).map(|i| (a[i] - b[m.permutation[i]]).norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues (and optionally unit eigenvectors, as columns in the same
/// order) of a dense complex matrix.
pub fn eig_dense(
    a: &DenseMatrix<Complex64>,
    want_vectors: bool,
) -> Result<(Spectrum, Option<DenseMatrix<Complex64>>), EigError> {
    if !a.is_square() {
        return Err(EigError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.as_slice().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(EigError::NonFinite);
    }
    let n = a.rows();
    let mut h = a.clone();
    let scale = complex_qr::balance(&mut h);
    let q = complex_qr::hessenberg(&mut h, want_vectors);
    let hess = want_vectors.then(|| h.clone());
    let mut lambda = complex_qr::hqr(&mut h)?;
    lambda.sort_by(by_real_part);

    let vectors = match (hess, q) {
        (Some(hess), Some(q)) => {
            let y = complex_qr::inverse_iteration(&hess, &lambda);
            let mut v = q.matmul(&y);
            for k in 0..n {
                for i in 0..n {
                    v[(i, k)] *= scale[i];
                }
                normalize_column(&mut v, k);
            }
            Some(v)
        }
        _ => None,
    };
    Ok((Spectrum::by_real_part(Complex64::new(0.0, 0.0), lambda), vectors))
}

/// Unit length, largest-magnitude entry real and positive.
fn normalize_column(v: &mut DenseMatrix<Complex64>, k: usize) {
    let n = v.rows();
    let norm = (0..n).map(|i| v[(i, k)].norm_sqr()).sum::<f64>().sqrt();
    let mut big = 0;
    for i in 0..n {
        if v[(i, k)].norm() > v[(big, k)].norm() {
            big = i;
        }
    }
    let p = v[(big, k)];
    if norm == 0.0 || p.norm() == 0.0 {
        return;
    }
    let phase = p.conj() / p.norm();
    for i in 0..n {
        v[(i, k)] = v[(i, k)] * phase / norm;
    }
}

/// Eigenvalues of the symmetric-placement tridiagonal matrix with the given
/// diagonal and off-diagonal.
///
/// When the diagonal is real and every `off^2` is real the matrix is
/// similar to a real tridiagonal one with the same off-diagonal products,
/// and the real QR is used. Otherwise the dense complex solver is called.
pub fn eig_tridiagonal(diag: &[Complex64], off: &[Complex64]) -> Result<Spectrum, EigError> {
    let n = diag.len();
    if off.len() + 1 != n.max(1) {
        return Err(EigError::DimensionMismatch { expected: n.saturating_sub(1), found: off.len() });
    }
    let real_diag = diag.iter().all(|z| z.im == 0.0);
    let squares: Vec<Complex64> = off.iter().map(|z| z * z).collect();
    let real_products = squares.iter().all(|p| p.im.abs() <= 1e-15 * p.norm());
    if real_diag && real_products {
        let t = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].re
            } else if j == i + 1 {
                squares[i].re.abs().sqrt()
            } else if i == j + 1 {
                squares[j].re.signum() * squares[j].re.abs().sqrt()
            } else {
                0.0
            }
        });
        let lambda = eig_real(&t)?;
        Ok(Spectrum::by_real_part(Complex64::new(0.0, 0.0), lambda))
    } else {
        let dense = crate::model::tridiagonal_to_dense(diag, off);
        eig_dense(&dense, false).map(|(s, _)| s)
    }
}

/// Assignment of `curr` eigenvalues to the slots of `prev`.
pub fn match_trajectories(prev: &Spectrum, curr: &Spectrum) -> Result<Matching, EigError> {
    if prev.len() != curr.len() {
        return Err(EigError::DimensionMismatch { expected: prev.len(), found: curr.len() });
    }
    Ok(match_values(&prev.eigenvalues, &curr.eigenvalues))
}
