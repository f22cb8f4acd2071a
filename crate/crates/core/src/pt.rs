//! Rayleigh–Schrödinger series for the box model and the radius of
//! convergence estimated from its coefficients.
//!
//! The recursion runs on a rescaled coupling `lambda = g / s` with
//! `s = (n pi)^2`. High orders then stay within double range, and
//! [`SeriesCoefficients`] keeps the scaled values. Unscaled coefficients
//! are available through [`SeriesCoefficients::coeff`]. They may
//! underflow at high order for the upper levels.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::model::box_position_element;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PtError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("basis of {basis_size} states under-resolves the series: doubling it changes E_(n,K) by {rel_change:.3e} relative")]
    UnderResolved { basis_size: usize, rel_change: f64 },
}

/// Coefficients `E_{n,j}` of `E_n(g) = sum_j E_{n,j} g^{2j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoefficients {
    /// Box level, counted from 1.
    pub level: usize,
    /// Coupling scale `s`; `scaled[j] = E_{n,j} s^{2j}`.
    pub scale: f64,
    pub scaled: Vec<f64>,
    pub basis_size: usize,
    pub max_order: usize,
}

impl SeriesCoefficients {
    /// Unscaled coefficient `E_{n,j}`.
    pub fn coeff(&self, j: usize) -> f64 {
        self.scaled[j] * self.scale.powi(-2 * j as i32)
    }

    pub fn coeffs(&self) -> Vec<f64> {
        (0..=self.max_order).map(|j| self.coeff(j)).collect()
    }
}

/// Relative change of `E_{n,K}` tolerated when the basis is doubled.
pub const DOUBLING_TOL: f64 = 1e-10;

/// Smallest basis the recursion accepts for level `n` and order `k`.
pub fn min_basis(n: usize, k: usize) -> usize {
    4 * n + 4 * k
}

fn scale_for(n: usize) -> f64 {
    let t = n as f64 * std::f64::consts::PI;
    t * t
}

/// All corrections of order `0..=order` in the scaled coupling, odd
/// orders included.
pub(crate) fn rs_raw(n: usize, order: usize, basis: usize) -> Vec<f64> {
    let s = scale_for(n);
    let pi = std::f64::consts::PI;
    let e0: Vec<f64> = (1..=basis).map(|m| (m as f64 * pi / 2.0).powi(2)).collect();
    let v: Vec<f64> = (1..=basis)
        .flat_map(|i| (1..=basis).map(move |j| s * box_position_element(i, j)))
        .collect();
    let idx = n - 1;
    let denom: Vec<f64> = e0.iter().map(|&em| e0[idx] - em).collect();

    let mut psi: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
    let mut unit = vec![0.0; basis];
    unit[idx] = 1.0;
    psi.push(unit);
    let mut e = vec![e0[idx]];
    if order == 0 {
        return e;
    }
    e.push(v[idx * basis + idx]);

    for k in 1..order {
        let prev = &psi[k - 1];
        let mut rhs = vec![0.0; basis];
        for (i, r) in rhs.iter_mut().enumerate() {
            let row = &v[i * basis..(i + 1) * basis];
            *r = row.iter().zip(prev).map(|(a, b)| a * b).sum();
        }
        for j in 1..=k {
            let ej = e[j];
            if ej != 0.0 {
                for (r, p) in rhs.iter_mut().zip(&psi[k - j]) {
                    *r -= ej * p;
                }
            }
        }
        for (i, r) in rhs.iter_mut().enumerate() {
            *r = if i == idx { 0.0 } else { *r / denom[i] };
        }
        let row = &v[idx * basis..(idx + 1) * basis];
        e.push(row.iter().zip(&rhs).map(|(a, b)| a * b).sum());
        psi.push(rhs);
    }
    e
}

fn scaled_even(n: usize, k: usize, basis: usize) -> Vec<f64> {
    rs_raw(n, 2 * k, basis).into_iter().step_by(2).collect()
}

/// Perturbation coefficients `E_{n,j}`, `j = 0..=k`, for box level `n`.
///
/// The result is recomputed with twice the basis and rejected when the
/// highest coefficient moves by more than [`DOUBLING_TOL`] relative.
pub fn rs_coefficients_box(n: usize, k: usize, basis_size: usize) -> Result<SeriesCoefficients, PtError> {
    if n == 0 {
        return Err(PtError::InvalidArgument("box levels start at 1".into()));
    }
    if basis_size < min_basis(n, k) {
        return Err(PtError::InvalidArgument(format!(
            "basis_size {basis_size} below 4n + 4K = {}",
            min_basis(n, k)
        )));
    }
    let scaled = scaled_even(n, k, basis_size);
    let check = scaled_even(n, k, 2 * basis_size);
    let (a, b) = (scaled[k], check[k]);
    let rel = if b == 0.0 { a.abs() } else { ((a - b) / b).abs() };
    if rel > DOUBLING_TOL {
        return Err(PtError::UnderResolved { basis_size, rel_change: rel });
    }
    Ok(SeriesCoefficients { level: n, scale: scale_for(n), scaled, basis_size, max_order: k })
}

/// Partial sum `sum_{j <= order} E_{n,j} g^{2j}`; `order` is clamped to K.
pub fn eval_series(coeffs: &SeriesCoefficients, g: Complex64, order: usize) -> Complex64 {
    let x = (g / coeffs.scale).powi(2);
    let top = order.min(coeffs.max_order);
    coeffs.scaled[..=top].iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Ratio estimates `a(k)` for `k = 1..K-1`; `None` where `E_{n,k+1} = 0`.
pub fn radius_sequence(coeffs: &SeriesCoefficients) -> Vec<Option<f64>> {
    radius_from_scaled(&coeffs.scaled, coeffs.scale)
}

/// Same as [`radius_sequence`] on raw coefficients of `x^{2j}` with
/// scale 1 in the caller's units.
pub fn radius_from_scaled(scaled: &[f64], scale: f64) -> Vec<Option<f64>> {
    (1..scaled.len().saturating_sub(1))
        .map(|k| {
            let den = (k as f64 + 1.0) * scaled[k + 1];
            if den == 0.0 {
                None
            } else {
                Some(scale * ((0.5 - k as f64) * scaled[k] / den).abs().sqrt())
            }
        })
        .collect()
}

/// Lag and threshold of the Cauchy test on the radius sequence.
pub const CAUCHY_LAG: usize = 10;
pub const CAUCHY_TOL: f64 = 1e-3;

/// True when `|a(k+10) - a(k)| < 1e-3` holds over the last third of the
/// sequence. Absent entries count as failures.
pub fn radius_converges(seq: &[Option<f64>]) -> bool {
    if seq.len() <= CAUCHY_LAG + 2 {
        return false;
    }
    let last = seq.len() - CAUCHY_LAG;
    let start = (2 * seq.len() / 3).min(last - 1);
    (start..last).all(|i| match (seq[i], seq[i + CAUCHY_LAG]) {
        (Some(x), Some(y)) => (y - x).abs() < CAUCHY_TOL,
        _ => false,
    })
}
