//! Truncated matrix representations of the model Hamiltonians.
//!
//! Every family is written as `H(g) = H0 + g V` in its natural basis.
//! Cubic and quartic anharmonic oscillators use the eigenbasis of
//! `p^2 + x^2`, the box uses `sin(n pi (x+1)/2)` on `[-1, 1]`, and the
//! Mathieu and rotor problems use the Fourier/spherical-harmonic
//! recurrences, which give tridiagonal matrices.
//!
//! For a purely imaginary coupling `g = ia` the similarity
//! `S = diag(i^k)` turns each of these matrices into a real one.
//! [`RealPencil`] builds that real form directly, in any [`Real`]
//! precision.

use crate::matrix::DenseMatrix;
use crate::scalar::Real;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unsupported power x^{0}; only k = 1..4 are available")]
    UnsupportedPower(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cubic,
    Quartic,
    Box,
    MathieuEven,
    MathieuOdd,
    Rotor3D,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Cubic, Family::Quartic, Family::Box, Family::MathieuEven, Family::MathieuOdd, Family::Rotor3D];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cubic => "cubic",
            Family::Quartic => "quartic",
            Family::Box => "box",
            Family::MathieuEven => "mathieu-even",
            Family::MathieuOdd => "mathieu-odd",
            Family::Rotor3D => "rotor3d",
        }
    }

    pub fn is_tridiagonal(self) -> bool {
        matches!(self, Family::MathieuEven | Family::MathieuOdd | Family::Rotor3D)
    }

    /// Label of the lowest level. Box levels are counted from 1, all others from 0.
    pub fn first_level(self) -> usize {
        match self {
            Family::Box => 1,
            _ => 0,
        }
    }

    /// Index of the first coalescing pair (`n` in the tables).
    pub fn first_pair(self) -> usize {
        self.first_level()
    }

    /// Zero-based positions, in the ordered physical spectrum, of the levels
    /// that coalesce at the `n`-th critical point.
    ///
    /// Box pairs are `(E_{2n-1}, E_{2n})` with 1-based labels; all other
    /// families pair `(E_{2n}, E_{2n+1})`.
    pub fn pair_indices(self, n: usize) -> Option<(usize, usize)> {
        match self {
            Family::Box if n == 0 => None,
            Family::Box => Some((2 * n - 2, 2 * n - 1)),
            _ => Some((2 * n, 2 * n + 1)),
        }
    }

    pub fn basis_label(self) -> &'static str {
        match self {
            Family::Cubic | Family::Quartic => "harmonic oscillator eigenbasis of p^2 + x^2",
            Family::Box => "box states sin(n pi (x+1)/2), n >= 1",
            Family::MathieuEven => "even Fourier modes cos(2k theta), k >= 0",
            Family::MathieuOdd => "odd Fourier modes sin(2k theta), k >= 1",
            Family::Rotor3D => "spherical harmonics Y_l^M, l >= M",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .or(match key.as_str() {
                "quartic" | "cuartic" => Some(Family::Quartic),
                "rotor" | "rotor-3d" => Some(Family::Rotor3D),
                _ => None,
            })
            .ok_or_else(|| ModelError::InvalidModel(format!("unknown model family `{s}`")))
    }
}

/// One model family with its coupling, magnetic quantum number and basis size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: Family,
    pub coupling: Complex64,
    pub m_abs: u32,
    pub truncation: usize,
}

impl ModelSpec {
    pub fn new(family: Family, coupling: Complex64, truncation: usize) -> Self {
        Self { family, coupling, m_abs: 0, truncation }
    }

    /// Rotor model with `|m| = m_abs`.
    pub fn rotor(m_abs: u32, coupling: Complex64, truncation: usize) -> Self {
        Self { family: Family::Rotor3D, coupling, m_abs, truncation }
    }

    pub fn with_coupling(mut self, g: Complex64) -> Self {
        self.coupling = g;
        self
    }

    /// Purely imaginary coupling `g = ia`.
    pub fn with_a(self, a: f64) -> Self {
        self.with_coupling(Complex64::new(0.0, a))
    }

    pub fn with_truncation(mut self, n: usize) -> Self {
        self.truncation = n;
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.truncation < 2 {
            return Err(ModelError::InvalidModel(format!(
                "basis size must be at least 2, got {}",
                self.truncation
            )));
        }
        if self.m_abs != 0 && self.family != Family::Rotor3D {
            return Err(ModelError::InvalidModel(format!(
                "m_abs = {} only applies to rotor3d, not {}",
                self.m_abs, self.family
            )));
        }
        if !(self.coupling.re.is_finite() && self.coupling.im.is_finite()) {
            return Err(ModelError::InvalidModel("coupling is not finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Storage {
    Dense(DenseMatrix<Complex64>),
    /// Symmetric placement: `off[j]` sits at `(j, j+1)` and `(j+1, j)`.
    Tridiagonal { diag: Vec<Complex64>, off: Vec<Complex64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianMatrix {
    pub storage: Storage,
    pub basis_label: &'static str,
    pub model: ModelSpec,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        match &self.storage {
            Storage::Dense(m) => m.rows(),
            Storage::Tridiagonal { diag, .. } => diag.len(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<Complex64> {
        match &self.storage {
            Storage::Dense(m) => m.clone(),
            Storage::Tridiagonal { diag, off } => tridiagonal_to_dense(diag, off),
        }
    }
}

pub(crate) fn tridiagonal_to_dense(diag: &[Complex64], off: &[Complex64]) -> DenseMatrix<Complex64> {
    DenseMatrix::from_fn(diag.len(), diag.len(), |i, j| {
        if i == j {
            diag[i]
        } else if j == i + 1 {
            off[i]
        } else if i == j + 1 {
            off[j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `H(g) = re0 + i im0 + g coupling` with real matrices.
struct Parts<T> {
    re0: DenseMatrix<T>,
    im0: Option<DenseMatrix<T>>,
    coupling: DenseMatrix<T>,
}

fn parts<T: Real>(family: Family, m_abs: u32, n: usize) -> Result<Parts<T>, ModelError> {
    let parts = match family {
        Family::Cubic | Family::Quartic => {
            let x1 = ho_power_matrix_in::<T>(n, 1)?;
            let x2 = ho_power_matrix_in::<T>(n, 2)?;
            let mut re0 = DenseMatrix::from_fn(n, n, |i, j| {
                let d = if i == j { T::of_usize(2 * i + 1) } else { T::zero() };
                d - x2[(i, j)]
            });
            let mut im0 = None;
            if family == Family::Quartic {
                let x4 = ho_power_matrix_in::<T>(n, 4)?;
                re0 = DenseMatrix::from_fn(n, n, |i, j| re0[(i, j)] + x4[(i, j)]);
            } else {
                im0 = Some(ho_power_matrix_in::<T>(n, 3)?);
            }
            Parts { re0, im0, coupling: x1 }
        }
        Family::Box => {
            let half_pi = T::pi() / T::of(2.0);
            let re0 = DenseMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    let k = T::of_usize(i + 1) * half_pi;
                    k * k
                } else {
                    T::zero()
                }
            });
            let coupling = DenseMatrix::from_fn(n, n, |i, j| box_position_element_in::<T>(i + 1, j + 1));
            Parts { re0, im0: None, coupling }
        }
        Family::MathieuEven | Family::MathieuOdd | Family::Rotor3D => {
            let (diag, off) = tridiagonal_parts::<T>(family, m_abs, n);
            let re0 = DenseMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { T::zero() });
            let coupling = DenseMatrix::from_fn(n, n, |i, j| {
                if j == i + 1 {
                    off[i]
                } else if i == j + 1 {
                    off[j]
                } else {
                    T::zero()
                }
            });
            Parts { re0, im0: None, coupling }
        }
    };
    Ok(parts)
}

/// Unperturbed diagonal and the coupling pattern multiplying `g` on the off-diagonal.
fn tridiagonal_parts<T: Real>(family: Family, m_abs: u32, n: usize) -> (Vec<T>, Vec<T>) {
    let four = T::of(4.0);
    match family {
        Family::MathieuEven => {
            let diag = (0..n).map(|k| four * T::of_usize(k * k)).collect();
            let mut off = vec![T::one(); n - 1];
            // The A0 row of the recurrence carries a factor 2; split it as sqrt(2) on both sides.
            off[0] = T::of(2.0).sqrt();
            (diag, off)
        }
        Family::MathieuOdd => {
            let diag = (1..=n).map(|k| four * T::of_usize(k * k)).collect();
            (diag, vec![T::one(); n - 1])
        }
        Family::Rotor3D => {
            let m = m_abs as usize;
            let diag = (0..n).map(|i| T::of_usize((i + m) * (i + m + 1))).collect();
            let off = (1..n)
                .map(|i| {
                    let num = T::of_usize(i * (i + 2 * m));
                    let l = T::of_usize(i + m);
                    -(num / (four * l * l - T::one())).sqrt()
                })
                .collect();
            (diag, off)
        }
        _ => unreachable!("not a tridiagonal family"),
    }
}

/// Matrix representation of `model` in its natural basis.
pub fn build_hamiltonian(model: &ModelSpec) -> Result<HamiltonianMatrix, ModelError> {
    model.validate()?;
    let n = model.truncation;
    let g = model.coupling;
    let storage = if model.family.is_tridiagonal() {
        let (d, o) = tridiagonal_parts::<f64>(model.family, model.m_abs, n);
        Storage::Tridiagonal {
            diag: d.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
            off: o.into_iter().map(|x| g * x).collect(),
        }
    } else {
        let p = parts::<f64>(model.family, model.m_abs, n)?;
        Storage::Dense(DenseMatrix::from_fn(n, n, |i, j| {
            let im = p.im0.as_ref().map_or(0.0, |m| m[(i, j)]);
            Complex64::new(p.re0[(i, j)], im) + g * p.coupling[(i, j)]
        }))
    };
    Ok(HamiltonianMatrix { storage, basis_label: model.family.basis_label(), model: *model })
}

/// Real form `S^{-1} H(ia) S = base + a direction`, `S = diag(i^k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPencil<T> {
    pub base: DenseMatrix<T>,
    pub direction: DenseMatrix<T>,
}

impl<T: Real> RealPencil<T> {
    pub fn new(family: Family, m_abs: u32, n: usize) -> Result<Self, ModelError> {
        ModelSpec { family, coupling: Complex64::new(0.0, 0.0), m_abs, truncation: n }.validate()?;
        let p = parts::<T>(family, m_abs, n)?;
        // (S^{-1} M S)_{ij} = i^{j-i} M_{ij}; `imag` adds one more factor of i.
        let phase = |i: usize, j: usize, imag: bool| -> T {
            let e = j as i64 - i as i64 + imag as i64;
            debug_assert!(e.rem_euclid(2) == 0, "entry is not real after the similarity");
            if e.rem_euclid(4) == 0 {
                T::one()
            } else {
                -T::one()
            }
        };
        let nz = |x: T| x != T::zero();
        let base = DenseMatrix::from_fn(n, n, |i, j| {
            let mut v = T::zero();
            if nz(p.re0[(i, j)]) {
                v = v + phase(i, j, false) * p.re0[(i, j)];
            }
            if let Some(im) = &p.im0 {
                if nz(im[(i, j)]) {
                    v = v + phase(i, j, true) * im[(i, j)];
                }
            }
            v
        });
        let direction = DenseMatrix::from_fn(n, n, |i, j| {
            let c = p.coupling[(i, j)];
            if nz(c) {
                phase(i, j, true) * c
            } else {
                T::zero()
            }
        });
        Ok(Self { base, direction })
    }

    pub fn dim(&self) -> usize {
        self.base.rows()
    }

    pub fn at(&self, a: T) -> DenseMatrix<T> {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| self.base[(i, j)] + a * self.direction[(i, j)])
    }
}

/// Exact top-left `n`×`n` block of `x^k` in the eigenbasis of `p^2 + x^2`.
pub fn ho_power_matrix(n: usize, k: u32) -> Result<DenseMatrix<f64>, ModelError> {
    ho_power_matrix_in::<f64>(n, k)
}

/// [`ho_power_matrix`] in any real precision.
pub fn ho_power_matrix_in<T: Real>(n: usize, k: u32) -> Result<DenseMatrix<T>, ModelError> {
    if !(1..=4).contains(&k) {
        return Err(ModelError::UnsupportedPower(k));
    }
    if n == 0 {
        return Err(ModelError::InvalidModel("basis size must be positive".into()));
    }
    // The ladder has bandwidth 1, so x^k needs k extra states for an exact n-block.
    let dim = n + k as usize;
    let ladder: Vec<T> = (0..dim - 1).map(|j| (T::of_usize(j + 1) / T::of(2.0)).sqrt()).collect();
    let mut p = DenseMatrix::<T>::identity(dim);
    for band in 0..k as usize {
        let mut next = DenseMatrix::zeros(dim, dim);
        for i in 0..dim {
            let lo = i.saturating_sub(band + 1);
            let hi = (i + band + 1).min(dim - 1);
            for j in lo..=hi {
                let mut s = T::zero();
                if j >= 1 {
                    s = s + p[(i, j - 1)] * ladder[j - 1];
                }
                if j + 1 < dim {
                    s = s + p[(i, j + 1)] * ladder[j];
                }
                next[(i, j)] = s;
            }
        }
        p = next;
    }
    // Mirror the upper triangle so the block is exactly symmetric.
    Ok(DenseMatrix::from_fn(n, n, |i, j| if i <= j { p[(i, j)] } else { p[(j, i)] }))
}

/// `<m|x|n>` for the box states `sin(n pi (x+1)/2)` on `[-1, 1]`.
pub fn box_position_element(m: usize, n: usize) -> f64 {
    box_position_element_in::<f64>(m, n)
}

pub fn box_position_element_in<T: Real>(m: usize, n: usize) -> T {
    assert!(m >= 1 && n >= 1, "box levels start at 1");
    if (m + n) % 2 == 0 {
        return T::zero();
    }
    let (mf, nf) = (T::of_usize(m), T::of_usize(n));
    let d = T::of_usize(m * m) - T::of_usize(n * n);
    -T::of(16.0) * mf * nf / (T::pi() * T::pi() * d * d)
}

/// Convert `(E, g)` to the Bender–Kalveks normalization `(E/4, g/2)`.
pub fn bk_scale(e: Complex64, g: Complex64) -> (Complex64, Complex64) {
    (e / 4.0, g / 2.0)
}
