//! Balancing, Hessenberg reduction and Francis double-shift QR for real
//! matrices, generic over the scalar precision.

use super::EigError;
use crate::matrix::DenseMatrix;
use crate::scalar::Real;
use num_complex::Complex;

/// Scale rows and columns by powers of two so their norms are comparable.
/// Returns the diagonal scaling `D` with `D^{-1} A D` stored in `a`.
pub fn balance<T: Real>(a: &mut DenseMatrix<T>) -> Vec<T> {
    let n = a.rows();
    let two = T::of(2.0);
    let mut scale = vec![T::one(); n];
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + a[(j, i)].abs();
                    r = r + a[(i, j)].abs();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / two;
            while c < g {
                f = f * two;
                c = c * two * two;
            }
            g = r * two;
            while c >= g {
                f = f / two;
                c = c / (two * two);
            }
            if (c + r) / f < T::of(0.95) * s {
                done = false;
                scale[i] = scale[i] * f;
                let inv = T::one() / f;
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] * inv;
                    a[(j, i)] = a[(j, i)] * f;
                }
            }
        }
        if done {
            return scale;
        }
    }
}

pub(crate) fn is_hessenberg<T: Real>(a: &DenseMatrix<T>) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..i.saturating_sub(1)).all(|j| a[(i, j)] == T::zero()))
}

/// Householder reduction to upper Hessenberg form, in place.
pub fn hessenberg<T: Real>(h: &mut DenseMatrix<T>) {
    let n = h.rows();
    let two = T::of(2.0);
    let mut v = vec![T::zero(); n];
    let mut s = vec![T::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let mut alpha = T::zero();
        for i in k + 1..n {
            alpha = alpha + h[(i, k)] * h[(i, k)];
        }
        if alpha == T::zero() {
            continue;
        }
        alpha = alpha.sqrt();
        if h[(k + 1, k)] > T::zero() {
            alpha = -alpha;
        }
        let mut vv = T::zero();
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] = v[k + 1] - alpha;
        for i in k + 1..n {
            vv = vv + v[i] * v[i];
        }
        if vv == T::zero() {
            continue;
        }
        // Left: rows k+1.. of H.
        for x in s[k..n].iter_mut() {
            *x = T::zero();
        }
        for i in k + 1..n {
            let vi = v[i];
            let row = h.row(i);
            for j in k..n {
                s[j] = s[j] + vi * row[j];
            }
        }
        for i in k + 1..n {
            let f = two * v[i] / vv;
            for j in k..n {
                h[(i, j)] = h[(i, j)] - f * s[j];
            }
        }
        // Right: columns k+1.. of H.
        for i in 0..n {
            let mut d = T::zero();
            for j in k + 1..n {
                d = d + h[(i, j)] * v[j];
            }
            let f = two * d / vv;
            for j in k + 1..n {
                h[(i, j)] = h[(i, j)] - f * v[j];
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = T::zero();
        }
    }
}

/// Eigenvalues of a real upper Hessenberg matrix (destroyed on return).
pub fn hqr<T: Real>(h: &mut DenseMatrix<T>) -> Result<Vec<Complex<T>>, EigError> {
    let nn = h.rows();
    let zero = T::zero();
    let eps = T::unit_roundoff();
    let half = T::of(0.5);
    let mut wr = vec![zero; nn];
    let mut wi = vec![zero; nn];
    let mut norm = zero;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm = norm + h[(i, j)].abs();
        }
    }
    let budget = 30 * nn.max(1);
    let mut total = 0usize;
    let mut iter = 0usize;
    let mut exshift = zero;
    let mut top = nn;
    let (mut p, mut q, mut r, mut s, mut z);
    let (mut w, mut x, mut y);

    while top > 0 {
        let n = top - 1;
        let mut l = n;
        while l > 0 {
            s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == zero {
                s = norm;
            }
            if h[(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            wr[n] = h[(n, n)] + exshift;
            wi[n] = zero;
            top -= 1;
            iter = 0;
        } else if l + 1 == n {
            w = h[(n, n - 1)] * h[(n - 1, n)];
            p = (h[(n - 1, n - 1)] - h[(n, n)]) * half;
            q = p * p + w;
            z = q.abs().sqrt();
            x = h[(n, n)] + exshift;
            if q >= zero {
                z = if p >= zero { p + z } else { p - z };
                wr[n - 1] = x + z;
                wr[n] = if z != zero { x - w / z } else { x + z };
                wi[n - 1] = zero;
                wi[n] = zero;
            } else {
                wr[n - 1] = x + p;
                wr[n] = x + p;
                wi[n - 1] = z;
                wi[n] = -z;
            }
            top -= 2;
            iter = 0;
        } else {
            x = h[(n, n)];
            y = h[(n - 1, n - 1)];
            w = h[(n, n - 1)] * h[(n - 1, n)];
            if iter > 0 && iter % 10 == 0 {
                if (iter / 10) % 2 == 1 {
                    exshift = exshift + x;
                    for i in 0..=n {
                        h[(i, i)] = h[(i, i)] - x;
                    }
                    s = h[(n, n - 1)].abs() + h[(n - 1, n - 2)].abs();
                    x = T::of(0.75) * s;
                    y = x;
                    w = T::of(-0.4375) * s * s;
                } else {
                    s = (y - x) * half;
                    s = s * s + w;
                    if s > zero {
                        s = s.sqrt();
                        if y < x {
                            s = -s;
                        }
                        s = x - w / ((y - x) * half + s);
                        for i in 0..=n {
                            h[(i, i)] = h[(i, i)] - s;
                        }
                        exshift = exshift + s;
                        x = T::of(0.964);
                        y = x;
                        w = x;
                    }
                }
            }
            iter += 1;
            total += 1;
            if total > budget {
                let partial = (top..nn).map(|i| Complex::new(wr[i].as_f64(), wi[i].as_f64())).collect();
                return Err(EigError::NoConvergence { budget, partial });
            }

            let mut m = n - 2;
            loop {
                z = h[(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - r - s;
                r = h[(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if m == l {
                    break;
                }
                let lhs = h[(m, m - 1)].abs() * (q.abs() + r.abs());
                let rhs = eps * (p.abs() * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs()));
                if lhs < rhs {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=n {
                h[(i, i - 2)] = zero;
                if i > m + 2 {
                    h[(i, i - 3)] = zero;
                }
            }

            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { zero };
                    x = p.abs() + q.abs() + r.abs();
                    if x == zero {
                        continue;
                    }
                    p = p / x;
                    q = q / x;
                    r = r / x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < zero {
                    s = -s;
                }
                if s == zero {
                    continue;
                }
                if k != m {
                    h[(k, k - 1)] = -s * x;
                } else if l != m {
                    h[(k, k - 1)] = -h[(k, k - 1)];
                }
                p = p + s;
                x = p / s;
                y = q / s;
                z = r / s;
                q = q / p;
                r = r / p;
                for j in k..=n {
                    p = h[(k, j)] + q * h[(k + 1, j)];
                    if notlast {
                        p = p + r * h[(k + 2, j)];
                        h[(k + 2, j)] = h[(k + 2, j)] - p * z;
                    }
                    h[(k, j)] = h[(k, j)] - p * x;
                    h[(k + 1, j)] = h[(k + 1, j)] - p * y;
                }
                for i in l..=n.min(k + 3) {
                    p = x * h[(i, k)] + y * h[(i, k + 1)];
                    if notlast {
                        p = p + z * h[(i, k + 2)];
                        h[(i, k + 2)] = h[(i, k + 2)] - p * r;
                    }
                    h[(i, k)] = h[(i, k)] - p;
                    h[(i, k + 1)] = h[(i, k + 1)] - p * q;
                }
            }
        }
    }
    Ok(wr.into_iter().zip(wi).map(|(re, im)| Complex::new(re, im)).collect())
}

/// All eigenvalues of a real square matrix.
pub fn eig_real<T: Real>(a: &DenseMatrix<T>) -> Result<Vec<Complex<T>>, EigError> {
    if !a.is_square() {
        return Err(EigError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(EigError::NonFinite);
    }
    let mut h = a.clone();
    balance(&mut h);
    if !is_hessenberg(&h) {
        hessenberg(&mut h);
    }
    hqr(&mut h)
}
