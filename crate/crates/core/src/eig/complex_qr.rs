//! Complex balancing, Hessenberg reduction, single-shift QR and inverse
//! iteration for eigenvectors.

use super::EigError;
use crate::matrix::DenseMatrix;
use num_complex::Complex64;

type C = Complex64;

#[inline]
pub(crate) fn cabs1(z: C) -> f64 {
    z.re.abs() + z.im.abs()
}

pub fn balance(a: &mut DenseMatrix<C>) -> Vec<f64> {
    let n = a.rows();
    let mut scale = vec![1.0; n];
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += cabs1(a[(j, i)]);
                    r += cabs1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c >= g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                scale[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            return scale;
        }
    }
}

/// Householder reduction `A = Q H Q^H`. `Q` is accumulated when requested.
pub fn hessenberg(h: &mut DenseMatrix<C>, want_q: bool) -> Option<DenseMatrix<C>> {
    let n = h.rows();
    let mut q = want_q.then(|| DenseMatrix::<C>::identity(n));
    let zero = C::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut s = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C::new(1.0, 0.0) };
        let alpha = -phase * norm;
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vv: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;
        // H <- (I - beta v v^H) H
        for x in s[k..n].iter_mut() {
            *x = zero;
        }
        for i in k + 1..n {
            let vc = v[i].conj();
            for j in k..n {
                s[j] += vc * h[(i, j)];
            }
        }
        for i in k + 1..n {
            let f = v[i] * beta;
            for j in k..n {
                h[(i, j)] -= f * s[j];
            }
        }
        // H <- H (I - beta v v^H)
        for i in 0..n {
            let mut d = zero;
            for j in k + 1..n {
                d += h[(i, j)] * v[j];
            }
            let f = d * beta;
            for j in k + 1..n {
                h[(i, j)] -= f * v[j].conj();
            }
        }
        if let Some(q) = q.as_mut() {
            for i in 0..n {
                let mut d = zero;
                for j in k + 1..n {
                    d += q[(i, j)] * v[j];
                }
                let f = d * beta;
                for j in k + 1..n {
                    q[(i, j)] -= f * v[j].conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = zero;
        }
    }
    q
}

/// Eigenvalue of the 2×2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C, b: C, c: C, d: C) -> C {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let den = if (p + disc).norm() >= (p - disc).norm() { p + disc } else { p - disc };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Eigenvalues of a complex upper Hessenberg matrix (destroyed on return).
pub fn hqr(h: &mut DenseMatrix<C>) -> Result<Vec<C>, EigError> {
    let nn = h.rows();
    let eps = f64::EPSILON;
    let zero = C::new(0.0, 0.0);
    let mut w = vec![zero; nn];
    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += cabs1(h[(i, j)]);
        }
    }
    let budget = 30 * nn.max(1);
    let mut total = 0;
    let mut iter = 0;
    let mut top = nn;
    while top > 0 {
        let n = top - 1;
        let mut l = n;
        while l > 0 {
            let mut s = cabs1(h[(l - 1, l - 1)]) + cabs1(h[(l, l)]);
            if s == 0.0 {
                s = norm;
            }
            if cabs1(h[(l, l - 1)]) < eps * s {
                h[(l, l - 1)] = zero;
                break;
            }
            l -= 1;
        }
        if l == n {
            w[n] = h[(n, n)];
            top -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > budget {
            return Err(EigError::NoConvergence { budget, partial: w[top..].to_vec() });
        }
        let mu = if iter % 10 == 0 {
            h[(n, n)] + 0.75 * cabs1(h[(n, n - 1)])
        } else {
            wilkinson_shift(h[(n - 1, n - 1)], h[(n - 1, n)], h[(n, n - 1)], h[(n, n)])
        };

        let mut x = h[(l, l)] - mu;
        let mut y = h[(l + 1, l)];
        for k in l..n {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let rho = (x.norm_sqr() + y.norm_sqr()).sqrt();
            if rho == 0.0 {
                continue;
            }
            let (c, s) = if x.norm() == 0.0 {
                (0.0, C::new(1.0, 0.0))
            } else {
                (x.norm() / rho, (x / x.norm()) * y.conj() / rho)
            };
            let sc = s.conj();
            for j in (if k > l { k - 1 } else { l })..=n {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = b * c - sc * a;
            }
            if k > l {
                h[(k + 1, k - 1)] = zero;
            }
            for i in l..=n.min(k + 2) {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + sc * b;
                h[(i, k + 1)] = b * c - s * a;
            }
        }
    }
    Ok(w)
}

/// Eigenvectors of the Hessenberg matrix `h` by inverse iteration.
/// Column `k` of the result belongs to `lambda[k]`.
pub fn inverse_iteration(h: &DenseMatrix<C>, lambda: &[C]) -> DenseMatrix<C> {
    let n = h.rows();
    let hnorm: f64 = h.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * hnorm;
    let mut out = DenseMatrix::zeros(n, n);
    let mut lu = DenseMatrix::zeros(n, n);
    for (k, &lam) in lambda.iter().enumerate() {
        // Slightly perturbed shift keeps the factorization nonsingular.
        let shift = lam + C::new(tiny, tiny);
        for i in 0..n {
            for j in 0..n {
                lu[(i, j)] = if i == j { h[(i, j)] - shift } else { h[(i, j)] };
            }
        }
        // Hessenberg LU: only one subdiagonal entry to eliminate per column.
        let mut swapped = vec![false; n];
        for c in 0..n.saturating_sub(1) {
            if cabs1(lu[(c + 1, c)]) > cabs1(lu[(c, c)]) {
                swapped[c] = true;
                for j in c..n {
                    let t = lu[(c, j)];
                    lu[(c, j)] = lu[(c + 1, j)];
                    lu[(c + 1, j)] = t;
                }
            }
            if lu[(c, c)].norm() == 0.0 {
                lu[(c, c)] = C::new(tiny, 0.0);
            }
            let m = lu[(c + 1, c)] / lu[(c, c)];
            lu[(c + 1, c)] = m;
            for j in c + 1..n {
                let u = lu[(c, j)];
                lu[(c + 1, j)] -= m * u;
            }
        }
        if lu[(n - 1, n - 1)].norm() == 0.0 {
            lu[(n - 1, n - 1)] = C::new(tiny, 0.0);
        }
        let mut x: Vec<C> = (0..n).map(|i| C::new(1.0 + 0.1 * (i % 7) as f64, 0.0)).collect();
        for _ in 0..3 {
            for c in 0..n.saturating_sub(1) {
                if swapped[c] {
                    x.swap(c, c + 1);
                }
                let m = lu[(c + 1, c)];
                let xc = x[c];
                x[c + 1] -= m * xc;
            }
            for i in (0..n).rev() {
                let mut s = x[i];
                for j in i + 1..n {
                    s -= lu[(i, j)] * x[j];
                }
                x[i] = s / lu[(i, i)];
            }
            let nrm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nrm > 0.0 && nrm.is_finite() {
                x.iter_mut().for_each(|z| *z /= nrm);
            }
        }
        for i in 0..n {
            out[(i, k)] = x[i];
        }
    }
    out
}
