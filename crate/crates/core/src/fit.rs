//! Least-squares fits of the scaling laws `a = b + c e^s` and `a = b + c e`.
//!
//! Points are sorted by `(e, a)` before fitting, so the result does not
//! depend on the input order.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    /// `(b, c, s)` for the power law, `(b, c)` for the linear fit.
    pub params: Vec<f64>,
    pub stderr: Vec<f64>,
    pub rss: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Norm of `J^T r` at the returned point, with each Jacobian column
    /// scaled to unit length.
    pub gradient_norm: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("abscissa {0} is not positive")]
    NonPositiveAbscissa(f64),
    #[error("non-finite data point ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("normal equations are singular")]
    RankDeficient,
    #[error("all abscissae are equal")]
    DegenerateAbscissa,
    #[error("no convergence after {} iterations (rss {:.3e})", best.iterations, best.rss)]
    NotConverged { best: Box<FitResult> },
}

/// Controls for [`fit_power_law_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    /// Starting `(b, c, s)`. By default `s` is the best point of a scan
    /// over `0.05..=3`, with `(b, c)` solved linearly at each `s`.
    pub init: Option<[f64; 3]>,
    /// Hold the exponent at this value and fit `(b, c)` only.
    pub frozen_exponent: Option<f64>,
    pub max_iterations: usize,
    /// Convergence when the column-scaled `|J^T r|` is at most
    /// `gradient_tol * max(1, rss)`.
    pub gradient_tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { init: None, frozen_exponent: None, max_iterations: 500, gradient_tol: 1e-10 }
    }
}

fn canonical(points: &[(f64, f64)]) -> Result<Vec<(f64, f64)>, FitError> {
    for &(e, a) in points {
        if !e.is_finite() || !a.is_finite() {
            return Err(FitError::NonFinite(e, a));
        }
    }
    let mut p = points.to_vec();
    p.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    Ok(p)
}

/// Fit `a = b + c e^s` with default options.
pub fn fit_power_law(points: &[(f64, f64)], init: Option<[f64; 3]>) -> Result<FitResult, FitError> {
    fit_power_law_with(points, &FitOptions { init, ..FitOptions::default() })
}

pub fn fit_power_law_with(points: &[(f64, f64)], opts: &FitOptions) -> Result<FitResult, FitError> {
    let pts = canonical(points)?;
    let np = if opts.frozen_exponent.is_some() { 2 } else { 3 };
    if pts.len() < np + 1 {
        return Err(FitError::TooFewPoints { need: np + 1, got: pts.len() });
    }
    if let Some(&(e, _)) = pts.iter().find(|p| p.0 <= 0.0) {
        return Err(FitError::NonPositiveAbscissa(e));
    }
    let init = match opts.init {
        Some(x) => x,
        None => scan_start(&pts, opts.frozen_exponent)?,
    };
    let mut p = init[..np].to_vec();
    let s_of = |p: &[f64]| opts.frozen_exponent.unwrap_or_else(|| p[2]);

    // Residuals r = a - f and Jacobian rows of f.
    let eval = |p: &[f64]| -> (Vec<f64>, Vec<Vec<f64>>, f64) {
        let s = s_of(p);
        let mut r = Vec::with_capacity(pts.len());
        let mut jac = Vec::with_capacity(pts.len());
        for &(e, a) in &pts {
            let es = e.powf(s);
            r.push(a - p[0] - p[1] * es);
            let mut row = vec![1.0, es];
            if np == 3 {
                row.push(p[1] * es * e.ln());
            }
            jac.push(row);
        }
        let rss = r.iter().map(|x| x * x).sum();
        (r, jac, rss)
    };

    let mut lambda = 1e-3;
    let mut iterations = 0;
    let (mut r, mut jac, mut rss) = eval(&p);
    let mut converged = false;
    let mut gnorm;
    loop {
        let (jtj, g) = normal_equations(&jac, &r);
        gnorm = scaled_norm(&jtj, &g);
        if !rss.is_finite() {
            return Err(FitError::RankDeficient);
        }
        if gnorm <= opts.gradient_tol * rss.max(1.0) {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        iterations += 1;
        let mut improved = false;
        while lambda < 1e20 {
            if let Some(delta) = damped_step(&jac, &r, lambda) {
                let trial: Vec<f64> = p.iter().zip(&delta).map(|(x, d)| x + d).collect();
                let (tr, tj, trss) = eval(&trial);
                // Within the rounding of rss, a step still counts when it
                // shrinks the gradient.
                let flat = trss.is_finite()
                    && trss <= rss + rss_rounding(&pts, &p, &r, s_of(&p))
                    && gradient_of(&tj, &tr) < gnorm;
                if trss.is_finite() && (trss < rss || flat) {
                    p = trial;
                    r = tr;
                    jac = tj;
                    rss = trss;
                    lambda = (lambda / 10.0).max(1e-15);
                    improved = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }

    let (jtj, _) = normal_equations(&jac, &r);
    let cov = invert(jtj).ok_or(FitError::RankDeficient)?;
    let dof = (pts.len() - np).max(1) as f64;
    let stderr = (0..np).map(|i| (cov[i][i].max(0.0) * rss / dof).sqrt()).collect();
    let result = FitResult { params: p, stderr, rss, iterations, converged, gradient_norm: gnorm };
    if converged {
        Ok(result)
    } else {
        Err(FitError::NotConverged { best: Box::new(result) })
    }
}

/// Ordinary least squares `a = b + c e`.
pub fn fit_linear(points: &[(f64, f64)]) -> Result<FitResult, FitError> {
    let pts = canonical(points)?;
    if pts.len() < 2 {
        return Err(FitError::TooFewPoints { need: 2, got: pts.len() });
    }
    let m = pts.len() as f64;
    let xm = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let ym = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xm).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - xm) * (p.1 - ym)).sum();
    if sxx == 0.0 || pts.iter().all(|p| p.0 == pts[0].0) {
        return Err(FitError::DegenerateAbscissa);
    }
    let c = sxy / sxx;
    let b = ym - c * xm;
    let r: Vec<f64> = pts.iter().map(|&(e, a)| a - b - c * e).collect();
    let rss: f64 = r.iter().map(|x| x * x).sum();
    let g0: f64 = r.iter().sum::<f64>() / m.sqrt();
    let g1: f64 = r.iter().zip(&pts).map(|(ri, p)| ri * p.0).sum::<f64>()
        / pts.iter().map(|p| p.0 * p.0).sum::<f64>().sqrt();
    let sigma2 = rss / (pts.len().saturating_sub(2)).max(1) as f64;
    let stderr = vec![(sigma2 * (1.0 / m + xm * xm / sxx)).sqrt(), (sigma2 / sxx).sqrt()];
    Ok(FitResult {
        params: vec![b, c],
        stderr,
        rss,
        iterations: 0,
        converged: true,
        gradient_norm: (g0 * g0 + g1 * g1).sqrt(),
    })
}

/// Bound on the rounding error of rss, from the error of each residual.
fn rss_rounding(pts: &[(f64, f64)], p: &[f64], r: &[f64], s: f64) -> f64 {
    let err: f64 = pts
        .iter()
        .zip(r)
        .map(|(&(e, a), ri)| ri.abs() * (a.abs() + p[0].abs() + (p[1] * e.powf(s)).abs()))
        .sum();
    8.0 * f64::EPSILON * err
}

/// Minimizer of `|J d - r|^2 + lambda |D d|^2`, `D` the column norms of
/// `J`, by Householder QR of the stacked matrix. Avoids squaring the
/// condition number of `J`.
fn damped_step(jac: &[Vec<f64>], r: &[f64], lambda: f64) -> Option<Vec<f64>> {
    let np = jac[0].len();
    let m = jac.len();
    let norms: Vec<f64> = (0..np).map(|j| jac.iter().map(|row| row[j] * row[j]).sum::<f64>().sqrt()).collect();
    if norms.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return None;
    }
    let mut a: Vec<Vec<f64>> = jac.iter().map(|row| (0..np).map(|j| row[j] / norms[j]).collect()).collect();
    let mut b = r.to_vec();
    for j in 0..np {
        let mut row = vec![0.0; np];
        row[j] = lambda.sqrt();
        a.push(row);
        b.push(0.0);
    }
    let rows = m + np;
    for k in 0..np {
        let alpha = (k..rows).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if alpha == 0.0 {
            return None;
        }
        let alpha = if a[k][k] > 0.0 { -alpha } else { alpha };
        let mut v: Vec<f64> = (k..rows).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for j in k..np {
            let t = 2.0 * (k..rows).map(|i| v[i - k] * a[i][j]).sum::<f64>() / vv;
            for i in k..rows {
                a[i][j] -= t * v[i - k];
            }
        }
        let t = 2.0 * (k..rows).map(|i| v[i - k] * b[i]).sum::<f64>() / vv;
        for i in k..rows {
            b[i] -= t * v[i - k];
        }
    }
    let mut y = vec![0.0; np];
    for i in (0..np).rev() {
        if a[i][i].abs() < 1e-14 {
            return None;
        }
        let s: f64 = (i + 1..np).map(|j| a[i][j] * y[j]).sum();
        y[i] = (b[i] - s) / a[i][i];
    }
    Some(y.iter().zip(&norms).map(|(yi, n)| yi / n).collect())
}

fn gradient_of(jac: &[Vec<f64>], r: &[f64]) -> f64 {
    let (jtj, g) = normal_equations(jac, r);
    scaled_norm(&jtj, &g)
}

fn scan_start(pts: &[(f64, f64)], frozen: Option<f64>) -> Result<[f64; 3], FitError> {
    let grid: Vec<f64> = match frozen {
        Some(s) => vec![s],
        None => (1..=60).map(|k| 0.05 * k as f64).collect(),
    };
    let mut best: Option<(f64, [f64; 3])> = None;
    for s in grid {
        let x: Vec<(f64, f64)> = pts.iter().map(|&(e, a)| (e.powf(s), a)).collect();
        let Ok(f) = fit_linear(&x) else { continue };
        if best.map_or(true, |(rss, _)| f.rss < rss) {
            best = Some((f.rss, [f.params[0], f.params[1], s]));
        }
    }
    best.map(|b| b.1).ok_or(FitError::DegenerateAbscissa)
}

fn scaled_norm(jtj: &[Vec<f64>], g: &[f64]) -> f64 {
    g.iter()
        .enumerate()
        .map(|(i, gi)| {
            let d = jtj[i][i].sqrt();
            if d > 0.0 { (gi / d).powi(2) } else { gi * gi }
        })
        .sum::<f64>()
        .sqrt()
}

fn normal_equations(jac: &[Vec<f64>], r: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let np = jac[0].len();
    let mut a = vec![vec![0.0; np]; np];
    let mut g = vec![0.0; np];
    for (row, ri) in jac.iter().zip(r) {
        for i in 0..np {
            g[i] += row[i] * ri;
            for j in 0..np {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    (a, g)
}

/// Symmetric positive definite solve with diagonal equilibration.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let d: Vec<f64> = (0..n).map(|i| a[i][i].sqrt()).collect();
    if d.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return None;
    }
    for i in 0..n {
        b[i] /= d[i];
        for j in 0..n {
            a[i][j] /= d[i] * d[j];
        }
    }
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[piv][k].abs() < 1e-14 {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x.iter().zip(&d).map(|(xi, di)| xi / di).collect())
}

fn invert(a: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        cols.push(solve(a.clone(), e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}
