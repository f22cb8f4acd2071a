//! Critical couplings where eigenvalue pairs coalesce.
//!
//! On the real axis the pair `(E_p, E_q)` is picked by position in the
//! ordered physical spectrum at `g = ia` and the root of
//! `gap^2(a) = (E_p - E_q)^2` is bracketed with double-precision spectra.
//! The root is then refined on the real form of `H(ia)` in double-double
//! arithmetic, where the pair's invariant subspace gives `gap^2` without
//! the square-root sensitivity of individual eigenvalues at the
//! exceptional point.
//!
//! Off the real axis, [`find_complex_ep`] follows two levels from `g = 0`
//! and solves `h(g) = (E_i - E_j)^2 = 0` by a complex secant iteration.

use crate::eig::{eig_dense, eig_real, eig_tridiagonal, nearest_pair, EigError, Spectrum};
use crate::model::{build_hamiltonian, Family, ModelError, ModelSpec, RealPencil, Storage};
use crate::scalar::{DoubleDouble, Real};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EpError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error("no sign change of the squared gap on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
    #[error("pair identification lost: {0}")]
    Tracking(String),
    #[error("complex secant did not converge in {iterations} iterations (|h| = {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub n: usize,
    pub e_n: f64,
    pub a_n: f64,
    pub n_used: usize,
    /// `|gap^2|` at the returned coupling.
    pub residual: f64,
    /// From [`find_critical`]: `residual <= (GAP_TOL * max(1, |e_n|))^2`.
    /// From [`converge_critical`]: successive basis sizes agree to `tol`.
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexEp {
    pub g_c: Complex64,
    pub e_c: Complex64,
    /// Level labels of the coalescing pair.
    pub pair: (usize, usize),
    pub n_used: usize,
    /// `|h(g_c)|`.
    pub residual: f64,
    pub iterations: usize,
}

/// Gap tolerance, relative to `max(1, |e_n|)`, behind the residual
/// contract of [`CriticalPoint`].
pub const GAP_TOL: f64 = 1e-6;

/// Default basis-size schedule of [`converge_critical`]: 40, 60, ..., 300.
pub fn default_schedule() -> Vec<usize> {
    (40..=300).step_by(20).collect()
}

/// Full spectrum of `model`, ordered by real part.
///
/// Purely imaginary couplings go through the real form and real QR, so
/// conjugate pairs come out exactly conjugate.
pub fn model_spectrum(model: &ModelSpec) -> Result<Spectrum, EpError> {
    model.validate()?;
    let g = model.coupling;
    let spectrum = if g.re == 0.0 {
        let r = RealPencil::<f64>::new(model.family, model.m_abs, model.truncation)?.at(g.im);
        Spectrum::by_real_part(g, eig_real(&r)?)
    } else {
        match build_hamiltonian(model)?.storage {
            Storage::Dense(m) => eig_dense(&m, false)?.0,
            Storage::Tridiagonal { diag, off } => eig_tridiagonal(&diag, &off)?,
        }
    };
    Ok(spectrum.with_coupling(g))
}

/// Largest `|Im E|` accepted as a physical level.
///
/// Truncating the cubic oscillator produces eigenvalues with imaginary
/// parts in the hundreds to thousands that interleave with the physical
/// levels in real part. They are dropped; other families keep everything.
fn spurious_cutoff(family: Family, g: Complex64) -> f64 {
    match family {
        Family::Cubic => 4.0 * (1.0 + g.norm()).powf(1.5),
        _ => f64::INFINITY,
    }
}

/// Ordered physical levels of a spectrum computed for `model`.
pub fn physical_levels(model: &ModelSpec, spectrum: &Spectrum) -> Vec<Complex64> {
    let cut = spurious_cutoff(model.family, spectrum.coupling);
    let mut v: Vec<Complex64> = spectrum.eigenvalues.iter().copied().filter(|z| z.im.abs() <= cut).collect();
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Ordered physical levels of `model` at its coupling.
pub fn levels(model: &ModelSpec) -> Result<Vec<Complex64>, EpError> {
    let s = model_spectrum(model)?;
    Ok(physical_levels(model, &s))
}

fn pair_of(model: &ModelSpec, n: usize, levels: &[Complex64]) -> Result<(Complex64, Complex64), EpError> {
    let (p, q) = model
        .family
        .pair_indices(n)
        .ok_or_else(|| EpError::Tracking(format!("{} has no pair n = {n}", model.family)))?;
    if q >= levels.len() {
        return Err(EpError::Tracking(format!(
            "pair n = {n} needs {} physical levels, found {}",
            q + 1,
            levels.len()
        )));
    }
    Ok((levels[p], levels[q]))
}

/// `(E_p - E_q)^2` for the `n`-th pair at `g = ia` with basis size `basis`.
pub fn pair_gap_sq(model: &ModelSpec, n: usize, a: f64, basis: usize) -> Result<Complex64, EpError> {
    let spec = model.with_a(a).with_truncation(basis);
    let (e1, e2) = pair_of(&spec, n, &levels(&spec)?)?;
    Ok((e1 - e2) * (e1 - e2))
}

/// Re gap^2 and pair mean, double precision.
fn probe_f64(model: &ModelSpec, n: usize, a: f64, basis: usize) -> Result<(f64, f64), EpError> {
    let spec = model.with_a(a).with_truncation(basis);
    let (e1, e2) = pair_of(&spec, n, &levels(&spec)?)?;
    Ok((((e1 - e2) * (e1 - e2)).re, 0.5 * (e1.re + e2.re)))
}

/// Coarse bracket from the unperturbed pair: 50 steps over `[0, 4 e]`
/// (negative `a` for the cubic model).
pub fn default_bracket(model: &ModelSpec, n: usize, basis: usize) -> Result<(f64, f64), EpError> {
    let (_, e0) = probe_f64(model, n, 0.0, basis)?;
    let span = 4.0 * e0.abs().max(1.0);
    let dir = if model.family == Family::Cubic { -1.0 } else { 1.0 };
    let steps = 50;
    let mut prev = (0.0, probe_f64(model, n, 0.0, basis)?.0);
    for k in 1..=steps {
        let a = dir * span * k as f64 / steps as f64;
        let Ok((g, _)) = probe_f64(model, n, a, basis) else { continue };
        if prev.1 > 0.0 && g <= 0.0 {
            return Ok(if dir > 0.0 { (prev.0, a) } else { (a, prev.0) });
        }
        prev = (a, g);
    }
    Err(EpError::Bracket { lo: dir.min(0.0) * span, hi: dir.max(0.0) * span })
}

/// Gap-squared and mean from the double-double invariant pair.
struct Refiner {
    pencil: RealPencil<DoubleDouble>,
}

impl Refiner {
    fn probe(&self, a: f64, shift: f64) -> Result<(f64, f64), EpError> {
        let m = self.pencil.at(DoubleDouble::of(a));
        let p = nearest_pair(&m, DoubleDouble::of(shift))?;
        Ok((p.gap_sq().as_f64(), p.mean().as_f64()))
    }
}

/// Critical point of pair `n` at basis size `basis` inside `bracket`.
pub fn find_critical(
    model: &ModelSpec,
    n: usize,
    basis: usize,
    bracket: (f64, f64),
) -> Result<CriticalPoint, EpError> {
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    let (flo, mlo) = probe_f64(model, n, lo, basis)?;
    let (fhi, mhi) = probe_f64(model, n, hi, basis)?;
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(EpError::Bracket { lo, hi });
    }
    let sign_lo = flo.signum();

    // Bisect in double precision until the pair is well separated from its
    // neighbours relative to its own gap.
    let mut mean = if flo.abs() < fhi.abs() { mlo } else { mhi };
    let width = 1e-3 * lo.abs().max(hi.abs()).max(1.0);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        let (fm, mm) = probe_f64(model, n, mid, basis)?;
        mean = mm;
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let refiner = Refiner { pencil: RealPencil::new(model.family, model.m_abs, basis)? };
    let mut shift = mean;
    let (mut glo, m1) = refiner.probe(lo, shift)?;
    let (mut ghi, _) = refiner.probe(hi, m1)?;
    if glo.signum() == ghi.signum() {
        return Err(EpError::Tracking(format!(
            "extended-precision gap has no sign change on [{lo}, {hi}]"
        )));
    }
    shift = m1;

    // Illinois regula falsi on the double-double gap.
    let mut side = 0i8;
    let mut root = if glo.abs() < ghi.abs() { lo } else { hi };
    let mut groot = glo.abs().min(ghi.abs());
    for _ in 0..100 {
        let mut r = (lo * ghi - hi * glo) / (ghi - glo);
        if !(r > lo && r < hi) {
            r = 0.5 * (lo + hi);
        }
        let (gr, mr) = refiner.probe(r, shift)?;
        shift = mr;
        let step = (r - root).abs();
        root = r;
        groot = gr;
        if gr == 0.0 {
            break;
        }
        if gr.signum() == ghi.signum() {
            hi = r;
            ghi = gr;
            if side == -1 {
                glo *= 0.5;
            }
            side = -1;
        } else {
            lo = r;
            glo = gr;
            if side == 1 {
                ghi *= 0.5;
            }
            side = 1;
        }
        if step <= 1e-13 * r.abs().max(1e-3) || hi - lo <= 1e-12 * r.abs().max(1e-3) {
            break;
        }
    }

    // The refined pair must be the one the index convention selects.
    let (_, check) = probe_f64(model, n, root, basis)?;
    if (check - shift).abs() > 1e-6 * shift.abs().max(1.0) {
        return Err(EpError::Tracking(format!(
            "refined pair mean {shift} does not match level pair mean {check} at a = {root}"
        )));
    }
    let residual = groot.abs();
    Ok(CriticalPoint {
        n,
        e_n: shift,
        a_n: root,
        n_used: basis,
        residual,
        converged: residual <= (GAP_TOL * shift.abs().max(1.0)).powi(2),
    })
}

/// [`find_critical`] with the [`default_bracket`].
pub fn find_critical_auto(model: &ModelSpec, n: usize, basis: usize) -> Result<CriticalPoint, EpError> {
    let b = default_bracket(model, n, basis)?;
    find_critical(model, n, basis, b)
}

/// Bracket around a previous estimate, widened until the gap changes sign.
fn local_bracket(model: &ModelSpec, n: usize, basis: usize, a: f64) -> Result<(f64, f64), EpError> {
    let mut d = 1e-3 * a.abs().max(1.0);
    for _ in 0..5 {
        let (lo, hi) = (a - d, a + d);
        if let (Ok((f1, _)), Ok((f2, _))) = (probe_f64(model, n, lo, basis), probe_f64(model, n, hi, basis)) {
            if f1.signum() != f2.signum() {
                return Ok((lo, hi));
            }
        }
        d *= 8.0;
    }
    default_bracket(model, n, basis)
}

/// Run [`find_critical`] over increasing basis sizes until `(a_n, e_n)`
/// change by less than `tol` between successive sizes.
pub fn converge_critical(
    model: &ModelSpec,
    n: usize,
    tol: f64,
    schedule: &[usize],
) -> Result<CriticalPoint, EpError> {
    let mut prev: Option<CriticalPoint> = None;
    let mut last_err = None;
    for &basis in schedule {
        let bracket = match prev {
            Some(p) => local_bracket(model, n, basis, p.a_n),
            None => default_bracket(model, n, basis),
        };
        let cp = match bracket.and_then(|b| find_critical(model, n, basis, b)) {
            Ok(cp) => cp,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        if let Some(p) = prev {
            if (cp.a_n - p.a_n).abs() < tol && (cp.e_n - p.e_n).abs() < tol {
                return Ok(CriticalPoint { converged: true, ..cp });
            }
        }
        prev = Some(cp);
    }
    match (prev, last_err) {
        (Some(p), _) => Ok(CriticalPoint { converged: false, ..p }),
        (None, Some(e)) => Err(e),
        (None, None) => Err(EpError::Tracking("empty basis-size schedule".into())),
    }
}

/// Follow the values `from` (taken at `g_from`) to `g_to`.
///
/// A step is accepted when the followed values have distinct successors
/// and every other level stays at least three times farther away. Otherwise the step is halved. The followed values may approach
/// each other; only outside levels count as competitors.
fn continue_levels(
    spectrum: &dyn Fn(Complex64) -> Result<Vec<Complex64>, EpError>,
    g_from: Complex64,
    from: &[Complex64],
    g_to: Complex64,
) -> Result<Vec<Complex64>, EpError> {
    let mut cur = from.to_vec();
    let mut t = 0.0f64;
    let mut dt = 1.0f64;
    while t < 1.0 {
        let step = dt.min(1.0 - t);
        let next = spectrum(g_from + (g_to - g_from) * (t + step))?;
        match follow(&cur, &next) {
            Some(v) => {
                cur = v;
                t += step;
                dt = (2.0 * step).min(1.0);
            }
            None if step > 1e-9 => dt = step / 2.0,
            None => return Err(EpError::Tracking("followed levels collide along the path".into())),
        }
    }
    Ok(cur)
}

fn follow(cur: &[Complex64], next: &[Complex64]) -> Option<Vec<Complex64>> {
    // Joint assignment to distinct successors with the least total distance.
    let cost = |p: &[usize]| p.iter().zip(cur).map(|(&k, v)| (next[k] - v).norm()).sum::<f64>();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut p = vec![0usize; cur.len()];
    loop {
        let distinct = (0..p.len()).all(|i| !p[..i].contains(&p[i]));
        if distinct {
            let c = cost(&p);
            if best.as_ref().map_or(true, |b| c < b.0) {
                best = Some((c, p.clone()));
            }
        }
        // Odometer over all index tuples; callers follow one or two values.
        let mut i = 0;
        while i < p.len() {
            p[i] += 1;
            if p[i] < next.len() {
                break;
            }
            p[i] = 0;
            i += 1;
        }
        if i == p.len() {
            break;
        }
    }
    let (_, picks) = best?;
    for (i, &k) in picks.iter().enumerate() {
        let d = (next[k] - cur[i]).norm();
        let rival = (0..next.len())
            .filter(|j| !picks.contains(j))
            .map(|j| (next[j] - cur[i]).norm())
            .fold(f64::INFINITY, f64::min);
        if d > rival / 3.0 {
            return None;
        }
    }
    Some(picks.iter().map(|&k| next[k]).collect())
}

/// Pick the two eigenvalues of `spec` closest to `(t0, t1)`, rejecting a
/// third level that competes for either slot.
fn nearest_pair_values(spec: &[Complex64], t0: Complex64, t1: Complex64) -> Result<(Complex64, Complex64), EpError> {
    let mut best = (f64::INFINITY, 0, 0);
    let mut second = f64::INFINITY;
    for i in 0..spec.len() {
        for j in 0..spec.len() {
            if i == j {
                continue;
            }
            let c = (spec[i] - t0).norm() + (spec[j] - t1).norm();
            let same_set = |a: usize, b: usize| (a == best.1 && b == best.2) || (a == best.2 && b == best.1);
            if c < best.0 {
                if !same_set(i, j) {
                    second = best.0;
                }
                best = (c, i, j);
            } else if c < second && !same_set(i, j) {
                second = c;
            }
        }
    }
    let scale = t0.norm().max(t1.norm()).max(1.0);
    if second - best.0 <= 1e-9 * scale {
        return Err(EpError::Tracking("a third level collides with the tracked pair".into()));
    }
    Ok((spec[best.1], spec[best.2]))
}

/// Complex exceptional point for an arbitrary spectrum map `g -> eigenvalues`.
///
/// `idx` are positions in the real-part ordering at `g = 0`.
pub fn find_complex_ep_with(
    spectrum: &dyn Fn(Complex64) -> Result<Vec<Complex64>, EpError>,
    idx: (usize, usize),
    g0: Complex64,
) -> Result<(Complex64, Complex64, f64, usize), EpError> {
    let zero = Complex64::new(0.0, 0.0);
    let mut start = spectrum(zero)?;
    start.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    if idx.0 >= start.len() || idx.1 >= start.len() || idx.0 == idx.1 {
        return Err(EpError::Tracking(format!("invalid pair {:?} for {} levels", idx, start.len())));
    }
    let vals = continue_levels(spectrum, zero, &[start[idx.0], start[idx.1]], g0)?;
    let mut t = (vals[0], vals[1]);

    let h = |g: Complex64, t: (Complex64, Complex64)| -> Result<(Complex64, (Complex64, Complex64)), EpError> {
        let s = spectrum(g)?;
        let (a, b) = nearest_pair_values(&s, t.0, t.1)?;
        Ok(((a - b) * (a - b), (a, b)))
    };

    let mut g_prev = g0;
    let (mut h_prev, tp) = h(g0, t)?;
    t = tp;
    let mut g = g0 * Complex64::new(1.0 + 1e-4, 0.0);
    if g == g0 {
        g = g0 + Complex64::new(1e-4, 0.0);
    }
    let (mut h_cur, tc) = h(g, t)?;
    t = tc;
    for it in 1..=200 {
        if h_cur.norm() <= 1e-10 {
            return Ok((g, 0.5 * (t.0 + t.1), h_cur.norm(), it));
        }
        let denom = h_cur - h_prev;
        if denom.norm() == 0.0 {
            break;
        }
        let mut step = h_cur * (g - g_prev) / denom;
        let cap = 0.25 * g.norm().max(1.0);
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        let g_next = g - step;
        // Carry the pair along the step so the identity survives large moves.
        let moved = continue_levels(spectrum, g, &[t.0, t.1], g_next)?;
        t = (moved[0], moved[1]);
        let (h_next, tn) = h(g_next, t)?;
        t = tn;
        g_prev = g;
        h_prev = h_cur;
        g = g_next;
        h_cur = h_next;
        if step.norm() <= 1e-14 * g.norm().max(1.0) {
            return Ok((g, 0.5 * (t.0 + t.1), h_cur.norm(), it));
        }
    }
    if h_cur.norm() <= 1e-10 {
        return Ok((g, 0.5 * (t.0 + t.1), h_cur.norm(), 200));
    }
    Err(EpError::NoConvergence { iterations: 200, residual: h_cur.norm() })
}

/// Complex coupling where levels `pair` (family labels, box levels from 1)
/// coalesce, searched from `g0` at basis size `basis`.
pub fn find_complex_ep(
    model: &ModelSpec,
    pair: (usize, usize),
    g0: Complex64,
    basis: usize,
) -> Result<ComplexEp, EpError> {
    let base = model.with_truncation(basis);
    base.validate()?;
    let off = model.family.first_level();
    if pair.0 < off || pair.1 < off {
        return Err(EpError::Tracking(format!("{} levels start at {off}", model.family)));
    }
    let spectrum = |g: Complex64| -> Result<Vec<Complex64>, EpError> {
        let spec = base.with_coupling(g);
        let s = model_spectrum(&spec)?;
        Ok(physical_or_all(&spec, s))
    };
    let (g_c, e_c, residual, iterations) = find_complex_ep_with(&spectrum, (pair.0 - off, pair.1 - off), g0)?;
    Ok(ComplexEp { g_c, e_c, pair, n_used: basis, residual, iterations })
}

/// Physical levels when their count does not depend on `g`; otherwise the
/// whole spectrum, so that trajectory matching sees a fixed size.
fn physical_or_all(spec: &ModelSpec, s: Spectrum) -> Vec<Complex64> {
    if spec.family == Family::Cubic {
        s.eigenvalues
    } else {
        physical_levels(spec, &s)
    }
}
