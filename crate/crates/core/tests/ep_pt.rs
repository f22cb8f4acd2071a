//! Critical points, complex branch points and the box perturbation series.

mod common;

use common::{BOX, BOX_RADIUS, MATHIEU_EVEN, MATHIEU_ODD, QUARTIC, ROTOR_M1};
use ptcrit::ep::{self, find_critical, find_critical_auto, levels, pair_gap_sq};
use ptcrit::pt::{radius_converges, radius_sequence, rs_coefficients_box, PtError};
use ptcrit::{eig_tridiagonal, eval_series, find_complex_ep, fit_linear, Complex64, Family, ModelSpec, Storage};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r_squared(pts: &[(f64, f64)]) -> f64 {
    let f = fit_linear(pts).unwrap();
    let mean = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let tss: f64 = pts.iter().map(|p| (p.1 - mean).powi(2)).sum();
    1.0 - f.rss / tss
}

#[test]
fn pair_is_conjugate_just_past_critical_point() {
    for (family, n, a_n, basis) in [(Family::Box, 1, BOX[0].2, 100), (Family::Quartic, 0, QUARTIC[0].2, 120)] {
        let spec = ModelSpec::new(family, c(0.0, a_n * 1.001), basis);
        let lv = levels(&spec).unwrap();
        let (p, q) = family.pair_indices(n).unwrap();
        let (e1, e2) = (lv[p], lv[q]);
        assert!(e1.im.abs() > 1e-3, "{family:?}: pair still real {e1} {e2}");
        assert!((e1 - e2.conj()).norm() <= 1e-9 * e1.norm().max(1.0), "{family:?}: {e1} {e2}");
    }
}

#[test]
fn negated_bracket_gives_mirrored_critical_point() {
    for (family, n, basis) in [(Family::Quartic, 1, 120), (Family::Box, 2, 100)] {
        let model = ModelSpec::new(family, c(0.0, 0.0), basis);
        let plus = find_critical_auto(&model, n, basis).unwrap();
        let (lo, hi) = (plus.a_n * 0.9, plus.a_n * 1.1);
        let minus = find_critical(&model, n, basis, (-hi, -lo)).unwrap();
        assert!((minus.a_n + plus.a_n).abs() <= 1e-10, "{} vs {}", minus.a_n, plus.a_n);
        assert!((minus.e_n - plus.e_n).abs() <= 1e-10);
        assert!(plus.converged && minus.converged);
    }
}

#[test]
fn imaginary_start_stays_on_imaginary_axis() {
    let model = ModelSpec::new(Family::Box, c(0.0, 0.0), 60);
    let ep = find_complex_ep(&model, (1, 2), c(0.0, 12.0), 60).unwrap();
    assert!(ep.g_c.re.abs() <= 1e-9, "{}", ep.g_c);
    assert!((ep.g_c.im - BOX[0].2).abs() < 1e-6, "{}", ep.g_c);
}

#[test]
fn box_critical_point_is_stable_in_basis() {
    let model = ModelSpec::new(Family::Box, c(0.0, 0.0), 100);
    let a = find_critical_auto(&model, 1, 80).unwrap();
    let b = find_critical_auto(&model, 1, 100).unwrap();
    assert!((a.a_n - b.a_n).abs() <= 1e-10);
    assert!((a.e_n - b.e_n).abs() <= 1e-10);
}

#[test]
fn gap_squared_unfolds_linearly() {
    let cases = [
        (ModelSpec::new(Family::Box, c(0.0, 0.0), 100), 1, BOX[0].2),
        (ModelSpec::new(Family::Box, c(0.0, 0.0), 100), 2, BOX[1].2),
        (ModelSpec::new(Family::Box, c(0.0, 0.0), 100), 3, BOX[2].2),
        (ModelSpec::new(Family::Quartic, c(0.0, 0.0), 120), 0, QUARTIC[0].2),
        (ModelSpec::new(Family::MathieuEven, c(0.0, 0.0), 60), 0, MATHIEU_EVEN[0].2),
        (ModelSpec::new(Family::MathieuOdd, c(0.0, 0.0), 60), 1, MATHIEU_ODD[1].2),
        (ModelSpec::rotor(1, c(0.0, 0.0), 60), 0, ROTOR_M1[0].2),
    ];
    for (model, n, a_n) in cases {
        let d = 0.05 * a_n.abs();
        let pts: Vec<(f64, f64)> = (0..20)
            .map(|k| {
                let a = a_n - d + d * k as f64 / 19.0;
                (a, pair_gap_sq(&model, n, a, model.truncation).unwrap().re)
            })
            .collect();
        let r2 = r_squared(&pts);
        assert!(r2 >= 0.999, "{:?} n={n}: R^2 = {r2}", model.family);
    }
}

#[test]
fn mathieu_first_pair_coalesces() {
    let h = ptcrit::build_hamiltonian(&ModelSpec::new(Family::MathieuEven, c(0.0, 1.46876861378514), 60)).unwrap();
    let Storage::Tridiagonal { diag, off } = &h.storage else { unreachable!() };
    let s = eig_tridiagonal(diag, off).unwrap();
    let (e0, e1) = (s.eigenvalues[0], s.eigenvalues[1]);
    assert!((e0 - e1).norm() < 1e-6, "{e0} {e1}");
    assert!((e0.re - 2.08869890274970).abs() < 1e-6);
}

#[test]
fn missing_pair_is_reported() {
    let model = ModelSpec::new(Family::Box, c(0.0, 0.0), 10);
    assert!(matches!(pair_gap_sq(&model, 40, 1.0, 10), Err(ep::EpError::Tracking(_))));
}

#[test]
fn series_coefficients_survive_basis_doubling() {
    for n in 1..=4 {
        let k = 20;
        let a = rs_coefficients_box(n, k, 200).unwrap();
        let b = rs_coefficients_box(n, k, 400).unwrap();
        for j in 0..=k {
            let rel = ((a.coeff(j) - b.coeff(j)) / b.coeff(j)).abs();
            assert!(rel < 1e-10, "n={n} j={j}: {rel:e}");
        }
    }
}

#[test]
fn tiny_basis_is_caught_by_doubling() {
    match rs_coefficients_box(1, 10, 44) {
        Err(PtError::UnderResolved { basis_size, rel_change }) => {
            assert_eq!(basis_size, 44);
            assert!(rel_change > 1e-10);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn series_matches_diagonalization_inside_radius() {
    let coeffs = rs_coefficients_box(1, 20, 200).unwrap();
    let g = c(0.0, 6.0);
    let series = eval_series(&coeffs, g, 20);
    let dm = levels(&ModelSpec::new(Family::Box, g, 100)).unwrap()[0];
    assert!((series - dm).norm() < 1e-6, "{series} vs {dm}");
}

#[test]
fn radius_sequence_approaches_first_critical_point() {
    let coeffs = rs_coefficients_box(1, 100, 404).unwrap();
    let seq = radius_sequence(&coeffs);
    for &(k, want) in BOX_RADIUS {
        let got = seq[k - 1].unwrap();
        assert!((got - want).abs() < 1e-6, "k={k}: {got} vs {want}");
    }
    let tail: Vec<f64> = seq[8..].iter().map(|x| x.unwrap()).collect();
    assert!(tail.windows(2).all(|w| w[1] <= w[0]));
    assert!((tail.last().unwrap() - BOX[0].2).abs() < 1e-4);
    assert!(radius_converges(&seq));
}

#[test]
fn third_level_series_does_not_settle() {
    let coeffs = rs_coefficients_box(3, 100, 600).unwrap();
    assert!(!radius_converges(&radius_sequence(&coeffs)));

    // The branch point at |g| = 28.64 lies inside |g| = 30, so the terms
    // of the series grow there.
    let x = 30.0 / coeffs.scale;
    let term = |j: usize| coeffs.scaled[j].abs() * x.powi(2 * j as i32);
    let peak = |r: std::ops::Range<usize>| r.map(term).fold(0.0, f64::max);
    assert!(peak(80..101) > 10.0 * peak(10..31), "{} {}", peak(80..101), peak(10..31));
}
