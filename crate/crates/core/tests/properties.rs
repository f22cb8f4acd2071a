//! Randomized checks of the structural invariants.

mod common;

use common::{ROTOR_M0, ROTOR_M1, ROTOR_M2, ROTOR_M3};
use proptest::prelude::*;
use ptcrit::eig::match_values;
use ptcrit::model::{box_position_element, ho_power_matrix};
use ptcrit::{
    build_hamiltonian, eig_dense, eig_tridiagonal, fit_linear, fit_power_law, fit_power_law_with, Complex64,
    DenseMatrix, Family, FitOptions, ModelSpec, Storage,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn frobenius(m: &DenseMatrix<Complex64>) -> f64 {
    m.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dense_family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Cubic), Just(Family::Quartic), Just(Family::Box)]
}

fn any_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Cubic),
        Just(Family::Quartic),
        Just(Family::Box),
        Just(Family::MathieuEven),
        Just(Family::MathieuOdd),
    ]
}

fn power_law_points(b: f64, cc: f64, s: f64, m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let e = 1.0 + 3.0 * i as f64 + 0.1 * (i * i) as f64;
            (e, b + cc * e.powf(s))
        })
        .collect()
}

/// Worst deviation from the pattern real-even, imaginary-odd once the
/// largest even entry is rotated onto the positive real axis.
fn parity_defect(v: &[Complex64]) -> f64 {
    let k = (0..v.len()).step_by(2).max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm())).unwrap();
    let phase = v[k].conj() / v[k].norm();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter()
        .enumerate()
        .map(|(i, z)| {
            let w = z * phase / norm;
            if i % 2 == 0 { w.im.abs() } else { w.re.abs() }
        })
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dense_hamiltonians_are_complex_symmetric(
        fam in dense_family(), re in -20.0..20.0f64, im in -20.0..20.0f64, n in 2usize..40,
    ) {
        let h = build_hamiltonian(&ModelSpec::new(fam, c(re, im), n)).unwrap().to_dense();
        for i in 0..n {
            for j in 0..i {
                prop_assert_eq!(h[(i, j)], h[(j, i)]);
            }
        }
    }

    #[test]
    fn squared_power_blocks_match(n in 1usize..40, k in 1u32..=2) {
        let x = ho_power_matrix(n + k as usize, k).unwrap();
        let sq = x.matmul(&x).block(n, n);
        let direct = ho_power_matrix(n, 2 * k).unwrap();
        for i in 0..n {
            for j in 0..n {
                let d = direct[(i, j)];
                prop_assert!((sq[(i, j)] - d).abs() <= 1e-13 * d.abs().max(1.0));
            }
        }
    }

    #[test]
    fn box_position_parity(m in 1usize..200, n in 1usize..200) {
        let x = box_position_element(m, n);
        if (m + n) % 2 == 0 {
            prop_assert_eq!(x, 0.0);
        } else {
            prop_assert!(x != 0.0);
            prop_assert_eq!(x, box_position_element(n, m));
        }
    }

    #[test]
    fn spectra_at_imaginary_coupling_are_conjugation_closed(
        fam in any_family(), a in -30.0..30.0f64, n in 4usize..40,
    ) {
        let h = build_hamiltonian(&ModelSpec::new(fam, c(0.0, a), n)).unwrap().to_dense();
        let (s, _) = eig_dense(&h, false).unwrap();
        prop_assert!(s.conjugation_defect() <= 1e-10 * frobenius(&h));
    }

    #[test]
    fn quartic_spectrum_is_even_in_a(a in 0.0..12.0f64, n in 8usize..50) {
        let spec = |x: f64| {
            let h = build_hamiltonian(&ModelSpec::new(Family::Quartic, c(0.0, x), n)).unwrap().to_dense();
            eig_dense(&h, false).unwrap().0.eigenvalues
        };
        let (p, m) = (spec(a), spec(-a));
        let matched = match_values(&p, &m);
        for (i, &j) in matched.permutation.iter().enumerate() {
            prop_assert!((p[i] - m[j]).norm() <= 1e-10 * p[i].norm().max(1.0));
        }
    }

    #[test]
    fn tridiagonal_agrees_with_dense(
        pick in 0usize..4, re in -15.0..15.0f64, im in -15.0..15.0f64, real_axis in any::<bool>(), n in 2usize..60,
    ) {
        let g = if real_axis { c(0.0, im) } else { c(re, im) };
        let spec = match pick {
            0 => ModelSpec::new(Family::MathieuEven, g, n),
            1 => ModelSpec::new(Family::MathieuOdd, g, n),
            k => ModelSpec::rotor(k as u32 - 2, g, n),
        };
        let h = build_hamiltonian(&spec).unwrap();
        let dense = h.to_dense();
        let Storage::Tridiagonal { diag, off } = &h.storage else { unreachable!() };
        let t = eig_tridiagonal(diag, off).unwrap().eigenvalues;
        let d = eig_dense(&dense, false).unwrap().0.eigenvalues;
        let tol = 1e-11 * frobenius(&dense);
        let matched = match_values(&t, &d);
        for (i, &j) in matched.permutation.iter().enumerate() {
            prop_assert!((t[i] - d[j]).norm() <= tol, "{} vs {}", t[i], d[j]);
        }
    }

    #[test]
    fn rotor_vectors_below_first_critical_point(m_abs in 0u32..4, frac in 0.0..0.95f64) {
        let a0 = [ROTOR_M0, ROTOR_M1, ROTOR_M2, ROTOR_M3][m_abs as usize][0].2;
        let n = 30;
        let h = build_hamiltonian(&ModelSpec::rotor(m_abs, c(0.0, frac * a0), n)).unwrap().to_dense();
        let (_, v) = eig_dense(&h, true).unwrap();
        let v = v.unwrap();
        for k in 0..8 {
            let col: Vec<Complex64> = (0..n).map(|i| v[(i, k)]).collect();
            prop_assert!(parity_defect(&col) <= 1e-10);
        }
    }

    #[test]
    fn matching_undoes_a_permutation(
        vals in prop::collection::vec((-50i32..50, -50i32..50), 1..20),
        shuffle in any::<u64>(),
        eps in 0.0..0.2f64,
    ) {
        // Distinct points on a unit grid; perturbations stay below half the spacing.
        let mut pts: Vec<(i32, i32)> = vals;
        pts.sort();
        pts.dedup();
        let prev: Vec<Complex64> = pts.iter().map(|&(x, y)| c(x as f64, y as f64)).collect();
        let n = prev.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = shuffle | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut curr = vec![c(0.0, 0.0); n];
        for (i, &p) in perm.iter().enumerate() {
            curr[p] = prev[i] + c(eps, -eps) * 0.5;
        }
        let m = match_values(&prev, &curr);
        prop_assert_eq!(m.permutation, perm);
    }

    #[test]
    fn power_law_recovered_exactly(
        b in -5.0..5.0f64, cc in 0.2..5.0f64, s in 0.3..1.8f64, m in 5usize..20,
    ) {
        let pts = power_law_points(b, cc, s, m);
        let f = fit_power_law(&pts, Some([b + 0.3, cc * 1.2, s * 0.9])).unwrap();
        for (got, want) in f.params.iter().zip([b, cc, s]) {
            prop_assert!((got - want).abs() <= 1e-8 * want.abs().max(1.0), "{:?}", f.params);
        }
    }

    #[test]
    fn fit_ignores_point_order(
        b in -2.0..2.0f64, cc in 0.5..3.0f64, s in 0.5..1.5f64,
        noise in prop::collection::vec(-0.05..0.05f64, 8),
        order in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let pts: Vec<(f64, f64)> = power_law_points(b, cc, s, 8)
            .into_iter()
            .zip(&noise)
            .map(|((e, a), d)| (e, a + d))
            .collect();
        let shuffled: Vec<(f64, f64)> = order.iter().map(|&i| pts[i]).collect();
        let f = fit_power_law(&pts, None).unwrap();
        let g = fit_power_law(&shuffled, None).unwrap();
        for (x, y) in f.params.iter().zip(&g.params) {
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0));
        }
        let l = fit_linear(&pts).unwrap();
        let k = fit_linear(&shuffled).unwrap();
        for (x, y) in l.params.iter().zip(&k.params) {
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0));
        }
    }

    #[test]
    fn frozen_unit_exponent_is_linear_regression(
        b in -5.0..5.0f64, cc in -3.0..3.0f64,
        noise in prop::collection::vec(-0.5..0.5f64, 6),
    ) {
        let pts: Vec<(f64, f64)> =
            noise.iter().enumerate().map(|(i, d)| (1.0 + 2.5 * i as f64, b + cc * (1.0 + 2.5 * i as f64) + d)).collect();
        let opts = FitOptions { frozen_exponent: Some(1.0), ..FitOptions::default() };
        let p = fit_power_law_with(&pts, &opts).unwrap();
        let l = fit_linear(&pts).unwrap();
        prop_assert!((p.params[0] - l.params[0]).abs() <= 1e-10 * l.params[0].abs().max(1.0));
        prop_assert!((p.params[1] - l.params[1]).abs() <= 1e-10 * l.params[1].abs().max(1.0));
    }

    #[test]
    fn residuals_orthogonal_to_jacobian(
        b in -2.0..2.0f64, cc in 0.5..3.0f64, s in 0.5..1.5f64,
        noise in prop::collection::vec(-0.02..0.02f64, 10),
    ) {
        let pts: Vec<(f64, f64)> = power_law_points(b, cc, s, 10)
            .into_iter()
            .zip(&noise)
            .map(|((e, a), d)| (e, a + d))
            .collect();
        let f = fit_power_law(&pts, None).unwrap();
        let [pb, pc, ps] = [f.params[0], f.params[1], f.params[2]];
        let mut grad = [0.0f64; 3];
        let mut col = [0.0f64; 3];
        for &(e, a) in &pts {
            let r = a - (pb + pc * e.powf(ps));
            let j = [1.0, e.powf(ps), pc * e.powf(ps) * e.ln()];
            for k in 0..3 {
                grad[k] += j[k] * r;
                col[k] += j[k] * j[k];
            }
        }
        for k in 0..3 {
            prop_assert!((grad[k] / col[k].sqrt()).abs() <= 1e-8, "{:?}", grad);
        }
    }
}
