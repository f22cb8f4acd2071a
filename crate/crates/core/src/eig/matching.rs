//! Assignment of eigenvalues between neighbouring coupling values.

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    /// `permutation[i]` is the index in the current spectrum assigned to slot `i`.
    pub permutation: Vec<usize>,
    /// Total `|ΔE|` of the assignment.
    pub cost: f64,
    /// Some distinct assignment had (nearly) the same cost; resolved by index order.
    pub ambiguous: bool,
}

/// Minimum-total-distance assignment of `curr` onto the slots of `prev`.
///
/// Greedy on sorted pair distances, then pairwise exchanges while they
/// lower the total cost. Deterministic: ties go to the lower index.
pub fn match_values(prev: &[Complex64], curr: &[Complex64]) -> Matching {
    let n = prev.len();
    assert_eq!(n, curr.len(), "spectra must have equal length");
    let d = |i: usize, j: usize| (prev[i] - curr[j]).norm();
    let mut cand: Vec<(f64, usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (d(i, j), i, j)).collect();
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut left = n;
    for &(_, i, j) in &cand {
        if left == 0 {
            break;
        }
        if perm[i] == usize::MAX && !used[j] {
            perm[i] = j;
            used[j] = true;
            left -= 1;
        }
    }

    let scale = prev.iter().chain(curr).map(|z| z.norm()).fold(1.0, f64::max);
    let tie = 1e-14 * scale;
    for _ in 0..n.max(1) {
        let mut improved = false;
        for i in 0..n {
            for k in i + 1..n {
                let delta = d(i, perm[k]) + d(k, perm[i]) - d(i, perm[i]) - d(k, perm[k]);
                if delta < -tie {
                    perm.swap(i, k);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }

    let mut ambiguous = false;
    'outer: for i in 0..n {
        for k in i + 1..n {
            let delta = d(i, perm[k]) + d(k, perm[i]) - d(i, perm[i]) - d(k, perm[k]);
            if delta.abs() <= tie && (curr[perm[i]] - curr[perm[k]]).norm() > tie {
                ambiguous = true;
                break 'outer;
            }
        }
    }
    let cost = (0..n).map(|i| d(i, perm[i])).sum();
    Matching { permutation: perm, cost, ambiguous }
}
