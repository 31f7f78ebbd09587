//! Weight-lattice arithmetic for su(N) in Dynkin-label coordinates.
//!
//! Inner products are returned scaled by `N`, which makes the Gram matrix of
//! fundamental weights integral: `N * (w_i, w_j) = min(i, j) * (N - max(i, j))`.

use alloc::vec;
use alloc::vec::Vec;

/// `N * (w_i, w_j)` for fundamental weights, 1-based indices.
#[inline]
pub(crate) fn scaled_gram(n: usize, i: usize, j: usize) -> i64 {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    (lo * (n - hi)) as i64
}

/// `N * (a, b)` for weights given by Dynkin labels.
pub(crate) fn scaled_dot(n: usize, a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), n - 1);
    debug_assert_eq!(b.len(), n - 1);
    let mut acc = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            acc += ai * bj * scaled_gram(n, i + 1, j + 1);
        }
    }
    acc
}

/// Simple root `alpha_i` (0-based) in Dynkin labels: row `i` of the Cartan matrix.
pub(crate) fn simple_root(n: usize, i: usize) -> Vec<i64> {
    let mut r = vec![0; n - 1];
    r[i] = 2;
    if i > 0 {
        r[i - 1] = -1;
    }
    if i + 2 < n {
        r[i + 1] = -1;
    }
    r
}

/// Positive roots `alpha_a + ... + alpha_{b-1}` for `0 <= a < b <= N-1`, in
/// Dynkin labels.
pub(crate) fn positive_roots(n: usize) -> Vec<Vec<i64>> {
    let simple: Vec<_> = (0..n - 1).map(|i| simple_root(n, i)).collect();
    let mut roots = Vec::new();
    for a in 0..n - 1 {
        let mut acc = vec![0; n - 1];
        for s in &simple[a..] {
            for (x, y) in acc.iter_mut().zip(s) {
                *x += y;
            }
            roots.push(acc.clone());
        }
    }
    roots
}

/// Converts root-lattice coordinates `sum c_i alpha_i` to Dynkin labels.
pub(crate) fn root_coords_to_labels(n: usize, coeffs: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n - 1];
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        out[i] += 2 * c;
        if i > 0 {
            out[i - 1] -= c;
        }
        if i + 2 < n {
            out[i + 1] -= c;
        }
    }
    out
}

/// Reflects a weight into the dominant chamber by simple reflections.
///
/// Returns the dominant image and the parity of the number of reflections
/// used (`true` for odd).
pub(crate) fn to_dominant(mut x: Vec<i64>) -> (Vec<i64>, bool) {
    let n = x.len() + 1;
    let mut odd = false;
    while let Some(i) = x.iter().position(|&v| v < 0) {
        let c = x[i];
        for (xj, rj) in x.iter_mut().zip(simple_root(n, i)) {
            *xj -= c * rj;
        }
        odd = !odd;
    }
    (x, odd)
}

/// Trace-free orthonormal ("epsilon") coordinates of a weight, scaled by `N`
/// so they stay integral.
pub(crate) fn scaled_epsilon_coords(labels: &[i64]) -> Vec<i64> {
    let n = labels.len() + 1;
    // partition coordinates x_i = sum_{j >= i} labels_j, x_N = 0
    let mut part = vec![0i64; n];
    for i in (0..n - 1).rev() {
        part[i] = part[i + 1] + labels[i];
    }
    let total: i64 = part.iter().sum();
    part.iter().map(|&p| n as i64 * p - total).collect()
}

/// Calls `f` on every permutation of `0..n` together with its sign.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], bool)) {
    // Heap's algorithm; each swap flips the sign
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    f(&perm, odd);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            f(&perm, odd);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su3_gram() {
        // (w1, w1) = 2/3, (w1, w2) = 1/3
        assert_eq!(scaled_gram(3, 1, 1), 2);
        assert_eq!(scaled_gram(3, 1, 2), 1);
        assert_eq!(scaled_gram(3, 2, 2), 2);
    }

    #[test]
    fn simple_roots_have_norm_two() {
        for n in 2..6 {
            for i in 0..n - 1 {
                let a = simple_root(n, i);
                assert_eq!(scaled_dot(n, &a, &a), 2 * n as i64);
            }
            assert_eq!(positive_roots(n).len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn dominant_reflection() {
        // s_1 of (-1, 0) in su(3) is (1, -1) -> s_2 -> (0, 1)
        let (d, odd) = to_dominant(vec![-1, 0]);
        assert_eq!(d, vec![0, 1]);
        assert!(!odd);
        // (-2, 1) -> s_1 -> (2, -1) -> s_2 -> (1, 1)
        let (d, odd) = to_dominant(vec![-2, 1]);
        assert_eq!(d, vec![1, 1]);
        assert!(!odd);
        let (d, odd) = to_dominant(vec![-1, 2]);
        assert_eq!(d, vec![1, 1]);
        assert!(odd);
    }

    #[test]
    fn permutation_count_and_sign() {
        let mut count = 0;
        let mut signed = 0i64;
        for_each_permutation(4, |_, odd| {
            count += 1;
            signed += if odd { -1 } else { 1 };
        });
        assert_eq!(count, 24);
        assert_eq!(signed, 0);
    }
}
