//! Affine Freudenthal recursion
//!
//! ((Λ+ρ̂|Λ+ρ̂) - (λ+ρ̂|λ+ρ̂)) m(λ) = 2 Σ_{α>0} mult(α) Σ_{j≥1} (λ+jα|α) m(λ+jα)
//!
//! run over all positive affine roots, real `α + mδ` and imaginary `mδ`
//! (multiplicity N-1).

#![allow(dead_code)]

use std::collections::BTreeMap;

use coset_fusion::{graded_character, weights_of, Factor, Weight};

/// `N (a, b)` in Dynkin labels.
fn dot(n: usize, a: &[i64], b: &[i64]) -> i64 {
    let mut acc = 0;
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let (lo, hi) = (i.min(j) + 1, i.max(j) + 1);
            acc += a[i] * b[j] * (lo * (n - hi)) as i64;
        }
    }
    acc
}

fn cartan_row(n: usize, i: usize) -> Vec<i64> {
    (0..n - 1)
        .map(|j| match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        })
        .collect()
}

fn add(a: &[i64], b: &[i64], t: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + t * y).collect()
}

/// Positive finite roots in Dynkin labels.
fn roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 0..n - 1 {
        let mut r = vec![0; n - 1];
        for b in a..n - 1 {
            r = add(&r, &cartan_row(n, b), 1);
            out.push(r.clone());
        }
    }
    out
}

/// Multiplicities keyed by (finite weight, grade), nonzero only.
pub fn freudenthal(w: &Weight, cutoff: i64) -> BTreeMap<(Vec<i64>, i64), i64> {
    let n = w.factor().rank() as usize;
    let k = w.factor().level() as i64;
    let big_k = k + n as i64;
    let top: Vec<i64> = w.labels().iter().map(|&x| x as i64).collect();
    let rho = vec![1; n - 1];
    let top_rho = add(&top, &rho, 1);
    let norm_top = dot(n, &top_rho, &top_rho);
    let pos = roots(n);
    let all_roots: Vec<Vec<i64>> = pos
        .iter()
        .cloned()
        .chain(pos.iter().map(|r| r.iter().map(|x| -x).collect()))
        .collect();
    let nn = n as i64;

    let mut m: BTreeMap<(Vec<i64>, i64), i64> = BTreeMap::new();
    let get = |m: &BTreeMap<(Vec<i64>, i64), i64>, l: &[i64], g: i64| -> i64 {
        if g < 0 {
            0
        } else {
            *m.get(&(l.to_vec(), g)).unwrap_or(&0)
        }
    };
    for grade in 0..=cutoff {
        // candidates Λ - Σ c_i α_i with |λ|² ≤ |Λ|² + 2k·grade, by increasing Σ c
        let limit = dot(n, &top, &top) + 2 * k * grade * nn;
        let box_bound = 4 * (k + grade + 2);
        let mut cands: Vec<(i64, Vec<i64>)> = Vec::new();
        let mut c = vec![-box_bound; n - 1];
        'outer: loop {
            let mut l = top.clone();
            for (i, &ci) in c.iter().enumerate() {
                l = add(&l, &cartan_row(n, i), -ci);
            }
            if dot(n, &l, &l) <= limit {
                cands.push((c.iter().sum(), l));
            }
            for slot in c.iter_mut() {
                *slot += 1;
                if *slot <= box_bound {
                    continue 'outer;
                }
                *slot = -box_bound;
            }
            break;
        }
        cands.sort();
        for (_, l) in cands {
            if grade == 0 && l == top {
                m.insert((l, 0), 1);
                continue;
            }
            let l_rho = add(&l, &rho, 1);
            let coef = norm_top - dot(n, &l_rho, &l_rho) + 2 * big_k * grade * nn;
            let mut rhs = 0;
            // real roots α + sδ, s ≥ 0 (α > 0 when s = 0)
            for s in 0..=grade {
                let rs: &[Vec<i64>] = if s == 0 { &pos } else { &all_roots };
                for a in rs {
                    for j in 1..=(4 * (k + grade + 2)) {
                        if s * j > grade {
                            break;
                        }
                        let shifted = add(&l, a, j);
                        let mult = get(&m, &shifted, grade - s * j);
                        if mult != 0 {
                            rhs += (dot(n, &shifted, a) + k * s * nn) * mult;
                        }
                    }
                }
            }
            // imaginary roots sδ
            for s in 1..=grade {
                for j in 1..=grade / s {
                    rhs += (nn - 1) * k * s * nn * get(&m, &l, grade - s * j);
                }
            }
            rhs *= 2;
            if coef <= 0 {
                assert_eq!(rhs, 0, "{l:?} at grade {grade}");
                continue;
            }
            assert_eq!(rhs % coef, 0, "{l:?} at grade {grade}");
            if rhs != 0 {
                m.insert((l, grade), rhs / coef);
            }
        }
    }
    m
}

/// First weight of su(N)_k whose character disagrees with the oracle.
pub fn first_mismatch(n: u32, k: u32, cutoff: u32) -> Option<Weight> {
    for w in weights_of(Factor::new(n, k).unwrap()) {
        let oracle = freudenthal(&w, cutoff as i64);
        let ch = graded_character(&w, cutoff).unwrap();
        let mut mine = BTreeMap::new();
        for g in 0..=cutoff {
            for (wt, &mult) in ch.table().slice(g) {
                mine.insert((wt.clone(), g as i64), mult as i64);
            }
        }
        if mine != oracle {
            return Some(w);
        }
    }
    None
}
