//! Truncated graded characters of integrable ŝl(N)_k modules.
//!
//! A character is stored grade by grade: slice `n` maps finite su(N) weights
//! (Dynkin labels) to the multiplicity of `λ - nδ`. Grade 0 is the top of the
//! module. Characters come from the Weyl-Kac formula: the affine Weyl group is
//! `W ⋉ t_Q`, and for a translation `t_β` the numerator term sits at depth
//! `n_β = (x0, β) + K |β|² / 2` with `x0 = Λ + ρ`, `K = k + N`. Each term is
//! folded into the dominant chamber, turned into a finite character and
//! multiplied by the inverse affine denominator
//! `Π_{n≥1} (1 - q^n)^{-(N-1)} Π_{α∈Δ} (1 - q^n e^α)^{-1}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::lattice::{
    positive_roots, root_coords_to_labels, scaled_dot, scaled_gram, simple_root, to_dominant,
};
use crate::math::{sin, sqrt, PI};
use crate::weights::Weight;

/// Most root-lattice points the Weyl-Kac sum may scan.
pub const MAX_LATTICE_POINTS: u64 = 2_000_000;

/// Largest grade cutoff accepted.
pub const MAX_CUTOFF: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error(
        "cutoff {cutoff} is beyond the resource bound ({points} lattice points, at most {bound})"
    )]
    CutoffTooLarge {
        cutoff: u32,
        points: u64,
        bound: u64,
    },
    #[error("rank mismatch: su({0}) against su({1})")]
    RankMismatch(u32, u32),
    #[error("projection expects weights of length {expected}, table has {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Multiplicities of one grade.
pub type WeightSlice = BTreeMap<Vec<i64>, u64>;

/// Grade-by-grade weight multiplicities, grades `0..=cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTable {
    dim: usize,
    slices: Vec<WeightSlice>,
}

impl GradedTable {
    pub fn new(dim: usize, cutoff: u32) -> Self {
        Self {
            dim,
            slices: vec![WeightSlice::new(); cutoff as usize + 1],
        }
    }

    /// Length of the weight vectors.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> u32 {
        self.slices.len() as u32 - 1
    }

    pub fn slice(&self, grade: u32) -> &WeightSlice {
        &self.slices[grade as usize]
    }

    pub fn slices(&self) -> &[WeightSlice] {
        &self.slices
    }

    pub fn multiplicity(&self, weight: &[i64], grade: u32) -> u64 {
        self.slices
            .get(grade as usize)
            .and_then(|s| s.get(weight))
            .copied()
            .unwrap_or(0)
    }

    /// Sum of all multiplicities at a grade.
    pub fn total(&self, grade: u32) -> u64 {
        self.slices[grade as usize].values().sum()
    }

    pub fn add(&mut self, weight: Vec<i64>, grade: u32, mult: u64) {
        assert_eq!(weight.len(), self.dim, "weight length");
        if mult > 0 {
            *self.slices[grade as usize].entry(weight).or_insert(0) += mult;
        }
    }

    /// The same table cut down to a lower cutoff.
    pub fn truncate(&self, cutoff: u32) -> Self {
        let keep = (cutoff as usize + 1).min(self.slices.len());
        Self {
            dim: self.dim,
            slices: self.slices[..keep].to_vec(),
        }
    }
}

/// Truncated character of the integrable module with highest weight `Λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    weight: Weight,
    table: GradedTable,
}

impl GradedCharacter {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn table(&self) -> &GradedTable {
        &self.table
    }

    pub fn cutoff(&self) -> u32 {
        self.table.cutoff()
    }

    pub fn multiplicity(&self, weight: &[i64], grade: u32) -> u64 {
        self.table.multiplicity(weight, grade)
    }

    pub fn total(&self, grade: u32) -> u64 {
        self.table.total(grade)
    }
}

/// Is `top - dom(μ)` a nonnegative combination of simple roots?
fn dominated(n: usize, top: &[i64], mu: &[i64]) -> bool {
    let (dom, _) = to_dominant(mu.to_vec());
    let diff: Vec<i64> = top.iter().zip(&dom).map(|(a, b)| a - b).collect();
    (0..n - 1).all(|i| {
        let scaled: i64 = (0..n - 1)
            .map(|j| scaled_gram(n, i + 1, j + 1) * diff[j])
            .sum();
        scaled >= 0 && scaled % n as i64 == 0
    })
}

/// Weight multiplicities of the finite su(N) irrep with highest weight
/// `top`, by Freudenthal's recursion.
pub fn finite_character(n: usize, top: &[i64]) -> WeightSlice {
    let roots = positive_roots(n);
    let shifted = |w: &[i64]| w.iter().map(|x| x + 1).collect::<Vec<_>>();
    let top_rho = shifted(top);
    let norm_top = scaled_dot(n, &top_rho, &top_rho);
    let mut mult = WeightSlice::new();
    mult.insert(top.to_vec(), 1);
    let mut layer = vec![top.to_vec()];
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for w in &layer {
            for i in 0..n - 1 {
                let mu: Vec<i64> = w
                    .iter()
                    .zip(simple_root(n, i))
                    .map(|(a, b)| a - b)
                    .collect();
                if dominated(n, top, &mu) {
                    next.insert(mu);
                }
            }
        }
        layer.clear();
        for mu in next {
            let mu_rho = shifted(&mu);
            let coef = norm_top - scaled_dot(n, &mu_rho, &mu_rho);
            let mut rhs = 0i64;
            for alpha in &roots {
                let mut nu = mu.clone();
                loop {
                    for (x, a) in nu.iter_mut().zip(alpha) {
                        *x += a;
                    }
                    match mult.get(&nu) {
                        Some(&m) => rhs += 2 * scaled_dot(n, &nu, alpha) * m as i64,
                        None => break,
                    }
                }
            }
            assert!(coef > 0 && rhs % coef == 0, "Freudenthal step for {mu:?}");
            let m = rhs / coef;
            if m > 0 {
                mult.insert(mu.clone(), m as u64);
                layer.push(mu);
            }
        }
    }
    mult
}

type SignedSlice = BTreeMap<Vec<i64>, i64>;

fn add_shifted(target: &mut SignedSlice, source: &SignedSlice, shift: &[i64], factor: i64) {
    for (w, &c) in source {
        let moved: Vec<i64> = w.iter().zip(shift).map(|(a, b)| a + b).collect();
        let slot = target.entry(moved.clone()).or_insert(0);
        *slot += factor * c;
        if *slot == 0 {
            target.remove(&moved);
        }
    }
}

/// `Π_{n≥1} (1 - q^n)^{-(N-1)} Π_{α∈Δ} (1 - q^n e^α)^{-1}` up to `q^cutoff`.
fn inverse_denominator(n: usize, cutoff: usize) -> Vec<SignedSlice> {
    let zero = vec![0i64; n - 1];
    let mut series = vec![SignedSlice::new(); cutoff + 1];
    series[0].insert(zero.clone(), 1);
    let mut shifts: Vec<Vec<i64>> = vec![zero; n - 1];
    for r in positive_roots(n) {
        shifts.push(r.iter().map(|x| -x).collect());
        shifts.push(r);
    }
    for step in 1..=cutoff {
        for shift in &shifts {
            // multiply by 1 / (1 - q^step e^shift) in place, low grades first
            for g in step..=cutoff {
                let lower = series[g - step].clone();
                add_shifted(&mut series[g], &lower, shift, 1);
            }
        }
    }
    series
}

/// Nonzero Weyl-Kac numerator terms `(depth, sign, finite highest weight)`.
fn numerator_terms(w: &Weight, cutoff: u32) -> Result<Vec<(usize, i64, Vec<i64>)>, CharacterError> {
    if cutoff > MAX_CUTOFF {
        return Err(CharacterError::CutoffTooLarge {
            cutoff,
            points: u64::MAX,
            bound: MAX_LATTICE_POINTS,
        });
    }
    let n = w.factor().rank() as usize;
    let big_k = w.factor().shifted_level() as i64;
    let x0: Vec<i64> = w.labels_i64().iter().map(|l| l + 1).collect();
    let norm_x0 = scaled_dot(n, &x0, &x0) as f64 / n as f64;
    // |Kβ| ≤ |x0| + sqrt(|x0|² + 2KD), and |β|² ≥ λ_min(Cartan) |b|²
    let reach = sqrt(norm_x0) + sqrt(norm_x0 + 2.0 * big_k as f64 * cutoff as f64);
    let lambda_min = 4.0 * sin(PI / (2.0 * n as f64)) * sin(PI / (2.0 * n as f64));
    let bound = (reach / (big_k as f64 * sqrt(lambda_min))) as i64 + 1;
    let side = 2 * bound as u64 + 1;
    let points = side.saturating_pow(n as u32 - 1);
    if points > MAX_LATTICE_POINTS {
        return Err(CharacterError::CutoffTooLarge {
            cutoff,
            points,
            bound: MAX_LATTICE_POINTS,
        });
    }
    let mut terms = Vec::new();
    let mut b = vec![-bound; n - 1];
    loop {
        let beta = root_coords_to_labels(n, &b);
        let pairing: i64 = b.iter().zip(&x0).map(|(c, x)| c * x).sum();
        let norm: i64 = b.iter().zip(&beta).map(|(c, x)| c * x).sum();
        let depth = pairing + big_k * norm / 2;
        if (0..=cutoff as i64).contains(&depth) {
            let y: Vec<i64> = x0.iter().zip(&beta).map(|(x, t)| x + big_k * t).collect();
            let (dom, odd) = to_dominant(y);
            if dom.iter().all(|&d| d > 0) {
                let top = dom.iter().map(|d| d - 1).collect();
                terms.push((depth as usize, if odd { -1 } else { 1 }, top));
            }
        }
        let mut pos = 0;
        while pos < n - 1 {
            b[pos] += 1;
            if b[pos] <= bound {
                break;
            }
            b[pos] = -bound;
            pos += 1;
        }
        if pos == n - 1 {
            break;
        }
    }
    Ok(terms)
}

/// Exact multiplicities of the module `L(Λ)` for all grades `≤ cutoff`.
pub fn graded_character(w: &Weight, cutoff: u32) -> Result<GradedCharacter, CharacterError> {
    let n = w.factor().rank() as usize;
    let d = cutoff as usize;
    let mut finite: BTreeMap<Vec<i64>, WeightSlice> = BTreeMap::new();
    let mut numerator = vec![SignedSlice::new(); d + 1];
    for (depth, sign, top) in numerator_terms(w, cutoff)? {
        let chi = finite
            .entry(top.clone())
            .or_insert_with(|| finite_character(n, &top));
        let slot = &mut numerator[depth];
        for (wt, &m) in chi.iter() {
            *slot.entry(wt.clone()).or_insert(0) += sign * m as i64;
        }
    }
    let denominator = inverse_denominator(n, d);
    let mut table = GradedTable::new(n - 1, cutoff);
    for g in 0..=d {
        let mut acc = SignedSlice::new();
        for g1 in 0..=g {
            for (shift, &c) in &numerator[g1] {
                if c != 0 {
                    add_shifted(&mut acc, &denominator[g - g1], shift, c);
                }
            }
        }
        for (wt, c) in acc {
            assert!(c >= 0, "negative multiplicity {c} at {wt:?}, grade {g}");
            table.add(wt, g as u32, c as u64);
        }
    }
    Ok(GradedCharacter {
        weight: w.clone(),
        table,
    })
}

/// Character of the product module: weights concatenate, grades add,
/// cutoff is the smaller one.
pub fn tensor_characters(
    a: &GradedCharacter,
    b: &GradedCharacter,
) -> Result<GradedTable, CharacterError> {
    let (na, nb) = (a.weight.factor().rank(), b.weight.factor().rank());
    if na != nb {
        return Err(CharacterError::RankMismatch(na, nb));
    }
    Ok(tensor_tables(a.table(), b.table()))
}

/// Product of two tables with concatenated weights.
pub fn tensor_tables(a: &GradedTable, b: &GradedTable) -> GradedTable {
    let cutoff = a.cutoff().min(b.cutoff());
    let mut out = GradedTable::new(a.dim + b.dim, cutoff);
    for ga in 0..=cutoff {
        for gb in 0..=cutoff - ga {
            for (wa, ma) in a.slice(ga) {
                for (wb, mb) in b.slice(gb) {
                    let mut w = wa.clone();
                    w.extend_from_slice(wb);
                    out.add(w, ga + gb, ma * mb);
                }
            }
        }
    }
    out
}

/// Pushforward along a linear map given by its rows.
pub fn restrict_character(
    table: &GradedTable,
    projection: &[Vec<i64>],
) -> Result<GradedTable, CharacterError> {
    if let Some(row) = projection.iter().find(|r| r.len() != table.dim) {
        return Err(CharacterError::DimensionMismatch {
            expected: row.len(),
            got: table.dim,
        });
    }
    let mut out = GradedTable::new(projection.len(), table.cutoff());
    for g in 0..=table.cutoff() {
        for (w, &m) in table.slice(g) {
            let image = projection
                .iter()
                .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
                .collect();
            out.add(image, g, m);
        }
    }
    Ok(out)
}

/// `[I | I]`: weights of su(N) × su(N) added into the diagonal su(N).
pub fn diagonal_projection(n: u32) -> Vec<Vec<i64>> {
    let r = n as usize - 1;
    (0..r)
        .map(|i| {
            let mut row = vec![0; 2 * r];
            row[i] = 1;
            row[r + i] = 1;
            row
        })
        .collect()
}

/// su(3) → su(2) of Dynkin index 4: `(λ1, λ2) ↦ 2λ1 + 2λ2`.
pub fn index_four_projection() -> Vec<Vec<i64>> {
    vec![vec![2, 2]]
}

/// Weyl dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(n: usize, top: &[i64]) -> u64 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for a in 0..n - 1 {
        let mut s = 0i64;
        for b in a..n - 1 {
            s += top[b] + 1;
            num *= s as u128;
            den *= (b - a + 1) as u128;
        }
    }
    (num / den) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Factor;

    fn w(n: u32, k: u32, labels: &[u32]) -> Weight {
        Factor::new(n, k).unwrap().weight(labels).unwrap()
    }

    #[test]
    fn finite_characters() {
        let adj = finite_character(3, &[1, 1]);
        assert_eq!(adj.values().sum::<u64>(), 8);
        assert_eq!(adj[&vec![0, 0]], 2);
        let spin = finite_character(2, &[3]);
        assert_eq!(
            spin.keys().cloned().collect::<Vec<_>>(),
            vec![vec![-3], vec![-1], vec![1], vec![3]]
        );
        for n in 2..=4usize {
            for top in [[0i64, 1, 2], [2, 0, 1], [1, 1, 1]] {
                let top = &top[..n - 1];
                let chi = finite_character(n, top);
                assert_eq!(
                    chi.values().sum::<u64>(),
                    weyl_dimension(n, top),
                    "su({n}) {top:?}"
                );
                // Weyl invariance
                for (wt, m) in &chi {
                    assert_eq!(chi.get(&to_dominant(wt.clone()).0), Some(m));
                }
            }
        }
    }

    #[test]
    fn su2_level1_vacuum() {
        let ch = graded_character(&w(2, 1, &[0]), 4).unwrap();
        assert_eq!(
            ch.table().slice(0).clone(),
            WeightSlice::from([(vec![0], 1)])
        );
        assert_eq!(ch.total(1), 3);
        assert_eq!(ch.total(2), 4);
        // free boson: Σ_n q^{n²} z^{2n} / Π (1 - q^j)
        let partitions = [1u64, 1, 2, 3, 5];
        for g in 0..=4u32 {
            for (wt, &m) in ch.table().slice(g) {
                let charge = wt[0] / 2;
                let depth = g as i64 - charge * charge;
                assert_eq!(m, partitions[depth as usize], "grade {g} weight {wt:?}");
            }
        }
    }

    #[test]
    fn grade_zero_is_finite_irrep() {
        for (n, k) in [(2, 3), (3, 2), (4, 1)] {
            for wt in crate::weights::weights_of(Factor::new(n, k).unwrap()) {
                let ch = graded_character(&wt, 2).unwrap();
                let top = wt.labels_i64();
                assert_eq!(ch.table().slice(0), &finite_character(n as usize, &top));
                for g in 0..=2 {
                    for (x, m) in ch.table().slice(g) {
                        assert_eq!(ch.multiplicity(&to_dominant(x.clone()).0, g), *m);
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_and_restrict() {
        let vac = graded_character(&w(2, 1, &[0]), 3).unwrap();
        let trivial = graded_character(&w(2, 1, &[0]), 0).unwrap();
        let t = tensor_characters(&vac, &trivial).unwrap();
        assert_eq!(t.cutoff(), 0);
        assert_eq!(t.total(0), 1);
        let pair = tensor_characters(&vac, &vac).unwrap();
        assert_eq!(pair.total(1), 6);
        let diag = restrict_character(&pair, &diagonal_projection(2)).unwrap();
        assert_eq!(diag.dim(), 1);
        assert_eq!(diag.total(1), 6);
        assert_eq!(diag.multiplicity(&[2], 1), 2);
        assert_eq!(diag.multiplicity(&[-2], 1), 2);
        let same = restrict_character(&vac.table().clone(), &[vec![1]]).unwrap();
        assert_eq!(&same, vac.table());
        assert!(matches!(
            restrict_character(&pair, &[vec![1]]),
            Err(CharacterError::DimensionMismatch { .. })
        ));
        let su3 = graded_character(&w(3, 1, &[0, 0]), 0).unwrap();
        assert_eq!(
            tensor_characters(&vac, &su3),
            Err(CharacterError::RankMismatch(2, 3))
        );
    }

    #[test]
    fn index_four_sends_triplet_to_spin_one() {
        let three = finite_character(3, &[1, 0]);
        let mut table = GradedTable::new(2, 0);
        for (wt, m) in three {
            table.add(wt, 0, m);
        }
        let out = restrict_character(&table, &index_four_projection()).unwrap();
        let keys: Vec<_> = out.slice(0).iter().map(|(k, m)| (k[0], *m)).collect();
        assert_eq!(keys, vec![(-2, 1), (0, 1), (2, 1)]);
    }

    #[test]
    fn cutoff_bound() {
        assert!(matches!(
            graded_character(&w(4, 1, &[0, 0, 0]), 5000),
            Err(CharacterError::CutoffTooLarge { .. })
        ));
    }
}
