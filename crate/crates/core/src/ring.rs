//! Based rings with nonnegative integer structure constants.
//!
//! Every ring in this crate (WZW fusion rings, coset rings, the torus coset
//! ring, the Maverick ring) is a [`FusionRing`] over its own label type. The
//! first basis element is the unit.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("basis is empty")]
    Empty,
    #[error("duplicate basis label at index {0}")]
    DuplicateLabel(usize),
    #[error("basis element {0} has no unique dual")]
    NoDual(usize),
    #[error("label is not in the basis")]
    UnknownLabel,
    #[error("product of basis elements {0} and {1} leaves the subset")]
    NotClosed(usize, usize),
}

/// Sparse product table: `products[(i, j)]` lists `(k, N_ij^k)` with `N > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing<L> {
    basis: Vec<L>,
    index: BTreeMap<L, usize>,
    products: Vec<Vec<(usize, u32)>>,
    dual: Vec<usize>,
}

/// One violated ring axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    /// `N_{0j}^k != δ_jk`.
    Unit { j: usize },
    /// `N_ij^k != N_ji^k`.
    Commutativity { i: usize, j: usize },
    /// `(ij)k != i(jk)`.
    Associativity { i: usize, j: usize, k: usize },
    /// `N_ij^0 != δ_{j, dual(i)}` or the dual is not an involution.
    Conjugation { i: usize },
}

pub type AxiomReport = CheckReport<AxiomFailure>;

impl<L: Clone + Ord> FusionRing<L> {
    /// Builds a ring from its basis and a function giving the nonzero
    /// products `i * j` as `(k, multiplicity)` pairs.
    pub fn from_fn(
        basis: Vec<L>,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, u32)>,
    ) -> Result<Self, RingError> {
        let n = basis.len();
        if n == 0 {
            return Err(RingError::Empty);
        }
        let mut index = BTreeMap::new();
        for (i, l) in basis.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(RingError::DuplicateLabel(i));
            }
        }
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut p: Vec<(usize, u32)> =
                    product(i, j).into_iter().filter(|&(_, m)| m > 0).collect();
                p.sort_unstable();
                p.dedup_by(|b, a| {
                    if a.0 == b.0 {
                        a.1 += b.1;
                        true
                    } else {
                        false
                    }
                });
                products.push(p);
            }
        }
        let mut dual = Vec::with_capacity(n);
        for i in 0..n {
            let mut found = None;
            for j in 0..n {
                let c = coefficient_in(&products[i * n + j], 0);
                if c == 0 {
                    continue;
                }
                if c != 1 || found.is_some() {
                    return Err(RingError::NoDual(i));
                }
                found = Some(j);
            }
            dual.push(found.ok_or(RingError::NoDual(i))?);
        }
        Ok(Self {
            basis,
            index,
            products,
            dual,
        })
    }

    pub fn basis(&self) -> &[L] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn label(&self, i: usize) -> &L {
        &self.basis[i]
    }

    pub fn index_of(&self, l: &L) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Nonzero `(k, N_ij^k)`, sorted by `k`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.len() + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> u32 {
        coefficient_in(self.product(i, j), k)
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Nonzero slice `N_ab^•` by label.
    pub fn fuse(&self, a: &L, b: &L) -> Result<Vec<(L, u32)>, RingError> {
        let i = self.index_of(a).ok_or(RingError::UnknownLabel)?;
        let j = self.index_of(b).ok_or(RingError::UnknownLabel)?;
        Ok(self
            .product(i, j)
            .iter()
            .map(|&(k, m)| (self.basis[k].clone(), m))
            .collect())
    }

    /// Checks unit, commutativity, conjugation and associativity exhaustively.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.len();
        let mut report = AxiomReport::default();
        for j in 0..n {
            let ok = self.product(0, j) == [(j, 1)] && self.product(j, 0) == [(j, 1)];
            report.record(ok, || AxiomFailure::Unit { j });
        }
        for i in 0..n {
            for j in i + 1..n {
                let ok = self.product(i, j) == self.product(j, i);
                report.record(ok, || AxiomFailure::Commutativity { i, j });
            }
        }
        for i in 0..n {
            let d = self.dual[i];
            let ok =
                self.dual[d] == i && (0..n).all(|j| self.coefficient(i, j, 0) == u32::from(j == d));
            report.record(ok, || AxiomFailure::Conjugation { i });
        }
        let mut left = vec![0u64; n];
        let mut right = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    left.iter_mut().for_each(|v| *v = 0);
                    right.iter_mut().for_each(|v| *v = 0);
                    for &(m, a) in self.product(i, j) {
                        for &(l, b) in self.product(m, k) {
                            left[l] += a as u64 * b as u64;
                        }
                    }
                    for &(m, a) in self.product(j, k) {
                        for &(l, b) in self.product(i, m) {
                            right[l] += a as u64 * b as u64;
                        }
                    }
                    report.record(left == right, || AxiomFailure::Associativity { i, j, k });
                }
            }
        }
        report
    }

    /// Largest `|Σ_k N_ij^k d_k - d_i d_j|` over all pairs.
    pub fn dimension_residual(&self, dims: &[f64]) -> f64 {
        assert_eq!(dims.len(), self.len(), "one dimension per basis element");
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let lhs: f64 = self
                    .product(i, j)
                    .iter()
                    .map(|&(k, m)| m as f64 * dims[k])
                    .sum();
                worst = worst.max((lhs - dims[i] * dims[j]).abs());
            }
        }
        worst
    }

    /// Perron-Frobenius eigenvalue of the fusion matrix of `i`.
    ///
    /// Power iteration on `N_i + 1`, whose spectral radius is attained only at
    /// the Perron-Frobenius eigenvalue plus one, so iteration cannot oscillate
    /// between eigenvalues of equal modulus.
    pub fn perron_frobenius(&self, i: usize) -> f64 {
        let n = self.len();
        let mut v = vec![1.0f64; n];
        let mut lambda = 0.0;
        for _ in 0..10_000 {
            let mut w = v.clone();
            for (j, vj) in v.iter().enumerate() {
                for &(k, m) in self.product(i, j) {
                    w[k] += m as f64 * vj;
                }
            }
            let norm = w.iter().fold(0.0f64, |a, &b| a.max(b));
            lambda = norm / v.iter().fold(0.0f64, |a, &b| a.max(b));
            // the ratio alone can repeat before the vector settles
            let mut shift = 0.0f64;
            for (vj, wj) in v.iter_mut().zip(w) {
                let next = wj / norm;
                shift = shift.max((next - *vj).abs());
                *vj = next;
            }
            if shift < 1e-14 {
                return lambda - 1.0;
            }
        }
        lambda - 1.0
    }

    /// The sub-ring spanned by basis elements satisfying `keep`, which must be
    /// closed under multiplication and contain the unit.
    pub fn restrict(&self, mut keep: impl FnMut(&L) -> bool) -> Result<Self, RingError> {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(&self.basis[i])).collect();
        if kept.first() != Some(&0) {
            return Err(RingError::NotClosed(0, 0));
        }
        let mut position = vec![usize::MAX; self.len()];
        for (p, &i) in kept.iter().enumerate() {
            position[i] = p;
        }
        for &a in &kept {
            for &b in &kept {
                if self
                    .product(a, b)
                    .iter()
                    .any(|&(k, _)| position[k] == usize::MAX)
                {
                    return Err(RingError::NotClosed(a, b));
                }
            }
        }
        let basis = kept.iter().map(|&i| self.basis[i].clone()).collect();
        Self::from_fn(basis, |a, b| {
            self.product(kept[a], kept[b])
                .iter()
                .map(|&(k, m)| (position[k], m))
                .collect()
        })
    }

    /// Relabels the basis; `f` must be injective.
    pub fn map_labels<M: Clone + Ord>(
        &self,
        f: impl FnMut(&L) -> M,
    ) -> Result<FusionRing<M>, RingError> {
        let basis = self.basis.iter().map(f).collect();
        FusionRing::from_fn(basis, |i, j| self.product(i, j).to_vec())
    }

    /// Searches for a unit-preserving basis bijection `φ` with
    /// `N_ij^k = N'_{φ(i)φ(j)}^{φ(k)}`. Returns `φ` as an index map.
    pub fn find_isomorphism<M: Clone + Ord>(&self, other: &FusionRing<M>) -> Option<Vec<usize>> {
        let n = self.len();
        if other.len() != n {
            return None;
        }
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        image[0] = 0;
        used[0] = true;
        if self.extend_isomorphism(other, 1, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    fn extend_isomorphism<M: Clone + Ord>(
        &self,
        other: &FusionRing<M>,
        next: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.len();
        if next == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            image[next] = cand;
            used[cand] = true;
            // every triple of assigned elements that involves `next`
            let consistent = (0..=next).all(|a| {
                (0..=next).all(|b| {
                    (0..=next).all(|k| {
                        a.max(b).max(k) != next
                            || self.coefficient(a, b, k)
                                == other.coefficient(image[a], image[b], image[k])
                    })
                })
            });
            if consistent && self.extend_isomorphism(other, next + 1, image, used) {
                return true;
            }
            used[cand] = false;
        }
        image[next] = usize::MAX;
        false
    }
}

fn coefficient_in(p: &[(usize, u32)], k: usize) -> u32 {
    match p.binary_search_by_key(&k, |&(k, _)| k) {
        Ok(pos) => p[pos].1,
        Err(_) => 0,
    }
}

/// Tensor product of rings: basis is the cartesian product (first factor
/// slowest), coefficients multiply factorwise.
pub fn product_of<L: Clone + Ord>(
    rings: &[&FusionRing<L>],
) -> Result<FusionRing<Vec<L>>, RingError> {
    if rings.is_empty() {
        return Err(RingError::Empty);
    }
    let sizes: Vec<usize> = rings.iter().map(|r| r.len()).collect();
    let total: usize = sizes.iter().product();
    let digits = |mut x: usize| {
        let mut d = vec![0usize; sizes.len()];
        for (slot, &s) in d.iter_mut().zip(&sizes).rev() {
            *slot = x % s;
            x /= s;
        }
        d
    };
    let basis: Vec<Vec<L>> = (0..total)
        .map(|x| {
            digits(x)
                .iter()
                .zip(rings)
                .map(|(&i, r)| r.label(i).clone())
                .collect()
        })
        .collect();
    FusionRing::from_fn(basis, |a, b| {
        let (da, db) = (digits(a), digits(b));
        // expand factorwise products into flat indices
        let mut acc: Vec<(usize, u32)> = vec![(0, 1)];
        for (f, r) in rings.iter().enumerate() {
            let mut next = Vec::new();
            for &(flat, m) in &acc {
                for &(k, c) in r.product(da[f], db[f]) {
                    next.push((flat * sizes[f] + k, m * c));
                }
            }
            acc = next;
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Group ring of Z_n.
    pub(crate) fn cyclic(n: usize) -> FusionRing<usize> {
        FusionRing::from_fn((0..n).collect(), |i, j| vec![((i + j) % n, 1)]).unwrap()
    }

    /// {1, ψ, σ} with σσ = 1 + ψ.
    fn ising() -> FusionRing<&'static str> {
        let table = |i: usize, j: usize| match (i.min(j), i.max(j)) {
            (0, k) => vec![(k, 1)],
            (1, 1) => vec![(0, 1)],
            (1, 2) => vec![(2, 1)],
            (2, 2) => vec![(0, 1), (1, 1)],
            _ => unreachable!(),
        };
        FusionRing::from_fn(vec!["1", "psi", "sigma"], table).unwrap()
    }

    #[test]
    fn cyclic_ring_axioms() {
        let r = cyclic(5);
        assert!(r.check_axioms().passed());
        assert_eq!(r.dual(2), 3);
        let dims = vec![1.0; 5];
        assert_eq!(r.dimension_residual(&dims), 0.0);
        assert!((r.perron_frobenius(3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ising_dimensions() {
        let r = ising();
        assert!(r.check_axioms().passed());
        let s2 = crate::math::sqrt(2.0);
        assert!(r.dimension_residual(&[1.0, 1.0, s2]) < 1e-12);
        assert!((r.perron_frobenius(2) - s2).abs() < 1e-9);
        assert_eq!(
            r.fuse(&"sigma", &"sigma").unwrap(),
            vec![("1", 1), ("psi", 1)]
        );
        assert_eq!(r.fuse(&"tau", &"sigma"), Err(RingError::UnknownLabel));
    }

    #[test]
    fn associativity_violation_is_caught() {
        // xx = 1 + y, xy = x, yy = 1 + x: (xx)y = 1 + x + y but x(xy) = 1 + y
        let table = |i: usize, j: usize| match (i.min(j), i.max(j)) {
            (0, k) => vec![(k, 1)],
            (1, 1) => vec![(0, 1), (2, 1)],
            (1, 2) => vec![(1, 1)],
            (2, 2) => vec![(0, 1), (1, 1)],
            _ => unreachable!(),
        };
        let r = FusionRing::from_fn(vec![0, 1, 2], table).unwrap();
        let report = r.check_axioms();
        assert!(!report.passed());
        assert!(report
            .counterexamples
            .iter()
            .any(|f| matches!(f, AxiomFailure::Associativity { .. })));
    }

    #[test]
    fn missing_dual_is_rejected() {
        let err = FusionRing::from_fn(vec![0, 1], |i, j| {
            if i == 0 {
                vec![(j, 1)]
            } else if j == 0 {
                vec![(i, 1)]
            } else {
                vec![(1, 1)]
            }
        });
        assert_eq!(err, Err(RingError::NoDual(1)));
    }

    #[test]
    fn product_and_isomorphism() {
        let z2 = cyclic(2);
        let z3 = cyclic(3);
        let z6 = cyclic(6);
        let p = product_of(&[&z2, &z2]).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.check_axioms().passed());
        // Z2 x Z2 is not Z4
        assert!(p.find_isomorphism(&cyclic(4)).is_none());
        let z2z3 = product_of(&[&z2, &z3]).unwrap();
        let phi = z2z3.find_isomorphism(&z6).expect("Z2 x Z3 = Z6");
        assert_eq!(phi[0], 0);
        let single = product_of(&[&z3]).unwrap();
        assert!(single.find_isomorphism(&z3).is_some());
    }

    #[test]
    fn restriction_to_subring() {
        let z6 = cyclic(6);
        let even = z6.restrict(|&l| l % 2 == 0).unwrap();
        assert_eq!(even.len(), 3);
        assert!(even.find_isomorphism(&cyclic(3)).is_some());
        assert!(matches!(
            z6.restrict(|&l| l < 2),
            Err(RingError::NotClosed(1, 1))
        ));
    }
}
