//! Verlinde fusion rings of su(N)_k and their products.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::math::Complex64;
use crate::modular::SMatrix;
use crate::report::CheckReport;
use crate::ring::{product_of, FusionRing, RingError};
use crate::weights::{conjugate_weight, sigma_apply, Weight};

/// Largest tolerated distance of a Verlinde sum from the nearest integer.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// The fusion ring of one su(N)_k factor.
pub type WzwRing = FusionRing<Weight>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("Verlinde sum N_{i}{j}^{k} is {residual:e} away from an integer")]
    IntegralityViolation {
        residual: f64,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("Verlinde sum N_{i}{j}^{k} = {value} is negative")]
    Negative {
        value: i64,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Fusion coefficients `N_ij^k = Σ_m S_im S_jm conj(S_km) / S_0m`, rounded
/// after checking integrality against [`INTEGRALITY_TOLERANCE`].
pub fn verlinde_tensor(s: &SMatrix) -> Result<WzwRing, FusionError> {
    verlinde_tensor_checked(s, INTEGRALITY_TOLERANCE).map(|(ring, _)| ring)
}

/// Like [`verlinde_tensor`] with an explicit tolerance; also returns the
/// worst pre-rounding residual.
pub fn verlinde_tensor_checked(s: &SMatrix, tolerance: f64) -> Result<(WzwRing, f64), FusionError> {
    let n = s.len();
    let inv_vacuum: Vec<f64> = (0..n).map(|m| 1.0 / s.get(0, m).re).collect();
    let mut table: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n * n];
    let mut worst = 0.0f64;
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        for j in i..n {
            for (m, slot) in v.iter_mut().enumerate() {
                *slot = s.get(i, m) * s.get(j, m) * inv_vacuum[m];
            }
            let mut entry = Vec::new();
            for k in 0..n {
                let z: Complex64 = v.iter().zip(s.row(k)).map(|(a, b)| a * b.conj()).sum();
                let rounded = libm::round(z.re);
                let residual = (z - rounded).norm();
                worst = worst.max(residual);
                if !(residual < tolerance) {
                    return Err(FusionError::IntegralityViolation { residual, i, j, k });
                }
                let value = rounded as i64;
                if value < 0 {
                    return Err(FusionError::Negative { value, i, j, k });
                }
                if value > 0 {
                    entry.push((k, value as u32));
                }
            }
            table[j * n + i] = entry.clone();
            table[i * n + j] = entry;
        }
    }
    let ring = FusionRing::from_fn(s.basis().to_vec(), |i, j| table[i * n + j].clone())?;
    Ok((ring, worst))
}

/// Nonzero slice `N_ij^•`.
pub fn fuse(ring: &WzwRing, i: &Weight, j: &Weight) -> Result<Vec<(Weight, u32)>, FusionError> {
    Ok(ring.fuse(i, j)?)
}

/// Fusion ring of a product of factors: `N_ij^k` multiplies factorwise.
pub fn product_ring(rings: &[&WzwRing]) -> Result<FusionRing<Vec<Weight>>, FusionError> {
    Ok(product_of(rings)?)
}

/// A failed instance of `N_{conj(i), i'}^{σ(0)} = δ_{σ(i), i'}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCurrentFailure {
    pub power: u32,
    pub i: Weight,
    pub i_prime: Weight,
    pub coefficient: u32,
}

/// Checks `N_{conj(i), i'}^{σ^p(0)} = δ_{σ^p(i), i'}` for every `i, i'` and
/// every power `p` of the simple current.
pub fn simple_current_check(ring: &WzwRing) -> CheckReport<SimpleCurrentFailure> {
    let mut report = CheckReport::default();
    let vacuum = ring.label(0);
    let n = vacuum.factor().rank();
    for p in 0..n {
        let current = ring
            .index_of(&sigma_apply(p as i64, vacuum))
            .expect("σ preserves integrable weights");
        for i in ring.basis() {
            let ci = ring
                .index_of(&conjugate_weight(i))
                .expect("conjugation preserves integrable weights");
            let target = sigma_apply(p as i64, i);
            for (ip, i_prime) in ring.basis().iter().enumerate() {
                let c = ring.coefficient(ci, ip, current);
                let expected = u32::from(*i_prime == target);
                report.record(c == expected, || SimpleCurrentFailure {
                    power: p,
                    i: i.clone(),
                    i_prime: i_prime.clone(),
                    coefficient: c,
                });
            }
        }
    }
    report
}

/// Checks `N_{σ(i) j}^{σ(k)} = N_ij^k` for every power of the simple current.
pub fn sigma_covariance_check(ring: &WzwRing) -> CheckReport<(u32, usize, usize, usize)> {
    let mut report = CheckReport::default();
    let n = ring.label(0).factor().rank();
    let len = ring.len();
    for p in 1..n {
        let image: Vec<usize> = ring
            .basis()
            .iter()
            .map(|w| {
                ring.index_of(&sigma_apply(p as i64, w))
                    .expect("σ is a bijection")
            })
            .collect();
        for i in 0..len {
            for j in 0..len {
                for k in 0..len {
                    let ok = ring.coefficient(image[i], j, image[k]) == ring.coefficient(i, j, k);
                    report.record(ok, || (p, i, j, k));
                }
            }
        }
    }
    report
}

/// Checks that the ring's dual map is charge conjugation of weights.
pub fn conjugation_matches_weights(ring: &WzwRing) -> bool {
    ring.basis()
        .iter()
        .enumerate()
        .all(|(i, w)| ring.label(ring.dual(i)) == &conjugate_weight(w))
}
