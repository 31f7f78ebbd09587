//! Kac-Peterson modular S-matrix of su(N)_k and the dimensions read off its
//! vacuum row.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::lattice;
use crate::math::{self, Complex64, PI};
use crate::weights::{weights_of, AlgebraSpec, Factor, Weight, WeightError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModularError {
    #[error("weight {0} is not in the S-matrix basis")]
    NotInBasis(Weight),
    #[error("expected {expected} weights, one per factor, got {got}")]
    FactorMismatch { expected: usize, got: usize },
    #[error("weight {weight} belongs to {got}, not {expected}")]
    WrongFactor {
        weight: Weight,
        expected: Factor,
        got: Factor,
    },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// The modular S-matrix in the basis of [`weights_of`].
#[derive(Debug, Clone)]
pub struct SMatrix {
    factor: Factor,
    basis: Vec<Weight>,
    index: BTreeMap<Weight, usize>,
    entries: Vec<Complex64>,
}

impl SMatrix {
    pub fn factor(&self) -> Factor {
        self.factor
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.basis.len() + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.basis.len();
        &self.entries[i * n..(i + 1) * n]
    }

    /// Largest entrywise deviation of `S S^†` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for m in 0..n {
                    acc += self.get(i, m) * self.get(j, m).conj();
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation of `S` from its transpose.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        worst
    }

    /// Smallest real part on the vacuum row together with the largest
    /// imaginary part magnitude there.
    pub fn vacuum_row_bounds(&self) -> (f64, f64) {
        self.row(0)
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, im), z| {
                (lo.min(z.re), im.max(z.im.abs()))
            })
    }

    /// Largest entrywise deviation of `S^2` from the charge-conjugation
    /// permutation matrix.
    pub fn conjugation_residual(&self) -> f64 {
        let n = self.len();
        let conj: Vec<usize> = self
            .basis
            .iter()
            .map(|w| self.index[&crate::weights::conjugate_weight(w)])
            .collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for m in 0..n {
                    acc += self.get(i, m) * self.get(m, j);
                }
                if conj[i] == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

/// Builds the S-matrix of a single-factor spec.
pub fn s_matrix(spec: &AlgebraSpec) -> Result<SMatrix, ModularError> {
    Ok(s_matrix_of(spec.as_single()?))
}

/// Builds the S-matrix of su(N)_k.
///
/// Each row is the finite Weyl character of `Λ_λ` evaluated at
/// `exp(-2πi(μ+ρ)/h)` (a ratio of alternating sums over the symmetric group),
/// scaled by the closed-form vacuum-row entry `S_{0μ}`.
pub fn s_matrix_of(factor: Factor) -> SMatrix {
    let basis = weights_of(factor);
    let n = factor.rank() as usize;
    let h = factor.shifted_level() as f64;
    // N-scaled epsilon coordinates of λ + ρ
    let eps: Vec<Vec<i64>> = basis
        .iter()
        .map(|w| {
            let shifted: Vec<i64> = w.labels().iter().map(|&l| l as i64 + 1).collect();
            lattice::scaled_epsilon_coords(&shifted)
        })
        .collect();
    let scale = -2.0 * PI / (h * (n * n) as f64);

    let alternating = |x: &[i64], y: &[i64]| {
        let mut acc = Complex64::new(0.0, 0.0);
        lattice::for_each_permutation(n, |perm, odd| {
            let dot: i64 = perm.iter().zip(y).map(|(&p, &yi)| x[p] * yi).sum();
            let z = math::cis(scale * dot as f64);
            if odd {
                acc -= z;
            } else {
                acc += z;
            }
        });
        acc
    };

    let dim = basis.len();
    let vacuum_row: Vec<f64> = basis.iter().map(vacuum_entry).collect();
    let denominators: Vec<Complex64> = (0..dim).map(|m| alternating(&eps[0], &eps[m])).collect();
    let mut entries = alloc::vec![Complex64::new(0.0, 0.0); dim * dim];
    for l in 0..dim {
        for m in l..dim {
            let num = alternating(&eps[l], &eps[m]);
            let v = num / denominators[m] * vacuum_row[m];
            entries[l * dim + m] = v;
            entries[m * dim + l] = v;
        }
    }
    let index = basis.iter().cloned().zip(0..).collect();
    SMatrix {
        factor,
        basis,
        index,
        entries,
    }
}

/// `S_{0μ} = N^{-1/2} h^{-(N-1)/2} Π_{α>0} 2 sin(π (α, μ+ρ) / h)`.
fn vacuum_entry(w: &Weight) -> f64 {
    let n = w.factor().rank() as usize;
    let h = w.factor().shifted_level() as f64;
    let shifted: Vec<f64> = w.labels().iter().map(|&l| l as f64 + 1.0).collect();
    let mut prod = 1.0;
    // (α_{ab}, μ+ρ) is the sum of shifted labels a..b
    for a in 0..n - 1 {
        let mut s = 0.0;
        for &v in &shifted[a..] {
            s += v;
            prod *= 2.0 * math::sin(PI * s / h);
        }
    }
    prod / math::sqrt(n as f64) / math::pow(h, (n as f64 - 1.0) / 2.0)
}

/// `a(Λ) = S_{0Λ}`.
pub fn asymptotic_dimension(s: &SMatrix, w: &Weight) -> Result<f64, ModularError> {
    let i = s
        .index_of(w)
        .ok_or_else(|| ModularError::NotInBasis(w.clone()))?;
    Ok(s.get(0, i).re)
}

/// `d_Λ = S_{0Λ} / S_{00}`.
pub fn quantum_dimension(s: &SMatrix, w: &Weight) -> Result<f64, ModularError> {
    Ok(asymptotic_dimension(s, w)? / s.get(0, 0).re)
}

/// Quantum dimension from the sine-product closed form, without building S.
pub fn quantum_dimension_of(w: &Weight) -> f64 {
    vacuum_entry(w) / vacuum_entry(&w.factor().vacuum())
}

/// Product of per-factor quantum dimensions of a multi-factor weight.
pub fn product_quantum_dimension(spec: &AlgebraSpec, ws: &[Weight]) -> Result<f64, ModularError> {
    let factors = spec.factors();
    if factors.len() != ws.len() {
        return Err(ModularError::FactorMismatch {
            expected: factors.len(),
            got: ws.len(),
        });
    }
    let mut d = 1.0;
    for (f, w) in factors.iter().zip(ws) {
        if w.factor() != *f {
            return Err(ModularError::WrongFactor {
                weight: w.clone(),
                expected: *f,
                got: w.factor(),
            });
        }
        d *= quantum_dimension_of(w);
    }
    Ok(d)
}
