//! Integrable highest weights of affine su(N) at level k.
//!
//! Weights are carried as unshifted Dynkin labels `Λ_i >= 0` with
//! `Σ Λ_i <= k`. The ρ-shifted labels `λ_i = Λ_i + 1` (all `>= 1`, summing to
//! less than `h = k + N`) are only used internally where a formula is
//! naturally stated in them, e.g. the simple-current automorphism.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("su({0}) needs N >= 2")]
    BadRank(u32),
    #[error("level must be >= 1, got {0}")]
    BadLevel(u32),
    #[error("expected {expected} Dynkin labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("labels {labels:?} exceed level {level}")]
    NotIntegrable { labels: Vec<u32>, level: u32 },
    #[error("operation needs a single-factor algebra, got {0} factors")]
    MultiFactor(usize),
    #[error("algebra needs at least one factor")]
    Empty,
}

/// One simple factor su(N) at level k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    rank: u32,
    level: u32,
}

impl Factor {
    pub fn new(rank: u32, level: u32) -> Result<Self, WeightError> {
        if rank < 2 {
            return Err(WeightError::BadRank(rank));
        }
        if level < 1 {
            return Err(WeightError::BadLevel(level));
        }
        Ok(Self { rank, level })
    }

    /// The `N` of su(N).
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `h = k + N`.
    pub fn shifted_level(&self) -> u32 {
        self.level + self.rank
    }

    pub fn vacuum(&self) -> Weight {
        Weight {
            factor: *self,
            labels: vec![0; self.rank as usize - 1],
        }
    }

    pub fn weight(&self, labels: &[u32]) -> Result<Weight, WeightError> {
        Weight::new(*self, labels.to_vec())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "su({})_{}", self.rank, self.level)
    }
}

/// A product of su(N_i) factors at levels k_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    factors: Vec<Factor>,
}

impl AlgebraSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self, WeightError> {
        if factors.is_empty() {
            return Err(WeightError::Empty);
        }
        Ok(Self { factors })
    }

    pub fn single(rank: u32, level: u32) -> Result<Self, WeightError> {
        Ok(Self {
            factors: vec![Factor::new(rank, level)?],
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The factor of a single-factor spec.
    pub fn as_single(&self) -> Result<Factor, WeightError> {
        match self.factors.as_slice() {
            [f] => Ok(*f),
            fs => Err(WeightError::MultiFactor(fs.len())),
        }
    }
}

/// An integrable highest weight of one su(N)_k factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    factor: Factor,
    labels: Vec<u32>,
}

impl Weight {
    pub fn new(factor: Factor, labels: Vec<u32>) -> Result<Self, WeightError> {
        let expected = factor.rank as usize - 1;
        if labels.len() != expected {
            return Err(WeightError::LabelCount {
                expected,
                got: labels.len(),
            });
        }
        if labels.iter().map(|&l| l as u64).sum::<u64>() > factor.level as u64 {
            return Err(WeightError::NotIntegrable {
                labels,
                level: factor.level,
            });
        }
        Ok(Self { factor, labels })
    }

    pub fn factor(&self) -> Factor {
        self.factor
    }

    /// Unshifted Dynkin labels.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// The zeroth affine label `k - Σ Λ_i`.
    pub fn affine_label(&self) -> u32 {
        self.factor.level - self.labels.iter().sum::<u32>()
    }

    pub fn is_vacuum(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    pub(crate) fn labels_i64(&self) -> Vec<i64> {
        self.labels.iter().map(|&l| l as i64).collect()
    }

    /// Labels shifted by ρ.
    pub fn shifted_labels(&self) -> Vec<u32> {
        self.labels.iter().map(|&l| l + 1).collect()
    }

    pub fn from_shifted(factor: Factor, shifted: &[u32]) -> Result<Self, WeightError> {
        let labels = shifted
            .iter()
            .map(|&l| {
                l.checked_sub(1).ok_or_else(|| WeightError::NotIntegrable {
                    labels: shifted.to_vec(),
                    level: factor.level,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(factor, labels)
    }

    pub fn color(&self) -> u32 {
        color(self)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.len() == 1 {
            return write!(f, "{}", self.labels[0]);
        }
        write!(f, "(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A formal difference of weights, as Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightDelta(pub Vec<i64>);

impl WeightDelta {
    /// `a + b - c`, the combination tested by the coset selection rule.
    pub fn sum_minus(a: &Weight, b: &Weight, c: &Weight) -> Self {
        Self(
            a.labels
                .iter()
                .zip(&b.labels)
                .zip(&c.labels)
                .map(|((&x, &y), &z)| x as i64 + y as i64 - z as i64)
                .collect(),
        )
    }

    pub fn from_weight(w: &Weight) -> Self {
        Self(w.labels_i64())
    }
}

/// All integrable weights of `spec` in lexicographic label order (vacuum first).
pub fn integrable_weights(spec: &AlgebraSpec) -> Result<Vec<Weight>, WeightError> {
    Ok(weights_of(spec.as_single()?))
}

/// Same as [`integrable_weights`] for a bare factor.
pub fn weights_of(factor: Factor) -> Vec<Weight> {
    let slots = factor.rank as usize - 1;
    let mut out = Vec::new();
    let mut labels = vec![0u32; slots];
    fill(&mut out, factor, &mut labels, 0, factor.level);
    out
}

fn fill(out: &mut Vec<Weight>, factor: Factor, labels: &mut [u32], pos: usize, budget: u32) {
    if pos == labels.len() {
        out.push(Weight {
            factor,
            labels: labels.to_vec(),
        });
        return;
    }
    for v in 0..=budget {
        labels[pos] = v;
        fill(out, factor, labels, pos + 1, budget - v);
    }
    labels[pos] = 0;
}

/// `Σ i Λ_i mod N`.
pub fn color(w: &Weight) -> u32 {
    let n = w.factor.rank as u64;
    let s: u64 = w
        .labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (i as u64 + 1) * l as u64)
        .sum();
    (s % n) as u32
}

/// Whether `d` lies in the root lattice of su(N).
pub fn in_root_lattice(d: &WeightDelta, n: u32) -> bool {
    let s: i64 =
        d.0.iter()
            .enumerate()
            .map(|(i, &v)| (i as i64 + 1) * v)
            .sum();
    s.rem_euclid(n as i64) == 0
}

/// Applies the generator `σ_1` of the Z_N diagram automorphism `power` times.
///
/// In shifted labels `σ_1(λ_1, ..., λ_{N-1}) = (h - Σ λ_j, λ_1, ..., λ_{N-2})`;
/// in unshifted labels this rotates the extended label vector
/// `(Λ_0, Λ_1, ..., Λ_{N-1})` by one place.
pub fn sigma_apply(power: i64, w: &Weight) -> Weight {
    let n = w.factor.rank as i64;
    let steps = power.rem_euclid(n) as usize;
    let mut extended = Vec::with_capacity(n as usize);
    extended.push(w.affine_label());
    extended.extend_from_slice(&w.labels);
    extended.rotate_right(steps);
    Weight {
        factor: w.factor,
        labels: extended[1..].to_vec(),
    }
}

/// Charge conjugation: reverses the Dynkin labels.
pub fn conjugate_weight(w: &Weight) -> Weight {
    let mut labels = w.labels.clone();
    labels.reverse();
    Weight {
        factor: w.factor,
        labels,
    }
}

/// Sugawara conformal weight `(Λ, Λ + 2ρ) / (2(k + N))`.
pub fn conformal_weight(w: &Weight) -> Rational64 {
    let n = w.factor.rank as usize;
    let lab = w.labels_i64();
    let lam_plus_2rho: Vec<i64> = lab.iter().map(|&l| l + 2).collect();
    // scaled_dot returns N * (a, b)
    let num = lattice::scaled_dot(n, &lab, &lam_plus_2rho);
    let den = 2 * n as i64 * w.factor.shifted_level() as i64;
    Rational64::new(num, den)
}
