//! The parafermion coset: the Cartan torus of SU(l) inside SU(l)_m.
//!
//! Torus sectors are classes `[n]` of `Z^{l-1}` modulo `m·v` with
//! `Σ v_i ≡ 0 (mod l)`. Coset sectors are pairs `(Λ, [n])` with
//! `Σ n_i ≡ τ(Λ) (mod l)`, fusing as
//! `(Λ,[n]) (Λ',[n']) = Σ N_ΛΛ'^Λ'' (Λ'', [n + n'])`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::modular::{asymptotic_dimension, quantum_dimension_of, s_matrix_of, SMatrix};
use crate::report::CheckReport;
use crate::ring::{FusionRing, RingError};
use crate::weights::{color, conjugate_weight, weights_of, Factor, Weight, WeightError};
use crate::wzw::{verlinde_tensor, FusionError, WzwRing};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorusError {
    #[error("class vector has {got} entries, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("({0}, {1}) violates the selection rule")]
    NotInExp(Weight, TorusClass),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// An equivalence class `[n]` with its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusClass {
    l: u32,
    m: u32,
    representative: Vec<i64>,
}

impl TorusClass {
    /// The class of `n`, reduced to the lexicographically smallest member
    /// with entries in `[0, l·m)`.
    pub fn new(l: u32, m: u32, n: &[i64]) -> Result<Self, TorusError> {
        Factor::new(l, m)?;
        if n.len() != l as usize - 1 {
            return Err(TorusError::Length {
                expected: l as usize - 1,
                got: n.len(),
            });
        }
        Ok(Self {
            l,
            m,
            representative: canonical(l, m, n, &identification_subgroup(l, m)),
        })
    }

    pub fn representative(&self) -> &[i64] {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.iter().all(|&x| x == 0)
    }

    /// `Σ n_i mod l`, well defined on the class.
    pub fn charge(&self) -> u32 {
        self.representative
            .iter()
            .sum::<i64>()
            .rem_euclid(self.l as i64) as u32
    }

    pub fn add(&self, other: &Self) -> Self {
        let sum: Vec<i64> = self
            .representative
            .iter()
            .zip(&other.representative)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.l, self.m, &sum).expect("same shape")
    }

    pub fn negate(&self) -> Self {
        let neg: Vec<i64> = self.representative.iter().map(|a| -a).collect();
        Self::new(self.l, self.m, &neg).expect("same shape")
    }
}

impl fmt::Display for TorusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.representative.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// `{m·v mod l·m : Σ v_i ≡ 0 (mod l)}`, enumerated with `v ∈ [0, l)^{l-1}`.
fn identification_subgroup(l: u32, m: u32) -> Vec<Vec<i64>> {
    let dim = l as usize - 1;
    let (l, m) = (l as i64, m as i64);
    let mut out = Vec::new();
    let mut v = vec![0i64; dim];
    loop {
        if v.iter().sum::<i64>() % l == 0 {
            out.push(v.iter().map(|&x| (m * x) % (l * m)).collect());
        }
        // odometer over [0, l)^dim
        let mut pos = 0;
        while pos < dim {
            v[pos] += 1;
            if v[pos] < l {
                break;
            }
            v[pos] = 0;
            pos += 1;
        }
        if pos == dim {
            break;
        }
    }
    out
}

fn canonical(l: u32, m: u32, n: &[i64], subgroup: &[Vec<i64>]) -> Vec<i64> {
    let modulus = (l * m) as i64;
    subgroup
        .iter()
        .map(|g| {
            n.iter()
                .zip(g)
                .map(|(a, b)| (a + b).rem_euclid(modulus))
                .collect::<Vec<_>>()
        })
        .min()
        .expect("subgroup contains zero")
}

/// All classes `[n]`, sorted by representative (zero class first).
pub fn torus_classes(l: u32, m: u32) -> Result<Vec<TorusClass>, TorusError> {
    Factor::new(l, m)?;
    let dim = l as usize - 1;
    let modulus = (l * m) as i64;
    let subgroup = identification_subgroup(l, m);
    let mut reps = BTreeSet::new();
    let mut v = vec![0i64; dim];
    loop {
        reps.insert(canonical(l, m, &v, &subgroup));
        let mut pos = 0;
        while pos < dim {
            v[pos] += 1;
            if v[pos] < modulus {
                break;
            }
            v[pos] = 0;
            pos += 1;
        }
        if pos == dim {
            break;
        }
    }
    Ok(reps
        .into_iter()
        .map(|representative| TorusClass {
            l,
            m,
            representative,
        })
        .collect())
}

/// A coset sector `(Λ, [n])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusSector {
    pub weight: Weight,
    pub class: TorusClass,
}

impl TorusSector {
    pub fn new(weight: Weight, class: TorusClass) -> Result<Self, TorusError> {
        if !selection_rule(&weight, &class) {
            return Err(TorusError::NotInExp(weight, class));
        }
        Ok(Self { weight, class })
    }

    pub fn conjugate(&self) -> Self {
        Self {
            weight: conjugate_weight(&self.weight),
            class: self.class.negate(),
        }
    }
}

impl fmt::Display for TorusSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.weight, self.class)
    }
}

fn selection_rule(w: &Weight, c: &TorusClass) -> bool {
    c.charge() == color(w)
}

/// All compatible `(Λ, [n])`, sorted (vacuum first).
pub fn torus_exp(l: u32, m: u32) -> Result<Vec<TorusSector>, TorusError> {
    let classes = torus_classes(l, m)?;
    let mut out = Vec::new();
    for w in weights_of(Factor::new(l, m)?) {
        for c in &classes {
            if selection_rule(&w, c) {
                out.push(TorusSector {
                    weight: w.clone(),
                    class: c.clone(),
                });
            }
        }
    }
    Ok(out)
}

pub type TorusRing = FusionRing<TorusSector>;

/// su(l)_m data and the coset ring built from it.
#[derive(Debug, Clone)]
pub struct TorusCoset {
    factor: Factor,
    s: SMatrix,
    wzw: WzwRing,
    ring: TorusRing,
}

impl TorusCoset {
    pub fn new(l: u32, m: u32) -> Result<Self, TorusError> {
        let factor = Factor::new(l, m)?;
        let s = s_matrix_of(factor);
        let wzw = verlinde_tensor(&s)?;
        let exp = torus_exp(l, m)?;
        let ring = FusionRing::from_fn(exp.clone(), |a, b| {
            let (x, y) = (&exp[a], &exp[b]);
            let i = wzw.index_of(&x.weight).expect("level m weight");
            let j = wzw.index_of(&y.weight).expect("level m weight");
            let class = x.class.add(&y.class);
            wzw.product(i, j)
                .iter()
                .map(|&(k, mult)| {
                    let target = TorusSector {
                        weight: wzw.label(k).clone(),
                        class: class.clone(),
                    };
                    let pos = exp
                        .binary_search(&target)
                        .expect("fusion preserves the selection rule");
                    (pos, mult)
                })
                .collect()
        })?;
        Ok(Self {
            factor,
            s,
            wzw,
            ring,
        })
    }

    pub fn factor(&self) -> Factor {
        self.factor
    }

    pub fn ring(&self) -> &TorusRing {
        &self.ring
    }

    pub fn wzw(&self) -> &WzwRing {
        &self.wzw
    }

    /// `d_{(Λ,[n])} = d_Λ · 1`.
    pub fn dimensions(&self) -> Vec<f64> {
        self.ring
            .basis()
            .iter()
            .map(|s| quantum_dimension_of(&s.weight))
            .collect()
    }

    /// If `N_ΛΛ'^Λ'' != 0` then `τ(Λ'') ≡ τ(Λ) + τ(Λ') (mod l)`.
    pub fn color_additivity_check(&self) -> CheckReport<(usize, usize, usize)> {
        let mut report = CheckReport::default();
        let l = self.factor.rank();
        for i in 0..self.wzw.len() {
            for j in 0..self.wzw.len() {
                let expected = (color(self.wzw.label(i)) + color(self.wzw.label(j))) % l;
                for &(k, _) in self.wzw.product(i, j) {
                    report.record(color(self.wzw.label(k)) == expected, || (i, j, k));
                }
            }
        }
        report
    }

    /// Compares, per sector, the Perron-Frobenius eigenvalue of its fusion
    /// matrix and the branching ratio `a(Λ)/a(0)` with `d_Λ`.
    pub fn kw_dimension_check(&self, tolerance: f64) -> CheckReport<TorusSector> {
        let mut report = CheckReport::default();
        let a0 = asymptotic_dimension(&self.s, &self.factor.vacuum()).expect("vacuum");
        for (i, sector) in self.ring.basis().iter().enumerate() {
            let d = quantum_dimension_of(&sector.weight);
            let ratio = asymptotic_dimension(&self.s, &sector.weight).expect("level m weight") / a0;
            let pf = self.ring.perron_frobenius(i);
            let residual = libm::fabs(ratio - d).max(libm::fabs(pf - d));
            report.residual(residual, tolerance, || sector.clone());
        }
        report
    }

    /// The ring's dual map agrees with `(Λ, [n]) ↦ (conj Λ, [-n])`.
    pub fn conjugation_check(&self) -> bool {
        self.ring
            .basis()
            .iter()
            .enumerate()
            .all(|(i, s)| self.ring.label(self.ring.dual(i)) == &s.conjugate())
    }
}

pub fn torus_ring(l: u32, m: u32) -> Result<TorusRing, TorusError> {
    Ok(TorusCoset::new(l, m)?.ring)
}
