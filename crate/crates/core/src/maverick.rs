//! The SU(2)_8 ⊂ SU(3)_2 Maverick coset: a six-element sector ring built from
//! `x² = 1 + x`, `y ȳ = 1 + x`, `z³ = 1`, `y = x z`, and a branching check of
//! the identification `(00,0) = (00,8) = (11,4)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::branching::{branching_functions, coset_energy_offset, BranchingError};
use crate::characters::index_four_projection;
use crate::ring::{FusionRing, RingError};
use crate::weights::{Factor, Weight};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaverickError {
    #[error("relations are inconsistent: {0}")]
    InconsistentRelations(&'static str),
    #[error("cutoff {0} is below 4; (00,8) only reaches energy 0 at grade 2")]
    CutoffTooSmall(u32),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Branching(#[from] BranchingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaverickSector {
    One,
    X,
    Y,
    YBar,
    Z,
    ZBar,
}

impl MaverickSector {
    pub const ALL: [MaverickSector; 6] =
        [Self::One, Self::X, Self::Y, Self::YBar, Self::Z, Self::ZBar];

    /// Normal form `x^a z^b`.
    fn monomial(self) -> (u32, u32) {
        match self {
            Self::One => (0, 0),
            Self::X => (1, 0),
            Self::Z => (0, 1),
            Self::ZBar => (0, 2),
            Self::Y => (1, 1),
            Self::YBar => (1, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::One => "1",
            Self::X => "x",
            Self::Y => "y",
            Self::YBar => "ybar",
            Self::Z => "z",
            Self::ZBar => "zbar",
        }
    }
}

impl fmt::Display for MaverickSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type MaverickRing = FusionRing<MaverickSector>;

/// The relation set: `x² = 1 + c·x` and `z^order = 1`; the Maverick values
/// are `c = 1`, `order = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relations {
    pub x_square_coefficient: u32,
    pub z_order: u32,
}

impl Default for Relations {
    fn default() -> Self {
        Self {
            x_square_coefficient: 1,
            z_order: 3,
        }
    }
}

type Poly = BTreeMap<(u32, u32), u64>;

/// `x^a = p + q x` under `x² = 1 + c x`.
fn reduce_x_power(a: u32, c: u64) -> (u64, u64) {
    let (mut p, mut q) = (1u64, 0u64);
    for _ in 0..a {
        (p, q) = (q, p + c * q);
    }
    (p, q)
}

fn multiply(a: (u32, u32), b: (u32, u32), r: &Relations) -> Poly {
    let (p, q) = reduce_x_power(a.0 + b.0, r.x_square_coefficient as u64);
    let zb = (a.1 + b.1) % r.z_order;
    let mut out = Poly::new();
    if p > 0 {
        out.insert((0, zb), p);
    }
    if q > 0 {
        out.insert((1, zb), q);
    }
    out
}

/// Closes the relation set under multiplication by the generators `x` and
/// `z`, and checks the result has the six Maverick sectors with
/// `y = xz`, `ȳ = conj(y)` and `y ȳ = 1 + x`.
pub fn build_from_relations(r: &Relations) -> Result<MaverickRing, MaverickError> {
    if r.z_order == 0 {
        return Err(MaverickError::InconsistentRelations("z has order 0"));
    }
    let mut span: BTreeSet<(u32, u32)> = BTreeSet::from([(0, 0)]);
    let mut frontier = vec![(0u32, 0u32)];
    while let Some(m) = frontier.pop() {
        for g in [(1, 0), (0, 1)] {
            for &mono in multiply(m, g, r).keys() {
                if span.insert(mono) {
                    if span.len() > 6 {
                        return Err(MaverickError::InconsistentRelations(
                            "closure exceeds 6 elements",
                        ));
                    }
                    frontier.push(mono);
                }
            }
        }
    }
    let expected: BTreeSet<_> = MaverickSector::ALL.iter().map(|s| s.monomial()).collect();
    if span != expected {
        return Err(MaverickError::InconsistentRelations(
            "closure is not {1, x, y, ȳ, z, z̄}",
        ));
    }
    let position = |mono: (u32, u32)| {
        MaverickSector::ALL
            .iter()
            .position(|s| s.monomial() == mono)
            .expect("in span")
    };
    let ring = FusionRing::from_fn(MaverickSector::ALL.to_vec(), |i, j| {
        multiply(
            MaverickSector::ALL[i].monomial(),
            MaverickSector::ALL[j].monomial(),
            r,
        )
        .into_iter()
        .map(|(mono, c)| (position(mono), c as u32))
        .collect()
    })?;
    let idx = |s: MaverickSector| ring.index_of(&s).expect("basis");
    let (x, y, yb, z, zb) = (
        idx(MaverickSector::X),
        idx(MaverickSector::Y),
        idx(MaverickSector::YBar),
        idx(MaverickSector::Z),
        idx(MaverickSector::ZBar),
    );
    if ring.dual(y) != yb || ring.dual(z) != zb {
        return Err(MaverickError::InconsistentRelations(
            "conjugation does not pair (y, ȳ) and (z, z̄)",
        ));
    }
    if ring.product(y, yb) != [(0, 1), (x, 1)] {
        return Err(MaverickError::InconsistentRelations("y ȳ ≠ 1 + x"));
    }
    Ok(ring)
}

pub fn build_maverick_ring() -> Result<MaverickRing, MaverickError> {
    build_from_relations(&Relations::default())
}

/// Perron-Frobenius dimension of every basis element.
pub fn maverick_dims(ring: &MaverickRing) -> Vec<(MaverickSector, f64)> {
    (0..ring.len())
        .map(|i| (*ring.label(i), ring.perron_frobenius(i)))
        .collect()
}

/// `Σ d²`, reported only.
pub fn global_dimension(ring: &MaverickRing) -> f64 {
    maverick_dims(ring).iter().map(|(_, d)| d * d).sum()
}

/// Lowest coset energy of one `(su(3)_2, su(2)_8)` sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorEnergy {
    pub source: Weight,
    pub target: Weight,
    pub energy: Rational64,
    pub lowest_grade: usize,
    pub multiplicity: u64,
}

impl SectorEnergy {
    pub fn is_vacuum_like(&self) -> bool {
        self.energy == Rational64::from_integer(0) && self.multiplicity == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaverickBranchingReport {
    pub cutoff: u32,
    /// `(00,0)`, `(00,8)`, `(11,4)` in that order.
    pub quoted: Vec<SectorEnergy>,
    /// Every sector with energy 0 and multiplicity 1.
    pub vacuum_like: Vec<(Weight, Weight)>,
    /// The simple-current orbit `(pq, l) ~ (pq, 8 - l)` of the vacuum.
    pub predicted: Vec<(Weight, Weight)>,
    /// Quoted sectors the orbit does not reach.
    pub unpredicted: Vec<(Weight, Weight)>,
}

impl MaverickBranchingReport {
    /// The quoted line holds and the orbit predictor misses exactly `(11,4)`.
    pub fn passed(&self) -> bool {
        self.quoted.iter().all(SectorEnergy::is_vacuum_like)
            && self.unpredicted.len() == 1
            && self.unpredicted[0].0.labels() == [1, 1]
            && self.unpredicted[0].1.labels() == [4]
    }
}

pub fn maverick_branching_check(cutoff: u32) -> Result<MaverickBranchingReport, MaverickError> {
    if cutoff < 4 {
        return Err(MaverickError::CutoffTooSmall(cutoff));
    }
    let su3 = Factor::new(3, 2).expect("valid");
    let su2 = Factor::new(2, 8).expect("valid");
    let mut energies: Vec<SectorEnergy> = Vec::new();
    for source in crate::weights::weights_of(su3) {
        for b in branching_functions(
            core::slice::from_ref(&source),
            &index_four_projection(),
            su2,
            cutoff,
        )? {
            let Some(lowest_grade) = b.lowest_grade() else {
                continue;
            };
            energies.push(SectorEnergy {
                source: source.clone(),
                target: b.target().clone(),
                energy: coset_energy_offset(&b)?,
                lowest_grade,
                multiplicity: b.coefficients()[lowest_grade],
            });
        }
    }
    let pick = |p: &[u32], l: u32| -> (Weight, Weight) {
        (
            su3.weight(p).expect("valid"),
            su2.weight(&[l]).expect("valid"),
        )
    };
    let quoted_keys = [pick(&[0, 0], 0), pick(&[0, 0], 8), pick(&[1, 1], 4)];
    let mut quoted = Vec::new();
    for (s, t) in &quoted_keys {
        let e = energies
            .iter()
            .find(|e| &e.source == s && &e.target == t)
            .cloned()
            .ok_or_else(|| BranchingError::Inconclusive(t.clone()))?;
        quoted.push(e);
    }
    let predicted = vec![pick(&[0, 0], 0), pick(&[0, 0], 8)];
    let unpredicted = quoted_keys
        .iter()
        .filter(|k| !predicted.contains(k))
        .cloned()
        .collect();
    Ok(MaverickBranchingReport {
        cutoff,
        quoted,
        vacuum_like: energies
            .iter()
            .filter(|e| e.is_vacuum_like())
            .map(|e| (e.source.clone(), e.target.clone()))
            .collect(),
        predicted,
        unpredicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use MaverickSector::*;

    fn golden() -> f64 {
        (libm::sqrt(5.0) + 1.0) / 2.0
    }

    #[test]
    fn relations_hold() {
        let r = build_maverick_ring().unwrap();
        assert!(r.check_axioms().passed());
        assert_eq!(r.fuse(&X, &X).unwrap(), vec![(One, 1), (X, 1)]);
        assert_eq!(r.fuse(&Y, &YBar).unwrap(), vec![(One, 1), (X, 1)]);
        assert_eq!(r.fuse(&Z, &ZBar).unwrap(), vec![(One, 1)]);
        assert_eq!(r.fuse(&Z, &Z).unwrap(), vec![(ZBar, 1)]);
        assert_eq!(r.fuse(&X, &Z).unwrap(), vec![(Y, 1)]);
    }

    #[test]
    fn dimensions() {
        let r = build_maverick_ring().unwrap();
        let phi = golden();
        let dims: BTreeMap<_, _> = maverick_dims(&r).into_iter().collect();
        for (s, expected) in [
            (One, 1.0),
            (X, phi),
            (Y, phi),
            (YBar, phi),
            (Z, 1.0),
            (ZBar, 1.0),
        ] {
            assert!((dims[&s] - expected).abs() < 1e-9, "{s}");
        }
        assert!((dims[&X] * dims[&X] - 1.0 - dims[&X]).abs() < 1e-9);
        let ordered: Vec<f64> = maverick_dims(&r).iter().map(|p| p.1).collect();
        assert!(r.dimension_residual(&ordered) < 1e-6);
        assert!((global_dimension(&r) - 3.0 * (1.0 + phi * phi)).abs() < 1e-9);
    }

    #[test]
    fn inconsistent_relations() {
        let bad_order = Relations {
            z_order: 4,
            ..Relations::default()
        };
        assert!(matches!(
            build_from_relations(&bad_order),
            Err(MaverickError::InconsistentRelations(_))
        ));
        let bad_square = Relations {
            x_square_coefficient: 2,
            ..Relations::default()
        };
        assert!(matches!(
            build_from_relations(&bad_square),
            Err(MaverickError::InconsistentRelations(_))
        ));
    }

    #[test]
    fn branching_line() {
        let report = maverick_branching_check(4).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.quoted[1].lowest_grade, 2);
        assert_eq!(report.quoted[2].lowest_grade, 0);
        assert!(matches!(
            maverick_branching_check(3),
            Err(MaverickError::CutoffTooSmall(3))
        ));
    }
}
