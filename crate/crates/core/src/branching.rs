//! Branching functions: restrict a product of affine characters to a
//! subalgebra and peel off target characters grade by grade.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use thiserror::Error;

use crate::characters::{
    diagonal_projection, graded_character, restrict_character, tensor_tables, CharacterError,
    GradedCharacter, GradedTable,
};
use crate::coset::{CosetSector, DiagonalCoset};
use crate::lattice::scaled_dot;
use crate::math::exp;
use crate::report::CheckReport;
use crate::weights::{conformal_weight, weights_of, Factor, Weight};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BranchingError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("peeling left multiplicity {value} at weight {weight:?}, grade {grade}")]
    NegativeResidual {
        grade: u32,
        weight: Vec<i64>,
        value: i64,
    },
    #[error("dominant weight {weight:?} at grade {grade} is not integrable at the target level")]
    Unpeelable { grade: u32, weight: Vec<i64> },
    #[error("branching function of {0} vanishes up to the cutoff")]
    Inconclusive(Weight),
    #[error("β = {beta} is below the trusted floor {floor}")]
    BetaBelowFloor { beta: f64, floor: f64 },
    #[error("cutoffs differ: {0} and {1}")]
    CutoffMismatch(usize, usize),
}

/// `b(q) = q^offset Σ_n coefficients[n] q^n` for one target sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingFunction {
    source: Vec<Weight>,
    target: Weight,
    offset: Rational64,
    coefficients: Vec<u64>,
}

impl BranchingFunction {
    pub fn new(source: Vec<Weight>, target: Weight, coefficients: Vec<u64>) -> Self {
        let offset =
            source.iter().map(conformal_weight).sum::<Rational64>() - conformal_weight(&target);
        Self {
            source,
            target,
            offset,
            coefficients,
        }
    }

    pub fn source(&self) -> &[Weight] {
        &self.source
    }

    pub fn target(&self) -> &Weight {
        &self.target
    }

    /// `Σ h(source) - h(target)`.
    pub fn offset(&self) -> Rational64 {
        self.offset
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn cutoff(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    pub fn lowest_grade(&self) -> Option<usize> {
        self.coefficients.iter().position(|&c| c != 0)
    }

    /// Truncated trace `Σ_n c_n e^{-β(offset + n)}`.
    pub fn trace(&self, beta: f64) -> f64 {
        let offset = *self.offset.numer() as f64 / *self.offset.denom() as f64;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, &c)| c as f64 * exp(-beta * (offset + n as f64)))
            .sum()
    }
}

/// Decomposes `restricted` into target characters. Returns the grade-wise
/// multiplicity of every integrable target weight (zero rows included).
pub fn peel_branching(
    restricted: &GradedTable,
    target: Factor,
    cutoff: u32,
) -> Result<BTreeMap<Weight, Vec<u64>>, BranchingError> {
    let cutoff = cutoff.min(restricted.cutoff());
    let n = target.rank() as usize;
    let two_rho = vec![2i64; n - 1];
    let mut residual: Vec<BTreeMap<Vec<i64>, i64>> = (0..=cutoff)
        .map(|g| {
            restricted
                .slice(g)
                .iter()
                .map(|(w, &m)| (w.clone(), m as i64))
                .collect()
        })
        .collect();
    let mut out: BTreeMap<Weight, Vec<u64>> = weights_of(target)
        .into_iter()
        .map(|w| (w, vec![0; cutoff as usize + 1]))
        .collect();
    let mut characters: BTreeMap<Weight, GradedCharacter> = BTreeMap::new();
    for g in 0..=cutoff {
        loop {
            let top = residual[g as usize]
                .iter()
                .filter(|(w, &m)| m > 0 && w.iter().all(|&x| x >= 0))
                .max_by_key(|(w, _)| (scaled_dot(n, w, &two_rho), (*w).clone()))
                .map(|(w, &m)| (w.clone(), m));
            let Some((labels, count)) = top else { break };
            let weight = labels
                .iter()
                .map(|&x| u32::try_from(x).ok())
                .collect::<Option<Vec<u32>>>()
                .and_then(|l| target.weight(&l).ok())
                .ok_or(BranchingError::Unpeelable {
                    grade: g,
                    weight: labels.clone(),
                })?;
            if !characters.contains_key(&weight) {
                characters.insert(weight.clone(), graded_character(&weight, cutoff)?);
            }
            let ch = &characters[&weight];
            for h in g..=cutoff {
                let slot = &mut residual[h as usize];
                for (w, &m) in ch.table().slice(h - g) {
                    let e = slot.entry(w.clone()).or_insert(0);
                    *e -= count * m as i64;
                    if *e == 0 {
                        slot.remove(w);
                    }
                }
            }
            out.get_mut(&weight).expect("integrable weight")[g as usize] += count as u64;
        }
        if let Some((w, &value)) = residual[g as usize].iter().next() {
            return Err(BranchingError::NegativeResidual {
                grade: g,
                weight: w.clone(),
                value,
            });
        }
    }
    Ok(out)
}

/// Branching functions of `⊗ L(source_i)` restricted along `projection` to
/// `target`, one per integrable target weight.
pub fn branching_functions(
    source: &[Weight],
    projection: &[Vec<i64>],
    target: Factor,
    cutoff: u32,
) -> Result<Vec<BranchingFunction>, BranchingError> {
    let mut table: Option<GradedTable> = None;
    for w in source {
        let ch = graded_character(w, cutoff)?;
        table = Some(match table {
            None => ch.table().clone(),
            Some(t) => tensor_tables(&t, ch.table()),
        });
    }
    let table = table.expect("at least one source weight");
    let restricted = restrict_character(&table, projection)?;
    Ok(peel_branching(&restricted, target, cutoff)?
        .into_iter()
        .map(|(w, c)| BranchingFunction::new(source.to_vec(), w, c))
        .collect())
}

/// Branching functions `b_{(Λ', Λ''), Λ}` of a diagonal coset for all `Λ`.
pub fn diagonal_branching(
    coset: &DiagonalCoset,
    prime: &Weight,
    double_prime: &Weight,
    cutoff: u32,
) -> Result<Vec<BranchingFunction>, BranchingError> {
    let spec = coset.spec();
    branching_functions(
        &[prime.clone(), double_prime.clone()],
        &diagonal_projection(spec.rank()),
        spec.diagonal(),
        cutoff,
    )
}

/// `h' + h'' - h + n_min`, the lowest coset energy.
pub fn coset_energy_offset(b: &BranchingFunction) -> Result<Rational64, BranchingError> {
    let n_min = b
        .lowest_grade()
        .ok_or_else(|| BranchingError::Inconclusive(b.target.clone()))?;
    Ok(b.offset + Rational64::from_integer(n_min as i64))
}

/// Whether the sector contains the coset vacuum: energy 0 with multiplicity 1.
pub fn vacuum_membership(b: &BranchingFunction) -> Result<bool, BranchingError> {
    let energy = coset_energy_offset(b)?;
    let n_min = b.lowest_grade().expect("nonzero");
    Ok(energy == Rational64::from_integer(0) && b.coefficients[n_min] == 1)
}

/// Ratio of truncated traces `Tr e^{-βL_0}`, an estimate of `d_{(i,α)}`.
pub fn kw_numeric_ratio(
    numerator: &BranchingFunction,
    denominator: &BranchingFunction,
    beta: f64,
    beta_floor: f64,
) -> Result<f64, BranchingError> {
    if numerator.cutoff() != denominator.cutoff() {
        return Err(BranchingError::CutoffMismatch(
            numerator.cutoff(),
            denominator.cutoff(),
        ));
    }
    if !(beta >= beta_floor) {
        return Err(BranchingError::BetaBelowFloor {
            beta,
            floor: beta_floor,
        });
    }
    Ok(numerator.trace(beta) / denominator.trace(beta))
}

/// Peeling results for a whole diagonal coset checked against the
/// algebraic side.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchingCheck {
    /// Nonzero branching up to the cutoff ⇔ the selection rule holds.
    pub exp_agreement: CheckReport<CosetSector>,
    /// `Σ_Λ b_Λ · ch_Λ` reproduces the restricted character.
    pub sum_rule: CheckReport<(Weight, Weight)>,
    /// Energy 0 with multiplicity 1 ⇔ σ-image of the vacuum.
    pub vacuum_agreement: CheckReport<CosetSector>,
    pub functions: Vec<BranchingFunction>,
}

impl BranchingCheck {
    pub fn passed(&self) -> bool {
        self.exp_agreement.passed() && self.sum_rule.passed() && self.vacuum_agreement.passed()
    }
}

pub fn diagonal_branching_check(
    coset: &DiagonalCoset,
    cutoff: u32,
) -> Result<BranchingCheck, BranchingError> {
    let spec = *coset.spec();
    let mut check = BranchingCheck {
        exp_agreement: CheckReport::default(),
        sum_rule: CheckReport::default(),
        vacuum_agreement: CheckReport::default(),
        functions: Vec::new(),
    };
    let targets: BTreeMap<Weight, GradedCharacter> = weights_of(spec.diagonal())
        .into_iter()
        .map(|w| graded_character(&w, cutoff).map(|c| (w, c)))
        .collect::<Result<_, _>>()?;
    for p in weights_of(spec.prime()) {
        for q in weights_of(spec.double_prime()) {
            let source = tensor_tables(
                graded_character(&p, cutoff)?.table(),
                graded_character(&q, cutoff)?.table(),
            );
            let restricted = restrict_character(&source, &diagonal_projection(spec.rank()))?;
            let peeled = peel_branching(&restricted, spec.diagonal(), cutoff)?;

            let mut rebuilt = GradedTable::new(restricted.dim(), cutoff);
            for (l, coefficients) in &peeled {
                for (g, &c) in coefficients.iter().enumerate() {
                    for h in g..=cutoff as usize {
                        for (w, &m) in targets[l].table().slice((h - g) as u32) {
                            rebuilt.add(w.clone(), h as u32, c * m);
                        }
                    }
                }
            }
            check
                .sum_rule
                .record(rebuilt == restricted, || (p.clone(), q.clone()));

            for (l, coefficients) in peeled {
                let sector = CosetSector {
                    prime: p.clone(),
                    double_prime: q.clone(),
                    diagonal: l.clone(),
                };
                let b = BranchingFunction::new(vec![p.clone(), q.clone()], l, coefficients);
                let nonzero = !b.is_zero();
                check
                    .exp_agreement
                    .record(nonzero == sector.satisfies_selection_rule(), || {
                        sector.clone()
                    });
                if nonzero {
                    let via_peel = vacuum_membership(&b)?;
                    check
                        .vacuum_agreement
                        .record(via_peel == coset.in_vacuum_orbit(&sector), || {
                            sector.clone()
                        });
                }
                check.functions.push(b);
            }
        }
    }
    Ok(check)
}
