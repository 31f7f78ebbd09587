//! The diagonal coset su(N) ⊂ su(N)_{m'} × su(N)_{m''}.
//!
//! Coset sectors are triples `(Λ', Λ''; Λ)` with `Λ' + Λ'' - Λ` in the root
//! lattice. The diagonal Z_N simple-current action identifies sectors; when
//! it is free, the orbits form a fusion ring with structure constants
//! `C_{[i,α][j,β]}^{[k,δ]} = Σ_σ N_ij^{σ(k)} N_αβ^{σ(δ)}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::modular::{asymptotic_dimension, quantum_dimension_of, s_matrix_of, SMatrix};
use crate::report::CheckReport;
use crate::ring::{FusionRing, RingError};
use crate::weights::{
    color, in_root_lattice, sigma_apply, weights_of, Factor, Weight, WeightDelta, WeightError,
};
use crate::wzw::{verlinde_tensor, FusionError, WzwRing};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CosetError {
    #[error("Z_N action on exp is not free; fixed sectors: {}", list_sectors(.0))]
    NotFaithful(Vec<CosetSector>),
    #[error("sector {0} violates the selection rule")]
    NotInExp(CosetSector),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn list_sectors(s: &[CosetSector]) -> alloc::string::String {
    use core::fmt::Write;
    let mut out = alloc::string::String::new();
    for (i, x) in s.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{x}");
    }
    out
}

/// su(N) embedded diagonally in su(N)_{m'} × su(N)_{m''}.
///
/// This inclusion is never conformal for `m', m'' >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CosetSpec {
    n: u32,
    m_prime: u32,
    m_double_prime: u32,
}

impl CosetSpec {
    pub fn new(n: u32, m_prime: u32, m_double_prime: u32) -> Result<Self, WeightError> {
        Factor::new(n, m_prime)?;
        Factor::new(n, m_double_prime)?;
        Ok(Self {
            n,
            m_prime,
            m_double_prime,
        })
    }

    /// `W_N` algebra with critical parameters: su(N)_{m+1} ⊂ su(N)_m × su(N)_1.
    pub fn w_algebra(n: u32, m: u32) -> Result<Self, WeightError> {
        Self::new(n, m, 1)
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn prime(&self) -> Factor {
        Factor::new(self.n, self.m_prime).expect("validated")
    }

    pub fn double_prime(&self) -> Factor {
        Factor::new(self.n, self.m_double_prime).expect("validated")
    }

    /// The subalgebra at level `m' + m''`.
    pub fn diagonal(&self) -> Factor {
        Factor::new(self.n, self.m_prime + self.m_double_prime).expect("validated")
    }
}

impl fmt::Display for CosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "su({n})_{l} ⊂ su({n})_{a} × su({n})_{b}",
            n = self.n,
            l = self.m_prime + self.m_double_prime,
            a = self.m_prime,
            b = self.m_double_prime
        )
    }
}

/// A label `(Λ', Λ''; Λ)` of the diagonal coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetSector {
    pub prime: Weight,
    pub double_prime: Weight,
    pub diagonal: Weight,
}

impl CosetSector {
    pub fn new(
        spec: &CosetSpec,
        prime: &[u32],
        double_prime: &[u32],
        diagonal: &[u32],
    ) -> Result<Self, WeightError> {
        Ok(Self {
            prime: spec.prime().weight(prime)?,
            double_prime: spec.double_prime().weight(double_prime)?,
            diagonal: spec.diagonal().weight(diagonal)?,
        })
    }

    pub fn vacuum(spec: &CosetSpec) -> Self {
        Self {
            prime: spec.prime().vacuum(),
            double_prime: spec.double_prime().vacuum(),
            diagonal: spec.diagonal().vacuum(),
        }
    }

    /// Diagonal simple-current action `σ^p` on all three labels.
    pub fn sigma(&self, power: i64) -> Self {
        Self {
            prime: sigma_apply(power, &self.prime),
            double_prime: sigma_apply(power, &self.double_prime),
            diagonal: sigma_apply(power, &self.diagonal),
        }
    }

    /// Whether `Λ' + Λ'' - Λ` lies in the root lattice.
    pub fn satisfies_selection_rule(&self) -> bool {
        let d = WeightDelta::sum_minus(&self.prime, &self.double_prime, &self.diagonal);
        in_root_lattice(&d, self.prime.factor().rank())
    }

    pub fn is_vacuum(&self) -> bool {
        self.prime.is_vacuum() && self.double_prime.is_vacuum() && self.diagonal.is_vacuum()
    }
}

impl fmt::Display for CosetSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; {})",
            self.prime, self.double_prime, self.diagonal
        )
    }
}

/// A Z_N orbit `[i, α]` in exp.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorOrbit {
    representative: CosetSector,
    members: Vec<CosetSector>,
    stabilizer_order: u32,
}

impl SectorOrbit {
    /// The smallest member.
    pub fn representative(&self) -> &CosetSector {
        &self.representative
    }

    /// Members sorted, representative first.
    pub fn members(&self) -> &[CosetSector] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn stabilizer_order(&self) -> u32 {
        self.stabilizer_order
    }

    pub fn contains(&self, s: &CosetSector) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

impl fmt::Display for SectorOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

/// Orbits of exp under the diagonal Z_N, with the sectors that have a
/// nontrivial stabilizer.
#[derive(Debug, Clone, PartialEq)]
pub struct Identification {
    pub orbits: Vec<SectorOrbit>,
    pub faithful: bool,
    pub fixed_points: Vec<CosetSector>,
}

pub type CosetRing = FusionRing<SectorOrbit>;

/// Everything needed to compute in one diagonal coset: the S-matrices and
/// fusion rings of the three levels.
#[derive(Debug, Clone)]
pub struct DiagonalCoset {
    spec: CosetSpec,
    s_prime: SMatrix,
    s_double_prime: SMatrix,
    s_diagonal: SMatrix,
    ring_prime: WzwRing,
    ring_double_prime: WzwRing,
    ring_diagonal: WzwRing,
}

impl DiagonalCoset {
    pub fn new(spec: CosetSpec) -> Result<Self, CosetError> {
        let s_prime = s_matrix_of(spec.prime());
        let s_double_prime = s_matrix_of(spec.double_prime());
        let s_diagonal = s_matrix_of(spec.diagonal());
        let ring_prime = verlinde_tensor(&s_prime)?;
        let ring_double_prime = verlinde_tensor(&s_double_prime)?;
        let ring_diagonal = verlinde_tensor(&s_diagonal)?;
        Ok(Self {
            spec,
            s_prime,
            s_double_prime,
            s_diagonal,
            ring_prime,
            ring_double_prime,
            ring_diagonal,
        })
    }

    pub fn spec(&self) -> &CosetSpec {
        &self.spec
    }

    pub fn rings(&self) -> (&WzwRing, &WzwRing, &WzwRing) {
        (
            &self.ring_prime,
            &self.ring_double_prime,
            &self.ring_diagonal,
        )
    }

    /// All sectors passing the selection rule, sorted (vacuum first).
    pub fn exp_set(&self) -> Vec<CosetSector> {
        exp_set(&self.spec)
    }

    /// Whether every σ maps exp into itself.
    pub fn sigma_preserves_exp(&self) -> bool {
        let n = self.spec.n as i64;
        self.exp_set()
            .iter()
            .all(|s| (1..n).all(|p| s.sigma(p).satisfies_selection_rule()))
    }

    pub fn identification_orbits(&self) -> Identification {
        let n = self.spec.n;
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        let mut fixed_points = Vec::new();
        for s in self.exp_set() {
            if seen.contains(&s) {
                continue;
            }
            let mut members: Vec<CosetSector> = (0..n as i64).map(|p| s.sigma(p)).collect();
            let fixed = (1..n as i64).any(|p| s.sigma(p) == s);
            members.sort();
            members.dedup();
            let stabilizer_order = n / members.len() as u32;
            if fixed {
                fixed_points.extend(members.iter().cloned());
            }
            seen.extend(members.iter().cloned());
            orbits.push(SectorOrbit {
                representative: members[0].clone(),
                members,
                stabilizer_order,
            });
        }
        orbits.sort();
        fixed_points.sort();
        Identification {
            faithful: fixed_points.is_empty(),
            orbits,
            fixed_points,
        }
    }

    fn index_g(&self, s: &CosetSector) -> (usize, usize, usize) {
        (
            self.ring_prime.index_of(&s.prime).expect("level m' weight"),
            self.ring_double_prime
                .index_of(&s.double_prime)
                .expect("level m'' weight"),
            self.ring_diagonal
                .index_of(&s.diagonal)
                .expect("level m'+m'' weight"),
        )
    }

    /// `N_ij^k N_αβ^δ` for sectors `a = (i, α)`, `b = (j, β)`, `c = (k, δ)`.
    fn coupling(&self, a: &CosetSector, b: &CosetSector, c: &CosetSector) -> u32 {
        let (a1, a2, a3) = self.index_g(a);
        let (b1, b2, b3) = self.index_g(b);
        let (c1, c2, c3) = self.index_g(c);
        self.ring_prime.coefficient(a1, b1, c1)
            * self.ring_double_prime.coefficient(a2, b2, c2)
            * self.ring_diagonal.coefficient(a3, b3, c3)
    }

    /// `C_{ab}^c = Σ_σ N_ij^{σ(k)} N_αβ^{σ(δ)}` on given orbit members.
    fn structure_constant(&self, a: &CosetSector, b: &CosetSector, c: &CosetSector) -> u32 {
        (0..self.spec.n as i64)
            .map(|p| self.coupling(a, b, &c.sigma(p)))
            .sum()
    }

    /// The coset fusion ring on Z_N orbits. Refuses when the action has
    /// fixed points, since the orbit sectors are then reducible.
    pub fn coset_ring(&self) -> Result<CosetRing, CosetError> {
        let ident = self.identification_orbits();
        if !ident.faithful {
            return Err(CosetError::NotFaithful(ident.fixed_points));
        }
        let orbits = ident.orbits;
        let reps: Vec<&CosetSector> = orbits.iter().map(|o| &o.representative).collect();
        let ring = FusionRing::from_fn(orbits.clone(), |a, b| {
            (0..reps.len())
                .map(|c| (c, self.structure_constant(reps[a], reps[b], reps[c])))
                .collect()
        })?;
        Ok(ring)
    }

    /// Recomputes every structure constant from every choice of orbit
    /// members and compares with the ring.
    pub fn representative_independence_check(
        &self,
        ring: &CosetRing,
    ) -> CheckReport<(usize, usize, usize)> {
        let mut report = CheckReport::default();
        let orbits = ring.basis();
        for a in 0..orbits.len() {
            for b in 0..orbits.len() {
                for c in 0..orbits.len() {
                    let expected = ring.coefficient(a, b, c);
                    let ok = orbits[a].members.iter().all(|ma| {
                        orbits[b].members.iter().all(|mb| {
                            orbits[c]
                                .members
                                .iter()
                                .all(|mc| self.structure_constant(ma, mb, mc) == expected)
                        })
                    });
                    report.record(ok, || (a, b, c));
                }
            }
        }
        report
    }

    /// If `N_ij^k N_αβ^δ != 0` for sectors `(i,α), (j,β)` in exp then `(k,δ)`
    /// is in exp.
    pub fn selection_rule_closure_check(
        &self,
    ) -> CheckReport<(CosetSector, CosetSector, CosetSector)> {
        let mut report = CheckReport::default();
        let exp = self.exp_set();
        for a in &exp {
            let (a1, a2, a3) = self.index_g(a);
            for b in &exp {
                let (b1, b2, b3) = self.index_g(b);
                for &(k1, _) in self.ring_prime.product(a1, b1) {
                    for &(k2, _) in self.ring_double_prime.product(a2, b2) {
                        for &(k3, _) in self.ring_diagonal.product(a3, b3) {
                            let c = CosetSector {
                                prime: self.ring_prime.label(k1).clone(),
                                double_prime: self.ring_double_prime.label(k2).clone(),
                                diagonal: self.ring_diagonal.label(k3).clone(),
                            };
                            let ok = c.satisfies_selection_rule();
                            report.record(ok, || (a.clone(), b.clone(), c));
                        }
                    }
                }
            }
        }
        report
    }

    /// `d_{(i,α)} = d_{Λ'} d_{Λ''} d_Λ`.
    pub fn statistical_dimension(&self, s: &CosetSector) -> Result<f64, CosetError> {
        coset_statistical_dimension(&self.spec, s)
    }

    /// `b(Λ', Λ''; Λ) = N a(Λ') a(Λ'') a(Λ)` from the S-matrix vacuum rows.
    pub fn branching_constant(&self, s: &CosetSector) -> f64 {
        let a =
            |sm: &SMatrix, w: &Weight| asymptotic_dimension(sm, w).expect("weight of this level");
        self.spec.n as f64
            * a(&self.s_prime, &s.prime)
            * a(&self.s_double_prime, &s.double_prime)
            * a(&self.s_diagonal, &s.diagonal)
    }

    /// `|b(i,α)/b(0,0) - d_i d_α|`.
    pub fn kw_identity_residual(&self, s: &CosetSector) -> f64 {
        let ratio =
            self.branching_constant(s) / self.branching_constant(&CosetSector::vacuum(&self.spec));
        let di = quantum_dimension_of(&s.prime) * quantum_dimension_of(&s.double_prime);
        let da = quantum_dimension_of(&s.diagonal);
        libm::fabs(ratio - di * da)
    }

    /// `Σ_{Λ : color(Λ) = c} d_Λ²` at level `m' + m''`, for each class `c`.
    pub fn congruence_class_sums(&self) -> Vec<f64> {
        let mut sums = alloc::vec![0.0; self.spec.n as usize];
        for w in weights_of(self.spec.diagonal()) {
            let d = quantum_dimension_of(&w);
            sums[color(&w) as usize] += d * d;
        }
        sums
    }

    /// `d(G/H) = sqrt(Σ_{α ∈ exp_0} d_α²)`.
    pub fn dgh(&self) -> f64 {
        libm::sqrt(self.congruence_class_sums()[0])
    }

    /// `d_i d(G/H)² = Σ_{α : (i,α) ∈ exp} d_{(i,α)} d_α` for every `i`.
    pub fn index_formula_check(&self, tolerance: f64) -> CheckReport<(Weight, Weight)> {
        let mut report = CheckReport::default();
        let dgh2 = self.congruence_class_sums()[0];
        let diag = weights_of(self.spec.diagonal());
        for p in weights_of(self.spec.prime()) {
            for q in weights_of(self.spec.double_prime()) {
                let di = quantum_dimension_of(&p) * quantum_dimension_of(&q);
                let mut rhs = 0.0;
                for l in &diag {
                    let s = CosetSector {
                        prime: p.clone(),
                        double_prime: q.clone(),
                        diagonal: l.clone(),
                    };
                    if let Ok(d) = self.statistical_dimension(&s) {
                        rhs += d * quantum_dimension_of(l);
                    }
                }
                let residual = libm::fabs(di * dgh2 - rhs);
                report.residual(residual, tolerance, || (p.clone(), q.clone()));
            }
        }
        report
    }

    /// Dimensions of the orbit basis of `ring`, from representatives.
    pub fn orbit_dimensions(&self, ring: &CosetRing) -> Vec<f64> {
        ring.basis()
            .iter()
            .map(|o| {
                self.statistical_dimension(&o.representative)
                    .expect("orbits lie in exp")
            })
            .collect()
    }

    /// Whether `s` is `σ(0, 0)` for some σ.
    pub fn in_vacuum_orbit(&self, s: &CosetSector) -> bool {
        let vac = CosetSector::vacuum(&self.spec);
        (0..self.spec.n as i64).any(|p| vac.sigma(p) == *s)
    }
}

/// All sectors passing the selection rule, sorted (vacuum first).
pub fn exp_set(spec: &CosetSpec) -> Vec<CosetSector> {
    let mut out = Vec::new();
    for p in weights_of(spec.prime()) {
        for q in weights_of(spec.double_prime()) {
            for l in weights_of(spec.diagonal()) {
                let s = CosetSector {
                    prime: p.clone(),
                    double_prime: q.clone(),
                    diagonal: l,
                };
                if s.satisfies_selection_rule() {
                    out.push(s);
                }
            }
        }
    }
    out
}

pub fn identification_orbits(spec: &CosetSpec) -> Result<Identification, CosetError> {
    Ok(DiagonalCoset::new(*spec)?.identification_orbits())
}

pub fn coset_ring(spec: &CosetSpec) -> Result<CosetRing, CosetError> {
    DiagonalCoset::new(*spec)?.coset_ring()
}

pub fn coset_statistical_dimension(spec: &CosetSpec, s: &CosetSector) -> Result<f64, CosetError> {
    let belongs = s.prime.factor() == spec.prime()
        && s.double_prime.factor() == spec.double_prime()
        && s.diagonal.factor() == spec.diagonal();
    if !belongs || !s.satisfies_selection_rule() {
        return Err(CosetError::NotInExp(s.clone()));
    }
    Ok(quantum_dimension_of(&s.prime)
        * quantum_dimension_of(&s.double_prime)
        * quantum_dimension_of(&s.diagonal))
}

pub fn kw_identity_check(spec: &CosetSpec, s: &CosetSector) -> Result<f64, CosetError> {
    Ok(DiagonalCoset::new(*spec)?.kw_identity_residual(s))
}

pub fn dgh(spec: &CosetSpec) -> f64 {
    let sum: f64 = weights_of(spec.diagonal())
        .iter()
        .filter(|w| color(w) == 0)
        .map(|w| {
            let d = quantum_dimension_of(w);
            d * d
        })
        .sum();
    libm::sqrt(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sector(spec: &CosetSpec, a: u32, b: u32, c: u32) -> CosetSector {
        CosetSector::new(spec, &[a], &[b], &[c]).unwrap()
    }

    fn triple(s: &CosetSector) -> (u32, u32, u32) {
        (
            s.prime.labels()[0],
            s.double_prime.labels()[0],
            s.diagonal.labels()[0],
        )
    }

    #[test]
    fn ising_exp_set() {
        let spec = CosetSpec::new(2, 1, 1).unwrap();
        let got: Vec<_> = exp_set(&spec).iter().map(triple).collect();
        assert_eq!(
            got,
            vec![
                (0, 0, 0),
                (0, 0, 2),
                (0, 1, 1),
                (1, 0, 1),
                (1, 1, 0),
                (1, 1, 2)
            ]
        );
    }

    #[test]
    fn exp_sizes() {
        assert_eq!(exp_set(&CosetSpec::new(2, 2, 1).unwrap()).len(), 12);
        // 9 pairs (Λ', Λ'') times the 2 level-2 weights of the matching color
        assert_eq!(exp_set(&CosetSpec::new(3, 1, 1).unwrap()).len(), 18);
        for (n, a, b) in [(2, 1, 1), (2, 3, 2), (3, 2, 1), (4, 1, 1)] {
            let spec = CosetSpec::new(n, a, b).unwrap();
            let exp = exp_set(&spec);
            assert!(exp.contains(&CosetSector::vacuum(&spec)));
            assert!(DiagonalCoset::new(spec).unwrap().sigma_preserves_exp());
        }
    }

    #[test]
    fn ising_orbits() {
        let spec = CosetSpec::new(2, 1, 1).unwrap();
        let id = identification_orbits(&spec).unwrap();
        assert!(id.faithful);
        let got: Vec<Vec<_>> = id
            .orbits
            .iter()
            .map(|o| o.members().iter().map(triple).collect())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![(0, 0, 0), (1, 1, 2)],
                vec![(0, 0, 2), (1, 1, 0)],
                vec![(0, 1, 1), (1, 0, 1)],
            ]
        );
    }

    #[test]
    fn fixed_point_refusal() {
        let spec = CosetSpec::new(2, 2, 2).unwrap();
        let id = identification_orbits(&spec).unwrap();
        assert!(!id.faithful);
        let fixed = sector(&spec, 1, 1, 2);
        assert!(id.fixed_points.contains(&fixed));
        assert_eq!(fixed.sigma(1), fixed);
        match coset_ring(&spec) {
            Err(CosetError::NotFaithful(f)) => assert!(f.contains(&fixed)),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn orbit_sizes_divide_n() {
        for (n, a, b) in [(2, 2, 2), (3, 1, 1), (3, 3, 3), (4, 2, 2)] {
            let id = identification_orbits(&CosetSpec::new(n, a, b).unwrap()).unwrap();
            for o in &id.orbits {
                assert_eq!(o.size() as u32 * o.stabilizer_order(), n);
            }
        }
    }

    #[test]
    fn ising_ring() {
        let spec = CosetSpec::new(2, 1, 1).unwrap();
        let ring = coset_ring(&spec).unwrap();
        assert_eq!(ring.len(), 3);
        let (one, eps, sig) = (0, 1, 2);
        assert_eq!(ring.product(sig, sig), &[(one, 1), (eps, 1)]);
        assert_eq!(ring.product(eps, eps), &[(one, 1)]);
        assert_eq!(ring.product(eps, sig), &[(sig, 1)]);
        assert!(ring.check_axioms().passed());
        let s = crate::math::sqrt(2.0);
        let d = coset_statistical_dimension(&spec, &sector(&spec, 0, 1, 1)).unwrap();
        assert!((d - s).abs() < 1e-9);
    }

    #[test]
    fn statistical_dimensions() {
        let spec = CosetSpec::new(2, 1, 1).unwrap();
        let vac = CosetSector::vacuum(&spec);
        assert!((coset_statistical_dimension(&spec, &vac).unwrap() - 1.0).abs() < 1e-15);
        let bad = sector(&spec, 0, 0, 1);
        assert_eq!(
            coset_statistical_dimension(&spec, &bad),
            Err(CosetError::NotInExp(bad))
        );
        let coset = DiagonalCoset::new(spec).unwrap();
        for o in coset.identification_orbits().orbits {
            let d0 = coset.statistical_dimension(&o.members()[0]).unwrap();
            for m in o.members() {
                assert!((coset.statistical_dimension(m).unwrap() - d0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kw_identity() {
        let spec = CosetSpec::new(2, 1, 1).unwrap();
        assert_eq!(
            kw_identity_check(&spec, &CosetSector::vacuum(&spec)).unwrap(),
            0.0
        );
        assert!(kw_identity_check(&spec, &sector(&spec, 0, 1, 1)).unwrap() < 1e-9);
        let w3 = DiagonalCoset::new(CosetSpec::new(3, 1, 1).unwrap()).unwrap();
        for s in w3.exp_set() {
            assert!(w3.kw_identity_residual(&s) < 1e-9);
        }
    }

    #[test]
    fn dgh_values() {
        let s2 = crate::math::sqrt(2.0);
        assert!((dgh(&CosetSpec::new(2, 1, 1).unwrap()) - s2).abs() < 1e-9);
        // su(2)_3: exp_0 = {0, 2} with d_2 = sin(3π/5)/sin(π/5) = golden ratio
        let phi = (crate::math::sqrt(5.0) + 1.0) / 2.0;
        let g = dgh(&CosetSpec::new(2, 2, 1).unwrap());
        assert!((g * g - (1.0 + phi * phi)).abs() < 1e-9);
        for (n, a, b) in [(2, 2, 1), (3, 1, 1), (3, 2, 1), (4, 1, 2)] {
            let c = DiagonalCoset::new(CosetSpec::new(n, a, b).unwrap()).unwrap();
            let sums = c.congruence_class_sums();
            assert!(sums.iter().all(|s| (s - sums[0]).abs() < 1e-6));
            assert!((c.dgh() - dgh(c.spec())).abs() < 1e-12);
            assert!(c.index_formula_check(1e-6).passed());
        }
    }

    #[test]
    fn w3_ring() {
        let c = DiagonalCoset::new(CosetSpec::w_algebra(3, 1).unwrap()).unwrap();
        let ring = c.coset_ring().unwrap();
        assert_eq!(ring.len(), 6);
        assert!(ring.check_axioms().passed());
        assert!(c.representative_independence_check(&ring).passed());
        assert!(c.selection_rule_closure_check().passed());
        let dims = c.orbit_dimensions(&ring);
        assert!(ring.dimension_residual(&dims) < 1e-6);
    }
}
