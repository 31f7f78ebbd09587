//! Representation-theoretic data of su(N) WZW models and their cosets:
//! integrable weights, modular S-matrices, Verlinde fusion rings, diagonal and
//! torus coset rings with field identification, and branching functions from
//! truncated affine characters.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod branching;
pub mod characters;
pub mod coset;
mod lattice;
pub mod math;
pub mod maverick;
pub mod modular;
pub mod report;
pub mod ring;
pub mod torus;
pub mod weights;
pub mod wzw;

pub use num_rational::Rational64;

pub use branching::{
    branching_functions, coset_energy_offset, diagonal_branching, diagonal_branching_check,
    kw_numeric_ratio, peel_branching, vacuum_membership, BranchingCheck, BranchingError,
    BranchingFunction,
};
pub use characters::{
    diagonal_projection, finite_character, graded_character, index_four_projection,
    restrict_character, tensor_characters, tensor_tables, weyl_dimension, CharacterError,
    GradedCharacter, GradedTable, WeightSlice, MAX_CUTOFF,
};
pub use coset::{
    coset_ring, coset_statistical_dimension, dgh, exp_set, identification_orbits,
    kw_identity_check, CosetError, CosetRing, CosetSector, CosetSpec, DiagonalCoset,
    Identification, SectorOrbit,
};
pub use maverick::{
    build_from_relations, build_maverick_ring, global_dimension, maverick_branching_check,
    maverick_dims, MaverickBranchingReport, MaverickError, MaverickRing, MaverickSector, Relations,
    SectorEnergy,
};
pub use modular::{
    asymptotic_dimension, product_quantum_dimension, quantum_dimension, quantum_dimension_of,
    s_matrix, s_matrix_of, ModularError, SMatrix,
};
pub use report::CheckReport;
pub use ring::{AxiomFailure, AxiomReport, FusionRing, RingError};
pub use torus::{
    torus_classes, torus_exp, torus_ring, TorusClass, TorusCoset, TorusError, TorusRing,
    TorusSector,
};
pub use weights::{
    color, conformal_weight, conjugate_weight, in_root_lattice, integrable_weights, sigma_apply,
    weights_of, AlgebraSpec, Factor, Weight, WeightDelta, WeightError,
};
pub use wzw::{
    fuse, product_ring, simple_current_check, verlinde_tensor, verlinde_tensor_checked,
    FusionError, WzwRing,
};
