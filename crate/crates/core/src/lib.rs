//! Level-one perfect crystals for affine Lie algebras: construction from
//! Cartan data, perfectness checks, energy functions, the crystal algebra
//! multiplication and path realizations of the basic representations.

pub mod affine;
pub mod algebra;
pub mod crystal;
pub mod energy;
pub mod error;
pub mod export;
pub mod oracle;
pub mod path;
pub mod perfect;
pub mod roots;
pub mod tensor;

pub use affine::{build_datum, level, level_one_dominants, AffineDatum, AffineType, AffineWeight, Family};
pub use crystal::{build_crystal, crystal_for, ArrowTable, CrystalElement, CrystalGraph};
pub use error::{CrystalError, Result};
pub use roots::{connect_support, dynkin_path, finite_roots, lambda_weights, leq, LambdaSet, RootVector};
pub use perfect::{verify_perfect, verify_perfect_graph, PerfectReport};
pub use tensor::{components, maximal_vectors, TensorSquare};
pub use algebra::{build_psi, multiply, psi_by_traversal, valid_psi_indices, verify_psi, Psi};
pub use energy::{
    classify_component, energy_by_classification, energy_for, energy_propagate, fixture_energy_check, in_two_theta,
    maximal_of, maximal_vector_energies, three_box_crystal, two_theta_mismatch, Classifier, ComponentLabel, EnergyTable,
    TwoThetaMismatch,
};
pub use path::{character, character_entries, CharacterEntry, GroundState, Multiplicities, Path, PathModel, Traversal};
pub use oracle::{beta_of, compare, oracle_character, oracle_multiplicity, partition_series};
