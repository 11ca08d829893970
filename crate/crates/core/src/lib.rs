//! P-groupoids, P-quasigroups and decompositions of complete graphs.
//!
//! A P-groupoid is an idempotent groupoid in which `x·y ∉ {x, y}` for
//! `x ≠ y` and `(x·y)·y = x`. Such tables are in bijection with partitions
//! of the edges of `K_n` into closed trails: `x·y = z` exactly when the edges
//! `{x, y}` and `{y, z}` are consecutive in one trail.
//!
//! Modules:
//! - [`table`], [`properties`], [`subgroupoid`], [`iso`]: tables and predicates
//! - [`constructions`]: the cyclic P-quasigroup `2s − r (mod n)` and affine tables
//! - [`perm`], [`group`]: permutations and small permutation groups
//! - [`decomp`], [`amalgam`]: the graph side of the correspondence
//! - [`search`]: exhaustive model enumeration
//! - [`cli`]: the command-line front end

pub mod amalgam;
pub mod cli;
pub mod constructions;
pub mod decomp;
pub mod error;
pub mod group;
pub mod iso;
pub mod perm;
pub mod properties;
pub mod search;
pub mod subgroupoid;
pub mod table;

pub use amalgam::{amalgamate, AmalgamationMap, ColoredEdge, MultiGraph};
pub use constructions::{
    denes_keedwell, left_translation_order, left_translation_power, medial_affine, AffineSpec,
};
pub use decomp::{
    decomposition_from_groupoid, decomposition_isomorphism, groupoid_from_decomposition,
    is_hamiltonian, Circuit, ColorClass, Decomposition,
};
pub use error::{Error, Result};
pub use group::{
    generate_group, group_automorphisms, is_characteristic, is_dihedral, multiplication_groups,
    right_multiplication_group, GroupAutomorphism, MultiplicationGroups, PermutationGroup,
};
pub use iso::{automorphisms, find_isomorphism, is_isomorphism};
pub use perm::Permutation;
pub use properties::{is_p_groupoid, property_report, Flag, Law, PropertyReport};
pub use search::{
    canonical_form, count_models, search_p_groupoids, ModelCount, SearchConstraints, SearchOutcome,
};
pub use subgroupoid::{enumerate_subgroupoids, subgroupoid_closure};
pub use table::{parse_table, CayleyTable};
