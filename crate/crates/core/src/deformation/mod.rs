//! Generizations, liaison, component counts and explicit families.

pub mod family;
pub mod lattice;
pub mod link;
pub mod moves;
pub mod singularity;

pub use family::{rab_family, rab_numerics, random_buchsbaum, OmegaShape, RabCurve};
pub use lattice::{
    component_count, generization_lattice, lattice_size, ComponentCount, Lattice, LatticeEdge, LatticeNode,
};
pub use link::{link, linkage_spec, linked_numerics, reversed_tuple, LinkageSpec, Linked};
pub use moves::{available_moves, cancel_common, cancel_l4_f1, cancel_l4_f2, Conserved, GenerizationMove, MoveKind};
pub use singularity::{quadric_ideal, singularity_ideal, QuadricIdeal};
