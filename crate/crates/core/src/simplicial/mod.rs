//! Simplicial complexes, finite posets, order complexes and fiber diagnostics.

mod complex;
mod poset;

pub use complex::{simplex_name, simplicial_chain_map, SimplexId, SimplicialComplex};
pub use poset::{
    barycentric_subdivision, contractibility_certificate, face_poset, fiber, galois_check, order_complex,
    ContractibilityCertificate, FiberSide, GaloisVerdict, Poset, PosetMap,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("order is not reflexive at {0:?}")]
    NotReflexive(String),
    #[error("order is not antisymmetric: {0:?} and {1:?} are below each other")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: {0:?} <= {1:?} <= {2:?}")]
    NotTransitive(String, String, String),
    #[error("map is not order preserving: {0:?} <= {1:?} is not kept")]
    NotOrderPreserving(String, String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
