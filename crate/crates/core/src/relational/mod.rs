//! Relations between finite sets and between complexes: Dowker complexes, the induced
//! Galois connection, relational join and product complexes, covers and nerves, and the
//! long exact sequence tying the product, the two factors and the join together.

mod complex_relation;
mod cover;
mod les;
mod relation;

pub use complex_relation::{
    induced_complex_relation, join_prefixes, order_complex_relation, relational_join, relational_join_poset,
    relational_product, ComplexRelation, ProductCWComplex,
};
pub use cover::{cover_nerve, good_cover_check, is_good_cover, Cover};
pub use les::{functorial_square_check, relational_chain_maps, verify_les_relational, SquareVerdict};
pub use relation::{dowker_complex, dowker_galois, Relation, Side};

use crate::algebra::{AlgebraError, CoefficientError};
use crate::simplicial::SimplicialError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationalError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation is not downward closed: {left} ~ {right} holds but {missing} does not")]
    NotDownwardClosed { left: String, right: String, missing: String },
    #[error("unknown simplex {0}")]
    UnknownSimplex(String),
    #[error("cover element {0:?} is not a subcomplex of the base")]
    NotSubcomplex(String),
    #[error("simplex {0} is not covered")]
    NotCovered(String),
    #[error("maps do not carry the relation: {left} ~ {right} is not sent to a related pair")]
    NotCarried { left: String, right: String },
    #[error("empty Dowker complex")]
    EmptyComplex,
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
}
