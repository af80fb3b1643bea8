//! Finite categories, their nerves and homology, functors, comma categories, profunctors
//! with their graphs and cographs, and the profunctor double complex.

mod double;
mod finite;
mod nerve;
mod profunctor;

pub use double::{
    fiber_coefficient_homology, profunctor_chain_maps, profunctor_double_complex, verify_les_profunctor,
    CoefficientSide,
};
pub use finite::{
    comma_category, loop_free_check, poset_as_category, CommaSide, FiniteCategory, FunctorData, LoopFreeVerdict,
    Morphism,
};
pub use nerve::{
    category_homology, functor_chain_map, nerve_chain_complex, nerve_with_strings, CategoryHomology, NerveStrings,
};
pub use profunctor::{
    adjunction_from_galois, cograph, discrete_fibration_check, fiber_category, graph, posetal_profunctor,
    profunctor_from_adjunction, relation_profunctor, two_sided_discrete_fibration_check, AdjunctionData, Anchor,
    FibrationVerdict, Heteromorphism, LiftDirection, ProfunctorData,
};

use crate::algebra::AlgebraError;
use crate::relational::RelationalError;
use crate::simplicial::SimplicialError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("{0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("composite of {0} and {1} has the wrong endpoints")]
    BadComposite(String, String),
    #[error("composite of {0} and {1} is missing")]
    MissingComposite(String, String),
    #[error("identity law fails at {0}")]
    IdentityLaw(String),
    #[error("composition of {0}, {1}, {2} is not associative")]
    Associativity(String, String, String),
    #[error("functor law fails: {0}")]
    FunctorLaw(String),
    #[error("action law fails: {0}")]
    ActionLaw(String),
    #[error("hom-set correspondence is not bijective at ({0}, {1})")]
    NotBijective(String, String),
    #[error("hom-set correspondence is not natural in {0} and {1}")]
    NotNatural(String, String),
    #[error("maps do not form a Galois connection: {0}")]
    NotGalois(String),
    #[error("category is not loop-free: {0:?}")]
    NotLoopFree(LoopFreeVerdict),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Relational(#[from] RelationalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
