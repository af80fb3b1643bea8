//! Exact linear algebra: integer matrices, Smith normal form, chain complexes, homology,
//! double complexes and their spectral sequences, and exactness checks.

mod chain;
mod double;
mod exact;
mod field;
mod linalg;
mod matrix;
mod snf;

pub use chain::{homology, induced_map, ChainComplex, ChainMap, DegreeHomology, HomologyBasis, HomologyResult};
pub use double::{ss_converges, ss_page, ConvergenceReport, DegreeConvergence, DoubleComplex, Orientation, SSPage};
pub use exact::{verify_chain_les, verify_exact_sequence, ExactnessReport, LesDegree};
pub use field::{is_prime, CoefficientError, Coefficients, Field, PrimeField, Rationals};
pub use linalg::{independent_columns, kernel, rank, rref, sparse_rank, CoordinateSolver, FMatrix};
pub use matrix::IntMatrix;
pub use snf::{integer_rank, invariant_factors, smith_normal_form, SmithForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("boundary composite is nonzero at degree {degree}")]
    BoundarySquare { degree: i64 },
    #[error("chain map does not commute with boundaries in degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("double complex differentials do not anticommute at ({p}, {q})")]
    Anticommute { p: i64, q: i64 },
    #[error("negative page index {0}")]
    NegativePage(i64),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
}
