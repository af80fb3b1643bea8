//! Exact homological computations for relations between sets, simplicial complexes,
//! covers, cellular cosheaves, finite categories and profunctors.

pub mod algebra;
pub mod simplicial;
pub mod relational;
pub mod cosheaf;
pub mod category;
pub mod random;
