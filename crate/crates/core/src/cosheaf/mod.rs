//! Cellular cosheaves with subcomplex sections, their homology cosheaves and cosheaf
//! homology, global cosections, and the double complex of a complex relation.

mod double;
mod group;
mod sections;

pub use double::relational_double_complex;
pub use group::{cosheaf_homology, homology_cosheaf, GroupCosheaf};
pub use sections::{global_cosection, relation_cosheaf, CellularCosheaf};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosheafError {
    #[error("section over {0} is not a subcomplex of the ambient complex")]
    NotSubcomplex(String),
    #[error("section over {coface} is not contained in the section over its face {face}")]
    NotContravariant { face: String, coface: String },
    #[error("extensions from {coface} to {face} do not compose consistently")]
    NotFunctorial { face: String, coface: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, ss_converges, ss_page, Coefficients, Orientation, Rationals};
    use crate::relational::tests::{full_two_by_two, running_example};
    use crate::relational::{induced_complex_relation, relational_join, relational_product, ComplexRelation, Side};
    use crate::simplicial::SimplicialComplex;

    #[test]
    fn full_square_grid() {
        let dc = relational_double_complex(&induced_complex_relation(&full_two_by_two()), false);
        assert_eq!((dc.rank(0, 0), dc.rank(0, 1), dc.rank(1, 0), dc.rank(1, 1)), (4, 2, 2, 1));
    }

    #[test]
    fn total_complex_is_product_complex() {
        let cr = induced_complex_relation(&running_example());
        let dc = relational_double_complex(&cr, false);
        let tot = homology(&dc.total_complex().unwrap(), Coefficients::Integers).unwrap();
        let prod = homology(&relational_product(&cr).chain_complex(), Coefficients::Integers).unwrap();
        assert_eq!(tot, prod);
        assert_eq!(tot.betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn augmented_total_is_shifted_join() {
        for cr in [
            induced_complex_relation(&running_example()),
            induced_complex_relation(&full_two_by_two()),
            ComplexRelation::new(
                SimplicialComplex::from_facets([vec!["v"]]),
                SimplicialComplex::from_facets([vec!["w"]]),
                Default::default(),
            )
            .unwrap(),
        ] {
            let dc = relational_double_complex(&cr, true);
            let tot = homology(&dc.total_complex().unwrap(), Coefficients::Integers).unwrap();
            let join = homology(&relational_join(&cr).chain_complex(), Coefficients::Integers).unwrap();
            for n in -1..=3 {
                assert_eq!(tot.betti(n), join.betti(n + 1), "degree {n}");
            }
        }
    }

    #[test]
    fn running_example_second_pages() {
        let cr = induced_complex_relation(&running_example());
        let dc = relational_double_complex(&cr, false);
        let cols = ss_page(&Rationals, &dc, 2, Orientation::ColumnsFirst).unwrap();
        assert_eq!(cols.nonzero(), vec![((0, 0), 1), ((1, 0), 1)]);
        let rows = ss_page(&Rationals, &dc, 2, Orientation::RowsFirst).unwrap();
        assert_eq!(rows.nonzero(), vec![((0, 0), 1), ((0, 1), 1)]);
        assert!(ss_converges(&Rationals, &dc).unwrap().converges);
        // the page agrees with the homology of the degree-0 homology cosheaf
        let h = cosheaf_homology(&Rationals, &homology_cosheaf(&Rationals, &relation_cosheaf(&cr, Side::Source), 0));
        assert_eq!(h.betti_numbers(), vec![cols.dim(0, 0), cols.dim(1, 0)]);
    }

    #[test]
    fn empty_relation_grid_is_empty() {
        let k = SimplicialComplex::from_facets([vec!["a"]]);
        let cr = ComplexRelation::new(k.clone(), k, Default::default()).unwrap();
        let dc = relational_double_complex(&cr, false);
        assert_eq!(dc.cells().count(), 0);
    }
}
