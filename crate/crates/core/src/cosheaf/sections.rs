use super::CosheafError;
use crate::relational::{ComplexRelation, Side};
use crate::simplicial::{SimplexId, SimplicialComplex};
use std::collections::BTreeSet;

/// Cosheaf on a base complex whose local sections are subcomplexes of one ambient complex
/// and whose extension maps are inclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularCosheaf {
    base: SimplicialComplex,
    ambient: SimplicialComplex,
    sections: Vec<SimplicialComplex>,
}

impl CellularCosheaf {
    /// `sections` is indexed like [`SimplicialComplex::ids`] on the base.
    pub fn new(
        base: SimplicialComplex,
        ambient: SimplicialComplex,
        sections: Vec<SimplicialComplex>,
    ) -> Result<Self, CosheafError> {
        if sections.len() != base.num_simplices() {
            return Err(CosheafError::Shape(format!(
                "{} sections for {} simplices",
                sections.len(),
                base.num_simplices()
            )));
        }
        for id in base.ids() {
            let sec = &sections[base.flat_index(id)];
            if !sec.is_subcomplex_of(&ambient) {
                return Err(CosheafError::NotSubcomplex(base.name(id)));
            }
            for (face, _) in base.boundary_faces(id) {
                if !sec.is_subcomplex_of(&sections[base.flat_index(face)]) {
                    return Err(CosheafError::NotContravariant { face: base.name(face), coface: base.name(id) });
                }
            }
        }
        Ok(CellularCosheaf { base, ambient, sections })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn section(&self, id: SimplexId) -> &SimplicialComplex {
        &self.sections[self.base.flat_index(id)]
    }

    pub fn sections(&self) -> &[SimplicialComplex] {
        &self.sections
    }
}

/// Cosheaf on one side of a complex relation: a simplex goes to the subcomplex of the other
/// side made of everything related to it.
pub fn relation_cosheaf(cr: &ComplexRelation, side: Side) -> CellularCosheaf {
    let base = cr.complex(side).clone();
    let other = match side {
        Side::Source => Side::Target,
        Side::Target => Side::Source,
    };
    let ambient = cr.complex(other).clone();
    let sections = base
        .ids()
        .map(|id| {
            let ids = cr.partners(side, id);
            SimplicialComplex::from_closed_labels(ids.into_iter().map(|t| ambient.owned_labels(t)))
        })
        .collect();
    CellularCosheaf { base, ambient, sections }
}

/// Union of all local sections inside the ambient complex.
pub fn global_cosection(c: &CellularCosheaf) -> SimplicialComplex {
    let all: BTreeSet<Vec<String>> = c.sections.iter().flat_map(|s| s.label_set()).collect();
    SimplicialComplex::from_closed_labels(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relational::tests::running_example;
    use crate::relational::{dowker_complex, induced_complex_relation, Relation};

    #[test]
    fn running_example_sections() {
        let cr = induced_complex_relation(&running_example());
        let fa = relation_cosheaf(&cr, Side::Source);
        let b = fa.base().find(&["b"]).unwrap();
        let sec = fa.section(b);
        assert_eq!(sec.label_set().len(), 3);
        assert!(sec.contains(&["x", "y"]));
        let bcd = fa.base().find(&["b", "c", "d"]).unwrap();
        assert_eq!(fa.section(bcd).label_set(), [vec!["y".to_string()]].into_iter().collect());
    }

    #[test]
    fn global_cosection_is_other_dowker_complex() {
        let r = running_example();
        let fa = relation_cosheaf(&induced_complex_relation(&r), Side::Source);
        assert_eq!(global_cosection(&fa).label_set(), dowker_complex(&r, Side::Target).label_set());
    }

    #[test]
    fn empty_relation_gives_empty_sections() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"]]);
        let m = SimplicialComplex::from_facets([vec!["x"]]);
        let cr = ComplexRelation::new(k, m, Default::default()).unwrap();
        let c = relation_cosheaf(&cr, Side::Source);
        assert!(c.sections().iter().all(|s| s.is_empty()));
        assert!(global_cosection(&c).is_empty());
        let r = Relation::from_matrix(&["a"], &["x"], &[vec![false]]).unwrap();
        assert!(global_cosection(&relation_cosheaf(&induced_complex_relation(&r), Side::Source)).is_empty());
    }

    #[test]
    fn growing_sections_rejected() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"]]);
        let m = SimplicialComplex::from_facets([vec!["x", "y"]]);
        let pt = SimplicialComplex::from_facets([vec!["x"]]);
        // order: a, b, ab; the edge gets a larger section than vertex a
        let err = CellularCosheaf::new(k, m.clone(), vec![pt.clone(), m.clone(), m]).unwrap_err();
        assert_eq!(err, CosheafError::NotContravariant { face: "{a}".into(), coface: "{a,b}".into() });
    }
}
