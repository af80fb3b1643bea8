use super::complex_relation::ComplexRelation;
use super::RelationalError;
use crate::simplicial::{contractibility_certificate, face_poset, ContractibilityCertificate, SimplexId, SimplicialComplex};
use std::collections::{BTreeSet, HashSet};

/// A complex together with named subcomplexes whose union is the whole complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    base: SimplicialComplex,
    elements: Vec<(String, SimplicialComplex)>,
}

impl Cover {
    pub fn new(base: SimplicialComplex, elements: Vec<(String, SimplicialComplex)>) -> Result<Self, RelationalError> {
        let mut names = HashSet::new();
        for (name, u) in &elements {
            if !names.insert(name) {
                return Err(RelationalError::DuplicateLabel(name.clone()));
            }
            if !u.is_subcomplex_of(&base) {
                return Err(RelationalError::NotSubcomplex(name.clone()));
            }
        }
        for id in base.ids() {
            let labels = base.labels(id);
            if !elements.iter().any(|(_, u)| u.contains(&labels)) {
                return Err(RelationalError::NotCovered(base.name(id)));
            }
        }
        Ok(Cover { base, elements })
    }

    /// Cover whose base is the union of the elements.
    pub fn from_elements(elements: Vec<(String, SimplicialComplex)>) -> Result<Self, RelationalError> {
        let mut all: BTreeSet<Vec<String>> = BTreeSet::new();
        for (_, u) in &elements {
            all.extend(u.label_set());
        }
        let base = SimplicialComplex::from_facets(all);
        Cover::new(base, elements)
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn elements(&self) -> &[(String, SimplicialComplex)] {
        &self.elements
    }

    /// Simplices of the base lying in every listed element.
    pub fn intersection(&self, members: &[usize]) -> SimplicialComplex {
        let ids: Vec<SimplexId> = self
            .base
            .ids()
            .filter(|&id| {
                let labels = self.base.labels(id);
                members.iter().all(|&m| self.elements[m].1.contains(&labels))
            })
            .collect();
        self.base.closure_of(ids)
    }

    /// Names of the elements containing a simplex of the base.
    fn containing(&self, id: SimplexId) -> Vec<usize> {
        let labels = self.base.labels(id);
        (0..self.elements.len()).filter(|&i| self.elements[i].1.contains(&labels)).collect()
    }
}

/// Nerve on the element names, and the covering relation `σ ~ τ` iff every element in τ
/// contains σ.
pub fn cover_nerve(c: &Cover) -> (SimplicialComplex, ComplexRelation) {
    let names = |ix: &[usize]| ix.iter().map(|&i| c.elements[i].0.clone()).collect::<Vec<_>>();
    // two subcomplexes meet iff they share a vertex
    let nerve = SimplicialComplex::from_facets(c.base.simplices(0).iter().map(|v| {
        let id = c.base.id_of(v).unwrap();
        names(&c.containing(id))
    }));
    let mut pairs = BTreeSet::new();
    for s in c.base.ids() {
        let holders: BTreeSet<String> = names(&c.containing(s)).into_iter().collect();
        for t in nerve.ids() {
            if nerve.labels(t).iter().all(|n| holders.contains(*n)) {
                pairs.insert((s, t));
            }
        }
    }
    let rel = ComplexRelation::new(c.base.clone(), nerve.clone(), pairs).expect("covering relation is downward closed");
    (nerve, rel)
}

/// Contractibility certificate of every nonempty intersection, keyed by element names.
pub fn good_cover_check(c: &Cover) -> Vec<(Vec<String>, ContractibilityCertificate)> {
    let (nerve, _) = cover_nerve(c);
    nerve
        .ids()
        .map(|t| {
            let members: Vec<usize> = nerve
                .labels(t)
                .iter()
                .map(|n| c.elements.iter().position(|(name, _)| name == n).unwrap())
                .collect();
            let inter = c.intersection(&members);
            (nerve.owned_labels(t), contractibility_certificate(&face_poset(&inter)))
        })
        .collect()
}

pub fn is_good_cover(c: &Cover) -> bool {
    good_cover_check(c).iter().all(|(_, cert)| {
        matches!(cert, ContractibilityCertificate::Cone { .. } | ContractibilityCertificate::AcyclicUndetermined)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, Coefficients};

    fn betti(k: &SimplicialComplex) -> Vec<usize> {
        homology(&k.chain_complex(), Coefficients::Integers).unwrap().betti_numbers()
    }

    fn sc(facets: &[&[&str]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec()))
    }

    #[test]
    fn path_cover_is_good() {
        let k = sc(&[&["a", "b"], &["b", "c"]]);
        let c = Cover::new(k, vec![("U1".into(), sc(&[&["a", "b"]])), ("U2".into(), sc(&[&["b", "c"]]))]).unwrap();
        let (nerve, rel) = cover_nerve(&c);
        assert_eq!(nerve.counts(), vec![2, 1]);
        assert!(good_cover_check(&c).iter().all(|(_, cert)| cert.is_cone()));
        // vertex b lies in both elements, so it is related to the nerve edge
        let b = c.base().find(&["b"]).unwrap();
        let e = nerve.find(&["U1", "U2"]).unwrap();
        assert!(rel.related(b, e));
    }

    #[test]
    fn circle_by_two_arcs_is_not_good() {
        let k = sc(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let c = Cover::new(k.clone(), vec![
            ("U1".into(), sc(&[&["a", "b"], &["b", "c"]])),
            ("U2".into(), sc(&[&["a", "c"]])),
        ])
        .unwrap();
        let (nerve, _) = cover_nerve(&c);
        assert_eq!(betti(&nerve), vec![1]);
        assert_eq!(betti(&k), vec![1, 1]);
        let report = good_cover_check(&c);
        let both = report.iter().find(|(names, _)| names.len() == 2).unwrap();
        assert_eq!(both.1, ContractibilityCertificate::NotContractible { degree: 0 });
        assert!(!is_good_cover(&c));
    }

    #[test]
    fn single_element_cover() {
        let k = sc(&[&["a", "b"]]);
        let c = Cover::new(k.clone(), vec![("U".into(), k)]).unwrap();
        let (nerve, _) = cover_nerve(&c);
        assert_eq!(nerve.counts(), vec![1]);
        let report = good_cover_check(&c);
        assert_eq!(report.len(), 1);
        assert!(report[0].1.is_cone());
    }

    #[test]
    fn uncovered_simplex_rejected() {
        let k = sc(&[&["a", "b"]]);
        let err = Cover::new(k, vec![("U".into(), sc(&[&["a"], &["b"]]))]).unwrap_err();
        assert_eq!(err, RelationalError::NotCovered("{a,b}".into()));
    }
}
