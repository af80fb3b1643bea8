use super::relation::{common_neighbours, dowker_complex, Relation, Side};
use super::RelationalError;
use crate::algebra::{ChainComplex, IntMatrix};
use crate::simplicial::{Poset, SimplexId, SimplicialComplex};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Downward-closed relation between the simplices of two complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRelation {
    source: SimplicialComplex,
    target: SimplicialComplex,
    pairs: BTreeSet<(SimplexId, SimplexId)>,
}

impl ComplexRelation {
    /// Validated constructor: every codimension-one face of a related pair must be related.
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        pairs: BTreeSet<(SimplexId, SimplexId)>,
    ) -> Result<Self, RelationalError> {
        for &(s, t) in &pairs {
            if s.dim >= source.counts().len()
                || s.index >= source.count(s.dim)
                || t.dim >= target.counts().len()
                || t.index >= target.count(t.dim)
            {
                return Err(RelationalError::Shape("simplex id out of range".into()));
            }
        }
        let cr = ComplexRelation { source, target, pairs };
        for &(s, t) in &cr.pairs {
            let lower = cr
                .source
                .boundary_faces(s)
                .into_iter()
                .map(|(f, _)| (f, t))
                .chain(cr.target.boundary_faces(t).into_iter().map(|(f, _)| (s, f)));
            for p in lower {
                if !cr.pairs.contains(&p) {
                    return Err(RelationalError::NotDownwardClosed {
                        left: cr.source.name(s),
                        right: cr.target.name(t),
                        missing: format!("{} ~ {}", cr.source.name(p.0), cr.target.name(p.1)),
                    });
                }
            }
        }
        Ok(cr)
    }

    /// Smallest downward-closed relation containing the given label pairs.
    pub fn generated_by<S: AsRef<str>>(
        source: SimplicialComplex,
        target: SimplicialComplex,
        generators: &[(Vec<S>, Vec<S>)],
    ) -> Result<Self, RelationalError> {
        let mut pairs = BTreeSet::new();
        for (s, t) in generators {
            let si = source.find(s).ok_or_else(|| RelationalError::UnknownSimplex(labels_name(s)))?;
            let ti = target.find(t).ok_or_else(|| RelationalError::UnknownSimplex(labels_name(t)))?;
            for fs in source.faces(si) {
                for ft in target.faces(ti) {
                    pairs.insert((fs, ft));
                }
            }
        }
        Ok(ComplexRelation { source, target, pairs })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn complex(&self, side: Side) -> &SimplicialComplex {
        match side {
            Side::Source => &self.source,
            Side::Target => &self.target,
        }
    }

    pub fn pairs(&self) -> &BTreeSet<(SimplexId, SimplexId)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn related(&self, s: SimplexId, t: SimplexId) -> bool {
        self.pairs.contains(&(s, t))
    }

    /// Simplices on the opposite side related to `id` on `side`.
    pub fn partners(&self, side: Side, id: SimplexId) -> Vec<SimplexId> {
        match side {
            Side::Source => self.pairs.iter().filter(|p| p.0 == id).map(|p| p.1).collect(),
            Side::Target => self.pairs.iter().filter(|p| p.1 == id).map(|p| p.0).collect(),
        }
    }

    pub fn transpose(&self) -> ComplexRelation {
        ComplexRelation {
            source: self.target.clone(),
            target: self.source.clone(),
            pairs: self.pairs.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }
}

fn labels_name<S: AsRef<str>>(s: &[S]) -> String {
    crate::simplicial::simplex_name(s)
}

/// Relation between the two Dowker complexes: `σ ~ τ` iff every element of σ is related to
/// every element of τ.
pub fn induced_complex_relation(r: &Relation) -> ComplexRelation {
    let da = dowker_complex(r, Side::Source);
    let dx = dowker_complex(r, Side::Target);
    let mut pairs = BTreeSet::new();
    for s in da.ids() {
        let common: BTreeSet<String> = common_neighbours(r, Side::Source, &da.labels(s)).into_iter().collect();
        for t in dx.ids() {
            if dx.labels(t).iter().all(|x| common.contains(*x)) {
                pairs.insert((s, t));
            }
        }
    }
    ComplexRelation { source: da, target: dx, pairs }
}

/// Prefixes used to keep the two vertex sets of a join disjoint; empty when they already are.
pub fn join_prefixes(k: &SimplicialComplex, m: &SimplicialComplex) -> (&'static str, &'static str) {
    let kv: BTreeSet<&String> = k.vertices().iter().collect();
    if m.vertices().iter().any(|v| kv.contains(v)) {
        ("K:", "M:")
    } else {
        ("", "")
    }
}

fn prefixed(k: &SimplicialComplex, id: SimplexId, prefix: &str) -> Vec<String> {
    k.labels(id).into_iter().map(|l| format!("{prefix}{l}")).collect()
}

/// Subcomplex of the join made of both complexes and the unions of related simplices.
pub fn relational_join(cr: &ComplexRelation) -> SimplicialComplex {
    let (pk, pm) = join_prefixes(&cr.source, &cr.target);
    let mut all: Vec<Vec<String>> = Vec::new();
    all.extend(cr.source.ids().map(|s| prefixed(&cr.source, s, pk)));
    all.extend(cr.target.ids().map(|t| prefixed(&cr.target, t, pm)));
    for &(s, t) in &cr.pairs {
        let mut u = prefixed(&cr.source, s, pk);
        u.extend(prefixed(&cr.target, t, pm));
        all.push(u);
    }
    SimplicialComplex::from_closed_labels(all)
}

/// The poset on `P ⊔ Q` ordered by `P`, by the opposite of `Q`, and by `p < q` for related
/// pairs. `rel` must be downward closed in `P × Q`.
pub fn relational_join_poset(p: &Poset, q: &Poset, rel: &BTreeSet<(usize, usize)>) -> Result<Poset, RelationalError> {
    for &(a, b) in rel {
        if a >= p.len() || b >= q.len() {
            return Err(RelationalError::Shape(format!("pair ({a}, {b}) out of range")));
        }
        for a2 in 0..p.len() {
            for b2 in 0..q.len() {
                if p.le(a2, a) && q.le(b2, b) && !rel.contains(&(a2, b2)) {
                    return Err(RelationalError::NotDownwardClosed {
                        left: p.label(a).to_string(),
                        right: q.label(b).to_string(),
                        missing: format!("{} ~ {}", p.label(a2), q.label(b2)),
                    });
                }
            }
        }
    }
    let collide = p.labels().iter().any(|l| q.index_of(l).is_some());
    let (pp, pq) = if collide { ("K:", "M:") } else { ("", "") };
    let n = p.len() + q.len();
    let mut labels: Vec<String> = p.labels().iter().map(|l| format!("{pp}{l}")).collect();
    labels.extend(q.labels().iter().map(|l| format!("{pq}{l}")));
    let mut le = vec![vec![false; n]; n];
    for i in 0..p.len() {
        for j in 0..p.len() {
            le[i][j] = p.le(i, j);
        }
        for j in 0..q.len() {
            le[i][p.len() + j] = rel.contains(&(i, j));
        }
    }
    for i in 0..q.len() {
        for j in 0..q.len() {
            le[p.len() + i][p.len() + j] = q.le(j, i);
        }
    }
    Ok(Poset::new(labels, le)?)
}

/// Regular CW complex whose cells are the products of related simplices.
#[derive(Clone, Debug)]
pub struct ProductCWComplex {
    relation: ComplexRelation,
    cells: Vec<Vec<(SimplexId, SimplexId)>>,
    index: HashMap<(SimplexId, SimplexId), usize>,
}

impl ProductCWComplex {
    pub fn relation(&self) -> &ComplexRelation {
        &self.relation
    }

    /// Cells of dimension `d`, each a related pair.
    pub fn cells(&self, d: usize) -> &[(SimplexId, SimplexId)] {
        self.cells.get(d).map_or(&[], |v| v)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    pub fn dim(&self) -> i64 {
        self.cells.len() as i64 - 1
    }

    pub fn cell_index(&self, cell: (SimplexId, SimplexId)) -> Option<usize> {
        self.index.get(&cell).copied()
    }

    pub fn cell_name(&self, (s, t): (SimplexId, SimplexId)) -> String {
        format!("{}x{}", self.relation.source.name(s), self.relation.target.name(t))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(d, c)| if d % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum()
    }

    /// Cellular boundary `∂(σ×τ) = ∂σ×τ + (-1)^{dim σ} σ×∂τ` as signed cells.
    pub fn boundary_cells(&self, (s, t): (SimplexId, SimplexId)) -> Vec<((SimplexId, SimplexId), i64)> {
        let k = &self.relation.source;
        let m = &self.relation.target;
        let twist = if s.dim % 2 == 0 { 1 } else { -1 };
        let mut out: Vec<_> = k.boundary_faces(s).into_iter().map(|(f, sign)| ((f, t), sign)).collect();
        out.extend(m.boundary_faces(t).into_iter().map(|(f, sign)| ((s, f), twist * sign)));
        out
    }

    pub fn chain_complex(&self) -> ChainComplex {
        if self.cells.is_empty() {
            return ChainComplex::empty();
        }
        let mut labels = Vec::new();
        let mut boundaries = Vec::new();
        for d in 0..self.cells.len() {
            labels.push(self.cells[d].iter().map(|&c| self.cell_name(c)).collect());
            if d == 0 {
                boundaries.push(IntMatrix::zeros(0, self.cells[0].len()));
                continue;
            }
            let columns = self.cells[d]
                .iter()
                .map(|&c| self.boundary_cells(c).into_iter().map(|(f, sign)| (self.index[&f], sign)).collect())
                .collect();
            boundaries.push(IntMatrix::from_small_columns(self.cells[d - 1].len(), columns));
        }
        ChainComplex::new_unchecked(0, labels, boundaries)
    }

    /// Cells ordered by `(σ', τ') <= (σ, τ)` iff `σ' ⊆ σ` and `τ' ⊆ τ`.
    pub fn face_poset(&self) -> Poset {
        let all: Vec<(SimplexId, SimplexId)> = self.cells.iter().flatten().copied().collect();
        let flat: HashMap<(SimplexId, SimplexId), usize> = all.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let n = all.len();
        let mut le = vec![vec![false; n]; n];
        for (i, &(s, t)) in all.iter().enumerate() {
            for fs in self.relation.source.faces(s) {
                for ft in self.relation.target.faces(t) {
                    le[flat[&(fs, ft)]][i] = true;
                }
            }
        }
        Poset::new_unchecked(all.iter().map(|&c| self.cell_name(c)).collect(), le)
    }
}

pub fn relational_product(cr: &ComplexRelation) -> ProductCWComplex {
    let mut cells: Vec<Vec<(SimplexId, SimplexId)>> = Vec::new();
    for &(s, t) in &cr.pairs {
        let d = s.dim + t.dim;
        if cells.len() <= d {
            cells.resize(d + 1, Vec::new());
        }
        cells[d].push((s, t));
    }
    let mut index = HashMap::new();
    for level in &cells {
        for (i, &c) in level.iter().enumerate() {
            index.insert(c, i);
        }
    }
    ProductCWComplex { relation: cr.clone(), cells, index }
}

/// Related pairs of chains in two posets, matched on their top elements; the relation the
/// order complex of a relational join poset induces.
pub fn order_complex_relation(
    p: &Poset,
    q: &Poset,
    rel: &BTreeSet<(usize, usize)>,
) -> (SimplicialComplex, SimplicialComplex, BTreeSet<(SimplexId, SimplexId)>) {
    let dp = crate::simplicial::order_complex(p);
    let dq = crate::simplicial::order_complex(q);
    let top = |k: &SimplicialComplex, poset: &Poset, id: SimplexId| -> usize {
        let members: Vec<usize> = k.labels(id).iter().map(|l| poset.index_of(l).unwrap()).collect();
        *members.iter().find(|&&a| members.iter().all(|&b| poset.le(b, a))).unwrap()
    };
    let tops_q: BTreeMap<SimplexId, usize> = dq.ids().map(|t| (t, top(&dq, q, t))).collect();
    let mut pairs = BTreeSet::new();
    for s in dp.ids() {
        let ts = top(&dp, p, s);
        for (&t, &tq) in &tops_q {
            if rel.contains(&(ts, tq)) {
                pairs.insert((s, t));
            }
        }
    }
    (dp, dq, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, Coefficients};
    use crate::relational::tests::{full_two_by_two, running_example};
    use crate::simplicial::{face_poset, order_complex};

    fn betti_of(cc: &ChainComplex) -> Vec<usize> {
        homology(cc, Coefficients::Integers).unwrap().betti_numbers()
    }

    #[test]
    fn full_square_counts() {
        let cr = induced_complex_relation(&full_two_by_two());
        assert_eq!(cr.len(), 9);
        let prod = relational_product(&cr);
        assert_eq!(prod.counts(), vec![4, 4, 1]);
        assert_eq!(prod.euler_characteristic(), 1);
        assert_eq!(betti_of(&prod.chain_complex()), vec![1]);
    }

    #[test]
    fn empty_relation_has_no_pairs() {
        let r = Relation::from_matrix(&["a", "b"], &["x"], &[vec![false], vec![false]]).unwrap();
        let cr = induced_complex_relation(&r);
        assert!(cr.is_empty());
        assert_eq!(relational_product(&cr).num_cells(), 0);
    }

    #[test]
    fn running_example_join_and_product() {
        let cr = induced_complex_relation(&running_example());
        let join = relational_join(&cr);
        assert_eq!(betti_of(&join.chain_complex()), vec![1, 1]);
        let prod = relational_product(&cr);
        let cc = prod.chain_complex();
        cc.validate().unwrap();
        assert_eq!(betti_of(&cc), vec![1, 1]);
        let sd = order_complex(&prod.face_poset());
        assert_eq!(betti_of(&sd.chain_complex()), vec![1, 1]);
    }

    #[test]
    fn singleton_relation_join_is_an_edge() {
        let k = SimplicialComplex::from_facets([vec!["a"]]);
        let m = SimplicialComplex::from_facets([vec!["x"]]);
        let cr = ComplexRelation::generated_by(k, m, &[(vec!["a"], vec!["x"])]).unwrap();
        let j = relational_join(&cr);
        assert_eq!(j.counts(), vec![2, 1]);
        assert_eq!(betti_of(&j.chain_complex()), vec![1]);
    }

    #[test]
    fn empty_relation_join_is_disjoint_union() {
        let k = SimplicialComplex::from_facets([vec!["v"]]);
        let m = SimplicialComplex::from_facets([vec!["v"]]);
        let cr = ComplexRelation::new(k, m, BTreeSet::new()).unwrap();
        let j = relational_join(&cr);
        assert_eq!(j.vertices(), &["K:v".to_string(), "M:v".to_string()][..]);
        assert_eq!(betti_of(&j.chain_complex()), vec![2]);
    }

    #[test]
    fn downward_closure_is_enforced() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"]]);
        let m = SimplicialComplex::from_facets([vec!["x"]]);
        let ab = k.find(&["a", "b"]).unwrap();
        let x = m.find(&["x"]).unwrap();
        let err = ComplexRelation::new(k, m, [(ab, x)].into_iter().collect()).unwrap_err();
        assert!(matches!(err, RelationalError::NotDownwardClosed { .. }));
    }

    #[test]
    fn join_poset_of_two_points() {
        let p = Poset::from_relations(vec!["p".into()], &[]).unwrap();
        let q = Poset::from_relations(vec!["q".into()], &[]).unwrap();
        let j = relational_join_poset(&p, &q, &[(0, 0)].into_iter().collect()).unwrap();
        assert!(j.lt(0, 1));
        let disjoint = relational_join_poset(&p, &q, &BTreeSet::new()).unwrap();
        assert!(!disjoint.comparable(0, 1));
    }

    #[test]
    fn running_example_join_poset_contains_highlighted_chain() {
        let r = running_example();
        let cr = induced_complex_relation(&r);
        let pa = face_poset(cr.source());
        let px = face_poset(cr.target());
        let rel: BTreeSet<(usize, usize)> =
            cr.pairs().iter().map(|&(s, t)| (cr.source().flat_index(s), cr.target().flat_index(t))).collect();
        let j = relational_join_poset(&pa, &px, &rel).unwrap();
        let chain = ["{b}", "{b,d}", "{b,c,d}", "{y}"];
        for w in chain.windows(2) {
            assert!(j.lt(j.index_of(w[0]).unwrap(), j.index_of(w[1]).unwrap()), "{} < {}", w[0], w[1]);
        }
    }
}
