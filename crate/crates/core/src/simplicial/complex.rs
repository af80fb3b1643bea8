use crate::algebra::{ChainComplex, ChainMap, IntMatrix};
use std::collections::{BTreeSet, HashMap, HashSet};

/// Position of a simplex: its dimension and its index among simplices of that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

/// Finite abstract simplicial complex on string-labelled vertices.
///
/// Vertices are kept sorted by label and each simplex is a sorted list of vertex positions,
/// so the orientation of a simplex is the sorted label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, usize>,
}

/// Renders a simplex as `{a,b,c}`.
pub fn simplex_name<S: AsRef<str>>(vertices: &[S]) -> String {
    let parts: Vec<&str> = vertices.iter().map(|s| s.as_ref()).collect();
    format!("{{{}}}", parts.join(","))
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), simplices: Vec::new(), index: HashMap::new() }
    }

    /// Closure of a family of vertex sets. Empty sets and repeated vertices are ignored.
    pub fn from_facets<I, F, S>(facets: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let facets: Vec<BTreeSet<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|s| s.as_ref().to_string()).collect::<BTreeSet<_>>())
            .filter(|f| !f.is_empty())
            .collect();
        let vertices: Vec<String> =
            facets.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<&str, u32> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i as u32)).collect();
        let mut all: HashSet<Vec<u32>> = HashSet::new();
        for f in &facets {
            let ids: Vec<u32> = f.iter().map(|v| pos[v.as_str()]).collect();
            if all.contains(&ids) {
                continue;
            }
            let n = ids.len();
            assert!(n < 32, "facet with {n} vertices is too large");
            for mask in 1u32..(1u32 << n) {
                let s: Vec<u32> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| ids[b]).collect();
                all.insert(s);
            }
        }
        Self::from_closed(vertices, all)
    }

    /// Builds from sorted vertex labels and a face-closed family of sorted vertex-position lists.
    pub(crate) fn from_closed(vertices: Vec<String>, all: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            if simplices.len() <= d {
                simplices.resize(d + 1, Vec::new());
            }
            simplices[d].push(s);
        }
        for level in &mut simplices {
            level.sort();
            level.dedup();
        }
        let mut index = HashMap::new();
        for level in &simplices {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        SimplicialComplex { vertices, simplices, index }
    }

    /// Builds from label lists that are already closed under faces (not checked).
    pub(crate) fn from_closed_labels(simplices: impl IntoIterator<Item = Vec<String>>) -> Self {
        let simplices: Vec<Vec<String>> = simplices.into_iter().collect();
        let vertices: Vec<String> =
            simplices.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<&str, u32> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i as u32)).collect();
        let ids: Vec<Vec<u32>> = simplices
            .iter()
            .map(|s| {
                let mut v: Vec<u32> = s.iter().map(|x| pos[x.as_str()]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Self::from_closed(vertices, ids)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, or -1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.simplices.get(dim).map_or(&[], |v| v)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|v| v.len()).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.iter().map(|v| v.len()).sum()
    }

    /// All simplices in dimension-then-index order.
    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices
            .iter()
            .enumerate()
            .flat_map(|(d, v)| (0..v.len()).map(move |i| SimplexId { dim: d, index: i }))
    }

    /// Position of a simplex in the order of [`Self::ids`].
    pub fn flat_index(&self, id: SimplexId) -> usize {
        self.simplices[..id.dim].iter().map(|v| v.len()).sum::<usize>() + id.index
    }

    pub fn vertex_ids(&self, id: SimplexId) -> &[u32] {
        &self.simplices[id.dim][id.index]
    }

    pub fn labels(&self, id: SimplexId) -> Vec<&str> {
        self.vertex_ids(id).iter().map(|&v| self.vertices[v as usize].as_str()).collect()
    }

    pub fn owned_labels(&self, id: SimplexId) -> Vec<String> {
        self.labels(id).into_iter().map(String::from).collect()
    }

    pub fn name(&self, id: SimplexId) -> String {
        simplex_name(&self.labels(id))
    }

    pub fn id_of(&self, vertex_ids: &[u32]) -> Option<SimplexId> {
        if vertex_ids.is_empty() {
            return None;
        }
        self.index.get(vertex_ids).map(|&i| SimplexId { dim: vertex_ids.len() - 1, index: i })
    }

    pub fn vertex_position(&self, label: &str) -> Option<u32> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(label)).ok().map(|i| i as u32)
    }

    /// Looks a simplex up by its vertex labels, in any order.
    pub fn find<S: AsRef<str>>(&self, labels: &[S]) -> Option<SimplexId> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            ids.push(self.vertex_position(l.as_ref())?);
        }
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != labels.len() {
            return None;
        }
        self.id_of(&ids)
    }

    pub fn contains<S: AsRef<str>>(&self, labels: &[S]) -> bool {
        self.find(labels).is_some()
    }

    /// Codimension-one faces with their incidence signs `(-1)^i`, `i` the dropped position.
    pub fn boundary_faces(&self, id: SimplexId) -> Vec<(SimplexId, i64)> {
        if id.dim == 0 {
            return Vec::new();
        }
        let s = self.vertex_ids(id);
        (0..s.len())
            .map(|i| {
                let mut f = s.to_vec();
                f.remove(i);
                (self.id_of(&f).expect("complex is closed under faces"), if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// All nonempty faces of a simplex, itself included.
    pub fn faces(&self, id: SimplexId) -> Vec<SimplexId> {
        let s = self.vertex_ids(id);
        let n = s.len();
        (1u32..(1u32 << n))
            .map(|mask| {
                let f: Vec<u32> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect();
                self.id_of(&f).expect("complex is closed under faces")
            })
            .collect()
    }

    pub fn facets(&self) -> Vec<SimplexId> {
        let mut covered: HashSet<SimplexId> = HashSet::new();
        for d in 1..self.simplices.len() {
            for i in 0..self.simplices[d].len() {
                for (f, _) in self.boundary_faces(SimplexId { dim: d, index: i }) {
                    covered.insert(f);
                }
            }
        }
        self.ids().filter(|id| !covered.contains(id)).collect()
    }

    /// Simplicial chain complex in degrees `0..=dim`.
    pub fn chain_complex(&self) -> ChainComplex {
        if self.is_empty() {
            return ChainComplex::empty();
        }
        let mut labels = Vec::new();
        let mut boundaries = Vec::new();
        for d in 0..self.simplices.len() {
            labels.push((0..self.count(d)).map(|i| self.name(SimplexId { dim: d, index: i })).collect());
            if d == 0 {
                boundaries.push(IntMatrix::zeros(0, self.count(0)));
                continue;
            }
            let columns = (0..self.count(d))
                .map(|i| {
                    self.boundary_faces(SimplexId { dim: d, index: i })
                        .into_iter()
                        .map(|(f, s)| (f.index, s))
                        .collect()
                })
                .collect();
            boundaries.push(IntMatrix::from_small_columns(self.count(d - 1), columns));
        }
        ChainComplex::new_unchecked(0, labels, boundaries)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) }).sum()
    }

    /// Every simplex as a sorted label list; the comparison key for complexes.
    pub fn label_set(&self) -> BTreeSet<Vec<String>> {
        self.ids().map(|id| self.owned_labels(id)).collect()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.ids().all(|id| other.find(&self.labels(id)).is_some())
    }

    /// Subcomplex made of the given simplices together with all their faces.
    pub fn closure_of(&self, ids: impl IntoIterator<Item = SimplexId>) -> SimplicialComplex {
        let mut all: BTreeSet<SimplexId> = BTreeSet::new();
        for id in ids {
            all.extend(self.faces(id));
        }
        SimplicialComplex::from_closed_labels(all.into_iter().map(|id| self.owned_labels(id)))
    }

    /// Renames every vertex; the map must be injective.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> SimplicialComplex {
        SimplicialComplex::from_closed_labels(
            self.ids().map(|id| self.labels(id).into_iter().map(&f).collect::<Vec<_>>()),
        )
    }
}

/// Chain map induced by a vertex map. Simplices whose image repeats a vertex go to zero;
/// the others pick up the sign of the permutation sorting their image. Returns the first
/// source simplex whose image is missing from `dst`, if any.
pub fn simplicial_chain_map(
    src: &SimplicialComplex,
    dst: &SimplicialComplex,
    vertex_map: impl Fn(&str) -> String,
) -> Result<ChainMap, String> {
    let image: Vec<Option<u32>> = src.vertices().iter().map(|v| dst.vertex_position(&vertex_map(v))).collect();
    let mut matrices = Vec::new();
    for d in 0..src.simplices.len() {
        let mut columns: Vec<Vec<(usize, i64)>> = Vec::with_capacity(src.count(d));
        for (i, s) in src.simplices[d].iter().enumerate() {
            let mut img = Vec::with_capacity(s.len());
            for &v in s {
                img.push(image[v as usize].ok_or_else(|| src.name(SimplexId { dim: d, index: i }))?);
            }
            let mut sorted = img.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < img.len() {
                columns.push(Vec::new());
                continue;
            }
            let inversions = (0..img.len()).flat_map(|a| (a + 1..img.len()).map(move |b| (a, b))).filter(|&(a, b)| img[a] > img[b]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let t = dst.id_of(&sorted).ok_or_else(|| src.name(SimplexId { dim: d, index: i }))?;
            columns.push(vec![(t.index, sign)]);
        }
        matrices.push(IntMatrix::from_small_columns(dst.count(d), columns));
    }
    Ok(ChainMap { min_degree: 0, matrices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, Coefficients};

    fn betti(k: &SimplicialComplex) -> Vec<usize> {
        homology(&k.chain_complex(), Coefficients::Integers).unwrap().betti_numbers()
    }

    #[test]
    fn closure_of_facets() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"], vec!["a", "c"], vec!["b", "c", "d"]]);
        assert_eq!(k.counts(), vec![4, 5, 1]);
        assert_eq!(k.num_simplices(), 10);
        assert!(k.contains(&["d", "b"]));
        assert!(!k.contains(&["a", "d"]));
        assert_eq!(betti(&k), vec![1, 1]);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn facets_round_trip() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"], vec!["b", "c", "d"], vec!["c"]]);
        let names: Vec<String> = k.facets().into_iter().map(|f| k.name(f)).collect();
        assert_eq!(names, vec!["{a,b}", "{b,c,d}"]);
    }

    #[test]
    fn empty_complex() {
        let k = SimplicialComplex::from_facets(Vec::<Vec<&str>>::new());
        assert!(k.is_empty());
        assert_eq!(k.dim(), -1);
        assert_eq!(k.chain_complex().total_rank(), 0);
    }

    #[test]
    fn folding_an_edge_is_a_chain_map() {
        let edge = SimplicialComplex::from_facets([vec!["a", "b"]]);
        let pt = SimplicialComplex::from_facets([vec!["p"]]);
        let f = simplicial_chain_map(&edge, &pt, |_| "p".to_string()).unwrap();
        f.validate(&edge.chain_complex(), &pt.chain_complex()).unwrap();
        let swap = simplicial_chain_map(&edge, &edge, |v| if v == "a" { "b".into() } else { "a".into() }).unwrap();
        assert_eq!(swap.matrices[1], IntMatrix::from_rows(&[vec![-1]]));
    }

    #[test]
    fn chain_complex_is_valid() {
        let k = SimplicialComplex::from_facets([vec!["a", "b", "c", "d"]]);
        k.chain_complex().validate().unwrap();
        assert_eq!(betti(&k), vec![1]);
    }
}
