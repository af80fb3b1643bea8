use super::sections::CellularCosheaf;
use super::CosheafError;
use crate::algebra::{rank, DegreeHomology, FMatrix, Field, HomologyBasis, HomologyResult};
use crate::simplicial::{simplicial_chain_map, SimplexId, SimplicialComplex};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Cosheaf of vector spaces on a simplicial complex: a dimension per simplex and an
/// extension matrix `F(τ) -> F(σ)` for every codimension-one face `σ` of `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupCosheaf<E> {
    base: SimplicialComplex,
    dims: Vec<usize>,
    extensions: BTreeMap<(SimplexId, SimplexId), FMatrix<E>>,
}

impl<E: Clone + PartialEq> GroupCosheaf<E> {
    /// `dims` is indexed like the base's ids; `extensions` is keyed by `(coface, face)`.
    pub fn new<F: Field<Elem = E>>(
        f: &F,
        base: SimplicialComplex,
        dims: Vec<usize>,
        extensions: BTreeMap<(SimplexId, SimplexId), FMatrix<E>>,
    ) -> Result<Self, CosheafError> {
        if dims.len() != base.num_simplices() {
            return Err(CosheafError::Shape(format!("{} dimensions for {} simplices", dims.len(), base.num_simplices())));
        }
        let g = GroupCosheaf { base, dims, extensions };
        g.validate(f)?;
        Ok(g)
    }

    /// Dimension one everywhere with identity extensions.
    pub fn constant<F: Field<Elem = E>>(f: &F, base: SimplicialComplex) -> Self {
        let dims = vec![1; base.num_simplices()];
        let mut extensions = BTreeMap::new();
        for t in base.ids() {
            for (s, _) in base.boundary_faces(t) {
                extensions.insert((t, s), FMatrix::identity(f, 1));
            }
        }
        GroupCosheaf { base, dims, extensions }
    }

    fn validate<F: Field<Elem = E>>(&self, f: &F) -> Result<(), CosheafError> {
        let b = &self.base;
        for t in b.ids() {
            for (s, _) in b.boundary_faces(t) {
                let m = self
                    .extensions
                    .get(&(t, s))
                    .ok_or_else(|| CosheafError::Shape(format!("no extension {} -> {}", b.name(t), b.name(s))))?;
                if m.rows() != self.dim(s) || m.cols() != self.dim(t) {
                    return Err(CosheafError::Shape(format!("extension {} -> {}", b.name(t), b.name(s))));
                }
            }
            if t.dim < 2 {
                continue;
            }
            // both routes around each codimension-two face must agree
            let verts = b.vertex_ids(t).to_vec();
            for i in 0..verts.len() {
                for j in i + 1..verts.len() {
                    let drop = |skip: &[usize]| {
                        let v: Vec<u32> =
                            verts.iter().enumerate().filter(|(k, _)| !skip.contains(k)).map(|(_, &v)| v).collect();
                        b.id_of(&v).expect("closed under faces")
                    };
                    let (ri, rj, s) = (drop(&[i]), drop(&[j]), drop(&[i, j]));
                    let via_i = self.extensions[&(ri, s)].mul(f, &self.extensions[&(t, ri)]);
                    let via_j = self.extensions[&(rj, s)].mul(f, &self.extensions[&(t, rj)]);
                    if via_i != via_j {
                        return Err(CosheafError::NotFunctorial { face: b.name(s), coface: b.name(t) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn dim(&self, id: SimplexId) -> usize {
        self.dims[self.base.flat_index(id)]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn extension(&self, coface: SimplexId, face: SimplexId) -> Option<&FMatrix<E>> {
        self.extensions.get(&(coface, face))
    }

    /// Boundary `⊕_{τ ∈ X^n} F(τ) -> ⊕_{σ ∈ X^{n-1}} F(σ)` with incidence signs.
    pub fn boundary<F: Field<Elem = E>>(&self, f: &F, n: usize) -> FMatrix<E> {
        let b = &self.base;
        let offsets = |d: usize| {
            let mut off = Vec::with_capacity(b.count(d) + 1);
            let mut acc = 0;
            off.push(0);
            for i in 0..b.count(d) {
                acc += self.dim(SimplexId { dim: d, index: i });
                off.push(acc);
            }
            off
        };
        let cols = offsets(n);
        if n == 0 {
            return FMatrix::zeros(f, 0, *cols.last().unwrap());
        }
        let rows = offsets(n - 1);
        let mut m = FMatrix::zeros(f, *rows.last().unwrap(), *cols.last().unwrap());
        for i in 0..b.count(n) {
            let t = SimplexId { dim: n, index: i };
            for (s, sign) in b.boundary_faces(t) {
                let e = &self.extensions[&(t, s)];
                for r in 0..e.rows() {
                    for c in 0..e.cols() {
                        let v = e.get(r, c);
                        let v = if sign < 0 { f.neg(v) } else { v.clone() };
                        m.set(rows[s.index] + r, cols[i] + c, v);
                    }
                }
            }
        }
        m
    }
}

/// The cosheaf `σ ↦ H_p(section(σ))` with maps induced by the inclusions of sections.
pub fn homology_cosheaf<F: Field>(f: &F, c: &CellularCosheaf, p: i64) -> GroupCosheaf<F::Elem> {
    let base = c.base().clone();
    let complexes: Vec<_> = c.sections().iter().map(|s| s.chain_complex()).collect();
    let bases: Vec<HomologyBasis<F::Elem>> = complexes.par_iter().map(|cc| HomologyBasis::new(f, cc, p)).collect();
    let dims = bases.iter().map(|h| h.dim()).collect();
    let mut extensions = BTreeMap::new();
    for t in base.ids() {
        let ti = base.flat_index(t);
        for (s, _) in base.boundary_faces(t) {
            let si = base.flat_index(s);
            let inclusion = simplicial_chain_map(&c.sections()[ti], &c.sections()[si], |v| v.to_string())
                .expect("sections shrink along cofaces");
            let chain = FMatrix::from_int(f, &inclusion.matrix(p, &complexes[ti], &complexes[si]));
            extensions.insert((t, s), bases[ti].induced(f, &chain, &bases[si]));
        }
    }
    GroupCosheaf { base, dims, extensions }
}

/// Homology of the chain complex of a vector-space cosheaf.
pub fn cosheaf_homology<F: Field>(f: &F, g: &GroupCosheaf<F::Elem>) -> HomologyResult {
    let top = g.base.dim();
    let ranks: Vec<usize> = (0..=top + 1).map(|n| rank(f, &g.boundary(f, n as usize))).collect();
    let degrees = (0..=top)
        .map(|n| {
            let n_u = n as usize;
            let chains: usize = (0..g.base.count(n_u)).map(|i| g.dim(SimplexId { dim: n_u, index: i })).sum();
            let up = if n < top { ranks[n_u + 1] } else { 0 };
            DegreeHomology { degree: n, betti: chains - ranks[n_u] - up, torsion: Vec::new() }
        })
        .collect();
    HomologyResult { coefficients: f.descriptor(), degrees }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, Rationals};
    use crate::cosheaf::relation_cosheaf;
    use crate::relational::tests::running_example;
    use crate::relational::{induced_complex_relation, Side};

    #[test]
    fn constant_cosheaf_gives_ordinary_homology() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]);
        let g = GroupCosheaf::constant(&Rationals, k.clone());
        let h = cosheaf_homology(&Rationals, &g);
        assert_eq!(h.betti_numbers(), vec![1, 1]);
        let direct = homology(&k.chain_complex(), crate::algebra::Coefficients::Rationals).unwrap();
        assert_eq!(h.betti_numbers(), direct.betti_numbers());
    }

    #[test]
    fn dowker_cosheaf_homology() {
        let cr = induced_complex_relation(&running_example());
        let fa = relation_cosheaf(&cr, Side::Source);
        let h0 = homology_cosheaf(&Rationals, &fa, 0);
        assert!(h0.dims().iter().all(|&d| d == 1));
        for t in h0.base().ids() {
            for (s, _) in h0.base().boundary_faces(t) {
                assert_eq!(h0.extension(t, s).unwrap(), &FMatrix::identity(&Rationals, 1));
            }
        }
        assert_eq!(cosheaf_homology(&Rationals, &h0).betti_numbers(), vec![1, 1]);
        let h1 = homology_cosheaf(&Rationals, &fa, 1);
        assert!(h1.dims().iter().all(|&d| d == 0));
        assert!(cosheaf_homology(&Rationals, &h1).degrees.iter().all(|d| d.betti == 0));
    }

    #[test]
    fn non_functorial_data_rejected() {
        let k = SimplicialComplex::from_facets([vec!["a", "b", "c"]]);
        let f = Rationals;
        let mut g = GroupCosheaf::constant(&f, k.clone());
        let t = k.find(&["a", "b"]).unwrap();
        let s = k.find(&["a"]).unwrap();
        g.extensions.insert((t, s), FMatrix::from_rows(1, 1, vec![vec![f.from_i64(2)]]));
        let err = GroupCosheaf::new(&f, k, g.dims.clone(), g.extensions.clone()).unwrap_err();
        assert!(matches!(err, CosheafError::NotFunctorial { .. }));
    }
}
