use super::complex_relation::{join_prefixes, relational_join, relational_product, ComplexRelation};
use super::relation::{dowker_complex, dowker_galois, Relation, Side};
use super::RelationalError;
use crate::algebra::{induced_map, verify_chain_les, ChainComplex, ChainMap, ExactnessReport, Field, IntMatrix};
use crate::simplicial::{order_complex, simplicial_chain_map, PosetMap, SimplicialComplex};
use std::collections::BTreeMap;

/// Chain complexes and chain maps of the sequence `product -α-> K ⊕ M -β-> join`.
///
/// `α` is the pair of vertex-augmentation projections `σ×τ ↦ σ` (τ a vertex) and
/// `σ×τ ↦ -τ` (σ a vertex); `β` is the sum of the two inclusions into the join.
pub fn relational_chain_maps(cr: &ComplexRelation) -> (ChainComplex, ChainComplex, ChainComplex, ChainMap, ChainMap) {
    let k = cr.source();
    let m = cr.target();
    let product = relational_product(cr);
    let join = relational_join(cr);
    let pc = product.chain_complex();
    let kc = k.chain_complex();
    let mc = m.chain_complex();
    let sc = kc.direct_sum(&mc);
    let jc = join.chain_complex();

    let top = [pc.max_degree(), sc.max_degree(), jc.max_degree()].into_iter().max().unwrap().max(0);
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for n in 0..=top {
        let d = n as usize;
        let kn = k.count(d);
        let columns: Vec<Vec<(usize, i64)>> = product
            .cells(d)
            .iter()
            .map(|&(s, t)| {
                let mut col = Vec::new();
                if t.dim == 0 {
                    col.push((s.index, 1));
                }
                if s.dim == 0 {
                    col.push((kn + t.index, -1));
                }
                col
            })
            .collect();
        alpha.push(IntMatrix::from_small_columns(sc.rank(n), columns));

        let (pk, pm) = join_prefixes(k, m);
        let locate = |cx: &SimplicialComplex, id, prefix: &str| {
            let labels: Vec<String> = cx.labels(id).iter().map(|l| format!("{prefix}{l}")).collect();
            join.find(&labels).expect("factor simplices lie in the join").index
        };
        let mut columns: Vec<Vec<(usize, i64)>> = Vec::new();
        for i in 0..kn {
            columns.push(vec![(locate(k, crate::simplicial::SimplexId { dim: d, index: i }, pk), 1)]);
        }
        for i in 0..m.count(d) {
            columns.push(vec![(locate(m, crate::simplicial::SimplexId { dim: d, index: i }, pm), 1)]);
        }
        beta.push(IntMatrix::from_small_columns(jc.rank(n), columns));
    }
    (
        pc,
        sc,
        jc,
        ChainMap { min_degree: 0, matrices: alpha },
        ChainMap { min_degree: 0, matrices: beta },
    )
}

/// Exactness of `H(product) -> H(K) ⊕ H(M) -> H(join) -> H(product)[-1]` over a field.
pub fn verify_les_relational<F: Field>(f: &F, cr: &ComplexRelation) -> Result<ExactnessReport, RelationalError> {
    let (pc, sc, jc, alpha, beta) = relational_chain_maps(cr);
    Ok(verify_chain_les(f, &pc, &sc, &jc, &alpha, &beta)?)
}

/// Outcome of comparing the two ways around the square of Dowker maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareVerdict {
    /// Degrees where the two composites induce different maps on homology.
    pub failing_degrees: Vec<i64>,
    /// Whether the two composites already agree as poset maps.
    pub agree_pointwise: bool,
    pub commutes: bool,
}

/// Checks that the Dowker maps of two relations commute, on homology, with the maps induced
/// by a pair of element maps carrying the first relation into the second.
pub fn functorial_square_check<F: Field>(
    r: &Relation,
    r2: &Relation,
    incl_a: &BTreeMap<String, String>,
    incl_x: &BTreeMap<String, String>,
    f: &F,
) -> Result<SquareVerdict, RelationalError>
where
    F::Elem: PartialEq,
{
    let lookup = |map: &BTreeMap<String, String>, v: &str, targets: &[String]| -> Result<String, RelationalError> {
        let img = map.get(v).ok_or_else(|| RelationalError::UnknownSimplex(v.to_string()))?;
        if !targets.contains(img) {
            return Err(RelationalError::UnknownSimplex(img.clone()));
        }
        Ok(img.clone())
    };
    for &(a, x) in r.pairs() {
        let (a, x) = (&r.rows()[a], &r.cols()[x]);
        let ia = lookup(incl_a, a, r2.rows())?;
        let ix = lookup(incl_x, x, r2.cols())?;
        if !r2.related_labels(&ia, &ix) {
            return Err(RelationalError::NotCarried { left: a.clone(), right: x.clone() });
        }
    }

    let (l, _) = dowker_galois(r)?;
    let (l2, _) = dowker_galois(r2)?;
    let (da, dx) = (dowker_complex(r, Side::Source), dowker_complex(r, Side::Target));
    let (da2, dx2) = (dowker_complex(r2, Side::Source), dowker_complex(r2, Side::Target));
    let image_map = |src: &SimplicialComplex, dst: &SimplicialComplex, map: &BTreeMap<String, String>| {
        src.ids()
            .map(|id| {
                let img: Vec<&str> = src.labels(id).iter().map(|v| map[*v].as_str()).collect();
                dst.flat_index(dst.find(&dedup(img)).expect("carried simplices are simplices"))
            })
            .collect::<Vec<_>>()
    };
    let alpha = PosetMap::new(l.source().clone(), l2.source().clone(), image_map(&da, &da2, incl_a))?;
    let beta = PosetMap::new(l.target().clone(), l2.target().clone(), image_map(&dx, &dx2, incl_x))?;
    let upper = alpha.then(&l2)?;
    let lower = l.then(&beta)?;
    let agree_pointwise = upper.assignment() == lower.assignment();

    let src = order_complex(upper.source());
    let dst = order_complex(upper.target());
    let as_vertex_map = |g: &PosetMap| {
        let table: BTreeMap<String, String> = (0..g.source().len())
            .map(|i| (g.source().label(i).to_string(), g.target().label(g.apply(i)).to_string()))
            .collect();
        move |v: &str| table[v].clone()
    };
    let to_shape = |e: String| RelationalError::UnknownSimplex(e);
    let cu = simplicial_chain_map(&src, &dst, as_vertex_map(&upper)).map_err(to_shape)?;
    let cl = simplicial_chain_map(&src, &dst, as_vertex_map(&lower)).map_err(to_shape)?;
    let (sc, dc) = (src.chain_complex(), dst.chain_complex());
    let hu = induced_map(f, &cu, &sc, &dc)?;
    let hl = induced_map(f, &cl, &sc, &dc)?;
    let failing_degrees: Vec<i64> =
        hu.iter().zip(&hl).filter(|((_, a), (_, b))| a != b).map(|((n, _), _)| *n).collect();
    Ok(SquareVerdict { commutes: failing_degrees.is_empty(), failing_degrees, agree_pointwise })
}

fn dedup(mut v: Vec<&str>) -> Vec<&str> {
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use crate::relational::induced_complex_relation;
    use crate::relational::tests::{full_two_by_two, running_example};

    fn identity(labels: &[String]) -> BTreeMap<String, String> {
        labels.iter().map(|l| (l.clone(), l.clone())).collect()
    }

    #[test]
    fn running_example_sequence_is_exact() {
        let cr = induced_complex_relation(&running_example());
        let report = verify_les_relational(&Rationals, &cr).unwrap();
        assert!(report.exact, "{report:?}");
        let dims: Vec<(usize, usize, usize)> =
            report.degrees.iter().filter(|d| d.degree >= 0).take(2).map(|d| (d.first, d.middle, d.last)).collect();
        assert_eq!(dims, vec![(1, 2, 1), (1, 2, 1)]);
        assert!(verify_les_relational(&PrimeField::new(2).unwrap(), &cr).unwrap().exact);
    }

    #[test]
    fn disjoint_points_sequence() {
        let k = SimplicialComplex::from_facets([vec!["v"]]);
        let cr = ComplexRelation::new(k.clone(), k, Default::default()).unwrap();
        let report = verify_les_relational(&Rationals, &cr).unwrap();
        assert!(report.exact);
        let d0 = report.degrees.iter().find(|d| d.degree == 0).unwrap();
        assert_eq!((d0.first, d0.middle, d0.last), (0, 2, 2));
    }

    #[test]
    fn projections_are_chain_maps() {
        let cr = induced_complex_relation(&full_two_by_two());
        let (pc, sc, jc, alpha, beta) = relational_chain_maps(&cr);
        alpha.validate(&pc, &sc).unwrap();
        beta.validate(&sc, &jc).unwrap();
    }

    #[test]
    fn identity_square_commutes() {
        let r = running_example();
        let v = functorial_square_check(&r, &r, &identity(r.rows()), &identity(r.cols()), &Rationals).unwrap();
        assert!(v.commutes && v.agree_pointwise);
    }

    #[test]
    fn extra_pair_square_commutes() {
        let r = running_example();
        let mut m: Vec<Vec<bool>> = (0..4).map(|a| (0..4).map(|x| r.related(a, x)).collect()).collect();
        m[3][3] = true;
        let r2 = Relation::from_matrix(r.rows(), r.cols(), &m).unwrap();
        let v = functorial_square_check(&r, &r2, &identity(r.rows()), &identity(r.cols()), &Rationals).unwrap();
        assert!(v.commutes, "{v:?}");
    }

    #[test]
    fn uncarried_maps_rejected() {
        let r = Relation::from_matrix(&["p1"], &["q1"], &[vec![true]]).unwrap();
        let r2 = Relation::from_matrix(&["p1", "p2"], &["q1", "q2"], &[vec![true, false], vec![false, true]]).unwrap();
        let ia: BTreeMap<String, String> = [("p1".to_string(), "p1".to_string())].into();
        let ix: BTreeMap<String, String> = [("q1".to_string(), "q2".to_string())].into();
        let err = functorial_square_check(&r, &r2, &ia, &ix, &Rationals).unwrap_err();
        assert_eq!(err, RelationalError::NotCarried { left: "p1".into(), right: "q1".into() });
    }
}
