use super::finite::{loop_free_check, FiniteCategory, FunctorData};
use super::nerve::{face, functor_chain_map, string_label, NerveStrings};
use super::profunctor::{cograph, fiber_category, graph, Anchor, ProfunctorData};
use super::CategoryError;
use crate::algebra::{
    rank, verify_chain_les, ChainComplex, ChainMap, DoubleComplex, ExactnessReport, FMatrix, Field, HomologyBasis,
    IntMatrix,
};
use std::collections::{BTreeMap, HashMap};

fn twist(p: i64) -> i64 {
    if p.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn require_loop_free(c: &FiniteCategory) -> Result<(), CategoryError> {
    let v = loop_free_check(c);
    if v.holds() {
        Ok(())
    } else {
        Err(CategoryError::NotLoopFree(v))
    }
}

/// A basis element of the profunctor double complex: a string of `p` morphisms of the first
/// category ending at the source of `het`, and a string of `q` morphisms of the second
/// starting at its target.
type Cell = (Vec<usize>, usize, Vec<usize>);

fn strings_ending(c: &FiniteCategory, nerve: &NerveStrings) -> Vec<Vec<Vec<Vec<usize>>>> {
    // [object][length] -> strings of that length ending at the object
    let mut out = vec![vec![Vec::new(); nerve.top_degree() + 1]; c.objects().len()];
    for x in 0..c.objects().len() {
        out[x][0].push(Vec::new());
    }
    for n in 1..=nerve.top_degree() {
        for s in nerve.strings(n) {
            out[c.morphism(*s.last().unwrap()).target][n].push(s.clone());
        }
    }
    out
}

fn strings_starting(d: &FiniteCategory, nerve: &NerveStrings) -> Vec<Vec<Vec<Vec<usize>>>> {
    let mut out = vec![vec![Vec::new(); nerve.top_degree() + 1]; d.objects().len()];
    for y in 0..d.objects().len() {
        out[y][0].push(Vec::new());
    }
    for n in 1..=nerve.top_degree() {
        for s in nerve.strings(n) {
            out[d.morphism(s[0]).source][n].push(s.clone());
        }
    }
    out
}

/// Double complex of a profunctor between loop-free categories. Cell `(p, q)` is spanned by
/// strings `c_0 -> ... -> c_p ⇝ d_0 -> ... -> d_q`; the horizontal map is the alternating sum
/// of the faces removing `c_i`, where removing `c_p` precomposes the heteromorphism, and the
/// vertical map is `(-1)^p` times the alternating sum of the faces removing `d_j`, where
/// removing `d_0` postcomposes it.
///
/// With `augmented`, row `-1` holds the nerve of the first category and column `-1` the nerve
/// of the second, with the same sign conventions as the relational double complex.
pub fn profunctor_double_complex(p: &ProfunctorData, augmented: bool) -> Result<DoubleComplex, CategoryError> {
    let (c, d) = (p.first(), p.second());
    require_loop_free(c)?;
    require_loop_free(d)?;
    let nc = NerveStrings::new(c, None);
    let nd = NerveStrings::new(d, None);
    let ending = strings_ending(c, &nc);
    let starting = strings_starting(d, &nd);

    let mut cells: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
    let mut basis: BTreeMap<(i64, i64), Vec<Cell>> = BTreeMap::new();
    let mut pos: HashMap<Cell, usize> = HashMap::new();
    for (phi, h) in p.hets().iter().enumerate() {
        for (pl, cs) in ending[h.source].iter().enumerate() {
            for (ql, ds) in starting[h.target].iter().enumerate() {
                for a in cs {
                    for b in ds {
                        let key = (pl as i64, ql as i64);
                        let list = basis.entry(key).or_default();
                        pos.insert((a.clone(), phi, b.clone()), list.len());
                        list.push((a.clone(), phi, b.clone()));
                    }
                }
            }
        }
    }
    let label = |(a, phi, b): &Cell| {
        let h = &p.hets()[*phi];
        let left = if a.is_empty() { c.objects()[h.source].clone() } else { string_label(c, a.len(), a) };
        let right = if b.is_empty() { d.objects()[h.target].clone() } else { string_label(d, b.len(), b) };
        format!("{left}~{}~{right}", h.name)
    };
    for (&k, list) in &basis {
        cells.insert(k, list.iter().map(label).collect());
    }

    let mut hcols: BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    let mut vcols: BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    for (&(pp, qq), list) in &basis {
        for (a, phi, b) in list {
            let mut h = Vec::new();
            let pl = a.len();
            for i in 0..pl {
                // faces not touching the heteromorphism
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let f = if pl == 1 { Some(Vec::new()) } else { face(c, a, i) };
                if let Some(f) = f {
                    h.push((pos[&(f, *phi, b.clone())], sign));
                }
            }
            if pl > 0 {
                let last = a[pl - 1];
                let phi2 = p.act_left(*phi, last);
                let sign = if pl % 2 == 0 { 1 } else { -1 };
                h.push((pos[&(a[..pl - 1].to_vec(), phi2, b.clone())], sign));
            } else if augmented {
                let target = p.hets()[*phi].target;
                let s = if b.is_empty() { vec![target] } else { b.clone() };
                h.push((nd.position(b.len(), &s).unwrap(), 1));
            }
            hcols.entry((pp, qq)).or_default().push(h);

            let mut v = Vec::new();
            let ql = b.len();
            let t = twist(pp);
            if ql > 0 {
                let first = b[0];
                let phi2 = p.act_right(first, *phi);
                v.push((pos[&(a.clone(), phi2, b[1..].to_vec())], t));
                for j in 1..=ql {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let f = if ql == 1 { Some(Vec::new()) } else { face(d, b, j) };
                    if let Some(f) = f {
                        v.push((pos[&(a.clone(), *phi, f)], t * sign));
                    }
                }
            } else if augmented {
                let source = p.hets()[*phi].source;
                let s = if a.is_empty() { vec![source] } else { a.clone() };
                v.push((nc.position(a.len(), &s).unwrap(), t));
            }
            vcols.entry((pp, qq)).or_default().push(v);
        }
    }

    if augmented {
        augment(c, &nc, &mut cells, &mut hcols, |n| (n, -1), 1);
        augment(d, &nd, &mut cells, &mut vcols, |n| (-1, n), -1);
    }
    let finish = |maps: BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>>, step: (i64, i64)| {
        maps.into_iter()
            .map(|((a, b), cols)| {
                let rows = cells.get(&(a - step.0, b - step.1)).map_or(0, |l| l.len());
                ((a, b), IntMatrix::from_small_columns(rows, cols))
            })
            .collect::<BTreeMap<_, _>>()
    };
    let horizontal = finish(hcols, (1, 0));
    let vertical = finish(vcols, (0, 1));
    Ok(DoubleComplex::new(cells, horizontal, vertical)?)
}

fn augment(
    c: &FiniteCategory,
    nerve: &NerveStrings,
    cells: &mut BTreeMap<(i64, i64), Vec<String>>,
    maps: &mut BTreeMap<(i64, i64), Vec<Vec<(usize, i64)>>>,
    at: impl Fn(i64) -> (i64, i64),
    scale: i64,
) {
    if c.objects().is_empty() {
        return;
    }
    for n in 0..=nerve.top_degree() {
        cells.insert(at(n as i64), (0..nerve.count(n)).map(|i| nerve.label(c, n, i)).collect());
        let cols = nerve
            .strings(n)
            .iter()
            .map(|s| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .filter_map(|i| {
                        let f = face(c, s, i)?;
                        let sign = if i % 2 == 0 { scale } else { -scale };
                        Some((nerve.position(n - 1, &f).unwrap(), sign))
                    })
                    .collect()
            })
            .collect();
        maps.insert(at(n as i64), cols);
    }
}

/// Nerves of the graph, the two categories, and the cograph, with the chain maps
/// `G -> C ⊕ D` (the first projection minus the second) and `C ⊕ D -> J` (the inclusions).
pub fn profunctor_chain_maps(
    p: &ProfunctorData,
) -> Result<(ChainComplex, ChainComplex, ChainComplex, ChainMap, ChainMap), CategoryError> {
    let (g, rho_c, rho_d) = graph(p);
    let (j, iota_c, iota_d) = cograph(p);
    for cat in [p.first(), p.second(), &g, &j] {
        require_loop_free(cat)?;
    }
    let (ng, gc) = nerve_pair(&g);
    let (nc, cc) = nerve_pair(p.first());
    let (nd, dc) = nerve_pair(p.second());
    let (nj, jc) = nerve_pair(&j);
    let sc = cc.direct_sum(&dc);

    let a_c = functor_chain_map(&rho_c, &ng, &nc);
    let a_d = functor_chain_map(&rho_d, &ng, &nd);
    let b_c = functor_chain_map(&iota_c, &nc, &nj);
    let b_d = functor_chain_map(&iota_d, &nd, &nj);
    let top = [gc.max_degree(), sc.max_degree(), jc.max_degree()].into_iter().max().unwrap().max(0);
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for n in 0..=top {
        let ac = a_c.matrix(n, &gc, &cc);
        let ad = a_d.matrix(n, &gc, &dc).neg();
        alpha.push(IntMatrix::block(&[ac.rows(), ad.rows()], &[gc.rank(n)], &[(0, 0, &ac), (1, 0, &ad)]));
        let bc = b_c.matrix(n, &cc, &jc);
        let bd = b_d.matrix(n, &dc, &jc);
        beta.push(IntMatrix::block(&[jc.rank(n)], &[bc.cols(), bd.cols()], &[(0, 0, &bc), (0, 1, &bd)]));
    }
    Ok((gc, sc, jc, ChainMap { min_degree: 0, matrices: alpha }, ChainMap { min_degree: 0, matrices: beta }))
}

fn nerve_pair(c: &FiniteCategory) -> (NerveStrings, ChainComplex) {
    super::nerve::nerve_with_strings(c).expect("loop-freeness checked by the caller")
}

/// Exactness of `H(G) -> H(C) ⊕ H(D) -> H(J) -> H(G)[-1]` over a field.
pub fn verify_les_profunctor<F: Field>(f: &F, p: &ProfunctorData) -> Result<ExactnessReport, CategoryError> {
    let (gc, sc, jc, alpha, beta) = profunctor_chain_maps(p)?;
    Ok(verify_chain_les(f, &gc, &sc, &jc, &alpha, &beta)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientSide {
    /// Coefficients `c ↦ H_q(fiber over c)` on the first category.
    First,
    /// Coefficients `d ↦ H_p(fiber over d)` on the second category.
    Second,
}

/// Dimensions of the homology of a category with coefficients in the homology of the fibers
/// of a profunctor, computed from fiber categories and the maps the actions induce between
/// them. Entry `[n]` is the degree-`n` homology with fiber degree `fiber_degree`.
pub fn fiber_coefficient_homology<F: Field>(
    f: &F,
    p: &ProfunctorData,
    side: CoefficientSide,
    fiber_degree: usize,
) -> Result<Vec<usize>, CategoryError> {
    let base = match side {
        CoefficientSide::First => p.first(),
        CoefficientSide::Second => p.second(),
    };
    require_loop_free(base)?;
    let anchor = |x: usize| match side {
        CoefficientSide::First => Anchor::First(x),
        CoefficientSide::Second => Anchor::Second(x),
    };
    let fibers: Vec<FiniteCategory> =
        (0..base.objects().len()).map(|x| fiber_category(p, anchor(x))).collect::<Result<_, _>>()?;
    let mut nerves = Vec::new();
    let mut homs = Vec::new();
    for fib in &fibers {
        require_loop_free(fib)?;
        let (n, cc) = nerve_pair(fib);
        homs.push(HomologyBasis::new(f, &cc, fiber_degree as i64));
        nerves.push((n, cc));
    }
    // map between the fibers of the two ends of a morphism of the base, in homology
    let transport = |m: usize| -> FMatrix<F::Elem> {
        let mm = base.morphism(m);
        let (from, to) = match side {
            CoefficientSide::First => (mm.target, mm.source),
            CoefficientSide::Second => (mm.source, mm.target),
        };
        let (src, dst) = (&fibers[from], &fibers[to]);
        let obj = |phi_pos: usize| {
            let phi = src_het(p, side, from, phi_pos);
            let moved = match side {
                CoefficientSide::First => p.act_left(phi, m),
                CoefficientSide::Second => p.act_right(m, phi),
            };
            dst.object_index(&p.hets()[moved].name).unwrap()
        };
        let objects: Vec<usize> = (0..src.objects().len()).map(obj).collect();
        let morphisms: Vec<usize> = src
            .morphisms()
            .iter()
            .map(|x| {
                // fiber morphisms are named "<arrow>:<from>-><to>"
                let suffix = format!(":{}->{}", src.objects()[x.source], src.objects()[x.target]);
                let arrow = x.name.strip_suffix(&suffix).expect("fiber morphism names");
                let (s2, t2) = (objects[x.source], objects[x.target]);
                dst.morphism_index(&format!("{arrow}:{}->{}", dst.objects()[s2], dst.objects()[t2]))
                    .expect("actions carry fiber morphisms")
            })
            .collect();
        let functor = FunctorData::new_unchecked(src.clone(), dst.clone(), objects, morphisms);
        let chain = functor_chain_map(&functor, &nerves[from].0, &nerves[to].0);
        let n = fiber_degree as i64;
        let mat = FMatrix::from_int(f, &chain.matrix(n, &nerves[from].1, &nerves[to].1));
        homs[from].induced(f, &mat, &homs[to])
    };

    let (nerve, _) = nerve_pair(base);
    // coefficient object of a string: its last object on the first side, its first on the second
    let anchor_of = |n: usize, s: &[usize]| -> usize {
        if n == 0 {
            return s[0];
        }
        match side {
            CoefficientSide::First => base.morphism(*s.last().unwrap()).target,
            CoefficientSide::Second => base.morphism(s[0]).source,
        }
    };
    let offsets = |n: usize| -> Vec<usize> {
        let mut off = vec![0];
        for s in nerve.strings(n) {
            off.push(off.last().unwrap() + homs[anchor_of(n, s)].dim());
        }
        off
    };
    let top = nerve.top_degree();
    let mut ranks = vec![0usize; top + 2];
    let mut dims = vec![0usize; top + 1];
    for n in 0..=top {
        let cols = offsets(n);
        dims[n] = *cols.last().unwrap();
        if n == 0 {
            continue;
        }
        let rows = offsets(n - 1);
        let mut m = FMatrix::zeros(f, *rows.last().unwrap(), *cols.last().unwrap());
        for (k, s) in nerve.strings(n).iter().enumerate() {
            for i in 0..=n {
                let Some(fc) = face(base, s, i) else { continue };
                let row = nerve.position(n - 1, &fc).unwrap();
                let sign = if i % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                // the face that changes the coefficient object transports along the dropped arrow
                let moves = match side {
                    CoefficientSide::First => i == n,
                    CoefficientSide::Second => i == 0,
                };
                let block = if moves {
                    let arrow = match side {
                        CoefficientSide::First => s[n - 1],
                        CoefficientSide::Second => s[0],
                    };
                    transport(arrow)
                } else {
                    FMatrix::identity(f, homs[anchor_of(n, s)].dim())
                };
                for r in 0..block.rows() {
                    for cix in 0..block.cols() {
                        let v = f.mul(&sign, block.get(r, cix));
                        let (ri, ci) = (rows[row] + r, cols[k] + cix);
                        let cur = m.get(ri, ci).clone();
                        m.set(ri, ci, f.add(&cur, &v));
                    }
                }
            }
        }
        ranks[n] = rank(f, &m);
    }
    Ok((0..=top).map(|n| dims[n] - ranks[n] - ranks[n + 1]).collect())
}

fn src_het(p: &ProfunctorData, side: CoefficientSide, x: usize, i: usize) -> usize {
    match side {
        CoefficientSide::First => p.hets_from(x)[i],
        CoefficientSide::Second => p.hets_to(x)[i],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, ss_converges, ss_page, Coefficients, Orientation, PrimeField, Rationals};
    use crate::category::profunctor::tests::{dowker_profunctor, empty_profunctor, single_het};
    use crate::category::{category_homology, relation_profunctor};
    use crate::relational::induced_complex_relation;
    use crate::relational::tests::running_example;

    fn betti(c: &FiniteCategory) -> Vec<usize> {
        category_homology(c, Coefficients::Integers, None).unwrap().homology.betti_numbers()
    }

    #[test]
    fn single_het_is_one_cell() {
        let dc = profunctor_double_complex(&single_het(), false).unwrap();
        assert_eq!(dc.cells().filter(|c| c.1 > 0).collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let aug = profunctor_double_complex(&single_het(), true).unwrap();
        assert_eq!(aug.cells().filter(|c| c.1 > 0).collect::<Vec<_>>(), vec![((-1, 0), 1), ((0, -1), 1), ((0, 0), 1)]);
    }

    #[test]
    fn total_complex_computes_graph_homology() {
        for p in [single_het(), empty_profunctor(), dowker_profunctor()] {
            let dc = profunctor_double_complex(&p, false).unwrap();
            let tot = homology(&dc.total_complex().unwrap(), Coefficients::Integers).unwrap();
            let (g, _, _) = graph(&p);
            let expected: Vec<usize> = if g.objects().is_empty() { Vec::new() } else { betti(&g) };
            assert_eq!(tot.betti_numbers(), expected);
        }
    }

    #[test]
    fn augmented_total_is_shifted_cograph() {
        for p in [single_het(), empty_profunctor(), dowker_profunctor()] {
            let dc = profunctor_double_complex(&p, true).unwrap();
            let tot = homology(&dc.total_complex().unwrap(), Coefficients::Integers).unwrap();
            let (j, _, _) = cograph(&p);
            let cog = category_homology(&j, Coefficients::Integers, None).unwrap().homology;
            for n in -1..=3 {
                assert_eq!(tot.betti(n), cog.betti(n + 1), "degree {n}");
            }
        }
    }

    #[test]
    fn les_is_exact() {
        for p in [single_het(), empty_profunctor(), dowker_profunctor()] {
            assert!(verify_les_profunctor(&Rationals, &p).unwrap().exact);
            assert!(verify_les_profunctor(&PrimeField::new(2).unwrap(), &p).unwrap().exact);
        }
    }

    #[test]
    fn second_page_matches_fiber_coefficients() {
        for p in [dowker_profunctor(), relation_profunctor(&induced_complex_relation(&running_example()))] {
            let dc = profunctor_double_complex(&p, false).unwrap();
            let cols = ss_page(&Rationals, &dc, 2, Orientation::ColumnsFirst).unwrap();
            let rows = ss_page(&Rationals, &dc, 2, Orientation::RowsFirst).unwrap();
            for q in 0..3 {
                let h = fiber_coefficient_homology(&Rationals, &p, CoefficientSide::First, q).unwrap();
                for (pp, &d) in h.iter().enumerate() {
                    assert_eq!(cols.dim(pp as i64, q as i64), d, "columns ({pp}, {q})");
                }
            }
            for pp in 0..3 {
                let h = fiber_coefficient_homology(&Rationals, &p, CoefficientSide::Second, pp).unwrap();
                for (q, &d) in h.iter().enumerate() {
                    assert_eq!(rows.dim(pp as i64, q as i64), d, "rows ({pp}, {q})");
                }
            }
            assert!(ss_converges(&Rationals, &dc).unwrap().converges);
        }
    }

    #[test]
    fn adjunction_page_is_concentrated() {
        // fibers of an adjunction have initial or terminal objects, so only fiber degree 0 survives
        let dc = profunctor_double_complex(&dowker_profunctor(), false).unwrap();
        let cols = ss_page(&Rationals, &dc, 2, Orientation::ColumnsFirst).unwrap();
        assert!(cols.nonzero().iter().all(|&((_, q), _)| q == 0));
        let rows = ss_page(&Rationals, &dc, 2, Orientation::RowsFirst).unwrap();
        assert!(rows.nonzero().iter().all(|&((p, _), _)| p == 0));
    }
}
