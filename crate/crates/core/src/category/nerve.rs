use super::finite::{loop_free_check, FiniteCategory, FunctorData};
use super::CategoryError;
use crate::algebra::{homology, ChainComplex, ChainMap, Coefficients, HomologyResult, IntMatrix};
use std::collections::HashMap;

/// Nondegenerate strings of a finite category by degree. Degree 0 holds one-element lists
/// of objects; degree `n > 0` holds lists of `n` composable non-identity morphisms.
#[derive(Clone, Debug)]
pub struct NerveStrings {
    strings: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl NerveStrings {
    /// All strings, or only those of degree at most `max_degree`.
    pub fn new(c: &FiniteCategory, max_degree: Option<usize>) -> Self {
        let out = c.outgoing();
        let mut strings: Vec<Vec<Vec<usize>>> = vec![(0..c.objects().len()).map(|x| vec![x]).collect()];
        let mut frontier: Vec<Vec<usize>> = (0..c.morphisms().len()).filter(|&f| !c.is_identity(f)).map(|f| vec![f]).collect();
        while !frontier.is_empty() && max_degree.map_or(true, |m| strings.len() <= m) {
            let next: Vec<Vec<usize>> = frontier
                .iter()
                .flat_map(|s| {
                    let end = c.morphism(*s.last().unwrap()).target;
                    out[end].iter().map(move |&g| {
                        let mut t = s.clone();
                        t.push(g);
                        t
                    })
                })
                .collect();
            strings.push(frontier);
            frontier = next;
        }
        let index = strings.iter().map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        NerveStrings { strings, index }
    }

    pub fn top_degree(&self) -> usize {
        self.strings.len() - 1
    }

    pub fn strings(&self, n: usize) -> &[Vec<usize>] {
        self.strings.get(n).map_or(&[], |v| v)
    }

    pub fn count(&self, n: usize) -> usize {
        self.strings(n).len()
    }

    pub fn position(&self, n: usize, s: &[usize]) -> Option<usize> {
        self.index.get(n)?.get(s).copied()
    }

    pub fn label(&self, c: &FiniteCategory, n: usize, i: usize) -> String {
        string_label(c, n, &self.strings[n][i])
    }
}

pub(crate) fn string_label(c: &FiniteCategory, n: usize, s: &[usize]) -> String {
    if n == 0 {
        return c.objects()[s[0]].clone();
    }
    let mut out = c.objects()[c.morphism(s[0]).source].clone();
    for &f in s {
        out.push_str(&format!("-{}->{}", c.morphism(f).name, c.objects()[c.morphism(f).target]));
    }
    out
}

/// Face `d_i` of a degree-`n` string (removing the `i`-th object), or `None` when it is
/// degenerate. Degree-1 faces are returned as one-element object lists.
pub(crate) fn face(c: &FiniteCategory, s: &[usize], i: usize) -> Option<Vec<usize>> {
    let n = s.len();
    if n == 1 {
        let m = c.morphism(s[0]);
        return Some(vec![if i == 0 { m.target } else { m.source }]);
    }
    if i == 0 {
        return Some(s[1..].to_vec());
    }
    if i == n {
        return Some(s[..n - 1].to_vec());
    }
    let g = c.compose(s[i], s[i - 1]);
    if c.is_identity(g) {
        return None;
    }
    let mut t = s[..i - 1].to_vec();
    t.push(g);
    t.extend_from_slice(&s[i + 1..]);
    Some(t)
}

fn boundary_matrix(c: &FiniteCategory, nerve: &NerveStrings, n: usize) -> IntMatrix {
    let columns = nerve
        .strings(n)
        .iter()
        .map(|s| {
            (0..=n)
                .filter_map(|i| {
                    let f = face(c, s, i)?;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    Some((nerve.position(n - 1, &f).expect("faces of strings are strings"), sign))
                })
                .collect()
        })
        .collect();
    IntMatrix::from_small_columns(nerve.count(n - 1), columns)
}

fn chain_complex_of(c: &FiniteCategory, nerve: &NerveStrings) -> ChainComplex {
    if c.objects().is_empty() {
        return ChainComplex::empty();
    }
    let top = nerve.top_degree();
    let labels = (0..=top).map(|n| (0..nerve.count(n)).map(|i| nerve.label(c, n, i)).collect()).collect();
    let boundaries = (0..=top)
        .map(|n| if n == 0 { IntMatrix::zeros(0, nerve.count(0)) } else { boundary_matrix(c, nerve, n) })
        .collect();
    ChainComplex::new_unchecked(0, labels, boundaries)
}

/// Normalized nerve chain complex of a loop-free category.
pub fn nerve_chain_complex(c: &FiniteCategory) -> Result<ChainComplex, CategoryError> {
    let verdict = loop_free_check(c);
    if !verdict.holds() {
        return Err(CategoryError::NotLoopFree(verdict));
    }
    Ok(chain_complex_of(c, &NerveStrings::new(c, None)))
}

/// Category homology with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryHomology {
    pub homology: HomologyResult,
    /// Set when the nerve was cut off at a degree bound; only degrees up to the bound are
    /// reported and the higher ones are unknown.
    pub approximate: bool,
}

/// Homology of the normalized nerve. Categories with loops need `max_degree`, in which case
/// degrees up to the bound are computed from strings of length at most `max_degree + 1`.
pub fn category_homology(
    c: &FiniteCategory,
    coeff: Coefficients,
    max_degree: Option<usize>,
) -> Result<CategoryHomology, CategoryError> {
    let verdict = loop_free_check(c);
    match (verdict.holds(), max_degree) {
        (true, _) => {
            let mut h = homology(&chain_complex_of(c, &NerveStrings::new(c, None)), coeff)?;
            if let Some(m) = max_degree {
                h.degrees.retain(|d| d.degree <= m as i64);
            }
            Ok(CategoryHomology { homology: h, approximate: false })
        }
        (false, None) => Err(CategoryError::NotLoopFree(verdict)),
        (false, Some(m)) => {
            let nerve = NerveStrings::new(c, Some(m + 1));
            let mut h = homology(&chain_complex_of(c, &nerve), coeff)?;
            h.degrees.retain(|d| d.degree <= m as i64);
            Ok(CategoryHomology { homology: h, approximate: true })
        }
    }
}

/// Chain map induced by a functor on normalized nerves; strings whose image contains an
/// identity go to zero.
pub fn functor_chain_map(f: &FunctorData, src: &NerveStrings, dst: &NerveStrings) -> ChainMap {
    let tgt = f.target();
    let top = src.top_degree();
    let matrices = (0..=top)
        .map(|n| {
            let columns = src
                .strings(n)
                .iter()
                .map(|s| {
                    if n == 0 {
                        return vec![(dst.position(0, &[f.object(s[0])]).unwrap(), 1)];
                    }
                    let img: Vec<usize> = s.iter().map(|&m| f.morphism(m)).collect();
                    if img.iter().any(|&m| tgt.is_identity(m)) {
                        return Vec::new();
                    }
                    vec![(dst.position(n, &img).expect("image strings are strings"), 1)]
                })
                .collect();
            IntMatrix::from_small_columns(dst.count(n), columns)
        })
        .collect();
    ChainMap { min_degree: 0, matrices }
}

/// Nerve strings and normalized chain complex together, for callers that need both.
pub fn nerve_with_strings(c: &FiniteCategory) -> Result<(NerveStrings, ChainComplex), CategoryError> {
    let verdict = loop_free_check(c);
    if !verdict.holds() {
        return Err(CategoryError::NotLoopFree(verdict));
    }
    let nerve = NerveStrings::new(c, None);
    let cc = chain_complex_of(c, &nerve);
    Ok((nerve, cc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::poset_as_category;
    use crate::simplicial::{face_poset, order_complex, Poset, SimplicialComplex};

    fn betti(c: &FiniteCategory) -> Vec<usize> {
        category_homology(c, Coefficients::Integers, None).unwrap().homology.betti_numbers()
    }

    #[test]
    fn terminal_and_interval() {
        let pt = poset_as_category(&Poset::from_relations(vec!["*".into()], &[]).unwrap());
        assert_eq!(betti(&pt), vec![1]);
        let interval = poset_as_category(&Poset::from_relations(vec!["0".into(), "1".into()], &[(0, 1)]).unwrap());
        assert_eq!(betti(&interval), vec![1]);
    }

    #[test]
    fn hollow_triangle_face_poset() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]);
        let p = face_poset(&k);
        let c = poset_as_category(&p);
        assert_eq!(betti(&c), vec![1, 1]);
        let direct = homology(&order_complex(&p).chain_complex(), Coefficients::Integers).unwrap();
        assert_eq!(category_homology(&c, Coefficients::Integers, None).unwrap().homology, direct);
    }

    #[test]
    fn discrete_category() {
        let p = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[]).unwrap();
        assert_eq!(betti(&poset_as_category(&p)), vec![3]);
    }

    #[test]
    fn monoid_needs_a_bound() {
        // idempotent e: the nerve is contractible
        let c = FiniteCategory::with_identities(vec!["*".into()], vec![("e".into(), 0, 0)], &[(0, 0, Some(0))]).unwrap();
        assert!(matches!(category_homology(&c, Coefficients::Integers, None), Err(CategoryError::NotLoopFree(_))));
        let h = category_homology(&c, Coefficients::Integers, Some(3)).unwrap();
        assert!(h.approximate);
        assert_eq!(h.homology.betti_numbers(), vec![1]);
        assert_eq!(h.homology.degrees.len(), 4);
    }

    #[test]
    fn group_of_order_two_has_two_torsion() {
        // s∘s = 1; H_1 = Z/2, H_2 = 0, H_3 = Z/2
        let c = FiniteCategory::with_identities(vec!["*".into()], vec![("s".into(), 0, 0)], &[(0, 0, None)]).unwrap();
        let h = category_homology(&c, Coefficients::Integers, Some(3)).unwrap().homology;
        assert_eq!(h.betti_numbers(), vec![1]);
        assert_eq!(h.torsion(1), &[2.into()]);
        assert!(h.torsion(2).is_empty());
        assert_eq!(h.torsion(3), &[2.into()]);
    }
}
