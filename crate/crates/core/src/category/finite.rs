use super::CategoryError;
use crate::simplicial::Poset;
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Finite category given by objects, morphisms, identities and a full composition table.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `(g, f) ↦ g∘f` for every composable pair (`target f == source g`).
    composition: HashMap<(usize, usize), usize>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    is_identity: Vec<bool>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.composition == other.composition
    }
}

impl FiniteCategory {
    /// Validated constructor: endpoints, composition defined exactly on composable pairs,
    /// identity laws and associativity.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self, CategoryError> {
        check_unique(&objects)?;
        check_unique(&morphisms.iter().map(|m| m.name.clone()).collect::<Vec<_>>())?;
        if let Some(m) = morphisms.iter().find(|m| m.source >= objects.len() || m.target >= objects.len()) {
            return Err(CategoryError::Shape(format!("morphism {} has an unknown endpoint", m.name)));
        }
        if identities.len() != objects.len() {
            return Err(CategoryError::Shape("one identity per object is required".into()));
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= morphisms.len() || morphisms[i].source != x || morphisms[i].target != x {
                return Err(CategoryError::IdentityLaw(objects[x].clone()));
            }
        }
        let c = Self::new_unchecked(objects, morphisms, identities, composition);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Self {
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            hom.entry((m.source, m.target)).or_default().push(i);
        }
        let mut is_identity = vec![false; morphisms.len()];
        for &i in &identities {
            is_identity[i] = true;
        }
        FiniteCategory { objects, morphisms, identities, composition, hom, is_identity }
    }

    /// Builds a category from its non-identity morphisms and their composites; identities
    /// named `1_<object>` and their composites are added.
    pub fn with_identities(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        composites: &[(usize, usize, Option<usize>)],
    ) -> Result<Self, CategoryError> {
        let n = objects.len();
        let mut all: Vec<Morphism> =
            objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("1_{o}"), source: i, target: i }).collect();
        all.extend(morphisms.into_iter().map(|(name, source, target)| Morphism { name, source, target }));
        let identities: Vec<usize> = (0..n).collect();
        let mut composition = HashMap::new();
        for (i, m) in all.iter().enumerate() {
            if m.source < n && m.target < n {
                composition.insert((m.target, i), i);
                composition.insert((i, m.source), i);
            }
        }
        for &(g, f, gf) in composites {
            // an absent composite means the identity on the common endpoint
            let gf = match gf {
                Some(x) => x + n,
                None => {
                    let s = all.get(f + n).map(|m| m.source).unwrap_or(usize::MAX);
                    if s >= n {
                        return Err(CategoryError::Shape(format!("composite index {f} out of range")));
                    }
                    s
                }
            };
            composition.insert((g + n, f + n), gf);
        }
        Self::new(objects, all, identities, composition)
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let name = |i: usize| self.morphisms[i].name.clone();
        for (&(g, f), &gf) in &self.composition {
            if g >= self.morphisms.len() || f >= self.morphisms.len() || gf >= self.morphisms.len() {
                return Err(CategoryError::Shape("composition table refers to an unknown morphism".into()));
            }
            let (mg, mf, m) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[gf]);
            if mf.target != mg.source {
                return Err(CategoryError::NotComposable(name(g), name(f)));
            }
            if m.source != mf.source || m.target != mg.target {
                return Err(CategoryError::BadComposite(name(g), name(f)));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.out_of(self.morphisms[f].target) {
                if !self.composition.contains_key(&(g, f)) {
                    return Err(CategoryError::MissingComposite(name(g), name(f)));
                }
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose(f, self.identities[m.source]) != f || self.compose(self.identities[m.target], f) != f {
                return Err(CategoryError::IdentityLaw(m.name.clone()));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.out_of(self.morphisms[f].target) {
                let gf = self.compose(g, f);
                for &h in self.out_of(self.morphisms[g].target) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(CategoryError::Associativity(name(h), name(g), name(f)));
                    }
                }
            }
        }
        Ok(())
    }

    /// All morphisms with the given source, identities included.
    fn out_of(&self, x: usize) -> impl Iterator<Item = &usize> + '_ {
        (0..self.objects.len()).flat_map(move |y| self.hom(x, y).iter())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, i: usize) -> &Morphism {
        &self.morphisms[i]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.is_identity[f]
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.hom.get(&(x, y)).map_or(&[], |v| v)
    }

    /// `g∘f`; panics when the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.composition[&(g, f)]
    }

    pub fn composition(&self) -> &HashMap<(usize, usize), usize> {
        &self.composition
    }

    /// Non-identity morphisms out of each object.
    pub fn outgoing(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            if !self.is_identity[i] {
                out[m.source].push(i);
            }
        }
        out
    }

    /// An object receiving exactly one morphism from every object.
    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&t| (0..self.objects.len()).all(|x| self.hom(x, t).len() == 1))
    }

    /// An object sending exactly one morphism to every object.
    pub fn initial_object(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&t| (0..self.objects.len()).all(|x| self.hom(t, x).len() == 1))
    }

    /// Disjoint union; object and morphism names of the second summand are kept unless they
    /// collide, in which case both are prefixed.
    pub fn disjoint_union(&self, other: &FiniteCategory) -> FiniteCategory {
        let (pa, pb) = disjoint_prefixes(&self.objects, &other.objects);
        let n = self.objects.len();
        let m = self.morphisms.len();
        let mut objects: Vec<String> = self.objects.iter().map(|o| format!("{pa}{o}")).collect();
        objects.extend(other.objects.iter().map(|o| format!("{pb}{o}")));
        let mut morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|x| Morphism { name: format!("{pa}{}", x.name), source: x.source, target: x.target })
            .collect();
        morphisms.extend(other.morphisms.iter().map(|x| Morphism {
            name: format!("{pb}{}", x.name),
            source: x.source + n,
            target: x.target + n,
        }));
        let mut identities = self.identities.clone();
        identities.extend(other.identities.iter().map(|i| i + m));
        let mut composition = self.composition.clone();
        composition.extend(other.composition.iter().map(|(&(g, f), &gf)| ((g + m, f + m), gf + m)));
        FiniteCategory::new_unchecked(objects, morphisms, identities, composition)
    }
}

pub(crate) fn disjoint_prefixes(a: &[String], b: &[String]) -> (&'static str, &'static str) {
    let sa: HashSet<&String> = a.iter().collect();
    if b.iter().any(|x| sa.contains(x)) {
        ("C:", "D:")
    } else {
        ("", "")
    }
}

fn check_unique(labels: &[String]) -> Result<(), CategoryError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(CategoryError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// One morphism `x -> y` for every `x <= y`.
pub fn poset_as_category(p: &Poset) -> FiniteCategory {
    let n = p.len();
    let mut morphisms: Vec<Morphism> =
        (0..n).map(|i| Morphism { name: format!("1_{}", p.label(i)), source: i, target: i }).collect();
    let mut index: HashMap<(usize, usize), usize> = (0..n).map(|i| ((i, i), i)).collect();
    for i in 0..n {
        for j in 0..n {
            if p.lt(i, j) {
                index.insert((i, j), morphisms.len());
                morphisms.push(Morphism { name: format!("{}->{}", p.label(i), p.label(j)), source: i, target: j });
            }
        }
    }
    let mut composition = HashMap::new();
    for (&(a, b), &f) in &index {
        for c in 0..n {
            if let Some(&g) = index.get(&(b, c)) {
                composition.insert((g, f), index[&(a, c)]);
            }
        }
    }
    FiniteCategory::new_unchecked(p.labels().to_vec(), morphisms, (0..n).collect(), composition)
}

/// Why a category fails to be loop-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopFreeVerdict {
    LoopFree,
    NonIdentityEndomorphism(String),
    TwoWay(String, String),
}

impl LoopFreeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LoopFreeVerdict::LoopFree)
    }
}

pub fn loop_free_check(c: &FiniteCategory) -> LoopFreeVerdict {
    for (i, m) in c.morphisms.iter().enumerate() {
        if m.source == m.target && !c.is_identity(i) {
            return LoopFreeVerdict::NonIdentityEndomorphism(m.name.clone());
        }
    }
    let n = c.objects.len();
    for a in 0..n {
        for b in a + 1..n {
            if !c.hom(a, b).is_empty() && !c.hom(b, a).is_empty() {
                return LoopFreeVerdict::TwoWay(c.objects[a].clone(), c.objects[b].clone());
            }
        }
    }
    LoopFreeVerdict::LoopFree
}

/// Functor between finite categories.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctorData {
    source: FiniteCategory,
    target: FiniteCategory,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl FunctorData {
    pub fn new(
        source: FiniteCategory,
        target: FiniteCategory,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self, CategoryError> {
        if objects.len() != source.objects.len()
            || morphisms.len() != source.morphisms.len()
            || objects.iter().any(|&o| o >= target.objects.len())
            || morphisms.iter().any(|&m| m >= target.morphisms.len())
        {
            return Err(CategoryError::Shape("functor assignment does not match the categories".into()));
        }
        let f = FunctorData { source, target, objects, morphisms };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: FiniteCategory,
        target: FiniteCategory,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Self {
        FunctorData { source, target, objects, morphisms }
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let (s, t) = (&self.source, &self.target);
        for (i, m) in s.morphisms.iter().enumerate() {
            let img = &t.morphisms[self.morphisms[i]];
            if img.source != self.objects[m.source] || img.target != self.objects[m.target] {
                return Err(CategoryError::FunctorLaw(m.name.clone()));
            }
        }
        for (x, &i) in s.identities.iter().enumerate() {
            if self.morphisms[i] != t.identities[self.objects[x]] {
                return Err(CategoryError::FunctorLaw(s.morphisms[i].name.clone()));
            }
        }
        for (&(g, f), &gf) in &s.composition {
            if t.compose(self.morphisms[g], self.morphisms[f]) != self.morphisms[gf] {
                return Err(CategoryError::FunctorLaw(format!("{}∘{}", s.morphisms[g].name, s.morphisms[f].name)));
            }
        }
        Ok(())
    }

    pub fn identity(c: &FiniteCategory) -> Self {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.objects.len()).collect(),
            morphisms: (0..c.morphisms.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommaSide {
    /// Objects `(c, h: F c -> d)`.
    Over,
    /// Objects `(c, h: d -> F c)`.
    Under,
}

/// Comma category of a functor over or under an object `d` of its target.
pub fn comma_category(f: &FunctorData, d: usize, side: CommaSide) -> Result<FiniteCategory, CategoryError> {
    let (s, t) = (&f.source, &f.target);
    if d >= t.objects.len() {
        return Err(CategoryError::UnknownObject(d.to_string()));
    }
    let mut objects: Vec<(usize, usize)> = Vec::new();
    for c in 0..s.objects.len() {
        let hs = match side {
            CommaSide::Over => t.hom(f.objects[c], d),
            CommaSide::Under => t.hom(d, f.objects[c]),
        };
        objects.extend(hs.iter().map(|&h| (c, h)));
    }
    let names: Vec<String> =
        objects.iter().map(|&(c, h)| format!("({},{})", s.objects[c], t.morphisms[h].name)).collect();
    let mut morphisms = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (a, &(c, h)) in objects.iter().enumerate() {
        for (b, &(c2, h2)) in objects.iter().enumerate() {
            for &u in s.hom(c, c2) {
                let fu = f.morphisms[u];
                let ok = match side {
                    CommaSide::Over => t.compose(h2, fu) == h,
                    CommaSide::Under => t.compose(fu, h) == h2,
                };
                if ok {
                    index.insert((a, b, u), morphisms.len());
                    morphisms.push((a, b, u));
                }
            }
        }
    }
    let mut composition = HashMap::new();
    for (i, &(a, b, u)) in morphisms.iter().enumerate() {
        for (j, &(b2, c, v)) in morphisms.iter().enumerate() {
            if b2 == b {
                composition.insert((j, i), index[&(a, c, s.compose(v, u))]);
            }
        }
    }
    let identities = (0..objects.len()).map(|a| index[&(a, a, s.identities[objects[a].0])]).collect();
    let morphisms = morphisms
        .iter()
        .map(|&(a, b, u)| Morphism { name: format!("{}:{}->{}", s.morphisms[u].name, names[a], names[b]), source: a, target: b })
        .collect();
    Ok(FiniteCategory::new_unchecked(names, morphisms, identities, composition))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(labels, &pairs).unwrap()
    }

    #[test]
    fn interval_category() {
        let c = poset_as_category(&chain(2));
        assert_eq!((c.objects().len(), c.morphisms().len()), (2, 3));
        c.validate().unwrap();
        assert!(loop_free_check(&c).holds());
    }

    #[test]
    fn antichain_is_discrete() {
        let p = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[]).unwrap();
        let c = poset_as_category(&p);
        assert_eq!(c.morphisms().len(), 3);
        assert!((0..3).all(|i| c.is_identity(i)));
    }

    #[test]
    fn face_poset_of_edge() {
        let k = crate::simplicial::SimplicialComplex::from_facets([vec!["a", "b"]]);
        let c = poset_as_category(&crate::simplicial::face_poset(&k));
        assert_eq!((c.objects().len(), c.morphisms().len()), (3, 5));
        c.validate().unwrap();
    }

    #[test]
    fn monoid_is_not_loop_free() {
        // one object, e with e∘e = e
        let c = FiniteCategory::with_identities(vec!["*".into()], vec![("e".into(), 0, 0)], &[(0, 0, Some(0))]).unwrap();
        assert_eq!(loop_free_check(&c), LoopFreeVerdict::NonIdentityEndomorphism("e".into()));
    }

    #[test]
    fn missing_composite_rejected() {
        let err = FiniteCategory::with_identities(
            vec!["a".into(), "b".into(), "c".into()],
            vec![("f".into(), 0, 1), ("g".into(), 1, 2)],
            &[],
        )
        .unwrap_err();
        assert_eq!(err, CategoryError::MissingComposite("g".into(), "f".into()));
    }

    #[test]
    fn non_associative_rejected() {
        // two parallel a -> c composites chosen inconsistently
        let objects: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let morphisms = vec![
            ("f".into(), 0, 1),
            ("g".into(), 1, 2),
            ("h".into(), 2, 3),
            ("gf".into(), 0, 2),
            ("hg".into(), 1, 3),
            ("x".into(), 0, 3),
            ("y".into(), 0, 3),
        ];
        let composites = [(1, 0, Some(3)), (2, 1, Some(4)), (2, 3, Some(5)), (4, 0, Some(6))];
        let err = FiniteCategory::with_identities(objects, morphisms, &composites).unwrap_err();
        assert!(matches!(err, CategoryError::Associativity(..)));
    }

    #[test]
    fn slice_of_identity_has_terminal_object() {
        let c = poset_as_category(&chain(3));
        let id = FunctorData::identity(&c);
        let slice = comma_category(&id, 1, CommaSide::Over).unwrap();
        assert_eq!(slice.objects().len(), 2);
        let t = slice.terminal_object().unwrap();
        assert_eq!(slice.objects()[t], "(p1,1_p1)");
    }

    #[test]
    fn empty_functor_gives_empty_comma() {
        let empty = poset_as_category(&Poset::from_relations(vec![], &[]).unwrap());
        let c = poset_as_category(&chain(1));
        let f = FunctorData::new(empty, c, vec![], vec![]).unwrap();
        assert!(comma_category(&f, 0, CommaSide::Over).unwrap().objects().is_empty());
    }
}
