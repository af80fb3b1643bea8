use super::finite::{disjoint_prefixes, poset_as_category, FiniteCategory, FunctorData, Morphism};
use super::CategoryError;
use crate::relational::{relational_join_poset, ComplexRelation};
use crate::simplicial::{face_poset, galois_check, Poset, PosetMap};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heteromorphism {
    pub name: String,
    /// Object of the first category.
    pub source: usize,
    /// Object of the second category.
    pub target: usize,
}

/// Profunctor `C^op × D -> Set` given by its heteromorphisms and both actions.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfunctorData {
    c: FiniteCategory,
    d: FiniteCategory,
    hets: Vec<Heteromorphism>,
    /// `(φ, f) ↦ φ∘f` for `f: c' -> source φ`.
    left: HashMap<(usize, usize), usize>,
    /// `(g, φ) ↦ g∘φ` for `g: target φ -> d'`.
    right: HashMap<(usize, usize), usize>,
}

impl ProfunctorData {
    pub fn new(
        c: FiniteCategory,
        d: FiniteCategory,
        hets: Vec<Heteromorphism>,
        left: HashMap<(usize, usize), usize>,
        right: HashMap<(usize, usize), usize>,
    ) -> Result<Self, CategoryError> {
        if let Some(h) = hets.iter().find(|h| h.source >= c.objects().len() || h.target >= d.objects().len()) {
            return Err(CategoryError::Shape(format!("heteromorphism {} has an unknown endpoint", h.name)));
        }
        let mut seen = BTreeSet::new();
        for h in &hets {
            if !seen.insert(&h.name) {
                return Err(CategoryError::DuplicateLabel(h.name.clone()));
            }
        }
        let p = ProfunctorData { c, d, hets, left, right };
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn new_unchecked(
        c: FiniteCategory,
        d: FiniteCategory,
        hets: Vec<Heteromorphism>,
        left: HashMap<(usize, usize), usize>,
        right: HashMap<(usize, usize), usize>,
    ) -> Self {
        ProfunctorData { c, d, hets, left, right }
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let (c, d) = (&self.c, &self.d);
        let law = |what: &str, phi: usize| CategoryError::ActionLaw(format!("{what} at {}", self.hets[phi].name));
        for (phi, h) in self.hets.iter().enumerate() {
            for x in 0..c.objects().len() {
                for &f in c.hom(x, h.source) {
                    let r = *self.left.get(&(phi, f)).ok_or_else(|| law("missing left action", phi))?;
                    if r >= self.hets.len() || self.hets[r].source != x || self.hets[r].target != h.target {
                        return Err(law("left action endpoints", phi));
                    }
                }
            }
            for y in 0..d.objects().len() {
                for &g in d.hom(h.target, y) {
                    let r = *self.right.get(&(g, phi)).ok_or_else(|| law("missing right action", phi))?;
                    if r >= self.hets.len() || self.hets[r].source != h.source || self.hets[r].target != y {
                        return Err(law("right action endpoints", phi));
                    }
                }
            }
            if self.act_left(phi, c.identity(h.source)) != phi || self.act_right(d.identity(h.target), phi) != phi {
                return Err(law("identity action", phi));
            }
        }
        if self.left.len() != self.left_pairs() || self.right.len() != self.right_pairs() {
            return Err(CategoryError::ActionLaw("action defined on incompatible pairs".into()));
        }
        for phi in 0..self.hets.len() {
            let h = &self.hets[phi];
            for x in 0..c.objects().len() {
                for &f in c.hom(x, h.source) {
                    for w in 0..c.objects().len() {
                        for &f2 in c.hom(w, x) {
                            if self.act_left(self.act_left(phi, f), f2) != self.act_left(phi, c.compose(f, f2)) {
                                return Err(law("left action composition", phi));
                            }
                        }
                    }
                    for y in 0..d.objects().len() {
                        for &g in d.hom(h.target, y) {
                            if self.act_left(self.act_right(g, phi), f) != self.act_right(g, self.act_left(phi, f)) {
                                return Err(law("actions do not commute", phi));
                            }
                        }
                    }
                }
            }
            for y in 0..d.objects().len() {
                for &g in d.hom(h.target, y) {
                    for z in 0..d.objects().len() {
                        for &g2 in d.hom(y, z) {
                            if self.act_right(g2, self.act_right(g, phi)) != self.act_right(d.compose(g2, g), phi) {
                                return Err(law("right action composition", phi));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn left_pairs(&self) -> usize {
        self.hets.iter().map(|h| (0..self.c.objects().len()).map(|x| self.c.hom(x, h.source).len()).sum::<usize>()).sum()
    }

    fn right_pairs(&self) -> usize {
        self.hets.iter().map(|h| (0..self.d.objects().len()).map(|y| self.d.hom(h.target, y).len()).sum::<usize>()).sum()
    }

    pub fn first(&self) -> &FiniteCategory {
        &self.c
    }

    pub fn second(&self) -> &FiniteCategory {
        &self.d
    }

    pub fn hets(&self) -> &[Heteromorphism] {
        &self.hets
    }

    /// `φ∘f`.
    pub fn act_left(&self, phi: usize, f: usize) -> usize {
        self.left[&(phi, f)]
    }

    /// `g∘φ`.
    pub fn act_right(&self, g: usize, phi: usize) -> usize {
        self.right[&(g, phi)]
    }

    pub fn hets_from(&self, c: usize) -> Vec<usize> {
        (0..self.hets.len()).filter(|&i| self.hets[i].source == c).collect()
    }

    pub fn hets_to(&self, d: usize) -> Vec<usize> {
        (0..self.hets.len()).filter(|&i| self.hets[i].target == d).collect()
    }
}

/// Adjoint pair `L: C -> D`, `U: D -> C` with the hom bijection `hom_D(Lc, d) -> hom_C(c, Ud)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjunctionData {
    left: FunctorData,
    right: FunctorData,
    /// `(c, h)` with `h: Lc -> d` goes to a morphism `c -> Ud`.
    phi: HashMap<(usize, usize), usize>,
}

impl AdjunctionData {
    pub fn new(left: FunctorData, right: FunctorData, phi: HashMap<(usize, usize), usize>) -> Result<Self, CategoryError> {
        if left.source() != right.target() || left.target() != right.source() {
            return Err(CategoryError::Shape("adjoint functors do not run between the same categories".into()));
        }
        let a = AdjunctionData { left, right, phi };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let (c, d) = (self.left.source(), self.left.target());
        for x in 0..c.objects().len() {
            for y in 0..d.objects().len() {
                let lx = self.left.object(x);
                let uy = self.right.object(y);
                let mut image = BTreeSet::new();
                for &h in d.hom(lx, y) {
                    let m = *self.phi.get(&(x, h)).ok_or_else(|| CategoryError::NotBijective(c.objects()[x].clone(), d.objects()[y].clone()))?;
                    let mm = c.morphism(m);
                    if mm.source != x || mm.target != uy {
                        return Err(CategoryError::NotBijective(c.objects()[x].clone(), d.objects()[y].clone()));
                    }
                    image.insert(m);
                }
                if image.len() != c.hom(x, uy).len() || image.len() != d.hom(lx, y).len() {
                    return Err(CategoryError::NotBijective(c.objects()[x].clone(), d.objects()[y].clone()));
                }
            }
        }
        // naturality: Φ(g∘h∘Lf) = Ug∘Φ(h)∘f
        for (&(x, h), &m) in &self.phi {
            let y = d.morphism(h).target;
            for w in 0..c.objects().len() {
                for &f in c.hom(w, x) {
                    for z in 0..d.objects().len() {
                        for &g in d.hom(y, z) {
                            let lhs = self.phi[&(w, d.compose(g, d.compose(h, self.left.morphism(f))))];
                            let rhs = c.compose(self.right.morphism(g), c.compose(m, f));
                            if lhs != rhs {
                                return Err(CategoryError::NotNatural(c.morphism(f).name.clone(), d.morphism(g).name.clone()));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn left(&self) -> &FunctorData {
        &self.left
    }

    pub fn right(&self) -> &FunctorData {
        &self.right
    }
}

fn poset_functor(m: &PosetMap, src: &FiniteCategory, dst: &FiniteCategory) -> FunctorData {
    let objects: Vec<usize> = m.assignment().to_vec();
    let morphisms = src
        .morphisms()
        .iter()
        .map(|x| dst.hom(objects[x.source], objects[x.target])[0])
        .collect();
    FunctorData::new_unchecked(src.clone(), dst.clone(), objects, morphisms)
}

/// The posetal adjunction of a Galois connection `l: P -> Q`, `u: Q -> P`.
pub fn adjunction_from_galois(l: &PosetMap, u: &PosetMap) -> Result<AdjunctionData, CategoryError> {
    let verdict = galois_check(l, u)?;
    if !verdict.holds() {
        return Err(CategoryError::NotGalois(format!("{verdict:?}")));
    }
    let c = poset_as_category(l.source());
    let d = poset_as_category(l.target());
    let left = poset_functor(l, &c, &d);
    let right = poset_functor(u, &d, &c);
    let mut phi = HashMap::new();
    for x in 0..c.objects().len() {
        for y in 0..d.objects().len() {
            if let Some(&h) = d.hom(left.object(x), y).first() {
                phi.insert((x, h), c.hom(x, right.object(y))[0]);
            }
        }
    }
    AdjunctionData::new(left, right, phi)
}

/// Heteromorphisms `c ⇝ d` are the morphisms `Lc -> d`.
pub fn profunctor_from_adjunction(a: &AdjunctionData) -> ProfunctorData {
    let (c, d) = (a.left.source().clone(), a.left.target().clone());
    let mut hets = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for x in 0..c.objects().len() {
        for y in 0..d.objects().len() {
            for &h in d.hom(a.left.object(x), y) {
                index.insert((x, h), hets.len());
                hets.push(Heteromorphism {
                    name: format!("{}:{}", c.objects()[x], d.morphism(h).name),
                    source: x,
                    target: y,
                });
            }
        }
    }
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for (&(x, h), &phi) in &index {
        let y = d.morphism(h).target;
        for w in 0..c.objects().len() {
            for &f in c.hom(w, x) {
                left.insert((phi, f), index[&(w, d.compose(h, a.left.morphism(f)))]);
            }
        }
        for z in 0..d.objects().len() {
            for &g in d.hom(y, z) {
                right.insert((g, phi), index[&(x, d.compose(g, h))]);
            }
        }
    }
    ProfunctorData::new_unchecked(c, d, hets, left, right)
}

/// Profunctor between the poset categories of `P` and `Q^op` with one heteromorphism per
/// related pair; `rel` must be downward closed in `P × Q`.
pub fn posetal_profunctor(p: &Poset, q: &Poset, rel: &BTreeSet<(usize, usize)>) -> Result<ProfunctorData, CategoryError> {
    // validates downward closure
    relational_join_poset(p, q, rel)?;
    let c = poset_as_category(p);
    let d = poset_as_category(&q.opposite());
    let mut hets = Vec::new();
    let mut index = HashMap::new();
    for &(a, b) in rel {
        index.insert((a, b), hets.len());
        hets.push(Heteromorphism { name: format!("{}~{}", p.label(a), q.label(b)), source: a, target: b });
    }
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for (&(a, b), &phi) in &index {
        for w in 0..p.len() {
            if let Some(&f) = c.hom(w, a).first() {
                left.insert((phi, f), index[&(w, b)]);
            }
        }
        for z in 0..q.len() {
            if let Some(&g) = d.hom(b, z).first() {
                right.insert((g, phi), index[&(a, z)]);
            }
        }
    }
    Ok(ProfunctorData::new_unchecked(c, d, hets, left, right))
}

/// Posetal profunctor of a complex relation, read on the two face posets.
pub fn relation_profunctor(cr: &ComplexRelation) -> ProfunctorData {
    let (k, m) = (cr.source(), cr.target());
    let rel = cr.pairs().iter().map(|&(s, t)| (k.flat_index(s), m.flat_index(t))).collect();
    posetal_profunctor(&face_poset(k), &face_poset(m), &rel).expect("complex relations are downward closed")
}

/// Collage of a profunctor with its two inclusion functors.
pub fn cograph(p: &ProfunctorData) -> (FiniteCategory, FunctorData, FunctorData) {
    let (c, d) = (&p.c, &p.d);
    let (pc, pd) = disjoint_prefixes(c.objects(), d.objects());
    let (nc, nd) = (c.objects().len(), d.objects().len());
    let (mc, md) = (c.morphisms().len(), d.morphisms().len());
    let mut objects: Vec<String> = c.objects().iter().map(|o| format!("{pc}{o}")).collect();
    objects.extend(d.objects().iter().map(|o| format!("{pd}{o}")));
    let mut morphisms: Vec<Morphism> = c
        .morphisms()
        .iter()
        .map(|m| Morphism { name: format!("{pc}{}", m.name), source: m.source, target: m.target })
        .collect();
    morphisms.extend(d.morphisms().iter().map(|m| Morphism {
        name: format!("{pd}{}", m.name),
        source: m.source + nc,
        target: m.target + nc,
    }));
    morphisms.extend(p.hets.iter().map(|h| Morphism { name: h.name.clone(), source: h.source, target: h.target + nc }));
    let het = |phi: usize| mc + md + phi;
    let mut composition = HashMap::new();
    for (&(g, f), &gf) in c.composition() {
        composition.insert((g, f), gf);
    }
    for (&(g, f), &gf) in d.composition() {
        composition.insert((g + mc, f + mc), gf + mc);
    }
    for (&(phi, f), &r) in &p.left {
        composition.insert((het(phi), f), het(r));
    }
    for (&(g, phi), &r) in &p.right {
        composition.insert((g + mc, het(phi)), het(r));
    }
    let mut identities: Vec<usize> = (0..nc).map(|x| c.identity(x)).collect();
    identities.extend((0..nd).map(|y| d.identity(y) + mc));
    let j = FiniteCategory::new_unchecked(objects, morphisms, identities, composition);
    let iota_c = FunctorData::new_unchecked(c.clone(), j.clone(), (0..nc).collect(), (0..mc).collect());
    let iota_d = FunctorData::new_unchecked(d.clone(), j.clone(), (nc..nc + nd).collect(), (mc..mc + md).collect());
    (j, iota_c, iota_d)
}

/// Category of heteromorphisms: a morphism `φ -> φ'` is a pair `(f, g)` with `g∘φ = φ'∘f`.
/// Returned with the two projections.
pub fn graph(p: &ProfunctorData) -> (FiniteCategory, FunctorData, FunctorData) {
    let (c, d) = (&p.c, &p.d);
    let n = p.hets.len();
    let mut morphisms: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let (ha, hb) = (&p.hets[a], &p.hets[b]);
            for &f in c.hom(ha.source, hb.source) {
                let pulled = p.act_left(b, f);
                for &g in d.hom(ha.target, hb.target) {
                    if p.act_right(g, a) == pulled {
                        index.insert((a, b, f, g), morphisms.len());
                        morphisms.push((a, b, f, g));
                    }
                }
            }
        }
    }
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, m) in morphisms.iter().enumerate() {
        out_of[m.0].push(i);
    }
    let mut composition = HashMap::new();
    for (i, &(a, b, f, g)) in morphisms.iter().enumerate() {
        for &j in &out_of[b] {
            let (_, e, f2, g2) = morphisms[j];
            composition.insert((j, i), index[&(a, e, c.compose(f2, f), d.compose(g2, g))]);
        }
    }
    let identities: Vec<usize> = (0..n)
        .map(|a| index[&(a, a, c.identity(p.hets[a].source), d.identity(p.hets[a].target))])
        .collect();
    let named: Vec<Morphism> = morphisms
        .iter()
        .map(|&(a, b, f, g)| Morphism {
            name: format!("({},{}):{}->{}", c.morphism(f).name, d.morphism(g).name, p.hets[a].name, p.hets[b].name),
            source: a,
            target: b,
        })
        .collect();
    let objects = p.hets.iter().map(|h| h.name.clone()).collect();
    let g = FiniteCategory::new_unchecked(objects, named, identities, composition);
    let rho_c = FunctorData::new_unchecked(
        g.clone(),
        c.clone(),
        p.hets.iter().map(|h| h.source).collect(),
        morphisms.iter().map(|m| m.2).collect(),
    );
    let rho_d = FunctorData::new_unchecked(
        g.clone(),
        d.clone(),
        p.hets.iter().map(|h| h.target).collect(),
        morphisms.iter().map(|m| m.3).collect(),
    );
    (g, rho_c, rho_d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftDirection {
    /// Arrows `b -> u(e)` lift to arrows into `e`.
    Fibration,
    /// Arrows `u(e) -> b` lift to arrows out of `e`.
    Opfibration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibrationVerdict {
    Holds,
    NoLift { object: String, morphism: String },
    SeveralLifts { object: String, morphism: String },
}

impl FibrationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, FibrationVerdict::Holds)
    }
}

fn lift_check(u: &FunctorData, dir: LiftDirection, admissible: impl Fn(usize) -> bool) -> FibrationVerdict {
    let (e, b) = (u.source(), u.target());
    for x in 0..e.objects().len() {
        let ux = u.object(x);
        let arrows: Vec<usize> = (0..b.objects().len())
            .flat_map(|y| match dir {
                LiftDirection::Fibration => b.hom(y, ux).to_vec(),
                LiftDirection::Opfibration => b.hom(ux, y).to_vec(),
            })
            .collect();
        for f in arrows {
            let lifts = (0..e.morphisms().len())
                .filter(|&m| {
                    let mm = e.morphism(m);
                    let end = match dir {
                        LiftDirection::Fibration => mm.target,
                        LiftDirection::Opfibration => mm.source,
                    };
                    end == x && u.morphism(m) == f && admissible(m)
                })
                .count();
            let (object, morphism) = (e.objects()[x].clone(), b.morphism(f).name.clone());
            match lifts {
                0 => return FibrationVerdict::NoLift { object, morphism },
                1 => {}
                _ => return FibrationVerdict::SeveralLifts { object, morphism },
            }
        }
    }
    FibrationVerdict::Holds
}

/// Unique-lifting check for a functor.
pub fn discrete_fibration_check(u: &FunctorData, dir: LiftDirection) -> FibrationVerdict {
    lift_check(u, dir, |_| true)
}

/// Two-sided check for a span `B <- E -> A`: arrows into the first projection lift uniquely
/// among arrows the second projection sends to identities, arrows out of the second lift
/// uniquely among arrows the first sends to identities, and an arrow both send to identities
/// is itself an identity.
pub fn two_sided_discrete_fibration_check(p: &FunctorData, q: &FunctorData) -> FibrationVerdict {
    let v = lift_check(p, LiftDirection::Fibration, |m| q.target().is_identity(q.morphism(m)));
    if !v.holds() {
        return v;
    }
    let v = lift_check(q, LiftDirection::Opfibration, |m| p.target().is_identity(p.morphism(m)));
    if !v.holds() {
        return v;
    }
    let e = p.source();
    for m in 0..e.morphisms().len() {
        if !e.is_identity(m) && p.target().is_identity(p.morphism(m)) && q.target().is_identity(q.morphism(m)) {
            let mm = e.morphism(m);
            return FibrationVerdict::SeveralLifts { object: e.objects()[mm.source].clone(), morphism: mm.name.clone() };
        }
    }
    FibrationVerdict::Holds
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// Heteromorphisms out of an object of the first category.
    First(usize),
    /// Heteromorphisms into an object of the second category.
    Second(usize),
}

/// Category of heteromorphisms out of `c` (morphisms `g` with `g∘φ = φ'`), or into `d`
/// (morphisms `f` with `φ'∘f = φ`).
pub fn fiber_category(p: &ProfunctorData, anchor: Anchor) -> Result<FiniteCategory, CategoryError> {
    let (objs, cat) = match anchor {
        Anchor::First(c) if c < p.c.objects().len() => (p.hets_from(c), &p.d),
        Anchor::Second(d) if d < p.d.objects().len() => (p.hets_to(d), &p.c),
        _ => return Err(CategoryError::UnknownObject(format!("{anchor:?}"))),
    };
    let pos: HashMap<usize, usize> = objs.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let mut morphisms: Vec<(usize, usize, usize)> = Vec::new();
    let mut index = HashMap::new();
    for (i, &a) in objs.iter().enumerate() {
        for (j, &b) in objs.iter().enumerate() {
            let (ends_a, ends_b) = match anchor {
                Anchor::First(_) => (p.hets[a].target, p.hets[b].target),
                Anchor::Second(_) => (p.hets[a].source, p.hets[b].source),
            };
            for &m in cat.hom(ends_a, ends_b) {
                let ok = match anchor {
                    Anchor::First(_) => p.act_right(m, a) == b,
                    Anchor::Second(_) => p.act_left(b, m) == a,
                };
                if ok {
                    index.insert((i, j, m), morphisms.len());
                    morphisms.push((i, j, m));
                }
            }
        }
    }
    let mut composition = HashMap::new();
    for (x, &(i, j, m)) in morphisms.iter().enumerate() {
        for (y, &(j2, k, m2)) in morphisms.iter().enumerate() {
            if j2 == j {
                composition.insert((y, x), index[&(i, k, cat.compose(m2, m))]);
            }
        }
    }
    let identities = objs
        .iter()
        .map(|&h| {
            let end = match anchor {
                Anchor::First(_) => p.hets[h].target,
                Anchor::Second(_) => p.hets[h].source,
            };
            index[&(pos[&h], pos[&h], cat.identity(end))]
        })
        .collect();
    let names: Vec<String> = objs.iter().map(|&h| p.hets[h].name.clone()).collect();
    let morphisms = morphisms
        .iter()
        .map(|&(i, j, m)| Morphism { name: format!("{}:{}->{}", cat.morphism(m).name, names[i], names[j]), source: i, target: j })
        .collect();
    Ok(FiniteCategory::new_unchecked(names, morphisms, identities, composition))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::Coefficients;
    use crate::category::category_homology;
    use crate::relational::tests::running_example;
    use crate::relational::{dowker_galois, induced_complex_relation};

    pub(crate) fn single_het() -> ProfunctorData {
        let pt = Poset::from_relations(vec!["*".into()], &[]).unwrap();
        posetal_profunctor(&pt, &pt, &[(0, 0)].into()).unwrap()
    }

    pub(crate) fn empty_profunctor() -> ProfunctorData {
        let pt = Poset::from_relations(vec!["a".into()], &[]).unwrap();
        let pt2 = Poset::from_relations(vec!["x".into()], &[]).unwrap();
        posetal_profunctor(&pt, &pt2, &BTreeSet::new()).unwrap()
    }

    pub(crate) fn dowker_profunctor() -> ProfunctorData {
        let (l, u) = dowker_galois(&running_example()).unwrap();
        profunctor_from_adjunction(&adjunction_from_galois(&l, &u).unwrap())
    }

    fn betti(c: &FiniteCategory) -> Vec<usize> {
        category_homology(c, Coefficients::Integers, None).unwrap().homology.betti_numbers()
    }

    #[test]
    fn builders_pass_validation() {
        for p in [single_het(), empty_profunctor(), dowker_profunctor()] {
            p.validate().unwrap();
            let (j, ic, id) = cograph(&p);
            FiniteCategory::new(j.objects().to_vec(), j.morphisms().to_vec(), j.identities().to_vec(), j.composition().clone())
                .unwrap();
            FunctorData::new(ic.source().clone(), j.clone(), ic.object_map().to_vec(), ic.morphism_map().to_vec()).unwrap();
            FunctorData::new(id.source().clone(), j.clone(), id.object_map().to_vec(), id.morphism_map().to_vec()).unwrap();
            let (g, rc, rd) = graph(&p);
            FiniteCategory::new(g.objects().to_vec(), g.morphisms().to_vec(), g.identities().to_vec(), g.composition().clone())
                .unwrap();
            FunctorData::new(g.clone(), rc.target().clone(), rc.object_map().to_vec(), rc.morphism_map().to_vec()).unwrap();
            FunctorData::new(g.clone(), rd.target().clone(), rd.object_map().to_vec(), rd.morphism_map().to_vec()).unwrap();
        }
    }

    #[test]
    fn single_het_cograph_and_graph() {
        let p = single_het();
        let (j, _, _) = cograph(&p);
        assert_eq!((j.objects().len(), j.morphisms().len()), (2, 3));
        let (g, _, _) = graph(&p);
        assert_eq!((g.objects().len(), g.morphisms().len()), (1, 1));
    }

    #[test]
    fn empty_profunctor_constructions() {
        let p = empty_profunctor();
        let (j, _, _) = cograph(&p);
        assert_eq!(betti(&j), vec![2]);
        let (g, _, _) = graph(&p);
        assert!(g.objects().is_empty());
    }

    #[test]
    fn dowker_adjunction_equivalences() {
        let p = dowker_profunctor();
        let (j, _, _) = cograph(&p);
        let (g, _, _) = graph(&p);
        for c in [p.first(), p.second(), &j, &g] {
            assert_eq!(betti(c), vec![1, 1]);
        }
    }

    #[test]
    fn dowker_hets_are_rectangles() {
        let r = running_example();
        let p = dowker_profunctor();
        let cr = induced_complex_relation(&r);
        assert_eq!(p.hets().len(), cr.len());
        let posetal = relation_profunctor(&cr);
        assert_eq!(posetal.hets().len(), cr.len());
    }

    #[test]
    fn graph_projections() {
        let p = dowker_profunctor();
        let (_, rc, rd) = graph(&p);
        assert!(two_sided_discrete_fibration_check(&rc, &rd).holds());
        assert!(discrete_fibration_check(&FunctorData::identity(p.first()), LiftDirection::Fibration).holds());
    }

    #[test]
    fn constant_functor_has_no_lift() {
        let two = poset_as_category(&Poset::from_relations(vec!["a".into(), "b".into()], &[]).unwrap());
        let interval = poset_as_category(&Poset::from_relations(vec!["0".into(), "1".into()], &[(0, 1)]).unwrap());
        let one = interval.identity(1);
        let u = FunctorData::new(two, interval, vec![1, 1], vec![one, one]).unwrap();
        assert_eq!(
            discrete_fibration_check(&u, LiftDirection::Fibration),
            FibrationVerdict::NoLift { object: "a".into(), morphism: "0->1".into() }
        );
    }

    #[test]
    fn fibers() {
        let p = single_het();
        let f = fiber_category(&p, Anchor::First(0)).unwrap();
        assert_eq!((f.objects().len(), f.morphisms().len()), (1, 1));
        let e = empty_profunctor();
        assert!(fiber_category(&e, Anchor::First(0)).unwrap().objects().is_empty());
        let d = dowker_profunctor();
        let b = d.first().object_index("{b}").unwrap();
        let fb = fiber_category(&d, Anchor::First(b)).unwrap();
        assert_eq!(fb.objects().len(), 3);
        assert_eq!(betti(&fb), vec![1]);
    }

    #[test]
    fn non_galois_pair_rejected() {
        let p = Poset::from_relations(vec!["p".into()], &[]).unwrap();
        let q = Poset::from_relations(vec!["q1".into(), "q2".into()], &[]).unwrap();
        let l = PosetMap::new(p.clone(), q.clone(), vec![1]).unwrap();
        let u = PosetMap::new(q, p, vec![0, 0]).unwrap();
        assert!(matches!(adjunction_from_galois(&l, &u), Err(CategoryError::NotGalois(_))));
    }
}
