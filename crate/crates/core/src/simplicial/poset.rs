use super::complex::SimplicialComplex;
use super::SimplicialError;
use crate::algebra::{homology, Coefficients};
use std::collections::{BTreeSet, HashMap};

/// Finite poset with a dense order matrix: `le[i][j]` means element `i` is below `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    le: Vec<Vec<bool>>,
}

impl Poset {
    /// Validated constructor: labels unique, order reflexive, antisymmetric, transitive.
    pub fn new(labels: Vec<String>, le: Vec<Vec<bool>>) -> Result<Self, SimplicialError> {
        let n = labels.len();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(SimplicialError::DuplicateLabel(l.clone()));
            }
        }
        if le.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(SimplicialError::Shape(format!("order matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if !le[i][i] {
                return Err(SimplicialError::NotReflexive(labels[i].clone()));
            }
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(SimplicialError::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
                if !le[i][j] {
                    continue;
                }
                for k in 0..n {
                    if le[j][k] && !le[i][k] {
                        return Err(SimplicialError::NotTransitive(
                            labels[i].clone(),
                            labels[j].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(Poset { labels, le })
    }

    /// Reflexive-transitive closure of the given relations `(below, above)`.
    pub fn from_relations(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, SimplicialError> {
        let n = labels.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(SimplicialError::Shape(format!("relation ({a}, {b}) out of range")));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(labels, le)
    }

    pub(crate) fn new_unchecked(labels: Vec<String>, le: Vec<Vec<bool>>) -> Self {
        Poset { labels, le }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le[i][j] || self.le[j][i]
    }

    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let le = (0..n).map(|i| (0..n).map(|j| self.le[j][i]).collect()).collect();
        Poset { labels: self.labels.clone(), le }
    }

    /// Induced subposet on the given elements, in the given order.
    pub fn subposet(&self, elements: &[usize]) -> Poset {
        let le = elements.iter().map(|&i| elements.iter().map(|&j| self.le[i][j]).collect()).collect();
        Poset { labels: elements.iter().map(|&i| self.labels[i].clone()).collect(), le }
    }

    /// An element comparable to every other element, if any (a maximum or a minimum).
    pub fn apex(&self) -> Option<usize> {
        let n = self.len();
        (0..n)
            .find(|&x| (0..n).all(|y| self.le[y][x]))
            .or_else(|| (0..n).find(|&x| (0..n).all(|y| self.le[x][y])))
    }

    /// Every chain `p_0 < ... < p_k`, listed increasingly.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let above: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| self.lt(i, j)).collect()).collect();
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn walk(above: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(stack.clone());
            let top = *stack.last().unwrap();
            for &j in &above[top] {
                stack.push(j);
                walk(above, stack, out);
                stack.pop();
            }
        }
        for i in 0..n {
            stack.push(i);
            walk(&above, &mut stack, &mut out);
            stack.pop();
        }
        out
    }
}

/// Order-preserving map between posets, stored as an assignment of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: Poset, target: Poset, map: Vec<usize>) -> Result<Self, SimplicialError> {
        if map.len() != source.len() || map.iter().any(|&t| t >= target.len()) {
            return Err(SimplicialError::Shape("assignment does not match the posets".into()));
        }
        for i in 0..source.len() {
            for j in 0..source.len() {
                if source.le(i, j) && !target.le(map[i], map[j]) {
                    return Err(SimplicialError::NotOrderPreserving(
                        source.label(i).to_string(),
                        source.label(j).to_string(),
                    ));
                }
            }
        }
        Ok(PosetMap { source, target, map })
    }

    /// Builds from label pairs `source label -> target label`.
    pub fn from_labels(source: Poset, target: Poset, pairs: &[(&str, &str)]) -> Result<Self, SimplicialError> {
        let lookup: HashMap<&str, &str> = pairs.iter().copied().collect();
        let mut map = Vec::with_capacity(source.len());
        for l in source.labels() {
            let t = lookup.get(l.as_str()).ok_or_else(|| SimplicialError::UnknownElement(l.clone()))?;
            map.push(target.index_of(t).ok_or_else(|| SimplicialError::UnknownElement(t.to_string()))?);
        }
        PosetMap::new(source, target, map)
    }

    pub fn identity(p: &Poset) -> Self {
        PosetMap { source: p.clone(), target: p.clone(), map: (0..p.len()).collect() }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PosetMap) -> Result<PosetMap, SimplicialError> {
        if self.target != other.source {
            return Err(SimplicialError::Shape("maps are not composable".into()));
        }
        Ok(PosetMap {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&i| other.map[i]).collect(),
        })
    }
}

/// Simplices of `k` ordered by inclusion, in the order of [`SimplicialComplex::ids`].
pub fn face_poset(k: &SimplicialComplex) -> Poset {
    let ids: Vec<_> = k.ids().collect();
    let n = ids.len();
    let mut le = vec![vec![false; n]; n];
    for (i, &id) in ids.iter().enumerate() {
        for f in k.faces(id) {
            le[k.flat_index(f)][i] = true;
        }
    }
    Poset::new_unchecked(ids.iter().map(|&id| k.name(id)).collect(), le)
}

/// Complex of chains of `p`; vertices are the element labels.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));
    let mut rank = vec![0u32; p.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r as u32;
    }
    let vertices: Vec<String> = order.iter().map(|&i| p.label(i).to_string()).collect();
    let simplices = p.chains().into_iter().map(|c| {
        let mut s: Vec<u32> = c.iter().map(|&i| rank[i]).collect();
        s.sort_unstable();
        s
    });
    SimplicialComplex::from_closed(vertices, simplices)
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    order_complex(&face_poset(k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberSide {
    /// `{p : f(p) <= q}`
    Below,
    /// `{p : f(p) >= q}`
    Above,
}

/// Preimage of the down-set or up-set of `q` as a subposet of the source.
pub fn fiber(f: &PosetMap, q: usize, side: FiberSide) -> Poset {
    let t = f.target();
    let elements: Vec<usize> = (0..f.source().len())
        .filter(|&p| match side {
            FiberSide::Below => t.le(f.apply(p), q),
            FiberSide::Above => t.le(q, f.apply(p)),
        })
        .collect();
    f.source().subposet(&elements)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractibilityCertificate {
    /// Some element is comparable to all others, so the order complex is a cone.
    Cone { apex: String },
    /// Reduced integral homology is nonzero in this degree; -1 for the empty poset.
    NotContractible { degree: i64 },
    /// Reduced homology vanishes but no cone point was found.
    AcyclicUndetermined,
}

impl ContractibilityCertificate {
    pub fn is_cone(&self) -> bool {
        matches!(self, ContractibilityCertificate::Cone { .. })
    }
}

pub fn contractibility_certificate(p: &Poset) -> ContractibilityCertificate {
    if p.is_empty() {
        return ContractibilityCertificate::NotContractible { degree: -1 };
    }
    if let Some(a) = p.apex() {
        return ContractibilityCertificate::Cone { apex: p.label(a).to_string() };
    }
    let h = homology(&order_complex(p).chain_complex(), Coefficients::Integers).expect("valid chain complex");
    for d in &h.degrees {
        let reduced = if d.degree == 0 { d.betti.saturating_sub(1) } else { d.betti };
        if reduced > 0 || !d.torsion.is_empty() {
            return ContractibilityCertificate::NotContractible { degree: d.degree };
        }
    }
    ContractibilityCertificate::AcyclicUndetermined
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisVerdict {
    Holds,
    /// `l(source) <= target` and `source <= u(target)` disagree at this pair.
    Fails { source: String, target: String },
}

impl GaloisVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, GaloisVerdict::Holds)
    }
}

/// Checks `l(p) <= q  <=>  p <= u(q)` for all pairs, reporting the first failure.
pub fn galois_check(l: &PosetMap, u: &PosetMap) -> Result<GaloisVerdict, SimplicialError> {
    if l.source() != u.target() || l.target() != u.source() {
        return Err(SimplicialError::Shape("l and u do not run between the same posets".into()));
    }
    let (p, q) = (l.source(), l.target());
    for i in 0..p.len() {
        for j in 0..q.len() {
            if q.le(l.apply(i), j) != p.le(i, u.apply(j)) {
                return Ok(GaloisVerdict::Fails { source: p.label(i).to_string(), target: q.label(j).to_string() });
            }
        }
    }
    Ok(GaloisVerdict::Holds)
}
