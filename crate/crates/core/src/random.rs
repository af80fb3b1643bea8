//! Seeded generators for property suites: relations, complexes, complex relations, covers,
//! posets, Galois connections, integer matrices and chain complexes with torsion.

use crate::algebra::{ChainComplex, IntMatrix};
use crate::relational::{cover_nerve, dowker_galois, induced_complex_relation, ComplexRelation, Cover, Relation};
use crate::simplicial::{Poset, PosetMap, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub use rand::SeedableRng;

/// Deterministic generator used by every suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Relation on `a0..` × `x0..` with sizes drawn from `1..=max_a` and `1..=max_x` and each
/// pair present with probability `density`.
pub fn random_relation<R: Rng>(rng: &mut R, max_a: usize, max_x: usize, density: f64) -> Relation {
    let na = rng.gen_range(1..=max_a);
    let nx = rng.gen_range(1..=max_x);
    let mut pairs = BTreeSet::new();
    for a in 0..na {
        for x in 0..nx {
            if rng.gen_bool(density) {
                pairs.insert((a, x));
            }
        }
    }
    Relation::new(names("a", na), names("x", nx), pairs).expect("generated labels are distinct")
}

/// Complex on `vertices` labelled `{prefix}0..` whose facets are `facets` random vertex sets
/// of size at most `max_dim + 1`, plus every vertex.
pub fn random_complex<R: Rng>(rng: &mut R, prefix: &str, vertices: usize, facets: usize, max_dim: usize) -> SimplicialComplex {
    let labels = names(prefix, vertices);
    let mut all: Vec<Vec<String>> = labels.iter().map(|v| vec![v.clone()]).collect();
    for _ in 0..facets {
        let size = rng.gen_range(1..=(max_dim + 1).min(vertices));
        all.push(labels.choose_multiple(rng, size).cloned().collect());
    }
    SimplicialComplex::from_facets(all)
}

/// Downward-closed relation between two random complexes generated by a few random pairs
/// of simplices.
pub fn random_complex_relation<R: Rng>(rng: &mut R) -> ComplexRelation {
    let (kv, kf) = (rng.gen_range(2..=5), rng.gen_range(1..=4));
    let k = random_complex(rng, "k", kv, kf, 2);
    let (mv, mf) = (rng.gen_range(2..=5), rng.gen_range(1..=4));
    let m = random_complex(rng, "m", mv, mf, 2);
    let ks: Vec<_> = k.ids().collect();
    let ms: Vec<_> = m.ids().collect();
    let generators: Vec<(Vec<String>, Vec<String>)> = (0..rng.gen_range(0..=5))
        .map(|_| (k.owned_labels(*ks.choose(rng).unwrap()), m.owned_labels(*ms.choose(rng).unwrap())))
        .collect();
    ComplexRelation::generated_by(k, m, &generators).expect("generators are simplices")
}

/// Cover of a random complex by closures of random sets of its facets; each facet lands in
/// at least one element. Intersections are not forced to be contractible.
pub fn random_cover<R: Rng>(rng: &mut R) -> Cover {
    let (nv, nf) = (rng.gen_range(3..=6), rng.gen_range(2..=5));
    let base = random_complex(rng, "v", nv, nf, 2);
    let facets = base.facets();
    let n = rng.gen_range(2..=4);
    let mut members: Vec<Vec<_>> = vec![Vec::new(); n];
    for &f in &facets {
        members[rng.gen_range(0..n)].push(f);
        if rng.gen_bool(0.3) {
            members[rng.gen_range(0..n)].push(f);
        }
    }
    let elements = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .enumerate()
        .map(|(i, m)| (format!("U{i}"), base.closure_of(m)))
        .collect();
    Cover::new(base, elements).expect("every facet is in some element")
}

/// Covering relation `K ~ N(U)` of a random cover.
pub fn random_covering_relation<R: Rng>(rng: &mut R) -> ComplexRelation {
    cover_nerve(&random_cover(rng)).1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Dowker,
    Generated,
    Covering,
}

/// Mixed stream of complex relations cycling through Dowker-induced relations of random
/// relations, relations generated between random complexes, and covering relations.
pub fn random_mixed_complex_relation<R: Rng>(rng: &mut R, i: usize) -> (InstanceKind, ComplexRelation) {
    match i % 3 {
        0 => {
            let density = *[0.2, 0.4, 0.6].choose(rng).unwrap();
            (InstanceKind::Dowker, induced_complex_relation(&random_relation(rng, 4, 4, density)))
        }
        1 => (InstanceKind::Generated, random_complex_relation(rng)),
        _ => (InstanceKind::Covering, random_covering_relation(rng)),
    }
}

/// Poset on `p0..p{n-1}` from random relations `i < j` with probability `density`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let mut labels = names("p", n);
    // hide the built-in linear extension from the labels
    labels.shuffle(rng);
    Poset::from_relations(labels, &pairs).expect("forward relations are acyclic")
}

/// Galois connection from the Dowker complexes of a random relation with at least one pair.
pub fn random_galois<R: Rng>(rng: &mut R, max_a: usize, max_x: usize) -> (Relation, PosetMap, PosetMap) {
    loop {
        let density = *[0.3, 0.5, 0.7].choose(rng).unwrap();
        let r = random_relation(rng, max_a, max_x, density);
        if let Ok((l, u)) = dowker_galois(&r) {
            return (r, l, u);
        }
    }
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    if rows == 0 {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(&data)
}

/// Random unimodular matrix with its inverse, as a product of elementary row operations.
fn unimodular<R: Rng>(rng: &mut R, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = rng.gen_range(-2..=2);
        // E = I + c e_ij, E^{-1} = I - c e_ij
        let mut e = vec![vec![0i64; n]; n];
        let mut e_inv = vec![vec![0i64; n]; n];
        for k in 0..n {
            e[k][k] = 1;
            e_inv[k][k] = 1;
        }
        e[i][j] = c;
        e_inv[i][j] = -c;
        u = IntMatrix::from_rows(&e).mul(&u);
        inv = inv.mul(&IntMatrix::from_rows(&e_inv));
    }
    (u, inv)
}

/// Chain complex in degrees `0..=top` assembled from free summands and torsion pieces
/// `Z --k--> Z`, then disguised by random changes of basis. Returns the complex and, per
/// degree, the expected free rank and torsion coefficients.
pub fn random_torsion_complex<R: Rng>(rng: &mut R, top: usize) -> (ChainComplex, Vec<(usize, Vec<i64>)>) {
    // pieces: (degree, Some(k)) is Z in degree+1 mapping by k onto Z in degree; (degree, None) is free
    let mut pieces: Vec<(usize, Option<i64>)> = Vec::new();
    for d in 0..=top {
        for _ in 0..rng.gen_range(0..=2) {
            pieces.push((d, None));
        }
        if d < top {
            for _ in 0..rng.gen_range(0..=2) {
                pieces.push((d, Some(rng.gen_range(1..=6))));
            }
        }
    }
    let mut basis: Vec<Vec<(usize, Option<i64>, bool)>> = vec![Vec::new(); top + 1];
    for (pi, &(d, k)) in pieces.iter().enumerate() {
        basis[d].push((pi, k, false));
        if k.is_some() {
            basis[d + 1].push((pi, k, true));
        }
    }
    let mut expected = vec![(0usize, Vec::new()); top + 1];
    for &(d, k) in &pieces {
        match k {
            None => expected[d].0 += 1,
            Some(k) if k > 1 => expected[d].1.push(k),
            Some(_) => {}
        }
    }
    let changes: Vec<(IntMatrix, IntMatrix)> = basis.iter().map(|b| unimodular(rng, b.len())).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, basis[0].len())];
    for d in 1..=top {
        let columns: Vec<Vec<(usize, i64)>> = basis[d]
            .iter()
            .map(|&(pi, k, upper)| match (upper, k) {
                (true, Some(k)) => {
                    let row = basis[d - 1].iter().position(|&(pj, _, u)| pj == pi && !u).unwrap();
                    vec![(row, k)]
                }
                _ => Vec::new(),
            })
            .collect();
        let plain = IntMatrix::from_small_columns(basis[d - 1].len(), columns);
        // d' = U_{d-1} d U_d^{-1}
        boundaries.push(changes[d - 1].0.mul(&plain).mul(&changes[d].1));
    }
    let labels = basis.iter().enumerate().map(|(d, b)| (0..b.len()).map(|i| format!("e{d}_{i}")).collect()).collect();
    (ChainComplex::new(0, labels, boundaries).expect("conjugated differentials square to zero"), expected)
}
