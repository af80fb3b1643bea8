use super::RelationalError;
use crate::simplicial::{face_poset, PosetMap, SimplicialComplex};
use std::collections::{BTreeSet, HashSet};

/// Which side of a relation: the row set (source) or the column set (target).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

/// Binary relation between two finite labelled sets, stored as a pair set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<String>,
    cols: Vec<String>,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(rows: Vec<String>, cols: Vec<String>, pairs: BTreeSet<(usize, usize)>) -> Result<Self, RelationalError> {
        check_unique(&rows)?;
        check_unique(&cols)?;
        if let Some(&(a, x)) = pairs.iter().find(|&&(a, x)| a >= rows.len() || x >= cols.len()) {
            return Err(RelationalError::Shape(format!("pair ({a}, {x}) out of range")));
        }
        Ok(Relation { rows, cols, pairs })
    }

    /// Builds from a 0/1 matrix with one row per source element.
    pub fn from_matrix<S: AsRef<str>>(rows: &[S], cols: &[S], matrix: &[Vec<bool>]) -> Result<Self, RelationalError> {
        if matrix.len() != rows.len() || matrix.iter().any(|r| r.len() != cols.len()) {
            return Err(RelationalError::Shape("matrix does not match the labels".into()));
        }
        let pairs = matrix
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, &b)| b).map(move |(j, _)| (i, j)))
            .collect();
        Relation::new(
            rows.iter().map(|s| s.as_ref().to_string()).collect(),
            cols.iter().map(|s| s.as_ref().to_string()).collect(),
            pairs,
        )
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn related(&self, a: usize, x: usize) -> bool {
        self.pairs.contains(&(a, x))
    }

    pub fn related_labels(&self, a: &str, x: &str) -> bool {
        match (self.rows.iter().position(|r| r == a), self.cols.iter().position(|c| c == x)) {
            (Some(i), Some(j)) => self.related(i, j),
            _ => false,
        }
    }

    pub fn transpose(&self) -> Relation {
        Relation {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            pairs: self.pairs.iter().map(|&(a, x)| (x, a)).collect(),
        }
    }

    pub fn labels(&self, side: Side) -> &[String] {
        match side {
            Side::Source => &self.rows,
            Side::Target => &self.cols,
        }
    }

    /// Elements on `side` related to element `other` of the opposite side.
    pub fn witnessed_by(&self, side: Side, other: usize) -> Vec<usize> {
        match side {
            Side::Source => self.pairs.iter().filter(|p| p.1 == other).map(|p| p.0).collect(),
            Side::Target => self.pairs.iter().filter(|p| p.0 == other).map(|p| p.1).collect(),
        }
    }
}

fn check_unique(labels: &[String]) -> Result<(), RelationalError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(RelationalError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Complex on `side` whose simplices are the sets sharing a related element on the other side.
pub fn dowker_complex(r: &Relation, side: Side) -> SimplicialComplex {
    let other = match side {
        Side::Source => r.cols.len(),
        Side::Target => r.rows.len(),
    };
    let labels = r.labels(side);
    SimplicialComplex::from_facets(
        (0..other).map(|o| r.witnessed_by(side, o).into_iter().map(|i| labels[i].clone()).collect::<Vec<_>>()),
    )
}

/// Common neighbours of a set of labels on `side`, as labels of the other side.
pub(crate) fn common_neighbours(r: &Relation, side: Side, members: &[&str]) -> Vec<String> {
    let (this, that) = match side {
        Side::Source => (&r.rows, &r.cols),
        Side::Target => (&r.cols, &r.rows),
    };
    let idx: Vec<usize> = members.iter().filter_map(|m| this.iter().position(|l| l == m)).collect();
    (0..that.len())
        .filter(|&o| {
            idx.iter().all(|&i| match side {
                Side::Source => r.related(i, o),
                Side::Target => r.related(o, i),
            })
        })
        .map(|o| that[o].clone())
        .collect()
}

/// The Galois connection between face posets: `l` sends a source simplex to its common
/// neighbours in the opposite face poset of the target complex, `u` goes back.
pub fn dowker_galois(r: &Relation) -> Result<(PosetMap, PosetMap), RelationalError> {
    let da = dowker_complex(r, Side::Source);
    let dx = dowker_complex(r, Side::Target);
    if da.is_empty() || dx.is_empty() {
        return Err(RelationalError::EmptyComplex);
    }
    let pa = face_poset(&da);
    let px_op = face_poset(&dx).opposite();
    let l: Vec<usize> = da
        .ids()
        .map(|id| {
            let img = common_neighbours(r, Side::Source, &da.labels(id));
            dx.flat_index(dx.find(&img).expect("common neighbours form a simplex"))
        })
        .collect();
    let u: Vec<usize> = dx
        .ids()
        .map(|id| {
            let img = common_neighbours(r, Side::Target, &dx.labels(id));
            da.flat_index(da.find(&img).expect("common neighbours form a simplex"))
        })
        .collect();
    let l = PosetMap::new(pa.clone(), px_op.clone(), l)?;
    let u = PosetMap::new(px_op, pa, u)?;
    Ok((l, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relational::tests::running_example;
    use crate::simplicial::{fiber, galois_check, FiberSide};

    fn facet_names(k: &SimplicialComplex) -> Vec<String> {
        k.facets().into_iter().map(|f| k.name(f)).collect()
    }

    #[test]
    fn running_example_complexes() {
        let r = running_example();
        let da = dowker_complex(&r, Side::Source);
        assert_eq!(facet_names(&da), vec!["{a,b}", "{a,c}", "{b,c,d}"]);
        let dx = dowker_complex(&r, Side::Target);
        let mut f = facet_names(&dx);
        f.sort();
        assert_eq!(f, vec!["{w,y}", "{x,y}", "{x,z}", "{y,z}"]);
    }

    #[test]
    fn dowker_matches_subset_oracle() {
        // every subset of rows with a common witness column, enumerated independently
        let r = running_example();
        let da = dowker_complex(&r, Side::Source);
        let mut expected = BTreeSet::new();
        for mask in 1u32..16 {
            let set: Vec<usize> = (0..4).filter(|b| mask >> b & 1 == 1).collect();
            if (0..4).any(|x| set.iter().all(|&a| r.related(a, x))) {
                expected.insert(set.iter().map(|&a| r.rows()[a].clone()).collect::<Vec<_>>());
            }
        }
        assert_eq!(da.label_set(), expected);
        // nonempty faces only: 4 vertices, 5 edges, 1 triangle
        assert_eq!(crate::simplicial::face_poset(&da).len(), 10);
    }

    #[test]
    fn empty_relation_gives_empty_complex() {
        let r = Relation::from_matrix(&["a"], &["x"], &[vec![false]]).unwrap();
        assert!(dowker_complex(&r, Side::Source).is_empty());
    }

    #[test]
    fn galois_maps_of_running_example() {
        let r = running_example();
        let (l, u) = dowker_galois(&r).unwrap();
        assert!(galois_check(&l, &u).unwrap().holds());
        let b = l.source().index_of("{b}").unwrap();
        assert_eq!(l.target().label(l.apply(b)), "{x,y}");
        let y = u.source().index_of("{y}").unwrap();
        assert_eq!(u.target().label(u.apply(y)), "{b,c,d}");
        // the below-fiber of {y} has U({y}) as its maximum
        let fib = fiber(&l, l.target().index_of("{y}").unwrap(), FiberSide::Below);
        let top = (0..fib.len()).find(|&i| (0..fib.len()).all(|j| fib.le(j, i))).unwrap();
        assert_eq!(fib.label(top), "{b,c,d}");
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = Relation::from_matrix(&["a", "a"], &["x", "y"], &[vec![true, false], vec![false, true]]);
        assert_eq!(err.unwrap_err(), RelationalError::DuplicateLabel("a".into()));
    }
}
