use super::field::{Coefficients, Field, PrimeField, Rationals};
use super::linalg::{independent_columns, kernel, sparse_rank, CoordinateSolver, FMatrix};
use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use super::AlgebraError;
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use std::fmt;

/// Graded free module with boundary matrices over a contiguous degree range.
///
/// `boundary(n)` maps degree `n` chains to degree `n - 1` chains.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    min_degree: i64,
    labels: Vec<Vec<String>>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Validated constructor. `boundaries[k]` is the boundary out of degree `min_degree + k`.
    pub fn new(min_degree: i64, labels: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self, AlgebraError> {
        let cc = Self::new_unchecked(min_degree, labels, boundaries);
        cc.validate()?;
        Ok(cc)
    }

    /// Skips the shape and square-zero checks; for builders whose output is correct by construction.
    pub fn new_unchecked(min_degree: i64, labels: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Self {
        ChainComplex { min_degree, labels, boundaries }
    }

    /// Complex with bases only in degree 0 and no boundaries.
    pub fn concentrated(degree: i64, labels: Vec<String>) -> Self {
        let n = labels.len();
        ChainComplex { min_degree: degree, labels: vec![labels], boundaries: vec![IntMatrix::zeros(0, n)] }
    }

    pub fn empty() -> Self {
        ChainComplex { min_degree: 0, labels: Vec::new(), boundaries: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.labels.len() != self.boundaries.len() {
            return Err(AlgebraError::Shape(format!(
                "{} label lists for {} boundaries",
                self.labels.len(),
                self.boundaries.len()
            )));
        }
        for (k, d) in self.boundaries.iter().enumerate() {
            let n = self.min_degree + k as i64;
            if d.cols() != self.rank(n) || d.rows() != self.rank(n - 1) {
                return Err(AlgebraError::Shape(format!(
                    "boundary in degree {n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.rank(n - 1),
                    self.rank(n)
                )));
            }
        }
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero() {
                return Err(AlgebraError::BoundarySquare { degree: self.min_degree + k as i64 });
            }
        }
        Ok(())
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Top degree; `min_degree - 1` when there are no degrees at all.
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.boundaries.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    fn slot(&self, n: i64) -> Option<usize> {
        if n < self.min_degree || n > self.max_degree() {
            None
        } else {
            Some((n - self.min_degree) as usize)
        }
    }

    pub fn rank(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |k| self.labels[k].len())
    }

    pub fn labels(&self, n: i64) -> &[String] {
        self.slot(n).map_or(&[], |k| &self.labels[k])
    }

    /// Boundary out of degree `n`, a zero matrix of the right shape outside the range.
    pub fn boundary(&self, n: i64) -> IntMatrix {
        match self.slot(n) {
            Some(k) => self.boundaries[k].clone(),
            None => IntMatrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    pub fn boundary_ref(&self, n: i64) -> Option<&IntMatrix> {
        self.slot(n).map(|k| &self.boundaries[k])
    }

    pub fn total_rank(&self) -> usize {
        self.labels.iter().map(|l| l.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64).sum()
    }

    /// Degreewise direct sum; bases of `self` come first.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        if self.labels.is_empty() {
            return other.clone();
        }
        if other.labels.is_empty() {
            return self.clone();
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let mut labels = Vec::new();
        let mut boundaries = Vec::new();
        for n in lo..=hi {
            let mut l = self.labels(n).to_vec();
            l.extend_from_slice(other.labels(n));
            labels.push(l);
            let a = self.boundary(n);
            let b = other.boundary(n);
            let rows = if n == lo { 0 } else { self.rank(n - 1) + other.rank(n - 1) };
            let a = if rows == 0 { IntMatrix::zeros(0, a.cols()) } else { a };
            let b = if rows == 0 { IntMatrix::zeros(0, b.cols()) } else { b };
            let row_sizes = [a.rows(), b.rows()];
            boundaries.push(IntMatrix::block(&row_sizes, &[a.cols(), b.cols()], &[(0, 0, &a), (1, 1, &b)]));
        }
        ChainComplex { min_degree: lo, labels, boundaries }
    }
}

/// Chain map given by one matrix per degree; matrices outside the stored range are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub min_degree: i64,
    pub matrices: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn matrix(&self, n: i64, src: &ChainComplex, dst: &ChainComplex) -> IntMatrix {
        let k = n - self.min_degree;
        if k >= 0 && (k as usize) < self.matrices.len() {
            self.matrices[k as usize].clone()
        } else {
            IntMatrix::zeros(dst.rank(n), src.rank(n))
        }
    }

    /// Checks `d_dst f = f d_src` in every degree; reports the first failing degree.
    pub fn validate(&self, src: &ChainComplex, dst: &ChainComplex) -> Result<(), AlgebraError> {
        let lo = src.min_degree().min(dst.min_degree()).min(self.min_degree);
        let hi = src.max_degree().max(dst.max_degree()).max(self.min_degree + self.matrices.len() as i64 - 1);
        for n in lo..=hi {
            let f = self.matrix(n, src, dst);
            if f.rows() != dst.rank(n) || f.cols() != src.rank(n) {
                return Err(AlgebraError::Shape(format!("chain map in degree {n} has the wrong shape")));
            }
            let left = dst.boundary(n).mul(&f);
            let right = self.matrix(n - 1, src, dst).mul(&src.boundary(n));
            if left != right {
                return Err(AlgebraError::NotChainMap { degree: n });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn betti(&self, n: i64) -> usize {
        self.degrees.iter().find(|d| d.degree == n).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, n: i64) -> &[BigInt] {
        self.degrees.iter().find(|d| d.degree == n).map_or(&[], |d| &d.torsion)
    }

    /// Betti numbers from degree `start` up to the last nonzero one.
    pub fn betti_from(&self, start: i64) -> Vec<usize> {
        let last = self.degrees.iter().filter(|d| d.betti > 0 && d.degree >= start).map(|d| d.degree).max();
        match last {
            Some(hi) => (start..=hi).map(|n| self.betti(n)).collect(),
            None => Vec::new(),
        }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.betti_from(0)
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }

    /// Nontrivial degrees only, shifted by `shift`, for comparing homology across complexes.
    pub fn signature(&self, shift: i64) -> Vec<(i64, usize, Vec<BigInt>)> {
        self.degrees
            .iter()
            .filter(|d| d.betti > 0 || !d.torsion.is_empty())
            .map(|d| (d.degree + shift, d.betti, d.torsion.clone()))
            .collect()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .map(|d| {
                if d.torsion.is_empty() {
                    format!("H{}={}", d.degree, d.betti)
                } else {
                    let t: Vec<String> = d.torsion.iter().map(|x| x.to_string()).collect();
                    format!("H{}={}+tors[{}]", d.degree, d.betti, t.join(","))
                }
            })
            .collect();
        write!(f, "{} over {}", parts.join(" "), self.coefficients)
    }
}

/// Homology of a chain complex. Integral homology goes through invariant factors; over a
/// field the ranks come from elimination in that field.
pub fn homology(cc: &ChainComplex, coeff: Coefficients) -> Result<HomologyResult, AlgebraError> {
    cc.validate()?;
    let degrees: Vec<i64> = cc.degrees().collect();
    let degrees = match coeff {
        Coefficients::Integers => {
            let factors: Vec<Vec<BigInt>> =
                degrees.par_iter().map(|&n| invariant_factors(cc.boundary_ref(n).unwrap())).collect();
            degrees
                .iter()
                .enumerate()
                .map(|(k, &n)| {
                    let below = factors[k].len();
                    let above: &[BigInt] = factors.get(k + 1).map_or(&[], |v| v.as_slice());
                    DegreeHomology {
                        degree: n,
                        betti: cc.rank(n) - below - above.len(),
                        torsion: above.iter().filter(|x| !x.is_one()).cloned().collect(),
                    }
                })
                .collect()
        }
        Coefficients::Rationals => field_degrees(&Rationals, cc, &degrees),
        Coefficients::Prime(p) => field_degrees(&PrimeField::new(p)?, cc, &degrees),
    };
    Ok(HomologyResult { coefficients: coeff, degrees })
}

fn field_degrees<F: Field>(f: &F, cc: &ChainComplex, degrees: &[i64]) -> Vec<DegreeHomology> {
    let ranks: Vec<usize> = degrees.par_iter().map(|&n| sparse_rank(f, cc.boundary_ref(n).unwrap())).collect();
    degrees
        .iter()
        .enumerate()
        .map(|(k, &n)| DegreeHomology {
            degree: n,
            betti: cc.rank(n) - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0),
            torsion: Vec::new(),
        })
        .collect()
}

/// A fixed basis of `H_n` over a field: boundaries first, then chosen cycle representatives.
#[derive(Clone, Debug)]
pub struct HomologyBasis<E> {
    chain_rank: usize,
    boundary_dim: usize,
    representatives: Vec<Vec<E>>,
    solver: CoordinateSolver<E>,
}

impl<E: Clone + PartialEq> HomologyBasis<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, cc: &ChainComplex, n: i64) -> Self {
        let chain_rank = cc.rank(n);
        let d_n = FMatrix::from_int(f, &cc.boundary(n));
        let cycles = kernel(f, &d_n);
        let d_up = FMatrix::from_int(f, &cc.boundary(n + 1));
        let mut columns: Vec<Vec<E>> =
            independent_columns(f, &d_up).into_iter().map(|j| d_up.column(j)).collect();
        let boundary_dim = columns.len();
        let mut all = columns.clone();
        all.extend(cycles.iter().cloned());
        let chosen = independent_columns(f, &FMatrix::from_columns(f, chain_rank, &all));
        let representatives: Vec<Vec<E>> =
            chosen.iter().filter(|&&j| j >= boundary_dim).map(|&j| all[j].clone()).collect();
        columns.extend(representatives.iter().cloned());
        let solver = CoordinateSolver::new(f, chain_rank, &columns);
        HomologyBasis { chain_rank, boundary_dim, representatives, solver }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn chain_rank(&self) -> usize {
        self.chain_rank
    }

    pub fn representatives(&self) -> &[Vec<E>] {
        &self.representatives
    }

    /// Homology coordinates of a cycle.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, cycle: &[E]) -> Vec<E> {
        self.solver.solve(f, cycle)[self.boundary_dim..].to_vec()
    }

    /// Matrix of the map on homology induced by a chain-level matrix into `dst`'s chains.
    pub fn induced<F: Field<Elem = E>>(&self, f: &F, chain_matrix: &FMatrix<E>, dst: &HomologyBasis<E>) -> FMatrix<E> {
        let cols: Vec<Vec<E>> =
            self.representatives.iter().map(|h| dst.coordinates(f, &chain_matrix.apply(f, h))).collect();
        FMatrix::from_columns(f, dst.dim(), &cols)
    }
}

/// Maps on homology induced by a chain map, one matrix per degree of `src`.
pub fn induced_map<F: Field>(
    f: &F,
    map: &ChainMap,
    src: &ChainComplex,
    dst: &ChainComplex,
) -> Result<Vec<(i64, FMatrix<F::Elem>)>, AlgebraError> {
    src.validate()?;
    dst.validate()?;
    map.validate(src, dst)?;
    Ok(src
        .degrees()
        .map(|n| {
            let hs = HomologyBasis::new(f, src, n);
            let hd = HomologyBasis::new(f, dst, n);
            let m = FMatrix::from_int(f, &map.matrix(n, src, dst));
            (n, hs.induced(f, &m, &hd))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> ChainComplex {
        // vertices a b c, edges ab ac bc
        let d1 = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let labels = vec![
            vec!["a".into(), "b".into(), "c".into()],
            vec!["ab".into(), "ac".into(), "bc".into()],
        ];
        ChainComplex::new(0, labels, vec![IntMatrix::zeros(0, 3), d1]).unwrap()
    }

    #[test]
    fn point_homology() {
        let cc = ChainComplex::concentrated(0, vec!["v".into()]);
        let h = homology(&cc, Coefficients::Integers).unwrap();
        assert_eq!(h.betti_numbers(), vec![1]);
    }

    #[test]
    fn hollow_triangle_betti() {
        let h = homology(&hollow_triangle(), Coefficients::Integers).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 1]);
        assert!(!h.has_torsion());
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        let labels = vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]];
        let err = ChainComplex::new(0, labels, vec![IntMatrix::zeros(0, 1), d1, d2]).unwrap_err();
        assert_eq!(err, AlgebraError::BoundarySquare { degree: 2 });
    }

    #[test]
    fn torsion_of_projective_plane_like_complex() {
        // Z --2--> Z : H_0 = Z/2
        let labels = vec![vec!["v".into()], vec!["e".into()]];
        let cc = ChainComplex::new(0, labels, vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[vec![2]])]).unwrap();
        let hz = homology(&cc, Coefficients::Integers).unwrap();
        assert_eq!(hz.torsion(0), &[BigInt::from(2)]);
        let h2 = homology(&cc, Coefficients::Prime(2)).unwrap();
        assert_eq!((h2.betti(0), h2.betti(1)), (1, 1));
        let hq = homology(&cc, Coefficients::Rationals).unwrap();
        assert_eq!(hq.betti_numbers(), Vec::<usize>::new());
    }

    #[test]
    fn identity_induces_identity() {
        let cc = hollow_triangle();
        let id = ChainMap { min_degree: 0, matrices: vec![IntMatrix::identity(3), IntMatrix::identity(3)] };
        let f = Rationals;
        for (_, m) in induced_map(&f, &id, &cc, &cc).unwrap() {
            assert_eq!(m, FMatrix::identity(&f, m.rows()));
        }
    }

    #[test]
    fn vertex_into_edge_is_iso_on_h0() {
        let point = ChainComplex::concentrated(0, vec!["a".into()]);
        let edge = ChainComplex::new(
            0,
            vec![vec!["a".into(), "b".into()], vec!["ab".into()]],
            vec![IntMatrix::zeros(0, 2), IntMatrix::from_rows(&[vec![-1], vec![1]])],
        )
        .unwrap();
        let inc = ChainMap { min_degree: 0, matrices: vec![IntMatrix::from_rows(&[vec![1], vec![0]])] };
        let f = PrimeField::new(3).unwrap();
        let maps = induced_map(&f, &inc, &point, &edge).unwrap();
        assert_eq!(maps[0].1, FMatrix::identity(&f, 1));
    }

    #[test]
    fn rejects_non_chain_map() {
        let edge = ChainComplex::new(
            0,
            vec![vec!["a".into(), "b".into()], vec!["ab".into()]],
            vec![IntMatrix::zeros(0, 2), IntMatrix::from_rows(&[vec![-1], vec![1]])],
        )
        .unwrap();
        let pt2 = ChainComplex::new(
            0,
            vec![vec!["a".into()], vec!["l".into()]],
            vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(1, 1)],
        )
        .unwrap();
        // loop -> edge with loop sent to the edge: boundary mismatch in degree 1
        let m = ChainMap {
            min_degree: 0,
            matrices: vec![IntMatrix::from_rows(&[vec![1], vec![0]]), IntMatrix::from_rows(&[vec![1]])],
        };
        assert_eq!(induced_map(&Rationals, &m, &pt2, &edge).unwrap_err(), AlgebraError::NotChainMap { degree: 1 });
    }
}
