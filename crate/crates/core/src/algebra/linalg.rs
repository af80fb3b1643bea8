//! Dense and sparse linear algebra over an exact field.

use super::field::Field;
use super::matrix::IntMatrix;

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct FMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> FMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        FMatrix { rows, cols, data: vec![vec![f.zero(); cols]; rows] }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i][i] = f.one();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Vec<E>>) -> Self {
        assert_eq!(data.len(), rows);
        assert!(data.iter().all(|r| r.len() == cols));
        FMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns<F: Field<Elem = E>>(f: &F, rows: usize, columns: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(f, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn from_int<F: Field<Elem = E>>(f: &F, m: &IntMatrix) -> Self {
        let mut out = Self::zeros(f, m.rows(), m.cols());
        for j in 0..m.cols() {
            for (i, v) in m.column(j) {
                out.data[*i][j] = f.from_bigint(v);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &FMatrix<E>) -> FMatrix<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !f.is_zero(b) {
                        out.data[i][j] = f.add(&out.data[i][j], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|r| r.iter().all(|v| f.is_zero(v)))
    }

    pub fn select_rows(&self, idx: &[usize]) -> FMatrix<E> {
        FMatrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FMatrix<E> {
        FMatrix {
            rows: self.rows,
            cols: idx.len(),
            data: self.data.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect(),
        }
    }

    pub fn transpose(&self) -> FMatrix<E> {
        let data = (0..self.cols).map(|j| self.data.iter().map(|r| r[j].clone()).collect()).collect();
        FMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.data
    }
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<F: Field>(f: &F, m: &FMatrix<F::Elem>) -> (FMatrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(&a.data[i][c])) else { continue };
        a.data.swap(r, p);
        let inv = f.inv(&a.data[r][c]);
        for v in a.data[r].iter_mut() {
            if !f.is_zero(v) {
                *v = f.mul(v, &inv);
            }
        }
        let prow = a.data[r].clone();
        for i in 0..a.rows {
            if i == r || f.is_zero(&a.data[i][c]) {
                continue;
            }
            let factor = a.data[i][c].clone();
            for (x, y) in a.data[i].iter_mut().zip(prow.iter()) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(f: &F, m: &FMatrix<F::Elem>) -> usize {
    rref(f, m).1.len()
}

/// Basis of the null space `{x : m x = 0}`, one vector per free column in increasing order.
pub fn kernel<F: Field>(f: &F, m: &FMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(f, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(&r.data[i][free]);
            }
            v
        })
        .collect()
}

/// Indices of a maximal independent subset of the columns, chosen greedily left to right.
pub fn independent_columns<F: Field>(f: &F, m: &FMatrix<F::Elem>) -> Vec<usize> {
    rref(f, m).1
}

/// Coordinates of vectors in the span of a fixed list of independent columns.
#[derive(Clone, Debug)]
pub struct CoordinateSolver<E> {
    len: usize,
    rows: Vec<usize>,
    inverse: FMatrix<E>,
}

impl<E: Clone + PartialEq> CoordinateSolver<E> {
    /// `basis` must be linearly independent vectors of length `len`.
    pub fn new<F: Field<Elem = E>>(f: &F, len: usize, basis: &[Vec<E>]) -> Self {
        let m = FMatrix::from_columns(f, len, basis);
        // independent rows of m are the pivot columns of its transpose
        let rows = independent_columns(f, &m.transpose());
        assert_eq!(rows.len(), basis.len(), "basis vectors are not independent");
        let square = m.select_rows(&rows);
        let k = basis.len();
        let mut aug = FMatrix::zeros(f, k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                aug.data[i][j] = square.data[i][j].clone();
            }
            aug.data[i][k + i] = f.one();
        }
        let (red, _) = rref(f, &aug);
        let inverse = red.select_cols(&(k..2 * k).collect::<Vec<_>>());
        CoordinateSolver { len, rows, inverse }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of `v`, which must lie in the span.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.len);
        let sub: Vec<E> = self.rows.iter().map(|&i| v[i].clone()).collect();
        self.inverse.apply(f, &sub)
    }
}

/// Rank of an integer matrix reduced into the field, by sparse elimination.
pub fn sparse_rank<F: Field>(f: &F, m: &IntMatrix) -> usize {
    type Row<E> = Vec<(usize, E)>;
    let mut rows: Vec<Row<F::Elem>> = vec![Vec::new(); m.rows()];
    for j in 0..m.cols() {
        for (i, v) in m.column(j) {
            let e = f.from_bigint(v);
            if !f.is_zero(&e) {
                rows[*i].push((j, e));
            }
        }
    }
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols()];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_rows[*c].push(i);
        }
    }
    let mut active = vec![true; m.rows()];
    let mut rank = 0;
    let find = |row: &Row<F::Elem>, c: usize| row.binary_search_by_key(&c, |e| e.0).ok();
    for c in 0..m.cols() {
        let mut cand = std::mem::take(&mut col_rows[c]);
        cand.sort_unstable();
        cand.dedup();
        cand.retain(|&r| active[r] && find(&rows[r], c).is_some());
        let Some(&pr) = cand.iter().min_by_key(|&&r| rows[r].len()) else { continue };
        let prow = std::mem::take(&mut rows[pr]);
        let pinv = f.inv(&prow[find(&prow, c).unwrap()].1);
        for &r in &cand {
            if r == pr {
                continue;
            }
            let target = std::mem::take(&mut rows[r]);
            let factor = f.mul(&target[find(&target, c).unwrap()].1, &pinv);
            let mut out = Vec::with_capacity(target.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < target.len() || j < prow.len() {
                let ci = target.get(i).map_or(usize::MAX, |e| e.0);
                let cj = prow.get(j).map_or(usize::MAX, |e| e.0);
                if ci < cj {
                    out.push(target[i].clone());
                    i += 1;
                } else if cj < ci {
                    out.push((cj, f.neg(&f.mul(&factor, &prow[j].1))));
                    col_rows[cj].push(r);
                    j += 1;
                } else {
                    let v = f.sub(&target[i].1, &f.mul(&factor, &prow[j].1));
                    if !f.is_zero(&v) {
                        out.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            rows[r] = out;
        }
        active[pr] = false;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn kernel_of_rank_one() {
        let f = Rationals;
        let m = FMatrix::from_int(&f, &IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]));
        let k = kernel(&f, &m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(&f, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn sparse_rank_depends_on_characteristic() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(sparse_rank(&Rationals, &m), 2);
        assert_eq!(sparse_rank(&PrimeField::new(2).unwrap(), &m), 1);
        assert_eq!(sparse_rank(&PrimeField::new(3).unwrap(), &m), 1);
        assert_eq!(sparse_rank(&PrimeField::new(5).unwrap(), &m), 2);
    }

    #[test]
    fn solver_recovers_coordinates() {
        let f = PrimeField::new(7).unwrap();
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let s = CoordinateSolver::new(&f, 3, &basis);
        // 3*b0 + 5*b1
        let v = vec![3, 5, 1];
        assert_eq!(s.solve(&f, &v), vec![3, 5]);
    }
}
