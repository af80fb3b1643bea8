use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Integer matrix stored column-sparse with arbitrary-precision entries.
///
/// Each column is a list of `(row, value)` pairs sorted by row with no zero values.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, BigInt::one()));
        }
        m
    }

    /// Builds a matrix from dense rows. All rows must share one length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged row {i}");
            for (j, v) in row.iter().enumerate() {
                let v: BigInt = v.clone().into();
                if !v.is_zero() {
                    m.columns[j].push((i, v));
                }
            }
        }
        m
    }

    /// Builds a matrix from small-integer columns; duplicate rows in a column are summed.
    pub fn from_small_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(c.len());
                let mut acc: Option<(usize, i64)> = None;
                for (r, v) in c {
                    assert!(r < rows, "row index {r} out of range {rows}");
                    match acc {
                        Some((ar, av)) if ar == r => acc = Some((r, av + v)),
                        Some((ar, av)) => {
                            if av != 0 {
                                out.push((ar, BigInt::from(av)));
                            }
                            acc = Some((r, v));
                        }
                        None => acc = Some((r, v)),
                    }
                }
                if let Some((ar, av)) = acc {
                    if av != 0 {
                        out.push((ar, BigInt::from(av)));
                    }
                }
                out
            })
            .collect();
        IntMatrix { rows, cols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn from_dense(d: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let rows = d.len();
        let mut m = Self::zeros(rows, cols);
        for (i, row) in d.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.columns[j].push((i, v));
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                t.columns[*i].push((j, v.clone()));
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for col in &mut m.columns {
            for e in col.iter_mut() {
                e.1 = -e.1.clone();
            }
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); self.rows];
        let mut touched: Vec<usize> = Vec::new();
        for (j, col) in other.columns.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    if acc[*i].is_zero() {
                        touched.push(*i);
                    }
                    acc[*i] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &i in &touched {
                let v = std::mem::take(&mut acc[i]);
                if !v.is_zero() {
                    out.columns[j].push((i, v));
                }
            }
            touched.clear();
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut d = self.to_dense();
        for (j, col) in other.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] += v;
            }
        }
        Self::from_dense(d, self.cols)
    }

    /// Places `blocks[i][j]` at block row i, block column j. Every block row must agree on
    /// its row count and every block column on its column count.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[(usize, usize, &IntMatrix)]) -> IntMatrix {
        let row_off: Vec<usize> = offsets(row_sizes);
        let col_off: Vec<usize> = offsets(col_sizes);
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut m = Self::zeros(rows, cols);
        for (bi, bj, b) in blocks {
            assert_eq!(b.rows, row_sizes[*bi]);
            assert_eq!(b.cols, col_sizes[*bj]);
            for (j, col) in b.columns.iter().enumerate() {
                for (i, v) in col {
                    m.columns[col_off[*bj] + j].push((row_off[*bi] + i, v.clone()));
                }
            }
        }
        for col in &mut m.columns {
            col.sort_by_key(|e| e.0);
        }
        m
    }

    /// Largest absolute entry, zero for an empty matrix.
    pub fn max_abs(&self) -> BigInt {
        self.columns
            .iter()
            .flat_map(|c| c.iter().map(|e| e.1.abs()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for s in sizes {
        off.push(acc);
        acc += s;
    }
    off
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_hand_computation() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn small_columns_merge_duplicates() {
        let m = IntMatrix::from_small_columns(2, vec![vec![(1, 1), (0, 2), (1, -1)]]);
        assert_eq!(m.get(0, 0), BigInt::from(2));
        assert_eq!(m.get(1, 0), BigInt::zero());
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn transpose_round_trip() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 5], vec![0, -2, 0]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 0), BigInt::from(5));
    }
}
