use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Result of a Smith normal form computation: `u * m * v == s`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries in order; each divides the next.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i))
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Dense {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    // row_i += q * row_k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        let src = self.a[k].clone();
        for (x, y) in self.a[i].iter_mut().zip(src.iter()) {
            if !y.is_zero() {
                *x += q * y;
            }
        }
        if let Some(u) = &mut self.u {
            let src = u[k].clone();
            for (x, y) in u[i].iter_mut().zip(src.iter()) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
    }

    // col_j += q * col_k
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[k].is_zero() {
                let t = q * &row[k];
                row[j] += t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[k].is_zero() {
                    let t = q * &row[k];
                    row[j] += t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn run(&mut self) {
        let rows = self.a.len();
        let cols = if rows == 0 { 0 } else { self.a[0].len() };
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = smallest(&self.a, t..rows, t..cols) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.add_col(j, t, &-q);
                    }
                }
                // Any leftover in the pivot row or column is a remainder smaller than the pivot.
                if let Some((i, _)) = smallest(&self.a, t + 1..rows, t..t + 1) {
                    self.swap_rows(t, i);
                    continue;
                }
                if let Some((_, j)) = smallest(&self.a, t..t + 1, t + 1..cols) {
                    self.swap_cols(t, j);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

fn smallest(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[i][j];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |b| ax < b.2) {
                let one = ax.is_one();
                best = Some((i, j, ax));
                if one {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn identity_dense(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form by pivoting on the smallest nonzero entry.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = Dense { a: m.to_dense(), u: Some(identity_dense(rows)), v: Some(identity_dense(cols)) };
    d.run();
    SmithForm {
        s: IntMatrix::from_dense(d.a, cols),
        u: IntMatrix::from_dense(d.u.unwrap(), rows),
        v: IntMatrix::from_dense(d.v.unwrap(), cols),
    }
}

fn dense_invariant_factors(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut d = Dense { a, u: None, v: None };
    d.run();
    (0..n.min(cols)).map(|i| d.a[i][i].clone()).take_while(|x| !x.is_zero()).collect()
}

/// Nonzero invariant factors of `m`, each dividing the next.
///
/// Unit pivots are eliminated first on a sparse machine-integer copy; whatever is left is
/// handed to the dense arbitrary-precision reduction. Any overflow restarts densely.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    match sparse_unit_reduction(m) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_invariant_factors(rest));
            out
        }
        None => dense_invariant_factors(m.to_dense()),
    }
}

/// Rank over the integers (equivalently over the rationals).
pub fn integer_rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

type Row = Vec<(usize, i64)>;

// row_r - f * row_p, None on overflow
fn axpy(target: &Row, pivot: &Row, f: i64) -> Option<Row> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i]);
            i += 1;
        } else if cj < ci {
            out.push((cj, pivot[j].1.checked_mul(f)?.checked_neg()?));
            j += 1;
        } else {
            let v = target[i].1.checked_sub(pivot[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn sparse_unit_reduction(m: &IntMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut rows: Vec<Row> = vec![Vec::new(); nrows];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for j in 0..ncols {
        for (i, v) in m.column(j) {
            rows[*i].push((j, v.to_i64()?));
            col_rows[j].push(*i);
        }
    }
    let mut active = vec![true; nrows];
    let mut col_done = vec![false; ncols];
    let mut units = 0;
    let entry = |row: &Row, c: usize| row.binary_search_by_key(&c, |e| e.0).ok().map(|k| row[k].1);
    loop {
        let mut progress = false;
        for c in 0..ncols {
            if col_done[c] {
                continue;
            }
            let mut cand = std::mem::take(&mut col_rows[c]);
            cand.sort_unstable();
            cand.dedup();
            cand.retain(|&r| active[r] && entry(&rows[r], c).is_some());
            if cand.is_empty() {
                col_done[c] = true;
                continue;
            }
            let pivot = cand
                .iter()
                .copied()
                .filter(|&r| entry(&rows[r], c).map_or(false, |v| v.abs() == 1))
                .min_by_key(|&r| rows[r].len());
            let Some(pr) = pivot else {
                col_rows[c] = cand;
                continue;
            };
            let pv = entry(&rows[pr], c).unwrap();
            let prow = std::mem::take(&mut rows[pr]);
            for &r in &cand {
                if r == pr {
                    continue;
                }
                let f = entry(&rows[r], c).unwrap().checked_mul(pv)?;
                let new_row = axpy(&rows[r], &prow, f)?;
                for &(cc, _) in &new_row {
                    if rows[r].binary_search_by_key(&cc, |e| e.0).is_err() {
                        col_rows[cc].push(r);
                    }
                }
                rows[r] = new_row;
            }
            active[pr] = false;
            col_done[c] = true;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|&r| active[r] && !rows[r].is_empty()).collect();
    let mut live_cols: Vec<usize> = live_rows.iter().flat_map(|&r| rows[r].iter().map(|e| e.0)).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for &(c, v) in &rows[r] {
            let j = live_cols.binary_search(&c).unwrap();
            dense[i][j] = BigInt::from(v);
        }
    }
    Some((units, dense))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(f.u.mul(m).mul(&f.v), f.s);
        f
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let f = check(&m);
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(3, 2);
        assert!(check(&z).diagonal().is_empty());
        let i = IntMatrix::identity(4);
        assert_eq!(check(&i).diagonal(), vec![BigInt::one(); 4]);
    }

    #[test]
    fn sparse_path_agrees_with_dense() {
        // boundary of a hollow triangle plus a torsion block
        let m = IntMatrix::from_rows(&[
            vec![-1, 0, -1, 0],
            vec![1, -1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 0, 6],
        ]);
        let dense = check(&m).diagonal();
        assert_eq!(invariant_factors(&m), dense);
        assert_eq!(dense, vec![BigInt::one(), BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn overflowing_entries_fall_back() {
        let big = i64::MAX;
        let m = IntMatrix::from_rows(&[vec![BigInt::from(big), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(big)]]);
        let dense = check(&m).diagonal();
        assert_eq!(invariant_factors(&m), dense);
    }
}
