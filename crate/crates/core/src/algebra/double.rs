use super::chain::{homology, ChainComplex};
use super::field::Field;
use super::linalg::{kernel, rank, FMatrix};
use super::matrix::IntMatrix;
use super::AlgebraError;
use std::collections::BTreeMap;

/// Bigraded free module with a horizontal differential `(p,q) -> (p-1,q)` and a vertical
/// differential `(p,q) -> (p,q-1)`.
///
/// The vertical matrices already carry whatever sign twist the builder chose, so the two
/// differentials anticommute and the total differential is their plain sum.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleComplex {
    cells: BTreeMap<(i64, i64), Vec<String>>,
    horizontal: BTreeMap<(i64, i64), IntMatrix>,
    vertical: BTreeMap<(i64, i64), IntMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Filter by column index `p`; the first page takes vertical homology.
    ColumnsFirst,
    /// Filter by row index `q`; the first page takes horizontal homology.
    RowsFirst,
}

impl Orientation {
    fn level(self, (p, q): (i64, i64)) -> i64 {
        match self {
            Orientation::ColumnsFirst => p,
            Orientation::RowsFirst => q,
        }
    }
}

impl DoubleComplex {
    /// Validated constructor. Missing differentials are zero; empty cells may be omitted.
    pub fn new(
        cells: BTreeMap<(i64, i64), Vec<String>>,
        horizontal: BTreeMap<(i64, i64), IntMatrix>,
        vertical: BTreeMap<(i64, i64), IntMatrix>,
    ) -> Result<Self, AlgebraError> {
        let dc = DoubleComplex { cells, horizontal, vertical };
        dc.validate()?;
        Ok(dc)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        for (&(p, q), m) in &self.horizontal {
            if m.cols() != self.rank(p, q) || m.rows() != self.rank(p - 1, q) {
                return Err(AlgebraError::Shape(format!("horizontal map at ({p}, {q})")));
            }
        }
        for (&(p, q), m) in &self.vertical {
            if m.cols() != self.rank(p, q) || m.rows() != self.rank(p, q - 1) {
                return Err(AlgebraError::Shape(format!("vertical map at ({p}, {q})")));
            }
        }
        for &(p, q) in self.cells.keys() {
            if !self.h(p - 1, q).mul(&self.h(p, q)).is_zero() {
                return Err(AlgebraError::BoundarySquare { degree: p + q });
            }
            if !self.v(p, q - 1).mul(&self.v(p, q)).is_zero() {
                return Err(AlgebraError::BoundarySquare { degree: p + q });
            }
            let a = self.h(p, q - 1).mul(&self.v(p, q));
            let b = self.v(p - 1, q).mul(&self.h(p, q));
            if !a.add(&b).is_zero() {
                return Err(AlgebraError::Anticommute { p, q });
            }
        }
        Ok(())
    }

    pub fn rank(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, |c| c.len())
    }

    pub fn labels(&self, p: i64, q: i64) -> &[String] {
        self.cells.get(&(p, q)).map_or(&[], |c| c)
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.cells.iter().map(|(k, v)| (*k, v.len()))
    }

    /// Horizontal differential out of `(p, q)`.
    pub fn h(&self, p: i64, q: i64) -> IntMatrix {
        self.horizontal.get(&(p, q)).cloned().unwrap_or_else(|| IntMatrix::zeros(self.rank(p - 1, q), self.rank(p, q)))
    }

    /// Vertical differential out of `(p, q)`, sign twist included.
    pub fn v(&self, p: i64, q: i64) -> IntMatrix {
        self.vertical.get(&(p, q)).cloned().unwrap_or_else(|| IntMatrix::zeros(self.rank(p, q - 1), self.rank(p, q)))
    }

    fn nonempty(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cells.iter().filter(|(_, v)| !v.is_empty()).map(|(k, _)| *k)
    }

    /// Range of total degrees `p + q` over nonempty cells.
    pub fn total_degrees(&self) -> Option<(i64, i64)> {
        let lo = self.nonempty().map(|(p, q)| p + q).min()?;
        let hi = self.nonempty().map(|(p, q)| p + q).max()?;
        Some((lo, hi))
    }

    /// Cells of total degree `n` in increasing `p`, with their offsets inside `Tot_n`.
    fn layout(&self, n: i64) -> Vec<((i64, i64), usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for (&(p, q), labels) in &self.cells {
            if p + q == n && !labels.is_empty() {
                out.push(((p, q), off, labels.len()));
                off += labels.len();
            }
        }
        out
    }

    fn tot_rank(&self, n: i64) -> usize {
        self.layout(n).iter().map(|c| c.2).sum()
    }

    fn tot_boundary(&self, n: i64) -> IntMatrix {
        let src = self.layout(n);
        let dst = self.layout(n - 1);
        let rows = self.tot_rank(n - 1);
        let cols = self.tot_rank(n);
        let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); cols];
        let mut big: Vec<(usize, usize, num_bigint::BigInt)> = Vec::new();
        for &((p, q), off, _) in &src {
            for (target, m) in [((p - 1, q), self.horizontal.get(&(p, q))), ((p, q - 1), self.vertical.get(&(p, q)))] {
                let (Some(m), Some(&(_, toff, _))) = (m, dst.iter().find(|c| c.0 == target)) else { continue };
                for j in 0..m.cols() {
                    for (i, v) in m.column(j) {
                        match i64::try_from(v) {
                            Ok(x) => columns[off + j].push((toff + i, x)),
                            Err(_) => big.push((toff + i, off + j, v.clone())),
                        }
                    }
                }
            }
        }
        let m = IntMatrix::from_small_columns(rows, columns);
        if big.is_empty() {
            m
        } else {
            let mut d = m.to_dense();
            for (i, j, v) in big {
                d[i][j] += v;
            }
            IntMatrix::from_dense(d, cols)
        }
    }

    /// Total complex: `Tot_n` is the sum of cells with `p + q = n`, ordered by `p`.
    pub fn total_complex(&self) -> Result<ChainComplex, AlgebraError> {
        self.validate()?;
        let Some((lo, hi)) = self.total_degrees() else { return Ok(ChainComplex::empty()) };
        let mut labels = Vec::new();
        let mut boundaries = Vec::new();
        for n in lo..=hi {
            let mut l = Vec::new();
            for ((p, q), _, _) in self.layout(n) {
                l.extend(self.labels(p, q).iter().cloned());
            }
            labels.push(l);
            boundaries.push(if n == lo { IntMatrix::zeros(0, self.tot_rank(n)) } else { self.tot_boundary(n) });
        }
        ChainComplex::new(lo, labels, boundaries)
    }
}

/// Dimensions of one page of a spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSPage {
    pub r: i64,
    pub orientation: Orientation,
    pub cells: BTreeMap<(i64, i64), usize>,
}

impl SSPage {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Sum of dimensions along the antidiagonal `p + q = n`.
    pub fn antidiagonal(&self, n: i64) -> usize {
        self.cells.iter().filter(|((p, q), _)| p + q == n).map(|(_, d)| d).sum()
    }

    pub fn nonzero(&self) -> Vec<((i64, i64), usize)> {
        self.cells.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (*k, *d)).collect()
    }
}

struct TotalData<E> {
    layouts: BTreeMap<i64, Vec<((i64, i64), usize, usize)>>,
    boundaries: BTreeMap<i64, FMatrix<E>>,
}

impl<E: Clone + PartialEq> TotalData<E> {
    fn new<F: Field<Elem = E>>(f: &F, dc: &DoubleComplex) -> Self {
        let mut layouts = BTreeMap::new();
        let mut boundaries = BTreeMap::new();
        if let Some((lo, hi)) = dc.total_degrees() {
            for n in lo - 1..=hi + 1 {
                layouts.insert(n, dc.layout(n));
            }
            for n in lo..=hi + 1 {
                boundaries.insert(n, FMatrix::from_int(f, &dc.tot_boundary(n)));
            }
        }
        TotalData { layouts, boundaries }
    }

    /// Coordinates of `Tot_n` whose filtration level satisfies `keep`.
    fn coords(&self, n: i64, o: Orientation, keep: impl Fn(i64) -> bool) -> Vec<usize> {
        let mut out = Vec::new();
        for &(cell, off, len) in self.layouts.get(&n).map_or(&[][..], |v| v) {
            if keep(o.level(cell)) {
                out.extend(off..off + len);
            }
        }
        out
    }
}

/// Dimension of `E^r` at the cell with filtration level `s` in total degree `n`:
/// `(Z^r_s + F_{s-1}) / (F_s ∩ d F_{s+r-1} + F_{s-1})` with `Z^r_s = {x in F_s : dx in F_{s-r}}`.
fn page_dim<F: Field>(f: &F, t: &TotalData<F::Elem>, o: Orientation, n: i64, s: i64, r: i64) -> usize {
    let at_s = t.coords(n, o, |l| l == s);
    if at_s.is_empty() {
        return 0;
    }
    let numerator = {
        let cols = t.coords(n, o, |l| l <= s);
        let rows = t.coords(n - 1, o, |l| l > s - r);
        let d = &t.boundaries[&n];
        let sub = d.select_rows(&rows).select_cols(&cols);
        let z = kernel(f, &sub);
        let pos: Vec<usize> = at_s.iter().map(|c| cols.binary_search(c).unwrap()).collect();
        let proj: Vec<Vec<F::Elem>> = z.iter().map(|v| pos.iter().map(|&i| v[i].clone()).collect()).collect();
        rank(f, &FMatrix::from_columns(f, at_s.len(), &proj))
    };
    let denominator = match t.boundaries.get(&(n + 1)) {
        None => 0,
        Some(d) => {
            let cols = t.coords(n + 1, o, |l| l <= s + r - 1);
            let rows = t.coords(n, o, |l| l > s);
            let w = kernel(f, &d.select_rows(&rows).select_cols(&cols));
            let d_at_s = d.select_rows(&at_s).select_cols(&cols);
            let images: Vec<Vec<F::Elem>> = w.iter().map(|y| d_at_s.apply(f, y)).collect();
            rank(f, &FMatrix::from_columns(f, at_s.len(), &images))
        }
    };
    numerator - denominator
}

/// Page `E^r` of the spectral sequence of the filtration selected by `orientation`.
pub fn ss_page<F: Field>(f: &F, dc: &DoubleComplex, r: i64, orientation: Orientation) -> Result<SSPage, AlgebraError> {
    if r < 0 {
        return Err(AlgebraError::NegativePage(r));
    }
    dc.validate()?;
    let t = TotalData::new(f, dc);
    Ok(page_from(f, dc, &t, r, orientation))
}

fn page_from<F: Field>(f: &F, dc: &DoubleComplex, t: &TotalData<F::Elem>, r: i64, o: Orientation) -> SSPage {
    let cells = dc
        .cells
        .keys()
        .map(|&(p, q)| ((p, q), page_dim(f, t, o, p + q, o.level((p, q)), r)))
        .collect();
    SSPage { r, orientation: o, cells }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeConvergence {
    pub degree: i64,
    pub columns_limit: usize,
    pub rows_limit: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    /// First page equal to the limit page, per orientation.
    pub columns_stable_page: i64,
    pub rows_stable_page: i64,
    pub columns_limit: SSPage,
    pub rows_limit: SSPage,
    pub degrees: Vec<DegreeConvergence>,
    pub converges: bool,
}

/// Runs both spectral sequences to their limit and compares antidiagonal sums with the
/// homology of the total complex.
pub fn ss_converges<F: Field>(f: &F, dc: &DoubleComplex) -> Result<ConvergenceReport, AlgebraError> {
    dc.validate()?;
    let tot = dc.total_complex()?;
    let h = homology(&tot, f.descriptor())?;
    let t = TotalData::new(f, dc);
    let span = |o: Orientation| {
        let levels: Vec<i64> = dc.nonempty().map(|c| o.level(c)).collect();
        levels.iter().max().zip(levels.iter().min()).map_or(0, |(a, b)| a - b)
    };
    let mut limits = Vec::new();
    for o in [Orientation::ColumnsFirst, Orientation::RowsFirst] {
        let last = span(o) + 2;
        let limit = page_from(f, dc, &t, last, o);
        let mut stable = last;
        for r in 1..last {
            let page = page_from(f, dc, &t, r, o);
            if page.cells == limit.cells {
                stable = r;
                break;
            }
        }
        limits.push((stable, limit));
    }
    let (rows_stable, rows_limit) = limits.pop().unwrap();
    let (columns_stable, columns_limit) = limits.pop().unwrap();
    let degrees: Vec<DegreeConvergence> = dc
        .total_degrees()
        .map(|(lo, hi)| {
            (lo..=hi)
                .map(|n| DegreeConvergence {
                    degree: n,
                    columns_limit: columns_limit.antidiagonal(n),
                    rows_limit: rows_limit.antidiagonal(n),
                    total: h.betti(n),
                })
                .collect()
        })
        .unwrap_or_default();
    let converges = degrees.iter().all(|d| d.columns_limit == d.total && d.rows_limit == d.total);
    Ok(ConvergenceReport {
        columns_stable_page: columns_stable,
        rows_stable_page: rows_stable,
        columns_limit,
        rows_limit,
        degrees,
        converges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Product of two intervals as a double complex: columns are chains of the first edge.
    fn square() -> DoubleComplex {
        let mut cells = BTreeMap::new();
        cells.insert((0, 0), labels(&["a0", "a1", "b0", "b1"]));
        cells.insert((1, 0), labels(&["e0", "e1"]));
        cells.insert((0, 1), labels(&["a_f", "b_f"]));
        cells.insert((1, 1), labels(&["ef"]));
        let mut h = BTreeMap::new();
        // e_i = b_i - a_i
        h.insert((1, 0), IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1], vec![1, 0], vec![0, 1]]));
        h.insert((1, 1), IntMatrix::from_rows(&[vec![-1], vec![1]]));
        let mut v = BTreeMap::new();
        // x_f = x1 - x0, untwisted in column 0
        v.insert((0, 1), IntMatrix::from_rows(&[vec![-1, 0], vec![1, 0], vec![0, -1], vec![0, 1]]));
        // twisted by -1 in column 1
        v.insert((1, 1), IntMatrix::from_rows(&[vec![1], vec![-1]]));
        DoubleComplex::new(cells, h, v).unwrap()
    }

    #[test]
    fn single_cell_total_complex() {
        let mut cells = BTreeMap::new();
        cells.insert((0, 0), labels(&["x"]));
        let dc = DoubleComplex::new(cells, BTreeMap::new(), BTreeMap::new()).unwrap();
        let tot = dc.total_complex().unwrap();
        assert_eq!(tot.degrees(), 0..=0);
        assert!(ss_converges(&Rationals, &dc).unwrap().converges);
    }

    #[test]
    fn square_total_is_contractible() {
        let dc = square();
        let tot = dc.total_complex().unwrap();
        let h = homology(&tot, crate::algebra::Coefficients::Integers).unwrap();
        assert_eq!(h.betti_numbers(), vec![1]);
        let page1 = ss_page(&Rationals, &dc, 1, Orientation::ColumnsFirst).unwrap();
        // vertical homology: each column is an interval times cells of the edge
        assert_eq!(page1.dim(0, 0), 2);
        assert_eq!(page1.dim(1, 0), 1);
        assert_eq!(page1.dim(0, 1), 0);
        let page2 = ss_page(&Rationals, &dc, 2, Orientation::ColumnsFirst).unwrap();
        assert_eq!(page2.nonzero(), vec![((0, 0), 1)]);
        let report = ss_converges(&Rationals, &dc).unwrap();
        assert!(report.converges);
    }

    #[test]
    fn page_zero_is_the_grid() {
        let dc = square();
        let p0 = ss_page(&Rationals, &dc, 0, Orientation::RowsFirst).unwrap();
        assert_eq!(p0.dim(0, 0), 4);
        assert_eq!(p0.dim(1, 1), 1);
        assert_eq!(ss_page(&Rationals, &dc, -1, Orientation::RowsFirst).unwrap_err(), AlgebraError::NegativePage(-1));
    }

    #[test]
    fn rejects_commuting_squares() {
        let mut dc = square();
        dc.vertical.insert((1, 1), IntMatrix::from_rows(&[vec![-1], vec![1]]));
        assert_eq!(dc.validate().unwrap_err(), AlgebraError::Anticommute { p: 1, q: 1 });
    }
}
