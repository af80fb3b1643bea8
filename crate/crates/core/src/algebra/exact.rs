use super::chain::{ChainComplex, ChainMap, HomologyBasis};
use super::field::Field;
use super::linalg::{rank, FMatrix};
use super::AlgebraError;

/// Bookkeeping for one degree of a sequence `... -> P_n -α-> S_n -β-> J_n -> P_{n-1} -> ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesDegree {
    pub degree: i64,
    pub first: usize,
    pub middle: usize,
    pub last: usize,
    pub rank_alpha: usize,
    pub rank_beta: usize,
    pub composite_zero: bool,
    /// `dim ker β_n == rank α_n`
    pub exact_at_middle: bool,
    /// `dim ker α_n == dim J_{n+1} - rank β_{n+1}`, i.e. the connecting map can close the gap.
    pub connecting_fits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub degrees: Vec<LesDegree>,
    pub exact: bool,
}

/// Checks that the known maps of a long exact sequence admit connecting maps.
///
/// `alpha[k]` and `beta[k]` are the maps in degree `min_degree + k`; the three dimension
/// lists are indexed the same way and are zero outside. The check also covers degree
/// `min_degree - 1`, where it demands that `β` be onto in the bottom degree.
pub fn verify_exact_sequence<F: Field>(
    f: &F,
    min_degree: i64,
    first: &[usize],
    middle: &[usize],
    last: &[usize],
    alpha: &[FMatrix<F::Elem>],
    beta: &[FMatrix<F::Elem>],
) -> Result<ExactnessReport, AlgebraError> {
    let len = first.len();
    if [middle.len(), last.len(), alpha.len(), beta.len()].iter().any(|&l| l != len) {
        return Err(AlgebraError::Shape("sequence lists have different lengths".into()));
    }
    for k in 0..len {
        if alpha[k].rows() != middle[k] || alpha[k].cols() != first[k] {
            return Err(AlgebraError::Shape(format!("alpha in degree {}", min_degree + k as i64)));
        }
        if beta[k].rows() != last[k] || beta[k].cols() != middle[k] {
            return Err(AlgebraError::Shape(format!("beta in degree {}", min_degree + k as i64)));
        }
    }
    let ra: Vec<usize> = alpha.iter().map(|m| rank(f, m)).collect();
    let rb: Vec<usize> = beta.iter().map(|m| rank(f, m)).collect();
    let mut degrees = Vec::new();
    // slot k = -1 is the degree below the range, where every space is zero
    for k in -1..len as i64 {
        let at = |v: &[usize], k: i64| if k >= 0 && (k as usize) < len { v[k as usize] } else { 0 };
        let (p, s, j) = (at(first, k), at(middle, k), at(last, k));
        let (a, b) = (at(&ra, k), at(&rb, k));
        let composite_zero = k < 0 || beta[k as usize].mul(f, &alpha[k as usize]).is_zero(f);
        degrees.push(LesDegree {
            degree: min_degree + k,
            first: p,
            middle: s,
            last: j,
            rank_alpha: a,
            rank_beta: b,
            composite_zero,
            exact_at_middle: s - b == a,
            connecting_fits: p - a == at(last, k + 1) - at(&rb, k + 1),
        });
    }
    let exact = degrees.iter().all(|d| d.composite_zero && d.exact_at_middle && d.connecting_fits);
    Ok(ExactnessReport { degrees, exact })
}

/// Exactness check for `H(first) -α-> H(middle) -β-> H(last)` with maps induced by chain maps.
pub fn verify_chain_les<F: Field>(
    f: &F,
    first: &ChainComplex,
    middle: &ChainComplex,
    last: &ChainComplex,
    alpha: &ChainMap,
    beta: &ChainMap,
) -> Result<ExactnessReport, AlgebraError> {
    for c in [first, middle, last] {
        c.validate()?;
    }
    alpha.validate(first, middle)?;
    beta.validate(middle, last)?;
    let lo = [first, middle, last].iter().map(|c| c.min_degree()).min().unwrap();
    let hi = [first, middle, last].iter().map(|c| c.max_degree()).max().unwrap();
    let (mut dp, mut ds, mut dj, mut am, mut bm) = (vec![], vec![], vec![], vec![], vec![]);
    for n in lo..=hi.max(lo) {
        let hp = HomologyBasis::new(f, first, n);
        let hs = HomologyBasis::new(f, middle, n);
        let hj = HomologyBasis::new(f, last, n);
        am.push(hp.induced(f, &FMatrix::from_int(f, &alpha.matrix(n, first, middle)), &hs));
        bm.push(hs.induced(f, &FMatrix::from_int(f, &beta.matrix(n, middle, last)), &hj));
        dp.push(hp.dim());
        ds.push(hs.dim());
        dj.push(hj.dim());
    }
    verify_exact_sequence(f, lo, &dp, &ds, &dj, &am, &bm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;
    use num_rational::BigRational;

    fn q(rows: usize, cols: usize, v: &[i64]) -> FMatrix<BigRational> {
        let f = Rationals;
        let data = (0..rows).map(|i| (0..cols).map(|j| f.from_i64(v[i * cols + j])).collect()).collect();
        FMatrix::from_rows(rows, cols, data)
    }

    #[test]
    fn all_zero_is_exact() {
        let f = Rationals;
        let r = verify_exact_sequence(&f, 0, &[0], &[0], &[0], &[q(0, 0, &[])], &[q(0, 0, &[])]).unwrap();
        assert!(r.exact);
    }

    #[test]
    fn split_short_exact() {
        let f = Rationals;
        let alpha = q(2, 1, &[1, 1]);
        let beta = q(1, 2, &[1, -1]);
        let r = verify_exact_sequence(&f, 0, &[1], &[2], &[1], &[alpha], &[beta]).unwrap();
        assert!(r.exact, "{r:?}");
    }

    #[test]
    fn non_exact_is_reported() {
        let f = Rationals;
        let alpha = q(2, 1, &[1, 0]);
        let beta = q(1, 2, &[1, 0]);
        let r = verify_exact_sequence(&f, 0, &[1], &[2], &[1], &[alpha], &[beta]).unwrap();
        assert!(!r.exact);
        assert!(!r.degrees[1].composite_zero);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let f = Rationals;
        let err = verify_exact_sequence(&f, 0, &[1], &[2], &[1], &[q(1, 1, &[1])], &[q(1, 2, &[1, 1])]);
        assert!(matches!(err, Err(AlgebraError::Shape(_))));
    }
}
