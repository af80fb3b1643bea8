use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use relhom::algebra::{
    homology, rank, smith_normal_form, ss_page, ChainComplex, Coefficients, DoubleComplex, FMatrix, HomologyBasis,
    IntMatrix, Orientation, Rationals,
};
use relhom::cosheaf::relational_double_complex;
use relhom::random;

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=40, 1usize..=40).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r).prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_round_trip(m in matrix_strategy()) {
        let sf = smith_normal_form(&m);
        prop_assert_eq!(sf.u.mul(&m).mul(&sf.v), sf.s.clone());
        let d = sf.diagonal();
        for i in 0..sf.s.rows() {
            for j in 0..sf.s.cols() {
                if i != j {
                    prop_assert!(sf.s.get(i, j).is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
        prop_assert!(d.iter().all(|x| *x > BigInt::zero()));
    }
}

fn torsion_count(h: &relhom::algebra::HomologyResult, n: i64, p: u64) -> usize {
    h.torsion(n).iter().filter(|t| (*t % BigInt::from(p)).is_zero()).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn universal_coefficients(seed in any::<u64>()) {
        let (cc, _) = random::random_torsion_complex(&mut random::rng(seed), 3);
        cc.validate().unwrap();
        let z = homology(&cc, Coefficients::Integers).unwrap();
        let q = homology(&cc, Coefficients::Rationals).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(q.betti(n), z.betti(n));
        }
        for p in [2u64, 3, 5] {
            let hp = homology(&cc, Coefficients::prime(p).unwrap()).unwrap();
            for n in 0..=3 {
                let expected = z.betti(n) + torsion_count(&z, n, p) + torsion_count(&z, n - 1, p);
                prop_assert_eq!(hp.betti(n), expected, "degree {} mod {}", n, p);
            }
        }
    }

    #[test]
    fn product_complexes_square_to_zero(seed in any::<u64>()) {
        let cr = random::random_complex_relation(&mut random::rng(seed));
        relhom::relational::relational_product(&cr).chain_complex().validate().unwrap();
        relhom::relational::relational_join(&cr).chain_complex().validate().unwrap();
        let dc = relational_double_complex(&cr, true);
        dc.total_complex().unwrap().validate().unwrap();
    }
}

fn column(dc: &DoubleComplex, p: i64, lo: i64, hi: i64) -> ChainComplex {
    let labels = (lo..=hi).map(|q| dc.labels(p, q).to_vec()).collect();
    let boundaries = (lo..=hi).map(|q| dc.v(p, q)).collect();
    ChainComplex::new(lo, labels, boundaries).unwrap()
}

/// E^1 and E^2 of the columns-first filtration computed directly from vertical homology and
/// the maps the horizontal differential induces on it.
fn direct_pages(dc: &DoubleComplex) -> (Vec<((i64, i64), usize)>, Vec<((i64, i64), usize)>) {
    let f = Rationals;
    let keys: Vec<(i64, i64)> = dc.cells().map(|(k, _)| k).collect();
    if keys.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let (plo, phi) = (keys.iter().map(|k| k.0).min().unwrap(), keys.iter().map(|k| k.0).max().unwrap());
    let (qlo, qhi) = (keys.iter().map(|k| k.1).min().unwrap(), keys.iter().map(|k| k.1).max().unwrap());
    let cols: Vec<ChainComplex> = (plo..=phi).map(|p| column(dc, p, qlo, qhi)).collect();
    let basis = |p: i64, q: i64| HomologyBasis::new(&f, &cols[(p - plo) as usize], q);
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for q in qlo..=qhi {
        let row: Vec<_> = (plo..=phi).map(|p| basis(p, q)).collect();
        // induced horizontal map E1(p, q) -> E1(p-1, q)
        let induced = |p: i64| -> usize {
            if p <= plo || p > phi {
                return 0;
            }
            let m = FMatrix::from_int(&f, &dc.h(p, q));
            rank(&f, &row[(p - plo) as usize].induced(&f, &m, &row[(p - 1 - plo) as usize]))
        };
        for p in plo..=phi {
            let d = row[(p - plo) as usize].dim();
            e1.push(((p, q), d));
            e2.push(((p, q), d - induced(p) - induced(p + 1)));
        }
    }
    let nz = |v: Vec<((i64, i64), usize)>| v.into_iter().filter(|c| c.1 > 0).collect::<Vec<_>>();
    (nz(e1), nz(e2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn early_pages_match_direct_computation(seed in any::<u64>(), augmented in any::<bool>()) {
        let cr = random::random_complex_relation(&mut random::rng(seed));
        let dc = relational_double_complex(&cr, augmented);
        let (e1, e2) = direct_pages(&dc);
        let mut p1 = ss_page(&Rationals, &dc, 1, Orientation::ColumnsFirst).unwrap().nonzero();
        let mut p2 = ss_page(&Rationals, &dc, 2, Orientation::ColumnsFirst).unwrap().nonzero();
        p1.sort();
        p2.sort();
        let (mut e1, mut e2) = (e1, e2);
        e1.sort();
        e2.sort();
        prop_assert_eq!(p1, e1);
        prop_assert_eq!(p2, e2);
        prop_assert!(relhom::algebra::ss_converges(&Rationals, &dc).unwrap().converges);
    }
}
