use proptest::prelude::*;
use relhom::algebra::{homology, Coefficients, PrimeField, Rationals};
use relhom::random;
use relhom::relational::{
    cover_nerve, is_good_cover, order_complex_relation, relational_join, relational_join_poset, relational_product,
    verify_les_relational, ComplexRelation,
};
use relhom::simplicial::{order_complex, Poset, SimplicialComplex};
use std::collections::BTreeSet;

fn sig(k: &SimplicialComplex) -> Vec<(i64, usize, Vec<num_bigint::BigInt>)> {
    homology(&k.chain_complex(), Coefficients::Integers).unwrap().signature(0)
}

fn renamed(p: &Poset, prefix: &str) -> Poset {
    let labels = (0..p.len()).map(|i| format!("{prefix}{i}")).collect();
    let le = (0..p.len()).map(|i| (0..p.len()).map(|j| p.le(i, j)).collect()).collect();
    Poset::new(labels, le).unwrap()
}

/// Downward closure of a few random pairs.
fn closed_relation(seed: u64, p: &Poset, q: &Poset) -> BTreeSet<(usize, usize)> {
    use rand::Rng;
    let mut rng = random::rng(seed);
    let mut rel = BTreeSet::new();
    if p.is_empty() || q.is_empty() {
        return rel;
    }
    for _ in 0..rng.gen_range(0..=4) {
        let (a, b) = (rng.gen_range(0..p.len()), rng.gen_range(0..q.len()));
        for a2 in 0..p.len() {
            for b2 in 0..q.len() {
                if p.le(a2, a) && q.le(b2, b) {
                    rel.insert((a2, b2));
                }
            }
        }
    }
    rel
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_poset_order_complex_is_join_of_order_complexes(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4) {
        let mut rng = random::rng(seed);
        let p = renamed(&random::random_poset(&mut rng, n, 0.4), "p");
        let q = renamed(&random::random_poset(&mut rng, m, 0.4), "q");
        let rel = closed_relation(seed ^ 0x5eed, &p, &q);
        let poset = relational_join_poset(&p, &q, &rel).unwrap();
        let (dp, dq, pairs) = order_complex_relation(&p, &q, &rel);
        let cr = ComplexRelation::new(dp, dq, pairs).unwrap();
        prop_assert_eq!(order_complex(&poset).label_set(), relational_join(&cr).label_set());
    }

    #[test]
    fn good_covers_recover_homology(seed in any::<u64>()) {
        let cover = random::random_cover(&mut random::rng(seed));
        let (nerve, rel) = cover_nerve(&cover);
        if is_good_cover(&cover) {
            prop_assert_eq!(sig(cover.base()), sig(&nerve));
        }
        prop_assert!(verify_les_relational(&Rationals, &rel).unwrap().exact);
        prop_assert!(verify_les_relational(&PrimeField::new(3).unwrap(), &rel).unwrap().exact);
    }

    #[test]
    fn euler_characteristics_add_up(seed in any::<u64>(), i in 0usize..3) {
        let (_, cr) = random::random_mixed_complex_relation(&mut random::rng(seed), i);
        let join = relational_join(&cr).euler_characteristic();
        let prod = relational_product(&cr).euler_characteristic();
        prop_assert_eq!(join, cr.source().euler_characteristic() + cr.target().euler_characteristic() - prod);
    }

    #[test]
    fn dowker_duality(seed in any::<u64>(), density in 0.1f64..0.9) {
        let r = random::random_relation(&mut random::rng(seed), 5, 5, density);
        let cr = relhom::relational::induced_complex_relation(&r);
        let s = sig(cr.source());
        prop_assert_eq!(&sig(cr.target()), &s);
        prop_assert_eq!(&sig(&relational_join(&cr)), &s);
        let prod = homology(&relational_product(&cr).chain_complex(), Coefficients::Integers).unwrap();
        prop_assert_eq!(prod.signature(0), s);
    }
}
