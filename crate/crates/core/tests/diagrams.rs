use diagram_core::annular::{enumerate_affine, lambda_pow, shift_gap, AffineDiagram};
use diagram_core::cobordisms::{Cobordism, DeformedPartition, Involutions, Spectrum};
use diagram_core::partitions::{compose, Partition};
use proptest::prelude::*;

fn partition(m: usize, n: usize) -> impl Strategy<Value = Partition> {
    let k = (m + n).max(1);
    proptest::collection::vec(0..k, m + n).prop_map(move |l| Partition::from_labels(m, n, &l))
}

fn chain3(max: usize) -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (0..=max, 0..=max, 0..=max, 0..=max).prop_flat_map(|(a, b, c, d)| (partition(a, b), partition(b, c), partition(c, d)))
}

fn cobordism(m: usize, n: usize) -> impl Strategy<Value = Cobordism> {
    partition(m, n).prop_flat_map(|base| {
        let k = base.num_blocks();
        (
            Just(base),
            proptest::collection::vec(-3i64..=3, k),
            proptest::collection::vec((0i64..3, -2i64..=2), 0..3),
        )
            .prop_map(|(base, genus, closed)| Cobordism::new(base, genus, Spectrum::from_pairs(closed), true).unwrap())
    })
}

fn affine_pool() -> Vec<AffineDiagram> {
    (1..=3).flat_map(|n| enumerate_affine(n, n, 2)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn composition_is_associative_with_cocycle((x, y, z) in chain3(4)) {
        let xy = compose(&x, &y).unwrap();
        let yz = compose(&y, &z).unwrap();
        let l = compose(&xy.product, &z).unwrap();
        let r = compose(&x, &yz.product).unwrap();
        prop_assert_eq!(&l.product, &r.product);
        prop_assert_eq!(xy.dead_count() + l.dead_count(), yz.dead_count() + r.dead_count());
    }

    #[test]
    fn involutions_reverse_products((x, y, _) in chain3(4)) {
        let p = compose(&x, &y).unwrap().product;
        prop_assert_eq!(p.reflect(), compose(&y.reflect(), &x.reflect()).unwrap().product);
        prop_assert_eq!(p.rotate(), compose(&y.rotate(), &x.rotate()).unwrap().product);
        prop_assert_eq!(x.rotate().rotate(), x.clone());
        prop_assert!(p.rank() <= x.rank().min(y.rank()));
    }

    #[test]
    fn dead_blocks_of_x_xstar_count_right_blocks(x in (0..=4usize, 0..=4usize).prop_flat_map(|(m, n)| partition(m, n))) {
        let s = x.reflect();
        let st = x.stats();
        prop_assert_eq!(compose(&x, &s).unwrap().dead_count(), st.rb);
        prop_assert_eq!(compose(&s, &x).unwrap().dead_count(), st.lb);
    }

    #[test]
    fn cobordism_star_is_a_generalised_inverse(x in (0..=3usize, 0..=3usize).prop_flat_map(|(m, n)| cobordism(m, n))) {
        let s = x.star().unwrap();
        prop_assert_eq!(x.compose(&s).unwrap().compose(&x).unwrap(), x.clone());
        prop_assert_eq!(s.compose(&x).unwrap().compose(&s).unwrap(), s.clone());
        prop_assert_eq!(s.star().unwrap(), x.clone());
        prop_assert_eq!(s.to_deformed(), x.to_deformed().star().unwrap());
    }

    #[test]
    fn cobordism_quotients_are_homomorphisms(
        (x, y) in (0..=3usize, 0..=3usize, 0..=3usize).prop_flat_map(|(a, b, c)| (cobordism(a, b), cobordism(b, c)))
    ) {
        let xy = x.compose(&y).unwrap();
        prop_assert_eq!(xy.to_deformed(), x.to_deformed().compose(&y.to_deformed()).unwrap());
        prop_assert_eq!(xy.to_labeled(), x.to_labeled().compose(&y.to_labeled()).unwrap());
        prop_assert_eq!(xy.sigma(), y.sigma().compose(&x.sigma()).unwrap());
    }

    #[test]
    fn deformed_star_cancels(base in partition(2, 2), s in -3i64..=3) {
        let x = DeformedPartition::new(base, s, true).unwrap();
        let st = x.star().unwrap();
        prop_assert_eq!(x.compose(&st).unwrap().compose(&x).unwrap(), x);
    }
}

#[test]
fn affine_sigma_is_a_generalised_inverse() {
    for a in affine_pool() {
        let p = a.compose(&a.sigma()).unwrap().product.compose(&a).unwrap().product;
        assert_eq!(p, a);
    }
}

#[test]
fn projection_is_a_homomorphism() {
    let pool = affine_pool();
    for a in &pool {
        for b in pool.iter().filter(|b| b.m() == a.n()).step_by(3) {
            let ab = a.compose(b).unwrap().product;
            assert_eq!(ab.project(), compose(&a.project(), &b.project()).unwrap().product);
            if a.is_rectangular() && b.is_rectangular() {
                assert!(ab.is_rectangular(), "{a:?} · {b:?}");
            }
        }
    }
}

#[test]
fn shift_gap_recovers_powers_of_lambda() {
    for a in affine_pool().into_iter().filter(|a| a.rank() > 0) {
        let b = lambda_pow(a.m(), 2).compose(&a).unwrap().product;
        assert_eq!(shift_gap(&a, &b).unwrap(), Some(2));
        assert_eq!(shift_gap(&a, &a).unwrap(), Some(0));
        assert_eq!(lambda_pow(a.m(), 1).project(), Partition::identity(a.m()));
    }
}
