use std::collections::BTreeMap;

use diagram_core::annular::{enumerate_affine, AffineMonoid};
use diagram_core::auxmonoids::{je_integers, je_parity, A21Monoid, FiniteMonoid, A21};
use diagram_core::identities::{
    canonical_form, check_identity, evaluate, holds_in_m, holds_in_n, normal_form, zimin3_variant, Domain, Identity,
    Mode, Sym, Verdict, Word,
};
use diagram_core::Monoid;
use proptest::prelude::*;

fn word(letters: usize, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(1..=letters, 1..=max_len)
}

fn words(letters: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for x in 1..=letters {
                let mut w = out[i].clone();
                w.push(x);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn without(w: &[usize], x: usize) -> Word {
    w.iter().copied().filter(|&y| y != x).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn normal_form_is_idempotent(w in word(4, 14)) {
        let nf = normal_form(&w).unwrap();
        prop_assert_eq!(normal_form(&nf).unwrap(), nf.clone());
        let cf = canonical_form(&w).unwrap();
        prop_assert_eq!(canonical_form(&cf).unwrap(), cf);
    }

    #[test]
    fn sorting_a_valid_identity_keeps_it_valid(u in word(3, 10), seed in any::<u64>()) {
        // Shuffle one interior letter pair to get a nearby right-hand side.
        let mut v = u.clone();
        if v.len() > 3 {
            let i = 1 + (seed as usize) % (v.len() - 3);
            v.swap(i, i + 1);
        }
        if holds_in_m(&u, &v) {
            prop_assert!(holds_in_n(&u, &v));
        }
        for x in 1..=3 {
            let (a, b) = (without(&u, x), without(&v, x));
            if holds_in_m(&u, &v) {
                prop_assert!(holds_in_m(&a, &b), "deleting x{} from {:?} = {:?}", x, u, v);
            }
            if holds_in_n(&u, &v) {
                prop_assert!(holds_in_n(&a, &b), "deleting x{} from {:?} = {:?}", x, u, v);
            }
        }
    }
}

#[test]
fn deletion_stability_is_exhaustive_on_short_words() {
    let all = words(3, 6);
    let mut by_counts: BTreeMap<[usize; 4], Vec<&Word>> = BTreeMap::new();
    for w in &all {
        let mut c = [0; 4];
        w.iter().for_each(|&x| c[x] += 1);
        by_counts.entry(c).or_default().push(w);
    }
    for class in by_counts.values() {
        for u in class {
            for v in class {
                let (m, n) = (holds_in_m(u, v), holds_in_n(u, v));
                for x in 1..=3 {
                    let (a, b) = (without(u, x), without(v, x));
                    assert!(!m || holds_in_m(&a, &b), "{u:?} = {v:?} without x{x}");
                    assert!(!n || holds_in_n(&a, &b), "{u:?} = {v:?} without x{x}");
                }
            }
        }
    }
}

/// The M criterion against substitution search in `𝒥ℰ(ℤ×ℤ; ℤ)` with
/// coordinates in `[−2, 2]`.
#[test]
fn monoid_criterion_matches_semantic_search() {
    let je = je_integers();
    let mut pool = Vec::new();
    for l in -2..=2 {
        pool.push(je.s(l));
        for r in -2..=2 {
            pool.push(je.pair(l, r));
        }
    }
    let all = words(3, 6);
    let (mut holds, mut fails) = (0, 0);
    for (i, u) in all.iter().enumerate() {
        for v in &all[i + 1..] {
            let id = Identity::plain(u.clone(), v.clone(), Mode::Monoid);
            let verdict = check_identity(&id, &je, Domain::Pool(&pool), usize::MAX);
            if holds_in_m(u, v) {
                assert!(!verdict.is_fail(), "criterion holds but search fails {u:?} = {v:?}");
                holds += 1;
            } else {
                assert!(verdict.is_fail(), "criterion fails but no witness for {u:?} = {v:?}");
                fails += 1;
            }
        }
    }
    assert!(holds > 0 && fails > 0);
}

/// The N criterion against substitution search in `𝒥ℰ([2]×[2]; ℤ)`.
#[test]
fn parity_criterion_matches_semantic_search() {
    let je = je_parity();
    let mut pool: Vec<_> = (-2..=2).map(|s| je.s(s)).collect();
    for l in 0..2 {
        pool.extend((0..2).map(|r| je.pair(l, r)));
    }
    let all = words(3, 6);
    let (mut holds, mut fails) = (0, 0);
    for (i, u) in all.iter().enumerate() {
        for v in &all[i + 1..] {
            let id = Identity::plain(u.clone(), v.clone(), Mode::Monoid);
            let verdict = check_identity(&id, &je, Domain::Pool(&pool), usize::MAX);
            if holds_in_n(u, v) {
                assert!(!verdict.is_fail(), "criterion holds but search fails {u:?} = {v:?}");
                holds += 1;
            } else {
                assert!(verdict.is_fail(), "criterion fails but no witness for {u:?} = {v:?}");
                fails += 1;
            }
        }
    }
    assert!(holds > 0 && fails > 0);
}

#[test]
fn zimin_variant_holds_in_a_commutative_table() {
    // ℤ/4 under multiplication.
    let table = (0..4).map(|a| (0..4).map(|b| a * b % 4).collect()).collect();
    let m = FiniteMonoid::new(table, None).unwrap();
    let elems: Vec<usize> = (0..4).collect();
    let v = check_identity(&zimin3_variant(), &m, Domain::Full(&elems), usize::MAX);
    assert!(matches!(v, Verdict::Holds(_)), "{v:?}");
}

#[test]
fn commutativity_fails_in_a21() {
    let id = Identity::plain(vec![1, 2], vec![2, 1], Mode::Monoid);
    let all = A21::all();
    let Verdict::Fails(w) = check_identity(&id, &A21Monoid, Domain::Full(&all), usize::MAX) else {
        panic!("xy = yx holds in A2¹");
    };
    let (x, y) = (w[0].1, w[1].1);
    assert_ne!(x.mul(y), y.mul(x));
    let w = check_identity(&id, &A21Monoid, Domain::Pool(&[A21::Pair(0, 1), A21::Pair(1, 0)]), 10);
    assert!(w.is_fail());
}

#[test]
fn x_xstar_is_idempotent_in_affine_monoids() {
    let w = [Sym::plain(1), Sym::starred(1)];
    for n in 1..=3 {
        let m = AffineMonoid { n };
        for a in enumerate_affine(n, n, 2) {
            let e = evaluate(&w, &BTreeMap::from([(1, a)]), &m).unwrap();
            assert_eq!(m.mul(&e, &e), e);
        }
    }
}
