use std::collections::BTreeSet;

use diagram_core::annular::{
    build_ann_monoid, cup_cap, lambda_pow, shift_gap, zeta, APoint, AffineDiagram, AffineError, AffinePair,
    AffineTriple,
};
use diagram_core::partitions::{Side, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::gen::AffinePool;
use crate::{oracles, Ctx, Outcome};

fn point(m: usize, pos: usize, offset: i64) -> APoint {
    if pos < m {
        APoint::input(offset, pos + 1)
    } else {
        APoint::output(offset, pos - m + 1)
    }
}

fn compose(a: &AffineDiagram, b: &AffineDiagram) -> AffineDiagram {
    a.compose(b).expect("composable").product
}

/// Matchings drawn by hand whose strings cross.
fn crossing_matchings() -> Vec<(usize, usize, Vec<(APoint, APoint)>)> {
    use APoint as P;
    vec![
        (2, 2, vec![(P::input(0, 1), P::output(0, 2)), (P::input(0, 2), P::output(-1, 1))]),
        (2, 2, vec![(P::input(0, 1), P::output(0, 2)), (P::input(0, 2), P::output(0, 1))]),
        (2, 2, vec![(P::input(0, 1), P::output(0, 1)), (P::input(0, 2), P::output(1, 2))]),
        (4, 0, vec![(P::input(0, 1), P::input(0, 3)), (P::input(0, 2), P::input(0, 4))]),
        (2, 0, vec![(P::input(0, 1), P::input(1, 2))]),
        (3, 1, vec![(P::input(0, 1), P::input(0, 3)), (P::input(0, 2), P::output(0, 1))]),
    ]
}

pub fn affine(ctx: &mut Ctx) -> Outcome {
    for n in 1..=5 {
        for d in (-3..=3).map(|r| lambda_pow(n, r)).chain([zeta(n), zeta(n).sigma()]) {
            ensure!(oracles::is_noncrossing(d.m(), d.n(), d.partners(), 12), "brute force rejects {d:?}");
        }
        if n >= 2 {
            for i in 1..=n {
                let e = cup_cap(n, i);
                ensure!(oracles::is_noncrossing(n, n, e.partners(), 12), "brute force rejects {e:?}");
            }
        }
        let z = zeta(n);
        let power = (1..n).fold(z.clone(), |acc, _| compose(&acc, &z));
        ensure!(power == lambda_pow(n, 1), "ζ{n}^{n} != λ{n}");
        ensure!(compose(&z, &z.sigma()) == AffineDiagram::identity(n), "ζ{n} ζ{n}^σ != 1");
    }
    let hand = crossing_matchings();
    let mut rejected = 0;
    for (m, n, strings) in &hand {
        match AffineDiagram::from_strings(*m, *n, strings) {
            Err(AffineError::Crossing(..)) => rejected += 1,
            other => return Err(format!("hand-built crossing {strings:?} gave {other:?}")),
        }
    }
    ensure!(rejected == hand.len(), "only {rejected} hand-built crossings rejected");

    let (mut valid, mut invalid) = (0, 0);
    for _ in 0..2_000 {
        let (m, n) = loop {
            let (m, n) = (ctx.rng.gen_range(0..=3), ctx.rng.gen_range(0..=3));
            if (m + n) % 2 == 0 && m + n > 0 {
                break (m, n);
            }
        };
        let mut order: Vec<usize> = (0..m + n).collect();
        order.shuffle(&mut ctx.rng);
        let mut partners = vec![APoint::input(0, 0); m + n];
        for pair in order.chunks(2) {
            let t = ctx.rng.gen_range(-2..=2);
            partners[pair[0]] = point(m, pair[1], t);
            partners[pair[1]] = point(m, pair[0], -t);
        }
        let data: Vec<(Vertex, APoint)> =
            (0..m + n).map(|pos| (point(m, pos, 0).vertex(), partners[pos])).collect();
        let span = 3 * (partners.iter().map(|p| p.offset.abs()).max().unwrap() + 1);
        let expected = oracles::is_noncrossing(m, n, &partners, span);
        let got = AffineDiagram::new(m, n, &data);
        ensure!(got.is_ok() == expected, "validation {got:?} but brute force says non-crossing = {expected}");
        if expected {
            valid += 1;
        } else {
            invalid += 1;
        }
    }

    let pool = AffinePool::new(4, 3);
    for _ in 0..1_000 {
        let a = pool.any(&mut ctx.rng);
        let r = ctx.rng.gen_range(-3..=3);
        let la = compose(&lambda_pow(a.m(), r), &a);
        let al = compose(&a, &lambda_pow(a.n(), r));
        ensure!(la == al, "λ^{r} α != α λ^{r} for {a:?}");
        for side in [Side::In, Side::Out] {
            ensure!(la.side_strings(side) == a.side_strings(side), "λ^{r} changes side strings of {a:?}");
        }
        let shifted: Vec<_> = a.transversals().into_iter().map(|(p, q)| (p, q.shifted(r))).collect();
        ensure!(la.transversals() == shifted, "λ^{r} does not shift the transversals of {a:?}");
    }

    let window = AffinePool::new(3, 2);
    let mut pairs = 0;
    for (m, n) in window.shapes() {
        let ds: Vec<&AffineDiagram> = window.get(m, n).iter().filter(|d| d.rank() > 0).collect();
        for a in &ds {
            for b in &ds {
                let same = a.project() == b.project();
                let q = (-8..=8).find(|&q| compose(&lambda_pow(m, q), a) == **b);
                ensure!(same == q.is_some(), "projection equality {same} but shift {q:?} for {a:?}, {b:?}");
                let gap = shift_gap(a, b).map_err(|e| e.to_string())?;
                ensure!(gap == q, "shift_gap {gap:?} but direct search {q:?} for {a:?}, {b:?}");
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "generators valid for n ≤ 5, ζⁿ = λ; {rejected} hand-built crossings rejected; {valid} valid / {invalid} invalid random matchings agree with brute force; 1000 shift-law cases; {pairs} projection pairs"
    ))
}

pub fn circles(ctx: &mut Ctx) -> Outcome {
    for n in 2..=5 {
        for i in 1..=n {
            let e = cup_cap(n, i);
            let c = e.compose(&e).unwrap();
            ensure!(
                c.product == e && (c.b0, c.bw) == (1, 0),
                "e{i} e{i} on {n} points gives b0 = {}, bω = {}",
                c.b0,
                c.bw
            );
        }
    }
    let wrap = AffineDiagram::from_strings(
        2,
        2,
        &[(APoint::input(0, 1), APoint::input(0, 2)), (APoint::output(0, 2), APoint::output(1, 1))],
    )
    .unwrap();
    for w in [wrap.clone(), wrap.sigma(), wrap.rho()] {
        let c = w.compose(&w).unwrap();
        ensure!((c.b0, c.bw) == (0, 1), "wrap element squared gives b0 = {}, bω = {}", c.b0, c.bw);
    }

    let pool = AffinePool::new(4, 2);
    let mut products = 0;
    for round in 0..10_000 {
        let regular = round % 2 == 0;
        let chain = pool.chain(&mut ctx.rng, 4, 3);
        let lo = if regular { -2 } else { 0 };
        let count = |d: &AffineDiagram, rng: &mut rand_chacha::ChaCha8Rng| {
            if d.rank() == 0 {
                rng.gen_range(lo..=2)
            } else {
                0
            }
        };
        let pairs: Vec<AffinePair> = chain
            .iter()
            .map(|d| {
                let k = count(d, &mut ctx.rng);
                AffinePair::new(d.clone(), k, regular).unwrap()
            })
            .collect();
        let triples: Vec<AffineTriple> = chain
            .iter()
            .map(|d| {
                let k = count(d, &mut ctx.rng);
                let k0 = ctx.rng.gen_range(lo..=2);
                AffineTriple::new(d.clone(), k, k0, regular).unwrap()
            })
            .collect();
        let (x, y, z) = (&pairs[0], &pairs[1], &pairs[2]);
        let xy = x.compose(y).unwrap();
        let l = xy.compose(z).unwrap();
        let r = x.compose(&y.compose(z).unwrap()).unwrap();
        ensure!(l == r, "pair composition not associative for {x:?}, {y:?}, {z:?}");
        let (x, y, z) = (&triples[0], &triples[1], &triples[2]);
        let xy3 = x.compose(y).unwrap();
        let l3 = xy3.compose(z).unwrap();
        let r3 = x.compose(&y.compose(z).unwrap()).unwrap();
        ensure!(l3 == r3, "triple composition not associative for {x:?}, {y:?}, {z:?}");
        for p in [&xy, &l] {
            ensure!(p.k() == 0 || p.skeleton().rank() == 0, "ω-circles beside a transversal in {p:?}");
        }
        for p in [&xy3, &l3] {
            ensure!(p.k() == 0 || p.skeleton().rank() == 0, "ω-circles beside a transversal in {p:?}");
        }
        products += 4;
    }
    Ok(format!(
        "cup-caps give b0 = 1 for n ≤ 5; wrap element gives bω = 1; 10000 associativity cases for pairs and triples; k = 0 at positive rank on {products} products"
    ))
}

pub fn ann3(_ctx: &mut Ctx) -> Outcome {
    let ann = build_ann_monoid(3).map_err(|e| e.to_string())?;
    let t = &ann.table;
    ensure!(t.size() == 12, "Ann3 has {} elements", t.size());
    let units = t.units();
    ensure!(units.len() == 3, "unit group has order {}", units.len());
    let generator = units.iter().find(|&&u| u != t.identity()).copied().unwrap();
    ensure!(t.index_period(generator) == (1, 3), "unit group is not cyclic of order 3");
    let rank1: Vec<usize> = (0..t.size()).filter(|&i| ann.elements[i].rank() == 1).collect();
    ensure!(rank1.len() == 9, "{} rank-1 elements", rank1.len());
    ensure!(t.is_rectangular_band(&rank1), "rank-1 elements are not a rectangular band");
    ensure!(t.is_ideal(&rank1), "rank-1 elements are not an ideal");
    let rows: BTreeSet<Vec<usize>> = rank1.iter().map(|&x| rank1.iter().map(|&y| t.product(x, y)).collect()).collect();
    let cols: BTreeSet<Vec<usize>> = rank1.iter().map(|&y| rank1.iter().map(|&x| t.product(x, y)).collect()).collect();
    ensure!(rows.len() == 3 && cols.len() == 3, "band is {}×{}", rows.len(), cols.len());
    ensure!(
        (0..t.size()).all(|i| units.contains(&i) || rank1.contains(&i)),
        "elements outside units and the rank-1 ideal"
    );
    Ok("12 elements: cyclic unit group of order 3 and a 3×3 rectangular-band ideal of rank-1 elements".to_string())
}

/// `Some(c)` when the shift of `(αβ)^t` against `αβ` is `(t−1)c` with
/// `c ≠ 0` for all `t ≤ 8`.
fn linear_growth(g: &AffineDiagram) -> Option<i64> {
    let mut power = g.clone();
    let mut step = None;
    for t in 2..=8 {
        power = compose(&power, g);
        let gap = shift_gap(g, &power).ok()??;
        let c = *step.get_or_insert(gap);
        if c == 0 || gap != (t - 1) * c {
            return None;
        }
    }
    step
}

pub fn infinite_order(_ctx: &mut Ctx) -> Outcome {
    let idempotents: Vec<AffineDiagram> = diagram_core::annular::enumerate_affine(3, 3, 2)
        .into_iter()
        .filter(|a| a.rank() == 1 && compose(a, a) == *a)
        .collect();
    let search = |mirror: fn(&AffineDiagram) -> AffineDiagram| {
        idempotents
            .iter()
            .filter_map(|a| {
                let b = mirror(a);
                let ok = b.rank() == 1 && compose(&b, &b) == b;
                ok.then(|| linear_growth(&compose(a, &b)).map(|c| (a.clone(), b, c))).flatten()
            })
            .collect::<Vec<_>>()
    };
    let by_rho = search(AffineDiagram::rho);
    let by_sigma = search(AffineDiagram::sigma);
    let Some((a, b, c)) = by_rho.first() else {
        return Err(format!(
            "no rank-1 idempotent α with α^ρ giving αβ of infinite order among {} candidates",
            idempotents.len()
        ));
    };
    Ok(format!(
        "{} rank-1 idempotents with offsets ≤ 2; {} pairs (α, α^ρ) with αβ of infinite order (first: α = {a:?}, β = {b:?}, shift {c} per power); {} such pairs (α, α^σ)",
        idempotents.len(),
        by_rho.len(),
        by_sigma.len()
    ))
}
