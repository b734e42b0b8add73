use std::fmt::Debug;

use diagram_core::algebra::Monoid;
use diagram_core::annular::{AffineDiagram, AffinePair, AffineTriple, AnnularPartition, DeformedAnnular};
use diagram_core::auxmonoids::{je_integers, CircleForest, ReesL2Element, SDPElement, A21};
use diagram_core::cobordisms::{Involutions, SElement};
use diagram_core::partitions::compose;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::gen::{self, AffinePool};
use crate::{Ctx, Outcome};

const ROUNDS: usize = 10_000;

/// `(xy)ⁱ = yⁱxⁱ` and `xⁱⁱ = x`.
fn anti<T: PartialEq + Debug>(x: &T, y: &T, mul: impl Fn(&T, &T) -> T, inv: impl Fn(&T) -> T, what: &str) -> Result<(), String> {
    ensure!(inv(&inv(x)) == *x, "{what} is not an involution at {x:?}");
    ensure!(inv(&mul(x, y)) == mul(&inv(y), &inv(x)), "{what} is not anti-multiplicative at {x:?}, {y:?}");
    Ok(())
}

fn both<T: PartialEq + Debug + Involutions>(x: &T, y: &T, mul: impl Fn(&T, &T) -> T, family: &str) -> Result<(), String> {
    anti(x, y, &mul, T::sigma, &format!("σ on {family}"))?;
    anti(x, y, &mul, T::rho, &format!("ρ on {family}"))
}

fn shapes(rng: &mut ChaCha8Rng) -> (usize, usize, usize) {
    (gen::shape(rng, 3), gen::shape(rng, 3), gen::shape(rng, 3))
}

fn forest(rng: &mut ChaCha8Rng, depth: usize) -> CircleForest {
    (0..rng.gen_range(0..=2)).fold(CircleForest::zero(), |acc, _| {
        let inner = if depth == 0 { CircleForest::zero() } else { forest(rng, depth - 1) };
        acc.add(&inner.enclose())
    })
}

fn diagram_families(ctx: &mut Ctx) -> Result<(), String> {
    for round in 0..ROUNDS {
        let regular = round % 2 == 0;
        let (m, n, p) = shapes(&mut ctx.rng);

        let (x, y) = (gen::partition(&mut ctx.rng, m, n), gen::partition(&mut ctx.rng, n, p));
        both(&x, &y, |a, b| compose(a, b).unwrap().product, "partitions")?;

        let (x, y) = (gen::cobordism(&mut ctx.rng, m, n, regular), gen::cobordism(&mut ctx.rng, n, p, regular));
        both(&x, &y, |a, b| a.compose(b).unwrap(), "cobordisms")?;
        let xy = x.compose(&y).unwrap();
        ensure!(xy.to_deformed() == x.to_deformed().compose(&y.to_deformed()).unwrap(), "quotient to deformed partitions is not a homomorphism");
        ensure!(xy.to_labeled() == x.to_labeled().compose(&y.to_labeled()).unwrap(), "quotient to labelled partitions is not a homomorphism");
        ensure!(x.sigma().to_deformed() == x.to_deformed().sigma(), "quotient to deformed partitions breaks σ at {x:?}");
        ensure!(x.rho().to_deformed() == x.to_deformed().rho(), "quotient to deformed partitions breaks ρ at {x:?}");
        ensure!(x.sigma().to_labeled() == x.to_labeled().sigma(), "quotient to labelled partitions breaks σ at {x:?}");
        ensure!(x.rho().to_labeled() == x.to_labeled().rho(), "quotient to labelled partitions breaks ρ at {x:?}");
        if regular {
            ensure!(x.star().unwrap().to_deformed() == x.to_deformed().star().unwrap(), "quotient to deformed partitions breaks * at {x:?}");
            ensure!(x.star().unwrap().to_labeled() == x.to_labeled().star().unwrap(), "quotient to labelled partitions breaks * at {x:?}");
        }

        let (x, y) = (gen::deformed(&mut ctx.rng, m, n, regular), gen::deformed(&mut ctx.rng, n, p, regular));
        both(&x, &y, |a, b| a.compose(b).unwrap(), "deformed partitions")?;
        ensure!(x.sigma().to_partition() == x.to_partition().sigma(), "quotient to partitions breaks σ at {x:?}");
        ensure!(x.rho().to_partition() == x.to_partition().rho(), "quotient to partitions breaks ρ at {x:?}");

        let (x, y) = (gen::labeled(&mut ctx.rng, m, n, regular), gen::labeled(&mut ctx.rng, n, p, regular));
        both(&x, &y, |a, b| a.compose(b).unwrap(), "labelled partitions")?;
        ensure!(x.sigma().to_partition() == x.to_partition().sigma(), "quotient to partitions breaks σ at {x:?}");
        ensure!(x.rho().to_partition() == x.to_partition().rho(), "quotient to partitions breaks ρ at {x:?}");
    }
    Ok(())
}

fn affine_families(ctx: &mut Ctx) -> Result<(), String> {
    let pool = AffinePool::new(3, 2);
    let amul = |a: &AffineDiagram, b: &AffineDiagram| a.compose(b).unwrap().product;
    for round in 0..ROUNDS {
        let regular = round % 2 == 0;
        let chain = pool.chain(&mut ctx.rng, 3, 2);
        let (x, y) = (&chain[0], &chain[1]);
        anti(x, y, amul, AffineDiagram::sigma, "σ on affine diagrams")?;
        anti(x, y, amul, AffineDiagram::rho, "ρ on affine diagrams")?;
        ensure!(x.sigma().project() == x.project().sigma(), "projection breaks σ at {x:?}");
        ensure!(x.rho().project() == x.project().rho(), "projection breaks ρ at {x:?}");

        let lo = if regular { -2 } else { 0 };
        let mut k = |d: &AffineDiagram| if d.rank() == 0 { ctx.rng.gen_range(lo..=2) } else { 0 };
        let (kx, ky) = (k(x), k(y));
        let (px, py) = (AffinePair::new(x.clone(), kx, regular).unwrap(), AffinePair::new(y.clone(), ky, regular).unwrap());
        anti(&px, &py, |a, b| a.compose(b).unwrap(), AffinePair::sigma, "σ on circle-counted diagrams")?;
        anti(&px, &py, |a, b| a.compose(b).unwrap(), AffinePair::rho, "ρ on circle-counted diagrams")?;
        let (k0x, k0y) = (ctx.rng.gen_range(lo..=2), ctx.rng.gen_range(lo..=2));
        let tx = AffineTriple::new(x.clone(), kx, k0x, regular).unwrap();
        let ty = AffineTriple::new(y.clone(), ky, k0y, regular).unwrap();
        let tmul = |a: &AffineTriple, b: &AffineTriple| a.compose(b).unwrap();
        anti(&tx, &ty, tmul, AffineTriple::sigma, "σ on doubly circle-counted diagrams")?;
        anti(&tx, &ty, tmul, AffineTriple::rho, "ρ on doubly circle-counted diagrams")?;
        ensure!(tx.sigma().to_pair() == tx.to_pair().sigma(), "forgetting 0-circles breaks σ at {tx:?}");
        if regular {
            ensure!(px.star().unwrap().star().unwrap() == px, "x** != x at {px:?}");
            ensure!(tx.star().unwrap().star().unwrap() == tx, "x** != x at {tx:?}");
            let s = tx.star().unwrap();
            ensure!(tmul(&tmul(&tx, &s), &tx) == tx, "x x* x != x at {tx:?}");
        }

        let (ax, ay) = (AnnularPartition::from_affine(x), AnnularPartition::from_affine(y));
        anti(&ax, &ay, |a, b| a.compose(b).unwrap(), AnnularPartition::sigma, "σ on annular partitions")?;
        anti(&ax, &ay, |a, b| a.compose(b).unwrap(), AnnularPartition::rho, "ρ on annular partitions")?;
        let (dx, dy) = (DeformedAnnular::from_triple(&tx), DeformedAnnular::from_triple(&ty));
        anti(&dx, &dy, |a, b| a.compose(b).unwrap(), DeformedAnnular::sigma, "σ on deformed annular partitions")?;
        anti(&dx, &dy, |a, b| a.compose(b).unwrap(), DeformedAnnular::rho, "ρ on deformed annular partitions")?;
        ensure!(DeformedAnnular::from_triple(&tx.sigma()) == dx.sigma(), "quotient to deformed annular partitions breaks σ at {tx:?}");
        ensure!(DeformedAnnular::from_triple(&tx.rho()) == dx.rho(), "quotient to deformed annular partitions breaks ρ at {tx:?}");
        ensure!(
            DeformedAnnular::from_triple(&tmul(&tx, &ty)) == dx.compose(&dy).unwrap(),
            "quotient to deformed annular partitions is not a homomorphism at {tx:?}, {ty:?}"
        );
    }
    Ok(())
}

fn small_monoids(ctx: &mut Ctx) -> Result<usize, String> {
    let mut pairs = 0;
    for a in A21::all() {
        for b in A21::all() {
            anti(&a, &b, |x, y| x.mul(*y), |x| x.star(), "* on A2¹")?;
            pairs += 1;
        }
    }
    let spectrum = |rng: &mut ChaCha8Rng| gen::spectrum(rng, 3, (0, 3), (0, 2));
    let je = je_integers();
    for _ in 0..ROUNDS {
        let rng = &mut ctx.rng;
        let s = SElement { i: rng.gen_range(0..2), s: spectrum(rng), j: rng.gen_range(0..2) };
        let t = SElement { i: rng.gen_range(0..2), s: spectrum(rng), j: rng.gen_range(0..2) };
        anti(&s, &t, SElement::mul, SElement::sigma, "σ on the discrete fibre")?;
        ensure!(s.sigma().to_a21() == s.to_a21().star(), "map onto A2 breaks the involution at {s:?}");
        ensure!(s.sigma().to_cobordism() == s.to_cobordism().sigma(), "embedding of the discrete fibre breaks σ at {s:?}");

        let x = SDPElement::new(forest(rng, 2), forest(rng, 2), rng.gen_range(-3..=3));
        let y = SDPElement::new(forest(rng, 2), forest(rng, 2), rng.gen_range(-3..=3));
        anti(&x, &y, SDPElement::mul, SDPElement::star, "* on the semidirect product")?;

        let x = ReesL2Element::new(forest(rng, 2), forest(rng, 2), forest(rng, 2));
        let y = ReesL2Element::new(forest(rng, 2), forest(rng, 2), forest(rng, 2));
        anti(&x, &y, ReesL2Element::mul, ReesL2Element::star, "* on the Rees ideal")?;

        let mut je_elem = || {
            if rng.gen_bool(0.5) {
                je.s(rng.gen_range(-2..=2))
            } else {
                je.pair(rng.gen_range(-2..=2), rng.gen_range(-2..=2))
            }
        };
        let (x, y) = (je_elem(), je_elem());
        anti(&x, &y, |a, b| je.mul(a, b), |a| je.star(a).unwrap(), "* on the ideal extension")?;
    }
    Ok(pairs)
}

pub fn laws(ctx: &mut Ctx) -> Outcome {
    diagram_families(ctx)?;
    affine_families(ctx)?;
    let a21 = small_monoids(ctx)?;
    Ok(format!(
        "σ and ρ on {ROUNDS} random pairs of partitions, cobordisms, deformed and labelled partitions, affine diagrams with and without circle counts, annular and deformed annular partitions; quotient maps commute with them; {a21} A2¹ pairs; stars on the discrete fibre, semidirect product, Rees ideal and ideal extension"
    ))
}
