use std::collections::HashMap;

use diagram_core::partitions::{compose, enumerate_partitions, is_idempotent_structurally, Partition};

use crate::{gen, oracles, Ctx, Outcome};

const TRIPLE_LIMIT: usize = 1_000_000;

struct Catalog(HashMap<(usize, usize), Vec<Partition>>);

impl Catalog {
    fn new() -> Self {
        Catalog(HashMap::new())
    }

    fn get(&mut self, m: usize, n: usize) -> &[Partition] {
        self.0.entry((m, n)).or_insert_with(|| enumerate_partitions(m, n).unwrap().collect())
    }
}

/// Products of every pair, with dead-block counts.
fn products(xs: &[Partition], ys: &[Partition]) -> Vec<Vec<(Partition, usize)>> {
    xs.iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    let r = compose(x, y).unwrap();
                    let b = r.dead_count();
                    (r.product, b)
                })
                .collect()
        })
        .collect()
}

fn check_triple(x: &Partition, y: &Partition, z: &Partition) -> Result<(), String> {
    let xy = compose(x, y).unwrap();
    let yz = compose(y, z).unwrap();
    let l = compose(&xy.product, z).unwrap();
    let r = compose(x, &yz.product).unwrap();
    ensure!(l.product == r.product, "(xy)z != x(yz) for {x}, {y}, {z}");
    ensure!(
        xy.dead_count() + l.dead_count() == r.dead_count() + yz.dead_count(),
        "dead-block cocycle fails for {x}, {y}, {z}"
    );
    Ok(())
}

pub fn axioms(ctx: &mut Ctx) -> Outcome {
    let mut cat = Catalog::new();
    let (mut shapes, mut triples) = (0, 0usize);
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                for d in 0..=3 {
                    let xs = cat.get(a, b).to_vec();
                    let ys = cat.get(b, c).to_vec();
                    let zs = cat.get(c, d).to_vec();
                    if xs.len() * ys.len() * zs.len() > TRIPLE_LIMIT {
                        continue;
                    }
                    shapes += 1;
                    let xy = products(&xs, &ys);
                    let yz = products(&ys, &zs);
                    for (i, x) in xs.iter().enumerate() {
                        for (j, y) in ys.iter().enumerate() {
                            let (p, bxy) = &xy[i][j];
                            for (k, z) in zs.iter().enumerate() {
                                let (q, byz) = &yz[j][k];
                                let l = compose(p, z).unwrap();
                                let r = compose(x, q).unwrap();
                                ensure!(l.product == r.product, "(xy)z != x(yz) for {x}, {y}, {z}");
                                ensure!(
                                    bxy + l.dead_count() == r.dead_count() + byz,
                                    "dead-block cocycle fails for {x}, {y}, {z}"
                                );
                                triples += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    for _ in 0..10_000 {
        let (x, y, z) = (gen::partition(&mut ctx.rng, 4, 4), gen::partition(&mut ctx.rng, 4, 4), gen::partition(&mut ctx.rng, 4, 4));
        check_triple(&x, &y, &z)?;
    }
    for _ in 0..10_000 {
        let (l, m, n) = (gen::shape(&mut ctx.rng, 4), gen::shape(&mut ctx.rng, 4), gen::shape(&mut ctx.rng, 4));
        let (x, y) = (gen::partition(&mut ctx.rng, l, m), gen::partition(&mut ctx.rng, m, n));
        let r = compose(&x, &y).unwrap();
        ensure!((r.product.clone(), r.dead_count()) == oracles::compose_partition(&x, &y), "graph-search oracle disagrees on {x} · {y}");
        ensure!(r.product.rank() <= x.rank().min(y.rank()), "rank grows in {x} · {y}");
    }
    Ok(format!(
        "{triples} exhaustive triples over {shapes} shape chains; 10000 random [4]⇝[4] triples; 10000 products match the graph-search oracle"
    ))
}

pub fn star_laws(ctx: &mut Ctx) -> Outcome {
    let mut pairs = 0;
    for n in [2, 3] {
        let all: Vec<Partition> = enumerate_partitions(n, n).unwrap().collect();
        for x in &all {
            let s = x.reflect();
            let st = x.stats();
            ensure!(s.reflect() == *x, "x** != x for {x}");
            let xs = compose(x, &s).unwrap();
            ensure!(compose(&xs.product, x).unwrap().product == *x, "x x* x != x for {x}");
            ensure!(xs.dead_count() == st.rb, "b(x, x*) != rb(x) for {x}");
            ensure!(compose(&s, x).unwrap().dead_count() == st.lb, "b(x*, x) != lb(x) for {x}");
            for y in &all {
                let l = compose(x, y).unwrap().product.reflect();
                let r = compose(&y.reflect(), &s).unwrap().product;
                ensure!(l == r, "(xy)* != y*x* for {x}, {y}");
                pairs += 1;
            }
        }
    }
    for _ in 0..1_000 {
        let (m, n) = (gen::shape(&mut ctx.rng, 4), gen::shape(&mut ctx.rng, 4));
        let x = gen::partition(&mut ctx.rng, m, n);
        let s = x.reflect();
        ensure!(compose(&compose(&x, &s).unwrap().product, &x).unwrap().product == x, "x x* x != x for {x}");
    }
    Ok(format!("{pairs} exhaustive pairs over [2]⇝[2] and [3]⇝[3]; 1000 random rectangular x x* x = x"))
}

pub fn idempotents(_ctx: &mut Ctx) -> Outcome {
    let max = 4;
    let mut seen = 0;
    let mut found = 0;
    for n in 0..=max {
        for e in enumerate_partitions(n, n).unwrap() {
            let semantic = compose(&e, &e).unwrap().product == e;
            let structural = is_idempotent_structurally(&e).map_err(|err| err.to_string())?;
            ensure!(semantic == structural, "verdicts differ on {e}: e² = e is {semantic}");
            seen += 1;
            found += usize::from(semantic);
        }
    }
    Ok(format!("{seen} partitions with n ≤ {max}, {found} idempotents, verdicts agree"))
}
