//! The partition category: arrows `[m] ⇝ [n]` are set partitions of the
//! disjoint union of `m` incoming and `n` outgoing vertices.
//!
//! A [`Partition`] is stored as a restricted growth string over the vertex
//! order `In1 < … < Inm < Out1 < … < Outn`, so blocks are numbered by their
//! least vertex and structural equality is value equality. Block indices are
//! stable and are what the labelled categories in [`crate::cobordisms`] key
//! their genus maps on.

use std::fmt;

use thiserror::Error;

use crate::union_find::UnionFind;

/// Largest `m + n` accepted by [`enumerate_partitions`] unless a larger bound
/// is passed explicitly.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    In,
    Out,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::In => Side::Out,
            Side::Out => Side::In,
        }
    }
}

/// A vertex of `[m] ⊔ [n]`; `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub const fn input(index: usize) -> Self {
        Vertex { side: Side::In, index }
    }

    pub const fn output(index: usize) -> Self {
        Vertex { side: Side::Out, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::In => write!(f, "{}", self.index),
            Side::Out => write!(f, "{}'", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {0} lies in more than one block")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered by any block")]
    Coverage(Vertex),
    #[error("vertex {vertex} is out of range for a partition [{m}] ⇝ [{n}]")]
    Range { vertex: Vertex, m: usize, n: usize },
    #[error("empty block")]
    EmptyBlock,
    #[error("shape mismatch: cannot compose an arrow into [{left}] with an arrow out of [{right}]")]
    ShapeMismatch { left: usize, right: usize },
    #[error("partition [{m}] ⇝ [{n}] is not square")]
    NotSquare { m: usize, n: usize },
    #[error("enumeration of [{m}] ⇝ [{n}] exceeds the bound m + n ≤ {bound}")]
    BoundExceeded { m: usize, n: usize, bound: usize },
}

/// Whether a block touches only incoming, only outgoing, or both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Left,
    Right,
    Transversal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockStats {
    pub iv: usize,
    pub ov: usize,
    pub v: usize,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub blocks: Vec<BlockStats>,
    pub rank: usize,
    pub lb: usize,
    pub rb: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    m: usize,
    n: usize,
    labels: Vec<u32>,
}

impl Partition {
    /// Builds a partition from explicit blocks, validating range, overlap and
    /// coverage.
    pub fn new(m: usize, n: usize, blocks: &[Vec<Vertex>]) -> Result<Self, PartitionError> {
        let mut raw = vec![u32::MAX; m + n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for &v in block {
                let bound = match v.side {
                    Side::In => m,
                    Side::Out => n,
                };
                if v.index == 0 || v.index > bound {
                    return Err(PartitionError::Range { vertex: v, m, n });
                }
                let pos = position(m, v);
                if raw[pos] != u32::MAX {
                    return Err(PartitionError::Overlap(v));
                }
                raw[pos] = b as u32;
            }
        }
        if let Some(pos) = raw.iter().position(|&l| l == u32::MAX) {
            return Err(PartitionError::Coverage(vertex_at(m, pos)));
        }
        Ok(Self::from_labels(m, n, &raw))
    }

    /// Canonicalises an arbitrary block labelling of the `m + n` vertices
    /// (listed in the order `In1 … Inm Out1 … Outn`).
    ///
    /// Panics if `labels.len() != m + n`.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(m: usize, n: usize, labels: &[L]) -> Self {
        assert_eq!(labels.len(), m + n, "label vector has the wrong length");
        let mut seen = std::collections::HashMap::new();
        let canon = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Partition { m, n, labels: canon }
    }

    pub fn identity(n: usize) -> Self {
        let labels: Vec<u32> = (0..n as u32).chain(0..n as u32).collect();
        Partition { m: n, n, labels }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    /// Restricted growth string over `In1 … Inm Out1 … Outn`.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.labels[position(self.m, v)] as usize
    }

    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (pos, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(vertex_at(self.m, pos));
        }
        out
    }

    pub fn block(&self, b: usize) -> Vec<Vertex> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l as usize == b)
            .map(|(pos, _)| vertex_at(self.m, pos))
            .collect()
    }

    /// Least vertex of block `b`; blocks are numbered in increasing order of it.
    pub fn least_vertex(&self, b: usize) -> Vertex {
        let pos = self
            .labels
            .iter()
            .position(|&l| l as usize == b)
            .expect("block index out of range");
        vertex_at(self.m, pos)
    }

    pub fn stats(&self) -> PartitionStats {
        let mut blocks = vec![(0usize, 0usize); self.num_blocks()];
        for (pos, &l) in self.labels.iter().enumerate() {
            if pos < self.m {
                blocks[l as usize].0 += 1;
            } else {
                blocks[l as usize].1 += 1;
            }
        }
        let blocks: Vec<BlockStats> = blocks
            .into_iter()
            .map(|(iv, ov)| BlockStats {
                iv,
                ov,
                v: iv + ov,
                kind: if ov == 0 {
                    BlockKind::Left
                } else if iv == 0 {
                    BlockKind::Right
                } else {
                    BlockKind::Transversal
                },
            })
            .collect();
        let count = |k| blocks.iter().filter(|s| s.kind == k).count();
        PartitionStats {
            rank: count(BlockKind::Transversal),
            lb: count(BlockKind::Left),
            rb: count(BlockKind::Right),
            blocks,
        }
    }

    pub fn rank(&self) -> usize {
        self.stats().rank
    }

    /// `α*`: the same partition with incoming and outgoing vertices swapped.
    pub fn reflect(&self) -> Partition {
        self.reflect_with_map().0
    }

    /// Reflection together with the block bijection `old index ↦ new index`.
    pub fn reflect_with_map(&self) -> (Partition, Vec<usize>) {
        let raw: Vec<u32> = self.labels[self.m..]
            .iter()
            .chain(&self.labels[..self.m])
            .copied()
            .collect();
        relabel(self.n, self.m, &raw, self.num_blocks())
    }

    /// `α^ρ`: the reflection with both vertex rows renumbered from the other
    /// end, i.e. the diagram turned through 180°.
    pub fn rotate(&self) -> Partition {
        self.rotate_with_map().0
    }

    pub fn rotate_with_map(&self) -> (Partition, Vec<usize>) {
        let (m, n) = (self.m, self.n);
        // new In j is old Out (n+1-j); new Out i is old In (m+1-i)
        let raw: Vec<u32> = (1..=n)
            .map(|j| self.labels[m + n - j])
            .chain((1..=m).map(|i| self.labels[m - i]))
            .collect();
        relabel(n, m, &raw, self.num_blocks())
    }

    /// Restriction of the partition to the incoming (`αˡ`) or outgoing (`αʳ`)
    /// row, as block labels on `[m]` resp. `[n]`.
    pub fn row(&self, side: Side) -> Partition {
        let raw = match side {
            Side::In => &self.labels[..self.m],
            Side::Out => &self.labels[self.m..],
        };
        Partition::from_labels(raw.len(), 0, raw)
    }
}

/// Canonicalises `raw` and records where every old label ended up.
fn relabel(m: usize, n: usize, raw: &[u32], old_blocks: usize) -> (Partition, Vec<usize>) {
    let p = Partition::from_labels(m, n, raw);
    let mut map = vec![usize::MAX; old_blocks];
    for (old, new) in raw.iter().zip(&p.labels) {
        map[*old as usize] = *new as usize;
    }
    (p, map)
}

fn position(m: usize, v: Vertex) -> usize {
    match v.side {
        Side::In => v.index - 1,
        Side::Out => m + v.index - 1,
    }
}

fn vertex_at(m: usize, pos: usize) -> Vertex {
    if pos < m {
        Vertex::input(pos + 1)
    } else {
        Vertex::output(pos - m + 1)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition[{}⇝{}]{}", self.m, self.n, self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// How one class of the three-layer join was formed: which blocks of the
/// left factor `α` and right factor `β` it merged and which middle vertices
/// (1-based) it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merge {
    pub left_blocks: Vec<usize>,
    pub right_blocks: Vec<usize>,
    pub middle: Vec<usize>,
}

impl Merge {
    /// Number of merged blocks of the left factor.
    pub fn a(&self) -> usize {
        self.left_blocks.len()
    }

    /// Number of merged blocks of the right factor.
    pub fn b(&self) -> usize {
        self.right_blocks.len()
    }

    /// Number of middle vertices involved.
    pub fn v(&self) -> usize {
        self.middle.len()
    }

    pub fn increment(&self) -> i64 {
        increment(self.v(), self.a(), self.b())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub product: Partition,
    /// Classes made only of middle vertices; `dead_blocks.len()` is `b(α, β)`.
    pub dead_blocks: Vec<Merge>,
    /// Formation data for every block of `product`, indexed by block.
    pub formation: Vec<Merge>,
}

impl CompositionResult {
    pub fn dead_count(&self) -> usize {
        self.dead_blocks.len()
    }
}

/// Genus gained when `a` blocks of one factor and `b` blocks of the other are
/// glued through `v` middle vertices: the cyclomatic number `v − (a + b) + 1`
/// of the merge multigraph.
pub fn increment(v: usize, a: usize, b: usize) -> i64 {
    v as i64 - (a + b) as i64 + 1
}

/// Composes `alpha: [ℓ] ⇝ [m]` with `beta: [m] ⇝ [n]`.
///
/// Blocks of both factors are joined through shared middle vertices; classes
/// that reach an outer vertex form the product, the others are dead blocks.
pub fn compose(alpha: &Partition, beta: &Partition) -> Result<CompositionResult, PartitionError> {
    if alpha.n != beta.m {
        return Err(PartitionError::ShapeMismatch { left: alpha.n, right: beta.m });
    }
    let (l, m, n) = (alpha.m, alpha.n, beta.n);
    let na = alpha.num_blocks();
    let nb = beta.num_blocks();
    // nodes: blocks of alpha, then blocks of beta
    let mut uf = UnionFind::new(na + nb);
    for j in 0..m {
        let a = alpha.labels[l + j] as usize;
        let b = beta.labels[j] as usize;
        uf.union(a, na + b);
    }
    let (class_of, classes) = uf.classes();

    // number the classes that reach the outer layers in outer-vertex order
    let mut product_id = vec![usize::MAX; classes];
    let mut raw = Vec::with_capacity(l + n);
    let mut next = 0;
    let outer = alpha.labels[..l]
        .iter()
        .map(|&a| class_of[a as usize])
        .chain(beta.labels[m..].iter().map(|&b| class_of[na + b as usize]));
    for c in outer {
        if product_id[c] == usize::MAX {
            product_id[c] = next;
            next += 1;
        }
        raw.push(product_id[c] as u32);
    }

    let empty = || Merge { left_blocks: Vec::new(), right_blocks: Vec::new(), middle: Vec::new() };
    let mut merges: Vec<Merge> = (0..classes).map(|_| empty()).collect();
    for a in 0..na {
        merges[class_of[a]].left_blocks.push(a);
    }
    for b in 0..nb {
        merges[class_of[na + b]].right_blocks.push(b);
    }
    for j in 0..m {
        merges[class_of[alpha.labels[l + j] as usize]].middle.push(j + 1);
    }

    let mut formation: Vec<Option<Merge>> = vec![None; next];
    let mut dead_blocks = Vec::new();
    for (c, merge) in merges.into_iter().enumerate() {
        if product_id[c] == usize::MAX {
            dead_blocks.push(merge);
        } else {
            formation[product_id[c]] = Some(merge);
        }
    }
    Ok(CompositionResult {
        product: Partition { m: l, n, labels: raw },
        dead_blocks,
        formation: formation.into_iter().map(|m| m.expect("every product block is formed")).collect(),
    })
}

/// One component `U ⊔ U` of the decomposition of an idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleComponent {
    /// Ground-set elements (1-based) of the component.
    pub ground: Vec<usize>,
    pub rank: usize,
}

/// Splits `[n]` into the connected components of `εˡ ∨ εʳ`, together with
/// the rank of each restriction. Returns `None` when some block of `e` meets
/// two different components.
pub fn irreducible_components(e: &Partition) -> Result<Option<Vec<IrreducibleComponent>>, PartitionError> {
    if !e.is_square() {
        return Err(PartitionError::NotSquare { m: e.m, n: e.n });
    }
    let n = e.n;
    let mut uf = UnionFind::new(n);
    let mut first_in = vec![usize::MAX; e.num_blocks()];
    let mut first_out = vec![usize::MAX; e.num_blocks()];
    for i in 0..n {
        let b = e.labels[i] as usize;
        if first_in[b] == usize::MAX {
            first_in[b] = i;
        } else {
            uf.union(first_in[b], i);
        }
        let b = e.labels[n + i] as usize;
        if first_out[b] == usize::MAX {
            first_out[b] = i;
        } else {
            uf.union(first_out[b], i);
        }
    }
    let (comp, count) = uf.classes();
    let mut block_comp = vec![usize::MAX; e.num_blocks()];
    for pos in 0..2 * n {
        let b = e.labels[pos] as usize;
        let c = comp[pos % n];
        if block_comp[b] == usize::MAX {
            block_comp[b] = c;
        } else if block_comp[b] != c {
            return Ok(None);
        }
    }
    let mut out: Vec<IrreducibleComponent> =
        (0..count).map(|_| IrreducibleComponent { ground: Vec::new(), rank: 0 }).collect();
    for (i, &c) in comp.iter().enumerate() {
        out[c].ground.push(i + 1);
    }
    for (b, stats) in e.stats().blocks.iter().enumerate() {
        if stats.kind == BlockKind::Transversal {
            out[block_comp[b]].rank += 1;
        }
    }
    Ok(Some(out))
}

/// Decides idempotency from the block structure alone: `e` is idempotent iff
/// `[n]` splits into components `Uᵢ` of `εˡ ∨ εʳ` such that `e` is the union of
/// its restrictions to `Uᵢ ⊔ Uᵢ` and each restriction has rank at most one.
/// The decomposition is returned when it exists.
pub fn idempotent_decomposition(e: &Partition) -> Result<Option<Vec<IrreducibleComponent>>, PartitionError> {
    Ok(irreducible_components(e)?.filter(|comps| comps.iter().all(|c| c.rank <= 1)))
}

pub fn is_idempotent_structurally(e: &Partition) -> Result<bool, PartitionError> {
    Ok(idempotent_decomposition(e)?.is_some())
}

/// `e` is idempotent and `εˡ ∨ εʳ` is the universal relation on a non-empty
/// ground set.
pub fn is_irreducible_idempotent(e: &Partition) -> Result<bool, PartitionError> {
    Ok(match idempotent_decomposition(e)? {
        Some(comps) => comps.len() == 1,
        None => false,
    })
}

/// All partitions `[m] ⇝ [n]`, via restricted growth strings.
pub fn enumerate_partitions(m: usize, n: usize) -> Result<PartitionIter, PartitionError> {
    enumerate_partitions_bounded(m, n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_partitions_bounded(m: usize, n: usize, bound: usize) -> Result<PartitionIter, PartitionError> {
    if m + n > bound {
        return Err(PartitionError::BoundExceeded { m, n, bound });
    }
    Ok(PartitionIter { m, n, rgs: Some(vec![0; m + n]) })
}

/// Iterator over restricted growth strings of length `m + n` in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct PartitionIter {
    m: usize,
    n: usize,
    rgs: Option<Vec<u32>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.rgs.take()?;
        let item = Partition { m: self.m, n: self.n, labels: current.clone() };
        // advance: rightmost position that may grow without breaking the RGS rule
        let mut next = current;
        let len = next.len();
        let mut prefix_max = vec![0u32; len];
        for i in 1..len {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        let mut i = len;
        while i > 1 {
            i -= 1;
            if next[i] <= prefix_max[i] {
                next[i] += 1;
                for x in next.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                self.rgs = Some(next);
                break;
            }
        }
        Some(item)
    }
}

/// The endomorphism monoid `𝔓ₙ` with the reflection as involution.
#[derive(Clone, Copy, Debug)]
pub struct PartitionMonoid {
    pub n: usize,
}

impl crate::algebra::Monoid for PartitionMonoid {
    type Elem = Partition;

    fn one(&self) -> Partition {
        Partition::identity(self.n)
    }

    fn mul(&self, a: &Partition, b: &Partition) -> Partition {
        compose(a, b).expect("operands have the monoid's shape").product
    }

    fn star(&self, a: &Partition) -> Option<Partition> {
        Some(a.reflect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize, n: usize, blocks: &[&[Vertex]]) -> Partition {
        let blocks: Vec<Vec<Vertex>> = blocks.iter().map(|b| b.to_vec()).collect();
        Partition::new(m, n, &blocks).unwrap()
    }

    const I1: Vertex = Vertex::input(1);
    const I2: Vertex = Vertex::input(2);
    const O1: Vertex = Vertex::output(1);
    const O2: Vertex = Vertex::output(2);

    /// Bell numbers by the triangle recurrence; independent of the RGS walk.
    fn bell(k: usize) -> usize {
        let mut row = vec![1usize];
        for _ in 0..k {
            let mut next = vec![*row.last().unwrap()];
            for x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn make_partition_examples() {
        assert_eq!(p(1, 1, &[&[I1, O1]]), Partition::identity(1));
        let cupcap = p(2, 2, &[&[I1, I2], &[O1, O2]]);
        let s = cupcap.stats();
        assert_eq!((s.rank, s.lb, s.rb), (0, 1, 1));
        let empty = Partition::new(0, 0, &[]).unwrap();
        assert_eq!(empty, Partition::identity(0));
        assert_eq!(empty.num_blocks(), 0);
    }

    #[test]
    fn make_partition_errors() {
        assert_eq!(
            Partition::new(1, 1, &[vec![I1, O1], vec![O1]]),
            Err(PartitionError::Overlap(O1))
        );
        assert_eq!(Partition::new(1, 1, &[vec![I1]]), Err(PartitionError::Coverage(O1)));
        assert!(matches!(
            Partition::new(1, 1, &[vec![I1, O1, O2]]),
            Err(PartitionError::Range { .. })
        ));
        assert!(matches!(
            Partition::new(1, 1, &[vec![Vertex::input(0), I1, O1]]),
            Err(PartitionError::Range { .. })
        ));
        assert_eq!(Partition::new(1, 1, &[vec![I1, O1], vec![]]), Err(PartitionError::EmptyBlock));
    }

    #[test]
    fn canonical_order_ignores_input_order() {
        let a = p(2, 2, &[&[O2, I1], &[O1, I2]]);
        let b = p(2, 2, &[&[I2, O1], &[I1, O2]]);
        assert_eq!(a, b);
        assert_eq!(a.least_vertex(0), I1);
        assert_eq!(a.least_vertex(1), I2);
    }

    #[test]
    fn identity_is_neutral() {
        for alpha in enumerate_partitions(2, 2).unwrap() {
            let left = compose(&Partition::identity(2), &alpha).unwrap();
            assert_eq!(left.product, alpha);
            assert_eq!(left.dead_count(), 0);
            let right = compose(&alpha, &Partition::identity(2)).unwrap();
            assert_eq!(right.product, alpha);
            assert_eq!(right.dead_count(), 0);
        }
    }

    #[test]
    fn cupcap_squared_has_one_dead_block() {
        let a = p(2, 2, &[&[I1, I2], &[O1, O2]]);
        let r = compose(&a, &a).unwrap();
        assert_eq!(r.product, a);
        assert_eq!(r.dead_count(), 1);
        let d = &r.dead_blocks[0];
        assert_eq!((d.a(), d.b(), d.v()), (1, 1, 2));
        assert_eq!(d.middle, vec![1, 2]);
    }

    #[test]
    fn pair_of_pants_gluing() {
        let alpha = p(1, 2, &[&[I1, O1, O2]]);
        let beta = p(2, 1, &[&[I1, I2, O1]]);
        let r = compose(&alpha, &beta).unwrap();
        assert_eq!(r.product, Partition::identity(1));
        assert_eq!(r.dead_count(), 0);
        let f = &r.formation[0];
        assert_eq!((f.a(), f.b(), f.v()), (1, 1, 2));
        assert_eq!(f.increment(), 1);
    }

    #[test]
    fn shape_mismatch() {
        let err = compose(&Partition::identity(1), &Partition::identity(2)).unwrap_err();
        assert_eq!(err, PartitionError::ShapeMismatch { left: 1, right: 2 });
    }

    #[test]
    fn increment_examples() {
        assert_eq!(increment(2, 1, 1), 1);
        assert_eq!(increment(1, 1, 1), 0);
        assert_eq!(increment(3, 2, 2), 0);
    }

    #[test]
    fn block_stats_examples() {
        let s = Partition::identity(2).stats();
        assert_eq!((s.rank, s.lb, s.rb), (2, 0, 0));
        let s = p(2, 2, &[&[I1, O1, I2, O2]]).stats();
        assert_eq!(s.rank, 1);
        assert_eq!(s.blocks[0], BlockStats { iv: 2, ov: 2, v: 4, kind: BlockKind::Transversal });
    }

    #[test]
    fn reflect_and_rotate_examples() {
        assert_eq!(Partition::identity(3).reflect(), Partition::identity(3));
        assert_eq!(Partition::identity(3).rotate(), Partition::identity(3));
        let alpha = p(1, 2, &[&[I1, O1, O2]]);
        let expected = p(2, 1, &[&[I1, I2, O1]]);
        assert_eq!(alpha.reflect(), expected);
        assert_eq!(alpha.rotate(), expected);
        // rotation renumbers: {In1,Out2},{Out1} ↦ {In1},{In2,Out1}
        let beta = p(1, 2, &[&[I1, O2], &[O1]]);
        assert_eq!(beta.rotate(), p(2, 1, &[&[I2], &[I1, O1]]));
        assert_eq!(beta.reflect(), p(2, 1, &[&[I1], &[I2, O1]]));
    }

    #[test]
    fn reflection_block_map_follows_vertices() {
        for alpha in enumerate_partitions(2, 3).unwrap() {
            let (star, map) = alpha.reflect_with_map();
            for (b, block) in alpha.blocks().iter().enumerate() {
                let image: Vec<Vertex> = block
                    .iter()
                    .map(|v| Vertex { side: v.side.flip(), index: v.index })
                    .collect();
                let mut got = star.block(map[b]);
                let mut want = image;
                got.sort();
                want.sort();
                assert_eq!(got, want);
            }
            let (rot, map) = alpha.rotate_with_map();
            for (b, block) in alpha.blocks().iter().enumerate() {
                let mut want: Vec<Vertex> = block
                    .iter()
                    .map(|v| match v.side {
                        Side::In => Vertex::output(alpha.m() + 1 - v.index),
                        Side::Out => Vertex::input(alpha.n() + 1 - v.index),
                    })
                    .collect();
                want.sort();
                assert_eq!(rot.block(map[b]), want);
            }
        }
    }

    #[test]
    fn enumeration_counts_match_bell_numbers() {
        assert_eq!(enumerate_partitions(0, 0).unwrap().count(), 1);
        assert_eq!(enumerate_partitions(1, 1).unwrap().count(), bell(2));
        assert_eq!(enumerate_partitions(2, 2).unwrap().count(), 15);
        for (m, n) in [(1, 2), (2, 3), (3, 3), (4, 3)] {
            let all: Vec<Partition> = enumerate_partitions(m, n).unwrap().collect();
            assert_eq!(all.len(), bell(m + n));
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
        assert!(matches!(enumerate_partitions(5, 4), Err(PartitionError::BoundExceeded { .. })));
        assert_eq!(enumerate_partitions_bounded(5, 4, 9).unwrap().count(), bell(9));
    }

    #[test]
    fn idempotent_examples() {
        let comps = idempotent_decomposition(&Partition::identity(2)).unwrap().unwrap();
        assert_eq!(
            comps,
            vec![
                IrreducibleComponent { ground: vec![1], rank: 1 },
                IrreducibleComponent { ground: vec![2], rank: 1 }
            ]
        );
        let crossing = p(2, 2, &[&[I1, O2], &[I2, O1]]);
        assert!(!is_idempotent_structurally(&crossing).unwrap());
        let sq = compose(&crossing, &crossing).unwrap().product;
        assert_eq!(sq, Partition::identity(2));
        assert!(matches!(
            is_idempotent_structurally(&p(1, 2, &[&[I1, O1, O2]])),
            Err(PartitionError::NotSquare { .. })
        ));
    }

    #[test]
    fn structural_idempotency_matches_squaring_on_two_points() {
        for e in enumerate_partitions(2, 2).unwrap() {
            let squared = compose(&e, &e).unwrap().product;
            assert_eq!(is_idempotent_structurally(&e).unwrap(), squared == e, "{e}");
        }
    }
}
