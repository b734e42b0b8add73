//! Partition arrows decorated with genus labels and closed components.
//!
//! Three decorated families share the partition category as skeleton:
//!
//! * [`Cobordism`]: `(α, g, s)` with a genus per block and a spectrum of
//!   closed components, the combinatorial 2-cobordism category;
//! * [`DeformedPartition`]: `(α, s)` with a single circle count;
//! * [`LabeledPartition`]: `(α, g)`, cobordisms with closed components
//!   forgotten.
//!
//! Each carries a `regular` flag. Regular values admit integer labels of any
//! sign and have a star operation with `x x* x = x`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::Monoid;
use crate::auxmonoids::A21;
use crate::partitions::{
    compose, idempotent_decomposition, BlockKind, CompositionResult, Partition, PartitionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("cannot mix regular and non-regular values")]
    RegularityMismatch,
    #[error("the star operation needs a regular value")]
    NotRegular,
    #[error("negative label {0} in a non-regular value")]
    NegativeLabel(i64),
    #[error("genus map has {got} labels but the partition has {expected} blocks")]
    LabelCount { expected: usize, got: usize },
    #[error("base partition is not idempotent")]
    NotIdempotent,
    #[error("base idempotent is not irreducible")]
    NotIrreducible,
    #[error("factor {0} does not lie over the given idempotent")]
    BaseMismatch(usize),
    #[error("empty sequence")]
    EmptySequence,
}

/// Finitely supported map `genus ↦ multiplicity`, zero entries trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum(BTreeMap<i64, i64>);

impl Spectrum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut s = Self::new();
        for (g, c) in pairs {
            s.add_at(g, c);
        }
        s
    }

    pub fn get(&self, genus: i64) -> i64 {
        self.0.get(&genus).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, genus: i64, count: i64) {
        let e = self.0.entry(genus).or_insert(0);
        *e += count;
        if *e == 0 {
            self.0.remove(&genus);
        }
    }

    pub fn add(&self, other: &Spectrum) -> Spectrum {
        let mut out = self.clone();
        for (&g, &c) in &other.0 {
            out.add_at(g, c);
        }
        out
    }

    pub fn negate(&self) -> Spectrum {
        Spectrum(self.0.iter().map(|(&g, &c)| (g, -c)).collect())
    }

    /// Total number of closed components `Σᵢ sᵢ`.
    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&g, &c)| (g, c))
    }

    fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|(&g, &c)| g >= 0 && c >= 0)
    }
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// Genus gained when `a` blocks of one factor and `b` of the other merge
/// through `v` middle vertices.
pub fn increment(v: i64, a: i64, b: i64) -> i64 {
    v - (a + b) + 1
}

/// Labels of the product blocks and of the dead blocks of a composition.
fn merged_labels(r: &CompositionResult, g: &[i64], h: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let label = |m: &crate::partitions::Merge| {
        m.left_blocks.iter().map(|&b| g[b]).sum::<i64>()
            + m.right_blocks.iter().map(|&b| h[b]).sum::<i64>()
            + m.increment()
    };
    (r.formation.iter().map(label).collect(), r.dead_blocks.iter().map(label).collect())
}

fn check_labels(base: &Partition, genus: &[i64], regular: bool) -> Result<(), CobordismError> {
    if genus.len() != base.num_blocks() {
        return Err(CobordismError::LabelCount { expected: base.num_blocks(), got: genus.len() });
    }
    if !regular {
        if let Some(&g) = genus.iter().find(|&&g| g < 0) {
            return Err(CobordismError::NegativeLabel(g));
        }
    }
    Ok(())
}

/// `g*(C*) = −g(C) − v(C) + 2`, indexed by the blocks of the reflection.
fn starred_labels(base: &Partition, genus: &[i64]) -> (Partition, Vec<i64>) {
    let (star, map) = base.reflect_with_map();
    let stats = base.stats();
    let mut out = vec![0; genus.len()];
    for (b, &g) in genus.iter().enumerate() {
        out[map[b]] = -g - stats.blocks[b].v as i64 + 2;
    }
    (star, out)
}

fn transport(map: &[usize], genus: &[i64]) -> Vec<i64> {
    let mut out = vec![0; genus.len()];
    for (b, &g) in genus.iter().enumerate() {
        out[map[b]] = g;
    }
    out
}

/// The reflection `σ` and the rotation `ρ`, both involutive
/// anti-automorphisms.
pub trait Involutions: Sized {
    fn sigma(&self) -> Self;
    fn rho(&self) -> Self;
}

impl Involutions for Partition {
    fn sigma(&self) -> Self {
        self.reflect()
    }

    fn rho(&self) -> Self {
        self.rotate()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cobordism {
    base: Partition,
    genus: Vec<i64>,
    closed: Spectrum,
    regular: bool,
}

impl Cobordism {
    pub fn new(base: Partition, genus: Vec<i64>, closed: Spectrum, regular: bool) -> Result<Self, CobordismError> {
        check_labels(&base, &genus, regular)?;
        if !regular && !closed.is_nonnegative() {
            return Err(CobordismError::NegativeLabel(closed.iter().map(|(g, c)| g.min(c)).min().unwrap()));
        }
        Ok(Cobordism { base, genus, closed, regular })
    }

    /// `(α, 0, 0)`.
    pub fn plain(base: Partition, regular: bool) -> Self {
        let genus = vec![0; base.num_blocks()];
        Cobordism { base, genus, closed: Spectrum::new(), regular }
    }

    pub fn identity(n: usize, regular: bool) -> Self {
        Self::plain(Partition::identity(n), regular)
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    /// Genus per block, indexed like the blocks of [`Self::base`].
    pub fn genus(&self) -> &[i64] {
        &self.genus
    }

    pub fn closed(&self) -> &Spectrum {
        &self.closed
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn compose(&self, other: &Cobordism) -> Result<Cobordism, CobordismError> {
        if self.regular != other.regular {
            return Err(CobordismError::RegularityMismatch);
        }
        let r = compose(&self.base, &other.base)?;
        let (genus, dead) = merged_labels(&r, &self.genus, &other.genus);
        let mut closed = self.closed.add(&other.closed);
        for g in dead {
            closed.add_at(g, 1);
        }
        let out = Cobordism { base: r.product, genus, closed, regular: self.regular };
        if !self.regular {
            assert!(
                out.genus.iter().all(|&g| g >= 0) && out.closed.is_nonnegative(),
                "composition of non-regular cobordisms produced a negative label"
            );
        }
        Ok(out)
    }

    /// Reflected base with `g*(C*) = −g(C) − v(C) + 2`; the spectrum is
    /// negated and gets an extra `−(lb + rb)` at genus 1.
    pub fn star(&self) -> Result<Cobordism, CobordismError> {
        if !self.regular {
            return Err(CobordismError::NotRegular);
        }
        let (base, genus) = starred_labels(&self.base, &self.genus);
        let stats = self.base.stats();
        let mut closed = self.closed.negate();
        closed.add_at(1, -((stats.lb + stats.rb) as i64));
        Ok(Cobordism { base, genus, closed, regular: true })
    }

    pub fn to_deformed(&self) -> DeformedPartition {
        DeformedPartition { base: self.base.clone(), s: self.closed.total(), regular: self.regular }
    }

    pub fn to_labeled(&self) -> LabeledPartition {
        LabeledPartition { base: self.base.clone(), genus: self.genus.clone(), regular: self.regular }
    }
}

impl Involutions for Cobordism {
    fn sigma(&self) -> Self {
        let (base, map) = self.base.reflect_with_map();
        Cobordism { base, genus: transport(&map, &self.genus), closed: self.closed.clone(), regular: self.regular }
    }

    fn rho(&self) -> Self {
        let (base, map) = self.base.rotate_with_map();
        Cobordism { base, genus: transport(&map, &self.genus), closed: self.closed.clone(), regular: self.regular }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeformedPartition {
    base: Partition,
    s: i64,
    regular: bool,
}

impl DeformedPartition {
    pub fn new(base: Partition, s: i64, regular: bool) -> Result<Self, CobordismError> {
        if !regular && s < 0 {
            return Err(CobordismError::NegativeLabel(s));
        }
        Ok(DeformedPartition { base, s, regular })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// `(αβ, s + t + b(α, β))`.
    pub fn compose(&self, other: &DeformedPartition) -> Result<DeformedPartition, CobordismError> {
        if self.regular != other.regular {
            return Err(CobordismError::RegularityMismatch);
        }
        let r = compose(&self.base, &other.base)?;
        let dead = r.dead_count() as i64;
        Ok(DeformedPartition {
            base: r.product,
            s: self.s + other.s + dead,
            regular: self.regular,
        })
    }

    /// `(α*, −s − b(α, α*) − b(α*, α)) = (α*, −s − rb(α) − lb(α))`.
    pub fn star(&self) -> Result<DeformedPartition, CobordismError> {
        if !self.regular {
            return Err(CobordismError::NotRegular);
        }
        let stats = self.base.stats();
        Ok(DeformedPartition {
            base: self.base.reflect(),
            s: -self.s - (stats.lb + stats.rb) as i64,
            regular: true,
        })
    }

    pub fn to_partition(&self) -> Partition {
        self.base.clone()
    }
}

impl Involutions for DeformedPartition {
    fn sigma(&self) -> Self {
        DeformedPartition { base: self.base.reflect(), ..self.clone() }
    }

    fn rho(&self) -> Self {
        DeformedPartition { base: self.base.rotate(), ..self.clone() }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledPartition {
    base: Partition,
    genus: Vec<i64>,
    regular: bool,
}

impl LabeledPartition {
    pub fn new(base: Partition, genus: Vec<i64>, regular: bool) -> Result<Self, CobordismError> {
        check_labels(&base, &genus, regular)?;
        Ok(LabeledPartition { base, genus, regular })
    }

    pub fn identity(n: usize, regular: bool) -> Self {
        LabeledPartition { base: Partition::identity(n), genus: vec![0; n], regular }
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn genus(&self) -> &[i64] {
        &self.genus
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn compose(&self, other: &LabeledPartition) -> Result<LabeledPartition, CobordismError> {
        if self.regular != other.regular {
            return Err(CobordismError::RegularityMismatch);
        }
        let r = compose(&self.base, &other.base)?;
        let (genus, _) = merged_labels(&r, &self.genus, &other.genus);
        if !self.regular {
            assert!(genus.iter().all(|&g| g >= 0), "negative genus from non-regular inputs");
        }
        Ok(LabeledPartition { base: r.product, genus, regular: self.regular })
    }

    pub fn star(&self) -> Result<LabeledPartition, CobordismError> {
        if !self.regular {
            return Err(CobordismError::NotRegular);
        }
        let (base, genus) = starred_labels(&self.base, &self.genus);
        Ok(LabeledPartition { base, genus, regular: true })
    }

    pub fn to_partition(&self) -> Partition {
        self.base.clone()
    }
}

impl Involutions for LabeledPartition {
    fn sigma(&self) -> Self {
        let (base, map) = self.base.reflect_with_map();
        LabeledPartition { base, genus: transport(&map, &self.genus), regular: self.regular }
    }

    fn rho(&self) -> Self {
        let (base, map) = self.base.rotate_with_map();
        LabeledPartition { base, genus: transport(&map, &self.genus), regular: self.regular }
    }
}

/// Product of `xs` (all over the irreducible idempotent `e`) computed from
/// closed formulas rather than by iterated composition.
///
/// Rank one: left blocks keep the labels of the first factor, right blocks
/// those of the last, and the transversal block `T` gets
/// `Σ g_ℓ(T) + Σ_{ℓ<k} Σ_j g_ℓ(R_j) + Σ_{ℓ≥2} Σ_i g_ℓ(L_i) + (k−1)(n−p−q−1)`
/// where `p` and `q` count left and right blocks. Rank zero: every adjacent
/// pair contributes one closed component of genus
/// `Σ_j g_ℓ(R_j) + Σ_i g_{ℓ+1}(L_i) + n − (p+q) + 1`. Spectra add.
pub fn fiber_product_oracle(e: &Partition, xs: &[Cobordism]) -> Result<Cobordism, CobordismError> {
    let comps = idempotent_decomposition(e)?.ok_or(CobordismError::NotIdempotent)?;
    if comps.len() != 1 {
        return Err(CobordismError::NotIrreducible);
    }
    let first = xs.first().ok_or(CobordismError::EmptySequence)?;
    for (i, x) in xs.iter().enumerate() {
        if x.base() != e || x.regular != first.regular {
            return Err(CobordismError::BaseMismatch(i));
        }
    }
    let last = xs.last().unwrap();
    let stats = e.stats();
    let k = xs.len() as i64;
    let n = e.n() as i64;
    let (p, q) = (stats.lb as i64, stats.rb as i64);
    let of_kind = |x: &Cobordism, kind: BlockKind| -> i64 {
        stats.blocks.iter().zip(&x.genus).filter(|(s, _)| s.kind == kind).map(|(_, &g)| g).sum()
    };

    let mut genus = vec![0; e.num_blocks()];
    for (b, s) in stats.blocks.iter().enumerate() {
        genus[b] = match s.kind {
            BlockKind::Left => first.genus[b],
            BlockKind::Right => last.genus[b],
            BlockKind::Transversal => {
                xs.iter().map(|x| x.genus[b]).sum::<i64>()
                    + xs[..xs.len() - 1].iter().map(|x| of_kind(x, BlockKind::Right)).sum::<i64>()
                    + xs[1..].iter().map(|x| of_kind(x, BlockKind::Left)).sum::<i64>()
                    + (k - 1) * (n - p - q - 1)
            }
        };
    }
    let mut closed = xs.iter().fold(Spectrum::new(), |acc, x| acc.add(&x.closed));
    if stats.rank == 0 {
        for pair in xs.windows(2) {
            let g = of_kind(&pair[0], BlockKind::Right) + of_kind(&pair[1], BlockKind::Left) + n - (p + q) + 1;
            closed.add_at(g, 1);
        }
    }
    Ok(Cobordism { base: e.clone(), genus, closed, regular: first.regular })
}

/// The subsemigroup of `2𝔠𝔬𝔟₁` over the discrete partition `{In1}, {Out1}`
/// with labels in `{0, 1}`, written `(i, s, j)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SElement {
    pub i: u8,
    pub s: Spectrum,
    pub j: u8,
}

impl SElement {
    /// `(i, s, j)(k, t, l) = (i, s + e_{j+k} + t, l)`.
    pub fn mul(&self, other: &SElement) -> SElement {
        let mut s = self.s.add(&other.s);
        s.add_at(i64::from(self.j + other.i), 1);
        SElement { i: self.i, s, j: other.j }
    }

    pub fn sigma(&self) -> SElement {
        SElement { i: self.j, s: self.s.clone(), j: self.i }
    }

    /// `(i, j)` when `s₂ = 0`, otherwise `0`.
    pub fn to_a21(&self) -> A21 {
        if self.s.get(2) == 0 {
            A21::Pair(self.i, self.j)
        } else {
            A21::Zero
        }
    }

    pub fn to_cobordism(&self) -> Cobordism {
        Cobordism {
            base: discrete_one(),
            genus: vec![i64::from(self.i), i64::from(self.j)],
            closed: self.s.clone(),
            regular: false,
        }
    }
}

/// `{In1}, {Out1}`.
pub fn discrete_one() -> Partition {
    Partition::from_labels(1, 1, &[0u8, 1])
}

/// `2𝔠𝔬𝔟ₙ` (or its regular version) as a monoid, with `σ` as involution.
#[derive(Clone, Copy, Debug)]
pub struct CobordismMonoid {
    pub n: usize,
    pub regular: bool,
}

impl Monoid for CobordismMonoid {
    type Elem = Cobordism;

    fn one(&self) -> Cobordism {
        Cobordism::identity(self.n, self.regular)
    }

    fn mul(&self, a: &Cobordism, b: &Cobordism) -> Cobordism {
        a.compose(b).expect("operands have the monoid's shape")
    }

    fn star(&self, a: &Cobordism) -> Option<Cobordism> {
        Some(a.sigma())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, Vertex};

    fn cupcap() -> Partition {
        Partition::new(2, 2, &[vec![Vertex::input(1), Vertex::input(2)], vec![Vertex::output(1), Vertex::output(2)]])
            .unwrap()
    }

    #[test]
    fn increment_values() {
        assert_eq!(increment(2, 1, 1), 1);
        assert_eq!(increment(1, 1, 1), 0);
        assert_eq!(increment(3, 2, 2), 0);
    }

    #[test]
    fn identity_cobordisms_add_spectra() {
        let s = Spectrum::from_pairs([(0, 2), (3, 1)]);
        let t = Spectrum::from_pairs([(3, 4)]);
        let x = Cobordism::new(Partition::identity(2), vec![0, 0], s, false).unwrap();
        let y = Cobordism::new(Partition::identity(2), vec![0, 0], t, false).unwrap();
        let z = x.compose(&y).unwrap();
        assert_eq!(z.closed(), &Spectrum::from_pairs([(0, 2), (3, 5)]));
        assert_eq!(z.genus(), &[0, 0]);
    }

    #[test]
    fn cap_then_cup_closes_a_torus() {
        let cap = Partition::new(0, 2, &[vec![Vertex::output(1), Vertex::output(2)]]).unwrap();
        let x = Cobordism::plain(cap.clone(), true);
        let xs = x.star().unwrap();
        assert_eq!(xs.base(), &cap.reflect());
        assert_eq!(xs.genus(), &[0]);
        assert_eq!(xs.closed(), &Spectrum::from_pairs([(1, -1)]));
        let closed = Cobordism::plain(cap, false).compose(&Cobordism::plain(xs.base().clone(), false)).unwrap();
        assert_eq!(closed.base(), &Partition::identity(0));
        assert_eq!(closed.closed(), &Spectrum::from_pairs([(1, 1)]));
    }

    #[test]
    fn transversal_block_gains_genus() {
        let eps = Partition::from_labels(2, 2, &[0, 0, 0, 0]);
        let x = Cobordism::plain(eps.clone(), false);
        let x3 = x.compose(&x).unwrap().compose(&x).unwrap();
        assert_eq!(x3.genus(), &[2]);
        assert_eq!(fiber_product_oracle(&eps, &[x.clone(), x.clone(), x]).unwrap(), x3);
    }

    #[test]
    fn deformed_examples() {
        let id = Partition::identity(2);
        let a = DeformedPartition::new(id.clone(), 5, false).unwrap();
        let b = DeformedPartition::new(id.clone(), 7, false).unwrap();
        assert_eq!(a.compose(&b).unwrap().s(), 12);
        let e = DeformedPartition::new(cupcap(), 0, false).unwrap();
        assert_eq!(e.compose(&e).unwrap().s(), 1);
        assert_eq!(DeformedPartition::new(id.clone(), 3, true).unwrap().star().unwrap().s(), -3);
        let er = DeformedPartition::new(cupcap(), 0, true).unwrap();
        assert_eq!(er.star().unwrap().s(), -2);
        assert_eq!(e.star(), Err(CobordismError::NotRegular));
        assert_eq!(DeformedPartition::new(id, -1, false), Err(CobordismError::NegativeLabel(-1)));
    }

    #[test]
    fn star_of_identity() {
        let x = Cobordism::identity(1, true);
        assert_eq!(x.star().unwrap(), x);
        let y = LabeledPartition::identity(2, true);
        assert_eq!(y.star().unwrap(), y);
    }

    #[test]
    fn dead_blocks_of_x_xstar_have_genus_one() {
        for base in enumerate_partitions(2, 2).unwrap() {
            for shift in -2..=2i64 {
                let genus: Vec<i64> = (0..base.num_blocks() as i64).map(|b| b + shift).collect();
                let x = LabeledPartition::new(base.clone(), genus, true).unwrap();
                let xs = x.star().unwrap();
                let r = compose(&x.base, &xs.base).unwrap();
                let (_, dead) = merged_labels(&r, &x.genus, &xs.genus);
                assert!(dead.iter().all(|&g| g == 1));
                assert_eq!(dead.len(), base.stats().rb);
            }
        }
    }

    #[test]
    fn regularity_on_two_points() {
        for base in enumerate_partitions(2, 2).unwrap() {
            let genus: Vec<i64> = (0..base.num_blocks() as i64).map(|b| 1 - b).collect();
            let x = Cobordism::new(base, genus, Spectrum::from_pairs([(0, 1), (2, -3)]), true).unwrap();
            let xs = x.star().unwrap();
            assert_eq!(x.compose(&xs).unwrap().compose(&x).unwrap(), x);
            assert_eq!(xs.compose(&x).unwrap().compose(&xs).unwrap(), xs);
            assert_eq!(xs.star().unwrap(), x);
        }
    }

    #[test]
    fn sigma_equals_rho_on_one_point() {
        for base in enumerate_partitions(1, 1).unwrap() {
            let x = Cobordism::new(base.clone(), (0..base.num_blocks() as i64).collect(), Spectrum::new(), false)
                .unwrap();
            assert_eq!(x.sigma(), x.rho());
        }
    }

    #[test]
    fn s_semigroup_matches_cobordism_composition() {
        let x = SElement { i: 1, s: Spectrum::from_pairs([(2, 1)]), j: 1 };
        let y = SElement { i: 1, s: Spectrum::new(), j: 0 };
        let xy = x.mul(&y);
        assert_eq!(xy.s, Spectrum::from_pairs([(2, 2)]));
        assert_eq!(xy.to_cobordism(), x.to_cobordism().compose(&y.to_cobordism()).unwrap());
        assert_eq!(y.to_a21(), A21::Pair(1, 0));
        assert_eq!(xy.to_a21(), A21::Zero);
    }

    #[test]
    fn fiber_oracle_errors() {
        let crossing = Partition::from_labels(2, 2, &[0, 1, 1, 0]);
        let x = Cobordism::plain(crossing.clone(), false);
        assert_eq!(fiber_product_oracle(&crossing, &[x]), Err(CobordismError::NotIdempotent));
        let id = Partition::identity(2);
        assert_eq!(
            fiber_product_oracle(&id, &[Cobordism::plain(id.clone(), false)]),
            Err(CobordismError::NotIrreducible)
        );
        let e = cupcap();
        assert_eq!(
            fiber_product_oracle(&e, &[Cobordism::plain(e.clone(), false), Cobordism::plain(id, false)]),
            Err(CobordismError::BaseMismatch(1))
        );
        assert_eq!(fiber_product_oracle(&e, &[]), Err(CobordismError::EmptySequence));
    }
}
