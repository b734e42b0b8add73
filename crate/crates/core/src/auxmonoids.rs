//! Small monoids that model fibres and quotients of the diagram categories:
//! circle forests and their relatives, ideal extensions of rectangular
//! bands, `A₂¹`, a semidirect product over `ℤ`, a Rees-type ideal, and a
//! validated finite multiplication table.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Monoid;

/// A finite multiset of nested circles. The empty forest is `0`; a tree is
/// one circle around a forest. Children are kept sorted so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CircleForest {
    /// Interiors of the outermost circles, sorted.
    trees: Vec<CircleForest>,
}

impl CircleForest {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `(0)`, the single empty circle.
    pub fn circle() -> Self {
        Self::zero().enclose()
    }

    pub fn is_zero(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn add(&self, other: &CircleForest) -> CircleForest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        trees.sort();
        CircleForest { trees }
    }

    /// `k·x`.
    pub fn times(&self, k: usize) -> CircleForest {
        (0..k).fold(Self::zero(), |acc, _| acc.add(self))
    }

    /// `(x)`: one circle around `x`.
    pub fn enclose(&self) -> CircleForest {
        CircleForest { trees: vec![self.clone()] }
    }

    pub fn is_indecomposable(&self) -> bool {
        self.trees.len() == 1
    }

    /// The indecomposable summands, each as a one-tree forest.
    pub fn decompose(&self) -> Vec<CircleForest> {
        self.trees.iter().map(|t| t.enclose()).collect()
    }

    /// Interiors of the outermost circles.
    pub fn children(&self) -> &[CircleForest] {
        &self.trees
    }

    /// Nesting depth; `0` for the empty forest.
    pub fn depth(&self) -> usize {
        self.trees.iter().map(|t| t.depth() + 1).max().unwrap_or(0)
    }

    /// Total number of circles.
    pub fn size(&self) -> usize {
        self.trees.iter().map(|t| t.size() + 1).sum()
    }

    /// Number of summands equal to `tree`.
    pub fn multiplicity(&self, tree: &CircleForest) -> usize {
        assert!(tree.is_indecomposable(), "multiplicity of a decomposable forest");
        self.trees.iter().filter(|t| *t == &tree.trees[0]).count()
    }
}

impl Ord for CircleForest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.depth()
            .cmp(&other.depth())
            .then_with(|| self.size().cmp(&other.size()))
            .then_with(|| self.trees.cmp(&other.trees))
    }
}

impl PartialOrd for CircleForest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CircleForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({t})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CircleForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The commutative monoid `C` under `+`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CircleMonoid;

impl Monoid for CircleMonoid {
    type Elem = CircleForest;

    fn one(&self) -> CircleForest {
        CircleForest::zero()
    }

    fn mul(&self, a: &CircleForest, b: &CircleForest) -> CircleForest {
        a.add(b)
    }
}

/// Element of the Grothendieck group of `C`: integer coordinates on the
/// indecomposables `(a)`, keyed by the interior `a`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct GCElement(BTreeMap<CircleForest, i64>);

impl GCElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn embed(x: &CircleForest) -> Self {
        let mut out = Self::zero();
        for t in &x.trees {
            out.add_at(t.clone(), 1);
        }
        out
    }

    fn add_at(&mut self, key: CircleForest, c: i64) {
        let e = self.0.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&key);
        }
    }

    pub fn add(&self, other: &GCElement) -> GCElement {
        let mut out = self.clone();
        for (k, &c) in &other.0 {
            out.add_at(k.clone(), c);
        }
        out
    }

    pub fn negate(&self) -> GCElement {
        GCElement(self.0.iter().map(|(k, &c)| (k.clone(), -c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Back to `C` when every coordinate is non-negative.
    pub fn to_forest(&self) -> Option<CircleForest> {
        let mut trees = Vec::new();
        for (k, &c) in &self.0 {
            if c < 0 {
                return None;
            }
            trees.extend(std::iter::repeat(k.clone()).take(c as usize));
        }
        trees.sort();
        Some(CircleForest { trees })
    }
}

/// Element `c₀ + ∘ + c₁ + … + ∘ + c_q` of the free product of the monogenic
/// monoid `{∘}` with `C`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OCWord {
    segments: Vec<CircleForest>,
}

impl OCWord {
    pub fn new(segments: Vec<CircleForest>) -> Self {
        assert!(!segments.is_empty(), "an O*C word has at least one segment");
        OCWord { segments }
    }

    pub fn identity() -> Self {
        OCWord { segments: vec![CircleForest::zero()] }
    }

    pub fn from_forest(c: CircleForest) -> Self {
        OCWord { segments: vec![c] }
    }

    /// The ω-circle `∘`.
    pub fn omega() -> Self {
        OCWord { segments: vec![CircleForest::zero(), CircleForest::zero()] }
    }

    pub fn segments(&self) -> &[CircleForest] {
        &self.segments
    }

    /// Number of ω-circles.
    pub fn q(&self) -> usize {
        self.segments.len() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.segments.len() == 1 && self.segments[0].is_zero()
    }

    pub fn mul(&self, other: &OCWord) -> OCWord {
        let mut segments = self.segments.clone();
        let last = segments.pop().unwrap();
        segments.push(last.add(&other.segments[0]));
        segments.extend(other.segments[1..].iter().cloned());
        OCWord { segments }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuxError {
    #[error("elements come from different ideal-extension instances")]
    InstanceMismatch,
}

static NEXT_TOKEN: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum JEKind<S, L, R> {
    S(S),
    Pair(L, R),
}

/// Element of an ideal extension, tagged with its instance.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JEElement<S, L, R> {
    token: u64,
    pub kind: JEKind<S, L, R>,
}

type Op<A, B, C> = Arc<dyn Fn(&A, &B) -> C + Send + Sync>;

/// `𝒥ℰ(L×R; S)`: the monoid `S` together with the rectangular band `L×R`
/// as an ideal, `S` acting on `L` from the left and on `R` from the right.
#[derive(Clone)]
pub struct JEMonoid<S, L, R> {
    token: u64,
    s_one: S,
    s_mul: Op<S, S, S>,
    act_left: Op<S, L, L>,
    act_right: Op<R, S, R>,
    star: Option<Arc<dyn Fn(&JEKind<S, L, R>) -> JEKind<S, L, R> + Send + Sync>>,
}

impl<S, L, R> fmt::Debug for JEMonoid<S, L, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JEMonoid#{}", self.token)
    }
}

impl<S: Clone, L: Clone, R: Clone> JEMonoid<S, L, R> {
    pub fn new(
        s_one: S,
        s_mul: impl Fn(&S, &S) -> S + Send + Sync + 'static,
        act_left: impl Fn(&S, &L) -> L + Send + Sync + 'static,
        act_right: impl Fn(&R, &S) -> R + Send + Sync + 'static,
    ) -> Self {
        JEMonoid {
            token: NEXT_TOKEN.fetch_add(1, AtomicOrdering::Relaxed),
            s_one,
            s_mul: Arc::new(s_mul),
            act_left: Arc::new(act_left),
            act_right: Arc::new(act_right),
            star: None,
        }
    }

    pub fn with_star(mut self, star: impl Fn(&JEKind<S, L, R>) -> JEKind<S, L, R> + Send + Sync + 'static) -> Self {
        self.star = Some(Arc::new(star));
        self
    }

    pub fn s(&self, s: S) -> JEElement<S, L, R> {
        JEElement { token: self.token, kind: JEKind::S(s) }
    }

    pub fn pair(&self, l: L, r: R) -> JEElement<S, L, R> {
        JEElement { token: self.token, kind: JEKind::Pair(l, r) }
    }

    pub fn try_mul(&self, x: &JEElement<S, L, R>, y: &JEElement<S, L, R>) -> Result<JEElement<S, L, R>, AuxError> {
        if x.token != self.token || y.token != self.token {
            return Err(AuxError::InstanceMismatch);
        }
        let kind = match (&x.kind, &y.kind) {
            (JEKind::S(a), JEKind::S(b)) => JEKind::S((self.s_mul)(a, b)),
            (JEKind::S(s), JEKind::Pair(l, r)) => JEKind::Pair((self.act_left)(s, l), r.clone()),
            (JEKind::Pair(l, r), JEKind::S(s)) => JEKind::Pair(l.clone(), (self.act_right)(r, s)),
            (JEKind::Pair(l, _), JEKind::Pair(_, r)) => JEKind::Pair(l.clone(), r.clone()),
        };
        Ok(JEElement { token: self.token, kind })
    }
}

impl<S, L, R> Monoid for JEMonoid<S, L, R>
where
    S: Clone + PartialEq + fmt::Debug,
    L: Clone + PartialEq + fmt::Debug,
    R: Clone + PartialEq + fmt::Debug,
{
    type Elem = JEElement<S, L, R>;

    fn one(&self) -> Self::Elem {
        self.s(self.s_one.clone())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.try_mul(a, b).expect("elements of a different instance")
    }

    fn star(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.star.as_ref().map(|f| JEElement { token: self.token, kind: f(&a.kind) })
    }
}

/// `𝒥ℰ(ℤ×ℤ; ℤ)` with `s(ℓ, r) = (s+ℓ, r)` and `(ℓ, r)s = (ℓ, r+s)`, and
/// the involution `s* = s`, `(ℓ, r)* = (r, ℓ)`.
pub fn je_integers() -> JEMonoid<i64, i64, i64> {
    JEMonoid::new(0, |a, b| a + b, |s, l| s + l, |r, s| r + s).with_star(|k| match k {
        JEKind::S(s) => JEKind::S(*s),
        JEKind::Pair(l, r) => JEKind::Pair(*r, *l),
    })
}

/// `𝒥ℰ([2]×[2]; ℤ)` with `ℤ` acting on `{0, 1}` by parity.
pub fn je_parity() -> JEMonoid<i64, u8, u8> {
    JEMonoid::new(
        0,
        |a, b| a + b,
        |s, l| (l + s.rem_euclid(2) as u8) % 2,
        |r, s| (r + s.rem_euclid(2) as u8) % 2,
    )
}

/// `A₂¹`: `1`, `(i, j)` for `i, j ∈ {0, 1}`, and `0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum A21 {
    One,
    Pair(u8, u8),
    Zero,
}

impl A21 {
    pub fn all() -> [A21; 6] {
        [A21::One, A21::Pair(0, 0), A21::Pair(0, 1), A21::Pair(1, 0), A21::Pair(1, 1), A21::Zero]
    }

    /// `(i, j)(k, ℓ) = (i, ℓ)` unless `(j, k) = (1, 1)`, where it is `0`.
    pub fn mul(self, other: A21) -> A21 {
        match (self, other) {
            (A21::One, x) | (x, A21::One) => x,
            (A21::Zero, _) | (_, A21::Zero) => A21::Zero,
            (A21::Pair(_, 1), A21::Pair(1, _)) => A21::Zero,
            (A21::Pair(i, _), A21::Pair(_, l)) => A21::Pair(i, l),
        }
    }

    pub fn star(self) -> A21 {
        match self {
            A21::Pair(i, j) => A21::Pair(j, i),
            x => x,
        }
    }

    pub fn index(self) -> usize {
        A21::all().iter().position(|&x| x == self).unwrap()
    }
}

impl fmt::Display for A21 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A21::One => write!(f, "1"),
            A21::Zero => write!(f, "0"),
            A21::Pair(i, j) => write!(f, "({i},{j})"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct A21Monoid;

impl Monoid for A21Monoid {
    type Elem = A21;

    fn one(&self) -> A21 {
        A21::One
    }

    fn mul(&self, a: &A21, b: &A21) -> A21 {
        a.mul(*b)
    }

    fn star(&self, a: &A21) -> Option<A21> {
        Some(a.star())
    }
}

/// `((a, b), k)` in `(C×C) ⋊ ℤ`, where odd `k` swaps the entries of the
/// pair it acts on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SDPElement {
    pub a: CircleForest,
    pub b: CircleForest,
    pub k: i64,
}

fn twist(k: i64, a: &CircleForest, b: &CircleForest) -> (CircleForest, CircleForest) {
    if k.rem_euclid(2) == 1 {
        (b.clone(), a.clone())
    } else {
        (a.clone(), b.clone())
    }
}

impl SDPElement {
    pub fn new(a: CircleForest, b: CircleForest, k: i64) -> Self {
        SDPElement { a, b, k }
    }

    pub fn identity() -> Self {
        Self::new(CircleForest::zero(), CircleForest::zero(), 0)
    }

    pub fn mul(&self, other: &SDPElement) -> SDPElement {
        let (c, d) = twist(self.k, &other.a, &other.b);
        SDPElement { a: self.a.add(&c), b: self.b.add(&d), k: self.k + other.k }
    }

    /// `((a, b), k)* = (twist_k(a, b), −k)`.
    pub fn star(&self) -> SDPElement {
        let (a, b) = twist(self.k, &self.a, &self.b);
        SDPElement { a, b, k: -self.k }
    }
}

/// `(C×C) ⋊ ℤ` with an optional adjoined zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum WithZero<T> {
    Zero,
    Elem(T),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SDPMonoid;

impl Monoid for SDPMonoid {
    type Elem = SDPElement;

    fn one(&self) -> SDPElement {
        SDPElement::identity()
    }

    fn mul(&self, a: &SDPElement, b: &SDPElement) -> SDPElement {
        a.mul(b)
    }

    fn star(&self, a: &SDPElement) -> Option<SDPElement> {
        Some(a.star())
    }
}

/// `(C×C) ⋊ ℤ` with a zero adjoined.
#[derive(Clone, Copy, Debug, Default)]
pub struct SDPZeroMonoid;

impl Monoid for SDPZeroMonoid {
    type Elem = WithZero<SDPElement>;

    fn one(&self) -> Self::Elem {
        WithZero::Elem(SDPElement::identity())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (WithZero::Elem(x), WithZero::Elem(y)) => WithZero::Elem(x.mul(y)),
            _ => WithZero::Zero,
        }
    }

    fn star(&self, a: &Self::Elem) -> Option<Self::Elem> {
        Some(match a {
            WithZero::Elem(x) => WithZero::Elem(x.star()),
            WithZero::Zero => WithZero::Zero,
        })
    }
}

/// `(a, b, c)`: labels of the in-region, the transversal region and the
/// out-region of a rank-0 rectangular diagram on two points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReesL2Element {
    pub a: CircleForest,
    pub b: CircleForest,
    pub c: CircleForest,
}

impl ReesL2Element {
    pub fn new(a: CircleForest, b: CircleForest, c: CircleForest) -> Self {
        ReesL2Element { a, b, c }
    }

    pub fn zero() -> Self {
        Self::new(CircleForest::zero(), CircleForest::zero(), CircleForest::zero())
    }

    /// `(a, b, c)(a′, b′, c′) = (a, b + (c + a′) + b′, c′)`.
    pub fn mul(&self, other: &ReesL2Element) -> ReesL2Element {
        let middle = self.b.add(&self.c.add(&other.a).enclose()).add(&other.b);
        ReesL2Element { a: self.a.clone(), b: middle, c: other.c.clone() }
    }

    pub fn star(&self) -> ReesL2Element {
        ReesL2Element { a: self.c.clone(), b: self.b.clone(), c: self.a.clone() }
    }
}

/// The Rees ideal with an identity adjoined.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReesL2Monoid;

impl Monoid for ReesL2Monoid {
    type Elem = Option<ReesL2Element>;

    fn one(&self) -> Self::Elem {
        None
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (None, x) | (x, None) => x.clone(),
            (Some(x), Some(y)) => Some(x.mul(y)),
        }
    }

    fn star(&self, a: &Self::Elem) -> Option<Self::Elem> {
        Some(a.as_ref().map(ReesL2Element::star))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteMonoidError {
    #[error("table is not a square table over its own index set")]
    NotClosed,
    #[error("({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("involution fails at {0}")]
    BadInvolution(usize),
}

/// A monoid given by its multiplication table over `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    identity: usize,
    involution: Option<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>, involution: Option<Vec<usize>>) -> Result<Self, FiniteMonoidError> {
        let size = table.len();
        if size == 0 || table.iter().any(|row| row.len() != size || row.iter().any(|&x| x >= size)) {
            return Err(FiniteMonoidError::NotClosed);
        }
        for a in 0..size {
            for b in 0..size {
                let ab = table[a][b];
                for c in 0..size {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(FiniteMonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..size)
            .find(|&e| (0..size).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(FiniteMonoidError::NoIdentity)?;
        if let Some(inv) = &involution {
            if inv.len() != size || inv.iter().any(|&x| x >= size) {
                return Err(FiniteMonoidError::BadInvolution(0));
            }
            for a in 0..size {
                if inv[inv[a]] != a {
                    return Err(FiniteMonoidError::BadInvolution(a));
                }
                for b in 0..size {
                    if inv[table[a][b]] != table[inv[b]][inv[a]] {
                        return Err(FiniteMonoidError::BadInvolution(a));
                    }
                }
            }
        }
        Ok(FiniteMonoid { table, identity, involution })
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.involution.as_deref()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&e| self.table[e][e] == e).collect()
    }

    /// Elements with a two-sided inverse.
    pub fn units(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| (0..self.size()).any(|b| self.table[a][b] == self.identity && self.table[b][a] == self.identity))
            .collect()
    }

    /// `(index, period)` of the cyclic subsemigroup generated by `a`.
    pub fn index_period(&self, a: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.size()];
        let mut x = a;
        let mut k = 1;
        while seen[x] == usize::MAX {
            seen[x] = k;
            x = self.table[x][a];
            k += 1;
        }
        (seen[x], k - seen[x])
    }

    /// Whether `subset` is a subsemigroup in which `xx = x` and `xyz = xz`.
    pub fn is_rectangular_band(&self, subset: &[usize]) -> bool {
        let inside = |x: usize| subset.contains(&x);
        subset.iter().all(|&x| {
            self.table[x][x] == x
                && subset.iter().all(|&y| {
                    inside(self.table[x][y])
                        && subset.iter().all(|&z| self.table[self.table[x][y]][z] == self.table[x][z])
                })
        })
    }

    /// Whether `subset` is a two-sided ideal.
    pub fn is_ideal(&self, subset: &[usize]) -> bool {
        subset.iter().all(|&x| {
            (0..self.size()).all(|s| subset.contains(&self.table[s][x]) && subset.contains(&self.table[x][s]))
        })
    }
}

impl Monoid for FiniteMonoid {
    type Elem = usize;

    fn one(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn star(&self, a: &usize) -> Option<usize> {
        self.involution.as_ref().map(|inv| inv[*a])
    }
}

/// `A₂¹` as a validated table, indexed like [`A21::all`].
pub fn a21_table() -> FiniteMonoid {
    let all = A21::all();
    let table = all.iter().map(|x| all.iter().map(|y| x.mul(*y).index()).collect()).collect();
    let involution = all.iter().map(|x| x.star().index()).collect();
    FiniteMonoid::new(table, Some(involution)).expect("A21 is a monoid with involution")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> CircleForest {
        CircleForest::circle()
    }

    #[test]
    fn forest_sums() {
        let z = CircleForest::zero();
        assert_eq!(z.add(&z), z);
        let cc = c().enclose();
        assert_eq!(c().add(&cc), cc.add(&c()));
        assert_eq!(c().add(&cc).to_string(), "(0) + ((0))");
        assert!(c().add(&cc).enclose().is_indecomposable());
        assert!(!c().add(&c()).is_indecomposable());
        assert_eq!(c().add(&cc).decompose(), vec![c(), cc]);
        assert_eq!(c().times(3).size(), 3);
        assert_eq!(c().add(&c()).enclose().depth(), 2);
    }

    #[test]
    fn grothendieck_group() {
        assert!(GCElement::embed(&CircleForest::zero()).is_zero());
        let x = c().add(&c().enclose());
        let gx = GCElement::embed(&x);
        assert!(gx.add(&gx.negate()).is_zero());
        assert_eq!(gx.to_forest(), Some(x));
        assert_eq!(gx.negate().to_forest(), None);
    }

    #[test]
    fn oc_words() {
        let id = OCWord::identity();
        let w = OCWord::new(vec![c(), CircleForest::zero()]);
        assert_eq!(id.mul(&w), w);
        assert_eq!(w.mul(&id), w);
        assert_eq!(OCWord::omega().mul(&OCWord::omega()).q(), 2);
        let a = OCWord::from_forest(c());
        let b = OCWord::from_forest(c().enclose());
        assert_eq!(a.mul(&b), OCWord::from_forest(c().add(&c().enclose())));
    }

    #[test]
    fn ideal_extension() {
        let je = je_integers();
        assert_eq!(je.mul(&je.s(2), &je.pair(5, 7)), je.pair(7, 7));
        assert_eq!(je.mul(&je.pair(5, 7), &je.s(2)), je.pair(5, 9));
        assert_eq!(je.mul(&je.pair(1, 2), &je.pair(3, 4)), je.pair(1, 4));
        assert_eq!(je.mul(&je.s(2), &je.s(3)), je.s(5));
        let other = je_integers();
        assert_eq!(je.try_mul(&je.s(1), &other.s(1)), Err(AuxError::InstanceMismatch));
    }

    #[test]
    fn a21_rules() {
        assert_eq!(A21::Pair(0, 1).mul(A21::Pair(1, 0)), A21::Zero);
        assert_eq!(A21::Pair(0, 1).mul(A21::Pair(0, 1)), A21::Pair(0, 1));
        let t = a21_table();
        assert_eq!(t.size(), 6);
        assert!(crate::algebra::is_involution_on(&A21Monoid, &A21::all()));
    }

    #[test]
    fn semidirect_product() {
        let id = SDPElement::identity();
        let x = SDPElement::new(c(), CircleForest::zero(), 3);
        assert_eq!(id.mul(&x), x);
        assert_eq!(x.mul(&id), x);
        let y = SDPElement::new(CircleForest::zero(), c().enclose(), 1);
        let xy = x.mul(&y);
        assert_eq!(xy, SDPElement::new(c().add(&c().enclose()), CircleForest::zero(), 4));
        assert_eq!(xy.star(), y.star().mul(&x.star()));
        assert_eq!(x.star().star(), x);
    }

    #[test]
    fn rees_products() {
        let z = ReesL2Element::zero();
        assert_eq!(z.mul(&z), ReesL2Element::new(CircleForest::zero(), c(), CircleForest::zero()));
        let mut acc = z.clone();
        for t in 2..=8 {
            acc = acc.mul(&z);
            assert_eq!(acc.b, c().times(t - 1));
        }
        let x = ReesL2Element::new(CircleForest::zero(), CircleForest::zero(), c());
        let xs = x.star();
        assert_eq!(x.mul(&xs).b, c().add(&c()).enclose());
    }

    #[test]
    fn finite_monoid_validation() {
        let t = a21_table();
        assert_eq!(t.units(), vec![0]);
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteMonoid::new(bad, None).is_ok());
        let not_assoc = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]];
        assert!(matches!(FiniteMonoid::new(not_assoc, None), Err(FiniteMonoidError::NotAssociative(..))));
        assert_eq!(FiniteMonoid::new(vec![vec![0, 2]], None), Err(FiniteMonoidError::NotClosed));
        assert_eq!(FiniteMonoid::new(vec![vec![1, 1], vec![1, 1]], None), Err(FiniteMonoidError::NoIdentity));
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(FiniteMonoid::new(z2.clone(), Some(vec![1, 0])), Err(FiniteMonoidError::BadInvolution(0)));
        assert_eq!(FiniteMonoid::new(z2, None).unwrap().index_period(1), (1, 2));
    }
}
