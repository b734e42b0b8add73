//! Affine Temperley-Lieb diagrams and their annular quotients.
//!
//! An [`AffineDiagram`] `[m] ⇝ [n]` is a shift-invariant non-crossing perfect
//! matching of `ℤ×[m] ⊔ ℤ×[n]`, stored by the partners of the `m + n` points
//! at offset 0. Composition traces strings through the middle layer and
//! reports how many closed curves were dropped: contractible ones (`b0`) and
//! ones winding once around the annulus (`bω`).
//!
//! Decorated versions keep those counts: [`AffinePair`] keeps `ω`-circles,
//! [`AffineTriple`] keeps both kinds. Forgetting offsets gives the partition
//! image ([`AnnularPartition`]), and [`DeformedAnnular`] keeps a total circle
//! count on top of it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::Monoid;
use crate::auxmonoids::{FiniteMonoid, FiniteMonoidError};
use crate::partitions::{compose, Partition, Side, Vertex};

pub const DEFAULT_ANN_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct APoint {
    pub offset: i64,
    pub side: Side,
    pub index: usize,
}

impl APoint {
    pub const fn input(offset: i64, index: usize) -> Self {
        APoint { offset, side: Side::In, index }
    }

    pub const fn output(offset: i64, index: usize) -> Self {
        APoint { offset, side: Side::Out, index }
    }

    pub fn shifted(self, by: i64) -> Self {
        APoint { offset: self.offset + by, ..self }
    }

    pub fn vertex(self) -> Vertex {
        Vertex { side: self.side, index: self.index }
    }

    /// Position in the linear boundary order: outgoing points by decreasing
    /// coordinate, then incoming points by increasing coordinate.
    fn key(self) -> (u8, i64, i64) {
        match self.side {
            Side::Out => (0, -self.offset, -(self.index as i64)),
            Side::In => (1, self.offset, self.index as i64),
        }
    }
}

impl fmt::Display for APoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::In => "In",
            Side::Out => "Out",
        };
        write!(f, "({}, {side}, {})", self.offset, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("point {0} has no partner")]
    UnmatchedPoint(Vertex),
    #[error("point {0} is out of range")]
    Range(APoint),
    #[error("partner data is not an involution at {0}")]
    NotInvolutive(APoint),
    #[error("strings through {0} and {1} cross")]
    Crossing(APoint, APoint),
    #[error("m = {m} and n = {n} have different parity")]
    Parity { m: usize, n: usize },
    #[error("shape mismatch: cannot compose an arrow into [{left}] with an arrow out of [{right}]")]
    ShapeMismatch { left: usize, right: usize },
    #[error("closed middle curve winds {0} times")]
    WindingBound(i64),
    #[error("diagram has rank zero")]
    RankZero,
    #[error("a circle count {0} is incompatible with the skeleton")]
    CircleCount(i64),
    #[error("cannot mix regular and non-regular values")]
    RegularityMismatch,
    #[error("the star operation needs a regular value")]
    NotRegular,
    #[error("n = {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error(transparent)]
    Monoid(#[from] FiniteMonoidError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineDiagram {
    m: usize,
    n: usize,
    partner: Vec<APoint>,
}

impl AffineDiagram {
    /// Validates partner data for all `m + n` points at offset 0.
    pub fn new(m: usize, n: usize, partners: &[(Vertex, APoint)]) -> Result<Self, AffineError> {
        if m % 2 != n % 2 {
            return Err(AffineError::Parity { m, n });
        }
        let mut slots: Vec<Option<APoint>> = vec![None; m + n];
        for &(from, to) in partners {
            check_range(m, n, APoint { offset: 0, side: from.side, index: from.index })?;
            check_range(m, n, to)?;
            let pos = position(m, from.side, from.index);
            match slots[pos] {
                Some(prev) if prev != to => {
                    return Err(AffineError::NotInvolutive(APoint { offset: 0, side: from.side, index: from.index }))
                }
                _ => slots[pos] = Some(to),
            }
        }
        let mut partner = Vec::with_capacity(m + n);
        for (pos, slot) in slots.into_iter().enumerate() {
            partner.push(slot.ok_or_else(|| AffineError::UnmatchedPoint(fundamental(m, pos).vertex()))?);
        }
        let d = AffineDiagram { m, n, partner };
        d.validate()?;
        Ok(d)
    }

    /// Builds a diagram from one representative `(p, q)` per string; both
    /// endpoints get their partner.
    pub fn from_strings(m: usize, n: usize, strings: &[(APoint, APoint)]) -> Result<Self, AffineError> {
        let mut data = Vec::with_capacity(2 * strings.len());
        for &(p, q) in strings {
            data.push((p.vertex(), q.shifted(-p.offset)));
            data.push((q.vertex(), p.shifted(-q.offset)));
        }
        Self::new(m, n, &data)
    }

    fn validate(&self) -> Result<(), AffineError> {
        for pos in 0..self.m + self.n {
            let p = fundamental(self.m, pos);
            let q = self.partner[pos];
            if q == p || self.partner_of(q) != p {
                return Err(AffineError::NotInvolutive(p));
            }
        }
        if let Some((x, y)) = self.find_crossing() {
            return Err(AffineError::Crossing(x, y));
        }
        Ok(())
    }

    /// First pair of crossing strings, checking all string pairs whose
    /// representatives are at most `2W + 2` periods apart.
    fn find_crossing(&self) -> Option<(APoint, APoint)> {
        let w = self.max_offset();
        let reach = 2 * w + 2;
        let chords: Vec<(APoint, APoint)> =
            (0..self.m + self.n).map(|pos| (fundamental(self.m, pos), self.partner[pos])).collect();
        for &(x, x2) in &chords {
            for &(y, y2) in &chords {
                for d in -reach..=reach {
                    let (ys, y2s) = (y.shifted(d), y2.shifted(d));
                    if (ys == x && y2s == x2) || (ys == x2 && y2s == x) {
                        continue;
                    }
                    if chords_cross((x, x2), (ys, y2s)) {
                        return Some((x, ys));
                    }
                }
            }
        }
        None
    }

    pub fn identity(n: usize) -> Self {
        lambda_pow(n, 0)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Partner of an arbitrary point, by shift invariance.
    pub fn partner_of(&self, p: APoint) -> APoint {
        self.partner[position(self.m, p.side, p.index)].shifted(p.offset)
    }

    /// Partners of the offset-0 points, `In1 … Inm Out1 … Outn`.
    pub fn partners(&self) -> &[APoint] {
        &self.partner
    }

    pub fn max_offset(&self) -> i64 {
        self.partner.iter().map(|p| p.offset.abs()).max().unwrap_or(0)
    }

    /// Strings joining an incoming to an outgoing point, one per orbit,
    /// each starting at offset 0.
    pub fn transversals(&self) -> Vec<(APoint, APoint)> {
        (1..=self.m)
            .map(|k| (APoint::input(0, k), self.partner[k - 1]))
            .filter(|(_, q)| q.side == Side::Out)
            .collect()
    }

    /// Strings with both ends on `side`, one per orbit, normalised so the
    /// first endpoint is at offset 0 and precedes the second.
    pub fn side_strings(&self, side: Side) -> BTreeSet<(APoint, APoint)> {
        let count = if side == Side::In { self.m } else { self.n };
        (1..=count)
            .filter_map(|k| {
                let p = APoint { offset: 0, side, index: k };
                let q = self.partner_of(p);
                (q.side == side && (q.offset, q.index) > (0, k)).then_some((p, q))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.transversals().len()
    }

    /// Composes `self: [ℓ] ⇝ [m]` with `other: [m] ⇝ [n]`.
    pub fn compose(&self, other: &AffineDiagram) -> Result<AffineComposition, AffineError> {
        if self.n != other.m {
            return Err(AffineError::ShapeMismatch { left: self.n, right: other.m });
        }
        let (l, m, n) = (self.m, self.n, other.n);
        let mut visited = vec![false; m];
        let bound = 2 * m + 2;

        // a walk alternates between the two factors; `in_first` tells which
        // factor the current point belongs to
        let walk = |start: APoint, mut in_first: bool, visited: &mut Vec<bool>| -> APoint {
            let mut p = start;
            for _ in 0..bound {
                let q = if in_first { self.partner_of(p) } else { other.partner_of(p) };
                let outer = if in_first { q.side == Side::In } else { q.side == Side::Out };
                if outer {
                    return q;
                }
                visited[q.index - 1] = true;
                p = APoint { side: q.side.flip(), ..q };
                in_first = !in_first;
            }
            panic!("string trace from {start} did not terminate");
        };

        let mut partner = Vec::with_capacity(l + n);
        for k in 1..=l {
            partner.push(walk(APoint::input(0, k), true, &mut visited));
        }
        for j in 1..=n {
            partner.push(walk(APoint::output(0, j), false, &mut visited));
        }

        let (mut b0, mut bw) = (0, 0);
        for j in 1..=m {
            if visited[j - 1] {
                continue;
            }
            let mut cur = APoint::input(0, j);
            let shift = loop {
                let x = other.partner_of(cur);
                debug_assert_eq!(x.side, Side::In);
                visited[x.index - 1] = true;
                let y = self.partner_of(APoint { side: Side::Out, ..x });
                debug_assert_eq!(y.side, Side::Out);
                visited[y.index - 1] = true;
                if y.index == j {
                    break y.offset;
                }
                cur = APoint { side: Side::In, ..y };
            };
            match shift.abs() {
                0 => b0 += 1,
                1 => bw += 1,
                _ => return Err(AffineError::WindingBound(shift)),
            }
        }
        let product = AffineDiagram { m: l, n, partner };
        debug_assert!(product.validate().is_ok(), "composite diagram failed validation");
        Ok(AffineComposition { product, b0, bw })
    }

    /// Reflection in the horizontal line: incoming and outgoing swap.
    pub fn sigma(&self) -> AffineDiagram {
        let flip = |p: APoint| APoint { side: p.side.flip(), ..p };
        let partner = self.partner[self.m..]
            .iter()
            .chain(&self.partner[..self.m])
            .map(|&p| flip(p))
            .collect();
        AffineDiagram { m: self.n, n: self.m, partner }
    }

    /// Rotation by a half turn: `In(t, k) ↦ Out(−t, m+1−k)` and
    /// `Out(t, l) ↦ In(−t, n+1−l)`.
    pub fn rho(&self) -> AffineDiagram {
        let (m, n) = (self.m, self.n);
        let phi = |p: APoint| match p.side {
            Side::In => APoint::output(-p.offset, m + 1 - p.index),
            Side::Out => APoint::input(-p.offset, n + 1 - p.index),
        };
        let mut partner = vec![APoint::input(0, 0); m + n];
        for pos in 0..m + n {
            let p = fundamental(m, pos);
            let image = phi(p);
            partner[position(n, image.side, image.index)] = phi(self.partner[pos]);
        }
        AffineDiagram { m: n, n: m, partner }
    }

    /// Forgets offsets.
    pub fn project(&self) -> Partition {
        let labels: Vec<usize> = (0..self.m + self.n)
            .map(|pos| pos.min(position(self.m, self.partner[pos].side, self.partner[pos].index)))
            .collect();
        Partition::from_labels(self.m, self.n, &labels)
    }

    /// Whether some `λ`-shift has every partner at offset 0, i.e. no string
    /// crosses the cut between consecutive periods.
    pub fn is_rectangular(&self) -> bool {
        let shifts: BTreeSet<i64> = self.transversals().iter().map(|(_, q)| q.offset).collect();
        let sides_flat = self
            .partner
            .iter()
            .enumerate()
            .all(|(pos, q)| q.side != fundamental(self.m, pos).side || q.offset == 0);
        sides_flat && shifts.len() <= 1
    }
}

impl fmt::Debug for AffineDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Affine[{}⇝{}]{{", self.m, self.n)?;
        for (pos, q) in self.partner.iter().enumerate() {
            if pos > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}→{}", fundamental(self.m, pos), q)?;
        }
        write!(f, "}}")
    }
}

fn position(m: usize, side: Side, index: usize) -> usize {
    match side {
        Side::In => index - 1,
        Side::Out => m + index - 1,
    }
}

fn fundamental(m: usize, pos: usize) -> APoint {
    if pos < m {
        APoint::input(0, pos + 1)
    } else {
        APoint::output(0, pos - m + 1)
    }
}

fn check_range(m: usize, n: usize, p: APoint) -> Result<(), AffineError> {
    let bound = if p.side == Side::In { m } else { n };
    if p.index == 0 || p.index > bound {
        return Err(AffineError::Range(p));
    }
    Ok(())
}

/// Two chords cross iff exactly one endpoint of the second lies strictly
/// between the endpoints of the first.
fn chords_cross(x: (APoint, APoint), y: (APoint, APoint)) -> bool {
    let (a, b) = if x.0.key() < x.1.key() { (x.0.key(), x.1.key()) } else { (x.1.key(), x.0.key()) };
    let inside = |p: APoint| a < p.key() && p.key() < b;
    inside(y.0) != inside(y.1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineComposition {
    pub product: AffineDiagram,
    /// Contractible closed curves.
    pub b0: i64,
    /// Closed curves around the annulus.
    pub bw: i64,
}

/// `ζₙ`: `(t, In, k)` joins `(t, Out, k+1)` for `k < n`, and `(t, In, n)`
/// joins `(t+1, Out, 1)`.
pub fn zeta(n: usize) -> AffineDiagram {
    assert!(n >= 1, "zeta needs n ≥ 1");
    let strings: Vec<_> = (1..=n)
        .map(|k| {
            let to = if k < n { APoint::output(0, k + 1) } else { APoint::output(1, 1) };
            (APoint::input(0, k), to)
        })
        .collect();
    AffineDiagram::from_strings(n, n, &strings).expect("zeta is a valid diagram")
}

/// `λₙʳ`: `(t, In, k)` joins `(t+r, Out, k)`. Negative `r` gives the inverse.
pub fn lambda_pow(n: usize, r: i64) -> AffineDiagram {
    let strings: Vec<_> = (1..=n).map(|k| (APoint::input(0, k), APoint::output(r, k))).collect();
    AffineDiagram::from_strings(n, n, &strings).expect("lambda is a valid diagram")
}

/// Cup-cap `eᵢ` on `[n]` for `1 ≤ i ≤ n`; `eₙ` joins `n` to the point `1`
/// of the next period.
pub fn cup_cap(n: usize, i: usize) -> AffineDiagram {
    assert!(n >= 2 && (1..=n).contains(&i), "cup_cap needs n ≥ 2 and 1 ≤ i ≤ n");
    let (j, t) = if i < n { (i + 1, 0) } else { (1, 1) };
    let mut strings = vec![(APoint::input(0, i), APoint::input(t, j)), (APoint::output(0, i), APoint::output(t, j))];
    for k in (1..=n).filter(|&k| k != i && k != j) {
        strings.push((APoint::input(0, k), APoint::output(0, k)));
    }
    AffineDiagram::from_strings(n, n, &strings).expect("cup-cap is a valid diagram")
}

/// Returns `q` with `λ^q a = b` when it exists; `None` when the partition
/// images differ.
pub fn shift_gap(a: &AffineDiagram, b: &AffineDiagram) -> Result<Option<i64>, AffineError> {
    if a.rank() == 0 || b.rank() == 0 {
        return Err(AffineError::RankZero);
    }
    if a.m != b.m || a.n != b.n {
        return Err(AffineError::ShapeMismatch { left: a.n, right: b.n });
    }
    if a.project() != b.project() {
        return Ok(None);
    }
    let (from, to) = a.transversals()[0];
    let q = b.partner_of(from).offset - to.offset;
    let shifted = lambda_pow(a.m, q).compose(a)?.product;
    Ok((&shifted == b).then_some(q))
}

/// All diagrams `[m] ⇝ [n]` whose partner offsets lie in `[−w, w]`.
pub fn enumerate_affine(m: usize, n: usize, w: i64) -> Vec<AffineDiagram> {
    let total = m + n;
    let mut out = Vec::new();
    if total % 2 == 1 {
        return out;
    }
    let mut partner: Vec<Option<APoint>> = vec![None; total];
    fn rec(m: usize, n: usize, w: i64, partner: &mut Vec<Option<APoint>>, out: &mut Vec<AffineDiagram>) {
        let Some(p) = partner.iter().position(|x| x.is_none()) else {
            let d = AffineDiagram { m, n, partner: partner.iter().map(|x| x.unwrap()).collect() };
            if d.find_crossing().is_none() {
                out.push(d);
            }
            return;
        };
        for q in p + 1..partner.len() {
            if partner[q].is_some() {
                continue;
            }
            for t in -w..=w {
                let (fp, fq) = (fundamental(m, p), fundamental(m, q));
                partner[p] = Some(fq.shifted(t));
                partner[q] = Some(fp.shifted(-t));
                rec(m, n, w, partner, out);
                partner[p] = None;
                partner[q] = None;
            }
        }
    }
    rec(m, n, w, &mut partner, &mut out);
    out
}

/// `𝔞𝔗𝔏ᵉₙ` with `σ` as involution.
#[derive(Clone, Copy, Debug)]
pub struct AffineMonoid {
    pub n: usize,
}

impl Monoid for AffineMonoid {
    type Elem = AffineDiagram;

    fn one(&self) -> AffineDiagram {
        AffineDiagram::identity(self.n)
    }

    fn mul(&self, a: &AffineDiagram, b: &AffineDiagram) -> AffineDiagram {
        a.compose(b).expect("operands have the monoid's shape").product
    }

    fn star(&self, a: &AffineDiagram) -> Option<AffineDiagram> {
        Some(a.sigma())
    }
}

fn check_count(value: i64, regular: bool) -> Result<(), AffineError> {
    if !regular && value < 0 {
        return Err(AffineError::CircleCount(value));
    }
    Ok(())
}

/// `(α, k)`: a skeleton with `k` circles around the annulus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffinePair {
    skeleton: AffineDiagram,
    k: i64,
    regular: bool,
}

impl AffinePair {
    pub fn new(skeleton: AffineDiagram, k: i64, regular: bool) -> Result<Self, AffineError> {
        check_count(k, regular)?;
        if k != 0 && skeleton.rank() > 0 {
            return Err(AffineError::CircleCount(k));
        }
        Ok(AffinePair { skeleton, k, regular })
    }

    pub fn skeleton(&self) -> &AffineDiagram {
        &self.skeleton
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// `(αβ, k + ℓ + bω(α, β))`.
    pub fn compose(&self, other: &AffinePair) -> Result<AffinePair, AffineError> {
        if self.regular != other.regular {
            return Err(AffineError::RegularityMismatch);
        }
        let c = self.skeleton.compose(&other.skeleton)?;
        let k = self.k + other.k + c.bw;
        assert!(k == 0 || c.product.rank() == 0, "ω-circles alongside a transversal string");
        Ok(AffinePair { skeleton: c.product, k, regular: self.regular })
    }

    /// `(α^σ, −k − bω(α, α^σ) − bω(α^σ, α))`.
    pub fn star(&self) -> Result<AffinePair, AffineError> {
        if !self.regular {
            return Err(AffineError::NotRegular);
        }
        let s = self.skeleton.sigma();
        let bw = self.skeleton.compose(&s)?.bw + s.compose(&self.skeleton)?.bw;
        Ok(AffinePair { skeleton: s, k: -self.k - bw, regular: true })
    }

    pub fn sigma(&self) -> AffinePair {
        AffinePair { skeleton: self.skeleton.sigma(), ..self.clone() }
    }

    pub fn rho(&self) -> AffinePair {
        AffinePair { skeleton: self.skeleton.rho(), ..self.clone() }
    }
}

/// `(α, k, k′)`: a skeleton with `k` circles around the annulus and `k′`
/// contractible ones.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineTriple {
    skeleton: AffineDiagram,
    k: i64,
    k0: i64,
    regular: bool,
}

impl AffineTriple {
    pub fn new(skeleton: AffineDiagram, k: i64, k0: i64, regular: bool) -> Result<Self, AffineError> {
        check_count(k, regular)?;
        check_count(k0, regular)?;
        if k != 0 && skeleton.rank() > 0 {
            return Err(AffineError::CircleCount(k));
        }
        Ok(AffineTriple { skeleton, k, k0, regular })
    }

    pub fn skeleton(&self) -> &AffineDiagram {
        &self.skeleton
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn k0(&self) -> i64 {
        self.k0
    }

    pub fn compose(&self, other: &AffineTriple) -> Result<AffineTriple, AffineError> {
        if self.regular != other.regular {
            return Err(AffineError::RegularityMismatch);
        }
        let c = self.skeleton.compose(&other.skeleton)?;
        let k = self.k + other.k + c.bw;
        assert!(k == 0 || c.product.rank() == 0, "ω-circles alongside a transversal string");
        Ok(AffineTriple { skeleton: c.product, k, k0: self.k0 + other.k0 + c.b0, regular: self.regular })
    }

    pub fn star(&self) -> Result<AffineTriple, AffineError> {
        if !self.regular {
            return Err(AffineError::NotRegular);
        }
        let s = self.skeleton.sigma();
        let (c1, c2) = (self.skeleton.compose(&s)?, s.compose(&self.skeleton)?);
        Ok(AffineTriple { skeleton: s, k: -self.k - c1.bw - c2.bw, k0: -self.k0 - c1.b0 - c2.b0, regular: true })
    }

    pub fn sigma(&self) -> AffineTriple {
        AffineTriple { skeleton: self.skeleton.sigma(), ..self.clone() }
    }

    pub fn rho(&self) -> AffineTriple {
        AffineTriple { skeleton: self.skeleton.rho(), ..self.clone() }
    }

    pub fn to_pair(&self) -> AffinePair {
        AffinePair { skeleton: self.skeleton.clone(), k: self.k, regular: self.regular }
    }
}

/// The partition induced by an affine diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AnnularPartition {
    base: Partition,
    rank: usize,
}

impl AnnularPartition {
    pub fn from_affine(a: &AffineDiagram) -> Self {
        AnnularPartition { base: a.project(), rank: a.rank() }
    }

    /// Wraps a partition without checking that it is annular.
    pub fn from_base(base: Partition) -> Self {
        let rank = base.rank();
        AnnularPartition { base, rank }
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn compose(&self, other: &AnnularPartition) -> Result<AnnularPartition, AffineError> {
        let r = compose(&self.base, &other.base).map_err(|_| AffineError::ShapeMismatch {
            left: self.base.n(),
            right: other.base.m(),
        })?;
        let rank = r.product.rank();
        Ok(AnnularPartition { base: r.product, rank })
    }

    pub fn sigma(&self) -> AnnularPartition {
        AnnularPartition { base: self.base.reflect(), rank: self.rank }
    }

    pub fn rho(&self) -> AnnularPartition {
        AnnularPartition { base: self.base.rotate(), rank: self.rank }
    }
}

/// An annular partition with a total circle count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeformedAnnular {
    base: AnnularPartition,
    k: i64,
    regular: bool,
}

impl DeformedAnnular {
    pub fn new(base: AnnularPartition, k: i64, regular: bool) -> Result<Self, AffineError> {
        check_count(k, regular)?;
        Ok(DeformedAnnular { base, k, regular })
    }

    /// Image of an affine triple: all circles are counted together.
    pub fn from_triple(x: &AffineTriple) -> Self {
        DeformedAnnular { base: AnnularPartition::from_affine(&x.skeleton), k: x.k + x.k0, regular: x.regular }
    }

    pub fn base(&self) -> &AnnularPartition {
        &self.base
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn compose(&self, other: &DeformedAnnular) -> Result<DeformedAnnular, AffineError> {
        if self.regular != other.regular {
            return Err(AffineError::RegularityMismatch);
        }
        let r = compose(&self.base.base, &other.base.base).map_err(|_| AffineError::ShapeMismatch {
            left: self.base.base.n(),
            right: other.base.base.m(),
        })?;
        let rank = r.product.rank();
        let dead = r.dead_count() as i64;
        Ok(DeformedAnnular {
            base: AnnularPartition { base: r.product, rank },
            k: self.k + other.k + dead,
            regular: self.regular,
        })
    }

    pub fn sigma(&self) -> DeformedAnnular {
        DeformedAnnular { base: self.base.sigma(), ..self.clone() }
    }

    pub fn rho(&self) -> DeformedAnnular {
        DeformedAnnular { base: self.base.rho(), ..self.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct AnnMonoid {
    pub n: usize,
    /// Element `i` of the table.
    pub elements: Vec<Partition>,
    pub table: FiniteMonoid,
    /// Idempotent element indices with their ranks.
    pub idempotents: Vec<(usize, usize)>,
    /// For each element, a word in the generators whose product projects to it.
    pub witnesses: Vec<Vec<usize>>,
    pub generators: Vec<AffineDiagram>,
}

/// Generators of `𝔞𝔗𝔏ᵉₙ` used for the annular closure: `ζ`, its inverse
/// `ζ^σ`, and the cup-caps `e₁ … eₙ` when `n ≥ 2`.
pub fn ann_generators(n: usize) -> Vec<AffineDiagram> {
    let z = zeta(n);
    let mut gens = vec![z.clone(), z.sigma()];
    if n >= 2 {
        gens.extend((1..=n).map(|i| cup_cap(n, i)));
    }
    gens
}

/// Closes the partition images of [`ann_generators`] under composition.
pub fn build_ann_monoid(n: usize) -> Result<AnnMonoid, AffineError> {
    build_ann_monoid_bounded(n, DEFAULT_ANN_BOUND)
}

pub fn build_ann_monoid_bounded(n: usize, bound: usize) -> Result<AnnMonoid, AffineError> {
    if n > bound {
        return Err(AffineError::BoundExceeded { n, bound });
    }
    if n == 0 {
        let table = FiniteMonoid::new(vec![vec![0]], None)?;
        return Ok(AnnMonoid {
            n,
            elements: vec![Partition::identity(0)],
            table,
            idempotents: vec![(0, 0)],
            witnesses: vec![vec![]],
            generators: vec![],
        });
    }
    let generators = ann_generators(n);
    let gen_images: Vec<Partition> = generators.iter().map(|g| g.project()).collect();
    let mut elements = vec![Partition::identity(n)];
    let mut witnesses: Vec<Vec<usize>> = vec![vec![]];
    let mut index: HashMap<Partition, usize> = HashMap::from([(Partition::identity(n), 0)]);
    let mut frontier = 0;
    while frontier < elements.len() {
        for (g, img) in gen_images.iter().enumerate() {
            let p = compose(&elements[frontier], img).expect("square shapes").product;
            if !index.contains_key(&p) {
                index.insert(p.clone(), elements.len());
                let mut w = witnesses[frontier].clone();
                w.push(g);
                witnesses.push(w);
                elements.push(p);
            }
        }
        frontier += 1;
    }
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&compose(a, b).expect("square shapes").product])
                .collect()
        })
        .collect();
    let involution: Vec<usize> = elements.iter().map(|a| index[&a.reflect()]).collect();
    let table = FiniteMonoid::new(table, Some(involution))?;
    let idempotents = table.idempotents().into_iter().map(|e| (e, elements[e].rank())).collect();
    Ok(AnnMonoid { n, elements, table, idempotents, witnesses, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrap_element() -> AffineDiagram {
        AffineDiagram::from_strings(
            2,
            2,
            &[(APoint::input(0, 1), APoint::input(0, 2)), (APoint::output(0, 2), APoint::output(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn generators_validate() {
        assert_eq!(AffineDiagram::identity(3).rank(), 3);
        assert_eq!(zeta(2).rank(), 2);
        assert_eq!(zeta(2).partner_of(APoint::input(5, 2)), APoint::output(6, 1));
        assert_eq!(cup_cap(2, 1).rank(), 0);
        assert_eq!(cup_cap(3, 3).rank(), 1);
    }

    #[test]
    fn crossing_candidates() {
        // (0,In,1)↔(0,Out,2) with (0,In,2)↔(−1,Out,1) crosses; with
        // (0,In,2)↔(1,Out,1) it is ζ₂
        let bad = AffineDiagram::from_strings(
            2,
            2,
            &[(APoint::input(0, 1), APoint::output(0, 2)), (APoint::input(0, 2), APoint::output(-1, 1))],
        );
        assert!(matches!(bad, Err(AffineError::Crossing(..))));
        let good = AffineDiagram::from_strings(
            2,
            2,
            &[(APoint::input(0, 1), APoint::output(0, 2)), (APoint::input(0, 2), APoint::output(1, 1))],
        );
        assert_eq!(good.unwrap(), zeta(2));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(AffineDiagram::new(1, 2, &[]), Err(AffineError::Parity { .. })));
        assert!(matches!(
            AffineDiagram::new(1, 1, &[(Vertex::input(1), APoint::output(0, 1))]),
            Err(AffineError::UnmatchedPoint(_))
        ));
        assert!(matches!(
            AffineDiagram::new(
                1,
                1,
                &[(Vertex::input(1), APoint::output(0, 1)), (Vertex::output(1), APoint::input(1, 1))]
            ),
            Err(AffineError::NotInvolutive(_))
        ));
        assert!(matches!(
            AffineDiagram::new(1, 1, &[(Vertex::input(1), APoint::output(0, 2))]),
            Err(AffineError::Range(_))
        ));
    }

    #[test]
    fn circle_counts() {
        let e = cup_cap(2, 1);
        let c = e.compose(&e).unwrap();
        assert_eq!((c.product.clone(), c.b0, c.bw), (e, 1, 0));
        let a = wrap_element();
        let c = a.compose(&a).unwrap();
        assert_eq!((c.b0, c.bw), (0, 1));
        assert_eq!(c.product.rank(), 0);
    }

    #[test]
    fn pairs_and_triples() {
        let e = cup_cap(2, 1);
        let p = AffinePair::new(e.clone(), 0, false).unwrap();
        assert_eq!(p.compose(&p).unwrap().k(), 0);
        let t = AffineTriple::new(e, 0, 0, false).unwrap();
        let tt = t.compose(&t).unwrap();
        assert_eq!((tt.k(), tt.k0()), (0, 1));
        let a = AffinePair::new(wrap_element(), 0, false).unwrap();
        assert_eq!(a.compose(&a).unwrap().k(), 1);
        assert!(AffinePair::new(zeta(2), 1, false).is_err());
    }

    #[test]
    fn zeta_powers_give_lambda() {
        for n in 1..=5 {
            let z = zeta(n);
            let mut acc = AffineDiagram::identity(n);
            for _ in 0..n {
                acc = acc.compose(&z).unwrap().product;
            }
            assert_eq!(acc, lambda_pow(n, 1));
            assert_eq!(lambda_pow(n, 0), AffineDiagram::identity(n));
        }
    }

    #[test]
    fn involutions_on_generators() {
        let id = AffineDiagram::identity(3);
        assert_eq!(id.sigma(), id);
        assert_eq!(id.rho(), id);
        let z = zeta(3);
        assert_eq!(z.compose(&z.sigma()).unwrap().product, id);
        assert_eq!(z.rho().rho(), z);
    }

    #[test]
    fn projections() {
        assert_eq!(AffineDiagram::identity(2).project(), Partition::identity(2));
        assert_eq!(lambda_pow(3, 2).project(), Partition::identity(3));
        assert_eq!(lambda_pow(3, -1).project(), Partition::identity(3));
    }

    #[test]
    fn shift_gaps() {
        let z = zeta(3);
        let l2 = lambda_pow(3, 2);
        assert_eq!(shift_gap(&z, &z).unwrap(), Some(0));
        let zz = l2.compose(&z).unwrap().product;
        assert_eq!(shift_gap(&z, &zz).unwrap(), Some(2));
        assert_eq!(shift_gap(&z, &AffineDiagram::identity(3)).unwrap(), None);
        assert_eq!(shift_gap(&cup_cap(2, 1), &cup_cap(2, 1)), Err(AffineError::RankZero));
    }

    #[test]
    fn rectangularity() {
        assert!(cup_cap(2, 1).is_rectangular());
        assert!(lambda_pow(2, 3).is_rectangular());
        assert!(!zeta(3).is_rectangular());
        assert!(!cup_cap(2, 2).is_rectangular());
    }

    #[test]
    fn enumeration_is_valid_and_distinct() {
        let all = enumerate_affine(2, 2, 1);
        for d in &all {
            assert!(d.validate().is_ok());
        }
        let set: BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.contains(&zeta(2)));
        assert!(all.contains(&wrap_element()));
    }

    #[test]
    fn ann3_has_twelve_elements() {
        let ann = build_ann_monoid(3).unwrap();
        assert_eq!(ann.elements.len(), 12);
        assert_eq!(ann.table.units().len(), 3);
        assert_eq!(build_ann_monoid(1).unwrap().elements.len(), 1);
        assert!(matches!(build_ann_monoid(7), Err(AffineError::BoundExceeded { .. })));
    }
}
