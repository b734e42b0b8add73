//! Words, identities and the equational machinery around them.
//!
//! Letters are positive indices `1, 2, …` ordered by value. [`Alphabet`]
//! maps textual names such as `x`, `y`, `x2` to indices in sorted order, so
//! `t < x < y < z` and `x1 < x2 < x10`.
//!
//! Two decision procedures are exact:
//!
//! * [`holds_in_m`]: the identity holds in `𝒥ℰ(ℤ×ℤ; ℤ)` iff every left and
//!   right section is balanced. Such identities are exactly those whose
//!   [`normal_form`]s agree.
//! * [`holds_in_n`]: the identity holds in `𝒥ℰ([2]×[2]; ℤ)` iff it is
//!   balanced and every section is balanced mod 2. Those are exactly the
//!   identities whose [`canonical_form`]s agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::Monoid;

pub type Word = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub letter: usize,
    pub star: bool,
}

impl Sym {
    pub const fn plain(letter: usize) -> Self {
        Sym { letter, star: false }
    }

    pub const fn starred(letter: usize) -> Self {
        Sym { letter, star: true }
    }
}

/// A word over `X ∪ X*`.
pub type IWord = Vec<Sym>;

pub fn to_iword(w: &[usize]) -> IWord {
    w.iter().map(|&x| Sym::plain(x)).collect()
}

/// `None` if some symbol is starred.
pub fn to_plain(w: &[Sym]) -> Option<Word> {
    w.iter().map(|s| (!s.star).then_some(s.letter)).collect()
}

/// `(y₁ … y_q)* = y_q* … y₁*`.
pub fn star_word(w: &[Sym]) -> IWord {
    w.iter().rev().map(|s| Sym { letter: s.letter, star: !s.star }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    EmptyWord,
    #[error("cannot parse {input:?} at byte {at}: {reason}")]
    Parse { input: String, at: usize, reason: &'static str },
    #[error("positions {0} and {0}+1 are not an unsorted factor of an interior block")]
    NotInteriorFactor(usize),
    #[error("no value for letter {0}")]
    MissingLetter(usize),
    #[error("the monoid has no involution")]
    NoInvolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Semigroup,
    Monoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Plain,
    Involutory,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: IWord,
    pub rhs: IWord,
    pub mode: Mode,
}

impl Identity {
    pub fn plain(lhs: Word, rhs: Word, mode: Mode) -> Self {
        Identity { lhs: to_iword(&lhs), rhs: to_iword(&rhs), mode }
    }

    pub fn flavor(&self) -> Flavor {
        if self.lhs.iter().chain(&self.rhs).any(|s| s.star) {
            Flavor::Involutory
        } else {
            Flavor::Plain
        }
    }

    pub fn plain_sides(&self) -> Option<(Word, Word)> {
        Some((to_plain(&self.lhs)?, to_plain(&self.rhs)?))
    }

    pub fn letters(&self) -> BTreeSet<usize> {
        self.lhs.iter().chain(&self.rhs).map(|s| s.letter).collect()
    }

    pub fn swapped(&self) -> Identity {
        Identity { lhs: self.rhs.clone(), rhs: self.lhs.clone(), mode: self.mode }
    }

    /// Deletes every occurrence of the given letters on both sides.
    pub fn delete(&self, letters: &BTreeSet<usize>) -> Identity {
        let keep = |w: &IWord| w.iter().copied().filter(|s| !letters.contains(&s.letter)).collect();
        Identity { lhs: keep(&self.lhs), rhs: keep(&self.rhs), mode: self.mode }
    }
}

/// Letter names in sorted order; index `i + 1` names `names[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

fn name_key(name: &str) -> (String, Option<u64>) {
    let head: String = name.chars().take_while(|c| c.is_ascii_lowercase()).collect();
    let tail = &name[head.len()..];
    (head, tail.parse().ok())
}

impl Alphabet {
    pub fn from_names<I: IntoIterator<Item = String>>(names: I) -> Self {
        let set: BTreeSet<String> = names.into_iter().collect();
        let mut names: Vec<String> = set.into_iter().collect();
        names.sort_by_key(|n| name_key(n));
        Alphabet { names }
    }

    /// `x1, x2, …, xk`.
    pub fn indexed(k: usize) -> Self {
        Alphabet { names: (1..=k).map(|i| format!("x{i}")).collect() }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|i| i + 1)
    }

    pub fn name(&self, letter: usize) -> String {
        self.names.get(letter - 1).cloned().unwrap_or_else(|| format!("x{letter}"))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Prints a word, collapsing runs of an unstarred letter to `x^k`.
    pub fn render(&self, w: &[Sym]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < w.len() {
            let s = w[i];
            let mut j = i + 1;
            while j < w.len() && w[j] == s {
                j += 1;
            }
            out.push_str(&self.name(s.letter));
            if s.star {
                out.push('*');
            }
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }

    pub fn render_plain(&self, w: &[usize]) -> String {
        self.render(&to_iword(w))
    }
}

/// Symbols of a word as written: `(name, starred)` with exponents expanded.
pub fn parse_symbols(input: &str) -> Result<Vec<(String, bool)>, WordError> {
    let err = |at, reason| WordError::Parse { input: input.to_string(), at, reason };
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || c == b'.' {
            i += 1;
            continue;
        }
        if c == b'1' && (i + 1 == bytes.len() || !bytes[i + 1].is_ascii_digit()) {
            i += 1;
            continue;
        }
        if !c.is_ascii_lowercase() {
            return Err(err(i, "expected a letter"));
        }
        let end = digits(i + 1);
        let name = input[i..end].to_string();
        i = end;
        let mut star = false;
        let mut power = 1usize;
        let mut seen_power = false;
        loop {
            if i < bytes.len() && bytes[i] == b'*' && !star {
                star = true;
                i += 1;
            } else if i < bytes.len() && bytes[i] == b'^' && !seen_power {
                let end = digits(i + 1);
                if end == i + 1 {
                    return Err(err(i, "expected an exponent after '^'"));
                }
                power = input[i + 1..end].parse().map_err(|_| err(i, "exponent too large"))?;
                seen_power = true;
                i = end;
            } else {
                break;
            }
        }
        out.extend(std::iter::repeat((name, star)).take(power));
    }
    Ok(out)
}

fn resolve(alpha: &Alphabet, syms: &[(String, bool)]) -> IWord {
    syms.iter().map(|(n, s)| Sym { letter: alpha.index_of(n).unwrap(), star: *s }).collect()
}

/// Parses one word with its own alphabet.
pub fn parse_word(input: &str) -> Result<(IWord, Alphabet), WordError> {
    let syms = parse_symbols(input)?;
    let alpha = Alphabet::from_names(syms.iter().map(|(n, _)| n.clone()));
    Ok((resolve(&alpha, &syms), alpha))
}

/// Parses `u = v` (or `u ~ v`) over the alphabet of both sides.
pub fn parse_identity(input: &str, mode: Mode) -> Result<(Identity, Alphabet), WordError> {
    let (l, r) = input
        .split_once('=')
        .or_else(|| input.split_once('~'))
        .ok_or_else(|| WordError::Parse { input: input.to_string(), at: 0, reason: "expected '='" })?;
    let (ls, rs) = (parse_symbols(l)?, parse_symbols(r)?);
    let alpha = Alphabet::from_names(ls.iter().chain(&rs).map(|(n, _)| n.clone()));
    let id = Identity { lhs: resolve(&alpha, &ls), rhs: resolve(&alpha, &rs), mode };
    Ok((id, alpha))
}

/// `Z₁ = x₁`, `Z_{k+1} = Z_k x_{k+1} Z_k`.
pub fn zimin(k: usize) -> Word {
    assert!(k >= 1, "zimin needs k ≥ 1");
    let mut w = vec![1];
    for i in 2..=k {
        let prev = w.clone();
        w.push(i);
        w.extend(prev);
    }
    w
}

pub fn occ(w: &[usize], x: usize) -> usize {
    w.iter().filter(|&&y| y == x).count()
}

pub fn content(w: &[usize]) -> BTreeSet<usize> {
    w.iter().copied().collect()
}

fn counts(w: &[usize]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for &x in w {
        *out.entry(x).or_insert(0) += 1;
    }
    out
}

/// Every letter occurs equally often on both sides.
pub fn is_balanced(u: &[usize], v: &[usize]) -> bool {
    counts(u) == counts(v)
}

/// Equal content, and every letter occurs with the same parity on both sides.
pub fn is_balanced_mod2(u: &[usize], v: &[usize]) -> bool {
    let (cu, cv) = (counts(u), counts(v));
    cu.len() == cv.len() && cu.iter().all(|(x, n)| cv.get(x).is_some_and(|m| m % 2 == n % 2))
}

/// Occurrence counts of two-letter factors.
pub fn factor2_counts(w: &[usize]) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for p in w.windows(2) {
        *out.entry((p[0], p[1])).or_insert(0) += 1;
    }
    out
}

/// Longest prefix of `w` avoiding `x`.
pub fn left_section(w: &[usize], x: usize) -> Word {
    w.iter().copied().take_while(|&y| y != x).collect()
}

/// Longest suffix of `w` avoiding `x`.
pub fn right_section(x: usize, w: &[usize]) -> Word {
    let start = w.iter().rposition(|&y| y == x).map_or(0, |p| p + 1);
    w[start..].to_vec()
}

/// `w = z₀u₁z₁…u_nz_n` where the `zᵢ` are the leftmost and rightmost
/// occurrences of the letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeRep {
    /// The word of extreme occurrences `z₀ … z_n`.
    pub e: Word,
    /// Positions of the extreme occurrences in the source word.
    pub positions: Vec<usize>,
    /// Interior blocks `u₁ … u_n`, possibly empty.
    pub blocks: Vec<Word>,
}

impl ExtremeRep {
    pub fn reassemble(&self) -> Word {
        let mut out = vec![self.e[0]];
        for (u, &z) in self.blocks.iter().zip(&self.e[1..]) {
            out.extend(u);
            out.push(z);
        }
        out
    }
}

fn extreme_positions(w: &[usize]) -> Vec<usize> {
    let mut first = BTreeMap::new();
    let mut last = BTreeMap::new();
    for (p, &x) in w.iter().enumerate() {
        first.entry(x).or_insert(p);
        last.insert(x, p);
    }
    let set: BTreeSet<usize> = first.values().chain(last.values()).copied().collect();
    set.into_iter().collect()
}

pub fn extreme_rep(w: &[usize]) -> Result<ExtremeRep, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let positions = extreme_positions(w);
    let e = positions.iter().map(|&p| w[p]).collect();
    let blocks = positions.windows(2).map(|p| w[p[0] + 1..p[1]].to_vec()).collect();
    Ok(ExtremeRep { e, positions, blocks })
}

/// Every interior block sorted.
pub fn normal_form(w: &[usize]) -> Result<Word, WordError> {
    let mut rep = extreme_rep(w)?;
    for b in &mut rep.blocks {
        b.sort_unstable();
    }
    Ok(rep.reassemble())
}

/// Parity vector of the prefix `w[..end]` over `letters`.
fn prefix_parity(w: &[usize], end: usize, letters: &[usize]) -> Vec<bool> {
    letters.iter().map(|&y| occ(&w[..end], y) % 2 == 1).collect()
}

/// Representative of the class of `w` under the identities of `𝒥ℰ([2]×[2]; ℤ)`.
///
/// The class is determined by the letter counts, the orders of first and of
/// last occurrences, and the parity vectors of the prefixes in front of
/// every first and every last occurrence. The representative interleaves the
/// extreme occurrences in the first feasible order (first occurrences
/// preferred), fills each gap with the sorted letters whose parity still has
/// to flip, and parks the remaining even surplus of every letter right after
/// its first occurrence.
pub fn canonical_form(w: &[usize]) -> Result<Word, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let letters: Vec<usize> = content(w).into_iter().collect();
    let k = letters.len();
    let slot = |x: usize| letters.binary_search(&x).unwrap();
    let n: Vec<usize> = letters.iter().map(|&x| occ(w, x)).collect();
    let mut first_pos = vec![usize::MAX; k];
    let mut last_pos = vec![0; k];
    for (p, &x) in w.iter().enumerate() {
        let s = slot(x);
        if first_pos[s] == usize::MAX {
            first_pos[s] = p;
        }
        last_pos[s] = p;
    }
    let mut first_order: Vec<usize> = (0..k).collect();
    first_order.sort_by_key(|&s| first_pos[s]);
    let mut last_order: Vec<usize> = (0..k).collect();
    last_order.sort_by_key(|&s| last_pos[s]);
    let p_target: Vec<Vec<bool>> = (0..k).map(|s| prefix_parity(w, first_pos[s], &letters)).collect();
    let q_target: Vec<Vec<bool>> = (0..k).map(|s| prefix_parity(w, last_pos[s], &letters)).collect();

    struct Search<'a> {
        n: &'a [usize],
        first_order: &'a [usize],
        last_order: &'a [usize],
        p_target: &'a [Vec<bool>],
        q_target: &'a [Vec<bool>],
    }

    #[derive(Clone)]
    struct State {
        i: usize,
        j: usize,
        parity: Vec<bool>,
        used: Vec<usize>,
        opened: Vec<bool>,
        closed: Vec<bool>,
        /// Segments of slots; event `e` is preceded by `segments[e]`.
        out: Vec<(Vec<usize>, usize)>,
    }

    impl Search<'_> {
        fn place(&self, st: &State, x: usize, target: &[bool], opens: bool, closes: bool) -> Option<State> {
            let mut next = st.clone();
            let mut seg = Vec::new();
            for y in 0..target.len() {
                if st.parity[y] != target[y] {
                    if !st.opened[y] || st.closed[y] {
                        return None;
                    }
                    seg.push(y);
                    next.parity[y] = !next.parity[y];
                    next.used[y] += 1;
                }
            }
            next.parity[x] = !next.parity[x];
            next.used[x] += 1;
            if opens {
                next.opened[x] = true;
            }
            if closes {
                next.closed[x] = true;
            }
            for y in 0..target.len() {
                let pending = usize::from(self.n[y] >= 2 && !next.closed[y]);
                if next.used[y] + pending > self.n[y] {
                    return None;
                }
            }
            next.out.push((seg, x));
            Some(next)
        }

        fn run(&self, st: State) -> Option<State> {
            let k = self.n.len();
            if st.i == k && st.j == k {
                return Some(st);
            }
            if st.i < k {
                let x = self.first_order[st.i];
                if self.n[x] == 1 {
                    if st.j < k && self.last_order[st.j] == x {
                        if let Some(mut next) = self.place(&st, x, &self.p_target[x], true, true) {
                            next.i += 1;
                            next.j += 1;
                            if let Some(done) = self.run(next) {
                                return Some(done);
                            }
                        }
                    }
                } else if let Some(mut next) = self.place(&st, x, &self.p_target[x], true, false) {
                    next.i += 1;
                    if let Some(done) = self.run(next) {
                        return Some(done);
                    }
                }
            }
            if st.j < k {
                let x = self.last_order[st.j];
                if self.n[x] >= 2 && st.opened[x] {
                    if let Some(mut next) = self.place(&st, x, &self.q_target[x], false, true) {
                        next.j += 1;
                        return self.run(next);
                    }
                }
            }
            None
        }
    }

    let search = Search {
        n: &n,
        first_order: &first_order,
        last_order: &last_order,
        p_target: &p_target,
        q_target: &q_target,
    };
    let start = State {
        i: 0,
        j: 0,
        parity: vec![false; k],
        used: vec![0; k],
        opened: vec![false; k],
        closed: vec![false; k],
        out: Vec::new(),
    };
    let done = search.run(start).expect("the source word itself is a feasible interleaving");
    let mut seen_first = vec![false; k];
    let mut segments: Vec<Vec<usize>> = done.out.iter().map(|(seg, _)| seg.clone()).collect();
    for (e, &(_, x)) in done.out.iter().enumerate() {
        if !seen_first[x] {
            seen_first[x] = true;
            let surplus = n[x] - done.used[x];
            if surplus > 0 {
                segments[e + 1].extend(std::iter::repeat(x).take(surplus));
            }
        }
    }
    let mut word = Vec::with_capacity(w.len());
    for (seg, (_, x)) in segments.iter_mut().zip(&done.out) {
        seg.sort_unstable();
        word.extend(seg.iter().map(|&s| letters[s]));
        word.push(letters[*x]);
    }
    Ok(word)
}

/// Left and right sections at every letter of either side, plus the
/// sections at a letter absent from both (the words themselves).
fn section_pairs(u: &[usize], v: &[usize]) -> Vec<(Word, Word)> {
    let mut letters = content(u);
    letters.extend(content(v));
    let mut out = vec![(u.to_vec(), v.to_vec())];
    for &x in &letters {
        out.push((left_section(u, x), left_section(v, x)));
        out.push((right_section(x, u), right_section(x, v)));
    }
    out
}

/// Whether `u ≃ v` holds in `𝒥ℰ(ℤ×ℤ; ℤ)`: all sections balanced.
pub fn holds_in_m(u: &[usize], v: &[usize]) -> bool {
    section_pairs(u, v).iter().all(|(a, b)| is_balanced(a, b))
}

/// Whether `u ≃ v` holds in `𝒥ℰ([2]×[2]; ℤ)`: balanced, with all sections
/// balanced mod 2.
pub fn holds_in_n(u: &[usize], v: &[usize]) -> bool {
    is_balanced(u, v) && section_pairs(u, v).iter().all(|(a, b)| is_balanced_mod2(a, b))
}

fn x_t_y_t(x: usize, y: usize, t: [usize; 4], middle: [usize; 2], tail: [usize; 2]) -> Word {
    vec![x, t[0], y, t[1], middle[0], middle[1], t[2], tail[0], t[3], tail[1]]
}

/// `x t₁ y t₂ · xy · t₃ y t₄ x ≃ x t₁ y t₂ · yx · t₃ y t₄ x` over the letters
/// `x = 1`, `y = 2`, `t₁..t₄ = 3..6`.
pub fn swap_outer() -> Identity {
    let t = [3, 4, 5, 6];
    Identity::plain(x_t_y_t(1, 2, t, [1, 2], [2, 1]), x_t_y_t(1, 2, t, [2, 1], [2, 1]), Mode::Monoid)
}

/// `x t₁ y t₂ · xy · t₃ x t₄ y ≃ x t₁ y t₂ · yx · t₃ x t₄ y`.
pub fn swap_cross() -> Identity {
    let t = [3, 4, 5, 6];
    Identity::plain(x_t_y_t(1, 2, t, [1, 2], [1, 2]), x_t_y_t(1, 2, t, [2, 1], [1, 2]), Mode::Monoid)
}

/// `x³yx ≃ xyx³`.
pub fn cube_transport() -> Identity {
    Identity::plain(vec![1, 1, 1, 2, 1], vec![1, 2, 1, 1, 1], Mode::Monoid)
}

/// `Z₃ ≃ x₁x₃x₁x₂x₁x₂x₁`.
pub fn zimin3_variant() -> Identity {
    Identity::plain(zimin(3), vec![1, 3, 1, 2, 1, 2, 1], Mode::Semigroup)
}

/// `Z₄ ≃ x₁x₂x₁x₃x₂x₁²x₄Z₃`, a candidate identity for the affine monoid on
/// two points; registered for checking only.
pub fn zimin4_candidate() -> Identity {
    let mut rhs = vec![1, 2, 1, 3, 2, 1, 1, 4];
    rhs.extend(zimin(3));
    Identity::plain(zimin(4), rhs, Mode::Semigroup)
}

/// The two swap identities with every subset of `{t₁, …, t₄}` deleted, as
/// semigroup identities.
pub fn swap_semigroup_basis() -> Vec<Identity> {
    let mut out = Vec::new();
    for id in [swap_outer(), swap_cross()] {
        for mask in 0u8..16 {
            let gone: BTreeSet<usize> = (0..4).filter(|b| mask & (1 << b) != 0).map(|b| b + 3).collect();
            let mut d = id.delete(&gone);
            d.mode = Mode::Semigroup;
            out.push(d);
        }
    }
    out
}

/// Named identities understood by the command line and the harness.
pub fn named_identity(name: &str) -> Option<Identity> {
    Some(match name {
        "swap-outer" => swap_outer(),
        "swap-cross" => swap_cross(),
        "cube-transport" => cube_transport(),
        "zimin3-variant" => zimin3_variant(),
        "zimin4-candidate" => zimin4_candidate(),
        _ => return None,
    })
}

pub const IDENTITY_NAMES: [&str; 5] = ["swap-outer", "swap-cross", "cube-transport", "zimin3-variant", "zimin4-candidate"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapRule {
    /// `… xy · t₃ y t₄ x ≃ … yx · t₃ y t₄ x`.
    Outer,
    /// `… xy · t₃ x t₄ y ≃ … yx · t₃ x t₄ y`.
    Cross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

/// One application of a swap identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortStep {
    pub word: Word,
    pub rule: SwapRule,
    pub direction: Direction,
    /// Which of the four relative placements of the extreme occurrences.
    pub case: u8,
    /// Start of the rewritten factor in the source word.
    pub factor_start: usize,
    /// Values of `x, y, t₁, t₂, t₃, t₄`.
    pub x: usize,
    pub y: usize,
    pub t: [Word; 4],
}

/// Swaps the factor `x_j x_i` (`i < j`) at positions `pos, pos+1` of an
/// interior block.
pub fn sort_step(w: &[usize], pos: usize) -> Result<SortStep, WordError> {
    let bad = || WordError::NotInteriorFactor(pos);
    if pos + 1 >= w.len() {
        return Err(bad());
    }
    let (big, small) = (w[pos], w[pos + 1]);
    if small >= big {
        return Err(bad());
    }
    let extremes = extreme_positions(w);
    if extremes.contains(&pos) || extremes.contains(&(pos + 1)) {
        return Err(bad());
    }
    let first = |x| w.iter().position(|&y| y == x).unwrap();
    let last = |x| w.iter().rposition(|&y| y == x).unwrap();
    let (li, ri, lj, rj) = (first(small), last(small), first(big), last(big));
    let (case, rule, direction, x, y) = match (li < lj, ri < rj) {
        (true, true) => (1, SwapRule::Cross, Direction::RightToLeft, small, big),
        (true, false) => (2, SwapRule::Outer, Direction::RightToLeft, small, big),
        (false, true) => (3, SwapRule::Outer, Direction::LeftToRight, big, small),
        (false, false) => (4, SwapRule::Cross, Direction::LeftToRight, big, small),
    };
    let (start, mid1, end) = (first(x), first(y), pos + 2);
    let tail_first = if rule == SwapRule::Outer { last(y) } else { last(x) };
    let stop = ri.max(rj);
    let t = [
        w[start + 1..mid1].to_vec(),
        w[mid1 + 1..pos].to_vec(),
        w[end..tail_first].to_vec(),
        w[tail_first + 1..stop].to_vec(),
    ];
    let mut word = w.to_vec();
    word.swap(pos, pos + 1);
    Ok(SortStep { word, rule, direction, case, factor_start: start, x, y, t })
}

/// Sorts all interior blocks by repeated [`sort_step`]s; returns the result
/// and the number of steps.
pub fn sort_by_steps(w: &[usize]) -> (Word, usize) {
    let mut cur = w.to_vec();
    let mut steps = 0;
    loop {
        let extremes = extreme_positions(&cur);
        let next = (0..cur.len().saturating_sub(1)).find(|&p| {
            cur[p] > cur[p + 1] && !extremes.contains(&p) && !extremes.contains(&(p + 1))
        });
        match next {
            Some(p) => {
                cur = sort_step(&cur, p).expect("descent inside an interior block").word;
                steps += 1;
            }
            None => return (cur, steps),
        }
    }
}

/// Value of `w` under `subst`, stars applied per symbol.
pub fn evaluate<M: Monoid>(w: &[Sym], subst: &BTreeMap<usize, M::Elem>, m: &M) -> Result<M::Elem, WordError> {
    let mut acc = m.one();
    for s in w {
        let v = subst.get(&s.letter).ok_or(WordError::MissingLetter(s.letter))?;
        let v = if s.star { m.star(v).ok_or(WordError::NoInvolution)? } else { v.clone() };
        acc = m.mul(&acc, &v);
    }
    Ok(acc)
}

pub fn evaluate_plain<M: Monoid>(w: &[usize], subst: &BTreeMap<usize, M::Elem>, m: &M) -> Result<M::Elem, WordError> {
    evaluate(&to_iword(w), subst, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Every substitution from the full element set was tried.
    Exhausted,
    /// Decided by a structural criterion.
    Criterion,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<E> {
    Holds(Evidence),
    /// A substitution under which the two sides differ.
    Fails(Vec<(usize, E)>),
    Unknown { tried: usize },
}

impl<E> Verdict<E> {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds(_) => "Holds",
            Verdict::Fails(_) => "Fails",
            Verdict::Unknown { .. } => "Unknown",
        }
    }
}

/// Where substitution values come from.
pub enum Domain<'a, E> {
    /// All elements of a finite monoid; a clean run proves the identity.
    Full(&'a [E]),
    /// A sample; a clean run is inconclusive.
    Pool(&'a [E]),
}

/// Searches substitutions in lexicographic order over the domain, trying
/// at most `budget` of them.
pub fn check_identity<M: Monoid>(id: &Identity, m: &M, domain: Domain<'_, M::Elem>, budget: usize) -> Verdict<M::Elem> {
    let (pool, full) = match domain {
        Domain::Full(p) => (p, true),
        Domain::Pool(p) => (p, false),
    };
    let letters: Vec<usize> = id.letters().into_iter().collect();
    if pool.is_empty() {
        return Verdict::Unknown { tried: 0 };
    }
    let mut digits = vec![0usize; letters.len()];
    let mut tried = 0;
    loop {
        if tried == budget {
            return Verdict::Unknown { tried };
        }
        let subst: BTreeMap<usize, M::Elem> = letters.iter().zip(&digits).map(|(&x, &d)| (x, pool[d].clone())).collect();
        tried += 1;
        match (evaluate(&id.lhs, &subst, m), evaluate(&id.rhs, &subst, m)) {
            (Ok(a), Ok(b)) if a != b => return Verdict::Fails(subst.into_iter().collect()),
            (Ok(_), Ok(_)) => {}
            _ => return Verdict::Unknown { tried },
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return if full { Verdict::Holds(Evidence::Exhausted) } else { Verdict::Unknown { tried } };
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < pool.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Tries `budget` substitutions drawn from `sample`.
pub fn check_identity_sampled<M: Monoid>(
    id: &Identity,
    m: &M,
    mut sample: impl FnMut() -> M::Elem,
    budget: usize,
) -> Verdict<M::Elem> {
    let letters: Vec<usize> = id.letters().into_iter().collect();
    for _ in 0..budget {
        let subst: BTreeMap<usize, M::Elem> = letters.iter().map(|&x| (x, sample())).collect();
        match (evaluate(&id.lhs, &subst, m), evaluate(&id.rhs, &subst, m)) {
            (Ok(a), Ok(b)) if a != b => return Verdict::Fails(subst.into_iter().collect()),
            (Ok(_), Ok(_)) => {}
            _ => return Verdict::Unknown { tried: 0 },
        }
    }
    Verdict::Unknown { tried: budget }
}

/// Decides a plain identity with the section criteria.
pub fn check_by_criterion(id: &Identity, strong: bool) -> Option<bool> {
    let (u, v) = id.plain_sides()?;
    Some(if strong { holds_in_m(&u, &v) } else { holds_in_n(&u, &v) })
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.letters().into_iter().max().unwrap_or(0);
        let a = Alphabet::indexed(k);
        write!(f, "{} = {}", a.render(&self.lhs), a.render(&self.rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> (Word, Alphabet) {
        let (w, a) = parse_word(s).unwrap();
        (to_plain(&w).unwrap(), a)
    }

    #[test]
    fn zimin_words() {
        assert_eq!(zimin(1), vec![1]);
        assert_eq!(zimin(2), vec![1, 2, 1]);
        assert_eq!(zimin(3), vec![1, 2, 1, 3, 1, 2, 1]);
        assert_eq!(zimin(5).len(), 31);
        let f = factor2_counts(&zimin(3));
        assert_eq!(f, BTreeMap::from([((1, 2), 2), ((2, 1), 2), ((1, 3), 1), ((3, 1), 1)]));
        let (u, v) = zimin3_variant().plain_sides().unwrap();
        assert_eq!(factor2_counts(&u), factor2_counts(&v));
        assert_eq!((u[0], u[6]), (v[0], v[6]));
    }

    #[test]
    fn parsing() {
        let (w, a) = parse_word("x^3yxytz^4xyz").unwrap();
        assert_eq!(a.name(1), "t");
        assert_eq!(w.len(), 14);
        assert_eq!(a.render(&w), "x^3yxytz^4xyz");
        let (w, a) = parse_word("x10 x2 x1* x2^2").unwrap();
        assert_eq!(a.index_of("x1"), Some(1));
        assert_eq!(a.index_of("x10"), Some(3));
        assert_eq!(w[2], Sym::starred(1));
        assert_eq!(w.len(), 5);
        assert_eq!(parse_word("1").unwrap().0, vec![]);
        assert!(parse_word("xY").is_err());
        assert!(parse_word("x^").is_err());
        let (id, _) = parse_identity("xy = yx", Mode::Monoid).unwrap();
        assert_eq!(id.lhs, to_iword(&[1, 2]));
    }

    #[test]
    fn balance() {
        assert!(is_balanced(&[1, 2], &[2, 1]));
        assert!(!is_balanced(&[1], &[1, 1]));
        assert!(is_balanced_mod2(&[1, 1, 1, 2, 1], &[1, 2, 1, 1, 1]));
        assert!(is_balanced_mod2(&[1, 1, 1], &[1]));
        assert!(!is_balanced_mod2(&[1, 1], &[1]));
        assert!(!is_balanced_mod2(&[1, 1, 2], &[1, 1]));
    }

    #[test]
    fn sections() {
        assert_eq!(left_section(&[1, 2], 1), Vec::<usize>::new());
        let (w, a) = word("x^3yxytz^4xyz");
        let t = a.index_of("t").unwrap();
        let z = a.index_of("z").unwrap();
        assert_eq!(a.render_plain(&left_section(&w, t)), "x^3yxy");
        assert!(right_section(z, &w).is_empty());
        assert_eq!(left_section(&w, 99), w);
    }

    #[test]
    fn example_decomposition() {
        let (w, a) = word("x^3yxytz^4xyz");
        let rep = extreme_rep(&w).unwrap();
        assert_eq!(a.render_plain(&rep.e), "xytzxyz");
        let blocks: Vec<String> = rep.blocks.iter().map(|b| a.render_plain(b)).collect();
        assert_eq!(blocks, ["x^2", "xy", "1", "z^3", "1", "1"]);
        assert_eq!(rep.reassemble(), w);
        assert_eq!(normal_form(&w).unwrap(), w);
        assert_eq!(extreme_rep(&[1]).unwrap().blocks.len(), 0);
        assert_eq!(extreme_rep(&[1, 2, 1]).unwrap().blocks, vec![vec![], vec![]]);
        assert_eq!(extreme_rep(&[]), Err(WordError::EmptyWord));
    }

    #[test]
    fn monoid_criterion() {
        let (u, v) = swap_outer().plain_sides().unwrap();
        assert!(holds_in_m(&u, &v));
        let (u, v) = swap_cross().plain_sides().unwrap();
        assert!(holds_in_m(&u, &v));
        assert!(!holds_in_m(&[1, 2], &[2, 1]));
    }

    #[test]
    fn parity_criterion() {
        let (u, v) = cube_transport().plain_sides().unwrap();
        assert!(holds_in_n(&u, &v));
        assert!(!holds_in_m(&u, &v));
        assert!(!holds_in_n(&[1, 1, 1, 2, 1], &[1, 1, 2, 1, 1]));
        assert_eq!(canonical_form(&u).unwrap(), canonical_form(&v).unwrap());
    }

    #[test]
    fn canonical_forms_of_square_free_words() {
        for w in [vec![1, 2, 3, 1, 2], vec![2, 1, 3, 2, 1, 3], vec![1]] {
            assert_eq!(canonical_form(&w).unwrap(), normal_form(&w).unwrap());
        }
    }

    #[test]
    fn sort_step_cases() {
        // V0 xi V1 xj V2 xj xi V3 xi V4 xj V5 with xi = 1, xj = 2
        let w = vec![1, 2, 2, 1, 1, 2];
        let s = sort_step(&w, 2).unwrap();
        assert_eq!((s.case, s.rule, s.direction), (1, SwapRule::Cross, Direction::RightToLeft));
        assert_eq!(s.word, vec![1, 2, 1, 2, 1, 2]);
        let s = sort_step(&[1, 2, 2, 1, 2, 1], 2).unwrap();
        assert_eq!((s.case, s.rule), (2, SwapRule::Outer));
        let s = sort_step(&[2, 1, 2, 1, 1, 2], 2).unwrap();
        assert_eq!((s.case, s.rule, s.direction), (3, SwapRule::Outer, Direction::LeftToRight));
        let s = sort_step(&[2, 1, 2, 1, 2, 1], 2).unwrap();
        assert_eq!((s.case, s.rule), (4, SwapRule::Cross));
        assert_eq!(sort_step(&[1, 2, 1, 2], 0), Err(WordError::NotInteriorFactor(0)));
        assert_eq!(sort_step(&[1, 2, 1, 2, 1, 2], 1), Err(WordError::NotInteriorFactor(1)));
    }

    #[test]
    fn sort_step_matches_rule_instance() {
        let w = vec![3, 1, 4, 2, 5, 2, 1, 6, 1, 2, 3];
        let s = sort_step(&w, 5).unwrap();
        let id = match s.rule {
            SwapRule::Outer => swap_outer(),
            SwapRule::Cross => swap_cross(),
        };
        let subst = |side: &IWord| -> Word {
            side.iter()
                .flat_map(|sym| match sym.letter {
                    1 => vec![s.x],
                    2 => vec![s.y],
                    t => s.t[t - 3].clone(),
                })
                .collect()
        };
        let (from, to) = match s.direction {
            Direction::LeftToRight => (subst(&id.lhs), subst(&id.rhs)),
            Direction::RightToLeft => (subst(&id.rhs), subst(&id.lhs)),
        };
        assert_eq!(&w[s.factor_start..s.factor_start + from.len()], &from[..]);
        assert_eq!(&s.word[s.factor_start..s.factor_start + to.len()], &to[..]);
    }

    #[test]
    fn bubble_sorting_reaches_normal_form() {
        let w = vec![1, 3, 2, 3, 1, 2, 1, 3];
        assert_eq!(sort_by_steps(&w).0, normal_form(&w).unwrap());
    }

    #[test]
    fn semigroup_basis_size() {
        let basis = swap_semigroup_basis();
        assert_eq!(basis.len(), 32);
        for id in &basis {
            let (u, v) = id.plain_sides().unwrap();
            assert!(holds_in_m(&u, &v));
        }
    }

    #[test]
    fn evaluation() {
        use crate::auxmonoids::{A21Monoid, A21};
        let subst = BTreeMap::from([(1, A21::Pair(0, 1)), (2, A21::Pair(1, 0))]);
        assert_eq!(evaluate_plain(&[1, 2, 1], &subst, &A21Monoid).unwrap(), A21::Zero);
        assert_eq!(evaluate_plain(&[3], &subst, &A21Monoid), Err(WordError::MissingLetter(3)));
        let (id, _) = parse_identity("xy=yx", Mode::Monoid).unwrap();
        let all = A21::all();
        let v = check_identity(&id, &A21Monoid, Domain::Full(&all), usize::MAX);
        assert!(v.is_fail());
        let v = check_identity(&zimin3_variant(), &crate::auxmonoids::CircleMonoid, Domain::Pool(&[]), 10);
        assert_eq!(v, Verdict::Unknown { tried: 0 });
    }
}
