//! Seeded random generators for the element families under test.

use std::collections::BTreeMap;

use diagram_core::annular::{enumerate_affine, AffineDiagram};
use diagram_core::cobordisms::{Cobordism, DeformedPartition, LabeledPartition, Spectrum};
use diagram_core::partitions::Partition;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random `[m] ⇝ [n]` partition. Labels are drawn from `m + n` values, so
/// every partition has positive probability.
pub fn partition<R: Rng>(rng: &mut R, m: usize, n: usize) -> Partition {
    let total = m + n;
    let labels: Vec<usize> = (0..total).map(|_| rng.gen_range(0..total.max(1))).collect();
    Partition::from_labels(m, n, &labels)
}

pub fn labels<R: Rng>(rng: &mut R, count: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..count).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// At most `support` non-zero entries, genera and counts in the given ranges.
pub fn spectrum<R: Rng>(rng: &mut R, support: usize, genus: (i64, i64), count: (i64, i64)) -> Spectrum {
    let k = rng.gen_range(0..=support);
    Spectrum::from_pairs((0..k).map(|_| (rng.gen_range(genus.0..=genus.1), rng.gen_range(count.0..=count.1))))
}

/// Labels and spectra in `[-3, 3]` when regular, `[0, 3]` otherwise.
pub fn cobordism_over<R: Rng>(rng: &mut R, base: Partition, regular: bool) -> Cobordism {
    let lo = if regular { -3 } else { 0 };
    let genus = labels(rng, base.num_blocks(), lo, 3);
    let closed = spectrum(rng, 3, (lo, 3), (lo.max(-2), 2));
    Cobordism::new(base, genus, closed, regular).expect("generated labels are in range")
}

pub fn cobordism<R: Rng>(rng: &mut R, m: usize, n: usize, regular: bool) -> Cobordism {
    let base = partition(rng, m, n);
    cobordism_over(rng, base, regular)
}

pub fn deformed<R: Rng>(rng: &mut R, m: usize, n: usize, regular: bool) -> DeformedPartition {
    let lo = if regular { -3 } else { 0 };
    DeformedPartition::new(partition(rng, m, n), rng.gen_range(lo..=3), regular).unwrap()
}

pub fn labeled<R: Rng>(rng: &mut R, m: usize, n: usize, regular: bool) -> LabeledPartition {
    let lo = if regular { -3 } else { 0 };
    let base = partition(rng, m, n);
    let genus = labels(rng, base.num_blocks(), lo, 3);
    LabeledPartition::new(base, genus, regular).unwrap()
}

pub fn shape<R: Rng>(rng: &mut R, max: usize) -> usize {
    rng.gen_range(0..=max)
}

/// All affine diagrams per shape with offsets bounded by `w`, drawn from by
/// index.
pub struct AffinePool {
    by_shape: BTreeMap<(usize, usize), Vec<AffineDiagram>>,
}

impl AffinePool {
    /// Shapes `[m] ⇝ [n]` with `1 ≤ m, n ≤ max` of equal parity.
    pub fn new(max: usize, w: i64) -> Self {
        let mut by_shape = BTreeMap::new();
        for m in 0..=max {
            for n in 0..=max {
                if (m + n) % 2 == 0 && m + n > 0 {
                    by_shape.insert((m, n), enumerate_affine(m, n, w));
                }
            }
        }
        AffinePool { by_shape }
    }

    pub fn get(&self, m: usize, n: usize) -> &[AffineDiagram] {
        self.by_shape.get(&(m, n)).map_or(&[], Vec::as_slice)
    }

    pub fn shapes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_shape.keys().copied()
    }

    pub fn pick<R: Rng>(&self, rng: &mut R, m: usize, n: usize) -> AffineDiagram {
        self.get(m, n).choose(rng).expect("non-empty pool").clone()
    }

    /// A random diagram of a random shape.
    pub fn any<R: Rng>(&self, rng: &mut R) -> AffineDiagram {
        let shapes: Vec<_> = self.shapes().collect();
        let &(m, n) = shapes.choose(rng).unwrap();
        self.pick(rng, m, n)
    }

    /// A random chain `[a] ⇝ [b] ⇝ [c] ⇝ [d]` of square-compatible shapes.
    pub fn chain<R: Rng>(&self, rng: &mut R, max: usize, len: usize) -> Vec<AffineDiagram> {
        let parity = rng.gen_range(0..2);
        let sizes: Vec<usize> = (0..=len)
            .map(|_| loop {
                let s = rng.gen_range(0..=max);
                if s % 2 == parity && s > 0 {
                    break s;
                }
            })
            .collect();
        sizes.windows(2).map(|w| self.pick(rng, w[0], w[1])).collect()
    }
}
