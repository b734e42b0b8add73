//! Diagram categories built on set partitions (plain, scalar-deformed,
//! genus-labelled and regular), affine Temperley-Lieb diagrams and their
//! annular quotients, the small auxiliary monoids that model their fibres,
//! and a decision engine for monoid identities.

pub mod algebra;
pub mod annular;
pub mod auxmonoids;
pub mod cobordisms;
pub mod identities;
pub mod partitions;
pub mod union_find;

pub use algebra::Monoid;
pub use partitions::{compose, Partition, Side, Vertex};
