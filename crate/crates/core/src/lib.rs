//! Calculus of two-row set partitions and the structures built on them:
//! signed tensor representations, partition categories, reflection-group
//! word problems, and the sphere/cube presentations they parametrize.

pub mod error;
pub mod categories;
pub mod groups;
pub mod partition;
pub mod schur_weyl;
pub mod spheres;
pub mod tensor;

pub use error::{Error, Result};
pub use partition::{enumerate, BlockSequence, LegId, Partition, Side, Sign};
