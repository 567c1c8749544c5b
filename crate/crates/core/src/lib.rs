//! Colored Temperley-Lieb diagrams: the diagram calculus, the seven free
//! orthogonal and unitary diagram categories, their complexification,
//! tensor realizations with exact Gram ranks, and free-product word
//! arithmetic.

pub mod category;
pub mod color;
pub mod diagram;
pub mod doubling;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod linear;
pub mod partition;
pub mod word;

pub use category::{CategoryId, CategorySpec, CellFamily, GeneratorSet, Kind};
pub use diagram::Diagram;
pub use error::{Error, Result};
pub use partition::LegPartition;
pub use word::{delta, gamma, Letter, Word};
