//! Query algorithms: Grover search, binary search over an ordered list, and
//! the reduction that answers ordered-list comparisons with a quantum
//! leftmost-difference search on the bits of the hidden position.

mod cleanup;
mod comparator;
mod grover;
mod ordered;
mod reduction;

pub use cleanup::*;
pub use comparator::*;
pub use grover::*;
pub use ordered::*;
pub use reduction::*;
