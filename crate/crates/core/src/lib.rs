//! Exact refined enumeration of ordered labeled trees by the size of their
//! maximal decreasing subtree, with exhaustive generators that check every
//! count against brute force.

pub mod cli;
pub mod enumerate;
pub mod numeric;
pub mod tables;
pub mod tree;
pub mod verify;

pub use numeric::BigNat;
pub use tables::{CountTriangle, IntPolynomial, TriangleKind, TriangleSet};
pub use tree::{Label, MdResult, OrderedForest, OrderedTree, RootedUnorderedTree, TreeError};
