//! Exact permutation arithmetic, small permutation groups, and inner
//! automorphisms.

mod automorphism;
mod group;
mod permutation;

pub use automorphism::{apply_automorphism, AutomorphismFamily, InnerAutomorphism};
pub use group::{
    enumerate_group, enumerate_group_with_cap, FiniteGroupTable, GroupDescriptor, DEFAULT_GROUP_CAP,
};
pub use permutation::{conjugate, Permutation};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("one-line sequence {0:?} is not a bijection")]
    NotBijection(Vec<usize>),
    #[error("empty permutation or degree zero")]
    Empty,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} out of range for family of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("group exceeds enumeration cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("automorphism family is empty")]
    EmptyFamily,
    #[error("element set is not a group: {0}")]
    NotClosed(String),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}
