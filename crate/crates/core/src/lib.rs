//! Simulation and verification toolkit for quantum hash functions built on
//! finite permutation groups.
//!
//! * [`perm`]: permutations, enumerated groups, inner automorphisms.
//! * [`state`]: state vectors and the coordinate-permutation representation.
//! * [`bias`]: bias measurements, good-set sampling, construction audit.
//! * [`hash`]: hash states, overlaps, collision scans, subgroup restriction.
//! * [`nc1`]: circuits, width-5 branching programs, program-driven hashing.
//! * [`cli`]: the `grouphash` command-line driver.

pub mod bias;
pub mod cli;
pub mod hash;
pub mod nc1;
pub mod perm;
pub mod state;
