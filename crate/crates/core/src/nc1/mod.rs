//! Boolean circuits, their compilation to width-5 permutation branching
//! programs, and program-driven hashing.

mod barrington;
mod circuit;
mod pbp;
mod stream;

pub use barrington::{check_equivalence, compile_barrington, Equivalence};
pub use circuit::{circuit_depth, parse_circuit, Circuit, Gate, GateKind, Wire};
pub use pbp::{standard_accept, PbpInstruction, PermutationBranchingProgram, WIDTH};
pub use stream::{pbp_hash_adapter, stream_hash};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: undefined wire `{name}`")]
    UndefinedWire { line: usize, name: String },
    #[error("line {line}: cycle through wire `{wire}`")]
    CycleDetected { line: usize, wire: String },
    #[error("line {line}: gate `{gate}` takes {expected} operand(s), found {found}")]
    FanInViolation {
        line: usize,
        gate: String,
        expected: usize,
        found: usize,
    },
}

impl CircuitError {
    pub fn line(&self) -> usize {
        match self {
            CircuitError::Syntax { line, .. }
            | CircuitError::UndefinedWire { line, .. }
            | CircuitError::CycleDetected { line, .. }
            | CircuitError::FanInViolation { line, .. } => *line,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PbpError {
    #[error("variables are numbered from 1")]
    ZeroVariable,
    #[error("permutation of degree {0}, programs have width 5")]
    WrongWidth(usize),
    #[error("accept permutation {0} is not a 5-cycle")]
    AcceptNotFiveCycle(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("instruction reads x{var} but only {provided} input bits were given")]
    MissingInput { var: usize, provided: usize },
}
