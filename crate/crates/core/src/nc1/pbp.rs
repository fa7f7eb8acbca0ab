use std::fmt::Write as _;

use super::{EvalError, PbpError};
use crate::perm::Permutation;

/// Width of every program: permutations act on five points.
pub const WIDTH: usize = 5;

/// Reads input `var` (1-based) and contributes `perm0` or `perm1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbpInstruction {
    pub var: usize,
    pub perm0: Permutation,
    pub perm1: Permutation,
}

impl PbpInstruction {
    pub fn new(var: usize, perm0: Permutation, perm1: Permutation) -> Result<Self, PbpError> {
        if var == 0 {
            return Err(PbpError::ZeroVariable);
        }
        for p in [&perm0, &perm1] {
            if p.degree() != WIDTH {
                return Err(PbpError::WrongWidth(p.degree()));
            }
        }
        Ok(PbpInstruction { var, perm0, perm1 })
    }

    pub fn select(&self, bit: bool) -> &Permutation {
        if bit {
            &self.perm1
        } else {
            &self.perm0
        }
    }
}

/// A width-5 permutation branching program.
///
/// Evaluation is the ordered group product with the first instruction
/// applied first: on input `x` the program yields
/// `p_L ∘ … ∘ p_2 ∘ p_1`, where `p_i` is instruction `i`'s choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationBranchingProgram {
    instructions: Vec<PbpInstruction>,
    accept: Permutation,
    num_vars: usize,
}

impl PermutationBranchingProgram {
    /// `num_vars` is raised to the largest variable referenced.
    pub fn new(
        instructions: Vec<PbpInstruction>,
        accept: Permutation,
        num_vars: usize,
    ) -> Result<Self, PbpError> {
        if accept.degree() != WIDTH || accept.cycle_type() != [WIDTH] {
            return Err(PbpError::AcceptNotFiveCycle(accept.to_string()));
        }
        let max_var = instructions.iter().map(|i| i.var).max().unwrap_or(0);
        Ok(PermutationBranchingProgram {
            instructions,
            accept,
            num_vars: num_vars.max(max_var),
        })
    }

    pub fn instructions(&self) -> &[PbpInstruction] {
        &self.instructions
    }

    pub fn accept(&self) -> &Permutation {
        &self.accept
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Length of the message bit strings this program reads.
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// The permutation chosen by every instruction, in application order.
    pub fn choices<'a>(
        &'a self,
        bits: &'a [bool],
    ) -> Result<impl Iterator<Item = &'a Permutation> + 'a, EvalError> {
        if let Some(i) = self.instructions.iter().find(|i| i.var > bits.len()) {
            return Err(EvalError::MissingInput {
                var: i.var,
                provided: bits.len(),
            });
        }
        Ok(self
            .instructions
            .iter()
            .map(move |i| i.select(bits[i.var - 1])))
    }

    pub fn eval(&self, bits: &[bool]) -> Result<Permutation, EvalError> {
        Ok(self
            .choices(bits)?
            .fold(Permutation::identity(WIDTH), |acc, p| {
                p.compose_unchecked(&acc)
            }))
    }

    /// Runs `self` then `other`; the accept cycle is taken from `self`.
    pub fn concat(&self, other: &PermutationBranchingProgram) -> PermutationBranchingProgram {
        let mut instructions = self.instructions.clone();
        instructions.extend(other.instructions.iter().cloned());
        PermutationBranchingProgram {
            instructions,
            accept: self.accept.clone(),
            num_vars: self.num_vars.max(other.num_vars),
        }
    }

    /// Text form: one `x<k> : <perm0> | <perm1>` line per instruction, then
    /// `accept: <cycle>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in &self.instructions {
            writeln!(out, "x{} : {} | {}", i.var, i.perm0, i.perm1).unwrap();
        }
        writeln!(out, "accept: {}", self.accept).unwrap();
        out
    }

    pub fn parse(text: &str) -> Result<Self, PbpError> {
        let mut instructions = Vec::new();
        let mut accept = None;
        for (idx, full) in text.lines().enumerate() {
            let line = idx + 1;
            let content = full.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| PbpError::Parse { line, msg };
            if accept.is_some() {
                return Err(err("content after the `accept:` footer".into()));
            }
            if let Some(rest) = content.strip_prefix("accept:") {
                let p = Permutation::parse(rest, Some(WIDTH)).map_err(|e| err(e.to_string()))?;
                accept = Some(p);
                continue;
            }
            let (head, body) = content
                .split_once(':')
                .ok_or_else(|| err("expected `x<k> : <perm0> | <perm1>`".into()))?;
            let var = head
                .trim()
                .strip_prefix('x')
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| err(format!("bad variable `{}`", head.trim())))?;
            let (p0, p1) = body
                .split_once('|')
                .ok_or_else(|| err("expected `|` between the two permutations".into()))?;
            let perm0 = Permutation::parse(p0, Some(WIDTH)).map_err(|e| err(e.to_string()))?;
            let perm1 = Permutation::parse(p1, Some(WIDTH)).map_err(|e| err(e.to_string()))?;
            instructions
                .push(PbpInstruction::new(var, perm0, perm1).map_err(|e| err(e.to_string()))?);
        }
        let accept = accept.ok_or(PbpError::Parse {
            line: text.lines().count().max(1),
            msg: "missing `accept:` footer".into(),
        })?;
        PermutationBranchingProgram::new(instructions, accept, 0)
    }
}

/// Program whose evaluation is the inverse of `p`'s: instructions reversed,
/// each permutation inverted.
pub(crate) fn inverse_instructions(p: &[PbpInstruction]) -> Vec<PbpInstruction> {
    p.iter()
        .rev()
        .map(|i| PbpInstruction {
            var: i.var,
            perm0: i.perm0.inverse(),
            perm1: i.perm1.inverse(),
        })
        .collect()
}

/// The top-level accept cycle `(1 2 3 4 5)`.
pub fn standard_accept() -> Permutation {
    Permutation::cyclic_shift(WIDTH, 1)
}
