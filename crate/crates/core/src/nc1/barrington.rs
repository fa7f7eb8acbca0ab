use std::sync::OnceLock;

use super::circuit::{Circuit, GateKind, Wire};
use super::pbp::{
    inverse_instructions, standard_accept, PbpInstruction, PermutationBranchingProgram, WIDTH,
};
use crate::perm::{enumerate_group, GroupDescriptor, Permutation};

/// Fixed 5-cycles `(σ, τ)` whose commutator `γ = τ⁻¹σ⁻¹τσ` is a 5-cycle.
struct CommutatorPair {
    sigma: Permutation,
    tau: Permutation,
    gamma: Permutation,
}

fn commutator_pair() -> &'static CommutatorPair {
    static PAIR: OnceLock<CommutatorPair> = OnceLock::new();
    PAIR.get_or_init(|| {
        let sigma = standard_accept();
        let s5 = enumerate_group(&GroupDescriptor::Symmetric(WIDTH)).expect("S5 fits");
        s5.elements()
            .iter()
            .filter(|t| t.cycle_type() == [WIDTH])
            .find_map(|tau| {
                let gamma = tau
                    .inverse()
                    .compose_unchecked(&sigma.inverse())
                    .compose_unchecked(tau)
                    .compose_unchecked(&sigma);
                (gamma.cycle_type() == [WIDTH]).then(|| CommutatorPair {
                    sigma: sigma.clone(),
                    tau: tau.clone(),
                    gamma,
                })
            })
            .expect("S5 has 5-cycles with a 5-cycle commutator")
    })
}

/// Instructions that evaluate to `target` when `wire` is true and to the
/// identity otherwise. `target` must be a 5-cycle.
fn compile_wire(c: &Circuit, wire: Wire, target: &Permutation) -> Vec<PbpInstruction> {
    match wire {
        Wire::Input(i) => vec![PbpInstruction {
            var: i + 1,
            perm0: Permutation::identity(WIDTH),
            perm1: target.clone(),
        }],
        Wire::Gate(g) => {
            let gate = &c.gates()[g];
            match gate.kind {
                GateKind::Not => {
                    // target⁻¹-compute the operand, then apply target last:
                    // true ↦ target·target⁻¹ = e, false ↦ target
                    let mut prog = compile_wire(c, gate.operands[0], &target.inverse());
                    let last = prog.last_mut().expect("programs are nonempty");
                    last.perm0 = target.compose_unchecked(&last.perm0);
                    last.perm1 = target.compose_unchecked(&last.perm1);
                    prog
                }
                GateKind::And => {
                    let pair = commutator_pair();
                    let rho = pair.gamma.conjugator_to(target).expect("both are 5-cycles");
                    let sigma = rho.conjugate_unchecked(&pair.sigma);
                    let tau = rho.conjugate_unchecked(&pair.tau);
                    let first = compile_wire(c, gate.operands[0], &sigma);
                    let second = compile_wire(c, gate.operands[1], &tau);
                    let mut prog = Vec::with_capacity(2 * (first.len() + second.len()));
                    prog.extend(first.iter().cloned());
                    prog.extend(second.iter().cloned());
                    prog.extend(inverse_instructions(&first));
                    prog.extend(inverse_instructions(&second));
                    prog
                }
                GateKind::Or => unreachable!("OR gates are rewritten before compilation"),
            }
        }
    }
}

/// Compiles a circuit into a width-5 permutation branching program that
/// evaluates to `(1 2 3 4 5)` on accepting inputs and to the identity
/// otherwise.
///
/// OR gates are first rewritten with De Morgan's law. NOT keeps the length
/// and AND quadruples at most, so the result has at most
/// `4^depth(c.de_morgan())` instructions. Shared subcircuits are compiled
/// once per use.
pub fn compile_barrington(c: &Circuit) -> PermutationBranchingProgram {
    let rewritten = c.de_morgan();
    let accept = standard_accept();
    let instructions = compile_wire(&rewritten, rewritten.output(), &accept);
    PermutationBranchingProgram::new(instructions, accept, c.num_inputs())
        .expect("standard accept is a 5-cycle")
}

/// Outcome of checking a program against its circuit on every input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Pass,
    /// First input (bit `i` = input `i`) where the program disagrees.
    Fail(Vec<bool>),
}

/// Exhaustive truth-table check: program yields `accept` exactly where the
/// circuit is true and the identity elsewhere.
pub fn check_equivalence(c: &Circuit, p: &PermutationBranchingProgram) -> Equivalence {
    let n = c.num_inputs();
    assert!(n < 32, "exhaustive check over {n} inputs");
    let identity = Permutation::identity(WIDTH);
    for v in 0..1u64 << n {
        let bits: Vec<bool> = (0..n).map(|i| v >> i & 1 == 1).collect();
        let expected = if c.eval(&bits) { p.accept() } else { &identity };
        match p.eval(&bits) {
            Ok(got) if &got == expected => {}
            _ => return Equivalence::Fail(bits),
        }
    }
    Equivalence::Pass
}
