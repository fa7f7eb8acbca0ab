use crate::hash::{HashError, HashSpec, Message, QuantumHashValue};
use crate::nc1::PermutationBranchingProgram;
use crate::perm::Permutation;
use crate::state::{block_mut, StateVector};

/// Wraps a program as the classical hash `h(x) = eval_pbp(p, x) ∈ S₅` over
/// `{0,1}^num_vars`.
pub fn pbp_hash_adapter(p: PermutationBranchingProgram) -> crate::hash::ClassicalHash {
    crate::hash::ClassicalHash::pbp(p)
}

/// Builds the hash state one input symbol at a time: starting from
/// `(1/√t) Σⱼ |j⟩⊗ψ₀`, each instruction's chosen permutation `p` is applied
/// as `f(kⱼ{p})` inside every register block `j`.
pub fn stream_hash(spec: &HashSpec, bits: &[bool]) -> Result<QuantumHashValue, HashError> {
    let program = spec.h().program().ok_or_else(|| {
        HashError::MessageOutOfSpace("spec does not hash through a program".into())
    })?;
    let msg = Message::Bits(bits.to_vec());
    if !spec.h().admits(&msg) {
        return Err(HashError::MessageOutOfSpace(msg.to_string()));
    }
    let (t, n) = (spec.t(), spec.n());
    let scale = 1.0 / (t as f64).sqrt();
    let mut state = StateVector::zeros(t * n);
    for j in 0..t {
        for (dst, src) in block_mut(&mut state, j, n)
            .iter_mut()
            .zip(spec.psi0().state().amplitudes())
        {
            *dst = src * scale;
        }
    }
    let conjugators: Vec<&Permutation> = spec
        .family()
        .members()
        .iter()
        .map(|k| k.conjugator())
        .collect();
    let mut scratch = vec![Default::default(); n];
    for p in program
        .choices(bits)
        .map_err(|_| HashError::MessageOutOfSpace(msg.to_string()))?
    {
        for (j, s) in conjugators.iter().enumerate() {
            let image = s.conjugate_unchecked(p);
            let block = block_mut(&mut state, j, n);
            scratch.copy_from_slice(block);
            for (i, &pi) in image.images0().iter().enumerate() {
                block[pi] = scratch[i];
            }
        }
    }
    Ok(QuantumHashValue { state, t, n })
}
