//! Hash states `|Ψ(w)⟩ = (1/√t) Σⱼ |j⟩ ⊗ f(kⱼ{h(w)})|ψ₀⟩`, pairwise overlap
//! scans, and restriction to normal subgroups.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::nc1::{EvalError, PermutationBranchingProgram};
use crate::perm::{
    enumerate_group, AutomorphismFamily, FiniteGroupTable, GroupDescriptor, PermError, Permutation,
};
use crate::state::{
    act, block_mut, build_psi0, inner, Psi0Kind, StartState, StateError, StateVector,
};

/// Maximum number of message pairs a collision scan will visit.
pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

/// Largest message space `message_space` will enumerate.
pub const MESSAGE_SPACE_CAP: usize = 1 << 20;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum HashError {
    #[error("message {0} is outside the hash's message space")]
    MessageOutOfSpace(String),
    #[error("hash value {0} is not an element of the group")]
    ImageOutsideGroup(String),
    #[error("degree mismatch: {what} has degree {found}, expected {expected}")]
    DegreeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("automorphism family is empty")]
    EmptyFamily,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("subgroup is not contained in the group")]
    NotSubgroup,
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("family does not map the subgroup into itself: {0}")]
    NotClosedUnderFamily(String),
    #[error("{pairs} message pairs exceed the budget of {budget}")]
    PairBudgetExceeded { pairs: usize, budget: usize },
    #[error("message space of {0} messages is too large to enumerate")]
    MessageSpaceTooLarge(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// A classical message: a small integer or a bit string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Message {
    Index(u64),
    Bits(Vec<bool>),
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Message::Index(i) => write!(f, "{i}"),
            Message::Bits(bits) => {
                if bits.is_empty() {
                    return write!(f, "-");
                }
                for &b in bits {
                    f.write_str(if b { "1" } else { "0" })?;
                }
                Ok(())
            }
        }
    }
}

impl Message {
    /// The `len`-bit message whose bit `i` (variable `x_{i+1}`) is bit `i` of `value`.
    pub fn from_bits_of(value: u64, len: usize) -> Message {
        Message::Bits((0..len).map(|i| value >> i & 1 == 1).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum HashKind {
    /// `h(i) = elements[i]`.
    Indexed {
        label: String,
        elements: Arc<Vec<Permutation>>,
    },
    /// `h(w) = shift(p, w mod p)`.
    ModP(usize),
    /// `h(x) = eval_pbp(program, x)`.
    Pbp(Arc<PermutationBranchingProgram>),
}

/// The classical hash `h` mapping messages into the group.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalHash {
    kind: HashKind,
    restriction: Option<Arc<BTreeSet<Message>>>,
}

impl ClassicalHash {
    /// Message `i` maps to the `i`-th element of `group`.
    pub fn identity_index(group: &FiniteGroupTable) -> Self {
        ClassicalHash {
            kind: HashKind::Indexed {
                label: format!("index:{}", group.name()),
                elements: Arc::new(group.elements().to_vec()),
            },
            restriction: None,
        }
    }

    pub fn mod_p(p: usize) -> Self {
        ClassicalHash {
            kind: HashKind::ModP(p),
            restriction: None,
        }
    }

    pub fn pbp(program: PermutationBranchingProgram) -> Self {
        ClassicalHash {
            kind: HashKind::Pbp(Arc::new(program)),
            restriction: None,
        }
    }

    pub fn program(&self) -> Option<&PermutationBranchingProgram> {
        match &self.kind {
            HashKind::Pbp(p) => Some(p),
            _ => None,
        }
    }

    /// Symbols per message: bits for a program hash, one integer otherwise.
    pub fn message_len(&self) -> usize {
        match &self.kind {
            HashKind::Pbp(p) => p.num_vars(),
            _ => 1,
        }
    }

    /// Degree of the permutations `h` produces, when fixed by `h` itself.
    fn output_degree(&self) -> Option<usize> {
        match &self.kind {
            HashKind::Indexed { elements, .. } => elements.first().map(Permutation::degree),
            HashKind::ModP(p) => Some(*p),
            HashKind::Pbp(_) => Some(5),
        }
    }

    pub fn is_restricted(&self) -> bool {
        self.restriction.is_some()
    }

    pub fn evaluate(&self, msg: &Message) -> Result<Permutation, HashError> {
        if let Some(allowed) = &self.restriction {
            if !allowed.contains(msg) {
                return Err(HashError::MessageOutOfSpace(msg.to_string()));
            }
        }
        let out_of_space = || HashError::MessageOutOfSpace(msg.to_string());
        match (&self.kind, msg) {
            (HashKind::Indexed { elements, .. }, Message::Index(i)) => usize::try_from(*i)
                .ok()
                .and_then(|i| elements.get(i))
                .cloned()
                .ok_or_else(out_of_space),
            (HashKind::ModP(p), Message::Index(w)) => {
                Ok(Permutation::cyclic_shift(*p, (*w % *p as u64) as usize))
            }
            (HashKind::Pbp(prog), Message::Bits(bits)) => {
                if bits.len() != prog.num_vars() {
                    return Err(out_of_space());
                }
                prog.eval(bits)
                    .map_err(|EvalError::MissingInput { .. }| out_of_space())
            }
            _ => Err(out_of_space()),
        }
    }

    /// True when `msg` lies in the declared message space.
    pub fn admits(&self, msg: &Message) -> bool {
        if let Some(allowed) = &self.restriction {
            return allowed.contains(msg);
        }
        match (&self.kind, msg) {
            (HashKind::Indexed { elements, .. }, Message::Index(i)) => {
                (*i as usize) < elements.len()
            }
            (HashKind::ModP(_), Message::Index(_)) => true,
            (HashKind::Pbp(prog), Message::Bits(bits)) => bits.len() == prog.num_vars(),
            _ => false,
        }
    }

    /// The declared message space, in sorted order.
    pub fn message_space(&self) -> Result<Vec<Message>, HashError> {
        if let Some(allowed) = &self.restriction {
            return Ok(allowed.iter().cloned().collect());
        }
        match &self.kind {
            HashKind::Indexed { elements, .. } => {
                Ok((0..elements.len() as u64).map(Message::Index).collect())
            }
            HashKind::ModP(p) => Ok((0..*p as u64).map(Message::Index).collect()),
            HashKind::Pbp(prog) => {
                let n = prog.num_vars();
                if n >= 63 || (1usize << n) > MESSAGE_SPACE_CAP {
                    return Err(HashError::MessageSpaceTooLarge(n));
                }
                let mut msgs: Vec<Message> = (0..1u64 << n)
                    .map(|v| Message::from_bits_of(v, n))
                    .collect();
                msgs.sort();
                Ok(msgs)
            }
        }
    }

    fn restricted_to(&self, allowed: BTreeSet<Message>) -> ClassicalHash {
        ClassicalHash {
            kind: self.kind.clone(),
            restriction: Some(Arc::new(allowed)),
        }
    }
}

impl fmt::Display for ClassicalHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            HashKind::Indexed { label, .. } => write!(f, "{label}")?,
            HashKind::ModP(p) => write!(f, "mod:{p}")?,
            HashKind::Pbp(prog) => write!(f, "pbp:{}x{}", prog.len(), prog.num_vars())?,
        }
        if let Some(r) = &self.restriction {
            write!(f, "|{}", r.len())?;
        }
        Ok(())
    }
}

/// Validated ingredients of the hash: group, `t` automorphisms, ψ₀, and `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct HashSpec {
    group: FiniteGroupTable,
    family: AutomorphismFamily,
    psi0: StartState,
    h: ClassicalHash,
}

impl HashSpec {
    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn family(&self) -> &AutomorphismFamily {
        &self.family
    }

    pub fn psi0(&self) -> &StartState {
        &self.psi0
    }

    pub fn h(&self) -> &ClassicalHash {
        &self.h
    }

    /// Number of registers.
    pub fn t(&self) -> usize {
        self.family.len()
    }

    /// Degree of the permutation representation.
    pub fn n(&self) -> usize {
        self.group.degree()
    }

    pub fn dim(&self) -> usize {
        self.t() * self.n()
    }

    /// `ceil(log₂(t·n))`.
    pub fn qubits(&self) -> u32 {
        let dim = self.dim();
        if dim <= 1 {
            0
        } else {
            usize::BITS - (dim - 1).leading_zeros()
        }
    }

    pub fn label(&self) -> String {
        format!(
            "group={} family={} psi0={} h={}",
            self.group.name(),
            self.family.label(),
            self.psi0.kind(),
            self.h
        )
    }

    pub fn message_space(&self) -> Result<Vec<Message>, HashError> {
        self.h.message_space()
    }

    /// `h(w)`, checked to lie in the group.
    pub fn classical(&self, w: &Message) -> Result<Permutation, HashError> {
        let g = self.h.evaluate(w)?;
        if !self.group.contains(&g) {
            return Err(HashError::ImageOutsideGroup(g.to_string()));
        }
        Ok(g)
    }
}

pub fn build_hash_spec(
    group: FiniteGroupTable,
    family: AutomorphismFamily,
    psi0: StartState,
    h: ClassicalHash,
) -> Result<HashSpec, HashError> {
    if family.is_empty() {
        return Err(HashError::EmptyFamily);
    }
    let n = group.degree();
    let mismatch = |what, found| HashError::DegreeMismatch {
        what,
        expected: n,
        found,
    };
    if family.degree() != n {
        return Err(mismatch("family", family.degree()));
    }
    if psi0.dim() != n {
        return Err(mismatch("psi0", psi0.dim()));
    }
    if let Some(d) = h.output_degree() {
        if d != n {
            return Err(mismatch("hash output", d));
        }
    }
    Ok(HashSpec {
        group,
        family,
        psi0,
        h,
    })
}

/// The hash state together with its register layout.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumHashValue {
    pub state: StateVector,
    pub t: usize,
    pub n: usize,
}

impl QuantumHashValue {
    pub fn block(&self, j: usize) -> &[Complex64] {
        &self.state.amplitudes()[j * self.n..(j + 1) * self.n]
    }
}

/// State for group element `g`: block `j` holds `f(kⱼ{g})ψ₀/√t`.
pub(crate) fn hash_element(spec: &HashSpec, g: &Permutation) -> QuantumHashValue {
    let (t, n) = (spec.t(), spec.n());
    let scale = 1.0 / (t as f64).sqrt();
    let psi = spec.psi0.state().amplitudes();
    let mut state = StateVector::zeros(t * n);
    for (j, k) in spec.family.members().iter().enumerate() {
        let image = k.apply(g).expect("degrees validated");
        let block = block_mut(&mut state, j, n);
        for (i, &pi) in image.images0().iter().enumerate() {
            block[pi] = psi[i] * scale;
        }
    }
    QuantumHashValue { state, t, n }
}

pub fn hash(spec: &HashSpec, w: &Message) -> Result<QuantumHashValue, HashError> {
    let g = spec.classical(w)?;
    Ok(hash_element(spec, &g))
}

/// `|⟨Ψ(w)|Ψ(w′)⟩|`.
pub fn overlap(spec: &HashSpec, w: &Message, w2: &Message) -> Result<f64, HashError> {
    let a = hash(spec, w)?;
    let b = hash(spec, w2)?;
    Ok(inner(&a.state, &b.state)?.norm().min(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollisionReport {
    pub spec: String,
    pub messages: usize,
    /// Max overlap over pairs with distinct classical hash values; 0 when none.
    pub max_overlap: f64,
    pub argmax: Option<(Message, Message)>,
    /// Pairs with `h(w) = h(w′)`, excluded from `max_overlap`.
    pub classical_collisions: Vec<(Message, Message)>,
}

impl CollisionReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "spec={}", self.spec).unwrap();
        writeln!(out, "messages={}", self.messages).unwrap();
        writeln!(out, "max_overlap={:.12}", self.max_overlap).unwrap();
        match &self.argmax {
            Some((a, b)) => writeln!(out, "argmax={a},{b}").unwrap(),
            None => writeln!(out, "argmax=none").unwrap(),
        }
        writeln!(
            out,
            "classical_collisions={}",
            self.classical_collisions.len()
        )
        .unwrap();
        for (a, b) in &self.classical_collisions {
            writeln!(out, "collision w={a} w'={b}").unwrap();
        }
        out
    }
}

pub fn collision_report(
    spec: &HashSpec,
    messages: &[Message],
) -> Result<CollisionReport, HashError> {
    collision_report_with_budget(spec, messages, DEFAULT_PAIR_BUDGET)
}

/// Exhaustive pairwise overlap scan over `messages`.
pub fn collision_report_with_budget(
    spec: &HashSpec,
    messages: &[Message],
    budget: usize,
) -> Result<CollisionReport, HashError> {
    let m = messages.len();
    let pairs = m.saturating_mul(m.saturating_sub(1)) / 2;
    if pairs > budget {
        return Err(HashError::PairBudgetExceeded { pairs, budget });
    }
    let values: Vec<(Permutation, QuantumHashValue)> = messages
        .par_iter()
        .map(|w| {
            let g = spec.classical(w)?;
            let v = hash_element(spec, &g);
            Ok((g, v))
        })
        .collect::<Result<_, HashError>>()?;

    // per row: (best overlap, column, classical collision columns)
    let rows: Vec<(f64, Option<usize>, Vec<usize>)> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut best = (0.0, None);
            let mut collisions = Vec::new();
            for j in i + 1..m {
                if values[i].0 == values[j].0 {
                    collisions.push(j);
                    continue;
                }
                let o = inner(&values[i].1.state, &values[j].1.state)
                    .expect("same spec")
                    .norm()
                    .min(1.0);
                if best.1.is_none() || o > best.0 {
                    best = (o, Some(j));
                }
            }
            (best.0, best.1, collisions)
        })
        .collect();

    let mut max_overlap = 0.0;
    let mut argmax = None;
    let mut classical_collisions = Vec::new();
    for (i, (o, j, collisions)) in rows.into_iter().enumerate() {
        if let Some(j) = j {
            if argmax.is_none() || o > max_overlap {
                max_overlap = o;
                argmax = Some((messages[i].clone(), messages[j].clone()));
            }
        }
        classical_collisions.extend(
            collisions
                .into_iter()
                .map(|j| (messages[i].clone(), messages[j].clone())),
        );
    }
    Ok(CollisionReport {
        spec: spec.label(),
        messages: m,
        max_overlap,
        argmax,
        classical_collisions,
    })
}

/// Restricts the hash to a normal subgroup `G′`: the new message space is
/// `{w : h(w) ∈ G′}`.
///
/// Checks run in the order containment, family closure, normality.
pub fn restrict_to_subgroup(
    spec: &HashSpec,
    subgroup: &FiniteGroupTable,
) -> Result<HashSpec, HashError> {
    if !subgroup.is_subgroup_of(&spec.group) {
        return Err(HashError::NotSubgroup);
    }
    if subgroup.order() == spec.group.order() {
        return Ok(spec.clone());
    }
    for (j, k) in spec.family.members().iter().enumerate() {
        for x in subgroup.elements() {
            let y = k.apply(x)?;
            if !subgroup.contains(&y) {
                return Err(HashError::NotClosedUnderFamily(format!(
                    "k{j} maps {x} to {y}"
                )));
            }
        }
    }
    for g in spec.group.elements() {
        for x in subgroup.elements() {
            let y = g.conjugate(x)?;
            if !subgroup.contains(&y) {
                return Err(HashError::NotNormal(format!("{g} conjugates {x} to {y}")));
            }
        }
    }
    let mut allowed = BTreeSet::new();
    for w in spec.message_space()? {
        if let Ok(g) = spec.h.evaluate(&w) {
            if subgroup.contains(&g) {
                allowed.insert(w);
            }
        }
    }
    Ok(HashSpec {
        group: subgroup.clone(),
        family: spec.family.clone(),
        psi0: spec.psi0.clone(),
        h: spec.h.restricted_to(allowed),
    })
}

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// `Z_p` as cyclic shifts in `S_p`, conjugated by the multiplication maps,
/// with the Fourier start state and `h(w) = w mod p`.
pub fn abelian_baseline(p: usize) -> Result<HashSpec, HashError> {
    if !is_prime(p) {
        return Err(HashError::NotPrime(p));
    }
    let group = enumerate_group(&GroupDescriptor::CyclicShifts(p))?;
    let family = AutomorphismFamily::multiplicative(p)?;
    let psi0 = build_psi0(p, Psi0Kind::Fourier)?;
    build_hash_spec(group, family, psi0, ClassicalHash::mod_p(p))
}

/// Reference assembly through `register_embed` and `act`, block by block.
pub fn hash_by_blocks(spec: &HashSpec, w: &Message) -> Result<StateVector, HashError> {
    let g = spec.classical(w)?;
    let t = spec.t();
    let mut acc = StateVector::zeros(spec.dim());
    for j in 0..t {
        let image = spec.family.apply(j, &g)?;
        let block = act(&image, spec.psi0.state())?;
        let embedded = crate::state::register_embed(j, t, &block)?;
        crate::state::add_assign(&mut acc, &embedded);
    }
    Ok(acc.scaled(1.0 / (t as f64).sqrt()))
}
