//! Collision-bias measurements for automorphism families, the randomized
//! good-set sampler, and the audit of the cyclic-shift construction on `S_n`.
//!
//! For a multiset `K` of automorphisms, a start state ψ₀ and a group element
//! `g`, the *bias* is
//!
//! ```text
//! bias(K, g) = (1/|K|) · |Σ_{k∈K} ⟨ψ₀| f(k{g}) |ψ₀⟩|
//! ```
//!
//! and `K` is good for ε when `bias(K, g)² < ε` for every `g ≠ e`.

use std::fmt::{self, Write as _};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{
    enumerate_group, AutomorphismFamily, FiniteGroupTable, GroupDescriptor, PermError, Permutation,
};
use crate::state::{build_psi0, Psi0Kind, StartState, StateError};

/// Default tolerance below which a family sum counts as zero.
pub const ZERO_SUM_TOL: f64 = 1e-10;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum BiasError {
    #[error("the identity element is excluded from bias measurements")]
    IdentityElement,
    #[error("degree mismatch: {what} has degree {found}, expected {expected}")]
    DegreeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("epsilon {0} outside (0, 1)")]
    EpsilonOutOfRange(f64),
    #[error("no verified good set after {attempts} attempts (best max bias {best_max_bias:.12})")]
    VerificationFailed { attempts: usize, best_max_bias: f64 },
    #[error("no candidate family acts on degree {0}")]
    EmptyCandidates(usize),
    #[error("audit supports n in 3..=8, got {0}")]
    UnsupportedDegree(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Direction of conjugation used when applying a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `s·x·s⁻¹`
    Forward,
    /// `s⁻¹·x·s`
    Backward,
}

/// `⟨ψ|f(p)|ψ⟩ = Σᵢ conj(c_{p(i)})·cᵢ`.
pub(crate) fn expectation(p: &Permutation, psi: &[Complex64]) -> Complex64 {
    p.images0()
        .iter()
        .zip(psi)
        .map(|(&pi, &ci)| psi[pi].conj() * ci)
        .sum()
}

fn check_degree(
    family: &AutomorphismFamily,
    degree: usize,
    psi0: &StartState,
) -> Result<(), BiasError> {
    if family.degree() != degree {
        return Err(BiasError::DegreeMismatch {
            what: "family",
            expected: degree,
            found: family.degree(),
        });
    }
    if psi0.dim() != degree {
        return Err(BiasError::DegreeMismatch {
            what: "psi0",
            expected: degree,
            found: psi0.dim(),
        });
    }
    Ok(())
}

/// `(1/|K|)·Σ_k ⟨ψ₀|f(k{g})|ψ₀⟩` under the chosen conjugation direction.
pub fn family_sum(
    family: &AutomorphismFamily,
    g: &Permutation,
    psi0: &StartState,
    convention: Convention,
) -> Result<Complex64, BiasError> {
    check_degree(family, g.degree(), psi0)?;
    let psi = psi0.state().amplitudes();
    let total: Complex64 = family
        .members()
        .iter()
        .map(|k| {
            let image = match convention {
                Convention::Forward => k.apply(g),
                Convention::Backward => k.apply_inverse(g),
            }
            .expect("degrees checked");
            expectation(&image, psi)
        })
        .sum();
    Ok(total / family.len() as f64)
}

/// Bias of one non-identity element. Its square is the good-set quantity.
pub fn element_bias(
    family: &AutomorphismFamily,
    g: &Permutation,
    psi0: &StartState,
) -> Result<f64, BiasError> {
    if g.is_identity() {
        return Err(BiasError::IdentityElement);
    }
    let s = family_sum(family, g, psi0, Convention::Forward)?;
    Ok(s.norm().min(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiasReport {
    pub group: String,
    pub family: String,
    pub psi0: String,
    /// Every non-identity element with its bias, sorted by one-line order.
    pub entries: Vec<(Permutation, f64)>,
    pub max_bias: f64,
    /// `None` only for the trivial group.
    pub argmax: Option<Permutation>,
}

impl BiasReport {
    pub fn bias_of(&self, g: &Permutation) -> Option<f64> {
        self.entries
            .binary_search_by(|(p, _)| p.cmp(g))
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "group={}", self.group).unwrap();
        writeln!(out, "family={}", self.family).unwrap();
        writeln!(out, "psi0={}", self.psi0).unwrap();
        writeln!(out, "max_bias={:.12}", self.max_bias).unwrap();
        match &self.argmax {
            Some(g) => writeln!(out, "argmax={g}").unwrap(),
            None => writeln!(out, "argmax=none").unwrap(),
        }
        for (g, b) in &self.entries {
            writeln!(out, "g={g} bias={b:.12}").unwrap();
        }
        out
    }
}

impl fmt::Display for BiasReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Exhaustive bias scan over every `g ≠ e` of `group`.
pub fn bias_report(
    family: &AutomorphismFamily,
    group: &FiniteGroupTable,
    psi0: &StartState,
) -> Result<BiasReport, BiasError> {
    check_degree(family, group.degree(), psi0)?;
    let entries: Vec<(Permutation, f64)> = group
        .elements()
        .par_iter()
        .skip(1)
        .map(|g| (g.clone(), element_bias(family, g, psi0).expect("checked")))
        .collect();
    let mut max_bias = 0.0;
    let mut argmax = None;
    for (g, b) in &entries {
        if argmax.is_none() || *b > max_bias {
            max_bias = *b;
            argmax = Some(g.clone());
        }
    }
    Ok(BiasReport {
        group: group.name().to_string(),
        family: family.label().to_string(),
        psi0: psi0.kind().to_string(),
        entries,
        max_bias,
        argmax,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSumCheck {
    /// `(g, (1/|K|)Σ_k ⟨ψ₀|f(k{g})|ψ₀⟩)` for every `g ≠ e`.
    pub sums: Vec<(Permutation, Complex64)>,
    pub tol: f64,
    pub holds: bool,
    /// Element with the largest sum modulus when the check fails.
    pub counterexample: Option<Permutation>,
}

/// Tests whether the full-family sum vanishes for every `g ≠ e`.
pub fn zero_sum_check(
    family: &AutomorphismFamily,
    group: &FiniteGroupTable,
    psi0: &StartState,
    tol: f64,
) -> Result<ZeroSumCheck, BiasError> {
    check_degree(family, group.degree(), psi0)?;
    let sums: Vec<(Permutation, Complex64)> = group
        .elements()
        .par_iter()
        .skip(1)
        .map(|g| {
            let s = family_sum(family, g, psi0, Convention::Forward).expect("checked");
            (g.clone(), s)
        })
        .collect();
    let mut worst: Option<(&Permutation, f64)> = None;
    for (g, s) in &sums {
        let m = s.norm();
        if m > tol && worst.is_none_or(|(_, w)| m > w) {
            worst = Some((g, m));
        }
    }
    let counterexample = worst.map(|(g, _)| g.clone());
    Ok(ZeroSumCheck {
        holds: counterexample.is_none(),
        sums,
        tol,
        counterexample,
    })
}

/// `ceil((2/ε)·ln|G|)`, at least 1.
pub fn good_set_size(epsilon: f64, group_order: usize) -> usize {
    let d = (2.0 / epsilon * (group_order as f64).ln()).ceil();
    (d as usize).max(1)
}

/// A verified multiset of draws from a base family.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodSet {
    pub base_family: String,
    pub indices: Vec<usize>,
    /// Bound on `bias²`.
    pub epsilon: f64,
    pub verified: bool,
    pub attempts: usize,
    pub max_bias: f64,
    pub family: AutomorphismFamily,
}

impl GoodSet {
    pub fn d(&self) -> usize {
        self.indices.len()
    }

    /// Bound on overlaps implied by `epsilon`: `√ε`.
    pub fn epsilon_overlap(&self) -> f64 {
        self.epsilon.sqrt()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "base_family={}", self.base_family).unwrap();
        writeln!(out, "epsilon_bias={}", self.epsilon).unwrap();
        writeln!(out, "epsilon_overlap={:.12}", self.epsilon_overlap()).unwrap();
        writeln!(out, "d={}", self.d()).unwrap();
        writeln!(out, "attempts={}", self.attempts).unwrap();
        writeln!(out, "verified={}", self.verified).unwrap();
        writeln!(out, "max_bias={:.12}", self.max_bias).unwrap();
        writeln!(
            out,
            "max_bias_squared={:.12}",
            self.max_bias * self.max_bias
        )
        .unwrap();
        let idx: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        writeln!(out, "indices={}", idx.join(",")).unwrap();
        out
    }
}

/// Draws `d = ceil((2/ε)·ln|G|)` family members uniformly with replacement,
/// verifies `bias² < ε` for every `g ≠ e`, and redraws on failure.
pub fn sample_good_set(
    family: &AutomorphismFamily,
    epsilon: f64,
    group: &FiniteGroupTable,
    psi0: &StartState,
    seed: u64,
    max_attempts: usize,
) -> Result<GoodSet, BiasError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(BiasError::EpsilonOutOfRange(epsilon));
    }
    check_degree(family, group.degree(), psi0)?;
    let d = good_set_size(epsilon, group.order());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for attempt in 1..=max_attempts {
        let indices: Vec<usize> = (0..d).map(|_| rng.gen_range(0..family.len())).collect();
        let chosen = family.select(&indices)?;
        let report = bias_report(&chosen, group, psi0)?;
        best = best.min(report.max_bias);
        let ok = report.entries.iter().all(|(_, b)| b * b < epsilon);
        if ok {
            return Ok(GoodSet {
                base_family: family.label().to_string(),
                indices,
                epsilon,
                verified: true,
                attempts: attempt,
                max_bias: report.max_bias,
                family: chosen,
            });
        }
    }
    Err(BiasError::VerificationFailed {
        attempts: max_attempts,
        best_max_bias: best,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyRanking {
    pub family: String,
    pub psi0: String,
    pub max_bias: f64,
}

/// Measures every (family, ψ₀ kind) pair and sorts ascending by max bias.
///
/// Candidates whose degree differs from the group's are dropped. Ties (to
/// 1e-12) keep the candidate order.
pub fn search_families(
    group: &FiniteGroupTable,
    candidates: &[AutomorphismFamily],
    psi0_kinds: &[Psi0Kind],
) -> Result<Vec<FamilyRanking>, BiasError> {
    let usable: Vec<&AutomorphismFamily> = candidates
        .iter()
        .filter(|f| f.degree() == group.degree())
        .collect();
    if usable.is_empty() || psi0_kinds.is_empty() {
        return Err(BiasError::EmptyCandidates(group.degree()));
    }
    let mut ranked = Vec::new();
    for family in usable {
        for kind in psi0_kinds {
            let psi0 = build_psi0(group.degree(), kind.clone())?;
            let report = bias_report(family, group, &psi0)?;
            ranked.push(FamilyRanking {
                family: family.label().to_string(),
                psi0: kind.to_string(),
                max_bias: report.max_bias,
            });
        }
    }
    ranked.sort_by_key(|r| (r.max_bias * 1e12).round() as i64);
    Ok(ranked)
}

/// One conjugacy class row of the construction audit.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassBias {
    pub cycle_type: Vec<usize>,
    pub size: usize,
    pub representative: Permutation,
    pub min_bias: f64,
    pub max_bias: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditSection {
    pub psi0: String,
    pub classes: Vec<ClassBias>,
    pub max_bias: f64,
    pub argmax: Permutation,
    pub zero_sum_holds: bool,
    pub counterexample: Option<Permutation>,
}

/// Measured behaviour of the cyclic-shift conjugation family on `S_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub n: usize,
    pub sections: Vec<AuditSection>,
}

impl AuditReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "group=sym:{}", self.n).unwrap();
        writeln!(out, "family=cyclic-conj").unwrap();
        for s in &self.sections {
            writeln!(out, "[psi0={}]", s.psi0).unwrap();
            writeln!(out, "max_bias={:.12}", s.max_bias).unwrap();
            writeln!(out, "argmax={}", s.argmax).unwrap();
            writeln!(out, "zero_sum={}", s.zero_sum_holds).unwrap();
            match &s.counterexample {
                Some(g) => writeln!(out, "counterexample={g}").unwrap(),
                None => writeln!(out, "counterexample=none").unwrap(),
            }
            for c in &s.classes {
                let ty: Vec<String> = c.cycle_type.iter().map(usize::to_string).collect();
                writeln!(
                    out,
                    "class type={} size={} rep={} min_bias={:.12} max_bias={:.12}",
                    ty.join(","),
                    c.size,
                    c.representative,
                    c.min_bias,
                    c.max_bias
                )
                .unwrap();
            }
        }
        out
    }
}

/// Audits the cyclic-shift conjugation family on `S_n` for the Fourier and
/// ±1 start states: per-class bias ranges, max bias, and the zero-sum verdict.
pub fn audit_cyclic_construction(n: usize) -> Result<AuditReport, BiasError> {
    if !(3..=8).contains(&n) {
        return Err(BiasError::UnsupportedDegree(n));
    }
    let group = enumerate_group(&GroupDescriptor::Symmetric(n))?;
    let family = AutomorphismFamily::cyclic_shifts(n);
    let classes = group.conjugacy_classes();
    let mut sections = Vec::new();
    for kind in [Psi0Kind::Fourier, Psi0Kind::Pm] {
        let psi0 = build_psi0(n, kind.clone())?;
        let report = bias_report(&family, &group, &psi0)?;
        // entries skip the identity, which sits at table index 0
        let bias_at = |i: usize| report.entries[i - 1].1;
        let rows = classes
            .iter()
            .filter(|c| c[0] != group.identity_index())
            .map(|c| {
                let biases = c.iter().map(|&i| bias_at(i));
                ClassBias {
                    cycle_type: group.elements()[c[0]].cycle_type(),
                    size: c.len(),
                    representative: group.elements()[c[0]].clone(),
                    min_bias: biases.clone().fold(f64::INFINITY, f64::min),
                    max_bias: biases.fold(0.0, f64::max),
                }
            })
            .collect();
        let check = zero_sum_check(&family, &group, &psi0, ZERO_SUM_TOL)?;
        sections.push(AuditSection {
            psi0: kind.to_string(),
            classes: rows,
            max_bias: report.max_bias,
            argmax: report.argmax.expect("n >= 3"),
            zero_sum_holds: check.holds,
            counterexample: check.counterexample,
        });
    }
    Ok(AuditReport { n, sections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::perm_matrix;
    use nalgebra::DVector;

    fn fourier(n: usize) -> StartState {
        build_psi0(n, Psi0Kind::Fourier).unwrap()
    }

    fn group(desc: GroupDescriptor) -> FiniteGroupTable {
        enumerate_group(&desc).unwrap()
    }

    fn z2_toy() -> (FiniteGroupTable, AutomorphismFamily, StartState) {
        let g = group(GroupDescriptor::Generated {
            degree: 4,
            generators: vec![Permutation::parse("(1 2)(3 4)", Some(4)).unwrap()],
        });
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let psi0 = build_psi0(
            4,
            Psi0Kind::Custom(vec![Complex64::new(h, 0.0), z, Complex64::new(-h, 0.0), z]),
        )
        .unwrap();
        (g, AutomorphismFamily::trivial(4), psi0)
    }

    /// Dense route: `M(s)·M(g)·M(s)ᵀ` sandwiched between ψ₀.
    fn oracle_bias_sq(family: &AutomorphismFamily, g: &Permutation, psi0: &StartState) -> f64 {
        let v = DVector::from_column_slice(psi0.state().amplitudes());
        let mg = perm_matrix(g);
        let mut total = Complex64::new(0.0, 0.0);
        for k in family.members() {
            let ms = perm_matrix(k.conjugator());
            let m = &ms * &mg * ms.transpose();
            total += v.dotc(&(m * &v));
        }
        (total.norm() / family.len() as f64).powi(2)
    }

    #[test]
    fn element_bias_examples() {
        let t = Permutation::new(&[2, 1, 3]).unwrap();
        for kind in [Psi0Kind::Fourier, Psi0Kind::Pm] {
            let psi0 = build_psi0(3, kind).unwrap();
            let b = element_bias(&AutomorphismFamily::cyclic_shifts(3), &t, &psi0).unwrap();
            assert!(b < 1e-15, "{b}");
        }
        let b = element_bias(
            &AutomorphismFamily::cyclic_shifts(4),
            &Permutation::cyclic_shift(4, 1),
            &fourier(4),
        )
        .unwrap();
        assert!((b - 1.0).abs() < 1e-12);
        let mult = AutomorphismFamily::multiplicative(7).unwrap();
        for a in 1..7 {
            let b = element_bias(&mult, &Permutation::cyclic_shift(7, a), &fourier(7)).unwrap();
            assert!((b - 1.0 / 6.0).abs() < 1e-12);
        }
        assert!(matches!(
            element_bias(&mult, &Permutation::identity(7), &fourier(7)),
            Err(BiasError::IdentityElement)
        ));
    }

    #[test]
    fn baseline_bias_is_one_over_p_minus_one() {
        for p in [2usize, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let fam = AutomorphismFamily::multiplicative(p).unwrap();
            let psi0 = fourier(p);
            for a in 1..p {
                let b = element_bias(&fam, &Permutation::cyclic_shift(p, a), &psi0).unwrap();
                assert!(
                    (b - 1.0 / (p - 1) as f64).abs() <= 1e-12,
                    "p={p} a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn bias_report_examples() {
        let (g, fam, psi0) = z2_toy();
        let r = bias_report(&fam, &g, &psi0).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.max_bias, 0.0);

        let s4 = group(GroupDescriptor::Symmetric(4));
        let r = bias_report(&AutomorphismFamily::cyclic_shifts(4), &s4, &fourier(4)).unwrap();
        assert!((r.max_bias - 1.0).abs() < 1e-12);
        let arg = r.argmax.unwrap();
        assert!((1..4).any(|k| arg == Permutation::cyclic_shift(4, k)));
        assert_eq!(r.entries.len(), 23);

        let z7 = group(GroupDescriptor::CyclicShifts(7));
        let r = bias_report(
            &AutomorphismFamily::multiplicative(7).unwrap(),
            &z7,
            &fourier(7),
        )
        .unwrap();
        assert!((r.max_bias - 1.0 / 6.0).abs() < 1e-12);
        assert!(r.entries.iter().all(|(_, b)| (b - 1.0 / 6.0).abs() < 1e-12));
    }

    #[test]
    fn bias_report_rejects_degree_mismatch() {
        let s4 = group(GroupDescriptor::Symmetric(4));
        assert!(matches!(
            bias_report(&AutomorphismFamily::cyclic_shifts(3), &s4, &fourier(4)),
            Err(BiasError::DegreeMismatch { what: "family", .. })
        ));
        assert!(matches!(
            bias_report(&AutomorphismFamily::cyclic_shifts(4), &s4, &fourier(5)),
            Err(BiasError::DegreeMismatch { what: "psi0", .. })
        ));
    }

    #[test]
    fn bias_report_text_format() {
        let z3 = group(GroupDescriptor::CyclicShifts(3));
        let r = bias_report(
            &AutomorphismFamily::multiplicative(3).unwrap(),
            &z3,
            &fourier(3),
        )
        .unwrap();
        let text = r.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "group=zp:3");
        assert_eq!(lines[1], "family=mult-conj:3");
        assert_eq!(lines[2], "psi0=fourier");
        assert_eq!(lines[3], "max_bias=0.500000000000");
        assert!(lines[5].starts_with("g=(1 2 3) bias=0.5"));
        assert!(lines[6].starts_with("g=(1 3 2) bias=0.5"));
    }

    #[test]
    fn zero_sum_examples() {
        let (g, fam, psi0) = z2_toy();
        assert!(zero_sum_check(&fam, &g, &psi0, 1e-10).unwrap().holds);

        let s3 = group(GroupDescriptor::Symmetric(3));
        let check = zero_sum_check(
            &AutomorphismFamily::cyclic_shifts(3),
            &s3,
            &fourier(3),
            1e-10,
        )
        .unwrap();
        assert!(!check.holds);
        let ce = check.counterexample.unwrap();
        assert!(ce == Permutation::cyclic_shift(3, 1) || ce == Permutation::cyclic_shift(3, 2));

        let trivial = group(GroupDescriptor::Symmetric(1));
        // degree-1 start states do not exist, so borrow the Z₂ toy's shape
        assert_eq!(trivial.order(), 1);
        let only_e =
            FiniteGroupTable::from_elements("e", 4, vec![Permutation::identity(4)]).unwrap();
        let check = zero_sum_check(&fam, &only_e, &psi0, 1e-10).unwrap();
        assert!(check.holds && check.sums.is_empty());
    }

    #[test]
    fn zero_sum_verdict_bounds_max_bias() {
        let s4 = group(GroupDescriptor::Symmetric(4));
        let a4 = group(GroupDescriptor::Alternating(4));
        for g in [&s4, &a4] {
            for fam in [
                AutomorphismFamily::cyclic_shifts(4),
                AutomorphismFamily::full_conjugation(g),
            ] {
                for kind in [Psi0Kind::Fourier, Psi0Kind::Pm] {
                    let psi0 = build_psi0(4, kind).unwrap();
                    let check = zero_sum_check(&fam, g, &psi0, 1e-10).unwrap();
                    let report = bias_report(&fam, g, &psi0).unwrap();
                    if check.holds {
                        assert!(report.max_bias <= 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn dense_oracle_matches_on_s4() {
        let s4 = group(GroupDescriptor::Symmetric(4));
        for fam in [
            AutomorphismFamily::cyclic_shifts(4),
            AutomorphismFamily::full_conjugation(&s4),
        ] {
            for kind in [Psi0Kind::Fourier, Psi0Kind::Pm] {
                let psi0 = build_psi0(4, kind).unwrap();
                for g in s4.non_identity() {
                    let b = element_bias(&fam, g, &psi0).unwrap();
                    assert!((b * b - oracle_bias_sq(&fam, g, &psi0)).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn conjugation_direction_is_irrelevant_for_inversion_closed_families() {
        let s5 = group(GroupDescriptor::Symmetric(5));
        let fam = AutomorphismFamily::cyclic_shifts(5);
        assert!(fam.is_inversion_closed());
        let psi0 = fourier(5);
        for g in s5.non_identity() {
            let fwd = family_sum(&fam, g, &psi0, Convention::Forward).unwrap();
            let bwd = family_sum(&fam, g, &psi0, Convention::Backward).unwrap();
            assert!((fwd - bwd).norm() <= 1e-12);
        }
    }

    #[test]
    fn bias_ignores_multiset_order() {
        let s4 = group(GroupDescriptor::Symmetric(4));
        let fam = AutomorphismFamily::full_conjugation(&s4);
        let a = fam.select(&[3, 7, 7, 20, 11]).unwrap();
        let b = fam.select(&[7, 20, 11, 7, 3]).unwrap();
        let psi0 = fourier(4);
        for g in s4.non_identity() {
            let x = element_bias(&a, g, &psi0).unwrap();
            let y = element_bias(&b, g, &psi0).unwrap();
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn good_set_sizes() {
        assert_eq!(good_set_size(0.5, 24), 13);
        assert_eq!(good_set_size(0.1, 31), 69);
        assert_eq!(good_set_size(0.5, 1), 1);
    }

    #[test]
    fn sampler_examples() {
        let z31 = group(GroupDescriptor::CyclicShifts(31));
        let fam = AutomorphismFamily::multiplicative(31).unwrap();
        let gs = sample_good_set(&fam, 0.1, &z31, &fourier(31), 7, 20).unwrap();
        assert_eq!(gs.d(), 69);
        assert!(gs.verified);
        assert!(gs.max_bias * gs.max_bias < 0.1);
        assert_eq!(
            gs,
            sample_good_set(&fam, 0.1, &z31, &fourier(31), 7, 20).unwrap()
        );

        let s4 = group(GroupDescriptor::Symmetric(4));
        let err = sample_good_set(
            &AutomorphismFamily::cyclic_shifts(4),
            0.5,
            &s4,
            &fourier(4),
            1,
            5,
        )
        .unwrap_err();
        match err {
            BiasError::VerificationFailed {
                attempts,
                best_max_bias,
            } => {
                assert_eq!(attempts, 5);
                assert!((best_max_bias - 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        for eps in [0.0, 1.0, 1.5, -0.2, f64::NAN] {
            assert!(matches!(
                sample_good_set(&fam, eps, &z31, &fourier(31), 0, 1),
                Err(BiasError::EpsilonOutOfRange(_))
            ));
        }
    }

    #[test]
    fn search_examples() {
        let z7 = group(GroupDescriptor::CyclicShifts(7));
        let cyclic = AutomorphismFamily::cyclic_shifts(7);
        let mult = AutomorphismFamily::multiplicative(7).unwrap();
        let single =
            search_families(&z7, std::slice::from_ref(&cyclic), &[Psi0Kind::Fourier]).unwrap();
        assert_eq!(single.len(), 1);
        assert!((single[0].max_bias - 1.0).abs() < 1e-12);

        let ranked = search_families(&z7, &[cyclic, mult], &[Psi0Kind::Fourier]).unwrap();
        assert_eq!(ranked[0].family, "mult-conj:7");
        assert!((ranked[0].max_bias - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(ranked[1].family, "cyclic-conj");

        assert!(matches!(
            search_families(
                &z7,
                &[AutomorphismFamily::cyclic_shifts(5)],
                &[Psi0Kind::Fourier]
            ),
            Err(BiasError::EmptyCandidates(7))
        ));
    }

    #[test]
    fn audit_small_cases() {
        let r3 = audit_cyclic_construction(3).unwrap();
        let fourier3 = &r3.sections[0];
        assert_eq!(fourier3.psi0, "fourier");
        let transp = fourier3
            .classes
            .iter()
            .find(|c| c.cycle_type == vec![2, 1])
            .unwrap();
        assert!(transp.max_bias < 1e-12);
        let three = fourier3
            .classes
            .iter()
            .find(|c| c.cycle_type == vec![3])
            .unwrap();
        assert!((three.min_bias - 1.0).abs() < 1e-12);
        assert!(!fourier3.zero_sum_holds);
        assert!(fourier3.counterexample.is_some());

        let r4 = audit_cyclic_construction(4).unwrap();
        assert!((r4.sections[0].max_bias - 1.0).abs() < 1e-12);
        assert!(matches!(
            audit_cyclic_construction(2),
            Err(BiasError::UnsupportedDegree(2))
        ));
        assert!(matches!(
            audit_cyclic_construction(9),
            Err(BiasError::UnsupportedDegree(9))
        ));
    }
}
