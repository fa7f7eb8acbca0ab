//! Complex state vectors and the standard permutation representation
//! `f(p)|i⟩ = |p(i)⟩` acting on them.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::perm::Permutation;

/// Tolerance on the `Σcᵢ = 0` and unit-norm constraints of a start state.
pub const START_STATE_TOL: f64 = 1e-12;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum StateError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("start state constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("degree {0} too small for a zero-sum start state (need n >= 2)")]
    DegreeTooSmall(usize),
    #[error("register index {index} out of range for {t} registers")]
    IndexOutOfRange { index: usize, t: usize },
    #[error("state vector must be nonempty with finite amplitudes")]
    Invalid,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self, StateError> {
        if amps.is_empty() || amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(StateError::Invalid);
        }
        Ok(StateVector { amps })
    }

    pub fn zeros(dim: usize) -> Self {
        StateVector {
            amps: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> StateVector {
        StateVector {
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// Largest coordinate-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// One amplitude per line as `re im`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in &self.amps {
            out.push_str(&format!("{:e} {:e}\n", a.re, a.im));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, StateError> {
        let mut amps = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| StateError::Parse {
                    line: lineno + 1,
                    msg: format!("bad number `{s}`"),
                })
            };
            match parts.as_slice() {
                [re, im] => amps.push(Complex64::new(parse(re)?, parse(im)?)),
                _ => {
                    return Err(StateError::Parse {
                        line: lineno + 1,
                        msg: "expected `re im`".into(),
                    })
                }
            }
        }
        StateVector::new(amps)
    }
}

/// The choice of start state ψ₀.
#[derive(Clone, Debug, PartialEq)]
pub enum Psi0Kind {
    /// `cⱼ = ωʲ/√n`, `ω = exp(2πi/n)`, `j = 1..n`.
    Fourier,
    /// `(1, −1, 0, …, 0)/√2`.
    Pm,
    Custom(Vec<Complex64>),
}

impl fmt::Display for Psi0Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psi0Kind::Fourier => write!(f, "fourier"),
            Psi0Kind::Pm => write!(f, "pm"),
            Psi0Kind::Custom(_) => write!(f, "custom"),
        }
    }
}

/// A unit vector whose coordinates sum to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct StartState {
    state: StateVector,
    kind: Psi0Kind,
}

impl StartState {
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn kind(&self) -> &Psi0Kind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }
}

pub fn build_psi0(n: usize, kind: Psi0Kind) -> Result<StartState, StateError> {
    if n < 2 {
        return Err(StateError::DegreeTooSmall(n));
    }
    let amps = match &kind {
        Psi0Kind::Fourier => {
            let scale = 1.0 / (n as f64).sqrt();
            (1..=n)
                .map(|j| Complex64::from_polar(scale, 2.0 * PI * (j % n) as f64 / n as f64))
                .collect()
        }
        Psi0Kind::Pm => {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            v[1] = Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
            v
        }
        Psi0Kind::Custom(amps) => {
            if amps.len() != n {
                return Err(StateError::DimensionMismatch {
                    left: n,
                    right: amps.len(),
                });
            }
            amps.clone()
        }
    };
    let state = StateVector::new(amps)?;
    let sum: Complex64 = state.amps.iter().sum();
    if sum.norm() > START_STATE_TOL {
        return Err(StateError::ConstraintViolated(format!(
            "coordinates sum to {sum}, expected 0"
        )));
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > START_STATE_TOL {
        return Err(StateError::ConstraintViolated(format!(
            "norm is {norm}, expected 1"
        )));
    }
    Ok(StartState { state, kind })
}

/// `f(p)·s`, with amplitude `s[i]` moved to position `p(i)`.
pub fn act(p: &Permutation, s: &StateVector) -> Result<StateVector, StateError> {
    if p.degree() != s.dim() {
        return Err(StateError::DimensionMismatch {
            left: p.degree(),
            right: s.dim(),
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); s.dim()];
    for (i, &pi) in p.images0().iter().enumerate() {
        out[pi] = s.amps[i];
    }
    Ok(StateVector { amps: out })
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<Complex64, StateError> {
    if a.dim() != b.dim() {
        return Err(StateError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// Dense 0/1 matrix of `f(p)`: `M[p(i)][i] = 1`.
pub fn perm_matrix(p: &Permutation) -> DMatrix<Complex64> {
    let n = p.degree();
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (i, &pi) in p.images0().iter().enumerate() {
        m[(pi, i)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// `|j⟩ ⊗ s` inside `t` registers.
pub fn register_embed(j: usize, t: usize, s: &StateVector) -> Result<StateVector, StateError> {
    if j >= t {
        return Err(StateError::IndexOutOfRange { index: j, t });
    }
    let n = s.dim();
    let mut out = StateVector::zeros(t * n);
    out.amps[j * n..(j + 1) * n].copy_from_slice(&s.amps);
    Ok(out)
}

/// Block-wise sum used when assembling a register superposition.
pub(crate) fn add_assign(target: &mut StateVector, other: &StateVector) {
    for (a, b) in target.amps.iter_mut().zip(&other.amps) {
        *a += b;
    }
}

pub(crate) fn block_mut(s: &mut StateVector, j: usize, n: usize) -> &mut [Complex64] {
    &mut s.amps[j * n..(j + 1) * n]
}
