use std::fmt;
use std::str::FromStr;

use super::PermError;

/// A bijection of `{1..n}` stored in one-line notation.
///
/// Points are 1-indexed at the API boundary (`apply`, `one_line`) and
/// 0-indexed internally.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-indexed one-line notation, `one_line[i-1] = π(i)`.
    pub fn new(one_line: &[usize]) -> Result<Self, PermError> {
        if one_line.is_empty() {
            return Err(PermError::Empty);
        }
        let n = one_line.len();
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &p in one_line {
            if p == 0 || p > n || seen[p - 1] {
                return Err(PermError::NotBijection(one_line.to_vec()));
            }
            seen[p - 1] = true;
            images.push(p - 1);
        }
        Ok(Permutation { images })
    }

    /// Builds from 0-indexed images. The caller guarantees bijectivity.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::new(&images.iter().map(|&x| x + 1).collect::<Vec<_>>()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The shift `i ↦ ((i-1+k) mod n) + 1`.
    pub fn cyclic_shift(n: usize, k: usize) -> Self {
        assert!(n >= 1, "cyclic shift needs a positive degree");
        let k = k % n;
        Permutation {
            images: (0..n).map(|i| (i + k) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `π(i)` for a 1-indexed point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 0-indexed images, `images0()[i] = π(i+1) - 1`.
    pub fn images0(&self) -> &[usize] {
        &self.images
    }

    /// 1-indexed one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&q| self.images[q]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { images: inv }
    }

    /// `self · x · self⁻¹`.
    pub fn conjugate(&self, x: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(x)?;
        Ok(self.conjugate_unchecked(x))
    }

    pub(crate) fn conjugate_unchecked(&self, x: &Permutation) -> Permutation {
        // (s x s⁻¹)(s(i)) = s(x(i))
        let mut out = vec![0; self.degree()];
        for (i, &xi) in x.images.iter().enumerate() {
            out[self.images[i]] = self.images[xi];
        }
        Permutation { images: out }
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point, 1-indexed.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.images[i];
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        transpositions.is_multiple_of(2)
    }

    /// Finds `r` with `r · self · r⁻¹ = target`, if the two share a cycle type.
    pub fn conjugator_to(&self, target: &Permutation) -> Option<Permutation> {
        if self.degree() != target.degree() || self.cycle_type() != target.cycle_type() {
            return None;
        }
        let sorted_cycles = |p: &Permutation| {
            let mut cs = p.all_cycles();
            cs.sort_by_key(|c| std::cmp::Reverse(c.len()));
            cs
        };
        let mut images = vec![usize::MAX; self.degree()];
        for (a, b) in sorted_cycles(self).iter().zip(sorted_cycles(target).iter()) {
            for (&x, &y) in a.iter().zip(b.iter()) {
                images[x] = y;
            }
        }
        Some(Permutation { images })
    }

    /// Every cycle including fixed points, 0-indexed.
    fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Parses one-line `[2,3,1]` or cycle notation `(1 2 3)(4 5)`.
    ///
    /// Cycle notation needs a degree; when `degree` is `None` the largest
    /// point mentioned is used. Cycles are multiplied right to left, so in
    /// `(1 2)(2 3)` the cycle `(2 3)` acts first.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let text = text.trim();
        let bad = |msg: &str| PermError::Parse(format!("{msg}: `{text}`"));
        if let Some(body) = text.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| bad("unterminated one-line form"))?;
            let points = body
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<Vec<_>, _>>()?;
            let p = Permutation::new(&points)?;
            if let Some(d) = degree {
                if d != p.degree() {
                    return Err(PermError::DegreeMismatch {
                        left: d,
                        right: p.degree(),
                    });
                }
            }
            return Ok(p);
        }
        if !text.starts_with('(') {
            return Err(bad("expected `[` or `(`"));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = inner.find(')').ok_or_else(|| bad("unterminated cycle"))?;
            let points = inner[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(points);
            rest = inner[close + 1..].trim_start();
        }
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(1);
        let n = degree.unwrap_or(max_point.max(1));
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut acc = Permutation::identity(n);
        for cycle in &cycles {
            let mut images: Vec<usize> = (0..n).collect();
            let mut seen = vec![false; n];
            for (idx, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n || seen[p - 1] {
                    return Err(PermError::NotBijection(cycle.clone()));
                }
                seen[p - 1] = true;
                images[p - 1] = cycle[(idx + 1) % cycle.len()] - 1;
            }
            acc = acc.compose_unchecked(&Permutation { images });
        }
        Ok(acc)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s, None)
    }
}

/// `s · x · s⁻¹`.
pub fn conjugate(s: &Permutation, x: &Permutation) -> Result<Permutation, PermError> {
    s.conjugate(x)
}
