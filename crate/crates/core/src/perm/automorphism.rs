use super::{FiniteGroupTable, PermError, Permutation};

/// The inner automorphism `x ↦ s·x·s⁻¹` for a fixed conjugator `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InnerAutomorphism {
    conjugator: Permutation,
}

impl InnerAutomorphism {
    pub fn new(conjugator: Permutation) -> Self {
        InnerAutomorphism { conjugator }
    }

    pub fn conjugator(&self) -> &Permutation {
        &self.conjugator
    }

    pub fn apply(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.conjugator.conjugate(g)
    }

    /// `s⁻¹·x·s`, the opposite convention.
    pub fn apply_inverse(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.conjugator.inverse().conjugate(g)
    }
}

/// An ordered list of inner automorphisms. Repeats are allowed, so a family
/// doubles as a multiset of draws from a larger family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismFamily {
    label: String,
    degree: usize,
    members: Vec<InnerAutomorphism>,
}

impl AutomorphismFamily {
    pub fn new(label: impl Into<String>, conjugators: Vec<Permutation>) -> Result<Self, PermError> {
        let first = conjugators.first().ok_or(PermError::EmptyFamily)?;
        let degree = first.degree();
        if let Some(bad) = conjugators.iter().find(|c| c.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        Ok(AutomorphismFamily {
            label: label.into(),
            degree,
            members: conjugators
                .into_iter()
                .map(InnerAutomorphism::new)
                .collect(),
        })
    }

    /// Conjugation by each of the `n` cyclic shifts of `S_n`.
    pub fn cyclic_shifts(n: usize) -> Self {
        let conj = (0..n).map(|k| Permutation::cyclic_shift(n, k)).collect();
        Self::new("cyclic-conj", conj).expect("n >= 1")
    }

    /// Conjugation by every element of `group`.
    pub fn full_conjugation(group: &FiniteGroupTable) -> Self {
        Self::new("full-conj", group.elements().to_vec()).expect("groups are nonempty")
    }

    /// Conjugation by the multiplication maps `i ↦ k·i mod n` for every unit
    /// `k` of `Z_n`. Point `n` plays the role of residue 0.
    ///
    /// On the cyclic shifts these act as `shift(a) ↦ shift(k·a)`.
    pub fn multiplicative(n: usize) -> Result<Self, PermError> {
        if n < 2 {
            return Err(PermError::Empty);
        }
        let conj = (1..n)
            .filter(|&k| gcd(k, n) == 1)
            .map(|k| {
                let images = (0..n)
                    .map(|i| {
                        // point i+1 ≡ residue (i+1) mod n
                        let r = (k * ((i + 1) % n)) % n;
                        (r + n - 1) % n
                    })
                    .collect();
                Permutation::from_images_unchecked(images)
            })
            .collect();
        Self::new(format!("mult-conj:{n}"), conj)
    }

    /// The single identity automorphism.
    pub fn trivial(n: usize) -> Self {
        Self::new("trivial", vec![Permutation::identity(n)]).expect("n >= 1")
    }

    /// The multiset `[members[i] for i in indices]`.
    pub fn select(&self, indices: &[usize]) -> Result<Self, PermError> {
        let members = indices
            .iter()
            .map(|&i| {
                self.members
                    .get(i)
                    .cloned()
                    .ok_or(PermError::IndexOutOfRange {
                        index: i,
                        len: self.members.len(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if members.is_empty() {
            return Err(PermError::EmptyFamily);
        }
        Ok(AutomorphismFamily {
            label: format!("{}[{} draws]", self.label, members.len()),
            degree: self.degree,
            members,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[InnerAutomorphism] {
        &self.members
    }

    /// `k_index{g}`.
    pub fn apply(&self, index: usize, g: &Permutation) -> Result<Permutation, PermError> {
        let k = self.members.get(index).ok_or(PermError::IndexOutOfRange {
            index,
            len: self.members.len(),
        })?;
        k.apply(g)
    }

    /// True when the conjugator multiset is closed under inversion.
    pub fn is_inversion_closed(&self) -> bool {
        let mut forward: Vec<&Permutation> = self.members.iter().map(|k| &k.conjugator).collect();
        let mut inverted: Vec<Permutation> = self
            .members
            .iter()
            .map(|k| k.conjugator.inverse())
            .collect();
        forward.sort();
        inverted.sort();
        forward.into_iter().eq(inverted.iter())
    }
}

/// `s · x · s⁻¹` through a family member; free-function form of
/// [`AutomorphismFamily::apply`].
pub fn apply_automorphism(
    family: &AutomorphismFamily,
    index: usize,
    g: &Permutation,
) -> Result<Permutation, PermError> {
    family.apply(index, g)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
