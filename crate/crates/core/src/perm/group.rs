use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{PermError, Permutation};

/// Default ceiling on enumerated group order. S₈ (40 320) fits.
pub const DEFAULT_GROUP_CAP: usize = 50_000;

/// Permutation groups the toolkit knows how to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Symmetric(usize),
    Alternating(usize),
    /// `Z_n` realized as the cyclic shifts inside `S_n`.
    CyclicShifts(usize),
    Generated {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Symmetric(n) => write!(f, "sym:{n}"),
            GroupDescriptor::Alternating(n) => write!(f, "alt:{n}"),
            GroupDescriptor::CyclicShifts(n) => write!(f, "zp:{n}"),
            GroupDescriptor::Generated { generators, .. } => {
                write!(f, "gen<")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ">")
            }
        }
    }
}

/// Complete element table of a finite permutation group.
///
/// Elements are sorted in lexicographic one-line order, so the identity is
/// always at index 0.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    name: String,
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PartialEq for FiniteGroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl FiniteGroupTable {
    /// Builds a table from an explicit element list, checking the group axioms.
    pub fn from_elements(
        name: impl Into<String>,
        degree: usize,
        elements: Vec<Permutation>,
    ) -> Result<Self, PermError> {
        if elements.iter().any(|e| e.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: elements
                    .iter()
                    .find(|e| e.degree() != degree)
                    .unwrap()
                    .degree(),
            });
        }
        let table = Self::from_closed_set(name.into(), degree, elements);
        if !table.contains(&Permutation::identity(degree)) {
            return Err(PermError::NotClosed("identity missing".into()));
        }
        for a in &table.elements {
            if !table.contains(&a.inverse()) {
                return Err(PermError::NotClosed(format!("inverse of {a} missing")));
            }
            for b in &table.elements {
                let ab = a.compose_unchecked(b);
                if !table.contains(&ab) {
                    return Err(PermError::NotClosed(format!("{a}·{b} = {ab} missing")));
                }
            }
        }
        Ok(table)
    }

    fn from_closed_set(name: String, degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        FiniteGroupTable {
            name,
            degree,
            elements,
            index,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    /// All elements except the identity, in table order.
    pub fn non_identity(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.elements[1..].iter()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroupTable) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// True when `g·h·g⁻¹ ∈ self` for every `h ∈ self`, `g ∈ ambient`.
    pub fn is_normal_in(&self, ambient: &FiniteGroupTable) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.elements.iter().all(|g| {
                self.elements
                    .iter()
                    .all(|h| self.contains(&g.conjugate_unchecked(h)))
            })
    }

    /// Conjugacy classes as lists of element indices, each sorted, ordered by
    /// their smallest index.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.order() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in &self.elements {
                let j = self.index[&g.conjugate_unchecked(&self.elements[i])];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

fn factorial_capped(n: usize, cap: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for k in 2..=n {
        acc = acc.checked_mul(k)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// Advances `v` to its lexicographic successor; false after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_images_unchecked(current.clone())];
    while next_permutation(&mut current) {
        out.push(Permutation::from_images_unchecked(current.clone()));
    }
    out
}

pub fn enumerate_group(desc: &GroupDescriptor) -> Result<FiniteGroupTable, PermError> {
    enumerate_group_with_cap(desc, DEFAULT_GROUP_CAP)
}

pub fn enumerate_group_with_cap(
    desc: &GroupDescriptor,
    cap: usize,
) -> Result<FiniteGroupTable, PermError> {
    let name = desc.to_string();
    match desc {
        GroupDescriptor::Symmetric(n) | GroupDescriptor::Alternating(n) => {
            if *n == 0 {
                return Err(PermError::Empty);
            }
            let full = factorial_capped(*n, usize::MAX).unwrap_or(usize::MAX);
            let size = if matches!(desc, GroupDescriptor::Alternating(_)) && *n >= 2 {
                full / 2
            } else {
                full
            };
            if size > cap {
                return Err(PermError::TooLarge { cap });
            }
            let mut elements = all_permutations(*n);
            if matches!(desc, GroupDescriptor::Alternating(_)) {
                elements.retain(Permutation::is_even);
            }
            Ok(FiniteGroupTable::from_closed_set(name, *n, elements))
        }
        GroupDescriptor::CyclicShifts(n) => {
            if *n == 0 {
                return Err(PermError::Empty);
            }
            if *n > cap {
                return Err(PermError::TooLarge { cap });
            }
            let elements = (0..*n).map(|k| Permutation::cyclic_shift(*n, k)).collect();
            Ok(FiniteGroupTable::from_closed_set(name, *n, elements))
        }
        GroupDescriptor::Generated { degree, generators } => {
            if *degree == 0 {
                return Err(PermError::Empty);
            }
            if let Some(g) = generators.iter().find(|g| g.degree() != *degree) {
                return Err(PermError::DegreeMismatch {
                    left: *degree,
                    right: g.degree(),
                });
            }
            let identity = Permutation::identity(*degree);
            let mut seen: HashMap<Permutation, ()> = HashMap::new();
            seen.insert(identity.clone(), ());
            let mut queue = VecDeque::from([identity]);
            while let Some(x) = queue.pop_front() {
                for g in generators {
                    let y = g.compose_unchecked(&x);
                    if !seen.contains_key(&y) {
                        if seen.len() >= cap {
                            return Err(PermError::TooLarge { cap });
                        }
                        seen.insert(y.clone(), ());
                        queue.push_back(y);
                    }
                }
            }
            let elements = seen.into_keys().collect();
            Ok(FiniteGroupTable::from_closed_set(name, *degree, elements))
        }
    }
}
