//! Finite probability spaces with exact rational weights.
//!
//! Atoms are indexed `0..n`. The σ-field of all events is the powerset of the
//! atoms; since every weight is strictly positive there are no null sets to
//! complete by.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct SpaceData {
    weights: Vec<Rational>,
}

/// A finite probability space. Cheap to clone; clones share storage.
#[derive(Clone)]
pub struct Space(Arc<SpaceData>);

impl Space {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        if let Some((index, weight)) = weights.iter().enumerate().find(|(_, w)| !rational::is_positive(w)) {
            return Err(Error::NonPositiveWeight { index, weight: weight.clone() });
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::WeightSum { sum });
        }
        Ok(Space(Arc::new(SpaceData { weights })))
    }

    /// Uniform space on `n` atoms.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        Space::new(vec![rational::ratio(1, n as i64); n])
    }

    /// Normalizes positive integer masses into a space.
    pub fn from_masses(masses: &[u64]) -> Result<Self> {
        let total: u64 = masses.iter().sum();
        if masses.is_empty() {
            return Err(Error::EmptySpace);
        }
        if total == 0 {
            return Err(Error::WeightSum { sum: rational::zero() });
        }
        Space::new(masses.iter().map(|&m| rational::ratio(m as i64, total as i64)).collect())
    }

    pub fn atom_count(&self) -> usize {
        self.0.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0.weights
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.0.weights[atom]
    }

    /// True when both handles describe the same space (same weights).
    pub fn same_as(&self, other: &Space) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub(crate) fn ensure_same(&self, other: &Space) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn event<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Result<Event> {
        Event::new(self.atom_count(), atoms)
    }

    pub fn full_event(&self) -> Event {
        Event { atoms: (0..self.atom_count()).collect() }
    }

    /// Exact probability of an event.
    pub fn prob(&self, event: &Event) -> Result<Rational> {
        let n = self.atom_count();
        let mut total = Rational::zero();
        for &atom in &event.atoms {
            if atom >= n {
                return Err(Error::AtomOutOfRange { atom, atom_count: n });
            }
            total += &self.0.weights[atom];
        }
        Ok(total)
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Space {}

impl PartialOrd for Space {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Space {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            std::cmp::Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space{self}")
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.weights.iter().map(rational::format).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A set of atoms, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    atoms: Vec<usize>,
}

impl Event {
    pub fn new<I: IntoIterator<Item = usize>>(atom_count: usize, atoms: I) -> Result<Self> {
        let mut atoms: Vec<usize> = atoms.into_iter().collect();
        if let Some(&atom) = atoms.iter().find(|&&a| a >= atom_count) {
            return Err(Error::AtomOutOfRange { atom, atom_count });
        }
        atoms.sort_unstable();
        atoms.dedup();
        Ok(Event { atoms })
    }

    pub fn empty() -> Self {
        Event { atoms: Vec::new() }
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.atoms.binary_search(&atom).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// The product of two spaces together with its coordinate maps.
///
/// Atom `(i, j)` is stored at index `i * n2 + j`.
#[derive(Debug, Clone)]
pub struct ProductSpace {
    pub space: Space,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl ProductSpace {
    pub fn index(&self, i: usize, j: usize) -> usize {
        let n2 = self.second.iter().max().map_or(1, |m| m + 1);
        i * n2 + j
    }
}

pub fn product_space(s1: &Space, s2: &Space) -> ProductSpace {
    let (n1, n2) = (s1.atom_count(), s2.atom_count());
    let mut weights = Vec::with_capacity(n1 * n2);
    let mut first = Vec::with_capacity(n1 * n2);
    let mut second = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            weights.push(s1.weight(i) * s2.weight(j));
            first.push(i);
            second.push(j);
        }
    }
    let space = Space::new(weights).expect("product of probability measures is a probability measure");
    ProductSpace { space, first, second }
}
