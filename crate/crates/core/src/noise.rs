//! Noise-type Boolean algebras of σ-fields and their completion.
//!
//! A noise-type Boolean algebra is a sublattice `B` of Λ containing 0 and 1
//! that is a Boolean algebra and in which any two elements with trivial meet
//! are independent. Its completion is
//!
//! ```text
//! C = { x ∈ Cl(B) : some y ∈ Cl(B) has x ∧ y = 0 and x ∨ y = 1 }.
//! ```
//!
//! On a finite space the strong-operator closure of a finite meet-closed set
//! is the set itself, so `Cl(B) = B` and `C = B`. The checks below still run
//! every construction explicitly; [`ClosureSet::from_elements`] lets callers
//! supply larger meet-closed sets to exercise the completion on its own.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::independence::is_independent;
use crate::lattice::SigmaField;
use crate::operator::{CondExp, Vector};
use crate::rational::Rational;
use crate::space::Space;
use crate::{Error, Result};

/// Exhaustive maximality search in [`check_completion_constructions`] runs only up to this
/// many closure elements.
pub const MAXIMALITY_SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    SameSpace,
    ContainsBottom,
    ContainsTop,
    MeetClosed,
    JoinClosed,
    Distributive,
    ComplementExists,
    ComplementUnique,
    DisjointIndependent,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Axiom::SameSpace => "all elements on one space",
            Axiom::ContainsBottom => "contains the trivial σ-field",
            Axiom::ContainsTop => "contains the full σ-field",
            Axiom::MeetClosed => "closed under meet",
            Axiom::JoinClosed => "closed under join",
            Axiom::Distributive => "distributive",
            Axiom::ComplementExists => "every element has a complement",
            Axiom::ComplementUnique => "complements are unique",
            Axiom::DisjointIndependent => "trivially-meeting pairs are independent",
        };
        f.write_str(text)
    }
}

/// The first axiom a candidate fails, with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<SigmaField>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(ToString::to_string).collect();
        write!(f, "{} fails at {}", self.axiom, w.join(", "))
    }
}

/// A validated noise-type Boolean algebra with its complement map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraCandidate {
    space: Space,
    elements: Vec<SigmaField>,
    complements: Vec<usize>,
}

impl AlgebraCandidate {
    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Elements in canonical order (coarse first).
    pub fn elements(&self) -> &[SigmaField] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &SigmaField) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn contains(&self, x: &SigmaField) -> bool {
        self.index_of(x).is_some()
    }

    pub fn complement(&self, x: &SigmaField) -> Option<&SigmaField> {
        self.index_of(x).map(|i| &self.elements[self.complements[i]])
    }

    /// `(x, x')` for every element.
    pub fn complement_pairs(&self) -> impl Iterator<Item = (&SigmaField, &SigmaField)> {
        self.elements.iter().zip(self.complements.iter().map(|&j| &self.elements[j]))
    }

    pub fn same_elements(&self, other: &AlgebraCandidate) -> bool {
        self.elements == other.elements
    }
}

fn canonical_set(elems: &[SigmaField]) -> Vec<SigmaField> {
    elems.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Checks the five defining properties in order and returns the first
/// violation with its witness.
pub fn validate_noise_type(space: &Space, elems: &[SigmaField]) -> std::result::Result<AlgebraCandidate, Violation> {
    if let Some(bad) = elems.iter().find(|e| !e.space().same_as(space)) {
        return Err(Violation { axiom: Axiom::SameSpace, witness: vec![bad.clone()] });
    }
    let elements = canonical_set(elems);
    let index: HashMap<&SigmaField, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let bottom = SigmaField::bottom(space);
    let top = SigmaField::top(space);
    if !index.contains_key(&bottom) {
        return Err(Violation { axiom: Axiom::ContainsBottom, witness: vec![bottom] });
    }
    if !index.contains_key(&top) {
        return Err(Violation { axiom: Axiom::ContainsTop, witness: vec![top] });
    }
    let n = elements.len();
    let mut meets = vec![0usize; n * n];
    let mut joins = vec![0usize; n * n];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let m = x & y;
            match index.get(&m) {
                Some(&k) => meets[i * n + j] = k,
                None => return Err(Violation { axiom: Axiom::MeetClosed, witness: vec![x.clone(), y.clone()] }),
            }
        }
    }
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let m = x | y;
            match index.get(&m) {
                Some(&k) => joins[i * n + j] = k,
                None => return Err(Violation { axiom: Axiom::JoinClosed, witness: vec![x.clone(), y.clone()] }),
            }
        }
    }
    // With the operation tables in hand, distributivity is index arithmetic.
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = meets[x * n + joins[y * n + z]];
                let rhs = joins[meets[x * n + y] * n + meets[x * n + z]];
                if lhs != rhs {
                    return Err(Violation {
                        axiom: Axiom::Distributive,
                        witness: vec![elements[x].clone(), elements[y].clone(), elements[z].clone()],
                    });
                }
            }
        }
    }
    let (b, t) = (index[&SigmaField::bottom(space)], index[&SigmaField::top(space)]);
    let mut complements = Vec::with_capacity(n);
    for x in 0..n {
        let found: Vec<usize> = (0..n).filter(|&y| meets[x * n + y] == b && joins[x * n + y] == t).collect();
        match found.as_slice() {
            [] => return Err(Violation { axiom: Axiom::ComplementExists, witness: vec![elements[x].clone()] }),
            [y] => complements.push(*y),
            _ => {
                let mut witness = vec![elements[x].clone()];
                witness.extend(found.iter().map(|&y| elements[y].clone()));
                return Err(Violation { axiom: Axiom::ComplementUnique, witness });
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if meets[x * n + y] == b && !is_independent(&elements[x], &elements[y]).expect("elements share the space") {
                return Err(Violation {
                    axiom: Axiom::DisjointIndependent,
                    witness: vec![elements[x].clone(), elements[y].clone()],
                });
            }
        }
    }
    Ok(AlgebraCandidate { space: space.clone(), elements, complements })
}

/// Result of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<Vec<SigmaField>>,
}

impl Check {
    fn new() -> Self {
        Check { holds: true, checked: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<SigmaField>) {
        self.checked += 1;
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(witness());
        }
    }
}

/// `Q_x Q_y = Q_{x∧y}` exactly for every ordered pair of `b`.
///
/// Both sides are compared column by column on the atom indicators, which
/// is the matrix identity without forming the O(n³) product.
pub fn check_algebra_projection_products(b: &AlgebraCandidate) -> Check {
    let n = b.space.atom_count();
    let projections: Vec<CondExp> = b.elements.iter().map(CondExp::new).collect();
    // Column j of Q_y, for every y.
    let columns: Vec<Vec<Vec<Rational>>> = projections
        .iter()
        .map(|q| {
            (0..n).map(|j| q.apply_values(Vector::indicator(&b.space, &[j]).values()).expect("shared space")).collect()
        })
        .collect();
    let mut check = Check::new();
    for (i, x) in b.elements.iter().enumerate() {
        for (j, y) in b.elements.iter().enumerate() {
            let meet = b.index_of(&(x & y)).expect("algebra is meet-closed");
            let equal =
                (0..n).all(|c| projections[i].apply_values(&columns[j][c]).expect("shared space") == columns[meet][c]);
            check.record(equal, || vec![x.clone(), y.clone()]);
        }
    }
    check
}

/// A meet-closed set of σ-fields containing a noise-type algebra; the finite
/// stand-in for the strong-operator closure `Cl(B)`.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    base: AlgebraCandidate,
    elements: Vec<SigmaField>,
    passes: usize,
}

impl ClosureSet {
    /// Wraps an explicit meet-closed superset of `base`.
    pub fn from_elements(base: &AlgebraCandidate, elements: &[SigmaField]) -> Result<Self> {
        let elements = canonical_set(elements);
        for e in &elements {
            base.space.ensure_same(e.space())?;
        }
        let set: HashSet<&SigmaField> = elements.iter().collect();
        if let Some(missing) = base.elements.iter().find(|b| !set.contains(b)) {
            return Err(Error::Precondition(format!("closure set does not contain {missing}")));
        }
        for x in &elements {
            for y in &elements {
                let m = x & y;
                if !set.contains(&m) {
                    return Err(Error::Precondition(format!("closure set is not meet-closed: {x} ∧ {y} = {m}")));
                }
            }
        }
        Ok(ClosureSet { base: base.clone(), elements, passes: 0 })
    }

    pub fn base(&self) -> &AlgebraCandidate {
        &self.base
    }

    pub fn elements(&self) -> &[SigmaField] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &SigmaField) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Fixed-point iterations performed by [`closure`] (0 for explicit sets).
    pub fn passes(&self) -> usize {
        self.passes
    }

    /// True when the closure added nothing to the base algebra.
    pub fn is_collapsed(&self) -> bool {
        self.elements == self.base.elements
    }
}

/// Closes `b` inside `ambient` under pairwise meets and limits of monotone
/// chains. In a finite set every monotone chain is eventually constant, so its
/// limit is one of its terms; only meets can add elements, and `b` is already
/// meet-closed, so the result equals `b`.
///
/// `ambient` must contain `b` and every meet the iteration produces;
/// otherwise [`Error::AmbientNotClosed`] names the missing element.
pub fn closure(b: &AlgebraCandidate, ambient: &[SigmaField]) -> Result<ClosureSet> {
    let ambient: HashSet<&SigmaField> = ambient.iter().collect();
    if let Some(missing) = b.elements.iter().find(|e| !ambient.contains(e)) {
        return Err(Error::AmbientNotClosed(missing.to_string()));
    }
    let mut current: BTreeSet<SigmaField> = b.elements.iter().cloned().collect();
    let mut passes = 0;
    loop {
        passes += 1;
        let snapshot: Vec<SigmaField> = current.iter().cloned().collect();
        let mut added = false;
        for x in &snapshot {
            for y in &snapshot {
                let m = x & y;
                if !ambient.contains(&m) {
                    return Err(Error::AmbientNotClosed(m.to_string()));
                }
                added |= current.insert(m);
            }
        }
        if !added {
            break;
        }
    }
    let cl = ClosureSet { base: b.clone(), elements: current.into_iter().collect(), passes };
    assert!(cl.is_collapsed(), "closure of a finite noise-type algebra must be the algebra itself");
    Ok(cl)
}

/// [`closure`] with the whole lattice Λ as ambient set, without enumerating it.
pub fn closure_in_lattice(b: &AlgebraCandidate) -> ClosureSet {
    let mut current: BTreeSet<SigmaField> = b.elements.iter().cloned().collect();
    let mut passes = 0;
    loop {
        passes += 1;
        let snapshot: Vec<SigmaField> = current.iter().cloned().collect();
        let before = current.len();
        for x in &snapshot {
            for y in &snapshot {
                current.insert(x & y);
            }
        }
        if current.len() == before {
            break;
        }
    }
    let cl = ClosureSet { base: b.clone(), elements: current.into_iter().collect(), passes };
    assert!(cl.is_collapsed(), "closure of a finite noise-type algebra must be the algebra itself");
    cl
}

/// Complements of `x` inside the closure set.
fn complements_in(cl: &ClosureSet, x: &SigmaField) -> Vec<SigmaField> {
    cl.elements.iter().filter(|y| (x & *y).is_bottom() && (x | *y).is_top()).cloned().collect()
}

/// The elements of `cl` having a complement in `cl`. Fails if some element
/// has two complements, which would contradict their uniqueness in `Cl(B)`.
pub fn complemented_elements(cl: &ClosureSet) -> Result<Vec<SigmaField>> {
    let mut out = Vec::new();
    for x in &cl.elements {
        match complements_in(cl, x).len() {
            0 => {}
            1 => out.push(x.clone()),
            found => return Err(Error::ComplementNotUnique { element: x.to_string(), found }),
        }
    }
    Ok(out)
}

/// The completion `C`: elements of `cl` with a (unique) complement in `cl`.
///
/// Asserts `B ⊆ C ⊆ Cl(B)` and that `C` validates as noise-type.
pub fn completion(cl: &ClosureSet) -> Result<AlgebraCandidate> {
    let c = complemented_elements(cl)?;
    if let Some(missing) = cl.base.elements.iter().find(|b| c.binary_search(b).is_err()) {
        return Err(Error::CompletionInvalid(format!("base element {missing} has no complement")));
    }
    validate_noise_type(&cl.base.space, &c).map_err(|v| Error::CompletionInvalid(v.to_string()))
}

/// `x ∨ y ∈ C` and `(x ∨ y)' = x' ∧ y'`.
pub fn check_demorgan(c: &AlgebraCandidate, x: &SigmaField, y: &SigmaField) -> Result<bool> {
    let (Some(xc), Some(yc)) = (c.complement(x), c.complement(y)) else {
        return Err(Error::Precondition("arguments must belong to the algebra".into()));
    };
    let join = x.join(y)?;
    Ok(c.complement(&join).is_some_and(|jc| jc == &(xc & yc)))
}

/// `(x ∨ y) ∧ z = (x ∧ z) ∨ (y ∧ z)` for `x, y ∈ cl`, `z ∈ b`, and
/// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for `x ∈ cl`, `y, z ∈ b`.
pub fn check_mixed_distributivity(cl: &ClosureSet, b: &AlgebraCandidate) -> Check {
    let mut check = Check::new();
    for x in &cl.elements {
        for y in &cl.elements {
            for z in &b.elements {
                let lhs = &(x | y) & z;
                let rhs = &(x & z) | &(y & z);
                check.record(lhs == rhs, || vec![x.clone(), y.clone(), z.clone()]);
            }
        }
        for y in &b.elements {
            for z in &b.elements {
                let lhs = x & &(y | z);
                let rhs = &(x & y) | &(x & z);
                check.record(lhs == rhs, || vec![x.clone(), y.clone(), z.clone()]);
            }
        }
    }
    check
}

/// For complementary `x, y ∈ cl`: `z = (x ∧ z) ∨ (y ∧ z)` for every `z ∈ cl`.
pub fn check_splitting(cl: &ClosureSet, x: &SigmaField, y: &SigmaField) -> Result<Check> {
    if !cl.contains(x) || !cl.contains(y) {
        return Err(Error::Precondition("arguments must belong to the closure set".into()));
    }
    if !x.meet(y)?.is_bottom() || !x.join(y)?.is_top() {
        return Err(Error::Precondition(format!("{x} and {y} are not complementary")));
    }
    let mut check = Check::new();
    for z in &cl.elements {
        check.record(&(&(x & z) | &(y & z)) == z, || vec![z.clone()]);
    }
    Ok(check)
}

/// `x ∨ z ∈ Cl(B)` for all `x ∈ C`, `z ∈ Cl(B)`.
pub fn check_join_stays_in_closure(c: &AlgebraCandidate, cl: &ClosureSet) -> Check {
    let mut check = Check::new();
    for x in &c.elements {
        for z in &cl.elements {
            check.record(cl.contains(&(x | z)), || vec![x.clone(), z.clone()]);
        }
    }
    check
}

/// `(x')' = x`, `x ∧ x' = 0` and `x ∨ x' = 1` for every element.
pub fn check_complement_laws(c: &AlgebraCandidate) -> Check {
    let mut check = Check::new();
    for (x, xc) in c.complement_pairs() {
        let ok = c.complement(xc) == Some(x) && (x & xc).is_bottom() && (x | xc).is_top();
        check.record(ok, || vec![x.clone(), xc.clone()]);
    }
    check
}

/// The completion computed two ways.
#[derive(Debug, Clone)]
pub struct CompletionReport {
    /// Elements of `cl` with a complement in `cl`.
    pub by_complements: Vec<SigmaField>,
    /// The greatest noise-type algebra between `B` and `cl`, from exhaustive
    /// subset search; `None` when `cl` exceeds [`MAXIMALITY_SEARCH_CAP`].
    pub by_maximality: Option<Vec<SigmaField>>,
    /// Number of noise-type algebras found between `B` and `cl`.
    pub algebras_found: usize,
    pub greatest_exists: bool,
    /// The completion equals `B`.
    pub collapsed: bool,
}

impl CompletionReport {
    pub fn coincide(&self) -> Option<bool> {
        self.by_maximality.as_ref().map(|m| self.greatest_exists && m == &self.by_complements)
    }
}

pub fn check_completion_constructions(cl: &ClosureSet) -> Result<CompletionReport> {
    let by_complements = complemented_elements(cl)?;
    let collapsed = by_complements == cl.base.elements;
    if cl.elements.len() > MAXIMALITY_SEARCH_CAP {
        return Ok(CompletionReport {
            by_complements,
            by_maximality: None,
            algebras_found: 0,
            greatest_exists: false,
            collapsed,
        });
    }
    // Only elements with a complement in cl can belong to a Boolean algebra
    // inside cl.
    let optional: Vec<&SigmaField> = by_complements.iter().filter(|x| !cl.base.contains(x)).collect();
    let mut valid: Vec<Vec<SigmaField>> = Vec::new();
    for mask in 0u32..(1u32 << optional.len()) {
        let mut members = cl.base.elements.clone();
        members.extend((0..optional.len()).filter(|i| mask & (1 << i) != 0).map(|i| optional[i].clone()));
        if let Ok(alg) = validate_noise_type(&cl.base.space, &members) {
            valid.push(alg.elements);
        }
    }
    let union: BTreeSet<SigmaField> = valid.iter().flatten().cloned().collect();
    let union: Vec<SigmaField> = union.into_iter().collect();
    let greatest_exists = valid.iter().any(|v| v == &union);
    Ok(CompletionReport {
        by_complements,
        by_maximality: Some(union),
        algebras_found: valid.len(),
        greatest_exists,
        collapsed,
    })
}
