//! The lattice of sub-σ-fields of a finite space, realized as the partition
//! lattice of its atoms.
//!
//! `x ≤ y` means `x` is coarser: every block of `x` is a union of blocks of
//! `y`. The bottom element is the single-block partition (the trivial σ-field)
//! and the top element is the partition into singletons (all events).
//!
//! Partitions are stored as restricted growth strings: atom `i` carries the
//! index of its block, and blocks are numbered in order of their smallest atom.
//! That labelling is unique per partition, so derived equality and hashing are
//! exact partition equality.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr};

use crate::space::{Event, Space};
use crate::{Error, Result};

/// Largest atom count [`enumerate_lattice`] accepts by default (Bell(10) = 115975).
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

#[derive(Clone)]
pub struct SigmaField {
    space: Space,
    labels: Vec<usize>,
    block_count: usize,
}

impl SigmaField {
    /// Builds the partition in which atoms with equal keys share a block.
    pub(crate) fn from_keys<K: Eq + Hash>(space: &Space, keys: impl IntoIterator<Item = K>) -> Self {
        let mut seen: HashMap<K, usize> = HashMap::new();
        let labels: Vec<usize> = keys
            .into_iter()
            .map(|k| {
                let next = seen.len();
                *seen.entry(k).or_insert(next)
            })
            .collect();
        debug_assert_eq!(labels.len(), space.atom_count());
        SigmaField { space: space.clone(), labels, block_count: seen.len() }
    }

    /// Canonicalizes dense block ids (each in `0..bound`).
    fn from_dense(space: &Space, ids: &[usize], bound: usize) -> Self {
        let mut relabel = vec![usize::MAX; bound];
        let mut next = 0;
        let labels = ids
            .iter()
            .map(|&id| {
                if relabel[id] == usize::MAX {
                    relabel[id] = next;
                    next += 1;
                }
                relabel[id]
            })
            .collect();
        SigmaField { space: space.clone(), labels, block_count: next }
    }

    pub fn from_blocks<B: AsRef<[usize]>>(space: &Space, blocks: &[B]) -> Result<Self> {
        let n = space.atom_count();
        let mut ids = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &atom in block {
                if atom >= n {
                    return Err(Error::AtomOutOfRange { atom, atom_count: n });
                }
                if ids[atom] != usize::MAX {
                    return Err(Error::BlockOverlap { atom });
                }
                ids[atom] = b;
            }
        }
        if let Some(atom) = ids.iter().position(|&id| id == usize::MAX) {
            return Err(Error::BlockGap { atom });
        }
        Ok(Self::from_dense(space, &ids, blocks.len()))
    }

    /// Arbitrary per-atom block ids; atoms with equal ids share a block.
    pub fn from_labels(space: &Space, labels: &[usize]) -> Result<Self> {
        if labels.len() != space.atom_count() {
            return Err(Error::LengthMismatch { expected: space.atom_count(), got: labels.len() });
        }
        Ok(Self::from_keys(space, labels.iter().copied()))
    }

    /// The trivial σ-field.
    pub fn bottom(space: &Space) -> Self {
        SigmaField { space: space.clone(), labels: vec![0; space.atom_count()], block_count: 1 }
    }

    /// The σ-field of all events.
    pub fn top(space: &Space) -> Self {
        let n = space.atom_count();
        SigmaField { space: space.clone(), labels: (0..n).collect(), block_count: n }
    }

    /// The smallest σ-field containing every event: atoms are separated
    /// exactly when some event contains one but not the other.
    pub fn generated_by(space: &Space, events: &[Event]) -> Result<Self> {
        let n = space.atom_count();
        for e in events {
            if let Some(&atom) = e.atoms().iter().find(|&&a| a >= n) {
                return Err(Error::AtomOutOfRange { atom, atom_count: n });
            }
        }
        let signature = |atom: usize| -> Vec<bool> { events.iter().map(|e| e.contains(atom)).collect() };
        Ok(Self::from_keys(space, (0..n).map(signature)))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn atom_count(&self) -> usize {
        self.labels.len()
    }

    /// Canonical block index of every atom.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, atom: usize) -> usize {
        self.labels[atom]
    }

    /// Number of blocks, which is also the dimension of the type-L₂ subspace.
    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (atom, &b) in self.labels.iter().enumerate() {
            blocks[b].push(atom);
        }
        blocks
    }

    pub fn block_events(&self) -> Vec<Event> {
        let n = self.atom_count();
        self.blocks().into_iter().map(|b| Event::new(n, b).expect("block atoms are in range")).collect()
    }

    pub fn is_bottom(&self) -> bool {
        self.block_count == 1
    }

    pub fn is_top(&self) -> bool {
        self.block_count == self.atom_count()
    }

    fn ensure_same(&self, other: &SigmaField) -> Result<()> {
        self.space.ensure_same(&other.space)
    }

    /// `self ≤ other`: `self` is coarser than or equal to `other`.
    pub fn leq(&self, other: &SigmaField) -> Result<bool> {
        self.ensure_same(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &SigmaField) -> bool {
        if self.block_count > other.block_count {
            return false;
        }
        let mut image = vec![usize::MAX; other.block_count];
        for (&mine, &theirs) in self.labels.iter().zip(&other.labels) {
            match image[theirs] {
                usize::MAX => image[theirs] = mine,
                seen if seen != mine => return false,
                _ => {}
            }
        }
        true
    }

    /// Strictly coarser.
    pub fn lt(&self, other: &SigmaField) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }

    /// Intersection of σ-fields: connected components of the union of both
    /// block relations.
    pub fn meet(&self, other: &SigmaField) -> Result<SigmaField> {
        self.ensure_same(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &SigmaField) -> SigmaField {
        let n = self.atom_count();
        let mut sets = DisjointSets::new(n);
        for (field, count) in [(self, self.block_count), (other, other.block_count)] {
            let mut first = vec![usize::MAX; count];
            for (atom, &b) in field.labels.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = atom;
                } else {
                    sets.union(first[b], atom);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|a| sets.find(a)).collect();
        Self::from_dense(&self.space, &roots, n)
    }

    /// σ-field generated by both: blocks are the nonempty pairwise
    /// intersections of blocks.
    pub fn join(&self, other: &SigmaField) -> Result<SigmaField> {
        self.ensure_same(other)?;
        Ok(self.join_unchecked(other))
    }

    pub(crate) fn join_unchecked(&self, other: &SigmaField) -> SigmaField {
        let width = other.block_count;
        let ids: Vec<usize> = self.labels.iter().zip(&other.labels).map(|(&a, &b)| a * width + b).collect();
        Self::from_dense(&self.space, &ids, self.block_count * width)
    }

    /// Applies an atom permutation: atom `i` of `self` becomes atom `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SigmaField> {
        let n = self.atom_count();
        if perm.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: perm.len() });
        }
        let mut ids = vec![usize::MAX; n];
        for (atom, &target) in perm.iter().enumerate() {
            if target >= n {
                return Err(Error::AtomOutOfRange { atom: target, atom_count: n });
            }
            if ids[target] != usize::MAX {
                return Err(Error::Precondition("relabeling is not a permutation".into()));
            }
            ids[target] = self.labels[atom];
        }
        Ok(Self::from_dense(&self.space, &ids, self.block_count))
    }

    /// Renders blocks with the given atom names (`a c | b d` style).
    pub fn display_with(&self, names: &[String]) -> String {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter().map(|&a| names.get(a).cloned().unwrap_or_else(|| a.to_string())).collect::<Vec<_>>().join(" ")
            })
            .collect();
        format!("[{}]", blocks.join(" | "))
    }
}

impl PartialEq for SigmaField {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.space.same_as(&other.space)
    }
}

impl Eq for SigmaField {}

impl Hash for SigmaField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.labels.hash(state);
    }
}

impl PartialOrd for SigmaField {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order for sorting and set storage (coarse fields first). This is
/// not the refinement order; use [`SigmaField::leq`] for that.
impl Ord for SigmaField {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.block_count
            .cmp(&other.block_count)
            .then_with(|| self.labels.cmp(&other.labels))
            .then_with(|| self.space.cmp(&other.space))
    }
}

impl fmt::Debug for SigmaField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SigmaField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

/// Meet. Panics if the operands live on different spaces.
impl BitAnd for &SigmaField {
    type Output = SigmaField;

    fn bitand(self, rhs: &SigmaField) -> SigmaField {
        self.meet(rhs).expect("meet of σ-fields on different spaces")
    }
}

/// Join. Panics if the operands live on different spaces.
impl BitOr for &SigmaField {
    type Output = SigmaField;

    fn bitor(self, rhs: &SigmaField) -> SigmaField {
        self.join(rhs).expect("join of σ-fields on different spaces")
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

pub fn inf_family(fields: &[SigmaField]) -> Result<SigmaField> {
    let (first, rest) = fields.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.meet(f))
}

pub fn sup_family(fields: &[SigmaField]) -> Result<SigmaField> {
    let (first, rest) = fields.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.join(f))
}

/// A finite sequence read as eventually constant at its last term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSequence {
    terms: Vec<SigmaField>,
}

impl FieldSequence {
    pub fn new(terms: Vec<SigmaField>) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptyFamily)?;
        for t in &terms[1..] {
            first.ensure_same(t)?;
        }
        Ok(FieldSequence { terms })
    }

    pub fn terms(&self) -> &[SigmaField] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The eventual value.
    pub fn limit(&self) -> &SigmaField {
        self.terms.last().expect("sequence is nonempty")
    }

    /// Subsequence at the given increasing indices; the constant tail is
    /// inherited so the index list should end at the last term.
    pub fn subsequence(&self, indices: &[usize]) -> Result<FieldSequence> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("subsequence indices must increase".into()));
        }
        let terms = indices
            .iter()
            .map(|&i| {
                self.terms
                    .get(i)
                    .cloned()
                    .ok_or(Error::Precondition(format!("index {i} beyond sequence of length {}", self.terms.len())))
            })
            .collect::<Result<Vec<_>>>()?;
        FieldSequence::new(terms)
    }

    /// `sup_n inf_{k ≥ n} x_k`. Tails past the last term repeat it, so only
    /// the finite tails need to be visited.
    pub fn liminf(&self) -> SigmaField {
        let tail_infs = self.tail_fold(|a, b| a.meet_unchecked(b));
        tail_infs.iter().skip(1).fold(tail_infs[0].clone(), |acc, t| acc.join_unchecked(t))
    }

    /// `inf_n sup_{k ≥ n} x_k`.
    pub fn limsup(&self) -> SigmaField {
        let tail_sups = self.tail_fold(|a, b| a.join_unchecked(b));
        tail_sups.iter().skip(1).fold(tail_sups[0].clone(), |acc, t| acc.meet_unchecked(t))
    }

    /// Folds every tail `terms[n..]` from the back.
    fn tail_fold(&self, op: impl Fn(&SigmaField, &SigmaField) -> SigmaField) -> Vec<SigmaField> {
        let mut out: Vec<SigmaField> = Vec::with_capacity(self.terms.len());
        for t in self.terms.iter().rev() {
            let next = match out.last() {
                Some(acc) => op(t, acc),
                None => t.clone(),
            };
            out.push(next);
        }
        out.reverse();
        out
    }
}

/// Bell numbers up to `n`.
pub fn bell_number(n: usize) -> u64 {
    // Bell triangle.
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

pub fn enumerate_lattice(space: &Space) -> Result<Vec<SigmaField>> {
    enumerate_lattice_capped(space, DEFAULT_ENUMERATION_CAP)
}

/// Every partition of the atoms, generated as restricted growth strings in
/// lexicographic order.
pub fn enumerate_lattice_capped(space: &Space, cap: usize) -> Result<Vec<SigmaField>> {
    let n = space.atom_count();
    if n > cap {
        return Err(Error::EnumerationCap { atoms: n, cap });
    }
    let mut out = Vec::with_capacity(bell_number(n) as usize);
    let mut rgs = vec![0usize; n];
    // prefix_max[i] = max(rgs[0..i]), so rgs[i] ≤ prefix_max[i] + 1.
    let mut prefix_max = vec![0usize; n];
    loop {
        let block_count = rgs.iter().max().map_or(0, |m| m + 1);
        out.push(SigmaField { space: space.clone(), labels: rgs.clone(), block_count });
        // Find the rightmost position that can be incremented.
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            if rgs[i] <= prefix_max[i] {
                break;
            }
        }
        rgs[i] += 1;
        let running = prefix_max[i].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            prefix_max[j] = running;
        }
    }
}

/// An N₅ sublattice `bottom < low < high < top` with `side` incomparable to
/// both, `low ∧ side = high ∧ side = bottom` and `low ∨ side = high ∨ side = top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pentagon {
    pub bottom: SigmaField,
    pub low: SigmaField,
    pub high: SigmaField,
    pub side: SigmaField,
    pub top: SigmaField,
}

/// An M₃ sublattice: three pairwise incomparable elements with common
/// pairwise meet `bottom` and common pairwise join `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub bottom: SigmaField,
    pub atoms: [SigmaField; 3],
    pub top: SigmaField,
}

#[derive(Debug, Clone)]
pub struct ModularityReport {
    pub size: usize,
    pub modular: bool,
    pub distributive: bool,
    /// `(x, y, z)` with `x ≤ z` and `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`.
    pub modular_violation: Option<[SigmaField; 3]>,
    /// `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub distributive_violation: Option<[SigmaField; 3]>,
    pub pentagon: Option<Pentagon>,
    pub diamond: Option<Diamond>,
}

/// Checks the modular and distributive laws over all triples of `lattice`
/// and searches it for N₅ and M₃ sublattices. The list is expected to be
/// closed under meet and join; all fields must share one space.
pub fn check_modularity(lattice: &[SigmaField]) -> Result<ModularityReport> {
    if let Some(first) = lattice.first() {
        for f in lattice {
            first.ensure_same(f)?;
        }
    }
    let mut modular_violation = None;
    let mut distributive_violation = None;
    'outer: for x in lattice {
        for y in lattice {
            for z in lattice {
                if modular_violation.is_none() && x.leq_unchecked(z) {
                    let lhs = x.join_unchecked(&y.meet_unchecked(z));
                    let rhs = x.join_unchecked(y).meet_unchecked(z);
                    if lhs != rhs {
                        modular_violation = Some([x.clone(), y.clone(), z.clone()]);
                    }
                }
                if distributive_violation.is_none() {
                    let lhs = x.meet_unchecked(&y.join_unchecked(z));
                    let rhs = x.meet_unchecked(y).join_unchecked(&x.meet_unchecked(z));
                    if lhs != rhs {
                        distributive_violation = Some([x.clone(), y.clone(), z.clone()]);
                    }
                }
                if modular_violation.is_some() && distributive_violation.is_some() {
                    break 'outer;
                }
            }
        }
    }
    Ok(ModularityReport {
        size: lattice.len(),
        modular: modular_violation.is_none(),
        distributive: distributive_violation.is_none(),
        modular_violation,
        distributive_violation,
        pentagon: pentagons(lattice).into_iter().next(),
        diamond: diamonds(lattice).into_iter().next(),
    })
}

fn comparable(a: &SigmaField, b: &SigmaField) -> bool {
    a.leq_unchecked(b) || b.leq_unchecked(a)
}

/// All N₅ sublattices of `lattice`.
pub fn pentagons(lattice: &[SigmaField]) -> Vec<Pentagon> {
    let mut out = Vec::new();
    for low in lattice {
        for high in lattice {
            if low == high || !low.leq_unchecked(high) {
                continue;
            }
            for side in lattice {
                if comparable(side, low) || comparable(side, high) {
                    continue;
                }
                let bottom = low.meet_unchecked(side);
                let top = high.join_unchecked(side);
                if high.meet_unchecked(side) == bottom && low.join_unchecked(side) == top {
                    out.push(Pentagon { bottom, low: low.clone(), high: high.clone(), side: side.clone(), top });
                }
            }
        }
    }
    out
}

/// All M₃ sublattices of `lattice`, each reported once.
pub fn diamonds(lattice: &[SigmaField]) -> Vec<Diamond> {
    let mut out = Vec::new();
    for (i, a) in lattice.iter().enumerate() {
        for (j, b) in lattice.iter().enumerate().skip(i + 1) {
            if comparable(a, b) {
                continue;
            }
            let bottom = a.meet_unchecked(b);
            let top = a.join_unchecked(b);
            for c in lattice.iter().skip(j + 1) {
                if comparable(a, c) || comparable(b, c) {
                    continue;
                }
                if a.meet_unchecked(c) == bottom
                    && b.meet_unchecked(c) == bottom
                    && a.join_unchecked(c) == top
                    && b.join_unchecked(c) == top
                {
                    out.push(Diamond {
                        bottom: bottom.clone(),
                        atoms: [a.clone(), b.clone(), c.clone()],
                        top: top.clone(),
                    });
                }
            }
        }
    }
    out
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            let swap = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(swap, k - 1);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}
