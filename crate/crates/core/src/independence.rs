//! Independence of σ-fields, the tensor factorization of `H_{x∨y}` over an
//! independent pair, and the embedding `Λ_x × Λ_y → Λ`, `(u, v) ↦ u ∨ v`.

use num_traits::Zero;

use crate::lattice::SigmaField;
use crate::linalg::{Matrix, Subspace};
use crate::operator::{CondExp, Vector};
use crate::rational::Rational;
use crate::space::{ProductSpace, Space};
use crate::{Error, Result};

/// `P(A ∩ B) = P(A) P(B)` for every block `A` of `x` and `B` of `y`.
/// Every event of a σ-field is a union of its blocks, so checking blocks
/// decides independence of the whole σ-fields.
pub fn is_independent(x: &SigmaField, y: &SigmaField) -> Result<bool> {
    x.space().ensure_same(y.space())?;
    let space = x.space();
    let (bx, by) = (x.block_count(), y.block_count());
    let mut joint = vec![Rational::zero(); bx * by];
    let mut px = vec![Rational::zero(); bx];
    let mut py = vec![Rational::zero(); by];
    for atom in 0..space.atom_count() {
        let (a, b) = (x.block_of(atom), y.block_of(atom));
        let w = space.weight(atom);
        joint[a * by + b] += w;
        px[a] += w;
        py[b] += w;
    }
    Ok((0..bx).all(|a| (0..by).all(|b| joint[a * by + b] == &px[a] * &py[b])))
}

/// Both sides of "independent ⟺ commuting with trivial meet".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCommutation {
    pub independent: bool,
    pub commuting: bool,
    pub meet_is_bottom: bool,
}

impl IndependenceCommutation {
    pub fn holds(&self) -> bool {
        self.independent == (self.commuting && self.meet_is_bottom)
    }
}

pub fn check_independence_commutation(x: &SigmaField, y: &SigmaField) -> Result<IndependenceCommutation> {
    Ok(IndependenceCommutation {
        independent: is_independent(x, y)?,
        commuting: CondExp::new(x).commutes_with(&CondExp::new(y))?,
        meet_is_bottom: x.meet(y)?.is_bottom(),
    })
}

/// An independent pair `(x, y)`; construction checks independence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentPair {
    x: SigmaField,
    y: SigmaField,
}

impl IndependentPair {
    pub fn new(x: SigmaField, y: SigmaField) -> Result<Self> {
        if !is_independent(&x, &y)? {
            return Err(Error::NotIndependent);
        }
        Ok(IndependentPair { x, y })
    }

    pub fn x(&self) -> &SigmaField {
        &self.x
    }

    pub fn y(&self) -> &SigmaField {
        &self.y
    }

    /// `(u, v) ↦ u ∨ v` for `u ≤ x`, `v ≤ y`.
    pub fn embed(&self, u: &SigmaField, v: &SigmaField) -> Result<SigmaField> {
        if !u.leq(&self.x)? {
            return Err(Error::Precondition(format!("{u} is not below {}", self.x)));
        }
        if !v.leq(&self.y)? {
            return Err(Error::Precondition(format!("{v} is not below {}", self.y)));
        }
        u.join(v)
    }

    /// `z ↦ (z ∧ x, z ∧ y)`, with the membership test
    /// `z ∈ Λ_{x,y} ⟺ z = (z ∧ x) ∨ (z ∧ y)`.
    pub fn split(&self, z: &SigmaField) -> Result<Split> {
        let x_part = z.meet(&self.x)?;
        let y_part = z.meet(&self.y)?;
        let member = &(&x_part | &y_part) == z;
        Ok(Split { x_part, y_part, member })
    }

    /// `split(embed(u, v)) = (u, v)`, with the embedded field a member.
    pub fn roundtrip(&self, u: &SigmaField, v: &SigmaField) -> Result<bool> {
        let s = self.split(&self.embed(u, v)?)?;
        Ok(s.member && &s.x_part == u && &s.y_part == v)
    }

    /// Checks, for members `z₁, z₂` of `Λ_{x,y}` with parts `uᵢ = zᵢ ∧ x`,
    /// `vᵢ = zᵢ ∧ y`:
    ///
    /// * `(z₁ ∨ z₂) ∧ x = u₁ ∨ u₂` and the same with `y`;
    /// * `(z₁ ∧ z₂) ∧ x = u₁ ∧ u₂` and the same with `y`;
    /// * `(u₁ ∨ v₁) ∨ (u₂ ∨ v₂) = (u₁ ∨ u₂) ∨ (v₁ ∨ v₂)`;
    /// * `(u₁ ∨ v₁) ∧ (u₂ ∨ v₂) = (u₁ ∧ u₂) ∨ (v₁ ∧ v₂)`.
    pub fn check_homomorphism(&self, z1: &SigmaField, z2: &SigmaField) -> Result<bool> {
        let s1 = self.split(z1)?;
        let s2 = self.split(z2)?;
        if !s1.member || !s2.member {
            return Err(Error::Precondition("argument is not in Λ_{x,y}".into()));
        }
        let (u1, v1, u2, v2) = (&s1.x_part, &s1.y_part, &s2.x_part, &s2.y_part);
        let join = z1 | z2;
        let meet = z1 & z2;
        let restrictions = (&join & &self.x) == (u1 | u2)
            && (&join & &self.y) == (v1 | v2)
            && (&meet & &self.x) == (u1 & u2)
            && (&meet & &self.y) == (v1 & v2);
        let lhs_join = &(u1 | v1) | &(u2 | v2);
        let rhs_join = &(u1 | u2) | &(v1 | v2);
        let lhs_meet = &(u1 | v1) & &(u2 | v2);
        let rhs_meet = &(u1 & u2) | &(v1 & v2);
        Ok(restrictions && lhs_join == rhs_join && lhs_meet == rhs_meet)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub x_part: SigmaField,
    pub y_part: SigmaField,
    pub member: bool,
}

/// Verification of `H_x ⊗ H_y ≅ H_{x∨y}` through `(f ⊗ g)(ω) = f(ω) g(ω)`
/// on block indicators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorReport {
    pub products: usize,
    pub join_dim: usize,
    pub rank: usize,
    /// Every product is measurable for `x ∨ y`.
    pub in_join: bool,
    /// `⟨f⊗g, f'⊗g'⟩ = ⟨f,f'⟩⟨g,g'⟩` on all indicator pairs.
    pub unitary: bool,
}

impl TensorReport {
    /// The products form a basis of `H_{x∨y}` and the map is unitary.
    pub fn holds(&self) -> bool {
        self.in_join && self.products == self.join_dim && self.rank == self.join_dim && self.unitary
    }
}

pub fn tensor_factor_check(pair: &IndependentPair) -> Result<TensorReport> {
    let space = pair.x.space();
    let fx: Vec<Vector> = pair.x.blocks().iter().map(|b| Vector::indicator(space, b)).collect();
    let gy: Vec<Vector> = pair.y.blocks().iter().map(|b| Vector::indicator(space, b)).collect();
    let join = &pair.x | &pair.y;
    let q_join = CondExp::new(&join);

    let mut products = Vec::with_capacity(fx.len() * gy.len());
    for f in &fx {
        for g in &gy {
            products.push((f, g, f.pointwise(g)?));
        }
    }
    let mut in_join = true;
    for (_, _, p) in &products {
        in_join &= &q_join.apply(p)? == p;
    }
    let rows: Vec<Vec<Rational>> = products.iter().map(|(_, _, p)| p.values().to_vec()).collect();
    let rank = Matrix::from_rows(&rows)?.rank();
    let mut unitary = true;
    'outer: for (f, g, p) in &products {
        for (f2, g2, p2) in &products {
            if p.inner(p2)? != f.inner(f2)? * g.inner(g2)? {
                unitary = false;
                break 'outer;
            }
        }
    }
    Ok(TensorReport { products: products.len(), join_dim: join.block_count(), rank, in_join, unitary })
}

/// Four subspaces `H_{1a}, H_{1b} ⊂ ℚ^{n₁}` and `H_{2a}, H_{2b} ⊂ ℚ^{n₂}`.
#[derive(Debug, Clone)]
pub struct SubspaceQuadruple {
    pub first_a: Subspace,
    pub first_b: Subspace,
    pub second_a: Subspace,
    pub second_b: Subspace,
}

#[derive(Debug, Clone)]
pub struct TensorIntersection {
    /// `(H_{1a} ⊗ H_{2a}) ∩ (H_{1b} ⊗ H_{2b})`.
    pub lhs: Subspace,
    /// `(H_{1a} ∩ H_{1b}) ⊗ (H_{2a} ∩ H_{2b})`.
    pub rhs: Subspace,
}

impl TensorIntersection {
    pub fn holds(&self) -> bool {
        self.lhs.dim() == self.rhs.dim()
            && self.lhs.contains_subspace(&self.rhs)
            && self.rhs.contains_subspace(&self.lhs)
    }
}

/// Computes both sides of the tensor-intersection identity on `L₂(s₁ × s₂)`,
/// with product coordinates ordered as in [`crate::space::product_space`].
pub fn tensor_intersection(s1: &Space, s2: &Space, q: &SubspaceQuadruple) -> Result<TensorIntersection> {
    for (sub, space) in [(&q.first_a, s1), (&q.first_b, s1), (&q.second_a, s2), (&q.second_b, s2)] {
        if sub.ambient_dim() != space.atom_count() {
            return Err(Error::DimensionMismatch { expected: space.atom_count(), got: sub.ambient_dim() });
        }
    }
    let lhs = q.first_a.tensor(&q.second_a).intersect(&q.first_b.tensor(&q.second_b))?;
    let rhs = q.first_a.intersect(&q.first_b)?.tensor(&q.second_a.intersect(&q.second_b)?);
    Ok(TensorIntersection { lhs, rhs })
}

pub fn check_tensor_intersection(s1: &Space, s2: &Space, q: &SubspaceQuadruple) -> Result<bool> {
    Ok(tensor_intersection(s1, s2, q)?.holds())
}

/// The coordinate σ-fields of a product space, which are independent.
pub fn coordinate_fields(p: &ProductSpace) -> (SigmaField, SigmaField) {
    let first = SigmaField::from_keys(&p.space, p.first.iter().copied());
    let second = SigmaField::from_keys(&p.space, p.second.iter().copied());
    (first, second)
}
