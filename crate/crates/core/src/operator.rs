//! Conditional expectations as orthogonal projections of `L₂(P)`.
//!
//! Vectors are functions on atoms with the weighted inner product
//! `⟨f, g⟩ = Σ wᵢ fᵢ gᵢ`. The conditional expectation onto a σ-field averages
//! a function over each block with the atom weights; it is the orthogonal
//! projection onto the block-constant functions.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::lattice::SigmaField;
use crate::linalg::Matrix;
use crate::rational::{self, Rational};
use crate::space::Space;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    space: Space,
    values: Vec<Rational>,
}

impl Vector {
    pub fn new(space: &Space, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.atom_count() {
            return Err(Error::LengthMismatch { expected: space.atom_count(), got: values.len() });
        }
        Ok(Vector { space: space.clone(), values })
    }

    pub fn constant(space: &Space, c: Rational) -> Self {
        Vector { space: space.clone(), values: vec![c; space.atom_count()] }
    }

    pub fn indicator(space: &Space, atoms: &[usize]) -> Self {
        let mut values = vec![Rational::zero(); space.atom_count()];
        for &a in atoms {
            values[a] = Rational::one();
        }
        Vector { space: space.clone(), values }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn inner(&self, other: &Vector) -> Result<Rational> {
        self.space.ensure_same(&other.space)?;
        Ok(weighted_inner(&self.space, &self.values, &other.values))
    }

    pub fn norm_sq(&self) -> Rational {
        weighted_inner(&self.space, &self.values, &self.values)
    }

    /// Pointwise product `(f g)(ω) = f(ω) g(ω)`.
    pub fn pointwise(&self, other: &Vector) -> Result<Vector> {
        self.space.ensure_same(&other.space)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Vector { space: self.space.clone(), values })
    }
}

pub(crate) fn weighted_inner(space: &Space, f: &[Rational], g: &[Rational]) -> Rational {
    space
        .weights()
        .iter()
        .zip(f.iter().zip(g))
        .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
        .map(|(w, (a, b))| w * a * b)
        .sum()
}

/// The projection `Q_x` onto `H_x = L₂(F_x)`.
///
/// Applying it averages over blocks in O(n); the dense matrix is built only
/// when asked for.
#[derive(Debug, Clone)]
pub struct CondExp {
    field: SigmaField,
    block_mass: Vec<Rational>,
    matrix: OnceLock<Matrix>,
}

pub fn cond_exp(x: &SigmaField) -> CondExp {
    CondExp::new(x)
}

impl CondExp {
    pub fn new(field: &SigmaField) -> Self {
        let space = field.space();
        let mut block_mass = vec![Rational::zero(); field.block_count()];
        for (atom, &b) in field.labels().iter().enumerate() {
            block_mass[b] += space.weight(atom);
        }
        CondExp { field: field.clone(), block_mass, matrix: OnceLock::new() }
    }

    pub fn field(&self) -> &SigmaField {
        &self.field
    }

    /// `(Qf)(i) = Σ_{j ∈ block(i)} wⱼ fⱼ / Σ_{j ∈ block(i)} wⱼ`.
    pub fn apply_values(&self, f: &[Rational]) -> Result<Vec<Rational>> {
        let space = self.field.space();
        if f.len() != space.atom_count() {
            return Err(Error::LengthMismatch { expected: space.atom_count(), got: f.len() });
        }
        let mut sums = vec![Rational::zero(); self.field.block_count()];
        for (atom, &b) in self.field.labels().iter().enumerate() {
            if !f[atom].is_zero() {
                sums[b] += space.weight(atom) * &f[atom];
            }
        }
        let means: Vec<Rational> = sums.iter().zip(&self.block_mass).map(|(s, m)| s / m).collect();
        Ok(self.field.labels().iter().map(|&b| means[b].clone()).collect())
    }

    pub fn apply(&self, f: &Vector) -> Result<Vector> {
        self.field.space().ensure_same(f.space())?;
        Ok(Vector { space: f.space().clone(), values: self.apply_values(&f.values)? })
    }

    /// Dense matrix: entry `(i, j)` is `wⱼ / P(block(i))` when `i, j` share a block.
    pub fn matrix(&self) -> &Matrix {
        self.matrix.get_or_init(|| {
            let space = self.field.space();
            let n = space.atom_count();
            let labels = self.field.labels();
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if labels[i] == labels[j] {
                        m.set(i, j, space.weight(j) / &self.block_mass[labels[i]]);
                    }
                }
            }
            m
        })
    }

    /// `Q_self Q_other`, computed by averaging each column of `Q_other`.
    pub fn compose(&self, other: &CondExp) -> Result<Matrix> {
        self.field.space().ensure_same(other.field.space())?;
        let rhs = other.matrix();
        let n = rhs.rows();
        let mut out = Matrix::zeros(n, n);
        let mut column = vec![Rational::zero(); n];
        for j in 0..n {
            for (i, c) in column.iter_mut().enumerate() {
                c.clone_from(rhs.get(i, j));
            }
            for (i, v) in self.apply_values(&column)?.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn commutes_with(&self, other: &CondExp) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).map(|m| &m == self.matrix()).unwrap_or(false)
    }

    /// `⟨Qf, g⟩ = ⟨f, Qg⟩`, i.e. `W Q = Qᵀ W` with `W = diag(w)`.
    pub fn is_self_adjoint(&self) -> bool {
        let space = self.field.space();
        let m = self.matrix();
        let n = space.atom_count();
        (0..n).all(|i| (0..n).all(|j| space.weight(i) * m.get(i, j) == space.weight(j) * m.get(j, i)))
    }

    pub fn fixes_constants(&self) -> bool {
        let ones = vec![Rational::one(); self.field.atom_count()];
        self.matrix().mul_vec(&ones).map(|v| v == ones).unwrap_or(false)
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }
}

pub fn commutes(x: &SigmaField, y: &SigmaField) -> Result<bool> {
    CondExp::new(x).commutes_with(&CondExp::new(y))
}

/// For commuting `x, y`, checks `Q_x Q_y = Q_{x∧y}`.
pub fn check_projection_product(x: &SigmaField, y: &SigmaField) -> Result<bool> {
    let (qx, qy) = (CondExp::new(x), CondExp::new(y));
    if !qx.commutes_with(&qy)? {
        return Err(Error::NotCommuting);
    }
    Ok(&qx.compose(&qy)? == CondExp::new(&x.meet(y)?).matrix())
}

/// Outcome of asking which σ-field a subspace comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceField {
    /// The span of the basis and constants is exactly `H_x`.
    TypeL2(SigmaField),
    /// The span is a proper subspace of `H_x` for the level-set partition
    /// `field`; `field_dim - span_dim` is the gap.
    NotTypeL2 { field: SigmaField, span_dim: usize, field_dim: usize },
}

/// Recovers the σ-field of a type-L₂ subspace given by spanning vectors.
///
/// The partition generated by the level sets of the vectors is the smallest
/// σ-field making them measurable; the span (with constants) is type L₂
/// exactly when its dimension reaches that field's block count.
pub fn field_of_subspace(space: &Space, basis: &[Vector]) -> Result<SubspaceField> {
    for v in basis {
        space.ensure_same(v.space())?;
    }
    let n = space.atom_count();
    let field = SigmaField::from_keys(space, (0..n).map(|i| basis.iter().map(|v| &v.values[i]).collect::<Vec<_>>()));
    let mut rows: Vec<Vec<Rational>> = basis.iter().map(|v| v.values.clone()).collect();
    rows.push(vec![Rational::one(); n]);
    let span_dim = Matrix::from_rows(&rows)?.rank();
    let field_dim = field.block_count();
    if span_dim == field_dim {
        Ok(SubspaceField::TypeL2(field))
    } else {
        Ok(SubspaceField::NotTypeL2 { field, span_dim, field_dim })
    }
}

/// Atom indicators: the block indicators of the top σ-field.
pub fn default_probes(space: &Space) -> Vec<Vector> {
    (0..space.atom_count()).map(|a| Vector::indicator(space, &[a])).collect()
}

/// Exact `‖(Q_x − Q_y) ψ_k‖² / ‖ψ_k‖²` for every probe.
///
/// Uses `‖Q_x f − Q_y f‖² = ‖Q_x f‖² + ‖Q_y f‖² − 2⟨Q_x f, Q_y f⟩`, where the
/// cross term is a sum over the cells `B ∩ C` of the two partitions. Only the
/// blocks meeting the support of a probe are visited, so sparse probes cost
/// time proportional to their support.
pub fn op_distance_terms(x: &SigmaField, y: &SigmaField, probes: &[Vector]) -> Result<Vec<Rational>> {
    x.space().ensure_same(y.space())?;
    if probes.is_empty() {
        return Err(Error::NoProbes);
    }
    let space = x.space();
    let (lx, ly) = (x.labels(), y.labels());
    let (qx, qy) = (CondExp::new(x), CondExp::new(y));
    let mut cell_mass: HashMap<(usize, usize), Rational> = HashMap::new();
    for atom in 0..space.atom_count() {
        *cell_mass.entry((lx[atom], ly[atom])).or_insert_with(Rational::zero) += space.weight(atom);
    }
    let mut cells_of_x: Vec<Vec<usize>> = vec![Vec::new(); x.block_count()];
    for &(bx, by) in cell_mass.keys() {
        cells_of_x[bx].push(by);
    }

    probes
        .iter()
        .map(|p| {
            space.ensure_same(p.space())?;
            let norm = p.norm_sq();
            if norm.is_zero() {
                return Err(Error::ZeroProbe);
            }
            // Block sums Σ_{j∈B} w_j f_j over the blocks meeting the support.
            let mut sx: HashMap<usize, Rational> = HashMap::new();
            let mut sy: HashMap<usize, Rational> = HashMap::new();
            for (atom, f) in p.values.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let wf = space.weight(atom) * f;
                *sx.entry(lx[atom]).or_insert_with(Rational::zero) += &wf;
                *sy.entry(ly[atom]).or_insert_with(Rational::zero) += wf;
            }
            let mx: HashMap<usize, Rational> = sx.iter().map(|(&b, s)| (b, s / &qx.block_mass[b])).collect();
            let my: HashMap<usize, Rational> = sy.iter().map(|(&b, s)| (b, s / &qy.block_mass[b])).collect();
            // P(B) m_B² = s_B m_B.
            let nx: Rational = sx.iter().map(|(b, s)| s * &mx[b]).sum();
            let ny: Rational = sy.iter().map(|(b, s)| s * &my[b]).sum();
            let mut cross = Rational::zero();
            let via_cells: usize = mx.keys().map(|&b| cells_of_x[b].len()).sum();
            if via_cells <= mx.len() * my.len() {
                for (&bx, m) in &mx {
                    for by in &cells_of_x[bx] {
                        if let Some(m2) = my.get(by) {
                            cross += &cell_mass[&(bx, *by)] * m * m2;
                        }
                    }
                }
            } else {
                for (&bx, m) in &mx {
                    for (&by, m2) in &my {
                        if let Some(mass) = cell_mass.get(&(bx, by)) {
                            cross += mass * m * m2;
                        }
                    }
                }
            }
            Ok((nx + ny - cross * rational::int(2)) / norm)
        })
        .collect()
}

/// `Σ_k 2^{-k} ‖(Q_x − Q_y) ψ_k‖` over normalized probes, `k = 1, 2, …`.
///
/// A metric for the strong operator topology on projections when the probes
/// span `H`. Probes are normalized internally.
pub fn op_distance(x: &SigmaField, y: &SigmaField, probes: &[Vector]) -> Result<f64> {
    let terms = op_distance_terms(x, y, probes)?;
    let mut scale = 0.5f64;
    let mut total = 0.0;
    for t in &terms {
        total += scale * rational::to_f64(t).sqrt();
        scale *= 0.5;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn u4() -> Space {
        Space::uniform(4).unwrap()
    }

    fn w4() -> Space {
        Space::new(vec![ratio(1, 10), ratio(2, 10), ratio(3, 10), ratio(4, 10)]).unwrap()
    }

    fn field(s: &Space, blocks: &[&[usize]]) -> SigmaField {
        SigmaField::from_blocks(s, blocks).unwrap()
    }

    fn vec_of(s: &Space, v: &[i64]) -> Vector {
        Vector::new(s, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn bottom_is_mean_projection() {
        let s = w4();
        let q = cond_exp(&SigmaField::bottom(&s));
        let f = vec_of(&s, &[10, 0, 0, 0]);
        assert_eq!(q.apply(&f).unwrap().values(), &vec![int(1); 4][..]);
        assert_eq!(q.rank(), 1);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q.matrix().get(i, j), s.weight(j));
            }
        }
    }

    #[test]
    fn top_is_identity() {
        let s = w4();
        assert_eq!(cond_exp(&SigmaField::top(&s)).matrix(), &Matrix::identity(4));
    }

    #[test]
    fn block_averaging_matrix() {
        let s = u4();
        let v = field(&s, &[&[0, 1], &[2, 3]]);
        let m = cond_exp(&v).matrix().clone();
        let h = ratio(1, 2);
        let z = ratio(0, 1);
        let expected = Matrix::from_rows(&[
            vec![h.clone(), h.clone(), z.clone(), z.clone()],
            vec![h.clone(), h.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), h.clone(), h.clone()],
            vec![z.clone(), z.clone(), h.clone(), h.clone()],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn projection_invariants() {
        let s = w4();
        for x in crate::lattice::enumerate_lattice(&s).unwrap() {
            let q = cond_exp(&x);
            assert!(q.is_idempotent());
            assert!(q.is_self_adjoint());
            assert!(q.fixes_constants());
            assert_eq!(q.rank(), x.block_count());
            let f = vec_of(&s, &[3, -1, 4, 1]);
            assert_eq!(q.apply(&f).unwrap().values(), &q.matrix().mul_vec(f.values()).unwrap()[..]);
        }
    }

    #[test]
    fn commutation_examples() {
        let (v, w) = (&[&[0usize, 1][..], &[2, 3]], &[&[0usize, 2][..], &[1, 3]]);
        let s = u4();
        assert!(commutes(&field(&s, v), &field(&s, w)).unwrap());
        let s = w4();
        assert!(!commutes(&field(&s, v), &field(&s, w)).unwrap());
        let x = field(&s, v);
        assert!(commutes(&x, &x).unwrap());
        assert_eq!(commutes(&x, &SigmaField::top(&u4())).unwrap_err(), Error::SpaceMismatch);
    }

    #[test]
    fn projection_product_examples() {
        let s = u4();
        let v = field(&s, &[&[0, 1], &[2, 3]]);
        let w = field(&s, &[&[0, 2], &[1, 3]]);
        assert!(check_projection_product(&v, &w).unwrap());
        let q0 = cond_exp(&SigmaField::bottom(&s));
        assert_eq!(&cond_exp(&v).compose(&cond_exp(&w)).unwrap(), q0.matrix());
        assert!(check_projection_product(&v, &SigmaField::top(&s)).unwrap());
        let u = field(&s, &[&[0], &[2], &[1, 3]]);
        assert!(w.leq(&u).unwrap());
        assert!(check_projection_product(&w, &u).unwrap());
        assert_eq!(&cond_exp(&w).compose(&cond_exp(&u)).unwrap(), cond_exp(&w).matrix());
        let s = w4();
        let v = field(&s, &[&[0, 1], &[2, 3]]);
        let w = field(&s, &[&[0, 2], &[1, 3]]);
        assert_eq!(check_projection_product(&v, &w).unwrap_err(), Error::NotCommuting);
    }

    #[test]
    fn subspace_fields() {
        let s = u4();
        let v = field(&s, &[&[0, 1], &[2, 3]]);
        let indicators: Vec<Vector> = v.blocks().iter().map(|b| Vector::indicator(&s, b)).collect();
        assert_eq!(field_of_subspace(&s, &indicators).unwrap(), SubspaceField::TypeL2(v));
        match field_of_subspace(&s, &[vec_of(&s, &[1, -1, 0, 0])]).unwrap() {
            SubspaceField::NotTypeL2 { field: f, span_dim, field_dim } => {
                assert_eq!(span_dim, 2);
                assert_eq!(field_dim, 3);
                assert_eq!(f, field(&s, &[&[0], &[1], &[2, 3]]));
            }
            other => panic!("expected NotTypeL2, got {other:?}"),
        }
        assert_eq!(field_of_subspace(&s, &[]).unwrap(), SubspaceField::TypeL2(SigmaField::bottom(&s)));
        // a single non-constant two-valued function is type L2
        assert_eq!(
            field_of_subspace(&s, &[vec_of(&s, &[5, 5, 2, 2])]).unwrap(),
            SubspaceField::TypeL2(field(&s, &[&[0, 1], &[2, 3]]))
        );
    }

    #[test]
    fn distances() {
        let s = u4();
        let probes = default_probes(&s);
        let v = field(&s, &[&[0, 1], &[2, 3]]);
        assert_eq!(op_distance(&v, &v, &probes).unwrap(), 0.0);
        assert!(op_distance(&SigmaField::top(&s), &SigmaField::bottom(&s), &probes).unwrap() > 0.0);
        assert_eq!(op_distance(&v, &v, &[]).unwrap_err(), Error::NoProbes);
        let zero = Vector::constant(&s, int(0));
        assert_eq!(op_distance(&v, &v, &[zero]).unwrap_err(), Error::ZeroProbe);
        // ‖(Q_v − Q_0) 1_a‖² / ‖1_a‖² = 1/2 − 1/4 = 1/4 on the uniform space.
        let terms = op_distance_terms(&v, &SigmaField::bottom(&s), &probes).unwrap();
        assert_eq!(terms, vec![ratio(1, 4); 4]);
    }

    #[test]
    fn inner_products_are_weighted() {
        let s = w4();
        let f = vec_of(&s, &[1, 1, 0, 0]);
        let g = vec_of(&s, &[0, 1, 1, 0]);
        assert_eq!(f.inner(&g).unwrap(), ratio(2, 10));
        assert_eq!(f.norm_sq(), ratio(3, 10));
        assert_eq!(f.pointwise(&g).unwrap(), vec_of(&s, &[0, 1, 0, 0]));
        assert!(Vector::new(&s, vec![int(1)]).is_err());
    }
}
