//! Seeded generators for spaces, σ-fields and rational subspaces.
//!
//! Everything is driven by a [`ChaCha8Rng`] so a seed fixes every draw on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::independence::SubspaceQuadruple;
use crate::lattice::SigmaField;
use crate::linalg::Subspace;
use crate::rational::{self, Rational};
use crate::space::Space;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer masses in `1..=max_mass`.
pub fn random_masses(rng: &mut SeededRng, n: usize, max_mass: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=max_mass.max(1))).collect()
}

/// `n` atoms with masses drawn from `1..=12`, normalized.
pub fn random_space(rng: &mut SeededRng, n: usize) -> Space {
    Space::from_masses(&random_masses(rng, n, 12)).expect("positive masses")
}

/// A rational strictly inside `(0, 1)` with denominator at most `max_denom`.
pub fn random_probability(rng: &mut SeededRng, max_denom: i64) -> Rational {
    let d = rng.gen_range(2..=max_denom.max(2));
    rational::ratio(rng.gen_range(1..d), d)
}

/// Four atoms `[pq, p(1−q), (1−p)q, (1−p)(1−q)]`: the second and first
/// coordinates of a 2×2 product space, on which `{αβ|γδ}` and `{αγ|βδ}` are
/// independent.
pub fn random_product_space4(rng: &mut SeededRng) -> Space {
    let p = random_probability(rng, 12);
    let q = random_probability(rng, 12);
    let (pc, qc) = (rational::one() - &p, rational::one() - &q);
    Space::new(vec![&p * &q, &p * &qc, &pc * &q, &pc * &qc]).expect("product weights")
}

/// A uniformly labelled partition: each atom picks one of `n` block keys.
pub fn random_field(rng: &mut SeededRng, space: &Space) -> SigmaField {
    let n = space.atom_count();
    let keys: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    SigmaField::from_keys(space, keys)
}

/// A small-integer vector with entries in `-3..=3`.
pub fn random_vector(rng: &mut SeededRng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| rational::int(rng.gen_range(-3..=3))).collect()
}

/// Span of up to `dim` random vectors; the dimension is drawn first so that
/// zero and full subspaces both occur.
pub fn random_subspace(rng: &mut SeededRng, dim: usize) -> Subspace {
    let k = rng.gen_range(0..=dim);
    let vectors: Vec<Vec<Rational>> = (0..k).map(|_| random_vector(rng, dim)).collect();
    Subspace::span(dim, &vectors).expect("vectors match the ambient dimension")
}

/// Like [`random_subspace`] but sometimes forces overlap with `other`, so that
/// intersections are not always trivial.
pub fn random_overlapping_subspace(rng: &mut SeededRng, other: &Subspace) -> Subspace {
    let dim = other.ambient_dim();
    let mut vectors: Vec<Vec<Rational>> = Vec::new();
    if other.dim() > 0 && rng.gen_bool(0.6) {
        let shared = rng.gen_range(1..=other.dim());
        for _ in 0..shared {
            let mut v = vec![rational::zero(); dim];
            for b in other.basis() {
                let c = rational::int(rng.gen_range(-2..=2));
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &c * bi;
                }
            }
            vectors.push(v);
        }
    }
    let extra = rng.gen_range(0..=dim.saturating_sub(vectors.len()));
    vectors.extend((0..extra).map(|_| random_vector(rng, dim)));
    Subspace::span(dim, &vectors).expect("vectors match the ambient dimension")
}

pub fn random_quadruple(rng: &mut SeededRng, n1: usize, n2: usize) -> SubspaceQuadruple {
    let first_a = random_subspace(rng, n1);
    let first_b = random_overlapping_subspace(rng, &first_a);
    let second_a = random_subspace(rng, n2);
    let second_b = random_overlapping_subspace(rng, &second_a);
    SubspaceQuadruple { first_a, first_b, second_a, second_b }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = random_space(&mut rng(7), 5);
        let b = random_space(&mut rng(7), 5);
        assert_eq!(a, b);
        let mut r1 = rng(3);
        let mut r2 = rng(3);
        let s = Space::uniform(6).unwrap();
        assert_eq!(random_field(&mut r1, &s), random_field(&mut r2, &s));
    }

    #[test]
    fn product_spaces_are_valid() {
        let mut r = rng(1);
        for _ in 0..50 {
            let s = random_product_space4(&mut r);
            let w = s.weights();
            assert_eq!(&w[0] * &w[3], &w[1] * &w[2]);
        }
    }

    #[test]
    fn subspaces_have_the_right_ambient() {
        let mut r = rng(11);
        for _ in 0..20 {
            let q = random_quadruple(&mut r, 3, 3);
            assert_eq!(q.first_b.ambient_dim(), 3);
            assert!(q.second_a.dim() <= 3);
        }
    }
}
