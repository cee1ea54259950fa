//! Property tests against naive oracles written from the definitions.

use std::collections::HashMap;

use proptest::prelude::*;
use sigma_lab::independence::{
    coordinate_fields, is_independent, tensor_intersection, IndependentPair, SubspaceQuadruple,
};
use sigma_lab::linalg::{Matrix, Subspace};
use sigma_lab::operator::{default_probes, op_distance_terms, CondExp, Vector};
use sigma_lab::rational::{int, zero, Rational};
use sigma_lab::space::product_space;
use sigma_lab::{SigmaField, Space};

fn space_strategy(max_atoms: usize) -> impl Strategy<Value = Space> {
    prop::collection::vec(1u64..=9, 1..=max_atoms).prop_map(|m| Space::from_masses(&m).unwrap())
}

fn fields_on(space: &Space, count: usize) -> impl Strategy<Value = Vec<SigmaField>> {
    let n = space.atom_count();
    let space = space.clone();
    prop::collection::vec(prop::collection::vec(0..n, n), count)
        .prop_map(move |ls| ls.iter().map(|l| SigmaField::from_labels(&space, l).unwrap()).collect())
}

fn space_and_fields(max_atoms: usize, count: usize) -> impl Strategy<Value = (Space, Vec<SigmaField>)> {
    space_strategy(max_atoms).prop_flat_map(move |s| (Just(s.clone()), fields_on(&s, count)))
}

/// `x ≤ y`: atoms sharing a block of `y` share a block of `x`.
fn oracle_leq(x: &SigmaField, y: &SigmaField) -> bool {
    let n = x.atom_count();
    (0..n).all(|i| (0..n).all(|j| y.block_of(i) != y.block_of(j) || x.block_of(i) == x.block_of(j)))
}

/// Coarsest common coarsening by merging labels until stable.
fn oracle_meet(x: &SigmaField, y: &SigmaField) -> Vec<usize> {
    let n = x.atom_count();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if (x.block_of(i) == x.block_of(j) || y.block_of(i) == y.block_of(j)) && label[i] != label[j] {
                    let (a, b) = (label[i].min(label[j]), label[i].max(label[j]));
                    for l in label.iter_mut() {
                        if *l == b {
                            *l = a;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

fn oracle_join(x: &SigmaField, y: &SigmaField) -> Vec<usize> {
    let mut keys: HashMap<(usize, usize), usize> = HashMap::new();
    (0..x.atom_count())
        .map(|i| {
            let next = keys.len();
            *keys.entry((x.block_of(i), y.block_of(i))).or_insert(next)
        })
        .collect()
}

/// `P(A ∩ B) = P(A) P(B)` over every union of blocks.
fn oracle_independent(x: &SigmaField, y: &SigmaField) -> bool {
    let s = x.space();
    let (bx, by) = (x.blocks(), y.blocks());
    let union = |blocks: &[Vec<usize>], mask: u32| -> Vec<usize> {
        blocks.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).flat_map(|(_, b)| b.clone()).collect()
    };
    for ma in 0..1u32 << bx.len() {
        for mb in 0..1u32 << by.len() {
            let a = union(&bx, ma);
            let b = union(&by, mb);
            let both: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
            let p = |atoms: &[usize]| -> Rational { atoms.iter().map(|&i| s.weight(i).clone()).sum() };
            if p(&both) != p(&a) * p(&b) {
                return false;
            }
        }
    }
    true
}

/// Dense conditional expectation applied to `f`.
fn oracle_cond_exp(x: &SigmaField, f: &[Rational]) -> Vec<Rational> {
    let s = x.space();
    (0..x.atom_count())
        .map(|i| {
            let block: Vec<usize> = (0..x.atom_count()).filter(|&j| x.block_of(j) == x.block_of(i)).collect();
            let mass: Rational = block.iter().map(|&j| s.weight(j).clone()).sum();
            block.iter().map(|&j| s.weight(j) * &f[j]).sum::<Rational>() / mass
        })
        .collect()
}

fn weighted_norm_sq(s: &Space, f: &[Rational]) -> Rational {
    f.iter().enumerate().map(|(i, v)| s.weight(i) * v * v).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn meet_and_join_match_oracles((s, fs) in space_and_fields(7, 2)) {
        let (x, y) = (&fs[0], &fs[1]);
        prop_assert_eq!(x & y, SigmaField::from_labels(&s, &oracle_meet(x, y)).unwrap());
        prop_assert_eq!(x | y, SigmaField::from_labels(&s, &oracle_join(x, y)).unwrap());
        prop_assert_eq!(x.leq(y).unwrap(), oracle_leq(x, y));
    }

    #[test]
    fn lattice_laws((_s, fs) in space_and_fields(7, 3)) {
        let (x, y, z) = (&fs[0], &fs[1], &fs[2]);
        prop_assert_eq!(&(x & y) & z, x & &(y & z));
        prop_assert_eq!(&(x | y) | z, x | &(y | z));
        prop_assert_eq!(x & &(x | y), x.clone());
        prop_assert_eq!(x | &(x & y), x.clone());
        prop_assert!((x & y).leq(x).unwrap() && x.leq(&(x | y)).unwrap());
        prop_assert_eq!(x.leq(y).unwrap(), &(x & y) == x);
        prop_assert_eq!(x.leq(y).unwrap(), &(x | y) == y);
    }

    #[test]
    fn projections_match_dense_oracle(
        (s, fs) in space_and_fields(6, 1),
        f in prop::collection::vec(-4i64..=4, 6),
    ) {
        let x = &fs[0];
        let f: Vec<Rational> = f.into_iter().take(s.atom_count()).map(int).collect();
        prop_assume!(f.len() == s.atom_count());
        let q = CondExp::new(x);
        prop_assert_eq!(q.apply_values(&f).unwrap(), oracle_cond_exp(x, &f));
        prop_assert!(q.is_idempotent() && q.is_self_adjoint() && q.fixes_constants());
        prop_assert_eq!(q.rank(), x.block_count());
    }

    #[test]
    fn distance_terms_match_dense_oracle(
        (s, fs) in space_and_fields(6, 2),
        f in prop::collection::vec(-3i64..=3, 6),
    ) {
        let (x, y) = (&fs[0], &fs[1]);
        let mut probes = default_probes(&s);
        let f: Vec<Rational> = f.into_iter().take(s.atom_count()).map(int).collect();
        if f.iter().any(|v| v != &zero()) {
            probes.push(Vector::new(&s, f).unwrap());
        }
        let terms = op_distance_terms(x, y, &probes).unwrap();
        for (p, t) in probes.iter().zip(&terms) {
            let a = oracle_cond_exp(x, p.values());
            let b = oracle_cond_exp(y, p.values());
            let diff: Vec<Rational> = a.iter().zip(&b).map(|(u, v)| u - v).collect();
            let expected = weighted_norm_sq(&s, &diff) / weighted_norm_sq(&s, p.values());
            prop_assert_eq!(t, &expected);
        }
        prop_assert_eq!(terms.iter().all(|t| t == &zero()), x == y);
    }

    #[test]
    fn order_is_range_inclusion((_s, fs) in space_and_fields(6, 2)) {
        let (x, y) = (&fs[0], &fs[1]);
        let (qx, qy) = (CondExp::new(x), CondExp::new(y));
        let included = &qx.compose(&qy).unwrap() == qx.matrix() && &qy.compose(&qx).unwrap() == qx.matrix();
        prop_assert_eq!(x.leq(y).unwrap(), included);
    }

    #[test]
    fn independence_matches_definition((_s, fs) in space_and_fields(5, 2)) {
        let (x, y) = (&fs[0], &fs[1]);
        let ind = is_independent(x, y).unwrap();
        prop_assert_eq!(ind, oracle_independent(x, y));
        prop_assert_eq!(ind, is_independent(y, x).unwrap());
    }

    #[test]
    fn product_coordinates_are_independent_and_split(
        a in space_strategy(3),
        b in space_strategy(3),
        seeds in prop::collection::vec(0usize..9, 18),
    ) {
        let p = product_space(&a, &b);
        let (x, y) = coordinate_fields(&p);
        prop_assert!(oracle_independent(&x, &y));
        let n = p.space.atom_count();
        let r1 = SigmaField::from_labels(&p.space, &seeds[..n]).unwrap();
        let r2 = SigmaField::from_labels(&p.space, &seeds[9..9 + n]).unwrap();
        // Coarsenings of independent fields stay independent.
        let (u, v) = (&x & &r1, &y & &r2);
        prop_assert!(is_independent(&u, &y).unwrap() && is_independent(&x, &v).unwrap());
        let pair = IndependentPair::new(x.clone(), y.clone()).unwrap();
        prop_assert!(pair.roundtrip(&u, &v).unwrap());
        let z = pair.embed(&u, &v).unwrap();
        prop_assert!(pair.check_homomorphism(&z, &(&x | &v)).unwrap());
    }

    #[test]
    fn tensor_intersection_matches_nullspace_oracle(
        dims in (1usize..=3, 1usize..=3),
        entries in prop::collection::vec(-2i64..=2, 4 * 3 * 3),
        ranks in prop::collection::vec(0usize..=3, 4),
    ) {
        let (n1, n2) = dims;
        let mut it = entries.into_iter();
        let mut sub = |dim: usize, k: usize| -> Subspace {
            let vs: Vec<Vec<Rational>> = (0..k.min(dim)).map(|_| (0..3).map(|_| int(it.next().unwrap())).take(dim).collect()).collect();
            Subspace::span(dim, &vs).unwrap()
        };
        let q = SubspaceQuadruple {
            first_a: sub(n1, ranks[0]),
            first_b: sub(n1, ranks[1]),
            second_a: sub(n2, ranks[2]),
            second_b: sub(n2, ranks[3]),
        };
        let (s1, s2) = (Space::uniform(n1).unwrap(), Space::uniform(n2).unwrap());
        let t = tensor_intersection(&s1, &s2, &q).unwrap();
        prop_assert!(t.holds());
        // Oracle: U ∩ V from the nullspace of [U | −V].
        let u = q.first_a.tensor(&q.second_a);
        let v = q.first_b.tensor(&q.second_b);
        let dim = n1 * n2;
        let mut columns: Vec<Vec<Rational>> = u.basis().to_vec();
        columns.extend(v.basis().iter().map(|b| b.iter().map(|c| -c).collect::<Vec<_>>()));
        let expected_dim = if columns.is_empty() {
            0
        } else {
            let rows: Vec<Vec<Rational>> = (0..dim).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
            let null = Matrix::from_rows(&rows).unwrap().nullspace();
            let vecs: Vec<Vec<Rational>> = null
                .iter()
                .map(|coef| {
                    (0..dim)
                        .map(|r| u.basis().iter().zip(coef).map(|(b, c)| &b[r] * c).sum())
                        .collect()
                })
                .collect();
            let inter = Subspace::span(dim, &vecs).unwrap();
            prop_assert!(t.lhs.contains_subspace(&inter) && inter.contains_subspace(&t.lhs));
            inter.dim()
        };
        prop_assert_eq!(t.lhs.dim(), expected_dim);
    }
}
