//! Seeded randomized and exhaustive property suite.
//!
//! Each property tallies how many instances it checked and how many failed,
//! keeping the first failing witness. Spaces with `n ≤ max_atoms` atoms are
//! visited in increasing `n`; all pairs of partitions are checked for
//! `n ≤ 6` and all triples for `n ≤ 4`, with random samples beyond. The
//! coordinate algebras of `N` fair coins are checked for `N ≤ min(6, max_atoms)`.
//! `max_atoms = 0` gives an empty suite.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::independence::{
    check_independence_commutation, check_tensor_intersection, is_independent, tensor_factor_check, IndependentPair,
};
use crate::lattice::{enumerate_lattice, inf_family, pentagons, permutations, sup_family, FieldSequence, SigmaField};
use crate::noise::{
    check_algebra_projection_products, check_complement_laws, check_completion_constructions, check_demorgan,
    check_join_stays_in_closure, check_mixed_distributivity, closure_in_lattice, completion, validate_noise_type,
    AlgebraCandidate,
};
use crate::operator::{default_probes, field_of_subspace, op_distance_terms, CondExp, SubspaceField, Vector};
use crate::random::{self, SeededRng};
use crate::rational::{self, Rational};
use crate::scenario::{build_coin_noise, coin_field, pentagon_fields, run_join_pathology, run_meet_pathology, Tower};
use crate::space::{product_space, Event, Space};

/// Default atom cap of [`run_suite`].
pub const DEFAULT_MAX_ATOMS: usize = 8;
/// Largest `n` whose partition lattice is checked over all pairs.
pub const EXHAUSTIVE_PAIRS: usize = 6;
/// Largest `n` whose partition lattice is checked over all triples.
pub const EXHAUSTIVE_TRIPLES: usize = 4;

const SAMPLED_FIELDS: usize = 24;
const SAMPLED_TRIPLES: usize = 150;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub max_atoms: usize,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }

    pub fn checked(&self) -> u64 {
        self.properties.iter().map(|p| p.checked).sum()
    }

    pub fn failures(&self) -> u64 {
        self.properties.iter().map(|p| p.failures).sum()
    }
}

struct Tally {
    results: Vec<PropertyResult>,
}

impl Tally {
    fn new() -> Self {
        Tally { results: Vec::new() }
    }

    fn slot(&mut self, name: &str) -> &mut PropertyResult {
        let pos = match self.results.iter().position(|p| p.name == name) {
            Some(p) => p,
            None => {
                self.results.push(PropertyResult {
                    name: name.to_string(),
                    checked: 0,
                    failures: 0,
                    first_failure: None,
                });
                self.results.len() - 1
            }
        };
        &mut self.results[pos]
    }

    fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        let p = self.slot(name);
        p.checked += 1;
        if !ok {
            p.failures += 1;
            if p.first_failure.is_none() {
                p.first_failure = Some(witness());
            }
        }
    }

    /// Records an unexpected library error as a failure.
    fn check_result(&mut self, name: &str, result: crate::Result<bool>, witness: impl FnOnce() -> String) {
        match result {
            Ok(ok) => self.check(name, ok, witness),
            Err(e) => self.check(name, false, || format!("{}: error {e}", witness())),
        }
    }
}

fn show(fields: &[&SigmaField]) -> String {
    let space = fields.first().map(|f| f.space().to_string()).unwrap_or_default();
    let parts: Vec<String> = fields.iter().map(ToString::to_string).collect();
    format!("{} on {space}", parts.join(", "))
}

/// Uniform, random, and (for composite `n`) product-form weights.
fn test_spaces(rng: &mut SeededRng, n: usize) -> Vec<Space> {
    let mut spaces = vec![Space::uniform(n).expect("n ≥ 1"), random::random_space(rng, n)];
    if let Some(p) = (2..n).find(|p| n.is_multiple_of(*p)) {
        let a = random::random_space(rng, p);
        let b = random::random_space(rng, n / p);
        spaces.push(product_space(&a, &b).space);
    }
    spaces
}

/// The whole lattice when small, else random fields plus bottom and top.
fn field_pool(rng: &mut SeededRng, space: &Space) -> Vec<SigmaField> {
    if space.atom_count() <= EXHAUSTIVE_PAIRS {
        return enumerate_lattice(space).expect("small space");
    }
    let mut pool = vec![SigmaField::bottom(space), SigmaField::top(space)];
    pool.extend((0..SAMPLED_FIELDS).map(|_| random::random_field(rng, space)));
    pool
}

fn triples(rng: &mut SeededRng, pool: &[SigmaField], exhaustive: bool) -> Vec<[usize; 3]> {
    let k = pool.len();
    if exhaustive {
        let mut out = Vec::with_capacity(k * k * k);
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    out.push([a, b, c]);
                }
            }
        }
        return out;
    }
    (0..SAMPLED_TRIPLES).map(|_| [rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k)]).collect()
}

fn random_event(rng: &mut SeededRng, space: &Space) -> Event {
    let n = space.atom_count();
    space.event((0..n).filter(|_| rng.gen_bool(0.5))).expect("atoms in range")
}

pub fn run_suite(seed: u64, max_atoms: usize) -> SuiteReport {
    let mut tally = Tally::new();
    let mut rng = random::rng(seed);
    for n in 1..=max_atoms {
        for (idx, space) in test_spaces(&mut rng, n).into_iter().enumerate() {
            space_properties(&mut tally, &mut rng, &space);
            let pool = field_pool(&mut rng, &space);
            lattice_properties(&mut tally, &mut rng, &space, &pool);
            operator_properties(&mut tally, &mut rng, &space, &pool);
            // The n = 6 lattice has 203 elements; its quadratic checks run on
            // the non-uniform spaces only.
            if n < EXHAUSTIVE_PAIRS || idx > 0 || n > EXHAUSTIVE_PAIRS {
                independence_properties(&mut tally, &mut rng, &space, &pool);
            }
        }
        if n == 4 {
            pentagon_properties(&mut tally, &mut rng);
        }
    }
    if max_atoms > 0 {
        product_tensor_properties(&mut tally, &mut rng, max_atoms);
        sequence_properties(&mut tally, &mut rng);
        for coins in 1..=max_atoms.min(6) {
            noise_properties(&mut tally, &mut rng, &build_coin_noise(coins).expect("coin noise"), coins <= 3);
        }
        product_algebra_properties(&mut tally, &mut rng, max_atoms);
        scenario_properties(&mut tally, &mut rng, max_atoms);
    }
    SuiteReport { seed, max_atoms, properties: tally.results }
}

fn space_properties(t: &mut Tally, rng: &mut SeededRng, space: &Space) {
    t.check("space.full_event_has_probability_one", space.prob(&space.full_event()) == Ok(rational::one()), || {
        space.to_string()
    });
    for _ in 0..8 {
        let a = random_event(rng, space);
        let b = random_event(rng, space);
        let a_minus_b = space.event(a.atoms().iter().copied().filter(|x| !b.contains(*x))).expect("in range");
        let union = space.event(a.atoms().iter().chain(b.atoms()).copied()).expect("in range");
        let ok = space.prob(&union).unwrap() == space.prob(&a_minus_b).unwrap() + space.prob(&b).unwrap();
        t.check("space.additive_on_disjoint_events", ok, || format!("{:?} and {:?} on {space}", a.atoms(), b.atoms()));
    }
}

fn lattice_properties(t: &mut Tally, rng: &mut SeededRng, space: &Space, pool: &[SigmaField]) {
    let n = space.atom_count();
    for [a, b, c] in triples(rng, pool, n <= EXHAUSTIVE_TRIPLES) {
        let (x, y, z) = (&pool[a], &pool[b], &pool[c]);
        let ok = &(x & y) & z == x & &(y & z) && &(x | y) | z == x | &(y | z);
        t.check("lattice.associative", ok, || show(&[x, y, z]));
    }
    let exhaustive = n <= EXHAUSTIVE_PAIRS;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..pool.len()).flat_map(|a| (0..pool.len()).map(move |b| (a, b))).collect()
    } else {
        (0..pool.len() * 4).map(|_| (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()))).collect()
    };
    for &(a, b) in &pairs {
        let (x, y) = (&pool[a], &pool[b]);
        let (m, j) = (x & y, x | y);
        let laws = m == (y & x) && j == (y | x) && (x & &j) == *x && (x | &m) == *x;
        t.check("lattice.commutative_and_absorptive", laws, || show(&[x, y]));
        let leq = x.leq(y).unwrap();
        t.check("lattice.order_matches_operations", leq == (m == *x) && leq == (j == *y), || show(&[x, y]));
    }
    for x in pool {
        t.check("lattice.idempotent", x.meet(x).unwrap() == *x && x.join(x).unwrap() == *x, || show(&[x]));
        let events = x.block_events();
        t.check_result(
            "lattice.generated_by_blocks_is_identity",
            SigmaField::generated_by(space, &events).map(|g| &g == x),
            || show(&[x]),
        );
    }
    for _ in 0..6 {
        let k = rng.gen_range(1..=4);
        let family: Vec<SigmaField> = (0..k).map(|_| pool.choose(rng).expect("nonempty").clone()).collect();
        let inf = family.iter().skip(1).fold(family[0].clone(), |acc, f| &acc & f);
        let sup = family.iter().skip(1).fold(family[0].clone(), |acc, f| &acc | f);
        let ok = inf_family(&family) == Ok(inf) && sup_family(&family) == Ok(sup);
        t.check("lattice.family_operations_match_folds", ok, || show(&family.iter().collect::<Vec<_>>()));

        let seq = FieldSequence::new(family.clone()).expect("same space");
        t.check("lattice.liminf_below_limsup", seq.liminf().leq(&seq.limsup()).unwrap(), || {
            show(&family.iter().collect::<Vec<_>>())
        });

        let e1: Vec<Event> = (0..rng.gen_range(0..3)).map(|_| random_event(rng, space)).collect();
        let mut e2 = e1.clone();
        e2.push(random_event(rng, space));
        let (g1, g2) = (SigmaField::generated_by(space, &e1).unwrap(), SigmaField::generated_by(space, &e2).unwrap());
        t.check("lattice.generated_by_is_monotone", g1.leq(&g2).unwrap(), || show(&[&g1, &g2]));
    }
}

fn pentagon_properties(t: &mut Tally, rng: &mut SeededRng) {
    let perms = permutations(4);
    for space in [Space::uniform(4).unwrap(), random::random_space(rng, 4)] {
        let lattice = enumerate_lattice(&space).unwrap();
        let (u, v, w) = pentagon_fields(&space).unwrap();
        let found = pentagons(&lattice);
        t.check("lattice.pentagon_found_on_four_atoms", !found.is_empty(), || space.to_string());
        for p in &found {
            let ok = p.bottom.is_bottom()
                && p.top.is_top()
                && perms.iter().any(|perm| {
                    w.relabel(perm).unwrap() == p.low
                        && u.relabel(perm).unwrap() == p.high
                        && v.relabel(perm).unwrap() == p.side
                });
            t.check("lattice.pentagons_are_relabelings_of_uvw", ok, || show(&[&p.low, &p.high, &p.side]));
        }
    }
}

/// Columns of `Q_x`, for products by repeated application.
struct Projections {
    ops: Vec<CondExp>,
}

impl Projections {
    fn new(pool: &[SigmaField]) -> Self {
        Projections { ops: pool.iter().map(CondExp::new).collect() }
    }

    fn commute(&self, a: usize, b: usize) -> bool {
        self.ops[a].compose(&self.ops[b]).unwrap() == self.ops[b].compose(&self.ops[a]).unwrap()
    }
}

fn operator_properties(t: &mut Tally, rng: &mut SeededRng, space: &Space, pool: &[SigmaField]) {
    let n = space.atom_count();
    let sample: Vec<&SigmaField> =
        if pool.len() <= 60 { pool.iter().collect() } else { pool.choose_multiple(rng, 60).collect() };
    for x in &sample {
        let q = CondExp::new(x);
        let ok = q.is_idempotent() && q.is_self_adjoint() && q.fixes_constants() && q.rank() == x.block_count();
        t.check("operator.projection_laws", ok, || show(&[x]));
        let basis: Vec<Vector> = x.blocks().iter().map(|b| Vector::indicator(space, b)).collect();
        t.check_result(
            "operator.field_of_block_indicators_is_identity",
            field_of_subspace(space, &basis).map(|f| f == SubspaceField::TypeL2((*x).clone())),
            || show(&[x]),
        );
    }
    // Order is range inclusion: x ≤ y ⟺ Q_x Q_y = Q_y Q_x = Q_x.
    let pairs = if n <= 4 { 400 } else { 120 };
    for _ in 0..pairs {
        let (x, y) = (pool.choose(rng).unwrap(), pool.choose(rng).unwrap());
        let (qx, qy) = (CondExp::new(x), CondExp::new(y));
        let xy = qx.compose(&qy).unwrap();
        let range = xy == *qx.matrix() && qy.compose(&qx).unwrap() == *qx.matrix();
        t.check("operator.order_is_range_inclusion", x.leq(y).unwrap() == range, || show(&[x, y]));
    }
}

fn independence_properties(t: &mut Tally, rng: &mut SeededRng, space: &Space, pool: &[SigmaField]) {
    let n = space.atom_count();
    let proj = Projections::new(pool);
    let exhaustive = n <= EXHAUSTIVE_PAIRS;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..pool.len()).flat_map(|a| (a..pool.len()).map(move |b| (a, b))).collect()
    } else {
        (0..pool.len() * 6).map(|_| (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()))).collect()
    };
    let mut independent_pairs = Vec::new();
    for (a, b) in pairs {
        let (x, y) = (&pool[a], &pool[b]);
        let ind = is_independent(x, y).unwrap();
        t.check("independence.symmetric", ind == is_independent(y, x).unwrap(), || show(&[x, y]));
        let meet_trivial = (x & y).is_bottom();
        let equivalent = ind == (proj.commute(a, b) && meet_trivial);
        t.check("independence.iff_commuting_with_trivial_meet", equivalent, || show(&[x, y]));
        if ind {
            independent_pairs.push((a, b));
        }
    }
    // Cross-check the library entry point on a sample.
    for _ in 0..20 {
        let (x, y) = (pool.choose(rng).unwrap(), pool.choose(rng).unwrap());
        t.check_result(
            "independence.commutation_report_holds",
            check_independence_commutation(x, y).map(|r| r.holds()),
            || show(&[x, y]),
        );
    }
    let budget = if n <= 5 { usize::MAX } else { 40 };
    let picked: Vec<(usize, usize)> = if independent_pairs.len() <= budget {
        independent_pairs
    } else {
        independent_pairs.choose_multiple(rng, budget).copied().collect()
    };
    let exhaustive_pool = n <= EXHAUSTIVE_PAIRS;
    for (a, b) in picked {
        let (x, y) = (&pool[a], &pool[b]);
        let pair = IndependentPair::new(x.clone(), y.clone()).unwrap();
        let below = |bound: &SigmaField| -> Vec<SigmaField> {
            if exhaustive_pool {
                pool.iter().filter(|f| f.leq(bound).unwrap()).cloned().collect()
            } else {
                let mut out = vec![SigmaField::bottom(space), bound.clone()];
                out.extend(pool.iter().map(|f| f & bound));
                out
            }
        };
        let (us, vs) = (below(x), below(y));
        for u in &us {
            t.check("independence.preserved_by_coarsening", is_independent(u, y).unwrap(), || show(&[u, y]));
        }
        let mut members = Vec::new();
        for u in &us {
            for v in &vs {
                t.check_result("independence.split_inverts_embed", pair.roundtrip(u, v), || show(&[x, y, u, v]));
                members.push(u | v);
            }
        }
        let limit = if n <= 4 { members.len() } else { members.len().min(12) };
        for z1 in &members[..limit] {
            for z2 in &members[..limit] {
                t.check_result("independence.embedding_is_a_homomorphism", pair.check_homomorphism(z1, z2), || {
                    show(&[x, y, z1, z2])
                });
            }
        }
        t.check_result("independence.tensor_factorization", tensor_factor_check(&pair).map(|r| r.holds()), || {
            show(&[x, y])
        });
    }
}

fn product_tensor_properties(t: &mut Tally, rng: &mut SeededRng, max_atoms: usize) {
    let sizes: Vec<(usize, usize)> =
        (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))).filter(|(a, b)| a * b <= max_atoms.max(1)).collect();
    for &(n1, n2) in &sizes {
        let (s1, s2) = (random::random_space(rng, n1), random::random_space(rng, n2));
        let p = product_space(&s1, &s2);
        let marginals = (0..n1).all(|i| {
            p.space.prob(&p.space.event((0..p.space.atom_count()).filter(|&a| p.first[a] == i)).unwrap()).unwrap()
                == *s1.weight(i)
        }) && (0..n2).all(|j| {
            p.space.prob(&p.space.event((0..p.space.atom_count()).filter(|&a| p.second[a] == j)).unwrap()).unwrap()
                == *s2.weight(j)
        });
        t.check("space.product_marginals", marginals, || format!("{s1} × {s2}"));
        for _ in 0..10 {
            let q = random::random_quadruple(rng, n1, n2);
            t.check_result("independence.tensor_intersection", check_tensor_intersection(&s1, &s2, &q), || {
                format!("{n1}×{n2} quadruple")
            });
        }
    }
}

/// Stabilizing sequences: limits, subsequence liminf and independence of limits.
fn sequence_properties(t: &mut Tally, rng: &mut SeededRng) {
    let coins = build_coin_noise(3).unwrap();
    let elems = coins.elements();
    for _ in 0..40 {
        let len = rng.gen_range(1..=6);
        let mut terms: Vec<SigmaField> = (0..len).map(|_| elems.choose(rng).unwrap().clone()).collect();
        let repeat = rng.gen_range(0..len);
        let last = terms[len - 1].clone();
        for term in terms.iter_mut().skip(len - 1 - repeat) {
            *term = last.clone();
        }
        let seq = FieldSequence::new(terms.clone()).unwrap();
        // The coin algebra is commutative; some subsequence has liminf equal to the limit.
        let mut found = false;
        for mask in 1u32..(1 << len) {
            let idx: Vec<usize> = (0..len).filter(|i| mask & (1 << i) != 0).collect();
            if seq.subsequence(&idx).map(|s| s.liminf() == last).unwrap_or(false) {
                found = true;
                break;
            }
        }
        t.check("lattice.subsequence_liminf_reaches_limit", found, || show(&terms.iter().collect::<Vec<_>>()));
    }
    // Limits of stabilizing sequences of independent pairs stay independent.
    let space = coins.space();
    for _ in 0..20 {
        let len = rng.gen_range(1..=5);
        let pairs: Vec<(SigmaField, SigmaField)> = (0..len)
            .map(|_| {
                let s: u32 = rng.gen_range(0..8);
                let r: u32 = rng.gen_range(0..8) & !s;
                (coin_field(space, 3, s).unwrap(), coin_field(space, 3, r).unwrap())
            })
            .collect();
        let all = pairs.iter().all(|(x, y)| is_independent(x, y).unwrap());
        let (lx, ly) = pairs.last().unwrap();
        t.check("independence.limits_of_independent_pairs", all && is_independent(lx, ly).unwrap(), || show(&[lx, ly]));
    }
}

/// Coordinate algebra of a product of the given factor spaces.
fn product_algebra(factors: &[Space]) -> AlgebraCandidate {
    let sizes: Vec<usize> = factors.iter().map(Space::atom_count).collect();
    let total: usize = sizes.iter().product();
    let digits = |mut a: usize| -> Vec<usize> {
        let mut out = vec![0; sizes.len()];
        for (i, s) in sizes.iter().enumerate().rev() {
            out[i] = a % s;
            a /= s;
        }
        out
    };
    let weights: Vec<Rational> =
        (0..total).map(|a| digits(a).iter().zip(factors).map(|(&d, f)| f.weight(d).clone()).product()).collect();
    let space = Space::new(weights).expect("product weights");
    let elems: Vec<SigmaField> = (0..1u32 << factors.len())
        .map(|s| {
            let keys = (0..total).map(|a| {
                digits(a)
                    .into_iter()
                    .enumerate()
                    .map(|(i, d)| if s & (1 << i) != 0 { d } else { 0 })
                    .collect::<Vec<_>>()
            });
            SigmaField::from_keys(&space, keys)
        })
        .collect();
    validate_noise_type(&space, &elems).expect("coordinate algebra of a product is noise-type")
}

fn product_algebra_properties(t: &mut Tally, rng: &mut SeededRng, max_atoms: usize) {
    for _ in 0..6 {
        let mut factors = Vec::new();
        let mut atoms = 1;
        loop {
            let size = rng.gen_range(2..=3);
            if atoms * size > max_atoms || factors.len() == 3 {
                break;
            }
            atoms *= size;
            factors.push(random::random_space(rng, size));
        }
        if factors.is_empty() {
            return;
        }
        let b = product_algebra(&factors);
        noise_properties(t, rng, &b, true);
    }
}

fn noise_properties(t: &mut Tally, rng: &mut SeededRng, b: &AlgebraCandidate, exhaustive: bool) {
    let label = || format!("{} elements on {}", b.len(), b.space());
    t.check("noise.validated_algebra_is_noise_type", validate_noise_type(b.space(), b.elements()).is_ok(), label);
    if exhaustive {
        t.check("noise.projection_products", check_algebra_projection_products(b).holds, label);
    } else {
        for _ in 0..24 {
            let (x, y) = (b.elements().choose(rng).unwrap(), b.elements().choose(rng).unwrap());
            let (qx, qy) = (CondExp::new(x), CondExp::new(y));
            let ok = qx.compose(&qy).unwrap() == *CondExp::new(&(x & y)).matrix();
            t.check("noise.projection_products", ok, || show(&[x, y]));
        }
    }
    let cl = closure_in_lattice(b);
    t.check("noise.closure_collapses", cl.is_collapsed(), label);
    let c = match completion(&cl) {
        Ok(c) => c,
        Err(e) => {
            t.check("noise.completion_validates", false, || format!("{}: {e}", label()));
            return;
        }
    };
    t.check("noise.completion_validates", validate_noise_type(c.space(), c.elements()).is_ok(), label);
    t.check("noise.completion_is_algebra", c.same_elements(b), label);
    let again = completion(&closure_in_lattice(&c));
    t.check("noise.completion_idempotent", again.map(|a| a.same_elements(&c)).unwrap_or(false), label);
    t.check("noise.complement_laws", check_complement_laws(&c).holds, label);
    t.check("noise.join_stays_in_closure", check_join_stays_in_closure(&c, &cl).holds, label);
    let pairs: Vec<(&SigmaField, &SigmaField)> = if exhaustive {
        c.elements().iter().flat_map(|x| c.elements().iter().map(move |y| (x, y))).collect()
    } else {
        (0..64).map(|_| (c.elements().choose(rng).unwrap(), c.elements().choose(rng).unwrap())).collect()
    };
    for (x, y) in pairs {
        t.check("noise.de_morgan", check_demorgan(&c, x, y).unwrap_or(false), || show(&[x, y]));
    }
    if exhaustive {
        t.check("noise.mixed_distributivity", check_mixed_distributivity(&cl, b).holds, label);
        let coincide = check_completion_constructions(&cl).map(|r| r.coincide() == Some(true)).unwrap_or(false);
        t.check("noise.maximal_algebra_matches_completion", coincide, label);
    }
    // Joins with a stabilizing sequence: d(x ∨ z_n, x ∨ z) vanishes once z_n = z.
    let probes = default_probes(c.space());
    for _ in 0..4 {
        let x = c.elements().choose(rng).unwrap();
        let z = cl.elements().choose(rng).unwrap();
        let mut seq: Vec<&SigmaField> = (0..3).map(|_| cl.elements().choose(rng).unwrap()).collect();
        seq.extend([z, z]);
        let target = x | z;
        let distances: Vec<Vec<Rational>> =
            seq.iter().map(|zn| op_distance_terms(&(x | *zn), &target, &probes).unwrap()).collect();
        let ok = distances[3..].iter().all(|d| d.iter().all(|v| v == &rational::zero()));
        t.check("noise.join_is_continuous_along_stabilizing_sequences", ok, || show(&[x, z]));
    }
}

fn scenario_properties(t: &mut Tally, rng: &mut SeededRng, max_atoms: usize) {
    let top_level = (usize::BITS - 1 - max_atoms.leading_zeros()) as usize;
    if top_level >= 1 {
        let tower = Tower::new(top_level).unwrap();
        for level in 0..top_level {
            let space = tower.level(level).unwrap();
            for _ in 0..10 {
                let (x, y) = (random::random_field(rng, space), random::random_field(rng, space));
                let (lx, ly) = (tower.lift(&x).unwrap(), tower.lift(&y).unwrap());
                let ok = tower.lift(&(&x & &y)).unwrap() == (&lx & &ly)
                    && tower.lift(&(&x | &y)).unwrap() == (&lx | &ly)
                    && x.leq(&y).unwrap() == lx.leq(&ly).unwrap();
                t.check("scenario.lift_is_lattice_embedding", ok, || show(&[&x, &y]));
            }
        }
        for level in 1..=top_level {
            let chain: Vec<SigmaField> = (1..=level).map(|n| tower.shift_invariant_field(level, n).unwrap()).collect();
            let decreasing = chain.windows(2).all(|w| w[1].lt(&w[0]).unwrap());
            let seq = FieldSequence::new(chain.clone()).unwrap();
            t.check("scenario.shift_chain_decreases_to_bottom", decreasing && seq.liminf().is_bottom(), || {
                format!("level {level}")
            });
            // Monotone convergence: the distance to the limit shrinks to 0.
            let probes = default_probes(tower.level(level).unwrap());
            let limit = chain.last().unwrap();
            let d: Vec<Vec<Rational>> = chain.iter().map(|x| op_distance_terms(x, limit, &probes).unwrap()).collect();
            let shrinking = d.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(a, b)| a <= b))
                && d.last().unwrap().iter().all(|v| v == &rational::zero());
            t.check("operator.monotone_chains_converge", shrinking, || format!("level {level}"));
            // The reversed chain increases to its sup.
            let up: Vec<&SigmaField> = chain.iter().rev().collect();
            let top = up.last().unwrap();
            let d_up: Vec<Vec<Rational>> = up.iter().map(|x| op_distance_terms(x, top, &probes).unwrap()).collect();
            let shrinking_up = d_up.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(a, b)| a <= b))
                && d_up.last().unwrap().iter().all(|v| v == &rational::zero());
            t.check("operator.monotone_chains_converge", shrinking_up, || format!("level {level}, increasing"));
            if level >= 2 {
                let r = run_join_pathology(level).unwrap();
                t.check("scenario.join_pathology_signature", r.passed(), || format!("N = {level}"));
            }
        }
    }
    for level in 3..max_atoms {
        let weights = random::random_space(rng, level + 1).weights().to_vec();
        let r = run_meet_pathology(level, Some(weights), false).unwrap();
        t.check("scenario.meet_pathology_signature", r.passed(), || format!("N = {level}"));
    }
}
