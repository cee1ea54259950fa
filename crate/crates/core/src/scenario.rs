//! Dyadic towers, coin-flip noises and the classical lattice counterexamples
//! as deterministic scenarios.
//!
//! Level `N` of a [`Tower`] is `[0, 1)` cut into `2^N` equal cells, with atom
//! `k` standing for the midpoint `(k + 1/2) / 2^N`. Under that convention both
//! `ω ↦ ω + 2^{-n} (mod 1)` and `ω ↦ 1 − ω` permute atoms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::independence::is_independent;
use crate::lattice::{check_modularity, enumerate_lattice, FieldSequence, SigmaField};
use crate::noise::{
    check_algebra_projection_products, check_completion_constructions, check_demorgan, check_mixed_distributivity,
    check_splitting, closure_in_lattice, completion, validate_noise_type, AlgebraCandidate,
};
use crate::operator::{commutes, default_probes, op_distance_terms};
use crate::random::{self, SeededRng};
use crate::rational::{self, Rational};
use crate::space::{Event, Space};
use crate::{Error, Result};

/// Deepest tower level built on request (`2^16` atoms).
pub const MAX_TOWER_LEVEL: usize = 16;

/// Largest coordinate count accepted by [`build_coin_noise`].
pub const MAX_COINS: usize = 6;

/// Dyadic discretizations of `[0, 1)`, levels `0..=depth`.
#[derive(Debug, Clone)]
pub struct Tower {
    levels: Vec<Space>,
}

impl Tower {
    pub fn new(depth: usize) -> Result<Self> {
        if depth > MAX_TOWER_LEVEL {
            return Err(Error::Precondition(format!("tower depth {depth} exceeds {MAX_TOWER_LEVEL}")));
        }
        let levels = (0..=depth).map(dyadic_space).collect::<Result<_>>()?;
        Ok(Tower { levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Option<&Space> {
        self.levels.get(n)
    }

    fn level_checked(&self, n: usize) -> Result<&Space> {
        self.level(n)
            .ok_or_else(|| Error::Precondition(format!("level {n} is outside a tower of depth {}", self.depth())))
    }

    /// Midpoint of atom `k` at level `n`.
    pub fn midpoint(n: usize, k: usize) -> Rational {
        rational::ratio(2 * k as i64 + 1, 1i64 << (n + 1))
    }

    /// The level a field lives on.
    pub fn level_of(&self, x: &SigmaField) -> Result<usize> {
        let n = x.atom_count().trailing_zeros() as usize;
        match self.level(n) {
            Some(s) if x.atom_count() == 1 << n && s.same_as(x.space()) => Ok(n),
            _ => Err(Error::Precondition("σ-field is not on a level of this tower".into())),
        }
    }

    /// Block preimage under the refinement `k ↦ {2k, 2k+1}`.
    pub fn lift(&self, x: &SigmaField) -> Result<SigmaField> {
        let n = self.level_of(x)?;
        let finer = self.level_checked(n + 1)?;
        let labels = x.labels();
        Ok(SigmaField::from_keys(finer, (0..finer.atom_count()).map(|a| labels[a / 2])))
    }

    /// Repeated [`Tower::lift`] up to `level`.
    pub fn lift_to(&self, x: &SigmaField, level: usize) -> Result<SigmaField> {
        let n = self.level_of(x)?;
        if level < n {
            return Err(Error::Precondition(format!("cannot lift from level {n} down to {level}")));
        }
        let target = self.level_checked(level)?;
        let shift = level - n;
        let labels = x.labels();
        Ok(SigmaField::from_keys(target, (0..target.atom_count()).map(|a| labels[a >> shift])))
    }

    /// Orbits of `k ↦ k + 2^{N−n} (mod 2^N)` at level `N`: `2^{N−n}` blocks of
    /// size `2^n`. Decreasing in `n`; the trivial σ-field at `n = N`.
    pub fn shift_invariant_field(&self, level: usize, n: usize) -> Result<SigmaField> {
        if n < 1 || n > level {
            return Err(Error::Precondition(format!("shift index {n} must lie in 1..={level}")));
        }
        let space = self.level_checked(level)?;
        let step = 1usize << (level - n);
        Ok(SigmaField::from_keys(space, (0..space.atom_count()).map(|k| k % step)))
    }

    /// Orbits of the reflection `k ↦ 2^N − 1 − k` at level `N`.
    pub fn reflection_field(&self, level: usize) -> Result<SigmaField> {
        if level < 1 {
            return Err(Error::Precondition("reflection needs level at least 1".into()));
        }
        let space = self.level_checked(level)?;
        let last = space.atom_count() - 1;
        Ok(SigmaField::from_keys(space, (0..=last).map(|k| k.min(last - k))))
    }
}

/// `2^n` uniform atoms.
pub fn dyadic_space(n: usize) -> Result<Space> {
    if n > MAX_TOWER_LEVEL {
        return Err(Error::Precondition(format!("level {n} exceeds {MAX_TOWER_LEVEL}")));
    }
    Space::uniform(1 << n)
}

/// [`Tower::shift_invariant_field`] on a fresh level-`level` space.
pub fn shift_invariant_field(level: usize, n: usize) -> Result<SigmaField> {
    Tower::new(level)?.shift_invariant_field(level, n)
}

/// [`Tower::reflection_field`] on a fresh level-`level` space.
pub fn reflection_field(level: usize) -> Result<SigmaField> {
    Tower::new(level)?.reflection_field(level)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub params: BTreeMap<String, String>,
    pub assertions: Vec<Assertion>,
    pub trajectories: Vec<Trajectory>,
}

impl ScenarioReport {
    fn new(scenario: &str) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            params: BTreeMap::new(),
            assertions: Vec::new(),
            trajectories: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    fn assert(&mut self, name: &str, pass: bool, witness: Option<String>) {
        self.assertions.push(Assertion { name: name.to_string(), pass, witness });
    }

    fn trajectory(&mut self, name: &str, values: Vec<f64>) {
        self.trajectories.push(Trajectory { name: name.to_string(), values });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }
}

/// Rounds to the 1e-12 grid used in reports.
pub fn round_report(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// `Σ_k 2^{-k} sqrt(t_k)` over exact per-probe terms.
fn weighted_root_sum(terms: &[Rational]) -> f64 {
    let mut scale = 0.5;
    let mut total = 0.0;
    for t in terms {
        total += scale * rational::to_f64(t).sqrt();
        scale *= 0.5;
    }
    total
}

/// Per-probe comparison of exact squared terms: the distance built from
/// `later` is strictly smaller when every term is no larger and one is
/// strictly smaller.
fn terms_strictly_dominated(later: &[Rational], earlier: &[Rational]) -> bool {
    later.iter().zip(earlier).all(|(a, b)| a <= b) && later.iter().zip(earlier).any(|(a, b)| a < b)
}

fn fields_witness(fields: &[&SigmaField]) -> String {
    fields.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// `x_n = shift_invariant_field(N, n)` and `y = reflection_field(N)`:
/// every `x_n ∨ y` with `n < N` is the full σ-field, yet `x_N = 0` and
/// `x_N ∨ y = y`. The distance `d(x_n, 0)` is reported per `n`.
pub fn run_join_pathology(level: usize) -> Result<ScenarioReport> {
    if level < 2 {
        return Err(Error::Precondition("join pathology needs N ≥ 2".into()));
    }
    let tower = Tower::new(level)?;
    let space = tower.level_checked(level)?.clone();
    let y = tower.reflection_field(level)?;
    let xs: Vec<SigmaField> = (1..=level).map(|n| tower.shift_invariant_field(level, n)).collect::<Result<_>>()?;
    let bottom = SigmaField::bottom(&space);
    let mut report = ScenarioReport::new("join-pathology");
    report.param("N", level);

    let joins: Vec<SigmaField> = xs.iter().map(|x| x | &y).collect();
    let prefix_bad = joins[..level - 1].iter().position(|j| !j.is_top());
    report.assert(
        "join_is_top_before_last",
        prefix_bad.is_none(),
        prefix_bad.map(|i| format!("n={}: {}", i + 1, joins[i])),
    );
    let decreasing = xs.windows(2).position(|w| !w[1].lt(&w[0]).unwrap_or(false));
    report.assert(
        "x_strictly_decreasing",
        decreasing.is_none(),
        decreasing.map(|i| format!("n={}: {}", i + 1, fields_witness(&[&xs[i], &xs[i + 1]]))),
    );
    let last = &xs[level - 1];
    report.assert("x_last_is_bottom", last.is_bottom(), (!last.is_bottom()).then(|| last.to_string()));
    let final_join = &joins[level - 1];
    let jump = final_join == &y && !y.is_top();
    report.assert("final_join_is_y_not_top", jump, (!jump).then(|| final_join.to_string()));

    let probes = default_probes(&space);
    let terms: Vec<Vec<Rational>> = xs.iter().map(|x| op_distance_terms(x, &bottom, &probes)).collect::<Result<_>>()?;
    let monotone = terms.windows(2).position(|w| !terms_strictly_dominated(&w[1], &w[0]));
    report.assert(
        "distance_strictly_decreasing",
        monotone.is_none(),
        monotone.map(|i| format!("between n={} and n={}", i + 1, i + 2)),
    );
    let reaches_zero = terms[level - 1].iter().all(|t| t == &rational::zero());
    report.assert("distance_reaches_zero", reaches_zero, None);
    report.trajectory("distance_to_bottom", terms.iter().map(|t| round_report(weighted_root_sum(t))).collect());
    Ok(report)
}

/// The fields of the meet pathology: `x_n = σ(α_1, …, α_n)` for `n = 1..=N`
/// and `y = σ(α_N)`, where `α_n` is the first `n` atoms of `N + 1`.
pub fn meet_pathology_fields(space: &Space, level: usize) -> Result<(Vec<SigmaField>, SigmaField)> {
    if space.atom_count() != level + 1 {
        return Err(Error::LengthMismatch { expected: level + 1, got: space.atom_count() });
    }
    let alphas: Vec<Event> = (1..=level).map(|n| space.event(0..n)).collect::<Result<_>>()?;
    let xs = (1..=level).map(|n| SigmaField::generated_by(space, &alphas[..n])).collect::<Result<_>>()?;
    let y = SigmaField::generated_by(space, &alphas[level - 1..])?;
    Ok((xs, y))
}

/// `x_n ↑ x_N` with `x_n ∧ y = 0` for `n < N` and `x_N ∧ y = y ≠ 0`.
///
/// `weights` must have `N + 1` entries (uniform when absent). With
/// `degenerate`, `y` is the trivial σ-field and no jump occurs.
pub fn run_meet_pathology(level: usize, weights: Option<Vec<Rational>>, degenerate: bool) -> Result<ScenarioReport> {
    if level < 3 {
        return Err(Error::Precondition("meet pathology needs N ≥ 3".into()));
    }
    let space = match weights {
        Some(w) => Space::new(w)?,
        None => Space::uniform(level + 1)?,
    };
    let (xs, mut y) = meet_pathology_fields(&space, level)?;
    if degenerate {
        y = SigmaField::bottom(&space);
    }
    let mut report = ScenarioReport::new("meet-pathology");
    report.param("N", level);
    report.param("weights", &space);
    if degenerate {
        report.param("degenerate", true);
    }

    let increasing = xs.windows(2).position(|w| !w[0].lt(&w[1]).unwrap_or(false));
    report.assert(
        "x_strictly_increasing",
        increasing.is_none(),
        increasing.map(|i| fields_witness(&[&xs[i], &xs[i + 1]])),
    );
    let sequence = FieldSequence::new(xs.clone())?;
    report.assert("x_limit_is_last", sequence.liminf() == xs[level - 1] && sequence.limsup() == xs[level - 1], None);
    let meets: Vec<SigmaField> = xs.iter().map(|x| x & &y).collect();
    let prefix_bad = meets[..level - 1].iter().position(|m| !m.is_bottom());
    report.assert(
        "meet_is_bottom_before_last",
        prefix_bad.is_none(),
        prefix_bad.map(|i| format!("n={}: {}", i + 1, meets[i])),
    );
    let last = &meets[level - 1];
    if degenerate {
        report.assert("final_meet_is_bottom", last.is_bottom(), (!last.is_bottom()).then(|| last.to_string()));
    } else {
        let jump = last == &y && !y.is_bottom();
        report.assert("final_meet_is_y_not_bottom", jump, (!jump).then(|| last.to_string()));
    }
    let probes = default_probes(&space);
    let trajectory = meets
        .iter()
        .map(|m| op_distance_terms(m, &y, &probes).map(|t| round_report(weighted_root_sum(&t))))
        .collect::<Result<_>>()?;
    report.trajectory("distance_of_meet_to_y", trajectory);
    Ok(report)
}

/// The coordinate mask of `S ⊆ {1..N}` on atom indices: coordinate `i` is
/// bit `N − i` of the atom index, so coordinate 1 is the most significant.
fn coin_atom_mask(coins: usize, subset: u32) -> usize {
    (1..=coins).filter(|i| subset & (1 << (i - 1)) != 0).map(|i| 1usize << (coins - i)).sum()
}

/// `F_S` on `{0,1}^N`: atoms agreeing on the coordinates in `S` share a block.
/// Bit `i − 1` of `subset` selects coordinate `i`.
pub fn coin_field(space: &Space, coins: usize, subset: u32) -> Result<SigmaField> {
    if space.atom_count() != 1 << coins {
        return Err(Error::LengthMismatch { expected: 1 << coins, got: space.atom_count() });
    }
    let mask = coin_atom_mask(coins, subset);
    Ok(SigmaField::from_keys(space, (0..space.atom_count()).map(|a| a & mask)))
}

/// The 2^N-element algebra `{F_S : S ⊆ {1..N}}` on `N` fair coins.
pub fn build_coin_noise(coins: usize) -> Result<AlgebraCandidate> {
    if !(1..=MAX_COINS).contains(&coins) {
        return Err(Error::Precondition(format!("coin count {coins} must lie in 1..={MAX_COINS}")));
    }
    let space = Space::uniform(1 << coins)?;
    let elems: Vec<SigmaField> = (0..1u32 << coins).map(|s| coin_field(&space, coins, s)).collect::<Result<_>>()?;
    let algebra = validate_noise_type(&space, &elems).map_err(|v| Error::CompletionInvalid(v.to_string()))?;
    let full = (1u32 << coins) - 1;
    for s in 0..=full {
        let f = coin_field(&space, coins, s)?;
        let fc = coin_field(&space, coins, full & !s)?;
        if algebra.complement(&f) != Some(&fc) {
            return Err(Error::CompletionInvalid(format!(
                "complement of coordinate set {s:#b} is not its complement set"
            )));
        }
    }
    Ok(algebra)
}

/// Validation, Q-products, closure, completion and the finite completion
/// identities on `N` coins.
pub fn run_coin_noise(coins: usize) -> Result<ScenarioReport> {
    let b = build_coin_noise(coins)?;
    let mut report = ScenarioReport::new("coin-noise");
    report.param("N", coins);
    report.param("elements", b.len());
    report.assert("noise_type", true, None);
    let products = check_algebra_projection_products(&b);
    report.assert(
        "projection_products",
        products.holds,
        products.witness.map(|w| fields_witness(&w.iter().collect::<Vec<_>>())),
    );
    let cl = closure_in_lattice(&b);
    report.assert("closure_is_algebra", cl.is_collapsed(), None);
    let c = completion(&cl)?;
    report.assert("completion_is_algebra", c.same_elements(&b), None);
    let mut demorgan = None;
    'outer: for x in c.elements() {
        for y in c.elements() {
            if !check_demorgan(&c, x, y)? {
                demorgan = Some(fields_witness(&[x, y]));
                break 'outer;
            }
        }
    }
    report.assert("de_morgan", demorgan.is_none(), demorgan);
    let mixed = check_mixed_distributivity(&cl, &b);
    report.assert(
        "mixed_distributivity",
        mixed.holds,
        mixed.witness.map(|w| fields_witness(&w.iter().collect::<Vec<_>>())),
    );
    let mut splitting = None;
    for (x, xc) in c.complement_pairs() {
        let check = check_splitting(&cl, x, xc)?;
        if !check.holds {
            splitting = Some(fields_witness(&[x, xc]));
            break;
        }
    }
    report.assert("splitting", splitting.is_none(), splitting);
    let constructions = check_completion_constructions(&cl)?;
    match constructions.coincide() {
        Some(ok) => report.assert("maximal_algebra_matches_completion", ok, None),
        None => report.param("maximality_search", "skipped above 16 elements"),
    }
    Ok(report)
}

/// `u = σ(α, γ, β∪δ)`, `v = σ(α∪β, γ∪δ)`, `w = σ(α∪γ, β∪δ)` on four atoms.
pub fn pentagon_fields(space: &Space) -> Result<(SigmaField, SigmaField, SigmaField)> {
    if space.atom_count() != 4 {
        return Err(Error::LengthMismatch { expected: 4, got: space.atom_count() });
    }
    let u = SigmaField::from_blocks(space, &[vec![0], vec![2], vec![1, 3]])?;
    let v = SigmaField::from_blocks(space, &[vec![0, 1], vec![2, 3]])?;
    let w = SigmaField::from_blocks(space, &[vec![0, 2], vec![1, 3]])?;
    Ok((u, v, w))
}

/// The two sides of `P(α)P(δ) = P(β)P(γ)` on four atoms.
pub fn cross_products(space: &Space) -> (Rational, Rational) {
    let w = space.weights();
    (&w[0] * &w[3], &w[1] * &w[2])
}

/// Checks `0 < w < u < 1`, `u ∧ v = w ∧ v = 0`, `u ∨ v = w ∨ v = 1`.
pub fn pentagon_relations_hold(u: &SigmaField, v: &SigmaField, w: &SigmaField) -> bool {
    let space = u.space();
    let (bottom, top) = (SigmaField::bottom(space), SigmaField::top(space));
    let chain = bottom.lt(w).unwrap_or(false) && w.lt(u).unwrap_or(false) && u.lt(&top).unwrap_or(false);
    chain && (u & v).is_bottom() && (w & v).is_bottom() && (u | v).is_top() && (w | v).is_top()
}

pub fn run_pentagon_scenario(weights: Vec<Rational>) -> Result<ScenarioReport> {
    let space = Space::new(weights)?;
    let (u, v, w) = pentagon_fields(&space)?;
    let mut report = ScenarioReport::new("pentagon");
    report.param("weights", &space);
    report.assert("pentagon_relations", pentagon_relations_hold(&u, &v, &w), Some(fields_witness(&[&u, &v, &w])));
    let independent = is_independent(&v, &w)?;
    let commuting = commutes(&v, &w)?;
    let (ad, bc) = cross_products(&space);
    let criterion = ad == bc;
    report.param("v_w_independent", independent);
    report.param("v_w_commuting", commuting);
    report.param("p_alpha_p_delta", rational::format(&ad));
    report.param("p_beta_p_gamma", rational::format(&bc));
    report.assert(
        "independence_matches_product_criterion",
        independent == criterion,
        Some(format!(
            "independent={independent}, P(α)P(δ)={}, P(β)P(γ)={}",
            rational::format(&ad),
            rational::format(&bc)
        )),
    );
    // v ∧ w = 0, so commuting and independence coincide for this pair.
    report.assert("commuting_matches_independence", commuting == independent, None);
    Ok(report)
}

/// The lattice of the three-atom space: five elements forming M₃.
pub fn run_diamond_scenario(weights: Option<Vec<Rational>>) -> Result<ScenarioReport> {
    let space = match weights {
        Some(w) => Space::new(w)?,
        None => Space::uniform(3)?,
    };
    if space.atom_count() != 3 {
        return Err(Error::LengthMismatch { expected: 3, got: space.atom_count() });
    }
    let lattice = enumerate_lattice(&space)?;
    let m = check_modularity(&lattice)?;
    let mut report = ScenarioReport::new("diamond");
    report.param("weights", &space);
    report.assert("five_elements", lattice.len() == 5, Some(lattice.len().to_string()));
    report.assert("modular", m.modular, None);
    report.assert(
        "not_distributive",
        !m.distributive,
        m.distributive_violation.as_ref().map(|t| fields_witness(&[&t[0], &t[1], &t[2]])),
    );
    report.assert("diamond_found", m.diamond.is_some(), None);
    report.assert("no_pentagon", m.pentagon.is_none(), None);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCriterionSummary {
    pub trials: usize,
    pub agreements: usize,
    pub independent_cases: usize,
    pub first_disagreement: Option<Space>,
}

/// Draws `trials` four-atom spaces, alternating arbitrary and product-form
/// weights, and compares `is_independent(v, w)` with the product criterion.
pub fn product_criterion_trials(rng: &mut SeededRng, trials: usize) -> Result<ProductCriterionSummary> {
    let mut summary = ProductCriterionSummary { trials, agreements: 0, independent_cases: 0, first_disagreement: None };
    for t in 0..trials {
        let space = if t % 2 == 0 { random::random_space(rng, 4) } else { random::random_product_space4(rng) };
        let (_, v, w) = pentagon_fields(&space)?;
        let independent = is_independent(&v, &w)?;
        let (ad, bc) = cross_products(&space);
        if independent == (ad == bc) {
            summary.agreements += 1;
        } else if summary.first_disagreement.is_none() {
            summary.first_disagreement = Some(space.clone());
        }
        summary.independent_cases += usize::from(independent);
    }
    Ok(summary)
}

pub fn run_product_criterion_scenario(seed: u64, trials: usize) -> Result<ScenarioReport> {
    let summary = product_criterion_trials(&mut random::rng(seed), trials)?;
    let mut report = ScenarioReport::new("product-criterion");
    report.param("seed", seed);
    report.param("trials", trials);
    report.param("independent_cases", summary.independent_cases);
    report.assert(
        "independence_matches_product_criterion",
        summary.agreements == trials,
        summary.first_disagreement.map(|s| s.to_string()),
    );
    Ok(report)
}

/// On `N` coins, `x_n = F_{{n+1..N}}` decreases to 0 and its complement
/// `x_n' = F_{{1..n}}` increases to 1. Only trajectories are reported: the
/// finite setting offers no quantity to assert about the continuum
/// behaviour of complements along such sequences.
pub fn run_complement_trajectory(coins: usize) -> Result<ScenarioReport> {
    let b = build_coin_noise(coins)?;
    let space = b.space().clone();
    let full = (1u32 << coins) - 1;
    let probes = default_probes(&space);
    let (bottom, top) = (SigmaField::bottom(&space), SigmaField::top(&space));
    let mut to_bottom = Vec::new();
    let mut complement_to_top = Vec::new();
    let mut join_to_top = Vec::new();
    for n in 0..=coins {
        let head: u32 = (1u32 << n) - 1;
        let x = coin_field(&space, coins, full & !head)?;
        let xc = b.complement(&x).expect("coin algebra is complemented").clone();
        to_bottom.push(round_report(weighted_root_sum(&op_distance_terms(&x, &bottom, &probes)?)));
        complement_to_top.push(round_report(weighted_root_sum(&op_distance_terms(&xc, &top, &probes)?)));
        join_to_top.push(round_report(weighted_root_sum(&op_distance_terms(&(&x | &xc), &top, &probes)?)));
    }
    let mut report = ScenarioReport::new("complement-trajectory");
    report.param("N", coins);
    report.trajectory("x_to_bottom", to_bottom);
    report.trajectory("complement_to_top", complement_to_top);
    report.trajectory("join_with_complement_to_top", join_to_top);
    Ok(report)
}

/// Known scenario names with one-line descriptions.
pub const SCENARIOS: &[(&str, &str)] = &[
    ("pentagon", "N5 inside the four-atom lattice; independence of v and w against P(α)P(δ) = P(β)P(γ)"),
    ("diamond", "the three-atom lattice is M3: modular, not distributive"),
    ("join-pathology", "shift-invariant fields on a dyadic tower: joins with the reflection field drop at the end"),
    ("meet-pathology", "an increasing chain whose meets with a fixed field jump from 0 to that field"),
    ("coin-noise", "the coordinate algebra of N fair coins and its completion"),
    ("product-criterion", "seeded random trials of the four-atom independence criterion"),
    ("complement-trajectory", "distances along x_n decreasing to 0 and their complements; trajectories only"),
];

/// Parsed scenario parameters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioConfig {
    pub name: String,
    pub n: Option<usize>,
    pub weights: Option<Vec<Rational>>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub degenerate: bool,
}

fn canonical_name(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('_', "-")
}

pub fn is_known_scenario(name: &str) -> bool {
    let name = canonical_name(name);
    SCENARIOS.iter().any(|(n, _)| *n == name)
}

/// Runs a scenario; `seed` is used by the randomized ones when the config has
/// none of its own.
pub fn run(config: &ScenarioConfig, seed: u64) -> Result<ScenarioReport> {
    let name = canonical_name(&config.name);
    match name.as_str() {
        "pentagon" => run_pentagon_scenario(config.weights.clone().unwrap_or_else(|| vec![rational::ratio(1, 4); 4])),
        "diamond" => run_diamond_scenario(config.weights.clone()),
        "join-pathology" => run_join_pathology(config.n.unwrap_or(6)),
        "meet-pathology" => run_meet_pathology(config.n.unwrap_or(4), config.weights.clone(), config.degenerate),
        "coin-noise" => run_coin_noise(config.n.unwrap_or(3)),
        "product-criterion" => {
            run_product_criterion_scenario(config.seed.unwrap_or(seed), config.trials.unwrap_or(1000))
        }
        "complement-trajectory" => run_complement_trajectory(config.n.unwrap_or(4)),
        _ => Err(Error::UnknownScenario(config.name.clone())),
    }
}
