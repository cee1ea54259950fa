//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each criterion has a wall-clock budget that counts as part of it.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sigma_lab::independence::{check_independence_commutation, check_tensor_intersection, IndependentPair};
use sigma_lab::lattice::{check_modularity, enumerate_lattice};
use sigma_lab::noise::{
    check_algebra_projection_products, check_completion_constructions, check_demorgan, closure_in_lattice, completion,
};
use sigma_lab::random::{self, SeededRng};
use sigma_lab::rational::ratio;
use sigma_lab::scenario::{
    build_coin_noise, pentagon_fields, pentagon_relations_hold, product_criterion_trials, run_join_pathology,
    run_meet_pathology,
};
use sigma_lab::{FieldSequence, SigmaField, Space};

const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn diamond_on_three_atoms() -> Outcome {
    let lattice = enumerate_lattice(&Space::uniform(3).map_err(fail)?).map_err(fail)?;
    ensure(lattice.len() == 5, || format!("{} elements, expected 5", lattice.len()))?;
    let r = check_modularity(&lattice).map_err(fail)?;
    ensure(r.modular, || "not modular".into())?;
    ensure(!r.distributive, || "distributive".into())?;
    ensure(r.diamond.is_some() && r.pentagon.is_none(), || "no M3, or an N5 was found".into())?;
    Ok("5 elements, modular, not distributive, M3".into())
}

fn four_atom_spaces(rng: &mut SeededRng) -> Vec<Space> {
    let mut spaces = vec![
        Space::uniform(4).unwrap(),
        Space::new(vec![ratio(1, 6), ratio(1, 3), ratio(1, 6), ratio(1, 3)]).unwrap(),
        Space::new(vec![ratio(1, 10), ratio(2, 10), ratio(3, 10), ratio(4, 10)]).unwrap(),
    ];
    for i in 0..20 {
        spaces.push(if i % 2 == 0 { random::random_space(rng, 4) } else { random::random_product_space4(rng) });
    }
    spaces
}

fn pentagon_on_four_atoms() -> Outcome {
    let mut rng = random::rng(SEED);
    let spaces = four_atom_spaces(&mut rng);
    for s in &spaces {
        let (u, v, w) = pentagon_fields(s).map_err(fail)?;
        ensure(pentagon_relations_hold(&u, &v, &w), || format!("relations fail on {s}"))?;
    }
    Ok(format!("{} spaces", spaces.len()))
}

fn product_criterion() -> Outcome {
    let s = product_criterion_trials(&mut random::rng(SEED), 1000).map_err(fail)?;
    ensure(s.agreements == s.trials, || {
        format!("{} of {} agree; first disagreement on {:?}", s.agreements, s.trials, s.first_disagreement)
    })?;
    Ok(format!("{} of {} agree, {} independent", s.agreements, s.trials, s.independent_cases))
}

fn independence_is_commuting_with_trivial_meet() -> Outcome {
    let mut rng = random::rng(SEED);
    let mut pairs = 0u64;
    let mut independent = 0u64;
    for n in 1..=5 {
        for i in 0..20 {
            let space = if n == 4 && i % 2 == 1 {
                random::random_product_space4(&mut rng)
            } else if i == 0 {
                Space::uniform(n).unwrap()
            } else {
                random::random_space(&mut rng, n)
            };
            let lattice = enumerate_lattice(&space).map_err(fail)?;
            for x in &lattice {
                for y in &lattice {
                    let r = check_independence_commutation(x, y).map_err(fail)?;
                    ensure(r.holds(), || format!("{x} and {y} on {space}: {r:?}"))?;
                    pairs += 1;
                    independent += u64::from(r.independent);
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, {independent} independent"))
}

fn coin_projection_products() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let b = build_coin_noise(n).map_err(fail)?;
        let c = check_algebra_projection_products(&b);
        ensure(c.holds, || format!("N={n}: fails at {:?}", c.witness))?;
        ensure(c.checked == 1 << (2 * n), || format!("N={n}: {} pairs checked", c.checked))?;
        checked += c.checked;
    }
    Ok(format!("{checked} ordered pairs"))
}

fn tensor_intersection_quadruples() -> Outcome {
    let mut rng = random::rng(SEED);
    for i in 0..200 {
        let s1 = random::random_space(&mut rng, 3);
        let s2 = random::random_space(&mut rng, 3);
        let q = random::random_quadruple(&mut rng, 3, 3);
        ensure(check_tensor_intersection(&s1, &s2, &q).map_err(fail)?, || format!("quadruple {i} fails"))?;
    }
    Ok("200 quadruples".into())
}

fn embed_split_exhaustive() -> Outcome {
    let mut spaces: Vec<Space> = (1..=5).map(|n| Space::uniform(n).unwrap()).collect();
    spaces.push(Space::new(vec![ratio(1, 6), ratio(1, 3), ratio(1, 6), ratio(1, 3)]).unwrap());
    spaces.push(Space::from_masses(&[2, 2, 2, 1, 1]).unwrap());
    spaces.push(Space::from_masses(&[1, 2, 2, 4]).unwrap());
    let mut pairs = 0u64;
    let mut checks = 0u64;
    for space in &spaces {
        let lattice = enumerate_lattice(space).map_err(fail)?;
        for x in &lattice {
            for y in &lattice {
                let Ok(pair) = IndependentPair::new(x.clone(), y.clone()) else { continue };
                pairs += 1;
                let below = |f: &SigmaField| -> Vec<SigmaField> {
                    lattice.iter().filter(|g| g.leq(f).unwrap()).cloned().collect()
                };
                let (us, vs) = (below(x), below(y));
                let mut image = Vec::new();
                for u in &us {
                    for v in &vs {
                        ensure(pair.roundtrip(u, v).map_err(fail)?, || {
                            format!("roundtrip fails for {u}, {v} under ({x}, {y})")
                        })?;
                        image.push(pair.embed(u, v).map_err(fail)?);
                        checks += 1;
                    }
                }
                for z1 in &image {
                    for z2 in &image {
                        ensure(pair.check_homomorphism(z1, z2).map_err(fail)?, || {
                            format!("homomorphism fails for {z1}, {z2} under ({x}, {y})")
                        })?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{} spaces, {pairs} independent pairs, {checks} checks", spaces.len()))
}

fn coin_completion() -> Outcome {
    for n in 1..=3 {
        let b = build_coin_noise(n).map_err(fail)?;
        let cl = closure_in_lattice(&b);
        let c = completion(&cl).map_err(fail)?;
        ensure(c.same_elements(&b), || format!("N={n}: completion differs from B"))?;
        let t = check_completion_constructions(&cl).map_err(fail)?;
        ensure(t.coincide() == Some(true), || format!("N={n}: constructions disagree: {:?}", t.coincide()))?;
        ensure(t.by_complements.as_slice() == b.elements(), || format!("N={n}: completion by complements is not B"))?;
        for x in c.elements() {
            for y in c.elements() {
                ensure(check_demorgan(&c, x, y).map_err(fail)?, || format!("N={n}: De Morgan fails at {x}, {y}"))?;
            }
        }
    }
    Ok("N = 1, 2, 3".into())
}

fn join_pathology() -> Outcome {
    for n in [2, 6, 10] {
        let r = run_join_pathology(n).map_err(fail)?;
        let failed: Vec<&str> = r.failures().map(|a| a.name.as_str()).collect();
        ensure(failed.is_empty(), || format!("N={n}: {}", failed.join(", ")))?;
        for name in [
            "join_is_top_before_last",
            "final_join_is_y_not_top",
            "distance_strictly_decreasing",
            "distance_reaches_zero",
        ] {
            ensure(r.assertion(name).is_some(), || format!("N={n}: {name} not reported"))?;
        }
    }
    Ok("N = 2, 6, 10".into())
}

fn meet_pathology() -> Outcome {
    for n in 3..=8 {
        let r = run_meet_pathology(n, None, false).map_err(fail)?;
        let failed: Vec<&str> = r.failures().map(|a| a.name.as_str()).collect();
        ensure(failed.is_empty(), || format!("N={n}: {}", failed.join(", ")))?;
        for name in ["meet_is_bottom_before_last", "final_meet_is_y_not_bottom"] {
            ensure(r.assertion(name).is_some(), || format!("N={n}: {name} not reported"))?;
        }
    }
    Ok("N = 3..8".into())
}

/// Every sequence over `elems` of length `1..=max_len`, as index vectors.
fn all_sequences(count: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|s| (0..count).map(move |i| [s.as_slice(), &[i]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The finite stand-in for the continuum results: the completion identities on
/// coin algebras, and an exhaustive subsequence search on commuting sequences.
fn finite_substitution() -> Outcome {
    let mut sequences = 0u64;
    for (coins, max_len) in [(2usize, 6usize), (3, 4)] {
        let b = build_coin_noise(coins).map_err(fail)?;
        let cl = closure_in_lattice(&b);
        ensure(cl.is_collapsed(), || format!("{coins} coins: closure grew"))?;
        let elems = b.elements();
        for idx in all_sequences(elems.len(), max_len) {
            let terms: Vec<SigmaField> = idx.iter().map(|&i| elems[i].clone()).collect();
            let seq = FieldSequence::new(terms).map_err(fail)?;
            let limit = seq.limit().clone();
            let (lo, hi) = (seq.liminf(), seq.limsup());
            ensure(lo.leq(&hi).unwrap() && lo.leq(&limit).unwrap() && limit.leq(&hi).unwrap(), || {
                format!("liminf/limsup order fails on {idx:?}")
            })?;
            let len = seq.len();
            let mut reaches = false;
            // Subsequences keep the last term so the eventual value is shared.
            for mask in 0u32..1 << (len - 1) {
                let mut pick: Vec<usize> = (0..len - 1).filter(|i| mask & (1 << i) != 0).collect();
                pick.push(len - 1);
                let sub = seq.subsequence(&pick).map_err(fail)?;
                let sub_lo = sub.liminf();
                ensure(lo.leq(&sub_lo).unwrap(), || format!("subsequence lowers liminf on {idx:?} at {pick:?}"))?;
                reaches |= sub_lo == limit;
            }
            ensure(reaches, || format!("no subsequence reaches the limit on {idx:?}"))?;
            sequences += 1;
        }
    }
    Ok(format!("{sequences} sequences searched; completion checks in criterion 8"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("M3 on the uniform three-atom space", 1, diamond_on_three_atoms),
        ("N5 relations on four-atom spaces", 1, pentagon_on_four_atoms),
        ("independence of v, w agrees with P(a)P(d) = P(b)P(c)", 5, product_criterion),
        ("independent iff commuting with trivial meet, n <= 5", 30, independence_is_commuting_with_trivial_meet),
        ("Q_x Q_y = Q_(x^y) on coin algebras, N = 1..4", 30, coin_projection_products),
        ("tensor-intersection identity on 3x3 products", 30, tensor_intersection_quadruples),
        ("embed/split and homomorphism identities, n <= 5", 60, embed_split_exhaustive),
        ("coin completion equals maximal algebra equals B", 60, coin_completion),
        ("join pathology N = 2, 6, 10", 10, join_pathology),
        ("meet pathology N = 3..8", 5, meet_pathology),
        ("finite substitution for the continuum results", 60, finite_substitution),
    ];
    let mut all_ok = true;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget} s budget")),
            Err(e) => (false, e),
        };
        all_ok &= ok;
        println!(
            "{} {:>2}  {name}  [{:.3} s / {budget} s]  {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
