//! Cross-checks of the fast decision layers against independent
//! brute-force computations: truth tables for satisfiability and minimal
//! unsatisfiability, exhaustive path search for reachability, and
//! exhaustive complement-pair systems for the cycle recogniser.

use rand::prelude::*;
use rand::rngs::StdRng;

use twomus::oracle::DEFAULT_VERTEX_BOUND;
use twomus::{
    brute_mus_enum, brute_paths, clause, csdp_full, csdp_step, gen_family, is_2mu, is_bk, lit,
    solve_2sat, truth_table_sat, Clause, ClauseSet, CsdpOutcome, Family, ImpDigraph, Lit, PathMode,
};

/// The unit and (tautology-free) binary clauses over the first `nv`
/// variables, in a fixed order.
fn clause_universe(nv: u32) -> Vec<Clause> {
    let mut out = Vec::new();
    for v in 1..=nv as i32 {
        out.push(clause(&[v]));
        out.push(clause(&[-v]));
    }
    for a in 1..=nv as i32 {
        for b in (a + 1)..=nv as i32 {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(clause(&[sa * a, sb * b]));
            }
        }
    }
    out
}

/// Minimal unsatisfiability by definition: unsatisfiable, and satisfiable
/// after deleting any single clause.
fn oracle_mu(f: &ClauseSet) -> bool {
    if truth_table_sat(f).expect("small instance") {
        return false;
    }
    (0..f.c()).all(|drop| {
        let keep: Vec<usize> = (0..f.c()).filter(|&j| j != drop).collect();
        truth_table_sat(&f.subset(&keep)).expect("small instance")
    })
}

fn check_against_oracles(f: &ClauseSet) {
    let tt = truth_table_sat(f).expect("small instance");
    assert_eq!(
        solve_2sat(f).is_sat(),
        tt,
        "solver/truth-table mismatch on {}",
        f.write_dimacs()
    );
    assert_eq!(
        is_2mu(f),
        oracle_mu(f),
        "minimality mismatch on {}",
        f.write_dimacs()
    );
    match csdp_full(f) {
        CsdpOutcome::Fail(_) => assert!(
            !oracle_mu(f),
            "a failed reduction must rule out minimality: {}",
            f.write_dimacs()
        ),
        CsdpOutcome::Reduced { result, .. } => assert_eq!(
            oracle_mu(f),
            oracle_mu(&result),
            "reduction must preserve minimality status: {}",
            f.write_dimacs()
        ),
    }
}

#[test]
fn two_variable_universe_agrees_exhaustively() {
    let universe = clause_universe(2);
    assert_eq!(universe.len(), 8);
    for mask in 0u32..(1 << universe.len()) {
        let mut clauses: Vec<Clause> = (0..universe.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| universe[i])
            .collect();
        check_against_oracles(&ClauseSet::from_clauses(clauses.clone()));
        clauses.push(Clause::Empty);
        check_against_oracles(&ClauseSet::from_clauses(clauses));
    }
}

#[test]
fn three_variable_random_sample_agrees() {
    let universe = clause_universe(3);
    assert_eq!(universe.len(), 18);
    let mut rng = StdRng::seed_from_u64(0x0a91);
    for round in 0..2000 {
        let size = rng.gen_range(1..=9);
        let mut clauses: Vec<Clause> = universe.choose_multiple(&mut rng, size).copied().collect();
        if round % 17 == 0 {
            clauses.push(Clause::Empty);
        }
        check_against_oracles(&ClauseSet::from_clauses(clauses));
    }
}

/// All ways of picking `k` complement pairs of binary clauses over `nv`
/// variables; the recogniser must accept exactly the minimally
/// unsatisfiable ones.
fn complement_pairs(nv: i32) -> Vec<[Clause; 2]> {
    let mut pairs = Vec::new();
    for a in 1..=nv {
        for b in (a + 1)..=nv {
            pairs.push([clause(&[a, b]), clause(&[-a, -b])]);
            pairs.push([clause(&[a, -b]), clause(&[-a, b])]);
        }
    }
    pairs
}

fn choose_sets(pool: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        out.push(pick.clone());
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] != i + pool - k {
                break;
            }
        }
        if pick[i] == i + pool - k {
            return out;
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

#[test]
fn cycle_recognition_matches_brute_force_on_pair_systems() {
    for nv in 2..=4i32 {
        let pairs = complement_pairs(nv);
        for combo in choose_sets(pairs.len(), nv as usize) {
            let clauses: Vec<Clause> = combo.iter().flat_map(|&i| pairs[i]).collect();
            let f = ClauseSet::from_clauses(clauses);
            let recognised = is_bk(&f);
            assert_eq!(
                recognised.is_some(),
                oracle_mu(&f),
                "cycle-system recognition mismatch on {}",
                f.write_dimacs()
            );
            if let Some(k) = recognised {
                assert_eq!(k as i64, f.delta());
                assert_eq!(k, nv as usize);
            }
        }
    }
}

fn random_formula(rng: &mut StdRng, universe: &[Clause], size: usize) -> ClauseSet {
    ClauseSet::from_clauses(universe.choose_multiple(rng, size).copied().collect())
}

#[test]
fn reach_agrees_with_exhaustive_path_search() {
    let universe = clause_universe(4);
    let mut rng = StdRng::seed_from_u64(0x7ea0);
    for _ in 0..400 {
        let size = rng.gen_range(2..=8);
        let f = random_formula(&mut rng, &universe, size);
        if f.n() == 0 {
            continue;
        }
        let g = ImpDigraph::new(&f).expect("no empty clause in the universe");
        let all: Vec<Lit> = g.lits().to_vec();
        let x = *all.choose(&mut rng).expect("nonempty");
        let y = *all.choose(&mut rng).expect("nonempty");
        let excluded: Vec<Lit> = all
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.25))
            .collect();
        let fast = g.reach(x, y, &excluded).expect("vertices of g");
        let slow = brute_paths(&g, x, PathMode::SimpleTo(y), DEFAULT_VERTEX_BOUND)
            .expect("within bound")
            .iter()
            .any(|p| p.verts().iter().all(|v| !excluded.contains(v)));
        assert_eq!(fast, slow, "reach mismatch on {}", f.write_dimacs());
    }
}

/// Two-unit correspondence: the regular paths from x to ȳ are in bijection
/// with the minimally unsatisfiable subsets containing both unit-clauses,
/// via path ↦ {unit x} ∪ arc clauses ∪ {unit y}.
#[test]
fn regular_paths_biject_with_two_unit_subsets() {
    let universe = clause_universe(5);
    let mut rng = StdRng::seed_from_u64(0xb17e);
    let mut nonempty = 0u32;
    for _ in 0..300 {
        let size = rng.gen_range(2..=9);
        let mut clauses: Vec<Clause> =
            universe[10..].choose_multiple(&mut rng, size).copied().collect();
        let x = lit(*[1, 2, 3, 4, 5].choose(&mut rng).expect("nonempty") as i32);
        let x = if rng.gen_bool(0.5) { x } else { x.complement() };
        let y = if rng.gen_bool(0.15) {
            x.complement()
        } else {
            let mut w = x;
            while w.var() == x.var() {
                w = lit(rng.gen_range(1..=5));
            }
            if rng.gen_bool(0.5) {
                w
            } else {
                w.complement()
            }
        };
        clauses.push(Clause::Unit(x));
        clauses.push(Clause::Unit(y));
        let f = ClauseSet::from_clauses(clauses);
        let xi = f.index_of(&Clause::Unit(x)).expect("just inserted") as u32;
        let yi = f.index_of(&Clause::Unit(y)).expect("just inserted") as u32;
        let g = ImpDigraph::new(&f).expect("no empty clause");

        let paths = brute_paths(&g, x, PathMode::RegularTo(y.complement()), DEFAULT_VERTEX_BOUND)
            .expect("within bound");
        let mut images: Vec<Vec<u32>> = Vec::new();
        for p in &paths {
            let mut idx = vec![xi, yi];
            for (a, b) in p.arcs() {
                idx.push(g.clause_index_of_arc(a, b).expect("path arc") as u32);
            }
            idx.sort_unstable();
            idx.dedup();
            images.push(idx);
        }
        images.sort();
        let distinct = {
            let mut d = images.clone();
            d.dedup();
            d.len()
        };
        assert_eq!(distinct, paths.len(), "path-to-subset map must be injective");

        let mut two_unit: Vec<Vec<u32>> = brute_mus_enum(&f, 20)
            .expect("small instance")
            .into_iter()
            .map(|r| r.indices)
            .filter(|idx| idx.contains(&xi) && idx.contains(&yi))
            .collect();
        two_unit.sort();
        assert_eq!(images, two_unit, "bijection failed on {}", f.write_dimacs());
        nonempty += u32::from(!paths.is_empty());
    }
    assert!(nonempty > 40, "sample too degenerate to be meaningful");
}

/// On minimally unsatisfiable inputs every literal has degree ≤ 2, a
/// successful reduction step keeps that bound, and it keeps minimality.
/// (The degree bound is NOT preserved on arbitrary low-degree inputs; the
/// class that is closed under the reduction is the minimal one.)
#[test]
fn reduction_steps_keep_minimal_sets_low_degree() {
    let low_degree = |f: &ClauseSet| {
        f.vars()
            .iter()
            .all(|&v| f.ldeg(lit(v as i32)) <= 2 && f.ldeg(lit(-(v as i32))) <= 2)
    };
    let mut inputs: Vec<ClauseSet> = Vec::new();
    for tag in Family::ALL {
        let lengths: &[usize] = match tag {
            Family::Ia => &[],
            Family::Ib | Family::IIa => &[2],
            Family::IIb | Family::III => &[1, 2],
            Family::IV => &[1, 1, 2],
        };
        for seed in 0..25 {
            inputs.push(gen_family(tag, lengths, seed).expect("template lengths fit"));
        }
    }
    let universe = clause_universe(3);
    let mut rng = StdRng::seed_from_u64(0x1de9);
    while inputs.len() < 200 {
        let size = rng.gen_range(2..=7);
        let f = random_formula(&mut rng, &universe, size);
        if oracle_mu(&f) {
            inputs.push(f);
        }
    }
    let mut reduced_seen = 0u32;
    for f in &inputs {
        assert!(low_degree(f), "minimal sets have low literal degrees");
        for &v in f.measures().singular.iter() {
            match csdp_step(f, v).expect("v is singular in f") {
                CsdpOutcome::Reduced { result, .. } => {
                    assert!(
                        low_degree(&result),
                        "degree bound broken after eliminating {v} from {}",
                        f.write_dimacs()
                    );
                    assert!(oracle_mu(&result), "minimality lost eliminating {v}");
                    reduced_seen += 1;
                }
                CsdpOutcome::Fail(fail) => panic!(
                    "no step may fail on a minimal set: {fail:?} on {}",
                    f.write_dimacs()
                ),
            }
        }
    }
    assert!(reduced_seen > 100, "sample too degenerate to be meaningful");
}
