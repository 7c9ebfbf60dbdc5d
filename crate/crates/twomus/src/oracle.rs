//! Brute-force ground truth for the rest of the crate: truth-table
//! satisfiability, exhaustive enumeration of minimally unsatisfiable
//! subsets, exhaustive path enumeration by plain backtracking, and seeded
//! generators for the six deficiency-one families.
//!
//! Everything here trades speed for transparency and is guarded by explicit
//! size bounds; the only shared machinery with the fast layers is the
//! clause/digraph vocabulary itself.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, Lit};
use crate::idg::{ImpDigraph, Path};
use crate::mu::{Family, MusRecord};

/// Default cap on clause count for subset exhaustion.
pub const DEFAULT_CLAUSE_BOUND: usize = 20;
/// Default cap on digraph vertices for path exhaustion.
pub const DEFAULT_VERTEX_BOUND: usize = 24;
// subset-table memory cap for brute_mus_enum
const SUBSET_TABLE_BYTE_BOUND: usize = 512 << 20;
// variable cap for truth tables
const TRUTH_TABLE_VAR_BOUND: usize = 24;

/// Errors of the brute-force layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// An instance is too large for exhaustive treatment.
    #[error("instance exceeds the brute-force size bound: {0}")]
    SizeBound(String),
    /// A queried literal is not a vertex of the digraph.
    #[error("literal {0} is not a vertex of this digraph")]
    UnknownVertex(Lit),
    /// Chain lengths inconsistent with a family template.
    #[error("family {family} takes {expected}, got {got:?}")]
    BadLengths {
        family: Family,
        expected: &'static str,
        got: Vec<usize>,
    },
}

// ---------------------------------------------------------------------------
// Truth tables

// Bitmask over all 2^n assignments of f's variables: bit a is set iff the
// assignment reading the r-th variable's value from bit r of a satisfies the
// clause.
fn clause_mask(cl: &Clause, vars: &[u32], blocks: usize) -> Vec<u64> {
    let mut mask = vec![0u64; blocks];
    let n = vars.len();
    // enumerate assignments; fine at oracle scale
    for a in 0..(1usize << n) {
        let sat = cl.lits().any(|l| {
            let r = vars.binary_search(&l.var()).expect("clause variable occurs in formula");
            ((a >> r) & 1 == 1) == l.is_pos()
        });
        if sat {
            mask[a / 64] |= 1u64 << (a % 64);
        }
    }
    mask
}

/// Satisfiability by truth table, for cross-checking the fast solver.
pub fn truth_table_sat(f: &ClauseSet) -> Result<bool, OracleError> {
    let n = f.n();
    if n > TRUTH_TABLE_VAR_BOUND {
        return Err(OracleError::SizeBound(format!(
            "{n} variables > {TRUTH_TABLE_VAR_BOUND}"
        )));
    }
    let blocks = (1usize << n).div_ceil(64).max(1);
    let mut acc = vec![u64::MAX; blocks];
    // mask off the bits beyond 2^n in the last block
    if (1usize << n) % 64 != 0 {
        let used = (1usize << n) % 64;
        *acc.last_mut().expect("at least one block") = (1u64 << used) - 1;
    }
    for cl in f.clauses() {
        let cm = clause_mask(cl, f.vars(), blocks);
        let mut any = false;
        for (a, c) in acc.iter_mut().zip(&cm) {
            *a &= c;
            any |= *a != 0;
        }
        if !any {
            return Ok(false);
        }
    }
    Ok(acc.iter().any(|&b| b != 0))
}

/// Exhaustive enumeration of the minimally unsatisfiable subsets of `f`:
/// the subsets that are unsatisfiable while every single-clause deletion is
/// satisfiable. Results are ordered by subset size, then lexicographically
/// by index set. `clause_bound` caps `c(f)`.
pub fn brute_mus_enum(f: &ClauseSet, clause_bound: usize) -> Result<Vec<MusRecord>, OracleError> {
    let c = f.c();
    let n = f.n();
    if c > clause_bound {
        return Err(OracleError::SizeBound(format!(
            "{c} clauses > bound {clause_bound}"
        )));
    }
    if n > TRUTH_TABLE_VAR_BOUND {
        return Err(OracleError::SizeBound(format!(
            "{n} variables > {TRUTH_TABLE_VAR_BOUND}"
        )));
    }
    let blocks = (1usize << n).div_ceil(64).max(1);
    let table_bytes = (1usize << c) * blocks * 8;
    if table_bytes > SUBSET_TABLE_BYTE_BOUND {
        return Err(OracleError::SizeBound(format!(
            "subset table needs {table_bytes} bytes"
        )));
    }
    let full = {
        let mut m = vec![u64::MAX; blocks];
        if (1usize << n) % 64 != 0 {
            let used = (1usize << n) % 64;
            *m.last_mut().expect("at least one block") = (1u64 << used) - 1;
        }
        m
    };
    let clause_masks: Vec<Vec<u64>> = f
        .clauses()
        .iter()
        .map(|cl| clause_mask(cl, f.vars(), blocks))
        .collect();
    // models[s] = bitmask of assignments satisfying every clause in subset s,
    // built from the subset with the lowest clause removed
    let mut models = vec![0u64; (1usize << c) * blocks];
    models[..blocks].copy_from_slice(&full);
    for s in 1..(1usize << c) {
        let low = s.trailing_zeros() as usize;
        let prev = s & (s - 1);
        for b in 0..blocks {
            models[s * blocks + b] = models[prev * blocks + b] & clause_masks[low][b];
        }
    }
    let is_unsat = |s: usize| models[s * blocks..(s + 1) * blocks].iter().all(|&b| b == 0);
    let mut hits: Vec<usize> = Vec::new();
    for s in 1..(1usize << c) {
        if !is_unsat(s) {
            continue;
        }
        let minimal = (0..c).all(|i| (s >> i) & 1 == 0 || !is_unsat(s ^ (1 << i)));
        if minimal {
            hits.push(s);
        }
    }
    hits.sort_by_key(|&s| (s.count_ones(), s));
    Ok(hits
        .into_iter()
        .map(|s| {
            let indices: Vec<u32> = (0..c as u32).filter(|i| (s >> i) & 1 == 1).collect();
            MusRecord::new(indices, None, None)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Path exhaustion

/// What [`brute_paths`] should collect, starting from a fixed literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMode {
    /// All paths (distinct vertices) ending at the given literal; includes
    /// the length-0 path when start and end coincide.
    SimpleTo(Lit),
    /// All vertex-regular paths (distinct variables) ending at the given
    /// literal; includes the length-0 path when start and end coincide.
    RegularTo(Lit),
    /// All paths whose only variable repetition is between the last vertex
    /// and an earlier one (the prefix without the last vertex being
    /// regular).
    NearlyRegular,
}

/// Exhaustive path enumeration by depth-first backtracking over the
/// digraph's ordered adjacency; output is in path-lexicographic order of the
/// active literal order. `vertex_bound` caps `|V(G)|`.
pub fn brute_paths(
    g: &ImpDigraph,
    x: Lit,
    mode: PathMode,
    vertex_bound: usize,
) -> Result<Vec<Path>, OracleError> {
    if g.lit_count() > vertex_bound {
        return Err(OracleError::SizeBound(format!(
            "{} vertices > bound {vertex_bound}",
            g.lit_count()
        )));
    }
    let need = |l: Lit| g.lit_index(l).map(|_| ()).ok_or(OracleError::UnknownVertex(l));
    need(x)?;
    match mode {
        PathMode::SimpleTo(y) | PathMode::RegularTo(y) => need(y)?,
        PathMode::NearlyRegular => {}
    }
    let mut out: Vec<Path> = Vec::new();
    let mut stack: Vec<Lit> = vec![x];
    walk(g, mode, &mut stack, &mut out);
    Ok(out)
}

fn walk(g: &ImpDigraph, mode: PathMode, path: &mut Vec<Lit>, out: &mut Vec<Path>) {
    let v = *path.last().expect("path never empty");
    match mode {
        PathMode::SimpleTo(y) | PathMode::RegularTo(y) if v == y => {
            out.push(Path::new(path.clone()).expect("backtracking keeps vertices distinct"));
        }
        _ => {}
    }
    let nexts: Vec<Lit> = g
        .out_neighbors(v)
        .expect("path vertices exist in the digraph")
        .map(|(w, _)| w)
        .collect();
    for w in nexts {
        if path.contains(&w) {
            continue;
        }
        let clash = path.iter().any(|p| p.var() == w.var());
        match mode {
            PathMode::SimpleTo(_) => {
                path.push(w);
                walk(g, mode, path, out);
                path.pop();
            }
            PathMode::RegularTo(_) => {
                if !clash {
                    path.push(w);
                    walk(g, mode, path, out);
                    path.pop();
                }
            }
            PathMode::NearlyRegular => {
                if clash {
                    path.push(w);
                    out.push(Path::new(path.clone()).expect("vertices distinct"));
                    path.pop();
                } else {
                    path.push(w);
                    walk(g, mode, path, out);
                    path.pop();
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Family generators

// clauses of the arc chain v_0 -> v_1 -> ... -> v_k, one clause per arc
fn chain_clauses(verts: &[i32]) -> Vec<Clause> {
    verts
        .windows(2)
        .map(|w| {
            Clause::from_lits(&[Lit::new(-w[0]), Lit::new(w[1])]).expect("template arcs are clash-free")
        })
        .collect()
}

/// Builds a fresh instance of a family template and hides it behind a
/// seeded random variable isomorphism (renaming onto a sparse id range,
/// then sign flips). The result classifies back to `tag` and is minimally
/// unsatisfiable.
///
/// Chain lengths per tag (fresh variables unless said otherwise):
/// * `Ia`: no lengths — the complementary unit pair.
/// * `Ib` `[k]`, `k ≥ 0`: units `{x}`, `{y}` joined by a chain from `x` to
///   `ȳ` through `k` fresh variables.
/// * `IIa` `[k]`, `k ≥ 1`: unit `{x}` and a chain from `x` to `x̄` through
///   `k` fresh variables.
/// * `IIb` `[p, q]`, `p, q ≥ 1`: unit `{x}`, a `p`-arc chain from `x` to the
///   repeated variable `v`, and a loop from `v` to `v̄` through `q` fresh
///   variables.
/// * `III` `[p, q]`, `p, q ≥ 1`: a loop from `x` to `x̄` through `p` fresh
///   variables and back through `q` more.
/// * `IV` `[p, q, r]`, `p ≥ 1`, `q ≥ 0`, `r ≥ 1`: a chain from `x` to `x̄`
///   through `p` fresh variables, onward to `y` through `q` more, and a loop
///   from `y` to `ȳ` through `r` more.
pub fn gen_family(tag: Family, lengths: &[usize], seed: u64) -> Result<ClauseSet, OracleError> {
    let bad = |expected: &'static str| OracleError::BadLengths {
        family: tag,
        expected,
        got: lengths.to_vec(),
    };
    let mut clauses: Vec<Clause> = Vec::new();
    let n: usize; // fresh variables used, ids 1..=n
    match tag {
        Family::Ia => {
            if !lengths.is_empty() {
                return Err(bad("no lengths"));
            }
            n = 1;
            clauses.push(Clause::Unit(Lit::new(1)));
            clauses.push(Clause::Unit(Lit::new(-1)));
        }
        Family::Ib => {
            let [k] = lengths else { return Err(bad("[k] with k ≥ 0")) };
            n = k + 2;
            let y = n as i32;
            clauses.push(Clause::Unit(Lit::new(1)));
            clauses.push(Clause::Unit(Lit::new(y)));
            let mut verts: Vec<i32> = (1..=(k + 1) as i32).collect();
            verts.push(-y);
            clauses.extend(chain_clauses(&verts));
        }
        Family::IIa => {
            let [k] = lengths else { return Err(bad("[k] with k ≥ 1")) };
            if *k < 1 {
                return Err(bad("[k] with k ≥ 1"));
            }
            n = k + 1;
            clauses.push(Clause::Unit(Lit::new(1)));
            let mut verts: Vec<i32> = (1..=(k + 1) as i32).collect();
            verts.push(-1);
            clauses.extend(chain_clauses(&verts));
        }
        Family::IIb => {
            let [p, q] = lengths else { return Err(bad("[p, q] with p, q ≥ 1")) };
            if *p < 1 || *q < 1 {
                return Err(bad("[p, q] with p, q ≥ 1"));
            }
            n = p + q + 1;
            let v = (p + 1) as i32;
            clauses.push(Clause::Unit(Lit::new(1)));
            let mut verts: Vec<i32> = (1..=(p + q + 1) as i32).collect();
            verts.push(-v);
            clauses.extend(chain_clauses(&verts));
        }
        Family::III => {
            let [p, q] = lengths else { return Err(bad("[p, q] with p, q ≥ 1")) };
            if *p < 1 || *q < 1 {
                return Err(bad("[p, q] with p, q ≥ 1"));
            }
            n = p + q + 1;
            let mut verts: Vec<i32> = vec![1];
            verts.extend(2..=(p + 1) as i32);
            verts.push(-1);
            verts.extend((p + 2) as i32..=(p + q + 1) as i32);
            verts.push(1);
            clauses.extend(chain_clauses(&verts));
        }
        Family::IV => {
            let [p, q, r] = lengths else {
                return Err(bad("[p, q, r] with p ≥ 1, q ≥ 0, r ≥ 1"));
            };
            if *p < 1 || *r < 1 {
                return Err(bad("[p, q, r] with p ≥ 1, q ≥ 0, r ≥ 1"));
            }
            n = p + q + r + 2;
            let y = (p + q + 2) as i32;
            let mut verts: Vec<i32> = vec![1];
            verts.extend(2..=(p + 1) as i32);
            verts.push(-1);
            verts.extend((p + 2) as i32..=(p + q + 1) as i32);
            verts.push(y);
            verts.extend((p + q + 3) as i32..=(p + q + r + 2) as i32);
            verts.push(-y);
            clauses.extend(chain_clauses(&verts));
        }
    }
    let canonical = ClauseSet::from_clauses(clauses);
    debug_assert_eq!(canonical.n(), n);
    // hide the construction behind a random isomorphism
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<u32> = (1..=(2 * n.max(1)) as u32).collect();
    pool.shuffle(&mut rng);
    let rename: std::collections::BTreeMap<u32, u32> = (1..=n as u32)
        .map(|v| (v, pool[(v - 1) as usize]))
        .collect();
    let flips: std::collections::BTreeSet<u32> = rename
        .values()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Ok(canonical
        .apply_isomorphism(&rename, &flips)
        .expect("renaming is a bijection by construction"))
}
