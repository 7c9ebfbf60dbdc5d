//! Finding one minimally unsatisfiable subset at a time: a deletion-based
//! baseline that works on any 2-CNF, and digraph-based searches that target
//! subsets containing designated unit-clauses.
//!
//! The digraph routes rest on two facts. A subset containing two given
//! unit-clauses {x}, {y} corresponds exactly to a vertex-regular path from
//! x to ȳ, and a subset containing {x} corresponds to a path from x that
//! repeats exactly one variable — so finding is reachability plus
//! truncation, and the one-unit finder simply takes the first output of the
//! ordered enumerator, keeping a single code path for both jobs.

use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, Lit};
use crate::idg::{IdgError, ImpDigraph, LitOrder, Path};
use crate::mu::{classify_family, Family, MusRecord};
use crate::musenum::{enum_unit, EnumError};
use crate::regular::{find_regular, shortest_regular};
use crate::twosat::{solve_2sat, solve_2sat_masked};

/// Errors of the MUS-finding layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FindError {
    /// The clause-set is satisfiable, so it has no unsatisfiable subset.
    #[error("the clause-set is satisfiable")]
    Satisfiable,
    /// A designated clause is not a unit-clause.
    #[error("clause {0} is not a unit-clause")]
    NotUnit(Clause),
    /// A designated unit-clause does not occur in the clause-set.
    #[error("unit-clause {0} does not occur in the clause-set")]
    MissingUnit(Clause),
    /// The two designated unit-clauses are the same clause.
    #[error("the two designated unit-clauses are both {0}")]
    IdenticalUnits(Clause),
    /// Path endpoints over the same variable never admit a regular path.
    #[error("endpoints {0} and {1} share a variable")]
    SameVariableEndpoints(Lit, Lit),
    /// The clause-set or a query literal was unsuitable for the digraph.
    #[error(transparent)]
    Digraph(#[from] IdgError),
}

impl From<EnumError> for FindError {
    fn from(e: EnumError) -> FindError {
        match e {
            EnumError::NotUnit(c) => FindError::NotUnit(c),
            EnumError::MissingUnit(c) => FindError::MissingUnit(c),
            EnumError::Digraph(e) => FindError::Digraph(e),
        }
    }
}

/// Which unit-clause profile [`mus_unit_sweep`] looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    /// A subset containing two unit-clauses (Family I).
    ExactlyTwo,
    /// A subset containing exactly one unit-clause (Family II).
    ExactlyOne,
    /// A subset containing some designated unit-clause.
    AtLeastOne,
}

/// A minimally unsatisfiable subset of an unsatisfiable `f`, found by one
/// pass over the clauses in stored order, dropping every clause whose
/// removal keeps the rest unsatisfiable. Works for any 2-CNF including ⊥;
/// the family tag is filled in when the subset is classifiable.
pub fn find_mus_deletion(f: &ClauseSet) -> Result<MusRecord, FindError> {
    if solve_2sat(f).is_sat() {
        return Err(FindError::Satisfiable);
    }
    let mut disabled: Vec<usize> = Vec::new();
    for i in 0..f.c() {
        disabled.push(i);
        if solve_2sat_masked(f, &disabled).is_sat() {
            disabled.pop();
        }
    }
    let indices: Vec<u32> = (0..f.c())
        .filter(|i| !disabled.contains(i))
        .map(|i| i as u32)
        .collect();
    let record = MusRecord::new(indices, None, None);
    let family = classify_family(&record.clause_set(f)).ok();
    Ok(MusRecord::new(record.indices, family, None))
}

/// A vertex-regular path from `x` to `y` in `g`, or none; with `shortest`,
/// the minimum-length one (path-lex least among those). Endpoints over one
/// variable are rejected, since start and end would already clash.
pub fn regular_path(
    g: &ImpDigraph,
    x: Lit,
    y: Lit,
    shortest: bool,
) -> Result<Option<Path>, FindError> {
    for l in [x, y] {
        if g.lit_index(l).is_none() {
            return Err(FindError::Digraph(IdgError::UnknownVertex(l)));
        }
    }
    if x.var() == y.var() {
        return Err(FindError::SameVariableEndpoints(x, y));
    }
    Ok(if shortest {
        shortest_regular(g, x, y)
    } else {
        find_regular(g, x, y)
    })
}

fn arc_indices(g: &ImpDigraph, p: &Path, base: Vec<u32>) -> Vec<u32> {
    let mut idx = base;
    for (a, b) in p.arcs() {
        idx.push(
            g.clause_index_of_arc(a, b)
                .expect("path arcs map to clauses") as u32,
        );
    }
    idx
}

#[cfg(debug_assertions)]
fn assert_record_is_mu(f: &ClauseSet, record: &MusRecord) {
    debug_assert!(
        crate::mu::is_2mu(&record.clause_set(f)),
        "found subset is not minimally unsatisfiable: {record:?}"
    );
}

/// A minimally unsatisfiable subset containing both `ux` = {x} and
/// `uy` = {y}: the two units plus the clauses of a regular path from x to
/// ȳ (Family Ia when y = x̄, else Ib), or none when no such path exists.
/// With `shortest`, the subset simultaneously minimises its variable,
/// clause, and literal counts.
pub fn mus_two_units(
    f: &ClauseSet,
    ux: &Clause,
    uy: &Clause,
    shortest: bool,
) -> Result<Option<MusRecord>, FindError> {
    let x = ux.unit_lit().ok_or(FindError::NotUnit(*ux))?;
    let y = uy.unit_lit().ok_or(FindError::NotUnit(*uy))?;
    let xi = f.index_of(ux).ok_or(FindError::MissingUnit(*ux))? as u32;
    let yi = f.index_of(uy).ok_or(FindError::MissingUnit(*uy))? as u32;
    if ux == uy {
        return Err(FindError::IdenticalUnits(*ux));
    }
    let g = ImpDigraph::new(f)?;
    if y == x.complement() {
        // the length-0 path: the complementary units alone
        let witness = Path::new(vec![x]).expect("single-vertex paths are valid");
        let record = MusRecord::new(vec![xi, yi], Some(Family::Ia), Some(witness));
        #[cfg(debug_assertions)]
        assert_record_is_mu(f, &record);
        return Ok(Some(record));
    }
    let found = regular_path(&g, x, y.complement(), shortest)?;
    Ok(found.map(|p| {
        let record = MusRecord::new(
            arc_indices(&g, &p, vec![xi, yi]),
            Some(Family::Ib),
            Some(p),
        );
        #[cfg(debug_assertions)]
        assert_record_is_mu(f, &record);
        record
    }))
}

/// A minimally unsatisfiable subset containing `ux` = {x}, or none when x̄
/// is unreachable from x. Defined as the first output of the ordered
/// enumerator under the default literal order, so the result is the
/// path-lexicographically least witness.
pub fn mus_one_unit(f: &ClauseSet, ux: &Clause) -> Result<Option<MusRecord>, FindError> {
    let order = LitOrder::default_for(f.vars());
    let mut stream = enum_unit(f, ux, order)?;
    let found = stream.next();
    #[cfg(debug_assertions)]
    if let Some(record) = &found {
        assert_record_is_mu(f, record);
    }
    Ok(found)
}

/// A minimally unsatisfiable subset of the closed-loop shape: `ux` = {x},
/// a regular path from x to some y, and a clause {ȳ, x̄} returning to x̄.
/// Candidate return clauses are tried in the default literal order of their
/// x̄-companion; none is returned when no candidate closes regularly.
pub fn mus_family_iia(f: &ClauseSet, ux: &Clause) -> Result<Option<MusRecord>, FindError> {
    let x = ux.unit_lit().ok_or(FindError::NotUnit(*ux))?;
    let xi = f.index_of(ux).ok_or(FindError::MissingUnit(*ux))? as u32;
    let g = ImpDigraph::new(f)?;
    let candidates: Vec<(Lit, usize)> = g.out_neighbors(x)?.collect();
    for (w, ci) in candidates {
        if g.clauses()[ci].unit_lit().is_some() {
            continue; // a unit arc closes as Family I, not as a loop
        }
        debug_assert_ne!(w.var(), x.var(), "tautological clauses cannot occur");
        let y = w.complement();
        if let Some(p) = regular_path(&g, x, y, false)? {
            let mut verts = p.verts().to_vec();
            verts.push(x.complement());
            let witness =
                Path::new(verts).expect("a regular path from x never contains x̄");
            let record = MusRecord::new(
                arc_indices(&g, &p, vec![xi, ci as u32]),
                Some(Family::IIa),
                Some(witness),
            );
            #[cfg(debug_assertions)]
            assert_record_is_mu(f, &record);
            return Ok(Some(record));
        }
    }
    Ok(None)
}

/// Sweeps the unit-clauses of `f` (stored order) for a minimally
/// unsatisfiable subset with the requested unit profile; the first hit
/// wins. `ExactlyTwo` tries unit pairs, `AtLeastOne` runs the single-unit
/// finder per unit, and `ExactlyOne` does the same after removing all other
/// unit-clauses, which confines results to single-unit subsets.
pub fn mus_unit_sweep(f: &ClauseSet, mode: UnitMode) -> Result<Option<MusRecord>, FindError> {
    let units: Vec<(u32, Clause)> = f
        .clauses()
        .iter()
        .enumerate()
        .filter(|(_, cl)| cl.unit_lit().is_some())
        .map(|(i, cl)| (i as u32, *cl))
        .collect();
    match mode {
        UnitMode::ExactlyTwo => {
            // (j, i) mirrors (i, j), so ordered pairs reduce to i < j
            for (i, (_, ua)) in units.iter().enumerate() {
                for (_, ub) in &units[i + 1..] {
                    if let Some(r) = mus_two_units(f, ua, ub, false)? {
                        return Ok(Some(r));
                    }
                }
            }
            Ok(None)
        }
        UnitMode::AtLeastOne => {
            for (_, u) in &units {
                if let Some(r) = mus_one_unit(f, u)? {
                    return Ok(Some(r));
                }
            }
            Ok(None)
        }
        UnitMode::ExactlyOne => {
            for (ui, u) in &units {
                let mut map: Vec<u32> = Vec::with_capacity(f.c());
                let mut kept: Vec<Clause> = Vec::new();
                for (i, cl) in f.clauses().iter().enumerate() {
                    let other_unit = cl.unit_lit().is_some() && i as u32 != *ui;
                    if !other_unit {
                        map.push(i as u32);
                        kept.push(*cl);
                    }
                }
                let sub = ClauseSet::from_clauses(kept);
                if let Some(r) = mus_one_unit(&sub, u)? {
                    let indices = r.indices.iter().map(|&i| map[i as usize]).collect();
                    return Ok(Some(MusRecord::new(indices, r.family, r.witness)));
                }
            }
            Ok(None)
        }
    }
}
