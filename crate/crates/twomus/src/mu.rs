//! Minimal-unsatisfiability decision for width-≤2 clause-sets: the checked
//! singular reduction, recognition of the binary cycle systems that form the
//! higher-deficiency endgame, and the Family I–IV classification at
//! deficiency one.
//!
//! A variable is *singular* when one of its two literals occurs exactly
//! once. A checked reduction step on a singular variable `v` resolves the
//! clause holding the once-occurring literal (the *main* clause) against
//! every clause holding the complement (the *side* clauses), replacing them
//! with the resolvents — but first fails, refuting minimal
//! unsatisfiability, if any of these holds:
//!
//! 1. there is no side clause at all;
//! 2. the main clause clashes with a side clause in some variable other
//!    than `v` (a tautological resolvent);
//! 3. two side clauses produce the same resolvent;
//! 4. a clause not touched by the step subsumes one of the resolvents.
//!
//! A committed step removes exactly one variable and one clause. Running
//! steps until no singular variable remains decides minimal
//! unsatisfiability: at deficiency one the reduct must be `{⊥}`, at
//! deficiency `k ≥ 2` it must be one of the binary cycle systems on `k`
//! variables recognised by [`is_bk`].

use smallvec::SmallVec;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, Lit};
use crate::idg::Path;

/// Errors of the reduction and classification entry points.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MuError {
    /// A reduction step was requested on a non-singular variable.
    #[error("variable {0} is not singular here")]
    NotSingular(u32),
    /// Family classification needs a minimally unsatisfiable clause-set of
    /// deficiency one over at least one variable.
    #[error("family classification needs a minimally unsatisfiable input of deficiency 1 over at least one variable")]
    NotClassifiable,
    /// A family tag string was not recognised.
    #[error("unknown family tag `{0}`")]
    UnknownFamily(String),
}

/// The structural families of minimally unsatisfiable width-≤2 clause-sets
/// of deficiency one (over at least one variable).
///
/// With `u` the number of unit-clauses and `n_3`, `n_4` the numbers of
/// variables of degree 3 and 4: Family I has `u = 2` (Ia on one variable,
/// Ib on more), Family II has `u = 1` (IIa when the degree-3 variable is the
/// unit-clause's variable, IIb otherwise), Family III has `u = 0, n_4 = 1`,
/// Family IV has `u = 0, n_3 = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Ia,
    Ib,
    IIa,
    IIb,
    III,
    IV,
}

impl Family {
    /// All six tags, in classification order.
    pub const ALL: [Family; 6] = [
        Family::Ia,
        Family::Ib,
        Family::IIa,
        Family::IIb,
        Family::III,
        Family::IV,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Family::Ia => "Ia",
            Family::Ib => "Ib",
            Family::IIa => "IIa",
            Family::IIb => "IIb",
            Family::III => "III",
            Family::IV => "IV",
        };
        write!(f, "{tag}")
    }
}

impl FromStr for Family {
    type Err = MuError;
    fn from_str(s: &str) -> Result<Family, MuError> {
        match s {
            "Ia" => Ok(Family::Ia),
            "Ib" => Ok(Family::Ib),
            "IIa" => Ok(Family::IIa),
            "IIb" => Ok(Family::IIb),
            "III" => Ok(Family::III),
            "IV" => Ok(Family::IV),
            other => Err(MuError::UnknownFamily(other.to_string())),
        }
    }
}

/// A minimally unsatisfiable sub-clause-set of some host formula, identified
/// by sorted clause indices, optionally tagged with its family and the
/// witnessing digraph path that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MusRecord {
    /// Ascending stored-clause indices into the host formula.
    pub indices: Vec<u32>,
    /// The family tag, when classified.
    pub family: Option<Family>,
    /// The digraph path the MUS was read off, when one exists.
    pub witness: Option<Path>,
}

impl MusRecord {
    /// Builds a record from indices, sorting them.
    pub fn new(mut indices: Vec<u32>, family: Option<Family>, witness: Option<Path>) -> MusRecord {
        indices.sort_unstable();
        indices.dedup();
        MusRecord {
            indices,
            family,
            witness,
        }
    }

    /// The referenced sub-clause-set of `host`, clauses in ascending index
    /// order.
    pub fn clause_set(&self, host: &ClauseSet) -> ClauseSet {
        host.subset(&self.indices.iter().map(|&i| i as usize).collect::<Vec<_>>())
    }
}

/// One committed reduction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsdpStep {
    /// The singular variable resolved away.
    pub var: u32,
    /// The clause holding the once-occurring literal.
    pub main: Clause,
    /// The clauses holding the complement, in current formula order.
    pub sides: Vec<Clause>,
    /// The resolvents added, parallel to `sides`.
    pub resolvents: Vec<Clause>,
}

/// Which fail condition stopped a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailCondition {
    /// The complement of the once-occurring literal occurs nowhere.
    NoSideClauses,
    /// Main and side clause clash outside the resolved variable.
    TautologicalResolvent,
    /// Two side clauses yield the same resolvent.
    EqualResolvents,
    /// An untouched clause subsumes a resolvent.
    SubsumedResolvent,
}

impl fmt::Display for FailCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            FailCondition::NoSideClauses => "no side clauses",
            FailCondition::TautologicalResolvent => "tautological resolvent",
            FailCondition::EqualResolvents => "equal resolvents",
            FailCondition::SubsumedResolvent => "resolvent subsumed by an untouched clause",
        };
        write!(f, "{msg}")
    }
}

/// Details of a failed reduction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsdpFail {
    /// The condition that fired (checked in the order listed on
    /// [`FailCondition`]).
    pub condition: FailCondition,
    /// The singular variable under reduction.
    pub var: u32,
    /// The clauses exhibiting the failure: the main clause, then the side
    /// clause(s) involved, then the subsuming clause if any.
    pub clauses: Vec<Clause>,
}

/// Outcome of a reduction: failure details, or the reduct with its step
/// trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CsdpOutcome {
    /// Reduction ran to completion; `result` has no singular variables (for
    /// the single-step entry point, it is just the one-step reduct).
    Reduced {
        result: ClauseSet,
        trace: Vec<CsdpStep>,
    },
    /// Some step failed; the input is not minimally unsatisfiable.
    Fail(CsdpFail),
}

impl CsdpOutcome {
    /// True on the `Reduced` arm.
    pub fn is_reduced(&self) -> bool {
        matches!(self, CsdpOutcome::Reduced { .. })
    }
}

// ---------------------------------------------------------------------------
// Reduction engine

enum EngineEnd {
    Done,
    Fail(CsdpFail),
    // a literal exceeded the degree cap after a committed step
    CapHit,
}

// Per-variable bookkeeping: live occurrence and live unit-clause counts by
// polarity (`[positive, negative]`), and the slots of every clause ever
// inserted for the variable, cleaned lazily on read. The alignment keeps a
// whole row on one cache line even at millions of clauses, where the
// reduction order makes every row access a potential miss.
#[repr(align(64))]
struct VarRow {
    deg: [u32; 2],
    units: [u32; 2],
    occ: SmallVec<[u32; 8]>,
}

// A clause with the ranks of its literals' variables (aligned with the
// clause's own literal order, padded with `u32::MAX`), so the steady-state
// loop never consults the rank table. The alignment keeps any entry within
// one cache line.
#[derive(Clone, Copy)]
#[repr(align(32))]
struct Entry {
    cl: Clause,
    ranks: [u32; 2],
}

// the niche in the clause tag must keep the option at one half-line
const _: () = assert!(std::mem::size_of::<Option<Entry>>() == 32);

struct Reducer {
    // input variables ascending; ranks index into it and into `rows`
    vars: Vec<u32>,
    slots: Vec<Option<Entry>>,
    rows: Vec<VarRow>,
    has_empty: bool,
    // trace recording is skipped when the caller only wants the verdict
    record: bool,
    trace: Vec<CsdpStep>,
    // variable ranks pending a singularity check; popped from the back
    work: Vec<u32>,
    cap: Option<u32>,
    cap_hit: bool,
}

impl Reducer {
    fn new(f: &ClauseSet, cap: Option<u32>, record: bool) -> Reducer {
        let mut r = Reducer {
            vars: f.vars().to_vec(),
            slots: Vec::with_capacity(f.c()),
            rows: (0..f.n())
                .map(|_| VarRow {
                    deg: [0; 2],
                    units: [0; 2],
                    occ: SmallVec::new(),
                })
                .collect(),
            has_empty: false,
            record,
            // each committed step removes one variable and one clause
            trace: Vec::with_capacity(if record { f.n().min(f.c()) } else { 0 }),
            work: Vec::new(),
            cap,
            cap_hit: false,
        };
        for (cl, ranks) in f.clauses().iter().zip(f.lit_ranks()) {
            r.insert_clause(Entry {
                cl: *cl,
                ranks: *ranks,
            });
        }
        r
    }

    fn lit_of(&self, rank: u32, pol: usize) -> Lit {
        let v = self.vars[rank as usize] as i32;
        Lit::new(if pol == 0 { v } else { -v })
    }

    fn insert_clause(&mut self, e: Entry) {
        let slot = self.slots.len() as u32;
        self.slots.push(Some(e));
        self.has_empty |= matches!(e.cl, Clause::Empty);
        let unit = matches!(e.cl, Clause::Unit(_));
        for (l, r) in e.cl.lits().zip(e.ranks) {
            let p = usize::from(!l.is_pos());
            let row = &mut self.rows[r as usize];
            row.deg[p] += 1;
            row.units[p] += u32::from(unit);
            row.occ.push(slot);
            if let Some(cap) = self.cap {
                if row.deg[p] > cap {
                    self.cap_hit = true;
                }
            }
        }
    }

    fn remove_clause(&mut self, slot: u32) {
        let e = self.slots[slot as usize].take().expect("removing a live clause");
        if matches!(e.cl, Clause::Empty) {
            self.has_empty = false;
        }
        let unit = matches!(e.cl, Clause::Unit(_));
        for (l, r) in e.cl.lits().zip(e.ranks) {
            let p = usize::from(!l.is_pos());
            let row = &mut self.rows[r as usize];
            row.deg[p] -= 1;
            row.units[p] -= u32::from(unit);
        }
    }

    // Live clause slots of the variable at `rank`, split into the one clause
    // containing `w` (the main clause of a step) and the rest, in slot order.
    fn split_occurrences(&mut self, rank: u32, w: Lit) -> (u32, SmallVec<[u32; 5]>) {
        let slots = &self.slots;
        // slots are never reused, so a filled entry is still a live clause
        self.rows[rank as usize].occ.retain(|s| slots[*s as usize].is_some());
        let mut main = None;
        let mut rest = SmallVec::new();
        for &s in &self.rows[rank as usize].occ {
            match &slots[s as usize] {
                Some(e) if e.cl.contains(w) => main = Some(s),
                _ => rest.push(s),
            }
        }
        (main.expect("a singular variable's once-literal has a clause"), rest)
    }

    fn is_singular(&self, rank: u32) -> bool {
        let [p, q] = self.rows[rank as usize].deg;
        (p + q > 0) && (p == 1 || q == 1)
    }

    // The once-occurring literal of a singular variable; positive wins ties.
    fn once_literal(&self, rank: u32) -> Lit {
        let pol = usize::from(self.rows[rank as usize].deg[0] != 1);
        self.lit_of(rank, pol)
    }

    // The live clause subsuming the resolvent, if any: ⊥ first, then units
    // over the resolvent's literals, then an equal binary clause. Equality is
    // answered from the occurrence list of the resolvent's lower-degree
    // variable: the scan is bounded by that variable's live degree plus stale
    // slots, which it cleans (paying them off once per removal).
    fn live_subsumer(&mut self, ri: &Entry) -> Option<Clause> {
        if self.has_empty {
            return Some(Clause::Empty);
        }
        for (l, r) in ri.cl.lits().zip(ri.ranks) {
            let p = usize::from(!l.is_pos());
            if self.rows[r as usize].units[p] > 0 {
                return Some(Clause::Unit(l));
            }
        }
        if ri.cl.len() == 2 {
            let [ra, rb] = ri.ranks;
            let shorter = |r: u32| self.rows[r as usize].occ.len();
            let rank = if shorter(ra) <= shorter(rb) { ra } else { rb };
            let slots = &self.slots;
            self.rows[rank as usize].occ.retain(|s| slots[*s as usize].is_some());
            let equal = self.rows[rank as usize]
                .occ
                .iter()
                .any(|&s| matches!(&slots[s as usize], Some(e) if e.cl == ri.cl));
            if equal {
                return Some(ri.cl);
            }
        }
        None
    }

    // Runs the four fail checks and, if none fires, commits the step.
    // The variable id is only materialised on the cold paths that report it.
    fn step(&mut self, rank: u32) -> Result<(), CsdpFail> {
        let w = self.once_literal(rank);
        let (main_slot, side_slots) = self.split_occurrences(rank, w);
        let main = self.slots[main_slot as usize].expect("main clause is live");
        if side_slots.is_empty() {
            return Err(CsdpFail {
                condition: FailCondition::NoSideClauses,
                var: self.vars[rank as usize],
                clauses: vec![main.cl],
            });
        }
        let sides: SmallVec<[Entry; 4]> = side_slots
            .iter()
            .map(|&s| self.slots[s as usize].expect("side clause is live"))
            .collect();
        // clash outside v: the main clause's other literal complemented in a side
        if let Some(a) = main.cl.other_lit(w) {
            for d in &sides {
                if d.cl.contains(a.complement()) {
                    return Err(CsdpFail {
                        condition: FailCondition::TautologicalResolvent,
                        var: self.vars[rank as usize],
                        clauses: vec![main.cl, d.cl],
                    });
                }
            }
        }
        let resolvents: SmallVec<[Entry; 4]> = sides
            .iter()
            .map(|d| {
                let pairs: SmallVec<[(Lit, u32); 4]> = main
                    .cl
                    .lits()
                    .zip(main.ranks)
                    .chain(d.cl.lits().zip(d.ranks))
                    .filter(|&(_, r)| r != rank)
                    .collect();
                let lits: SmallVec<[Lit; 4]> = pairs.iter().map(|&(l, _)| l).collect();
                let cl = Clause::from_lits(&lits).expect("clash outside v was excluded");
                let mut ranks = [u32::MAX; 2];
                for (i, l) in cl.lits().enumerate() {
                    ranks[i] = pairs
                        .iter()
                        .find(|&&(p, _)| p == l)
                        .expect("resolvent literal comes from a parent")
                        .1;
                }
                Entry { cl, ranks }
            })
            .collect();
        for (i, ri) in resolvents.iter().enumerate() {
            for (j, rj) in resolvents.iter().enumerate() {
                if i < j && ri.cl == rj.cl {
                    return Err(CsdpFail {
                        condition: FailCondition::EqualResolvents,
                        var: self.vars[rank as usize],
                        clauses: vec![main.cl, sides[i].cl, sides[j].cl],
                    });
                }
            }
        }
        // an untouched subsuming clause: every clause touching v is main or a
        // side, so any live clause equal to the resolvent, a unit inside it,
        // or the empty clause qualifies
        for (i, ri) in resolvents.iter().enumerate() {
            if let Some(e) = self.live_subsumer(ri) {
                return Err(CsdpFail {
                    condition: FailCondition::SubsumedResolvent,
                    var: self.vars[rank as usize],
                    clauses: vec![main.cl, sides[i].cl, e],
                });
            }
        }
        // commit
        self.remove_clause(main_slot);
        for &s in &side_slots {
            self.remove_clause(s);
        }
        for r in &resolvents {
            self.insert_clause(*r);
        }
        if self.record {
            self.trace.push(CsdpStep {
                var: self.vars[rank as usize],
                main: main.cl,
                sides: sides.iter().map(|e| e.cl).collect(),
                resolvents: resolvents.iter().map(|e| e.cl).collect(),
            });
        }
        // requeue every variable the step may have made singular
        let mut affected: SmallVec<[u32; 6]> = sides
            .iter()
            .chain(std::iter::once(&main))
            .flat_map(|e| e.ranks)
            .filter(|&r| r != rank && r != u32::MAX)
            .collect();
        affected.sort_unstable();
        let mut last = u32::MAX;
        for r in affected.into_iter().rev() {
            if r != last && self.is_singular(r) {
                self.work.push(r);
            }
            last = r;
        }
        Ok(())
    }

    fn run(&mut self) -> EngineEnd {
        // seed ascending by variable id: push in reverse, pop from the back
        for r in (0..self.vars.len() as u32).rev() {
            if self.is_singular(r) {
                self.work.push(r);
            }
        }
        while let Some(r) = self.work.pop() {
            if !self.is_singular(r) {
                continue; // stale entry
            }
            if let Err(fail) = self.step(r) {
                return EngineEnd::Fail(fail);
            }
            if self.cap_hit {
                return EngineEnd::CapHit;
            }
        }
        EngineEnd::Done
    }

    fn result(&self) -> ClauseSet {
        ClauseSet::from_clauses(self.slots.iter().flatten().map(|e| e.cl).collect())
    }
}

/// One checked reduction step on the singular variable `v` of `f`.
///
/// Errors when `v` is not singular in `f`; otherwise reports either the fail
/// condition or the one-step reduct (one variable and one clause fewer).
pub fn csdp_step(f: &ClauseSet, v: u32) -> Result<CsdpOutcome, MuError> {
    let mut red = Reducer::new(f, None, true);
    let rank = match red.vars.binary_search(&v) {
        Ok(r) if red.is_singular(r as u32) => r as u32,
        _ => return Err(MuError::NotSingular(v)),
    };
    Ok(match red.step(rank) {
        Err(fail) => CsdpOutcome::Fail(fail),
        Ok(()) => CsdpOutcome::Reduced {
            result: red.result(),
            trace: red.trace,
        },
    })
}

/// Full checked reduction: steps on singular variables (ascending variable
/// id, newly created singular variables first) until failure or until no
/// singular variable remains.
pub fn csdp_full(f: &ClauseSet) -> CsdpOutcome {
    let mut red = Reducer::new(f, None, true);
    match red.run() {
        EngineEnd::Fail(fail) => CsdpOutcome::Fail(fail),
        EngineEnd::Done => CsdpOutcome::Reduced {
            result: red.result(),
            trace: red.trace,
        },
        EngineEnd::CapHit => unreachable!("no degree cap was set"),
    }
}

/// Recognises the binary cycle systems: `k` variables in a single cycle,
/// each consecutive pair linked by an equivalence, with an odd number of
/// sign-reversing links. Returns `k` when `f` is isomorphic to such a
/// system, which requires `c = 2k`, `k ≥ 2`, all clauses binary, every
/// literal of degree 2, and the clauses pairing up into literal-wise
/// complement pairs whose variable graph is one cycle through all `k`
/// variables; a pair is sign-reversing when its clauses' two literals agree
/// in sign. The odd parity is exactly what makes the system unsatisfiable,
/// and it is invariant under renaming and flipping.
pub fn is_bk(f: &ClauseSet) -> Option<usize> {
    let k = f.n();
    if k < 2 || f.c() != 2 * k {
        return None;
    }
    if f.clauses().iter().any(|c| c.len() != 2) {
        return None;
    }
    for &v in f.vars() {
        if f.ldeg(Lit::new(v as i32)) != 2 || f.ldeg(Lit::new(-(v as i32))) != 2 {
            return None;
        }
    }
    // pair clauses with their literal-wise complements
    let mut paired = vec![false; f.c()];
    let mut same_sign_pairs = 0usize;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    let rank = |v: u32| f.vars().binary_search(&v).expect("variable of f");
    let mut edges = 0usize;
    for (i, cl) in f.clauses().iter().enumerate() {
        if paired[i] {
            continue;
        }
        let partner = match f.index_of(&cl.complement()) {
            Some(j) if j != i && !paired[j] => j,
            _ => return None,
        };
        paired[i] = true;
        paired[partner] = true;
        let Clause::Binary(a, b) = cl else { unreachable!("all binary") };
        if a.is_pos() == b.is_pos() {
            same_sign_pairs += 1;
        }
        let (ra, rb) = (rank(a.var()), rank(b.var()));
        adj[ra].push(rb);
        adj[rb].push(ra);
        edges += 1;
    }
    if edges != k || adj.iter().any(|n| n.len() != 2) {
        return None;
    }
    // connectivity: k edges, all degrees 2, one component ⟺ a single cycle
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    if count != k {
        return None;
    }
    if same_sign_pairs % 2 == 1 {
        Some(k)
    } else {
        None
    }
}

/// Decides minimal unsatisfiability of a width-≤2 clause-set in linear time.
///
/// The decision runs: empty-clause and pure-literal/degree prechecks (every
/// literal of a minimally unsatisfiable width-≤2 clause-set has degree 1 or
/// 2), a deficiency check (`c − n ≥ 1`), the full checked reduction with a
/// degree-2 cap (degree growth proves the input lies outside the class, so
/// capping is sound and keeps the work linear), and the endgame: at
/// deficiency 1 the reduct must be `{⊥}`, at deficiency `k ≥ 2` a cycle
/// system with `is_bk = k`.
pub fn is_2mu(f: &ClauseSet) -> bool {
    if f.has_empty_clause() {
        return f.c() == 1;
    }
    if f.n() == 0 {
        return false; // no clauses at all: satisfiable
    }
    for row in f.ldeg_rows() {
        if !(1..=2).contains(&row[0]) || !(1..=2).contains(&row[1]) {
            return false;
        }
    }
    let delta = f.delta();
    if delta <= 0 {
        return false;
    }
    // the trace is discarded here, so skip recording it
    let mut red = Reducer::new(f, Some(2), false);
    match red.run() {
        EngineEnd::Fail(_) | EngineEnd::CapHit => false,
        EngineEnd::Done => {
            let result = red.result();
            if delta == 1 {
                result.clauses() == [Clause::Empty]
            } else {
                is_bk(&result) == Some(delta as usize)
            }
        }
    }
}

/// Classifies a minimally unsatisfiable width-≤2 clause-set of deficiency 1
/// over at least one variable into its family.
///
/// Errors when the input is not such a clause-set (in particular on `{⊥}`,
/// which the families do not cover).
pub fn classify_family(f: &ClauseSet) -> Result<Family, MuError> {
    if f.n() == 0 || f.delta() != 1 || !is_2mu(f) {
        return Err(MuError::NotClassifiable);
    }
    let m = f.measures();
    Ok(match (m.u, m.n3, m.n4) {
        (2, 0, 0) => {
            if f.n() == 1 {
                Family::Ia
            } else {
                Family::Ib
            }
        }
        (1, 1, 0) => {
            let unit_var = f.unit_lits().next().expect("u = 1").var();
            let deg3 = f
                .vars()
                .iter()
                .copied()
                .find(|&v| f.vdeg(v) == 3)
                .expect("n_3 = 1");
            if deg3 == unit_var {
                Family::IIa
            } else {
                Family::IIb
            }
        }
        (0, 0, 1) => Family::III,
        (0, 2, 0) => Family::IV,
        other => unreachable!(
            "deficiency-1 minimally unsatisfiable width-2 clause-sets have signature (u, n3, n4) \
             in {{(2,0,0),(1,1,0),(0,0,1),(0,2,0)}}, got {other:?}"
        ),
    })
}
