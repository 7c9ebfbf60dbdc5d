//! Ordered enumeration of the unit-containing minimally unsatisfiable
//! sub-clause-sets.
//!
//! For a unit-clause {x}, every such subset is the clause image of a path in
//! the implication digraph that starts at x and repeats exactly one variable
//! at its final vertex. The cursor below walks these paths depth-first in
//! the literal order L, so deliveries arrive in strictly increasing
//! path-lexicographic order. Family-II subsets have exactly two preimage
//! paths (a path and its sibling); the output guard prints the
//! lexicographically smaller one and counts the other as silent, which makes
//! the printed stream duplicate-free without storing anything.
//!
//! The per-node candidate set R is computed by one backward breadth-first
//! search from x̄ in the digraph minus the current path's vertices; a
//! candidate that would repeat a variable is delivered immediately on entry,
//! any other candidate provably extends to a further delivery, so the work
//! between consecutive deliveries stays within O(n·ℓ).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, Lit};
use crate::idg::{format_lit_list, IdgError, ImpDigraph, LitOrder, Path};
use crate::mu::{Family, MusRecord};

/// Errors of the enumeration layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    /// The designated clause is not a unit-clause.
    #[error("clause {0} is not a unit-clause")]
    NotUnit(Clause),
    /// The designated unit-clause does not occur in the clause-set.
    #[error("unit-clause {0} does not occur in the clause-set")]
    MissingUnit(Clause),
    /// The clause-set or the order was unsuitable for digraph construction.
    #[error(transparent)]
    Digraph(#[from] IdgError),
}

/// Counters accumulated by a cursor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Trace rows generated.
    pub steps: u64,
    /// Paths delivered (arrivals at a variable clash).
    pub paths: u64,
    /// Deliveries printed as results.
    pub emitted: u64,
    /// Deliveries suppressed by the sibling guard.
    pub silent: u64,
}

/// What a trace row records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumEventKind {
    /// Root frame entry for the start literal.
    InitCall,
    /// Frame entry for a candidate vertex.
    Dfs,
    /// The entered vertex repeats a variable of the path.
    Clash,
    /// Delivery of the finished path.
    Output {
        /// False when the sibling guard suppressed printing.
        printed: bool,
        family: Family,
        record: MusRecord,
    },
}

impl EnumEventKind {
    fn label(&self) -> &'static str {
        match self {
            EnumEventKind::InitCall => "init call",
            EnumEventKind::Dfs => "DFS",
            EnumEventKind::Clash => "clash",
            EnumEventKind::Output { printed: true, .. } => "output",
            EnumEventKind::Output { printed: false, .. } => "output (silent)",
        }
    }
}

/// One row of the enumeration trace: step counter, event, current vertex,
/// the candidate set R (clash-free frame entries only), and the path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub step: u64,
    pub event: EnumEventKind,
    pub y: Lit,
    pub r: Option<Vec<Lit>>,
    pub path: Path,
}

impl fmt::Display for TraceRow {
    /// Tab-separated: step, event, y, R (or `-`), P.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match &self.r {
            Some(r) => format_lit_list(r),
            None => "-".to_string(),
        };
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.step,
            self.event.label(),
            self.y,
            r,
            self.path
        )
    }
}

struct Frame {
    r: Vec<Lit>,
    pos: usize,
}

/// Pull-based depth-first enumeration state over one unit-clause.
///
/// Each [`EnumCursor::next_row`] call advances the walk just far enough to
/// produce the next trace row; nothing is precomputed and the path lives in
/// one shared stack. Dropping the cursor cancels the enumeration.
pub struct EnumCursor {
    g: ImpDigraph,
    x: Lit,
    unit_idx: u32,
    path: Vec<Lit>,
    on_path: Vec<bool>,
    vars_on_path: HashSet<u32>,
    frames: Vec<Frame>,
    buf: VecDeque<TraceRow>,
    stats: EnumStats,
    done: bool,
}

impl EnumCursor {
    /// Starts an enumeration of the minimally unsatisfiable subsets
    /// containing `ux` over `f`, visiting in `order`-lexicographic path
    /// order. An unreachable complement literal yields an immediately
    /// exhausted cursor.
    pub fn new(f: &ClauseSet, ux: &Clause, order: LitOrder) -> Result<EnumCursor, EnumError> {
        let Some(x) = ux.unit_lit() else {
            return Err(EnumError::NotUnit(*ux));
        };
        let Some(unit_idx) = f.index_of(ux).map(|i| i as u32) else {
            return Err(EnumError::MissingUnit(*ux));
        };
        let g = ImpDigraph::with_order(f, order)?;
        let mut cur = EnumCursor {
            on_path: vec![false; g.lit_count()],
            g,
            x,
            unit_idx,
            path: Vec::new(),
            vars_on_path: HashSet::new(),
            frames: Vec::new(),
            buf: VecDeque::new(),
            stats: EnumStats::default(),
            done: false,
        };
        if !cur.g.reach(x, x.complement(), &[])? {
            cur.done = true;
            return Ok(cur);
        }
        cur.push_vertex(x);
        let r = cur.candidates(x);
        cur.emit(EnumEventKind::InitCall, x, Some(r.clone()));
        cur.frames.push(Frame { r, pos: 0 });
        Ok(cur)
    }

    /// The start literal.
    pub fn unit_lit(&self) -> Lit {
        self.x
    }

    /// Counters so far.
    pub fn stats(&self) -> EnumStats {
        self.stats
    }

    fn push_vertex(&mut self, v: Lit) {
        self.path.push(v);
        self.on_path[self.g.lit_index(v).expect("path vertices are known")] = true;
        self.vars_on_path.insert(v.var());
    }

    fn pop_vertex(&mut self) {
        let v = self.path.pop().expect("pop matches a push");
        self.on_path[self.g.lit_index(v).expect("path vertices are known")] = false;
        self.vars_on_path.remove(&v.var());
    }

    // out-neighbours of y (in order) that can still reach x̄ in the digraph
    // minus the current path: one backward BFS from x̄, then a filter
    fn candidates(&self, y: Lit) -> Vec<Lit> {
        let mut marked = vec![false; self.g.lit_count()];
        let xbar = self.x.complement();
        let start = self.g.lit_index(xbar).expect("x̄ is a vertex");
        let mut queue = VecDeque::new();
        if !self.on_path[start] {
            marked[start] = true;
            queue.push_back(xbar);
        }
        while let Some(v) = queue.pop_front() {
            let preds: Vec<Lit> = self
                .g
                .in_neighbors(v)
                .expect("BFS stays on known vertices")
                .map(|(w, _)| w)
                .collect();
            for w in preds {
                let wi = self.g.lit_index(w).expect("arc endpoints are vertices");
                if !marked[wi] && !self.on_path[wi] {
                    marked[wi] = true;
                    queue.push_back(w);
                }
            }
        }
        self.g
            .out_neighbors(y)
            .expect("the path top is a vertex")
            .map(|(z, _)| z)
            .filter(|z| marked[self.g.lit_index(*z).expect("neighbours are vertices")])
            .collect()
    }

    fn emit(&mut self, event: EnumEventKind, y: Lit, r: Option<Vec<Lit>>) {
        self.stats.steps += 1;
        self.buf.push_back(TraceRow {
            step: self.stats.steps,
            event,
            y,
            r,
            path: Path::new(self.path.clone()).expect("the stack holds a valid path"),
        });
    }

    // delivery of path + z: family, sibling guard, record
    fn deliver(&mut self, z: Lit) {
        self.stats.paths += 1;
        let mut verts = self.path.clone();
        verts.push(z);
        let p = Path::new(verts).expect("clash vertices are new literals");
        debug_assert!(p.is_nearly_regular());
        let family = if p.last_arc_is_unit() {
            if p.len() == 1 {
                Family::Ia
            } else {
                Family::Ib
            }
        } else {
            let (head, _) = p.regular_decompose().expect("delivered paths decompose");
            if head.is_none() {
                Family::IIa
            } else {
                Family::IIb
            }
        };
        let printed = match family {
            Family::Ia | Family::Ib => true,
            _ => {
                let sibling = p.sibling().expect("family-II paths have siblings");
                self.g
                    .order()
                    .pathlex(&p, &sibling)
                    .expect("order covers all path literals")
                    == std::cmp::Ordering::Less
            }
        };
        if printed {
            self.stats.emitted += 1;
        } else {
            self.stats.silent += 1;
        }
        let mut indices = vec![self.unit_idx];
        for (a, b) in p.arcs() {
            indices.push(
                self.g
                    .clause_index_of_arc(a, b)
                    .expect("path arcs map to clauses") as u32,
            );
        }
        let record = MusRecord::new(indices, Some(family), Some(p.clone()));
        #[cfg(debug_assertions)]
        {
            let cls: Vec<Clause> = record
                .indices
                .iter()
                .map(|&i| self.g.clauses()[i as usize])
                .collect();
            let sub = ClauseSet::from_clauses(cls);
            debug_assert_eq!(crate::mu::classify_family(&sub), Ok(family));
        }
        // snapshot rows share the extended path; the clash vertex must not
        // enter the variable set (its variable is already on the path)
        self.path.push(z);
        self.emit(EnumEventKind::Dfs, z, None);
        self.emit(EnumEventKind::Clash, z, None);
        self.emit(
            EnumEventKind::Output {
                printed,
                family,
                record,
            },
            z,
            None,
        );
        self.path.pop();
    }

    fn advance(&mut self) {
        while self.buf.is_empty() {
            let Some(frame) = self.frames.last_mut() else {
                self.done = true;
                return;
            };
            if frame.pos >= frame.r.len() {
                self.frames.pop();
                self.pop_vertex();
                continue;
            }
            let z = frame.r[frame.pos];
            frame.pos += 1;
            if self.vars_on_path.contains(&z.var()) {
                self.deliver(z);
                return;
            }
            debug_assert!(
                self.g
                    .reach(z, self.x.complement(), &self.path)
                    .expect("path vertices are known"),
                "candidate {z} lost its completion guarantee"
            );
            self.push_vertex(z);
            let r = self.candidates(z);
            self.emit(EnumEventKind::Dfs, z, Some(r.clone()));
            self.frames.push(Frame { r, pos: 0 });
            return;
        }
    }

    /// The next trace row, or nothing once the walk is exhausted.
    pub fn next_row(&mut self) -> Option<TraceRow> {
        if self.buf.is_empty() && !self.done {
            self.advance();
        }
        self.buf.pop_front()
    }
}

impl Iterator for EnumCursor {
    type Item = TraceRow;

    fn next(&mut self) -> Option<TraceRow> {
        self.next_row()
    }
}

/// The stream of minimally unsatisfiable subsets containing `ux`, each
/// exactly once, in `order`-lexicographic order of their witness paths.
pub fn enum_unit(
    f: &ClauseSet,
    ux: &Clause,
    order: LitOrder,
) -> Result<impl Iterator<Item = MusRecord>, EnumError> {
    let cursor = EnumCursor::new(f, ux, order)?;
    Ok(cursor.filter_map(|row| match row.event {
        EnumEventKind::Output {
            printed: true,
            record,
            ..
        } => Some(record),
        _ => None,
    }))
}

/// The stream of all delivered paths (printed and silent), in
/// path-lexicographic order; exposes the raw walk for delay measurements.
pub fn enum_unit_paths(
    f: &ClauseSet,
    ux: &Clause,
    order: LitOrder,
) -> Result<impl Iterator<Item = Path>, EnumError> {
    let cursor = EnumCursor::new(f, ux, order)?;
    Ok(cursor.filter_map(|row| match row.event {
        EnumEventKind::Output { .. } => Some(row.path),
        _ => None,
    }))
}

/// Round-robin enumeration over every unit-clause of `f`: units are
/// processed in ascending `order` rank, and each processed unit-clause is
/// removed from the clause-set before the next round, so every
/// unit-containing minimally unsatisfiable subset appears exactly once.
/// Indices are reported against `f`'s stored clause order.
pub fn enum_all_units(f: &ClauseSet, order: LitOrder) -> Result<AllUnits<'_>, EnumError> {
    if f.has_empty_clause() {
        return Err(EnumError::Digraph(IdgError::EmptyClausePresent));
    }
    if !order.covers(f.vars()) {
        return Err(EnumError::Digraph(IdgError::OrderMismatch));
    }
    let mut rounds: Vec<(u32, Lit)> = f
        .clauses()
        .iter()
        .enumerate()
        .filter_map(|(i, cl)| cl.unit_lit().map(|l| (i as u32, l)))
        .collect();
    rounds.sort_by_key(|(_, l)| order.rank(*l).expect("order covers the formula"));
    Ok(AllUnits {
        host: f,
        order,
        rounds: rounds.into_iter(),
        removed: Vec::new(),
        current: None,
    })
}

/// Iterator state of [`enum_all_units`].
pub struct AllUnits<'a> {
    host: &'a ClauseSet,
    order: LitOrder,
    rounds: std::vec::IntoIter<(u32, Lit)>,
    removed: Vec<u32>,
    // the running round's cursor plus its index-translation table
    current: Option<(EnumCursor, Vec<u32>)>,
}

impl Iterator for AllUnits<'_> {
    type Item = MusRecord;

    fn next(&mut self) -> Option<MusRecord> {
        loop {
            if let Some((cursor, map)) = &mut self.current {
                for row in cursor.by_ref() {
                    if let EnumEventKind::Output {
                        printed: true,
                        record,
                        ..
                    } = row.event
                    {
                        let indices = record.indices.iter().map(|&i| map[i as usize]).collect();
                        return Some(MusRecord::new(indices, record.family, record.witness));
                    }
                }
                self.current = None;
            }
            let (unit_idx, _) = self.rounds.next()?;
            let mut map: Vec<u32> = Vec::with_capacity(self.host.c());
            let mut kept: Vec<Clause> = Vec::new();
            for (i, cl) in self.host.clauses().iter().enumerate() {
                if !self.removed.contains(&(i as u32)) {
                    map.push(i as u32);
                    kept.push(*cl);
                }
            }
            self.removed.push(unit_idx);
            let sub = ClauseSet::from_clauses(kept);
            let ux = self.host.clauses()[unit_idx as usize];
            // later rounds can lose variables with the removed units, so the
            // order is re-anchored on what remains
            let cursor = EnumCursor::new(&sub, &ux, self.order.restricted_to(sub.vars()))
                .expect("sub-rounds keep the unit and stay empty-clause-free");
            self.current = Some((cursor, map));
        }
    }
}

/// Renders an enumerator result as a DIMACS block: the header counts one
/// variable per path arc and one clause more, then the start unit-clause,
/// then one clause per arc in path order (the final arc of a Family-I path
/// prints as a unit-clause).
pub fn print_mus(record: &MusRecord) -> String {
    let p = record
        .witness
        .as_ref()
        .expect("printable records carry a witness path");
    let mut out = format!("p cnf {} {}\n", p.len(), p.len() + 1);
    let mut line = |lits: &[Lit]| {
        for l in lits {
            out.push_str(&l.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    };
    line(&[p.first()]);
    for (a, b) in p.arcs() {
        if b == a.complement() {
            line(&[b]);
        } else {
            line(&[a.complement(), b]);
        }
    }
    out
}
