//! The implication digraph of a clause-set, literal orders, and paths.
//!
//! Every binary clause `{x, y}` contributes the two contraposed arcs
//! `(x̄, y)` and `(ȳ, x)`; every unit-clause `{x}` contributes the single arc
//! `(x̄, x)`. The map sending an arc `(a, b)` to the clause `{ā, b}` inverts
//! this construction, so arcs and clauses determine each other exactly; an
//! arc whose clause is a unit-clause is itself called a unit arc.
//!
//! The digraph is immutable after construction. Subgraphs are expressed as
//! exclusion masks handed to the traversals, never by rebuilding, and
//! out-neighbour lists are pre-sorted by the active literal order so ordered
//! scans need no sorting at query time.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, Lit};

/// Errors from digraph construction and queries.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdgError {
    /// The clause-set contains the empty clause, which has no arc.
    #[error("the empty clause has no implication arcs; strip it before building the digraph")]
    EmptyClausePresent,
    /// A literal order does not enumerate the formula's literals exactly.
    #[error("literal order must list both polarities of each variable of the formula exactly once")]
    OrderMismatch,
    /// A queried literal is not a vertex of the digraph.
    #[error("literal {0} is not a vertex of this digraph")]
    UnknownVertex(Lit),
    /// A queried arc does not exist.
    #[error("no arc from {0} to {1}")]
    MissingArc(Lit, Lit),
}

/// Errors from path construction and transformations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    /// Paths have at least one vertex.
    #[error("a path needs at least one vertex")]
    Empty,
    /// A vertex occurs twice.
    #[error("vertex {0} repeats in the path")]
    RepeatedVertex(Lit),
    /// Consecutive vertices without a connecting arc.
    #[error("no arc from {0} to {1} in the digraph")]
    MissingArc(Lit, Lit),
    /// A literal is not a vertex of the host digraph.
    #[error("literal {0} is not a vertex of this digraph")]
    UnknownVertex(Lit),
    /// Contraposition needs at least one arc.
    #[error("contraposition is defined for paths with at least one arc")]
    ZeroLength,
    /// Regular decomposition needs a nearly regular path.
    #[error("path is not nearly regular")]
    NotNearlyRegular,
    /// A custom literal order is not a valid permutation.
    #[error("literal order must pair every literal with its complement, without repeats")]
    BadOrder,
    /// The order does not rank a literal it is asked about.
    #[error("literal {0} is not ranked by this order")]
    UnrankedLit(Lit),
}

/// A total order on the literals of a formula.
///
/// The default order is ascending variable id with each positive literal
/// immediately before its complement: `x1 < x̄1 < x2 < x̄2 < …`. Custom
/// orders must still pair every variable's two literals somewhere in the
/// sequence (in any positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LitOrder {
    seq: Vec<Lit>,
    rank: HashMap<Lit, u32>,
}

impl LitOrder {
    /// The default order over the given variables.
    pub fn default_for(vars: &[u32]) -> LitOrder {
        let mut sorted: Vec<u32> = vars.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut seq = Vec::with_capacity(sorted.len() * 2);
        for v in sorted {
            seq.push(Lit::new(v as i32));
            seq.push(Lit::new(-(v as i32)));
        }
        LitOrder::from_seq(seq).expect("default sequence is a valid order")
    }

    /// Builds an order from an explicit literal sequence.
    ///
    /// The sequence must be duplicate-free and closed under complement.
    pub fn from_seq(seq: Vec<Lit>) -> Result<LitOrder, PathError> {
        let mut rank = HashMap::with_capacity(seq.len());
        for (i, &l) in seq.iter().enumerate() {
            if rank.insert(l, i as u32).is_some() {
                return Err(PathError::BadOrder);
            }
        }
        for &l in &seq {
            if !rank.contains_key(&l.complement()) {
                return Err(PathError::BadOrder);
            }
        }
        Ok(LitOrder { seq, rank })
    }

    /// The literals in ascending order.
    pub fn seq(&self) -> &[Lit] {
        &self.seq
    }

    /// The rank of a literal, if the order covers it.
    pub fn rank(&self, l: Lit) -> Option<u32> {
        self.rank.get(&l).copied()
    }

    /// The order restricted to the given variables, relative ranks kept.
    pub fn restricted_to(&self, vars: &[u32]) -> LitOrder {
        let seq: Vec<Lit> = self
            .seq
            .iter()
            .copied()
            .filter(|l| vars.contains(&l.var()))
            .collect();
        LitOrder::from_seq(seq).expect("a restriction of a valid order stays valid")
    }

    /// True when the order ranks both polarities of every listed variable.
    pub fn covers(&self, vars: &[u32]) -> bool {
        vars.iter()
            .all(|&v| self.rank.contains_key(&Lit::new(v as i32)))
    }

    /// Compares two literals; errors when either is unranked.
    pub fn cmp_lits(&self, a: Lit, b: Lit) -> Result<std::cmp::Ordering, PathError> {
        let ra = self.rank(a).ok_or(PathError::UnrankedLit(a))?;
        let rb = self.rank(b).ok_or(PathError::UnrankedLit(b))?;
        Ok(ra.cmp(&rb))
    }

    /// Path-lexicographic comparison: vertexwise by rank, a proper prefix
    /// preceding its extensions.
    pub fn pathlex(&self, a: &Path, b: &Path) -> Result<std::cmp::Ordering, PathError> {
        for (x, y) in a.verts().iter().zip(b.verts()) {
            match self.cmp_lits(*x, *y)? {
                std::cmp::Ordering::Equal => continue,
                other => return Ok(other),
            }
        }
        Ok(a.verts().len().cmp(&b.verts().len()))
    }
}

// An arc entry in an adjacency list: the far endpoint (as a dense literal
// index) and the index of the clause the arc encodes.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ArcEntry {
    pub(crate) to: u32,
    pub(crate) clause: u32,
}

/// The implication digraph of a clause-set without the empty clause.
///
/// Vertices are the `2n` literals over the formula's variables, densely
/// indexed; the digraph keeps its own copy of the clause list so that paths,
/// arcs and clauses can be exchanged without the original [`ClauseSet`].
#[derive(Debug, Clone)]
pub struct ImpDigraph {
    vars: Vec<u32>,
    var_rank: HashMap<u32, u32>,
    lits: Vec<Lit>,
    out: Vec<Vec<ArcEntry>>,
    rin: Vec<Vec<ArcEntry>>,
    clauses: Vec<Clause>,
    order: LitOrder,
}

impl ImpDigraph {
    /// Builds the digraph under the default literal order.
    pub fn new(f: &ClauseSet) -> Result<ImpDigraph, IdgError> {
        ImpDigraph::with_order(f, LitOrder::default_for(f.vars()))
    }

    /// Builds the digraph under an explicit literal order.
    pub fn with_order(f: &ClauseSet, order: LitOrder) -> Result<ImpDigraph, IdgError> {
        if f.has_empty_clause() {
            return Err(IdgError::EmptyClausePresent);
        }
        if !order.covers(f.vars()) || order.seq().len() != f.n() * 2 {
            return Err(IdgError::OrderMismatch);
        }
        let vars = f.vars().to_vec();
        let var_rank: HashMap<u32, u32> =
            vars.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let mut lits = Vec::with_capacity(vars.len() * 2);
        for &v in &vars {
            lits.push(Lit::new(v as i32));
            lits.push(Lit::new(-(v as i32)));
        }
        let mut out = vec![Vec::new(); lits.len()];
        let mut rin = vec![Vec::new(); lits.len()];
        let index_of = |l: Lit| -> usize {
            (var_rank[&l.var()] as usize) * 2 + usize::from(!l.is_pos())
        };
        let push = |out: &mut Vec<Vec<ArcEntry>>, rin: &mut Vec<Vec<ArcEntry>>, a: Lit, b: Lit, ci: usize| {
            out[index_of(a)].push(ArcEntry {
                to: index_of(b) as u32,
                clause: ci as u32,
            });
            rin[index_of(b)].push(ArcEntry {
                to: index_of(a) as u32,
                clause: ci as u32,
            });
        };
        for (ci, cl) in f.clauses().iter().enumerate() {
            match cl {
                Clause::Empty => unreachable!("rejected above"),
                Clause::Unit(x) => push(&mut out, &mut rin, x.complement(), *x, ci),
                Clause::Binary(x, y) => {
                    push(&mut out, &mut rin, x.complement(), *y, ci);
                    push(&mut out, &mut rin, y.complement(), *x, ci);
                }
            }
        }
        let rank_of = |idx: u32| order.rank(lits[idx as usize]).expect("order covers all literals");
        for list in out.iter_mut().chain(rin.iter_mut()) {
            list.sort_by_key(|a| rank_of(a.to));
        }
        Ok(ImpDigraph {
            vars,
            var_rank,
            lits,
            out,
            rin,
            clauses: f.clauses().to_vec(),
            order,
        })
    }

    /// The active literal order.
    pub fn order(&self) -> &LitOrder {
        &self.order
    }

    /// The sorted variable list.
    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    /// Number of vertices (`2n`).
    pub fn lit_count(&self) -> usize {
        self.lits.len()
    }

    /// The vertex literals in dense-index order.
    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    /// The owned clause list, in the source clause-set's stored order.
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// The dense index of a literal vertex.
    pub fn lit_index(&self, l: Lit) -> Option<usize> {
        self.var_rank
            .get(&l.var())
            .map(|&r| (r as usize) * 2 + usize::from(!l.is_pos()))
    }

    /// The literal at a dense index.
    pub fn lit_at(&self, idx: usize) -> Lit {
        self.lits[idx]
    }

    /// Out-neighbours of a literal with the clause index of each arc, in the
    /// active literal order.
    pub fn out_neighbors(&self, l: Lit) -> Result<impl Iterator<Item = (Lit, usize)> + '_, IdgError> {
        let idx = self.lit_index(l).ok_or(IdgError::UnknownVertex(l))?;
        Ok(self.out[idx]
            .iter()
            .map(|a| (self.lits[a.to as usize], a.clause as usize)))
    }

    /// In-neighbours of a literal with the clause index of each arc.
    pub fn in_neighbors(&self, l: Lit) -> Result<impl Iterator<Item = (Lit, usize)> + '_, IdgError> {
        let idx = self.lit_index(l).ok_or(IdgError::UnknownVertex(l))?;
        Ok(self.rin[idx]
            .iter()
            .map(|a| (self.lits[a.to as usize], a.clause as usize)))
    }

    /// All arcs as `(from, to, clause index)` triples, grouped by source in
    /// dense-index order.
    pub fn arcs(&self) -> impl Iterator<Item = (Lit, Lit, usize)> + '_ {
        self.out.iter().enumerate().flat_map(move |(i, list)| {
            list.iter()
                .map(move |a| (self.lits[i], self.lits[a.to as usize], a.clause as usize))
        })
    }

    /// True when the arc `(a, b)` is present.
    pub fn has_arc(&self, a: Lit, b: Lit) -> bool {
        match (self.lit_index(a), self.lit_index(b)) {
            (Some(i), Some(j)) => self.out[i].iter().any(|e| e.to as usize == j),
            _ => false,
        }
    }

    /// The clause an arc encodes: arc `(a, b)` carries the clause `{ā, b}`.
    ///
    /// Errors when the arc is absent from the digraph.
    pub fn clause_of_arc(&self, a: Lit, b: Lit) -> Result<Clause, IdgError> {
        let i = self.lit_index(a).ok_or(IdgError::UnknownVertex(a))?;
        let j = self.lit_index(b).ok_or(IdgError::UnknownVertex(b))?;
        let entry = self.out[i]
            .iter()
            .find(|e| e.to as usize == j)
            .ok_or(IdgError::MissingArc(a, b))?;
        Ok(self.clauses[entry.clause as usize])
    }

    /// The clause index an arc encodes.
    pub fn clause_index_of_arc(&self, a: Lit, b: Lit) -> Result<usize, IdgError> {
        let i = self.lit_index(a).ok_or(IdgError::UnknownVertex(a))?;
        let j = self.lit_index(b).ok_or(IdgError::UnknownVertex(b))?;
        self.out[i]
            .iter()
            .find(|e| e.to as usize == j)
            .map(|e| e.clause as usize)
            .ok_or(IdgError::MissingArc(a, b))
    }

    /// Whether a path from `x` to `y` exists after deleting the `excluded`
    /// vertices. A length-0 path counts, so `x == y` is reachable. Vertices
    /// listed in `excluded` are treated as absent; if `x` or `y` is excluded
    /// the answer is `false`.
    pub fn reach(&self, x: Lit, y: Lit, excluded: &[Lit]) -> Result<bool, IdgError> {
        let sx = self.lit_index(x).ok_or(IdgError::UnknownVertex(x))?;
        let ty = self.lit_index(y).ok_or(IdgError::UnknownVertex(y))?;
        let mut blocked = vec![false; self.lits.len()];
        for &l in excluded {
            let i = self.lit_index(l).ok_or(IdgError::UnknownVertex(l))?;
            blocked[i] = true;
        }
        if blocked[sx] || blocked[ty] {
            return Ok(false);
        }
        if sx == ty {
            return Ok(true);
        }
        let mut seen = blocked;
        let mut stack = vec![sx];
        seen[sx] = true;
        while let Some(v) = stack.pop() {
            for e in &self.out[v] {
                let w = e.to as usize;
                if w == ty {
                    return Ok(true);
                }
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(false)
    }

    /// Debug dump: one `from -> to` line per arc in clause order, the second
    /// column marking each binary clause's arc pair as `solid` (source is the
    /// complement of the clause's first literal) or `contra`; unit arcs are
    /// `solid`. The third column is the clause.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for cl in &self.clauses {
            match cl {
                Clause::Empty => {}
                Clause::Unit(x) => {
                    s.push_str(&format!("{} -> {}\tsolid\t{}\n", x.complement(), x, cl));
                }
                Clause::Binary(a, b) => {
                    s.push_str(&format!("{} -> {}\tsolid\t{}\n", a.complement(), b, cl));
                    s.push_str(&format!("{} -> {}\tcontra\t{}\n", b.complement(), a, cl));
                }
            }
        }
        s
    }
}

/// A path in an implication digraph, stored as its vertex sequence.
///
/// Vertices are pairwise distinct literals; arcs and clauses are derived on
/// demand. A path is *regular* when its vertices are even variable-disjoint,
/// and *nearly regular* when exactly one variable repeats and dropping the
/// last vertex leaves a regular path.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    verts: Vec<Lit>,
}

impl Path {
    /// Builds a path from vertices, checking only vertex distinctness.
    pub fn new(verts: Vec<Lit>) -> Result<Path, PathError> {
        if verts.is_empty() {
            return Err(PathError::Empty);
        }
        for (i, &v) in verts.iter().enumerate() {
            if verts[..i].contains(&v) {
                return Err(PathError::RepeatedVertex(v));
            }
        }
        Ok(Path { verts })
    }

    /// Builds a path and checks every consecutive pair is an arc of `g`.
    pub fn in_digraph(g: &ImpDigraph, verts: Vec<Lit>) -> Result<Path, PathError> {
        let p = Path::new(verts)?;
        for &v in &p.verts {
            if g.lit_index(v).is_none() {
                return Err(PathError::UnknownVertex(v));
            }
        }
        for w in p.verts.windows(2) {
            if !g.has_arc(w[0], w[1]) {
                return Err(PathError::MissingArc(w[0], w[1]));
            }
        }
        Ok(p)
    }

    /// The vertex sequence.
    pub fn verts(&self) -> &[Lit] {
        &self.verts
    }

    /// Number of arcs (vertices minus one).
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    /// True for a single-vertex path.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// First vertex.
    pub fn first(&self) -> Lit {
        self.verts[0]
    }

    /// Last vertex.
    pub fn last(&self) -> Lit {
        *self.verts.last().expect("paths are nonempty")
    }

    /// The arcs as `(from, to)` pairs.
    pub fn arcs(&self) -> impl Iterator<Item = (Lit, Lit)> + '_ {
        self.verts.windows(2).map(|w| (w[0], w[1]))
    }

    /// The clauses of the path's arcs, via the host digraph.
    pub fn clauses(&self, g: &ImpDigraph) -> Result<Vec<Clause>, IdgError> {
        self.arcs().map(|(a, b)| g.clause_of_arc(a, b)).collect()
    }

    /// Number of unordered vertex pairs sharing a variable.
    pub fn clash_count(&self) -> usize {
        let mut clashes = 0;
        for (i, &v) in self.verts.iter().enumerate() {
            for &w in &self.verts[..i] {
                if v.var() == w.var() {
                    clashes += 1;
                }
            }
        }
        clashes
    }

    /// True when the vertices are variable-disjoint.
    pub fn is_regular(&self) -> bool {
        self.clash_count() == 0
    }

    /// True when exactly one variable repeats and it involves the last
    /// vertex, i.e. the path minus its last vertex is regular.
    pub fn is_nearly_regular(&self) -> bool {
        self.clash_count() == 1 && self.clash_index().is_some()
    }

    /// For a path whose last vertex clashes, the index `j` with
    /// `p_j = complement(last)`, provided the prefix without the last vertex
    /// is regular.
    fn clash_index(&self) -> Option<usize> {
        let last = self.last();
        let prefix = &self.verts[..self.verts.len() - 1];
        let j = prefix.iter().position(|&v| v.var() == last.var())?;
        let prefix_regular = prefix
            .iter()
            .enumerate()
            .all(|(i, &v)| !prefix[..i].iter().any(|&w| w.var() == v.var()));
        if prefix_regular && prefix[j] == last.complement() {
            Some(j)
        } else {
            None
        }
    }

    /// True when the final arc encodes a unit-clause, i.e. the last vertex is
    /// the complement of the one before it.
    pub fn last_arc_is_unit(&self) -> bool {
        self.verts.len() >= 2
            && self.verts[self.verts.len() - 1] == self.verts[self.verts.len() - 2].complement()
    }

    /// Contraposition: complement every vertex and reverse the sequence.
    /// An involution on paths with at least one arc.
    pub fn contrapose(&self) -> Result<Path, PathError> {
        if self.len() == 0 {
            return Err(PathError::ZeroLength);
        }
        let verts = self.verts.iter().rev().map(|l| l.complement()).collect();
        Ok(Path { verts })
    }

    /// The unique split `P = P0;P1` of a nearly regular path, where `P1` runs
    /// from the clash partner to the last vertex (its endpoints are
    /// complementary) and `P0` is the regular lead-in ending at `P1`'s first
    /// vertex, or absent when the clash partner is the first vertex.
    pub fn regular_decompose(&self) -> Result<(Option<Path>, Path), PathError> {
        if !self.is_nearly_regular() {
            return Err(PathError::NotNearlyRegular);
        }
        let j = self.clash_index().expect("nearly regular paths have a clash index");
        let p1 = Path {
            verts: self.verts[j..].to_vec(),
        };
        let p0 = if j == 0 {
            None
        } else {
            Some(Path {
                verts: self.verts[..=j].to_vec(),
            })
        };
        Ok((p0, p1))
    }

    /// The companion path delivering the same clause-set: the regular lead-in
    /// followed by the contraposition of the clash-closing segment. A path
    /// whose last arc is a unit is its own companion.
    pub fn sibling(&self) -> Result<Path, PathError> {
        let (p0, p1) = self.regular_decompose()?;
        let p1c = p1.contrapose().expect("clash segment has at least one arc");
        let mut verts = match p0 {
            Some(p0) => {
                let mut v = p0.verts;
                v.pop();
                v
            }
            None => Vec::new(),
        };
        verts.extend(p1c.verts);
        Ok(Path { verts })
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_lit_list(&self.verts))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Formats literals as `(1, 2, -1)`, the list notation used by the trace
/// output.
pub fn format_lit_list(lits: &[Lit]) -> String {
    let body: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
    format!("({})", body.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{clause, lit, ClauseSet};

    fn u22() -> ClauseSet {
        ClauseSet::from_clauses(vec![clause(&[1]), clause(&[-1, 2]), clause(&[-2])])
    }

    fn path(codes: &[i32]) -> Path {
        Path::new(codes.iter().map(|&c| lit(c)).collect()).unwrap()
    }

    #[test]
    fn digraph_of_chain() {
        let g = ImpDigraph::new(&u22()).unwrap();
        let mut arcs: Vec<(Lit, Lit)> = g.arcs().map(|(a, b, _)| (a, b)).collect();
        arcs.sort_by_key(|(a, b)| (a.key(), b.key()));
        let mut want = vec![
            (lit(-1), lit(1)),
            (lit(1), lit(2)),
            (lit(-2), lit(-1)),
            (lit(2), lit(-2)),
        ];
        want.sort_by_key(|(a, b)| (a.key(), b.key()));
        assert_eq!(arcs, want);
    }

    #[test]
    fn digraph_of_single_binary_clause() {
        let f = ClauseSet::from_clauses(vec![clause(&[1, 2])]);
        let g = ImpDigraph::new(&f).unwrap();
        let arcs: Vec<(Lit, Lit)> = g.arcs().map(|(a, b, _)| (a, b)).collect();
        assert_eq!(arcs.len(), 2);
        assert!(g.has_arc(lit(-1), lit(2)));
        assert!(g.has_arc(lit(-2), lit(1)));
    }

    #[test]
    fn digraph_of_empty_formula() {
        let g = ImpDigraph::new(&ClauseSet::from_clauses(vec![])).unwrap();
        assert_eq!(g.lit_count(), 0);
        assert_eq!(g.arcs().count(), 0);
    }

    #[test]
    fn digraph_rejects_empty_clause() {
        let f = ClauseSet::from_clauses(vec![Clause::Empty]);
        assert_eq!(ImpDigraph::new(&f).unwrap_err(), IdgError::EmptyClausePresent);
    }

    #[test]
    fn arcs_recover_their_clauses() {
        let f = ClauseSet::from_clauses(vec![
            clause(&[1]),
            clause(&[-1, 2]),
            clause(&[-2, 3]),
            clause(&[-2, -3]),
        ]);
        let g = ImpDigraph::new(&f).unwrap();
        let mut recovered: Vec<Clause> = g.arcs().map(|(_, _, ci)| g.clauses()[ci]).collect();
        recovered.sort();
        recovered.dedup();
        assert_eq!(recovered.len(), f.c());
        for cl in f.clauses() {
            assert!(recovered.contains(cl));
        }
        assert_eq!(g.clause_of_arc(lit(-1), lit(1)).unwrap(), clause(&[1]));
        assert_eq!(g.clause_of_arc(lit(1), lit(2)).unwrap(), clause(&[-1, 2]));
        assert!(g.clause_of_arc(lit(1), lit(3)).is_err());
    }

    #[test]
    fn unit_arcs_carry_unit_clauses() {
        let g = ImpDigraph::new(&u22()).unwrap();
        assert!(g.clause_of_arc(lit(-1), lit(1)).unwrap().unit_lit().is_some());
        assert!(g.clause_of_arc(lit(1), lit(2)).unwrap().unit_lit().is_none());
    }

    #[test]
    fn reach_examples() {
        let g = ImpDigraph::new(&u22()).unwrap();
        assert!(g.reach(lit(1), lit(-1), &[]).unwrap());
        assert!(!g.reach(lit(1), lit(-1), &[lit(2)]).unwrap());
        assert!(g.reach(lit(2), lit(2), &[]).unwrap());
        assert!(g.reach(lit(1), lit(-2), &[]).unwrap());
        assert!(!g.reach(lit(-1), lit(-2), &[lit(1)]).unwrap());
        assert!(g.reach(lit(1), lit(5), &[]).is_err());
    }

    #[test]
    fn contrapose_examples() {
        assert_eq!(path(&[1, 2, -1]).contrapose().unwrap(), path(&[1, -2, -1]));
        assert_eq!(path(&[1, 2]).contrapose().unwrap(), path(&[-2, -1]));
        let p = path(&[1, 2, 3, -2]);
        assert_eq!(p.contrapose().unwrap().contrapose().unwrap(), p);
        assert_eq!(path(&[1]).contrapose(), Err(PathError::ZeroLength));
    }

    #[test]
    fn regularity_tests() {
        assert!(path(&[1, 2, 3]).is_regular());
        assert!(!path(&[1, 2, -1]).is_regular());
        assert!(path(&[1, 2, -1]).is_nearly_regular());
        assert!(path(&[1, 2, 3, -2]).is_nearly_regular());
        assert!(path(&[1, -1]).is_nearly_regular());
        assert!(!path(&[1, 2, 3]).is_nearly_regular());
        // clash not involving the last vertex
        assert!(!path(&[1, -1, 2]).is_nearly_regular());
    }

    #[test]
    fn regular_decompose_examples() {
        let (p0, p1) = path(&[1, 2, 3, -2]).regular_decompose().unwrap();
        assert_eq!(p0, Some(path(&[1, 2])));
        assert_eq!(p1, path(&[2, 3, -2]));

        let (p0, p1) = path(&[1, 2, -1]).regular_decompose().unwrap();
        assert_eq!(p0, None);
        assert_eq!(p1, path(&[1, 2, -1]));

        let (p0, p1) = path(&[1, -1]).regular_decompose().unwrap();
        assert_eq!(p0, None);
        assert_eq!(p1, path(&[1, -1]));

        assert_eq!(
            path(&[1, 2, 3]).regular_decompose(),
            Err(PathError::NotNearlyRegular)
        );
    }

    #[test]
    fn sibling_examples() {
        assert_eq!(path(&[1, 2, -1]).sibling().unwrap(), path(&[1, -2, -1]));
        assert_eq!(path(&[1, 2, 3, -2]).sibling().unwrap(), path(&[1, 2, -3, -2]));
        // a unit final arc contraposes to itself
        assert_eq!(path(&[1, 2, -2]).sibling().unwrap(), path(&[1, 2, -2]));
        assert_eq!(path(&[1, -1]).sibling().unwrap(), path(&[1, -1]));
        // sibling is an involution on clash-at-front paths
        let p = path(&[1, 2, -1]);
        assert_eq!(p.sibling().unwrap().sibling().unwrap(), p);
    }

    #[test]
    fn default_order_and_pathlex() {
        let order = LitOrder::default_for(&[2, 1]);
        let seq: Vec<Lit> = vec![lit(1), lit(-1), lit(2), lit(-2)];
        assert_eq!(order.seq(), &seq[..]);
        assert_eq!(order.rank(lit(-2)), Some(3));
        assert!(LitOrder::from_seq(vec![lit(1), lit(2)]).is_err());
        assert!(LitOrder::from_seq(vec![lit(1), lit(1), lit(-1)]).is_err());

        use std::cmp::Ordering;
        assert_eq!(order.pathlex(&path(&[1, 2]), &path(&[1, 2, -1])).unwrap(), Ordering::Less);
        assert_eq!(order.pathlex(&path(&[1, 2, -1]), &path(&[1, -2, -1])).unwrap(), Ordering::Less);
        assert_eq!(order.pathlex(&path(&[1, -2]), &path(&[1, 2])).unwrap(), Ordering::Greater);
        assert_eq!(order.pathlex(&path(&[1, 2]), &path(&[1, 2])).unwrap(), Ordering::Equal);
    }

    #[test]
    fn custom_order_reorders_neighbours() {
        let f = ClauseSet::from_clauses(vec![clause(&[-1, 2]), clause(&[-1, 3])]);
        let custom = LitOrder::from_seq(vec![
            lit(3),
            lit(-3),
            lit(2),
            lit(-2),
            lit(1),
            lit(-1),
        ])
        .unwrap();
        let g = ImpDigraph::with_order(&f, custom).unwrap();
        let outs: Vec<Lit> = g.out_neighbors(lit(1)).unwrap().map(|(l, _)| l).collect();
        assert_eq!(outs, vec![lit(3), lit(2)]);
        let g2 = ImpDigraph::new(&f).unwrap();
        let outs2: Vec<Lit> = g2.out_neighbors(lit(1)).unwrap().map(|(l, _)| l).collect();
        assert_eq!(outs2, vec![lit(2), lit(3)]);
    }

    #[test]
    fn dump_flags_arc_pairs() {
        let g = ImpDigraph::new(&u22()).unwrap();
        let dump = g.dump();
        assert!(dump.contains("-1 -> 1\tsolid"));
        assert!(dump.contains("1 -> 2\tsolid"));
        assert!(dump.contains("-2 -> -1\tcontra"));
        assert_eq!(dump.lines().count(), 4);
    }

    #[test]
    fn path_validation_against_digraph() {
        let g = ImpDigraph::new(&u22()).unwrap();
        assert!(Path::in_digraph(&g, vec![lit(1), lit(2), lit(-2)]).is_ok());
        assert_eq!(
            Path::in_digraph(&g, vec![lit(1), lit(-2)]).unwrap_err(),
            PathError::MissingArc(lit(1), lit(-2))
        );
        assert_eq!(
            Path::new(vec![lit(1), lit(2), lit(1)]).unwrap_err(),
            PathError::RepeatedVertex(lit(1))
        );
    }
}
