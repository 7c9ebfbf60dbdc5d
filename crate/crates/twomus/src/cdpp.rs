//! st-digraphs and their clause-set translations: reachability questions
//! about two distinguished vertices become 2-CNF instances whose minimally
//! unsatisfiable subsets mirror the digraph's closed walks through s and t.
//!
//! The forward translation folds s and t into one fresh variable x0 (s as
//! the positive, t as the negative literal), one binary clause per arc. A
//! closed walk s→t→s then corresponds to a contradictory implication chain
//! x0 → x̄0 → x0, and a pair of vertex-disjoint paths to a single-loop
//! (degree-4-variable) subset. The primed variant splits the return half
//! onto a second fresh variable y0, turning the same disjoint-path
//! structure into two degree-3 variables instead.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::cnf::{Assignment, Clause, ClauseSet, Lit};

/// Default vertex cap for the exhaustive special-cycle search.
pub const DEFAULT_CYCLE_BOUND: usize = 16;

/// Errors of the st-digraph layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CdppError {
    /// Vertex ids are variable ids and must be positive.
    #[error("vertex ids must be positive")]
    ZeroVertex,
    /// The two distinguished vertices must differ.
    #[error("s and t must be distinct vertices")]
    EqualEndpoints,
    /// Arcs between s and t are excluded by definition (they would
    /// translate to unit-clauses).
    #[error("the arcs (s,t) and (t,s) are reserved")]
    ReservedArc,
    /// Self-loops would translate to tautological clauses.
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    /// The instance is too large for the exhaustive cycle search.
    #[error("special-cycle search over {0} vertices exceeds the bound {1}")]
    SizeBound(usize, usize),
    /// A line of the text format was malformed.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A digraph over variable-id vertices with distinguished endpoints s and
/// t, where the arcs (s,t) and (t,s) are forbidden. Vertices are collected
/// from the endpoints and the arcs; parallel arcs collapse to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StDigraph {
    s: u32,
    t: u32,
    verts: Vec<u32>,
    arcs: Vec<(u32, u32)>,
    out: HashMap<u32, Vec<u32>>,
}

impl StDigraph {
    pub fn new(s: u32, t: u32, arcs: &[(u32, u32)]) -> Result<StDigraph, CdppError> {
        if s == 0 || t == 0 || arcs.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(CdppError::ZeroVertex);
        }
        if s == t {
            return Err(CdppError::EqualEndpoints);
        }
        let mut seen: HashSet<(u32, u32)> = HashSet::new();
        let mut kept: Vec<(u32, u32)> = Vec::new();
        for &(a, b) in arcs {
            if a == b {
                return Err(CdppError::SelfLoop(a));
            }
            if (a, b) == (s, t) || (a, b) == (t, s) {
                return Err(CdppError::ReservedArc);
            }
            if seen.insert((a, b)) {
                kept.push((a, b));
            }
        }
        let mut verts: Vec<u32> = kept
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain([s, t])
            .collect();
        verts.sort_unstable();
        verts.dedup();
        let mut out: HashMap<u32, Vec<u32>> = HashMap::new();
        for &(a, b) in &kept {
            out.entry(a).or_default().push(b);
        }
        for targets in out.values_mut() {
            targets.sort_unstable();
        }
        Ok(StDigraph {
            s,
            t,
            verts,
            arcs: kept,
            out,
        })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Sorted vertex set (endpoints plus arc endpoints).
    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    /// Arcs in first-appearance order.
    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    /// The fresh variable folding s and t, one past the largest vertex.
    pub fn x0(&self) -> u32 {
        self.verts.last().expect("s and t are always vertices") + 1
    }

    /// The second fresh variable of the primed translation.
    pub fn y0(&self) -> u32 {
        self.x0() + 1
    }

    fn reaches(&self, from: u32, to: u32, excluded: &HashSet<u32>) -> bool {
        if excluded.contains(&from) || excluded.contains(&to) {
            return false;
        }
        if from == to {
            return true;
        }
        let mut seen: HashSet<u32> = HashSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in self.out.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if w == to {
                    return true;
                }
                if !excluded.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        false
    }

    /// Parses the text format: one `s <id>` line, one `t <id>` line, one
    /// `e <from> <to>` line per arc, `#`-comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<StDigraph, CdppError> {
        let mut s: Option<u32> = None;
        let mut t: Option<u32> = None;
        let mut arcs: Vec<(u32, u32)> = Vec::new();
        let bad = |line: usize, msg: &str| CdppError::Parse {
            line,
            msg: msg.to_string(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut it = body.split_whitespace();
            let head = it.next().expect("non-empty line has a first token");
            let mut num = || -> Result<u32, CdppError> {
                it.next()
                    .ok_or_else(|| bad(line, "missing vertex id"))?
                    .parse::<u32>()
                    .map_err(|_| bad(line, "vertex ids are positive integers"))
            };
            match head {
                "s" => {
                    let v = num()?;
                    if s.replace(v).is_some() {
                        return Err(bad(line, "duplicate s line"));
                    }
                }
                "t" => {
                    let v = num()?;
                    if t.replace(v).is_some() {
                        return Err(bad(line, "duplicate t line"));
                    }
                }
                "e" => {
                    let a = num()?;
                    let b = num()?;
                    arcs.push((a, b));
                }
                other => return Err(bad(line, &format!("unknown directive {other:?}"))),
            }
            if it.next().is_some() {
                return Err(bad(line, "trailing tokens"));
            }
        }
        let s = s.ok_or_else(|| bad(0, "missing s line"))?;
        let t = t.ok_or_else(|| bad(0, "missing t line"))?;
        StDigraph::new(s, t, &arcs)
    }
}

impl fmt::Display for StDigraph {
    /// The text format accepted by [`StDigraph::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s {}", self.s)?;
        writeln!(f, "t {}", self.t)?;
        for (a, b) in &self.arcs {
            writeln!(f, "e {a} {b}")?;
        }
        Ok(())
    }
}

// the vertex-to-literal fold of the forward translation
fn fold(g: &StDigraph, v: u32) -> Lit {
    let x0 = g.x0() as i32;
    if v == g.s() {
        Lit::new(x0)
    } else if v == g.t() {
        Lit::new(-x0)
    } else {
        Lit::new(v as i32)
    }
}

/// The forward translation: one clause per arc, reading the arc (a, b) as
/// the implication a → b over folded endpoints (s becomes x0, t becomes
/// x̄0). The result has no unit-clauses and no empty clause.
pub fn translate_cdpp(g: &StDigraph) -> ClauseSet {
    let clauses: Vec<Clause> = g
        .arcs()
        .iter()
        .map(|&(a, b)| {
            Clause::from_lits(&[fold(g, a).complement(), fold(g, b)])
                .expect("validated st-digraphs translate to binary clauses")
        })
        .collect();
    ClauseSet::from_clauses(clauses)
}

/// The primed translation: the unconditional clause x̄0 → y0 first, then
/// one clause per arc as in the forward translation except that arcs
/// leaving t start at y0 and arcs entering s end at ȳ0.
pub fn translate_cdpp_prime(g: &StDigraph) -> ClauseSet {
    let y0 = g.y0() as i32;
    let mut clauses = vec![Clause::from_lits(&[Lit::new(g.x0() as i32), Lit::new(y0)])
        .expect("x0 and y0 are distinct fresh variables")];
    clauses.extend(g.arcs().iter().map(|&(a, b)| {
        let from = if a == g.t() { Lit::new(y0) } else { fold(g, a) };
        let to = if b == g.s() { Lit::new(-y0) } else { fold(g, b) };
        Clause::from_lits(&[from.complement(), to])
            .expect("validated st-digraphs translate to binary clauses")
    }));
    ClauseSet::from_clauses(clauses)
}

/// True iff some path runs from s to t and some path runs from t back to
/// s; two plain reachability queries.
pub fn has_special_closed_walk(g: &StDigraph) -> bool {
    let none = HashSet::new();
    g.reaches(g.s(), g.t(), &none) && g.reaches(g.t(), g.s(), &none)
}

/// True iff an s→t path and a t→s path exist that share no vertex besides
/// s and t. Exhaustive over simple s→t paths (this question is hard in
/// general), pruned by reachability; instances above `vertex_bound`
/// vertices are rejected.
pub fn has_special_cycle(g: &StDigraph, vertex_bound: usize) -> Result<bool, CdppError> {
    if g.vertices().len() > vertex_bound {
        return Err(CdppError::SizeBound(g.vertices().len(), vertex_bound));
    }
    let mut path: Vec<u32> = vec![g.s()];
    let mut on_path: HashSet<u32> = HashSet::from([g.s()]);
    Ok(cycle_dfs(g, &mut path, &mut on_path))
}

fn cycle_dfs(g: &StDigraph, path: &mut Vec<u32>, on_path: &mut HashSet<u32>) -> bool {
    let v = *path.last().expect("the search path is never empty");
    if v == g.t() {
        // the return path may touch s and t but no internal path vertex
        let mut blocked = on_path.clone();
        blocked.remove(&g.s());
        blocked.remove(&g.t());
        return g.reaches(g.t(), g.s(), &blocked);
    }
    let nexts = g.out.get(&v).cloned().unwrap_or_default();
    for w in nexts {
        if on_path.contains(&w) {
            continue;
        }
        // only extend while t stays reachable around the current path
        let mut blocked = on_path.clone();
        blocked.remove(&g.t());
        if !g.reaches(w, g.t(), &blocked) {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        let found = cycle_dfs(g, path, on_path);
        path.pop();
        on_path.remove(&w);
        if found {
            return true;
        }
    }
    false
}

/// When s or t lacks incoming or outgoing arcs, the forward translation is
/// satisfiable by a uniform assignment (x0 one way, every other variable
/// the other); returns that assignment, or nothing when both endpoints
/// have arcs in both directions.
pub fn constant_model(g: &StDigraph) -> Option<Assignment> {
    let has = |pred: &dyn Fn(&(u32, u32)) -> bool| g.arcs().iter().any(pred);
    let s = g.s();
    let t = g.t();
    let (x0_val, rest_val) = if !has(&|&(a, _)| a == s) {
        (true, false)
    } else if !has(&|&(_, b)| b == s) {
        (false, true)
    } else if !has(&|&(a, _)| a == t) {
        (false, false)
    } else if !has(&|&(_, b)| b == t) {
        (true, true)
    } else {
        return None;
    };
    let mut pairs: Vec<(u32, bool)> = vec![(g.x0(), x0_val)];
    pairs.extend(
        g.vertices()
            .iter()
            .filter(|&&v| v != s && v != t)
            .map(|&v| (v, rest_val)),
    );
    Some(Assignment::from_pairs(&pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::clause;
    use crate::twosat::solve_2sat;

    // s=1 → a=2 → t=3 → b=4 → s
    fn ring() -> StDigraph {
        StDigraph::new(1, 3, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap()
    }

    #[test]
    fn ring_translation_matches_the_worked_example() {
        let g = ring();
        assert_eq!(g.x0(), 5);
        let f = translate_cdpp(&g);
        let want = ClauseSet::from_clauses(vec![
            clause(&[-5, 2]),
            clause(&[-2, -5]),
            clause(&[5, 4]),
            clause(&[-4, 5]),
        ]);
        assert!(f.same_clauses(&want));
        assert_eq!((f.n(), f.c(), f.u()), (3, 4, 0));
        assert!(!f.has_empty_clause());
    }

    #[test]
    fn ring_primed_translation_matches_the_worked_example() {
        let g = ring();
        let f = translate_cdpp_prime(&g);
        let want = ClauseSet::from_clauses(vec![
            clause(&[5, 6]),
            clause(&[-5, 2]),
            clause(&[-2, -5]),
            clause(&[-6, 4]),
            clause(&[-4, -6]),
        ]);
        assert!(f.same_clauses(&want));
        assert_eq!((f.n(), f.c(), f.u()), (4, 5, 0));
    }

    #[test]
    fn arcless_digraphs_translate_to_the_trivial_sets() {
        let g = StDigraph::new(1, 2, &[]).unwrap();
        assert_eq!(translate_cdpp(&g).c(), 0);
        let prime = translate_cdpp_prime(&g);
        assert_eq!(prime.c(), 1);
        assert!(prime.contains_clause(&clause(&[3, 4])));
    }

    #[test]
    fn two_arc_path_translates_directly() {
        let g = StDigraph::new(1, 3, &[(1, 2), (2, 3)]).unwrap();
        let f = translate_cdpp(&g);
        let want = ClauseSet::from_clauses(vec![clause(&[-4, 2]), clause(&[-2, -4])]);
        assert!(f.same_clauses(&want));
    }

    #[test]
    fn single_t_out_arc_in_the_primed_translation() {
        let g = StDigraph::new(1, 2, &[(2, 3)]).unwrap();
        let f = translate_cdpp_prime(&g);
        let want = ClauseSet::from_clauses(vec![clause(&[4, 5]), clause(&[-5, 3])]);
        assert!(f.same_clauses(&want));
    }

    #[test]
    fn construction_rejects_invalid_instances() {
        assert_eq!(StDigraph::new(1, 1, &[]), Err(CdppError::EqualEndpoints));
        assert_eq!(
            StDigraph::new(1, 2, &[(1, 2)]),
            Err(CdppError::ReservedArc)
        );
        assert_eq!(
            StDigraph::new(1, 2, &[(2, 1)]),
            Err(CdppError::ReservedArc)
        );
        assert_eq!(StDigraph::new(1, 2, &[(3, 3)]), Err(CdppError::SelfLoop(3)));
        assert_eq!(StDigraph::new(0, 2, &[]), Err(CdppError::ZeroVertex));
    }

    #[test]
    fn walk_needs_both_directions() {
        assert!(has_special_closed_walk(&ring()));
        // no arc back into s
        let g = StDigraph::new(1, 3, &[(1, 2), (2, 3)]).unwrap();
        assert!(!has_special_closed_walk(&g));
        // no way forward at all
        let h = StDigraph::new(1, 3, &[(3, 2), (2, 1)]).unwrap();
        assert!(!has_special_closed_walk(&h));
    }

    #[test]
    fn cycle_requires_disjoint_halves() {
        assert!(has_special_cycle(&ring(), DEFAULT_CYCLE_BOUND).unwrap());
        // both halves are forced through the hub vertex 3
        let g = StDigraph::new(1, 2, &[(1, 3), (3, 2), (2, 3), (3, 1)]).unwrap();
        assert!(has_special_closed_walk(&g));
        assert!(!has_special_cycle(&g, DEFAULT_CYCLE_BOUND).unwrap());
        // no walk implies no cycle
        let h = StDigraph::new(1, 3, &[(1, 2), (2, 3)]).unwrap();
        assert!(!has_special_cycle(&h, DEFAULT_CYCLE_BOUND).unwrap());
    }

    #[test]
    fn cycle_search_respects_the_bound() {
        let arcs: Vec<(u32, u32)> = (1..20).map(|v| (v, v + 1)).collect();
        let g = StDigraph::new(1, 10, &arcs).unwrap();
        assert_eq!(
            has_special_cycle(&g, 16),
            Err(CdppError::SizeBound(20, 16))
        );
    }

    #[test]
    fn text_format_roundtrips() {
        let g = ring();
        let text = g.to_string();
        assert_eq!(text, "s 1\nt 3\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
        assert_eq!(StDigraph::parse(&text).unwrap(), g);
        let commented = "# ring\ns 1\n\nt 3 # endpoints\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";
        assert_eq!(StDigraph::parse(commented).unwrap(), g);
    }

    #[test]
    fn parser_reports_malformed_lines() {
        assert!(matches!(
            StDigraph::parse("s 1\ns 2\nt 3\n"),
            Err(CdppError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            StDigraph::parse("s 1\n"),
            Err(CdppError::Parse { .. })
        ));
        assert!(matches!(
            StDigraph::parse("s 1\nt 2\ne 1\n"),
            Err(CdppError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            StDigraph::parse("s 1\nt 2\nq 3 4\n"),
            Err(CdppError::Parse { line: 3, .. })
        ));
        assert_eq!(
            StDigraph::parse("s 1\nt 2\ne 1 2\n"),
            Err(CdppError::ReservedArc)
        );
    }

    #[test]
    fn constant_models_satisfy_the_degenerate_translations() {
        // one digraph per missing-arc case, plus the ring with no gap
        let cases = [
            StDigraph::new(1, 2, &[(3, 1), (3, 2)]).unwrap(), // s has no out-arc
            StDigraph::new(1, 2, &[(1, 3), (3, 2)]).unwrap(), // s has no in-arc
            StDigraph::new(1, 2, &[(1, 3), (3, 2), (3, 1)]).unwrap(), // t has no out-arc
            StDigraph::new(1, 2, &[(1, 3), (2, 3), (3, 1)]).unwrap(), // t has no in-arc
        ];
        for g in &cases {
            let f = translate_cdpp(g);
            let model = constant_model(g).expect("an endpoint lacks an arc direction");
            assert_eq!(model.satisfies(&f), Ok(true), "{g}");
            assert!(solve_2sat(&f).is_sat());
        }
        assert!(constant_model(&ring()).is_none());
    }

    #[test]
    fn ring_translation_is_a_family_iii_instance() {
        use crate::mu::{classify_family, is_2mu, Family};
        let f = translate_cdpp(&ring());
        assert!(is_2mu(&f));
        assert_eq!(classify_family(&f), Ok(Family::III));
        let p = translate_cdpp_prime(&ring());
        assert!(is_2mu(&p));
        assert_eq!(classify_family(&p), Ok(Family::IV));
    }
}
