//! Vertex-regular reachability: finding a path between two literals that
//! repeats no variable.
//!
//! In general digraphs such paths are hard to find, but an implication
//! digraph mirrors every arc (a, b) with (b̄, ā), and that symmetry reduces
//! the question to perfect matching. A regular path from `x` to `y` uses,
//! for each variable it passes through, exactly one clause containing the
//! positive literal and one containing the negative literal; the endpoints
//! use a single clause each (one containing `x̄`, one containing `y`).
//! The gadget below encodes exactly that pairing discipline:
//!
//! * every binary clause gets two *plug* nodes, one per literal, joined by a
//!   *twin* edge (matched twin ⟺ clause unused);
//! * every non-endpoint variable gets two *hub* nodes (one per sign) joined
//!   by a *hub* edge (matched ⟺ variable untouched), plus an edge from each
//!   hub to every plug of a same-sign occurrence;
//! * the endpoint variables get one hub each, adjacent only to plugs of
//!   `x̄`-occurrences resp. `y`-occurrences, with no escape edge — so both
//!   must pair with a genuine clause.
//!
//! A perfect matching exists iff a regular path does, and following matched
//! edges from the start hub reads the path off directly; alternating cycles
//! elsewhere in the matching are harmless because the walk never meets them.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};

use crate::cnf::{Clause, Lit};
use crate::idg::{ImpDigraph, Path};

struct Gadget {
    graph: UnGraph<(), ()>,
    hub_start: NodeIndex,
    // internal variable -> [positive-sign hub, negative-sign hub]
    hubs: HashMap<u32, [NodeIndex; 2]>,
    // plug -> (clause index, literal at that plug)
    plug_info: HashMap<NodeIndex, (usize, Lit)>,
    // (clause index, literal) -> the clause's other literal
    partner: HashMap<(usize, Lit), Lit>,
}

fn build_gadget(g: &ImpDigraph, x: Lit, y: Lit, alive: &dyn Fn(u32) -> bool) -> Gadget {
    let (vx, vy) = (x.var(), y.var());
    let live = |v: u32| v == vx || v == vy || alive(v);
    let mut graph: UnGraph<(), ()> = UnGraph::default();
    let hub_start = graph.add_node(());
    let hub_end = graph.add_node(());
    let mut hubs: HashMap<u32, [NodeIndex; 2]> = HashMap::new();
    for &v in g.vars() {
        if v != vx && v != vy && alive(v) {
            let pos = graph.add_node(());
            let neg = graph.add_node(());
            graph.add_edge(pos, neg, ());
            hubs.insert(v, [pos, neg]);
        }
    }
    let mut plug_info = HashMap::new();
    let mut partner = HashMap::new();
    for (ci, cl) in g.clauses().iter().enumerate() {
        let Clause::Binary(a, b) = *cl else { continue };
        if !live(a.var()) || !live(b.var()) {
            continue;
        }
        let pa = graph.add_node(());
        let pb = graph.add_node(());
        graph.add_edge(pa, pb, ());
        plug_info.insert(pa, (ci, a));
        plug_info.insert(pb, (ci, b));
        partner.insert((ci, a), b);
        partner.insert((ci, b), a);
        for (plug, l) in [(pa, a), (pb, b)] {
            let hub = if l.var() == vx {
                (l == x.complement()).then_some(hub_start)
            } else if l.var() == vy {
                (l == y).then_some(hub_end)
            } else {
                let [pos, neg] = hubs[&l.var()];
                Some(if l.is_pos() { pos } else { neg })
            };
            if let Some(h) = hub {
                graph.add_edge(plug, h, ());
            }
        }
    }
    Gadget {
        graph,
        hub_start,
        hubs,
        plug_info,
        partner,
    }
}

// A regular x→y path over the live variables, if any; callers guarantee
// var(x) ≠ var(y) and that both literals are vertices.
fn regular_over(g: &ImpDigraph, x: Lit, y: Lit, alive: &dyn Fn(u32) -> bool) -> Option<Vec<Lit>> {
    debug_assert_ne!(x.var(), y.var());
    let gad = build_gadget(g, x, y, alive);
    let matching = maximum_matching(&gad.graph);
    if !matching.is_perfect() {
        return None;
    }
    let mut verts = vec![x];
    let mut hub = gad.hub_start;
    for _ in 0..=g.vars().len() {
        let plug = matching.mate(hub).expect("matching is perfect");
        let &(ci, at) = gad
            .plug_info
            .get(&plug)
            .expect("hubs are matched to plugs");
        let next = gad.partner[&(ci, at)];
        verts.push(next);
        if next == y {
            debug_assert!(Path::new(verts.clone()).is_ok_and(|p| p.is_regular()));
            return Some(verts);
        }
        // leave the variable through its opposite-sign hub
        let [pos, neg] = gad.hubs[&next.var()];
        hub = if next.is_pos() { neg } else { pos };
    }
    unreachable!("matched walk visits each variable at most once");
}

/// Some vertex-regular path from `x` to `y`, or none. Deterministic for a
/// fixed digraph; not necessarily shortest.
pub(crate) fn find_regular(g: &ImpDigraph, x: Lit, y: Lit) -> Option<Path> {
    regular_over(g, x, y, &|_| true)
        .map(|v| Path::new(v).expect("matched walk has distinct vertices"))
}

#[derive(PartialEq, Eq)]
struct Prefix {
    ranks: Vec<u32>,
    verts: Vec<Lit>,
}

impl Ord for Prefix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ranks.len(), &self.ranks).cmp(&(other.ranks.len(), &other.ranks))
    }
}

impl PartialOrd for Prefix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The minimum-length vertex-regular path from `x` to `y` (path-lex least
/// among those of minimum length), or none. Uniform-cost search over
/// regular prefixes; a prefix is expanded only if a matching probe certifies
/// it still completes to a full regular path, so every expansion is useful.
pub(crate) fn shortest_regular(g: &ImpDigraph, x: Lit, y: Lit) -> Option<Path> {
    let order = g.order();
    let rank = |l: Lit| order.rank(l).expect("vertices are ranked");
    let mut heap: BinaryHeap<Reverse<Prefix>> = BinaryHeap::new();
    heap.push(Reverse(Prefix {
        ranks: vec![rank(x)],
        verts: vec![x],
    }));
    while let Some(Reverse(p)) = heap.pop() {
        let last = *p.verts.last().expect("prefixes are non-empty");
        if last == y {
            return Some(Path::new(p.verts).expect("prefix vertices are distinct"));
        }
        let used: HashSet<u32> = p.verts.iter().map(|l| l.var()).collect();
        let mut blocked: Vec<Lit> = Vec::with_capacity(2 * used.len());
        for &v in &used {
            blocked.push(Lit::new(v as i32));
            blocked.push(Lit::new(-(v as i32)));
        }
        let nexts: Vec<Lit> = g
            .out_neighbors(last)
            .expect("prefix vertices are in the digraph")
            .map(|(w, _)| w)
            .collect();
        for w in nexts {
            // reaching y through ȳ would clash at the end
            if used.contains(&w.var()) || (w != y && w.var() == y.var()) {
                continue;
            }
            let complete = w == y
                || (g
                    .reach(w, y, &blocked)
                    .expect("prefix and target vertices exist")
                    && regular_over(g, w, y, &|v| v == w.var() || !used.contains(&v)).is_some());
            if complete {
                let mut verts = p.verts.clone();
                let mut ranks = p.ranks.clone();
                verts.push(w);
                ranks.push(rank(w));
                heap.push(Reverse(Prefix { ranks, verts }));
            }
        }
    }
    None
}
