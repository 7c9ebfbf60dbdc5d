//! Linear-time satisfiability for width-≤2 clause-sets via strongly
//! connected components of the implication digraph.
//!
//! A clause-set is unsatisfiable exactly when the empty clause is present or
//! some literal sits in one strongly connected component with its
//! complement. On satisfiable inputs a model falls out of the component
//! order: a variable is set true when its positive literal's component is
//! completed before (hence topologically after) its complement's.

use crate::cnf::{Assignment, Clause, ClauseSet, Lit};

/// Verdict of [`solve_2sat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// Satisfiable, with a total model over the formula's variables.
    Sat(Assignment),
    /// Unsatisfiable, with a checkable reason.
    Unsat(UnsatWitness),
}

impl SatOutcome {
    /// True on the `Sat` arm.
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }
}

/// Why a clause-set is unsatisfiable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnsatWitness {
    /// The empty clause is present.
    EmptyClause,
    /// A literal that reaches its complement and is reached back by it in
    /// the implication digraph; the smallest contradictory variable's
    /// positive literal is reported.
    ContradictoryLiteral(Lit),
}

/// Decides satisfiability of a width-≤2 clause-set in linear time.
pub fn solve_2sat(f: &ClauseSet) -> SatOutcome {
    solve_2sat_masked(f, &[])
}

/// [`solve_2sat`] on the sub-clause-set obtained by dropping the clauses at
/// the `disabled` stored indices (out-of-range indices are ignored).
pub(crate) fn solve_2sat_masked(f: &ClauseSet, disabled: &[usize]) -> SatOutcome {
    let live = |ci: usize| !disabled.contains(&ci);
    for (ci, cl) in f.clauses().iter().enumerate() {
        if cl.is_empty() && live(ci) {
            return SatOutcome::Unsat(UnsatWitness::EmptyClause);
        }
    }
    // Dense literal indexing: rank(var)*2 for positive, +1 for complement.
    let vars = f.vars();
    let rank = |v: u32| vars.binary_search(&v).expect("literal variable occurs in formula");
    let idx = |l: Lit| rank(l.var()) * 2 + usize::from(!l.is_pos());
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); vars.len() * 2];
    for (ci, cl) in f.clauses().iter().enumerate() {
        if !live(ci) {
            continue;
        }
        match cl {
            Clause::Empty => unreachable!("handled above"),
            Clause::Unit(x) => adj[idx(x.complement())].push(idx(*x) as u32),
            Clause::Binary(x, y) => {
                adj[idx(x.complement())].push(idx(*y) as u32);
                adj[idx(y.complement())].push(idx(*x) as u32);
            }
        }
    }
    let comp = tarjan_components(&adj);
    for (r, &v) in vars.iter().enumerate() {
        if comp[r * 2] == comp[r * 2 + 1] {
            return SatOutcome::Unsat(UnsatWitness::ContradictoryLiteral(Lit::new(v as i32)));
        }
    }
    let mut phi = Assignment::new();
    for (r, &v) in vars.iter().enumerate() {
        // Components are numbered in completion order, which is reverse
        // topological: a smaller id means topologically later, so the
        // positive literal is implied rather than implying.
        phi.set(v, comp[r * 2] < comp[r * 2 + 1]);
    }
    SatOutcome::Sat(phi)
}

// Strongly connected components, iterative Tarjan; returns the component id
// of each vertex, ids assigned in completion order.
fn tarjan_components(adj: &[Vec<u32>]) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<(u32, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_comp = 0u32;
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        frames.push((root as u32, 0));
        while let Some(frame) = frames.last_mut() {
            let v = frame.0 as usize;
            if frame.1 < adj[v].len() {
                let w = adj[v][frame.1] as usize;
                frame.1 += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    frames.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("component stack underflow") as usize;
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                frames.pop();
                if let Some(parent) = frames.last_mut() {
                    let p = parent.0 as usize;
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    comp
}
