//! Clause-set core: literals, clauses of width at most two, clause-sets with
//! occurrence counts, DIMACS reading and writing, assignments and variable
//! isomorphisms.
//!
//! Clauses are clash-free literal sets of size 0, 1 or 2; the empty clause is
//! a first-class value. A [`ClauseSet`] has set semantics (no duplicate
//! clauses) but remembers the first-appearance order of its clauses, which is
//! the order every deterministic operation in this crate falls back to.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

/// Errors from clause construction, parsing, assignments and renamings.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    /// A clause contains a literal together with its complement.
    #[error("tautological clause: contains both {lit} and {comp}")]
    Tautology { lit: Lit, comp: Lit },
    /// A clause has more than two distinct literals.
    #[error("clause has {0} distinct literals, at most two are allowed")]
    TooWide(usize),
    /// Malformed DIMACS input.
    #[error("dimacs parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// An assignment was queried on a variable it does not define.
    #[error("assignment does not define variable {0}")]
    UndefinedVariable(u32),
    /// A renaming map is not a bijection on the variables of the formula.
    #[error("invalid renaming: {0}")]
    BadRenaming(String),
}

/// A literal: a variable id with a sign, encoded DIMACS style.
///
/// The inner value is a nonzero `i32`; negative means complemented. The
/// derived ordering is *not* the default literal order used by the graph
/// layer (which is ascending variable, positive before complement); use
/// [`Lit::key`] for that.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    /// Builds a literal from a DIMACS integer.
    ///
    /// Panics when `code` is zero (zero is the DIMACS clause terminator, not
    /// a literal).
    pub fn new(code: i32) -> Lit {
        assert!(code != 0, "literal code must be nonzero");
        Lit(code)
    }

    /// Non-panicking variant of [`Lit::new`].
    pub fn try_new(code: i32) -> Option<Lit> {
        if code == 0 {
            None
        } else {
            Some(Lit(code))
        }
    }

    /// The DIMACS integer of this literal.
    pub fn code(self) -> i32 {
        self.0
    }

    /// The variable id, always positive.
    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    /// True for uncomplemented literals.
    pub fn is_pos(self) -> bool {
        self.0 > 0
    }

    /// The complemented literal.
    pub fn complement(self) -> Lit {
        Lit(-self.0)
    }

    /// Sort key realising the default literal order: ascending variable id,
    /// positive literal before its complement.
    pub fn key(self) -> u64 {
        (u64::from(self.var()) << 1) | u64::from(!self.is_pos())
    }
}

impl std::ops::Neg for Lit {
    type Output = Lit;
    fn neg(self) -> Lit {
        self.complement()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Convenience constructor for tests and examples: `lit(-2)` is `¬x2`.
pub fn lit(code: i32) -> Lit {
    Lit::new(code)
}

/// A clash-free clause with at most two literals.
///
/// Binary clauses store their literals sorted by [`Lit::key`], so equal
/// literal sets compare and hash equal regardless of construction order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// The empty clause, unsatisfiable on its own.
    Empty,
    /// A one-literal clause.
    Unit(Lit),
    /// A two-literal clause over distinct variables.
    Binary(Lit, Lit),
}

impl Clause {
    /// Builds a clause from a literal list.
    ///
    /// Duplicate literals collapse silently; a literal together with its
    /// complement is a tautology error; more than two distinct literals is a
    /// width error.
    pub fn from_lits(lits: &[Lit]) -> Result<Clause, CnfError> {
        let mut seen: Vec<Lit> = Vec::with_capacity(2);
        for &l in lits {
            if seen.contains(&l) {
                continue;
            }
            if seen.contains(&l.complement()) {
                return Err(CnfError::Tautology {
                    lit: l.complement(),
                    comp: l,
                });
            }
            seen.push(l);
        }
        match seen.len() {
            0 => Ok(Clause::Empty),
            1 => Ok(Clause::Unit(seen[0])),
            2 => {
                let (a, b) = (seen[0], seen[1]);
                if a.key() < b.key() {
                    Ok(Clause::Binary(a, b))
                } else {
                    Ok(Clause::Binary(b, a))
                }
            }
            w => Err(CnfError::TooWide(w)),
        }
    }

    /// Number of literals.
    pub fn len(&self) -> usize {
        match self {
            Clause::Empty => 0,
            Clause::Unit(_) => 1,
            Clause::Binary(..) => 2,
        }
    }

    /// True only for the empty clause.
    pub fn is_empty(&self) -> bool {
        matches!(self, Clause::Empty)
    }

    /// The literal of a unit clause, if this is one.
    pub fn unit_lit(&self) -> Option<Lit> {
        match self {
            Clause::Unit(l) => Some(*l),
            _ => None,
        }
    }

    /// Iterates the literals in key order.
    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        let pair: [Option<Lit>; 2] = match self {
            Clause::Empty => [None, None],
            Clause::Unit(l) => [Some(*l), None],
            Clause::Binary(a, b) => [Some(*a), Some(*b)],
        };
        pair.into_iter().flatten()
    }

    /// Membership test for a literal.
    pub fn contains(&self, l: Lit) -> bool {
        self.lits().any(|m| m == l)
    }

    /// True when some literal's variable is `v`.
    pub fn mentions_var(&self, v: u32) -> bool {
        self.lits().any(|m| m.var() == v)
    }

    /// The other literal of a binary clause, given one of its literals.
    pub fn other_lit(&self, l: Lit) -> Option<Lit> {
        match self {
            Clause::Binary(a, b) if *a == l => Some(*b),
            Clause::Binary(a, b) if *b == l => Some(*a),
            _ => None,
        }
    }

    /// The literal-wise complement clause.
    pub fn complement(&self) -> Clause {
        match self {
            Clause::Empty => Clause::Empty,
            Clause::Unit(l) => Clause::Unit(l.complement()),
            Clause::Binary(a, b) => {
                Clause::from_lits(&[a.complement(), b.complement()]).expect("complement stays clash-free")
            }
        }
    }

    /// Set difference `self \ other` as a sorted literal list.
    pub fn difference(&self, other: &Clause) -> Vec<Lit> {
        self.lits().filter(|l| !other.contains(*l)).collect()
    }

    /// Subset test on literal sets.
    pub fn subset_of_lits(&self, lits: &[Lit]) -> bool {
        self.lits().all(|l| lits.contains(&l))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for l in self.lits() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Builds a clause from DIMACS integers; panics on invalid input.
/// Test and example helper.
pub fn clause(codes: &[i32]) -> Clause {
    let lits: Vec<Lit> = codes.iter().map(|&c| Lit::new(c)).collect();
    Clause::from_lits(&lits).expect("valid clause")
}

/// The measure record of a clause-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measures {
    /// Number of variables.
    pub n: usize,
    /// Number of clauses.
    pub c: usize,
    /// Number of unit-clauses.
    pub u: usize,
    /// Sum of clause lengths.
    pub ell: usize,
    /// Deficiency `c - n`.
    pub delta: i64,
    /// Variables of degree 2, 3, 4.
    pub n2: usize,
    /// See [`Measures::n2`].
    pub n3: usize,
    /// See [`Measures::n2`].
    pub n4: usize,
    /// Literals of degree 1 and 2 (over both polarities of occurring variables).
    pub nprime1: usize,
    /// See [`Measures::nprime1`].
    pub nprime2: usize,
    /// Variables where at least one polarity occurs exactly once.
    pub singular: Vec<u32>,
    /// Variables where both polarities occur exactly once.
    pub one_singular: Vec<u32>,
}

/// A set of clauses with occurrence bookkeeping.
///
/// Duplicate clauses in the input collapse silently; the index of a clause is
/// its first-appearance position, and every ordering decision in this crate
/// derives from it or from an explicit literal order.
#[derive(Clone)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    position: HashMap<Clause, usize>,
    vars: Vec<u32>,
    var_rank: HashMap<u32, u32>,
    // [positive, complemented] occurrence counts per variable rank
    ldeg: Vec<[u32; 2]>,
    // per clause, the variable ranks of its literals in clause literal order,
    // padded with u32::MAX
    ranked: Vec<[u32; 2]>,
    lit_total: usize,
    unit_total: usize,
    empty_present: bool,
}

impl ClauseSet {
    /// Builds a clause-set from a clause list, collapsing duplicates.
    pub fn from_clauses(input: Vec<Clause>) -> ClauseSet {
        let mut clauses: Vec<Clause> = Vec::with_capacity(input.len());
        let mut position: HashMap<Clause, usize> = HashMap::with_capacity(input.len());
        for cl in input {
            if !position.contains_key(&cl) {
                position.insert(cl, clauses.len());
                clauses.push(cl);
            }
        }
        let mut vars: Vec<u32> = clauses.iter().flat_map(|c| c.lits().map(Lit::var)).collect();
        vars.sort_unstable();
        vars.dedup();
        let var_rank: HashMap<u32, u32> =
            vars.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let mut ldeg = vec![[0u32; 2]; vars.len()];
        let mut ranked = vec![[u32::MAX; 2]; clauses.len()];
        let mut lit_total = 0usize;
        let mut unit_total = 0usize;
        let mut empty_present = false;
        for (ci, cl) in clauses.iter().enumerate() {
            match cl {
                Clause::Empty => empty_present = true,
                Clause::Unit(_) => unit_total += 1,
                Clause::Binary(..) => {}
            }
            for (i, l) in cl.lits().enumerate() {
                lit_total += 1;
                let r = var_rank[&l.var()];
                ldeg[r as usize][usize::from(!l.is_pos())] += 1;
                ranked[ci][i] = r;
            }
        }
        ClauseSet {
            clauses,
            position,
            vars,
            var_rank,
            ldeg,
            ranked,
            lit_total,
            unit_total,
            empty_present,
        }
    }

    /// Parses DIMACS CNF text.
    ///
    /// A `p cnf <vars> <clauses>` header is required before the first clause;
    /// its counts are treated as hints only. Comment lines start with `c`.
    /// Hard errors: non-integer tokens, clauses wider than two literals after
    /// duplicate collapse, tautological clauses, a final clause without its
    /// `0` terminator.
    pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<ClauseSet, CnfError> {
        let mut clauses: Vec<Clause> = Vec::new();
        let mut pending: Vec<Lit> = Vec::new();
        let mut header_seen = false;
        let mut last_line = 0usize;
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let line = line.map_err(|e| CnfError::Parse {
                line: lineno,
                msg: format!("read failure: {e}"),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('p') {
                if header_seen {
                    return Err(CnfError::Parse {
                        line: lineno,
                        msg: "duplicate header".into(),
                    });
                }
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                if fields.len() != 4
                    || fields[0] != "p"
                    || fields[1] != "cnf"
                    || fields[2].parse::<u64>().is_err()
                    || fields[3].parse::<u64>().is_err()
                {
                    return Err(CnfError::Parse {
                        line: lineno,
                        msg: format!("malformed header `{trimmed}`"),
                    });
                }
                header_seen = true;
                continue;
            }
            if !header_seen {
                return Err(CnfError::Parse {
                    line: lineno,
                    msg: "clause data before `p cnf` header".into(),
                });
            }
            for tok in trimmed.split_whitespace() {
                let code: i32 = tok.parse().map_err(|_| CnfError::Parse {
                    line: lineno,
                    msg: format!("bad token `{tok}`"),
                })?;
                if code == 0 {
                    let cl = Clause::from_lits(&pending).map_err(|e| CnfError::Parse {
                        line: lineno,
                        msg: e.to_string(),
                    })?;
                    clauses.push(cl);
                    pending.clear();
                } else {
                    pending.push(Lit::new(code));
                }
            }
        }
        if !pending.is_empty() {
            return Err(CnfError::Parse {
                line: last_line,
                msg: "final clause lacks its 0 terminator".into(),
            });
        }
        if !header_seen {
            return Err(CnfError::Parse {
                line: last_line.max(1),
                msg: "missing `p cnf` header".into(),
            });
        }
        Ok(ClauseSet::from_clauses(clauses))
    }

    /// Parses DIMACS CNF from a string.
    pub fn parse_dimacs_str(text: &str) -> Result<ClauseSet, CnfError> {
        ClauseSet::parse_dimacs(text.as_bytes())
    }

    /// Writes DIMACS CNF text: `p cnf <max-var-id> <c>`, clauses in stored
    /// order, literals in key order, each clause `0`-terminated.
    pub fn write_dimacs(&self) -> String {
        let maxvar = self.vars.last().copied().unwrap_or(0);
        let mut out = format!("p cnf {} {}\n", maxvar, self.clauses.len());
        for cl in &self.clauses {
            for l in cl.lits() {
                out.push_str(&l.code().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    /// Number of clauses.
    pub fn c(&self) -> usize {
        self.clauses.len()
    }

    /// Number of unit-clauses.
    pub fn u(&self) -> usize {
        self.unit_total
    }

    /// Sum of clause lengths.
    pub fn ell(&self) -> usize {
        self.lit_total
    }

    /// Deficiency `c - n`.
    pub fn delta(&self) -> i64 {
        self.clauses.len() as i64 - self.vars.len() as i64
    }

    /// True when the empty clause is present.
    pub fn has_empty_clause(&self) -> bool {
        self.empty_present
    }

    /// The sorted variable list.
    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    /// True when `v` occurs in some clause.
    pub fn has_var(&self, v: u32) -> bool {
        self.var_rank.contains_key(&v)
    }

    /// Occurrence count of a literal (0 when its variable is absent).
    pub fn ldeg(&self, l: Lit) -> u32 {
        match self.var_rank.get(&l.var()) {
            Some(&r) => self.ldeg[r as usize][usize::from(!l.is_pos())],
            None => 0,
        }
    }

    // Degree rows `[positive, negative]` in variable-rank order, for sweeps
    // that would otherwise pay a hash lookup per variable.
    pub(crate) fn ldeg_rows(&self) -> &[[u32; 2]] {
        &self.ldeg
    }

    // Literal variable ranks per clause, aligned with `clauses()`, so that
    // reduction setup never re-probes the rank table.
    pub(crate) fn lit_ranks(&self) -> &[[u32; 2]] {
        &self.ranked
    }

    /// Occurrence count of a variable over both polarities.
    pub fn vdeg(&self, v: u32) -> u32 {
        match self.var_rank.get(&v) {
            Some(&r) => self.ldeg[r as usize][0] + self.ldeg[r as usize][1],
            None => 0,
        }
    }

    /// The clauses in first-appearance order.
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// The clause at a stored index.
    pub fn clause(&self, idx: usize) -> &Clause {
        &self.clauses[idx]
    }

    /// The stored index of a clause, if present.
    pub fn index_of(&self, cl: &Clause) -> Option<usize> {
        self.position.get(cl).copied()
    }

    /// Membership test.
    pub fn contains_clause(&self, cl: &Clause) -> bool {
        self.position.contains_key(cl)
    }

    /// Iterates the literals of unit-clauses in stored order.
    pub fn unit_lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.clauses.iter().filter_map(Clause::unit_lit)
    }

    /// The sub-clause-set induced by a list of stored indices (order kept).
    pub fn subset(&self, indices: &[usize]) -> ClauseSet {
        ClauseSet::from_clauses(indices.iter().map(|&i| self.clauses[i]).collect())
    }

    /// Set equality, ignoring clause order.
    pub fn same_clauses(&self, other: &ClauseSet) -> bool {
        self.clauses.len() == other.clauses.len()
            && self.clauses.iter().all(|c| other.contains_clause(c))
    }

    /// The full measure record.
    pub fn measures(&self) -> Measures {
        let mut n2 = 0;
        let mut n3 = 0;
        let mut n4 = 0;
        let mut nprime1 = 0;
        let mut nprime2 = 0;
        let mut singular = Vec::new();
        let mut one_singular = Vec::new();
        for (r, &v) in self.vars.iter().enumerate() {
            let [p, q] = self.ldeg[r];
            match p + q {
                2 => n2 += 1,
                3 => n3 += 1,
                4 => n4 += 1,
                _ => {}
            }
            for d in [p, q] {
                match d {
                    1 => nprime1 += 1,
                    2 => nprime2 += 1,
                    _ => {}
                }
            }
            if p == 1 || q == 1 {
                singular.push(v);
            }
            if p == 1 && q == 1 {
                one_singular.push(v);
            }
        }
        Measures {
            n: self.n(),
            c: self.c(),
            u: self.u(),
            ell: self.ell(),
            delta: self.delta(),
            n2,
            n3,
            n4,
            nprime1,
            nprime2,
            singular,
            one_singular,
        }
    }

    /// Applies a variable isomorphism: first the renaming, then literal flips
    /// on the renamed variables in `flip`.
    ///
    /// `rename` must be injective and cover every variable of the formula.
    pub fn apply_isomorphism(
        &self,
        rename: &BTreeMap<u32, u32>,
        flip: &BTreeSet<u32>,
    ) -> Result<ClauseSet, CnfError> {
        let mut image: BTreeSet<u32> = BTreeSet::new();
        for &v in &self.vars {
            let w = *rename
                .get(&v)
                .ok_or_else(|| CnfError::BadRenaming(format!("variable {v} has no image")))?;
            if !image.insert(w) {
                return Err(CnfError::BadRenaming(format!("image {w} used twice")));
            }
        }
        let map_lit = |l: Lit| {
            let w = rename[&l.var()];
            let mut pos = l.is_pos();
            if flip.contains(&w) {
                pos = !pos;
            }
            Lit::new(if pos { w as i32 } else { -(w as i32) })
        };
        let mut out = Vec::with_capacity(self.clauses.len());
        for cl in &self.clauses {
            let lits: Vec<Lit> = cl.lits().map(map_lit).collect();
            out.push(Clause::from_lits(&lits).expect("isomorphism preserves clash-freeness"));
        }
        Ok(ClauseSet::from_clauses(out))
    }
}

impl PartialEq for ClauseSet {
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses
    }
}

impl Eq for ClauseSet {}

impl fmt::Debug for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, cl) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{cl}")?;
        }
        write!(f, "}}")
    }
}

/// A partial boolean assignment over variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<u32, bool>,
}

impl Assignment {
    /// The empty assignment.
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// Builds from `(variable, value)` pairs.
    pub fn from_pairs(pairs: &[(u32, bool)]) -> Assignment {
        Assignment {
            map: pairs.iter().copied().collect(),
        }
    }

    /// Sets a variable.
    pub fn set(&mut self, var: u32, value: bool) {
        self.map.insert(var, value);
    }

    /// The value of a variable, if defined.
    pub fn value(&self, var: u32) -> Option<bool> {
        self.map.get(&var).copied()
    }

    /// The truth value of a literal, if its variable is defined.
    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.value(l.var()).map(|b| b == l.is_pos())
    }

    /// Iterates `(variable, value)` pairs in ascending variable order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.map.iter().map(|(&v, &b)| (v, b))
    }

    /// Number of defined variables.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// True when no variable is defined.
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Whether this assignment satisfies every clause of `f`.
    ///
    /// Errors when some variable of `f` is undefined here; the empty clause
    /// is never satisfied.
    pub fn satisfies(&self, f: &ClauseSet) -> Result<bool, CnfError> {
        for &v in f.vars() {
            if self.value(v).is_none() {
                return Err(CnfError::UndefinedVariable(v));
            }
        }
        for cl in f.clauses() {
            let sat = cl.lits().any(|l| self.lit_value(l) == Some(true));
            if !sat {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u22() -> ClauseSet {
        ClauseSet::from_clauses(vec![clause(&[1]), clause(&[-1, 2]), clause(&[-2])])
    }

    #[test]
    fn parse_three_clause_chain() {
        let f = ClauseSet::parse_dimacs_str("p cnf 2 3\n1 0\n-1 2 0\n-2 0\n").unwrap();
        assert_eq!(f, u22());
        assert_eq!(f.n(), 2);
        assert_eq!(f.c(), 3);
    }

    #[test]
    fn parse_empty_clause_file() {
        let f = ClauseSet::parse_dimacs_str("p cnf 0 1\n0\n").unwrap();
        assert_eq!(f.clauses(), &[Clause::Empty]);
        assert!(f.has_empty_clause());
        assert_eq!(f.n(), 0);
        assert_eq!(f.c(), 1);
    }

    #[test]
    fn parse_rejects_tautology() {
        let err = ClauseSet::parse_dimacs_str("p cnf 1 1\n1 -1 0\n").unwrap_err();
        assert!(matches!(err, CnfError::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_rejects_wide_clause() {
        let err = ClauseSet::parse_dimacs_str("p cnf 3 1\n1 2 3 0\n").unwrap_err();
        assert!(matches!(err, CnfError::Parse { .. }));
    }

    #[test]
    fn parse_collapses_duplicate_literals() {
        let f = ClauseSet::parse_dimacs_str("p cnf 2 1\n1 1 2 0\n").unwrap();
        assert_eq!(f.clauses(), &[clause(&[1, 2])]);
    }

    #[test]
    fn duplicate_clauses_collapse_keeping_first_position() {
        let f = ClauseSet::from_clauses(vec![clause(&[1, 2]), clause(&[2, 1]), clause(&[-1])]);
        assert_eq!(f.c(), 2);
        assert_eq!(f.index_of(&clause(&[1, 2])), Some(0));
        assert_eq!(f.index_of(&clause(&[-1])), Some(1));
    }

    #[test]
    fn measures_of_chain() {
        let m = u22().measures();
        assert_eq!((m.n, m.c, m.u, m.ell, m.delta), (2, 3, 2, 4, 1));
        assert_eq!((m.n2, m.n3, m.n4), (2, 0, 0));
        assert_eq!((m.nprime1, m.nprime2), (4, 0));
        assert_eq!(m.singular, vec![1, 2]);
        assert_eq!(m.one_singular, vec![1, 2]);
    }

    #[test]
    fn measures_of_empty_clause_set() {
        let f = ClauseSet::from_clauses(vec![Clause::Empty]);
        let m = f.measures();
        assert_eq!((m.n, m.c, m.u, m.ell, m.delta), (0, 1, 0, 0, 1));
    }

    #[test]
    fn measures_of_empty_formula() {
        let m = ClauseSet::from_clauses(vec![]).measures();
        assert_eq!((m.n, m.c, m.u, m.ell, m.delta), (0, 0, 0, 0, 0));
    }

    #[test]
    fn satisfies_examples() {
        let f = u22();
        let phi = Assignment::from_pairs(&[(1, true), (2, true)]);
        assert_eq!(phi.satisfies(&f).unwrap(), false); // {-2} falsified
        let psi = Assignment::from_pairs(&[(1, true)]);
        assert_eq!(psi.satisfies(&f), Err(CnfError::UndefinedVariable(2)));
        let g = ClauseSet::from_clauses(vec![clause(&[1, 2])]);
        let rho = Assignment::from_pairs(&[(1, false), (2, true)]);
        assert_eq!(rho.satisfies(&g).unwrap(), true);
        let bot = ClauseSet::from_clauses(vec![Clause::Empty]);
        assert_eq!(Assignment::new().satisfies(&bot).unwrap(), false);
    }

    #[test]
    fn isomorphism_examples() {
        let f = u22();
        let rename: BTreeMap<u32, u32> = [(1, 1), (2, 2)].into();
        let flips: BTreeSet<u32> = [2u32].into();
        let g = f.apply_isomorphism(&rename, &flips).unwrap();
        let want =
            ClauseSet::from_clauses(vec![clause(&[1]), clause(&[-1, -2]), clause(&[2])]);
        assert!(g.same_clauses(&want));

        let swap: BTreeMap<u32, u32> = [(1, 2), (2, 1)].into();
        let h = f.apply_isomorphism(&swap, &BTreeSet::new()).unwrap();
        let want2 =
            ClauseSet::from_clauses(vec![clause(&[2]), clause(&[-2, 1]), clause(&[-1])]);
        assert!(h.same_clauses(&want2));

        let bad: BTreeMap<u32, u32> = [(1, 3), (2, 3)].into();
        assert!(f.apply_isomorphism(&bad, &BTreeSet::new()).is_err());
    }

    #[test]
    fn writer_emits_stored_order() {
        let f = u22();
        assert_eq!(f.write_dimacs(), "p cnf 2 3\n1 0\n-1 2 0\n-2 0\n");
    }

    #[test]
    fn writer_parser_roundtrip() {
        let f = ClauseSet::from_clauses(vec![
            clause(&[3]),
            Clause::Empty,
            clause(&[-3, 7]),
            clause(&[-7, -3]),
        ]);
        let g = ClauseSet::parse_dimacs_str(&f.write_dimacs()).unwrap();
        assert_eq!(f, g);
    }
}
