//! Minimal unsatisfiability toolkit for 2-CNF.
//!
//! The crate decides minimal unsatisfiability of clause-sets with clauses of
//! width at most two in linear time, classifies such clause-sets into the
//! four structural families that exist at deficiency one, finds single
//! unit-containing minimally unsatisfiable sub-clause-sets in polynomial
//! time, enumerates all of them in a fixed path-lexicographic order with
//! polynomial delay, and translates digraph reachability questions into
//! 2-CNF instances whose minimal unsatisfiable sub-clause-sets mirror the
//! special closed walks of the digraph.
//!
//! Everything is built on the implication digraph of the clause-set: each
//! binary clause contributes two contraposed arcs, each unit-clause one arc
//! from the complement of its literal to the literal. Unit-containing
//! minimal unsatisfiable sub-clause-sets correspond to paths in that digraph
//! that repeat exactly one variable, which is what the search layers here
//! manipulate.

pub mod cdpp;
pub mod cnf;
pub mod idg;
pub mod mu;
pub mod musenum;
pub mod musfind;
pub mod oracle;
mod regular;
pub mod twosat;

pub use cdpp::{constant_model, has_special_closed_walk, has_special_cycle, translate_cdpp, translate_cdpp_prime, CdppError, StDigraph, DEFAULT_CYCLE_BOUND};
pub use cnf::{clause, lit, Assignment, Clause, ClauseSet, CnfError, Lit, Measures};
pub use mu::{classify_family, csdp_full, csdp_step, is_2mu, is_bk, CsdpFail, CsdpOutcome, CsdpStep, FailCondition, Family, MuError, MusRecord};
pub use idg::{format_lit_list, IdgError, ImpDigraph, LitOrder, Path, PathError};
pub use musenum::{enum_all_units, enum_unit, enum_unit_paths, print_mus, EnumCursor, EnumError, EnumEventKind, EnumStats, TraceRow};
pub use musfind::{find_mus_deletion, mus_family_iia, mus_one_unit, mus_two_units, mus_unit_sweep, regular_path, FindError, UnitMode};
pub use oracle::{brute_mus_enum, brute_paths, gen_family, truth_table_sat, OracleError, PathMode};
pub use twosat::{solve_2sat, SatOutcome, UnsatWitness};
