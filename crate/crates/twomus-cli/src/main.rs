//! Command-line front end for the twomus toolkit.
//!
//! Four subcommands: `check` (measures, satisfiability, minimality,
//! family), `find` (one minimal unsatisfiable subset under various unit
//! disciplines), `enum` (ordered streaming of all unit-containing minimal
//! unsatisfiable subsets, with an optional search trace), and `cdpp`
//! (st-digraph translations and walk/cycle verdicts).
//!
//! Exit codes: 0 found/true, 1 not-found/false, 2 input error, 3 resource
//! bound exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twomus::{
    brute_mus_enum, classify_family, enum_all_units, enum_unit, find_mus_deletion,
    has_special_closed_walk, has_special_cycle, is_2mu, lit, mus_one_unit, mus_two_units,
    mus_unit_sweep, print_mus, solve_2sat, translate_cdpp, translate_cdpp_prime, truth_table_sat,
    CdppError, Clause, ClauseSet, EnumCursor, EnumEventKind, FindError, Lit, LitOrder, MusRecord,
    OracleError, StDigraph, UnitMode, DEFAULT_CYCLE_BOUND,
};

#[derive(Parser)]
#[command(
    name = "twomus",
    version,
    about = "Minimal unsatisfiability toolkit for 2-CNF formulas"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report measures, satisfiability, minimal unsatisfiability and the
    /// structural family of a DIMACS 2-CNF file.
    Check {
        file: PathBuf,
        /// Cross-check the verdicts against brute-force oracles.
        #[arg(long)]
        oracle: bool,
    },
    /// Print one minimal unsatisfiable subset, or "none".
    Find(FindArgs),
    /// Stream every unit-containing minimal unsatisfiable subset in
    /// path-lexicographic order.
    Enum(EnumArgs),
    /// Translate an st-digraph file to 2-CNF, or decide its closed-walk
    /// and disjoint-cycle questions.
    Cdpp(CdppArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode")
    .args(["unit", "units", "any_unit", "exactly_one", "deletion"])
    .required(true))]
struct FindArgs {
    file: PathBuf,
    /// A subset containing this unit-clause.
    #[arg(long, value_name = "LIT", allow_hyphen_values = true)]
    unit: Option<i32>,
    /// A subset containing exactly these two unit-clauses.
    #[arg(long, num_args = 2, value_name = "LIT", allow_hyphen_values = true)]
    units: Option<Vec<i32>>,
    /// A subset containing at least one unit-clause, units swept in stored
    /// order.
    #[arg(long)]
    any_unit: bool,
    /// A subset containing exactly one unit-clause.
    #[arg(long)]
    exactly_one: bool,
    /// Any subset, by the deletion method (works without unit-clauses).
    #[arg(long)]
    deletion: bool,
    /// With --units: simultaneously minimise variables, clauses and
    /// literal count.
    #[arg(long, requires = "units")]
    shortest: bool,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source")
    .args(["unit", "all_units"])
    .required(true))]
struct EnumArgs {
    file: PathBuf,
    /// Enumerate the subsets containing this unit-clause.
    #[arg(long, value_name = "LIT", allow_hyphen_values = true)]
    unit: Option<i32>,
    /// Sweep every unit-clause, removing each before the next round.
    #[arg(long)]
    all_units: bool,
    /// Stop after this many subsets.
    #[arg(long, value_name = "N")]
    limit: Option<usize>,
    /// Print the search trace (step, event, y, R, P) instead of subsets;
    /// only with --unit.
    #[arg(long, requires = "unit", conflicts_with_all = ["json", "all_units"])]
    trace: bool,
    /// One JSON object per subset instead of DIMACS blocks.
    #[arg(long)]
    json: bool,
    /// Explicit literal order, e.g. "2 -2 1 -1"; default is ascending
    /// variables, positive before negative.
    #[arg(long, value_name = "LITS", allow_hyphen_values = true)]
    order: Option<String>,
    /// Cross-check the streamed set against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct CdppArgs {
    file: PathBuf,
    /// Emit the primed translation (second fresh variable on the return
    /// half).
    #[arg(long, conflicts_with_all = ["check_walk", "check_cycle"])]
    prime: bool,
    /// Decide whether paths s→t and t→s both exist.
    #[arg(long, conflicts_with = "check_cycle")]
    check_walk: bool,
    /// Decide whether vertex-disjoint s→t and t→s paths exist (exhaustive;
    /// bounded, override with TWOMUS_BOUND).
    #[arg(long)]
    check_cycle: bool,
}

/// A failed run, carrying its exit code.
enum Failure {
    /// Unreadable or malformed input, or flags inconsistent with it.
    Input(String),
    /// A size bound would be exceeded.
    Bound(String),
    /// A cross-check disagreed.
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Bound(_) => 3,
            Failure::Mismatch(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Bound(m) | Failure::Mismatch(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Check { file, oracle } => cmd_check(&file, oracle),
        Cmd::Find(args) => cmd_find(args),
        Cmd::Enum(args) => cmd_enum(args),
        Cmd::Cdpp(args) => cmd_cdpp(args),
    }
}

fn read_formula(path: &Path) -> Result<ClauseSet, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    ClauseSet::parse_dimacs_str(&text).map_err(input_err)
}

fn env_bound(default: usize) -> usize {
    std::env::var("TWOMUS_BOUND")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn oracle_bound_err(e: OracleError) -> Failure {
    match e {
        OracleError::SizeBound(m) => Failure::Bound(m),
        other => Failure::Input(other.to_string()),
    }
}

fn cmd_check(file: &Path, oracle: bool) -> Result<u8, Failure> {
    let f = read_formula(file)?;
    let m = f.measures();
    println!("2cnf yes");
    println!(
        "n {}  c {}  u {}  ell {}  delta {}",
        m.n, m.c, m.u, m.ell, m.delta
    );
    let sat = solve_2sat(&f).is_sat();
    println!("sat {}", if sat { "yes" } else { "no" });
    let mu = is_2mu(&f);
    println!("mu {}", if mu { "yes" } else { "no" });
    if let Ok(family) = classify_family(&f) {
        println!("family {family}");
    }
    if oracle {
        let tt = truth_table_sat(&f).map_err(oracle_bound_err)?;
        if tt != sat {
            return Err(Failure::Mismatch("oracle disagrees on satisfiability".into()));
        }
        let brute_mu = !tt
            && (0..f.c()).all(|drop| {
                let keep: Vec<usize> = (0..f.c()).filter(|&j| j != drop).collect();
                truth_table_sat(&f.subset(&keep)).is_ok_and(|s| s)
            });
        if brute_mu != mu {
            return Err(Failure::Mismatch("oracle disagrees on minimality".into()));
        }
        println!("oracle agree");
    }
    Ok(0)
}

/// The one-line annotation above each printed subset.
fn annotation(record: &MusRecord) -> String {
    let family = record
        .family
        .map_or_else(|| "-".to_string(), |f| f.to_string());
    let witness = record.witness.as_ref().map_or_else(
        || "-".to_string(),
        |p| {
            let codes: Vec<String> = p.verts().iter().map(|l| l.code().to_string()).collect();
            codes.join(",")
        },
    );
    format!("c family={family} witness={witness}")
}

fn cmd_find(args: FindArgs) -> Result<u8, Failure> {
    let f = read_formula(&args.file)?;
    let found: Option<MusRecord> = if let Some(code) = args.unit {
        let l = Lit::try_new(code).ok_or_else(|| Failure::Input("literal 0".into()))?;
        mus_one_unit(&f, &Clause::Unit(l)).map_err(input_err)?
    } else if let Some(codes) = &args.units {
        let a = Lit::try_new(codes[0]).ok_or_else(|| Failure::Input("literal 0".into()))?;
        let b = Lit::try_new(codes[1]).ok_or_else(|| Failure::Input("literal 0".into()))?;
        mus_two_units(&f, &Clause::Unit(a), &Clause::Unit(b), args.shortest).map_err(input_err)?
    } else if args.any_unit {
        mus_unit_sweep(&f, UnitMode::AtLeastOne).map_err(input_err)?
    } else if args.exactly_one {
        mus_unit_sweep(&f, UnitMode::ExactlyOne).map_err(input_err)?
    } else {
        match find_mus_deletion(&f) {
            Ok(record) => Some(record),
            Err(FindError::Satisfiable) => None,
            Err(e) => return Err(input_err(e)),
        }
    };
    match found {
        Some(record) => {
            println!("{}", annotation(&record));
            print!("{}", record.clause_set(&f).write_dimacs());
            Ok(0)
        }
        None => {
            println!("none");
            Ok(1)
        }
    }
}

fn parse_order(spec: &str, f: &ClauseSet) -> Result<LitOrder, Failure> {
    let mut seq: Vec<Lit> = Vec::new();
    for tok in spec.split_whitespace() {
        let code: i32 = tok
            .parse()
            .map_err(|_| Failure::Input(format!("bad literal {tok:?} in --order")))?;
        seq.push(Lit::try_new(code).ok_or_else(|| Failure::Input("literal 0 in --order".into()))?);
    }
    let order = LitOrder::from_seq(seq).map_err(input_err)?;
    if !order.covers(f.vars()) {
        return Err(Failure::Input(
            "--order must rank both polarities of every variable of the formula".into(),
        ));
    }
    Ok(order)
}

fn json_line(f: &ClauseSet, record: &MusRecord) -> String {
    let clauses: Vec<Vec<i32>> = record
        .indices
        .iter()
        .map(|&i| f.clause(i as usize).lits().map(|l| l.code()).collect())
        .collect();
    let family = record.family.map(|fam| fam.to_string());
    let witness = record
        .witness
        .as_ref()
        .map(|p| p.verts().iter().map(|l| l.code()).collect::<Vec<i32>>());
    serde_json::json!({
        "clauses": clauses,
        "family": family,
        "witness": witness,
    })
    .to_string()
}

fn cmd_enum(args: EnumArgs) -> Result<u8, Failure> {
    let f = read_formula(&args.file)?;
    let order = match &args.order {
        Some(spec) => parse_order(spec, &f)?,
        None => LitOrder::default_for(f.vars()),
    };
    let limit = args.limit.unwrap_or(usize::MAX);

    let mut emitted: Vec<MusRecord> = Vec::new();
    if args.trace {
        let l = Lit::try_new(args.unit.expect("clap requires --unit with --trace"))
            .ok_or_else(|| Failure::Input("literal 0".into()))?;
        let cursor = EnumCursor::new(&f, &Clause::Unit(l), order).map_err(input_err)?;
        for row in cursor {
            let output = match &row.event {
                EnumEventKind::Output {
                    printed: true,
                    record,
                    ..
                } => Some(record.clone()),
                _ => None,
            };
            println!("{row}");
            if let Some(record) = output {
                emitted.push(record);
                if emitted.len() >= limit {
                    break;
                }
            }
        }
    } else {
        let stream: Box<dyn Iterator<Item = MusRecord>> = if let Some(code) = args.unit {
            let l = Lit::try_new(code).ok_or_else(|| Failure::Input("literal 0".into()))?;
            Box::new(enum_unit(&f, &Clause::Unit(l), order).map_err(input_err)?)
        } else {
            Box::new(enum_all_units(&f, order).map_err(input_err)?)
        };
        for record in stream.take(limit) {
            if args.json {
                println!("{}", json_line(&f, &record));
            } else {
                if !emitted.is_empty() {
                    println!();
                }
                println!("{}", annotation(&record));
                print!("{}", print_mus(&record));
            }
            emitted.push(record);
        }
    }

    if args.oracle {
        cross_check(&f, &args, &emitted)?;
    }
    Ok(u8::from(emitted.is_empty()))
}

/// Compares the streamed subsets (as stored-index sets) with the
/// brute-force enumeration, restricted to the same unit discipline. With
/// --limit the stream must be a prefix-sized subset instead of equal.
fn cross_check(f: &ClauseSet, args: &EnumArgs, emitted: &[MusRecord]) -> Result<(), Failure> {
    let keeps = |idx: &Vec<u32>| match args.unit {
        Some(code) => {
            let l = lit(code);
            f.index_of(&Clause::Unit(l))
                .is_some_and(|xi| idx.contains(&(xi as u32)))
        }
        None => idx.iter().any(|&i| f.clause(i as usize).len() == 1),
    };
    let mut want: Vec<Vec<u32>> = brute_mus_enum(f, env_bound(20))
        .map_err(oracle_bound_err)?
        .into_iter()
        .map(|r| r.indices)
        .filter(keeps)
        .collect();
    want.sort();
    let mut got: Vec<Vec<u32>> = emitted.iter().map(|r| r.indices.clone()).collect();
    got.sort();
    got.dedup();
    if got.len() != emitted.len() {
        return Err(Failure::Mismatch("duplicate subsets in the stream".into()));
    }
    let agrees = if emitted.len() < want.len() && args.limit.is_some() {
        got.iter().all(|idx| want.binary_search(idx).is_ok())
    } else {
        got == want
    };
    if !agrees {
        return Err(Failure::Mismatch(format!(
            "stream disagrees with the oracle: {} streamed, {} expected",
            got.len(),
            want.len()
        )));
    }
    eprintln!("oracle agree ({} subsets)", want.len());
    Ok(())
}

fn cmd_cdpp(args: CdppArgs) -> Result<u8, Failure> {
    let text = fs::read_to_string(&args.file)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.file.display())))?;
    let g = StDigraph::parse(&text).map_err(input_err)?;
    if args.check_walk {
        let yes = has_special_closed_walk(&g);
        println!("{}", if yes { "yes" } else { "no" });
        return Ok(u8::from(!yes));
    }
    if args.check_cycle {
        let bound = env_bound(DEFAULT_CYCLE_BOUND);
        match has_special_cycle(&g, bound) {
            Ok(yes) => {
                println!("{}", if yes { "yes" } else { "no" });
                return Ok(u8::from(!yes));
            }
            Err(e @ CdppError::SizeBound(..)) => return Err(Failure::Bound(e.to_string())),
            Err(e) => return Err(input_err(e)),
        }
    }
    let f = if args.prime {
        translate_cdpp_prime(&g)
    } else {
        translate_cdpp(&g)
    };
    print!("{}", f.write_dimacs());
    Ok(0)
}
