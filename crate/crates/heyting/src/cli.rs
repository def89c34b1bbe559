//! The `heyting` command line. [`run`] parses arguments, executes one
//! subcommand and returns the exit status with everything to be printed.
//!
//! Exit status: 0 success, 1 a checked property failed, 2 usage or input
//! error, 3 budget exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heyting_core::blackbox::DEFAULT_ROUNDS;
use heyting_core::classical::{generate_terms, Fragment};
use heyting_core::construct::{boolean_algebra, chain};
use heyting_core::enumerate::{enumerate_heyting, EnumerationBudget};
use heyting_core::ipc::{ipc_entails, ipc_proves};
use heyting_core::parse::{parse_equation, parse_formula, parse_term, parse_vars};
use heyting_core::rn::{describe, hasse_edges, rn_classify_with_cap, rn_formula, RnName, DEFAULT_RN_CAP};
use heyting_core::structure::{central_decompose, maximal_noncentrals};
use heyting_core::term::{Equation, Term};
use heyting_core::topology::{all_topologies, clopen_census, open_set_algebra, FiniteTopology};
use heyting_core::witness::{classify_one_var, material_implication_profile, witness_family, ClassificationOutcome};
use heyting_core::{ElementId, HeytingAlgebra};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{rational, read_algebra, read_topology, AlgebraJson, RationalJson, TopologyJson};
use crate::{scan, verify};

#[derive(Parser, Debug)]
#[command(name = "heyting", version, about = "Degrees of satisfiability over finite Heyting algebras")]
struct Cli {
    /// Worker threads for enumeration and scans (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stream every Heyting algebra up to a size as JSON lines
    Enumerate {
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Bound on join-irreducible posets (default: complete for max-size)
        #[arg(long)]
        ji_max: Option<usize>,
    },
    /// Degree of satisfiability of an equation or formula
    Ds {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
        eq: Option<String>,
        #[arg(long)]
        formula: Option<String>,
        /// Also print counts and a sample of failing assignments
        #[arg(long)]
        detail: bool,
    },
    /// Degrees of an equation over every algebra up to a size
    GapScan {
        #[arg(long, required_unless_present = "fragment")]
        eq: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Instead of one equation, scan every classical principle `t = top`
        /// built from these connectives, e.g. "and,imp,bot,top"
        #[arg(long, conflicts_with = "eq")]
        fragment: Option<String>,
        #[arg(long, default_value = "x,y")]
        vars: String,
        #[arg(long, default_value_t = 7)]
        max_term_size: usize,
    },
    /// One-variable classification of `t = top` (or of an equation)
    Classify1 {
        #[arg(long, conflicts_with = "eq", required_unless_present = "eq")]
        term: Option<String>,
        #[arg(long)]
        eq: Option<String>,
    },
    /// Witness family of a one-variable term without a gap
    Witness {
        #[arg(long)]
        term: String,
        #[arg(long, default_value_t = 30)]
        k_max: usize,
    },
    /// Material implication on B_n with a new top
    Matimpl {
        #[arg(long, default_value_t = 1)]
        min_n: u32,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
    },
    /// Rieger-Nishimura formulas, classification and Hasse edges
    Rn {
        /// A name such as d3 or i4
        #[arg(long, conflicts_with_all = ["term", "edges"])]
        name: Option<String>,
        #[arg(long, conflicts_with = "edges")]
        term: Option<String>,
        /// List covering pairs up to this index
        #[arg(long)]
        edges: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_RN_CAP)]
        cap: u32,
    },
    /// Intuitionistic provability (or entailment from --hyp)
    Ipc {
        #[arg(long)]
        term: String,
        #[arg(long)]
        hyp: Vec<String>,
    },
    /// Central decompositions and maximal non-central elements
    Decompose {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Central element to split at (default: every non-trivial one)
        #[arg(long)]
        element: Option<usize>,
    },
    /// Clopen census of a finite topology
    Topo {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        topology: Option<PathBuf>,
        /// Every topology on this many points (at most 4)
        #[arg(long)]
        all: Option<usize>,
    },
    /// Monte Carlo Boolean test against a black-box algebra
    BlackboxTest {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ROUNDS)]
        rounds: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Run the criterion checks
    Verify {
        /// Run one criterion, e.g. 7 or 14b
        #[arg(long)]
        criterion: Option<String>,
        /// Print the table on stdout instead of JSON
        #[arg(long)]
        table: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct AlgebraArgs {
    /// The n-element chain
    #[arg(long)]
    chain: Option<usize>,
    /// The Boolean algebra with n atoms
    #[arg(long)]
    boolean: Option<u32>,
    /// An algebra in the JSON interchange format
    #[arg(long)]
    algebra: Option<PathBuf>,
}

impl AlgebraArgs {
    fn load(&self) -> Result<HeytingAlgebra> {
        match (self.chain, self.boolean, &self.algebra) {
            (Some(n), _, _) => Ok(chain(n)?),
            (_, Some(n), _) => Ok(boolean_algebra(n)?),
            (_, _, Some(path)) => read_algebra(path),
            _ => Err(Error::Usage("one of --chain, --boolean, --algebra is required".into())),
        }
    }
}

/// Exit status and output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json(code: u8, v: &impl Serialize) -> Outcome {
        Outcome {
            code,
            stdout: serde_json::to_string(v).expect("output serializes") + "\n",
            stderr: String::new(),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pool = match scan::pool(cli.jobs) {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(out) => out,
        Err(e) => failure(e),
    }
}

fn failure(e: Error) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn term(src: &str) -> Result<Term> {
    Ok(parse_term(src)?)
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Enumerate { max_size, ji_max } => enumerate(max_size, ji_max),
        Command::Ds { algebra, eq, formula, detail } => ds(&algebra.load()?, eq, formula, detail),
        Command::GapScan { eq, max_size, fragment, vars, max_term_size } => match fragment {
            Some(f) => fragment_search(&f, &vars, max_term_size, max_size),
            None => gap_scan(eq.as_deref().unwrap_or_default(), max_size),
        },
        Command::Classify1 { term: t, eq } => classify1(t, eq),
        Command::Witness { term: t, k_max } => witness(&term(&t)?, k_max),
        Command::Matimpl { min_n, max_n } => matimpl(min_n, max_n),
        Command::Rn { name, term: t, edges, cap } => rn(name, t, edges, cap),
        Command::Ipc { term: t, hyp } => {
            let goal = term(&t)?;
            let hyps: Vec<Term> = hyp.iter().map(|h| term(h)).collect::<Result<_>>()?;
            let provable = if hyps.is_empty() { ipc_proves(&goal) } else { ipc_entails(&hyps, &goal) };
            Ok(Outcome::json(0, &json!({ "provable": provable })))
        }
        Command::Decompose { algebra, element } => decompose(&algebra.load()?, element),
        Command::Topo { topology, all } => topo(topology, all),
        Command::BlackboxTest { algebra, seed, rounds, trials } => blackbox(&algebra.load()?, seed, rounds, trials),
        Command::Verify { criterion, table } => run_verify(criterion.as_deref(), table),
    }
}

fn enumerate(max_size: usize, ji_max: Option<usize>) -> Result<Outcome> {
    let budget = EnumerationBudget {
        max_algebra_size: max_size,
        max_ji_poset_size: ji_max.unwrap_or(max_size.saturating_sub(1)),
    };
    let algebras = enumerate_heyting(budget)?;
    let lines: Vec<String> = scan::map_enumeration(&algebras, |e| {
        serde_json::to_string(&AlgebraJson::of(&e.algebra)).expect("algebra serializes")
    });
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &algebras {
        *counts.entry(e.algebra.size()).or_default() += 1;
    }
    let summary = json!({
        "summary": {
            "counts": counts.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<String, usize>>(),
            "total": algebras.len(),
            "complete": budget.is_complete(),
        }
    });
    let mut stdout = lines.join("\n");
    if !stdout.is_empty() {
        stdout.push('\n');
    }
    stdout += &(summary.to_string() + "\n");
    Ok(Outcome { code: 0, stdout, stderr: String::new() })
}

#[derive(Serialize)]
struct DsDetail {
    ds: RationalJson,
    vars: Vec<String>,
    satisfying: String,
    total: String,
    failing_sample: Vec<Vec<usize>>,
}

fn ds(h: &HeytingAlgebra, eq: Option<String>, formula: Option<String>, detail: bool) -> Result<Outcome> {
    let result = match (eq, formula) {
        (Some(e), _) => scan::ds_equation(h, &parse_equation(&e)?)?,
        (_, Some(f)) => scan::ds_formula(h, &parse_formula(&f)?)?,
        _ => return Err(Error::Usage("one of --eq or --formula is required".into())),
    };
    let value = RationalJson::from(&result.value());
    if !detail {
        return Ok(Outcome::json(0, &value));
    }
    Ok(Outcome::json(
        0,
        &DsDetail {
            ds: value,
            vars: result.vars.iter().map(|v| v.to_string()).collect(),
            satisfying: result.satisfying_count.to_string(),
            total: result.total_count.to_string(),
            failing_sample: result
                .failing_sample
                .iter()
                .map(|row| row.iter().map(|x| x.index()).collect())
                .collect(),
        },
    ))
}

fn gap_scan(src: &str, max_size: usize) -> Result<Outcome> {
    let eq = parse_equation(src)?;
    let report = scan::gap_scan(&eq, EnumerationBudget::complete(max_size))?;
    let attained: Vec<&str> = report
        .below_one
        .iter()
        .filter(|(_, d)| Some(d.value()) == report.sup_below_one)
        .map(|(f, _)| f.as_str())
        .collect();
    Ok(Outcome::json(
        0,
        &json!({
            "equation": eq.to_string(),
            "max_size": max_size,
            "algebras_scanned": report.algebras_scanned,
            "below_one": report.below_one.len(),
            "sup_below_one": report.sup_below_one.as_ref().map(rational),
            "gap": report.gap().as_ref().map(rational),
            "attained_by": attained,
        }),
    ))
}

/// Scans every term of the fragment that is a classical tautology but not an
/// intuitionistic theorem, one JSON line per term, smallest first.
fn fragment_search(fragment: &str, vars: &str, max_term_size: usize, max_size: usize) -> Result<Outcome> {
    let frag = Fragment::parse(fragment).ok_or_else(|| Error::Usage(format!("unknown connective list `{fragment}`")))?;
    let vars = parse_vars(vars);
    let two = chain(2)?;
    let candidates: Vec<Term> = generate_terms(&vars, frag, max_term_size)
        .into_iter()
        .filter(|t| heyting_core::classical::valid_in(&two, t) && !ipc_proves(t))
        .collect();
    let algebras = enumerate_heyting(EnumerationBudget::complete(max_size))?;
    let rows: Vec<Result<Value>> = candidates
        .iter()
        .map(|t| {
            let eq = Equation::is_top(t.clone());
            let ds = scan::map_enumeration(&algebras, |e| heyting_core::ds::ds_equation(&e.algebra, &eq));
            let mut sup = None;
            for d in ds {
                let d = d?;
                if !d.is_one() {
                    let v = d.value();
                    sup = Some(match sup {
                        Some(s) if s >= v => s,
                        _ => v,
                    });
                }
            }
            Ok(json!({
                "term": t.to_string(),
                "sup_below_one": sup.as_ref().map(rational),
            }))
        })
        .collect();
    let mut stdout = String::new();
    for r in rows {
        stdout += &(r?.to_string() + "\n");
    }
    stdout += &(json!({ "summary": { "candidates": candidates.len(), "max_size": max_size } }).to_string() + "\n");
    Ok(Outcome { code: 0, stdout, stderr: String::new() })
}

#[derive(Serialize)]
struct Classification {
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rn: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<RationalJson>,
}

fn classify1(t: Option<String>, eq: Option<String>) -> Result<Outcome> {
    let t = match (t, eq) {
        (Some(t), _) => term(&t)?,
        (_, Some(e)) => parse_equation(&e)?.to_top_form(),
        _ => return Err(Error::Usage("one of --term or --eq is required".into())),
    };
    let out = classify_one_var(&t)?;
    let rn = out.rn().map(|r| r.to_string());
    let c = match out {
        ClassificationOutcome::AlwaysTrue => Classification { outcome: "always_true", rn, epsilon: None },
        ClassificationOutcome::NeverSatisfiable => Classification { outcome: "never_satisfiable", rn, epsilon: None },
        ClassificationOutcome::Gap { epsilon, .. } => Classification {
            outcome: "gap",
            rn,
            epsilon: Some(RationalJson::from(&epsilon)),
        },
        ClassificationOutcome::NoGap { .. } => Classification { outcome: "no_gap", rn, epsilon: None },
    };
    Ok(Outcome::json(0, &c))
}

fn witness(t: &Term, k_max: usize) -> Result<Outcome> {
    let fam = witness_family(t, k_max)?;
    let members: Vec<Value> = fam
        .members
        .iter()
        .map(|m| {
            json!({
                "k": m.k,
                "size": m.algebra.size(),
                "ds": rational(&m.ds.value()),
                "lower_bound": rational(&m.lower_bound),
                "holds": m.holds(),
            })
        })
        .collect();
    let holds = fam.holds();
    Ok(Outcome::json(
        u8::from(!holds),
        &json!({
            "rn": fam.rn.to_string(),
            "construction": fam.descriptor.describe(),
            "countermodel": AlgebraJson::of(&fam.countermodel),
            "members": members,
            "holds": holds,
        }),
    ))
}

fn matimpl(min_n: u32, max_n: u32) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut all = true;
    for n in min_n..=max_n {
        let p = material_implication_profile(n)?;
        let ok = p.below_one() && p.meets_bound() && p.materializers_meet_floor();
        all &= ok;
        rows.push(json!({
            "n": n,
            "size": p.algebra.size(),
            "ds": rational(&p.ds.value()),
            "bound": rational(&p.bound),
            "below_one": p.below_one(),
            "meets_bound": p.meets_bound(),
            "materializer_sum": p.materializer_sum.to_string(),
            "materializer_floor": p.materializer_floor.to_string(),
            "floor_holds": p.materializers_meet_floor(),
        }));
    }
    Ok(Outcome::json(u8::from(!all), &json!({ "rows": rows, "holds": all })))
}

fn rn(name: Option<String>, t: Option<String>, edges: Option<u32>, cap: u32) -> Result<Outcome> {
    if let Some(max) = edges {
        let list: Vec<[String; 2]> = hasse_edges(max).into_iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
        return Ok(Outcome::json(0, &json!({ "edges": list })));
    }
    if let Some(t) = t {
        let class = rn_classify_with_cap(&term(&t)?, cap)?;
        return Ok(Outcome::json(0, &json!({ "class": class.to_string() })));
    }
    let src = name.ok_or_else(|| Error::Usage("one of --name, --term, --edges is required".into()))?;
    let name = RnName::parse(&src).ok_or_else(|| Error::Usage(format!("`{src}` is not a name like d3 or i4")))?;
    let f = rn_formula(name);
    Ok(Outcome::json(
        0,
        &json!({
            "name": name.to_string(),
            "term": f.term.to_string(),
            "unicode": f.term.to_unicode(),
            "definition": describe(name),
        }),
    ))
}

fn decompose(h: &HeytingAlgebra, element: Option<usize>) -> Result<Outcome> {
    let targets: Vec<ElementId> = match element {
        Some(i) => vec![h.element(i)?],
        None => h
            .center()
            .ones()
            .map(|i| h.element(i))
            .collect::<heyting_core::Result<Vec<_>>>()?
            .into_iter()
            .filter(|&c| c != h.bot() && c != h.top())
            .collect(),
    };
    let mut parts = Vec::new();
    let mut all = true;
    for c in targets {
        let d = central_decompose(h, c)?;
        let verified = d.verify(h)?;
        all &= verified;
        parts.push(json!({
            "element": c.index(),
            "upper": AlgebraJson::of(&d.upper),
            "lower": AlgebraJson::of(&d.lower),
            "verified": verified,
        }));
    }
    let center: Vec<usize> = h.center().ones().collect();
    let sigmas: Vec<usize> = maximal_noncentrals(h).into_iter().map(|s| s.index()).collect();
    Ok(Outcome::json(
        u8::from(!all),
        &json!({
            "size": h.size(),
            "center": center,
            "maximal_noncentral": sigmas,
            "decompositions": parts,
        }),
    ))
}

fn census(t: &FiniteTopology) -> Result<Value> {
    let (clopen, rest) = clopen_census(t);
    let h = open_set_algebra(t)?;
    Ok(json!({
        "topology": TopologyJson::of(t),
        "clopen": clopen,
        "non_clopen_open": rest,
        "center_size": h.center().count_ones(..),
        "discrete": t.is_discrete(),
        "t0": t.is_t0(),
    }))
}

fn topo(path: Option<PathBuf>, all: Option<usize>) -> Result<Outcome> {
    if let Some(n) = all {
        let rows: Vec<Value> = all_topologies(n)?.iter().map(census).collect::<Result<_>>()?;
        return Ok(Outcome::json(0, &json!({ "points": n, "count": rows.len(), "spaces": rows })));
    }
    let path = path.ok_or_else(|| Error::Usage("one of --topology or --all is required".into()))?;
    Ok(Outcome::json(0, &census(&read_topology(&path)?)?))
}

#[derive(Serialize)]
struct BlackboxReport {
    accept_rate: f64,
    bound: f64,
    pass: bool,
    accepted: u64,
    trials: u64,
    boolean: bool,
}

/// `pass`: a Boolean algebra must be accepted every time; otherwise the rate
/// must stay within three standard deviations above `(2/3)^rounds`.
fn blackbox(h: &HeytingAlgebra, seed: u64, rounds: u32, trials: u64) -> Result<Outcome> {
    if rounds == 0 || trials == 0 {
        return Err(Error::Usage("--rounds and --trials must be at least 1".into()));
    }
    let accepted = verify::black_box_accepts(h, seed, rounds, trials)?;
    let rate = accepted as f64 / trials as f64;
    let bound = (2.0f64 / 3.0).powi(rounds as i32);
    let boolean = h.is_boolean();
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    let pass = if boolean { accepted == trials } else { rate <= bound + 3.0 * sigma };
    Ok(Outcome::json(
        u8::from(!pass),
        &BlackboxReport { accept_rate: rate, bound, pass, accepted, trials, boolean },
    ))
}

fn run_verify(only: Option<&str>, table: bool) -> Result<Outcome> {
    let reports = match only {
        Some(id) => {
            let c = verify::criterion(id).ok_or_else(|| Error::Usage(format!("no criterion `{id}`")))?;
            vec![(c.run)()]
        }
        None => verify::run_all(),
    };
    let code = u8::from(reports.iter().any(|r| !r.passed));
    let lines: String = reports.iter().map(|r| format!("{r}\n")).collect();
    if table {
        return Ok(Outcome { code, stdout: lines, stderr: String::new() });
    }
    let mut out = Outcome::json(code, &reports);
    out.stderr = lines;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stdout(args: &[&str]) -> Value {
        let out = run(std::iter::once("heyting").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn ds_on_chain() {
        let out = run(["heyting", "ds", "--chain", "3", "--eq", "x | ~x = top"]);
        assert_eq!(out.stdout, "{\"num\":\"2\",\"den\":\"3\"}\n");
    }

    #[test]
    fn classify_and_prove() {
        assert_eq!(stdout(&["classify1", "--term", "~~p -> p"]), json!({"outcome": "no_gap", "rn": "i3"}));
        assert_eq!(stdout(&["ipc", "--term", "p | ~p"]), json!({"provable": false}));
        assert_eq!(stdout(&["ipc", "--term", "q", "--hyp", "p", "--hyp", "p -> q"]), json!({"provable": true}));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["heyting", "frobnicate"]).code, 2);
        assert_eq!(run(["heyting", "ds", "--chain", "3"]).code, 2);
        assert_eq!(run(["heyting", "ds", "--chain", "3", "--eq", "x |"]).code, 2);
        assert_eq!(run(["heyting", "ds", "--chain", "3", "--boolean", "2", "--eq", "x = x"]).code, 2);
        assert_eq!(run(["heyting", "topo", "--all", "5"]).code, 3);
    }
}
