//! Command-line front end. Every command produces one JSON report on stdout
//! (or in `--out`); `--human` prints a plain-text rendering instead.
//!
//! Exit codes: 0 success, SAT, fixpoint or claim holds; 1 UNSAT, refuted or
//! claim failed; 2 input error or solver node limit; 3 capacity exceeded.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::canonical::{
    build_f_action, build_g_action, build_h_action, build_m_action, check_identity, hypergraph_space, inj_action,
    lex_action, projection_action, semilattice_action, siggers_injection, Identity, IdentityOutcome, MKind,
    OrbitAction,
};
use crate::consistency::{ab_minimality_with, reduced_minimality_with, Schedule};
use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::finite::{solve_explicit, SolverConfig, ValueOrder};
use crate::io::{self, Loaded};
use crate::oracle::{type_space_decide, weak_order_decide, OracleVerdict};
use crate::reduct::{Instance, Reduct};
use crate::reduction::{reduce_instance, solve_finite};
use crate::structure::Signature;
use crate::{catalog, suites};

#[derive(Parser, Debug)]
#[command(
    name = "orbitsolve",
    version,
    about = "Orbit-based solving for reducts of finitely bounded homogeneous structures"
)]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Plain-text output.
    #[arg(long, global = true)]
    human: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the orbits of n-tuples of a template.
    Orbits {
        template: String,
        #[arg(long)]
        n: usize,
    },
    /// Reduce an instance to a finite-domain instance over window orbits.
    Reduce { reduct: String, instance: PathBuf },
    /// Run (a,b)-minimality.
    Minimality {
        #[arg(long, default_value_t = 2)]
        a: usize,
        #[arg(long, default_value_t = 3)]
        b: usize,
        /// Use (2w,3w) for the window size w of the reduction.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        reduced: bool,
        #[arg(long, value_enum, default_value_t = ScheduleArg::Canonical)]
        schedule: ScheduleArg,
        reduct: String,
        instance: PathBuf,
    },
    /// Decide an instance exactly.
    Solve {
        reduct: String,
        instance: PathBuf,
        #[arg(long, default_value_t = SolverConfig::default().node_limit)]
        node_limit: u64,
        /// Try values in reverse canonical order.
        #[arg(long)]
        reversed: bool,
    },
    /// Decide an instance by brute force over complete types.
    Oracle {
        reduct: String,
        instance: PathBuf,
        /// Enumerate weak orders instead (order reducts only).
        #[arg(long)]
        weak_order: bool,
    },
    /// Check well-definedness and canonicity of an orbit action.
    CheckCanonical {
        action: String,
        /// Comma-separated relation names of the subsignature.
        #[arg(long)]
        modulo: Option<String>,
        #[command(flatten)]
        opts: ActionOpts,
        /// Include the action table in the report.
        #[arg(long)]
        dump: bool,
    },
    /// Check an identity, written ACTION:IDENTITY[:MODULO].
    CheckIdentity {
        spec: String,
        #[command(flatten)]
        opts: ActionOpts,
    },
    /// Catalog access.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Run a validation suite, or `all`.
    Suite { name: String },
}

#[derive(Args, Debug)]
struct ActionOpts {
    /// Base template for built-in actions that accept one.
    #[arg(long)]
    base: Option<String>,
    /// Tuple length up to which tables are built.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Ignore cells whose values were completed by choice.
    #[arg(long)]
    fixed_only: bool,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Export { id: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScheduleArg {
    Canonical,
    Reversed,
    Rounds,
}

impl From<ScheduleArg> for Schedule {
    fn from(s: ScheduleArg) -> Self {
        match s {
            ScheduleArg::Canonical => Schedule::Canonical,
            ScheduleArg::Reversed => Schedule::Reversed,
            ScheduleArg::Rounds => Schedule::Rounds,
        }
    }
}

/// The result of one command.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<Value>,
    pub status: String,
    pub payload: Value,
    pub wall_time_ms: Option<u64>,
    pub exit_code: i32,
    human: String,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "status": self.status,
            "payload": self.payload,
        });
        if let Some(ms) = self.wall_time_ms {
            v["wallTimeMs"] = json!(ms);
        }
        v
    }
}

struct Outcome {
    status: String,
    code: i32,
    payload: Value,
    human: String,
}

impl Outcome {
    fn new(status: &str, code: i32, payload: Value, human: String) -> Self {
        Outcome { status: status.into(), code, payload, human }
    }
}

/// Parses `args` (including the program name), runs the command, writes the
/// report and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (human, out) = (cli.human, cli.out.clone());
    let report = run(cli);
    let text = if human {
        report.human.clone()
    } else {
        serde_json::to_string_pretty(&report.to_json()).expect("report json") + "\n"
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if report.status == "ERROR" {
        eprintln!("error: {}", report.payload["message"].as_str().unwrap_or_default());
    }
    report.exit_code
}

/// Parses and runs without writing anything.
pub fn run_args<I, T>(args: I) -> std::result::Result<RunReport, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Ok(run(Cli::try_parse_from(args)?))
}

fn run(cli: Cli) -> RunReport {
    let start = Instant::now();
    let name = command_name(&cli.command);
    let inputs = input_hashes(&cli.command);
    let outcome = execute(&cli.command).unwrap_or_else(|e| {
        let code = if e.is_capacity() { 3 } else { 2 };
        let message = e.to_string();
        Outcome::new("ERROR", code, json!({ "message": message }), format!("error: {message}\n"))
    });
    RunReport {
        command: name.into(),
        inputs,
        status: outcome.status,
        payload: outcome.payload,
        wall_time_ms: cli.timing.then(|| start.elapsed().as_millis() as u64),
        exit_code: outcome.code,
        human: outcome.human,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Orbits { .. } => "orbits",
        Command::Reduce { .. } => "reduce",
        Command::Minimality { .. } => "minimality",
        Command::Solve { .. } => "solve",
        Command::Oracle { .. } => "oracle",
        Command::CheckCanonical { .. } => "check-canonical",
        Command::CheckIdentity { .. } => "check-identity",
        Command::Catalog { .. } => "catalog",
        Command::Suite { .. } => "suite",
    }
}

/// Files among the command's references, with SHA-256 of their bytes.
/// References that are not files are catalog ids or built-in names.
fn input_hashes(c: &Command) -> Vec<Value> {
    let refs: Vec<String> = match c {
        Command::Orbits { template, .. } => vec![template.clone()],
        Command::Reduce { reduct, instance }
        | Command::Minimality { reduct, instance, .. }
        | Command::Solve { reduct, instance, .. }
        | Command::Oracle { reduct, instance, .. } => vec![reduct.clone(), instance.display().to_string()],
        Command::CheckCanonical { action, opts, .. } => {
            std::iter::once(action.clone()).chain(opts.base.clone()).collect()
        }
        Command::CheckIdentity { spec, opts } => {
            std::iter::once(spec.split(':').next().unwrap_or_default().to_string()).chain(opts.base.clone()).collect()
        }
        Command::Catalog { .. } | Command::Suite { .. } => Vec::new(),
    };
    refs.into_iter()
        .map(|r| match std::fs::read(&r) {
            Ok(bytes) => json!({ "ref": r, "sha256": hex(&Sha256::digest(&bytes)) }),
            Err(_) => json!({ "ref": r, "sha256": null }),
        })
        .collect()
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn execute(c: &Command) -> Result<Outcome> {
    match c {
        Command::Orbits { template, n } => orbits(template, *n),
        Command::Reduce { reduct, instance } => {
            let (r, inst) = load_pair(reduct, instance)?;
            let fi = reduce_instance(&r, &inst)?;
            let human = format!(
                "window size {}, {} windows, {} overlaps, {} memberships\n",
                fi.window_size(),
                fi.windows().len(),
                fi.overlaps().len(),
                fi.memberships().len()
            );
            Ok(Outcome::new("OK", 0, fi.to_json(), human))
        }
        Command::Minimality { a, b, reduced, schedule, reduct, instance } => {
            let (r, inst) = load_pair(reduct, instance)?;
            let report = if *reduced {
                let w = crate::reduction::window_size(&r, &inst);
                reduced_minimality_with(&r, &inst, w)?
            } else {
                ab_minimality_with(&r, &inst, *a, *b, (*schedule).into())?
            };
            let (status, code) = if report.is_refuted() { ("REFUTED", 1) } else { ("FIXPOINT", 0) };
            let human = format!(
                "({},{})-minimality: {status} after {} rounds, {} pruned\n",
                report.a,
                report.b,
                report.rounds,
                report.pruned_counts.iter().sum::<usize>()
            );
            Ok(Outcome::new(status, code, report.to_json(&inst.variables), human))
        }
        Command::Solve { reduct, instance, node_limit, reversed } => {
            let config = SolverConfig {
                node_limit: *node_limit,
                value_order: if *reversed { ValueOrder::Reversed } else { ValueOrder::Canonical },
            };
            solve(reduct, instance, &config)
        }
        Command::Oracle { reduct, instance, weak_order } => {
            let (r, inst) = load_pair(reduct, instance)?;
            let v = if *weak_order { weak_order_decide(&r, &inst)? } else { type_space_decide(&r, &inst)? };
            Ok(oracle_outcome(&r, &inst, &v))
        }
        Command::CheckCanonical { action, modulo, opts, dump } => {
            check_canonical(action, modulo.as_deref(), opts, *dump)
        }
        Command::CheckIdentity { spec, opts } => identity(spec, opts),
        Command::Catalog { command: CatalogCommand::List } => {
            let entries: Vec<Value> = catalog::list()
                .into_iter()
                .map(|id| {
                    let e = catalog::get(id).expect("listed entry");
                    json!({ "id": id, "kind": kind(&e.payload), "note": e.note })
                })
                .collect();
            let human = entries
                .iter()
                .map(|e| {
                    format!(
                        "{:<22} {:<9} {}\n",
                        e["id"].as_str().unwrap(),
                        e["kind"].as_str().unwrap(),
                        e["note"].as_str().unwrap()
                    )
                })
                .collect();
            Ok(Outcome::new("OK", 0, json!({ "entries": entries }), human))
        }
        Command::Catalog { command: CatalogCommand::Export { id } } => {
            let v = io::export_entry(id)?;
            let human = serde_json::to_string_pretty(&v)? + "\n";
            Ok(Outcome::new("OK", 0, v, human))
        }
        Command::Suite { name } => suite(name),
    }
}

fn kind(p: &catalog::Payload) -> &'static str {
    match p {
        catalog::Payload::Template(_) => "template",
        catalog::Payload::Reduct { .. } => "reduct",
        catalog::Payload::Finite(_) => "finite",
        catalog::Payload::Note => "note",
    }
}

fn load_pair(reduct: &str, instance: &Path) -> Result<(Reduct, Instance)> {
    Ok((io::resolve_reduct(reduct)?, io::load_instance(instance)?))
}

fn orbits(template: &str, n: usize) -> Result<Outcome> {
    let base = match io::resolve(template)? {
        Loaded::Reduct(r) => r.base().clone(),
        Loaded::Finite(_) => return Err(Error::Unsupported(format!("`{template}` is an explicit finite template"))),
    };
    let space = OrbitSpace::new(base);
    let table = space.table(n)?;
    let sig = space.signature();
    let mut human = format!("{} orbits of {n}-tuples\n", table.len());
    let list: Vec<Value> = (0..table.len() as u32)
        .map(|i| {
            let o = table.get(i);
            let d = o.describe(sig);
            human.push_str(&format!("{:<8} {d}\n", table.label(i).to_string()));
            json!({ "label": table.label(i).to_string(), "description": d, "orbit": o.to_json(sig) })
        })
        .collect();
    Ok(Outcome::new("OK", 0, json!({ "n": n, "count": table.len(), "orbits": list }), human))
}

fn solve(reduct: &str, instance: &Path, config: &SolverConfig) -> Result<Outcome> {
    let inst = io::load_instance(instance)?;
    let (status, nodes, mut payload, human_extra) = match io::resolve(reduct)? {
        Loaded::Finite(t) => {
            let (out, values) = solve_explicit(&t, &inst, config)?;
            let mut p = json!({});
            let mut extra = String::new();
            if let Some(vals) = values {
                let map: serde_json::Map<String, Value> =
                    inst.variables.iter().zip(&vals).map(|(k, v)| (k.clone(), json!(v))).collect();
                extra = map.iter().map(|(k, v)| format!("{k} = {}\n", v.as_str().unwrap_or_default())).collect();
                p["assignment"] = Value::Object(map);
            }
            (out.status(), out.nodes, p, extra)
        }
        Loaded::Reduct(r) => {
            let fi = reduce_instance(&r, &inst)?;
            let out = solve_finite(&fi, config)?;
            let mut p = json!({});
            let mut extra = String::new();
            if let Some(w) = &out.witness {
                let sig = r.space().signature();
                p["witnessOrbit"] = w.to_json(sig);
                let d = describe_solution(&r, &inst, w);
                p["witnessDescription"] = json!(d);
                extra = format!("witness: {d}\n");
            }
            (out.status(), out.outcome.nodes, p, extra)
        }
    };
    payload["status"] = json!(status);
    payload["nodes"] = json!(nodes);
    let code = match status {
        "SAT" => 0,
        "UNSAT" => 1,
        _ => 2,
    };
    Ok(Outcome::new(status, code, payload, format!("{status} ({nodes} nodes)\n{human_extra}")))
}

/// Weak-order notation over the order base, the generic rendering otherwise.
fn describe_solution(r: &Reduct, inst: &Instance, o: &crate::orbit::Orbit) -> String {
    let sig = r.space().signature();
    let order = sig.index_of("<").filter(|_| r.base() == &catalog::q_order());
    order.and_then(|rel| o.describe_weak_order(rel, &inst.variables)).unwrap_or_else(|| o.describe(sig))
}

fn oracle_outcome(r: &Reduct, inst: &Instance, v: &OracleVerdict) -> Outcome {
    let mut human = format!("{} with {} solution types\n", v.status(), v.count());
    let sols: Vec<Value> = v
        .solutions
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let d = describe_solution(r, inst, o);
            human.push_str(&format!("  {d}\n"));
            let mut s = json!({ "description": d });
            if let Some(labels) = &v.labels {
                s["label"] = json!(labels[i].to_string());
            }
            s
        })
        .collect();
    let code = if v.is_sat() { 0 } else { 1 };
    Outcome::new(v.status(), code, json!({ "status": v.status(), "count": v.count(), "solutions": sols }), human)
}

/// A built-in action name or a JSON table file (with an optional `base`).
fn load_action(name: &str, opts: &ActionOpts) -> Result<OrbitAction> {
    let base_space = |default: &str| -> Result<Arc<OrbitSpace>> {
        let r = opts.base.as_deref().unwrap_or(default);
        Ok(OrbitSpace::new(io::resolve_template(r, None)?))
    };
    let d = opts.depth;
    let hyper = || -> Result<(Arc<OrbitSpace>, OrbitAction)> {
        let space = match &opts.base {
            Some(_) => base_space("hypergraph-ordered")?,
            None => hypergraph_space(),
        };
        let f = build_f_action(&space)?;
        Ok((space, f))
    };
    match name {
        "f" => Ok(hyper()?.1),
        "m" => build_m_action(&hyper()?.0, MKind::Majority),
        "m-minority" => build_m_action(&hyper()?.0, MKind::Minority),
        "h" => build_h_action(&hyper()?.1),
        "g" | "g-minority" => {
            let (space, f) = hyper()?;
            let kind = if name == "g" { MKind::Majority } else { MKind::Minority };
            build_g_action(&build_m_action(&space, kind)?, &build_h_action(&f)?)
        }
        "lex" => lex_action(&base_space("q-order")?, d),
        "inj" => inj_action(&base_space("equality")?, 2, d),
        "siggers-inj" => siggers_injection(&base_space("equality")?, d),
        "semilattice" => semilattice_action(&base_space("unary-2")?, d),
        _ => {
            if let Some(i) = name.strip_prefix("pi").and_then(|s| s.parse::<usize>().ok()) {
                if i == 0 {
                    return Err(Error::InvalidAction("projections are numbered from 1".into()));
                }
                return projection_action(&base_space("q-order")?, i.max(2), i - 1, d);
            }
            let path = Path::new(name);
            if !path.is_file() {
                return Err(Error::InvalidAction(format!(
                    "`{name}` is neither a built-in action (f, m, m-minority, h, g, g-minority, lex, inj, siggers-inj, semilattice, pi<i>) nor a file"
                )));
            }
            let v = io::read_json(path)?;
            let template = match (&opts.base, v.get("base")) {
                (Some(b), _) => io::resolve_template(b, None)?,
                (None, Some(Value::String(b))) => io::resolve_template(b, path.parent())?,
                (None, Some(obj @ Value::Object(_))) => io::template_from_json(obj)?,
                _ => return Err(Error::InvalidAction("an action file needs a `base`, or pass --base".into())),
            };
            OrbitAction::from_json(&OrbitSpace::new(template), &v)
        }
    }
}

fn parse_modulo(space: &OrbitSpace, names: &str) -> Result<Signature> {
    let sig = space.signature();
    let pairs = names
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|n| sig.index_of(n).map(|i| (n, sig.arity(i))).ok_or_else(|| Error::UnknownSymbol(n.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Signature::of(&pairs)
}

fn check_canonical(name: &str, modulo: Option<&str>, opts: &ActionOpts, dump: bool) -> Result<Outcome> {
    let action = load_action(name, opts)?;
    let space = action.space().clone();
    let sub = match modulo {
        Some(m) => parse_modulo(&space, m)?,
        None => space.signature().clone(),
    };
    let violations = action.check_welldefined()?;
    let witness = action.check_canonical_wrt(&sub, opts.fixed_only)?;
    let sub_names: Vec<&str> = sub.relations().iter().map(|r| r.name.as_str()).collect();
    let mut payload = json!({
        "action": action.name(),
        "arity": action.arity(),
        "depth": action.depth(),
        "modulo": sub_names,
        "completedCells": action.completed_cells(),
        "wellDefined": violations.is_empty(),
        "violations": violations.iter().take(20).map(|v| json!({
            "kind": format!("{:?}", v.kind),
            "n": v.n,
            "args": v.args.iter().map(|&a| action.label(v.n, a)).collect::<Vec<_>>(),
            "detail": v.detail,
        })).collect::<Vec<_>>(),
        "canonical": witness.is_none(),
    });
    let mut human = format!(
        "{}: {} well-definedness violations, {} with respect to {{{}}}\n",
        action.name(),
        violations.len(),
        if witness.is_none() { "canonical" } else { "not canonical" },
        sub_names.join(", ")
    );
    if let Some(w) = &witness {
        let l = |args: &[u32]| args.iter().map(|&a| action.label(w.n, a)).collect::<Vec<_>>();
        payload["witness"] = json!({
            "left": l(&w.left),
            "right": l(&w.right),
            "leftOut": action.label(w.n, w.left_out),
            "rightOut": action.label(w.n, w.right_out),
        });
        human.push_str(&format!(
            "  arguments {:?} and {:?} agree on the subsignature, outputs {} and {} do not\n",
            l(&w.left),
            l(&w.right),
            action.label(w.n, w.left_out),
            action.label(w.n, w.right_out)
        ));
    }
    if dump {
        payload["table"] = action.to_json();
    }
    let (status, code) = match (violations.is_empty(), witness.is_none()) {
        (false, _) => ("ILL_DEFINED", 1),
        (true, true) => ("CANONICAL", 0),
        (true, false) => ("NOT_CANONICAL", 1),
    };
    Ok(Outcome::new(status, code, payload, human))
}

fn identity(spec: &str, opts: &ActionOpts) -> Result<Outcome> {
    let mut parts = spec.splitn(3, ':');
    let (Some(name), Some(id)) = (parts.next(), parts.next()) else {
        return Err(Error::InvalidParameters(format!("expected ACTION:IDENTITY[:MODULO], got `{spec}`")));
    };
    let identity: Identity = id.parse()?;
    let action = load_action(name, opts)?;
    let modulo = parts.next().map(|m| parse_modulo(action.space(), m)).transpose()?;
    let check = check_identity(&action, identity, modulo.as_ref(), opts.fixed_only)?;
    let mut payload = json!({
        "action": action.name(),
        "identity": identity.to_string(),
        "modulo": modulo.as_ref().map(|s| s.relations().iter().map(|r| r.name.clone()).collect::<Vec<_>>()),
        "fixedOnly": opts.fixed_only,
        "checked": check.checked,
        "skipped": check.skipped,
        "holds": check.holds(),
    });
    let mut human = format!(
        "{} {}{}: {} ({} comparisons, {} skipped)\n",
        action.name(),
        identity,
        modulo
            .as_ref()
            .map(|m| format!(
                " modulo {{{}}}",
                m.relations().iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", ")
            ))
            .unwrap_or_default(),
        if check.holds() { "holds" } else { "fails" },
        check.checked,
        check.skipped
    );
    if let IdentityOutcome::Counterexample { n, left, right, left_out, right_out } = &check.outcome {
        let l = |args: &[u32]| args.iter().map(|&a| action.label(*n, a)).collect::<Vec<_>>();
        let o = |x: &Option<u32>| x.map(|v| action.label(*n, v));
        payload["counterexample"] = json!({
            "left": l(left), "right": l(right), "leftOut": o(left_out), "rightOut": o(right_out),
        });
        let shown = |x: &Option<u32>| o(x).unwrap_or_else(|| "undefined".into());
        human.push_str(&format!(
            "  ({}) -> {}, ({}) -> {}\n",
            l(left).join(", "),
            shown(left_out),
            l(right).join(", "),
            shown(right_out)
        ));
    }
    let (status, code) = if check.holds() { ("HOLDS", 0) } else { ("COUNTEREXAMPLE", 1) };
    Ok(Outcome::new(status, code, payload, human))
}

fn suite(name: &str) -> Result<Outcome> {
    let names: Vec<&str> = if name == "all" { suites::SUITES.to_vec() } else { vec![name] };
    let mut reports = Vec::new();
    let mut human = String::new();
    for n in names {
        let r = suites::run_suite(n)?;
        human.push_str(&format!("{}: {}\n", r.suite, if r.passed() { "PASS" } else { "FAIL" }));
        for c in &r.checks {
            human.push_str(&format!("  [{}] {}: {}\n", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
        }
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed());
    let payload = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({ "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>() })
    };
    let (status, code) = if passed { ("PASS", 0) } else { ("FAIL", 1) };
    Ok(Outcome::new(status, code, payload, human))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> RunReport {
        run_args(std::iter::once("orbitsolve").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn orbits_of_q_order() {
        let r = run(&["orbits", "q-order", "--n", "3"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.payload["count"], 13);
        assert!(r.to_json().get("wallTimeMs").is_none());
    }

    #[test]
    fn unknown_reference_is_an_input_error() {
        let r = run(&["orbits", "no-such-template", "--n", "2"]);
        assert_eq!((r.exit_code, r.status.as_str()), (2, "ERROR"));
    }

    #[test]
    fn capacity_exit_code() {
        let r = run(&["orbits", "equality", "--n", "40"]);
        assert_eq!(r.exit_code, 3);
    }

    #[test]
    fn identity_specs() {
        let r = run(&["check-identity", "g:cyclic:E"]);
        assert_eq!((r.status.as_str(), r.exit_code), ("HOLDS", 0));
        let r = run(&["check-identity", "pi1:cyclic"]);
        assert_eq!((r.status.as_str(), r.exit_code), ("COUNTEREXAMPLE", 1));
        let r = run(&["check-identity", "g"]);
        assert_eq!(r.exit_code, 2);
    }

    #[test]
    fn canonicity_of_f() {
        assert_eq!(run(&["check-canonical", "f"]).status, "CANONICAL");
        let r = run(&["check-canonical", "f", "--modulo", "E"]);
        assert_eq!((r.status.as_str(), r.exit_code), ("NOT_CANONICAL", 1));
        assert!(r.payload["witness"]["left"].is_array());
    }

    #[test]
    fn timing_is_opt_in() {
        let r = run(&["--timing", "catalog", "list"]);
        assert!(r.to_json()["wallTimeMs"].is_u64());
    }
}
