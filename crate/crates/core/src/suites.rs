//! Seeded validation suites comparing the solvers, the consistency engine and
//! the oracles, plus the checks on the hypergraph actions. Reports contain no
//! timings, so repeated runs serialize identically.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canonical::{
    build_f_action, build_g_action, build_h_action, build_m_action, check_identity, hypergraph_space,
    semilattice_action, Identity, IdentityOutcome, MKind, OrbitAction,
};
use crate::catalog;
use crate::consistency::{ab_minimality, reduce_then_minimality, reduced_minimality};
use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::finite::SolverConfig;
use crate::io::{instance_to_json, reduct_to_json};
use crate::oracle::{has_directed_cycle, type_space_decide, type_space_exists, weak_order_decide};
use crate::reduct::{compile_reduct_relation, Instance, Reduct};
use crate::reduction::decide;
use crate::structure::Signature;

pub const SUITES: &[&str] = &[
    "orbit-counts",
    "worked-instance",
    "acyclicity",
    "betweenness",
    "equality",
    "example1",
    "unary-locality",
    "monotonicity",
    "determinism",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Decisions on one instance: (2,3)-minimality, (4,6)-minimality and the
/// exact answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalityRecord {
    pub instance: usize,
    pub refuted23: bool,
    pub refuted46: bool,
    pub unsat: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<MinimalityRecord>,
    /// Instances on which deciders disagreed, kept for inspection.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Value>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), checks: Vec::new(), records: Vec::new(), counterexamples: Vec::new() }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("suite json");
        v["passed"] = json!(self.passed());
        v
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "orbit-counts" => orbit_counts(),
        "worked-instance" => worked_instance(),
        "acyclicity" => acyclicity(),
        "betweenness" => betweenness(),
        "equality" => equality_reducts(),
        "example1" => example1(),
        "unary-locality" => unary_locality(),
        "monotonicity" => {
            let parts = ["acyclicity", "betweenness", "equality", "unary-locality"]
                .iter()
                .map(|s| run_suite(s))
                .collect::<Result<Vec<_>>>()?;
            Ok(monotonicity(&parts))
        }
        "determinism" => determinism(),
        other => Err(Error::InvalidParameters(format!("unknown suite `{other}`; known: {}", SUITES.join(", ")))),
    }
}

/// Inclusions refuted(2,3) ⊆ refuted(4,6) ⊆ UNSAT over the records of the
/// given reports.
pub fn monotonicity(parts: &[SuiteReport]) -> SuiteReport {
    let mut report = SuiteReport::new("monotonicity");
    for part in parts {
        if part.records.is_empty() {
            continue;
        }
        let weak = part.records.iter().filter(|r| r.refuted23 && !r.refuted46).count();
        let unsound = part.records.iter().filter(|r| r.refuted46 && !r.unsat).count();
        let refuted23 = part.records.iter().filter(|r| r.refuted23).count();
        let refuted46 = part.records.iter().filter(|r| r.refuted46).count();
        let unsat = part.records.iter().filter(|r| r.unsat).count();
        report.check(
            &format!("{}: refuted(2,3) within refuted(4,6)", part.suite),
            weak == 0,
            format!("{refuted23} refuted by (2,3), {refuted46} by (4,6), {weak} violations"),
        );
        report.check(
            &format!("{}: refuted(4,6) within UNSAT", part.suite),
            unsound == 0,
            format!("{refuted46} refuted by (4,6), {unsat} UNSAT of {}, {unsound} violations", part.records.len()),
        );
    }
    report
}

fn determinism() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("determinism");
    for &s in SUITES.iter().filter(|&&s| s != "determinism" && s != "monotonicity") {
        let a = serde_json::to_string(&run_suite(s)?.to_json())?;
        let b = serde_json::to_string(&run_suite(s)?.to_json())?;
        report.check(s, a == b, format!("{} bytes", a.len()));
    }
    Ok(report)
}

fn fubini(n: usize) -> usize {
    let mut a = vec![1usize];
    for m in 1..=n {
        a.push((1..=m).map(|k| binomial(m, k) * a[m - k]).sum());
    }
    a[n]
}

fn bell(n: usize) -> usize {
    let mut b = vec![1usize];
    for m in 1..=n {
        b.push((0..m).map(|k| binomial(m - 1, k) * b[k]).sum());
    }
    b[n]
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn orbit_counts() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("orbit-counts");
    let q = OrbitSpace::new(catalog::q_order());
    for (n, want) in [(1, 1), (2, 3), (3, 13)] {
        let got = q.table(n)?.len();
        report.check(
            &format!("q-order n={n}"),
            got == want && got == fubini(n),
            format!("{got} orbits, expected {want}"),
        );
    }
    let e = OrbitSpace::new(catalog::equality());
    for (n, want) in [(2, 2), (3, 5)] {
        let got = e.table(n)?.len();
        report.check(
            &format!("equality n={n}"),
            got == want && got == bell(n),
            format!("{got} orbits, expected {want}"),
        );
    }
    let h = hypergraph_space();
    let inj = h.table(3)?.orbits().iter().filter(|o| o.is_injective()).count();
    report.check("hypergraph-ordered injective triples", inj == 12, format!("{inj} orbits, expected 12"));
    let u = OrbitSpace::new(catalog::unary(2)?);
    let pairs = u.table(2)?.len();
    report.check("unary-2 n=2", pairs == 6, format!("{pairs} orbits, expected 6"));
    Ok(report)
}

fn worked_instance() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("worked-instance");
    let r = catalog::load_reduct("q-order")?;
    let inst = Instance::indexed(3, &[("<", &[0, 1]), ("<", &[0, 2])]);
    let v = type_space_decide(&r, &inst)?;
    report.check("solution count", v.count() == 3, format!("{} solution types", v.count()));
    let mut got: Vec<String> =
        v.solutions.iter().map(|o| o.describe_weak_order(0, &inst.variables).unwrap_or_default()).collect();
    got.sort();
    let mut want = vec!["s(x1)<s(x2)<s(x3)", "s(x1)<s(x3)<s(x2)", "s(x1)<s(x2)=s(x3)"];
    want.sort();
    report.check("solution descriptions", got == want, got.join(", "));
    Ok(report)
}

fn acyclicity() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("acyclicity");
    let r = catalog::load_reduct("q-order")?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1);
    let (mut mismatch_min, mut mismatch_solve, mut cyclic) = (0, 0, 0);
    for i in 0..200 {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(n / 2..=n + 1);
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let a = rng.gen_range(0..n);
            // self-loops are rare
            let b = if rng.gen_bool(0.03) { a } else { (a + rng.gen_range(1..n)) % n };
            edges.push((a, b));
        }
        let scopes: Vec<(&str, Vec<usize>)> = edges.iter().map(|&(a, b)| ("<", vec![a, b])).collect();
        let refs: Vec<(&str, &[usize])> = scopes.iter().map(|(r, s)| (*r, s.as_slice())).collect();
        let inst = Instance::indexed(n, &refs);
        let cycle = has_directed_cycle(n, &edges);
        cyclic += cycle as usize;
        let m23 = ab_minimality(&r, &inst, 2, 3)?;
        let m46 = ab_minimality(&r, &inst, 4, 6)?;
        let solved = decide(&r, &inst, &SolverConfig::default())?;
        if m23.is_refuted() != cycle {
            mismatch_min += 1;
            report
                .counterexamples
                .push(json!({ "instance": i, "kind": "minimality", "data": instance_to_json(&inst) }));
        }
        if solved.is_sat() == cycle || solved.status() == "LIMIT" {
            mismatch_solve += 1;
            report.counterexamples.push(json!({ "instance": i, "kind": "solver", "data": instance_to_json(&inst) }));
        }
        report.records.push(MinimalityRecord {
            instance: i,
            refuted23: m23.is_refuted(),
            refuted46: m46.is_refuted(),
            unsat: cycle,
        });
    }
    report.check(
        "(2,3)-minimality refutes iff cyclic",
        mismatch_min == 0,
        format!("200 digraphs, {cyclic} cyclic, {mismatch_min} mismatches"),
    );
    report.check("reduce then solve agrees", mismatch_solve == 0, format!("{mismatch_solve} mismatches"));
    Ok(report)
}

/// Compares reduce-then-solve with the oracles and records minimality.
struct Comparison<'a> {
    reduct: &'a Reduct,
    weak_order: bool,
    compared: usize,
    mismatches: usize,
    unsound: usize,
    sat: usize,
}

impl<'a> Comparison<'a> {
    fn new(reduct: &'a Reduct, weak_order: bool) -> Self {
        Comparison { reduct, weak_order, compared: 0, mismatches: 0, unsound: 0, sat: 0 }
    }

    fn run(&mut self, report: &mut SuiteReport, inst: &Instance) -> Result<()> {
        let idx = report.records.len();
        let oracle = type_space_decide(self.reduct, inst)?;
        let solved = decide(self.reduct, inst, &SolverConfig::default())?;
        let mut agree = solved.is_sat() == oracle.is_sat() && solved.status() != "LIMIT";
        if let Some(w) = &solved.witness {
            agree &= oracle.solutions.binary_search(w).is_ok();
        }
        if self.weak_order {
            agree &= weak_order_decide(self.reduct, inst)?.solutions == oracle.solutions;
        }
        let m23 = ab_minimality(self.reduct, inst, 2, 3)?;
        let m46 = ab_minimality(self.reduct, inst, 4, 6)?;
        let unsat = !oracle.is_sat();
        if !agree || (m23.is_refuted() && !unsat) || (m46.is_refuted() && !unsat) {
            report.counterexamples.push(json!({
                "instance": idx,
                "reduct": reduct_to_json(self.reduct),
                "data": instance_to_json(inst),
            }));
        }
        self.compared += 1;
        self.sat += !unsat as usize;
        self.mismatches += !agree as usize;
        self.unsound += ((m23.is_refuted() || m46.is_refuted()) && !unsat) as usize;
        report.records.push(MinimalityRecord {
            instance: idx,
            refuted23: m23.is_refuted(),
            refuted46: m46.is_refuted(),
            unsat,
        });
        Ok(())
    }
}

fn betweenness() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("betweenness");
    let r = catalog::load_reduct("betweenness")?;
    let mut cmp = Comparison::new(&r, true);
    for n in 3..=4 {
        let triples: Vec<Vec<usize>> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| vec![a, b, c])))
            .filter(|t| t[0] != t[1] && t[0] != t[2] && t[1] != t[2])
            .collect();
        for k in 0..=4 {
            for pick in crate::reduction::combinations(triples.len(), k) {
                let refs: Vec<(&str, &[usize])> = pick.iter().map(|&i| ("B", triples[i].as_slice())).collect();
                cmp.run(&mut report, &Instance::indexed(n, &refs))?;
            }
        }
    }
    let exhaustive = cmp.compared;
    let mut rng = ChaCha8Rng::seed_from_u64(0xbe7);
    for _ in 0..100 {
        let n = rng.gen_range(3..=6);
        let m = rng.gen_range(1..=2 * n);
        let scopes: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    (0..3).map(|_| rng.gen_range(0..n)).collect()
                } else {
                    let mut vs: Vec<usize> = (0..n).collect();
                    vs.shuffle(&mut rng);
                    vs[..3].to_vec()
                }
            })
            .collect();
        let refs: Vec<(&str, &[usize])> = scopes.iter().map(|s| ("B", s.as_slice())).collect();
        cmp.run(&mut report, &Instance::indexed(n, &refs))?;
    }
    let (compared, sat, mismatches, unsound) = (cmp.compared, cmp.sat, cmp.mismatches, cmp.unsound);
    report.check(
        "reduce-solve, weak-order and type-space agree",
        mismatches == 0,
        format!(
            "{exhaustive} exhaustive and {} random instances, {sat} SAT, {mismatches} mismatches",
            compared - exhaustive
        ),
    );
    report.check(
        "minimality never refutes a satisfiable instance",
        unsound == 0,
        format!("{unsound} false refutations"),
    );
    Ok(report)
}

fn equality_reducts() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("equality");
    let space = OrbitSpace::new(catalog::equality());
    let mut reducts: Vec<Reduct> =
        ["Z", "eq-or-eq", "neq"].iter().map(|id| catalog::load_reduct_in(id, space.clone())).collect::<Result<_>>()?;
    // the first two are satisfied by the constant map, so also mix all three
    let mixed: Vec<_> = reducts.iter().flat_map(|r| r.relations().iter().cloned()).collect();
    reducts.push(Reduct::new(space.clone(), mixed)?);
    let mut rng = ChaCha8Rng::seed_from_u64(0xe9);
    let mut details = Vec::new();
    let mut all_ok = true;
    let mut all_sound = true;
    for (ri, r) in reducts.iter().enumerate() {
        let mut cmp = Comparison::new(r, false);
        let names: Vec<&str> = r.relations().iter().map(|x| x.name()).collect();
        let count = if ri == 3 { 80 } else { 40 };
        for _ in 0..count {
            let n = rng.gen_range(2..=6);
            let m = rng.gen_range(1..=2 * n);
            let scopes: Vec<(&str, Vec<usize>)> = (0..m)
                .map(|_| {
                    let rel = &r.relations()[rng.gen_range(0..names.len())];
                    (rel.name(), (0..rel.arity()).map(|_| rng.gen_range(0..n)).collect())
                })
                .collect();
            let refs: Vec<(&str, &[usize])> = scopes.iter().map(|(r, s)| (*r, s.as_slice())).collect();
            cmp.run(&mut report, &Instance::indexed(n, &refs))?;
        }
        let name = if ri == 3 { "mixed".to_string() } else { names[0].to_string() };
        all_ok &= cmp.mismatches == 0;
        all_sound &= cmp.unsound == 0;
        details.push(format!(
            "{name}: {} instances, {} SAT, {} mismatches, {} false refutations",
            cmp.compared, cmp.sat, cmp.mismatches, cmp.unsound
        ));
    }
    report.check("reduce-solve agrees with the oracle", all_ok, details.join("; "));
    report.check(
        "minimality never refutes a satisfiable instance",
        all_sound,
        format!("{} instances", report.records.len()),
    );
    Ok(report)
}

fn describe(action: &OrbitAction, n: usize, args: &[u32]) -> String {
    let labels: Vec<String> = args.iter().map(|&a| action.label(n, a)).collect();
    format!("{}({})", action.name(), labels.join(", "))
}

fn example1() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("example1");
    let space = hypergraph_space();
    let sig = space.signature().clone();
    let (edge, less) = (sig.index_of("E").expect("E"), sig.index_of("<").expect("<"));
    let edges_only = Signature::of(&[("E", 3)])?;
    let t2 = space.table(2)?;
    let t3 = space.table(3)?;
    let is_edge = |o: u32| t3.get(o).holds(edge, &[0, 1, 2]);

    let f = build_f_action(&space)?;
    let v = f.check_welldefined()?;
    report.check("(a) f is well defined up to triples", v.is_empty(), format!("{} violations", v.len()));

    // pair rules, evaluated independently of the action's construction
    let mut bad = Vec::new();
    for a in 0..t2.len() as u32 {
        for b in 0..t2.len() as u32 {
            let (oa, ob) = (t2.get(a), t2.get(b));
            let want = match (oa.is_injective(), ob.is_injective()) {
                (true, true) => a,
                (false, false) => a,
                (true, false) => a,
                (false, true) => b,
            };
            if f.apply(2, &[a, b]) != Some(want) {
                bad.push(describe(&f, 2, &[a, b]));
            }
        }
    }
    report.check(
        "(b) f follows the three pair rules",
        bad.is_empty(),
        format!("9 pair cells, mismatches: [{}]", bad.join(", ")),
    );

    match f.check_canonical_wrt(&edges_only, false)? {
        Some(w) => report.check(
            "(c) f is not canonical for the hypergraph alone",
            is_edge(w.left_out) != is_edge(w.right_out),
            format!(
                "{} and {} differ in the hyperedge relation",
                describe(&f, w.n, &w.left),
                describe(&f, w.n, &w.right)
            ),
        ),
        None => report.check("(c) f is not canonical for the hypergraph alone", false, "no witness"),
    }

    let inj: Vec<u32> = (0..t3.len() as u32).filter(|&o| t3.get(o).is_injective()).collect();
    let vote_check = |m: &OrbitAction, majority: bool| -> (bool, String) {
        let mut lines = Vec::new();
        let mut ok = true;
        for pattern in 0..8u32 {
            let want_edges: Vec<bool> = (0..3).map(|i| pattern >> (2 - i) & 1 == 1).collect();
            let votes = want_edges.iter().filter(|&&e| e).count();
            let expect = if majority { votes >= 2 } else { votes % 2 == 1 };
            let mut cells = 0;
            let mut wrong = 0;
            for &x in inj.iter().filter(|&&o| is_edge(o) == want_edges[0]) {
                for &y in inj.iter().filter(|&&o| is_edge(o) == want_edges[1]) {
                    for &z in inj.iter().filter(|&&o| is_edge(o) == want_edges[2]) {
                        cells += 1;
                        let c = m.cell(3, &[x, y, z]);
                        if c.completed || c.out.map(is_edge) != Some(expect) {
                            wrong += 1;
                        }
                    }
                }
            }
            ok &= wrong == 0;
            let name = |e: bool| if e { "E" } else { "N" };
            lines.push(format!(
                "m({},{},{})={} on {cells} cells, {wrong} wrong",
                name(want_edges[0]),
                name(want_edges[1]),
                name(want_edges[2]),
                name(expect)
            ));
        }
        // injective pair orbits: first argument
        let pairs: Vec<u32> = (0..t2.len() as u32).filter(|&o| t2.get(o).is_injective()).collect();
        let mut pair_bad = 0;
        for &x in &pairs {
            for &y in &pairs {
                for &z in &pairs {
                    pair_bad += (m.apply(2, &[x, y, z]) != Some(x)) as usize;
                }
            }
        }
        ok &= pair_bad == 0;
        lines.push(format!("injective pairs follow the first argument, {pair_bad} wrong"));
        (ok, lines.join("; "))
    };

    let m = build_m_action(&space, MKind::Majority)?;
    let (ok, detail) = vote_check(&m, true);
    report.check("(d) m satisfies the eight majority equations", ok, detail);

    let h = build_h_action(&f)?;
    let g = build_g_action(&m, &h)?;
    let v = g.check_welldefined()?;
    report.check(
        "(e) g is well defined up to triples",
        v.is_empty(),
        format!("{} violations, {} cells use completed values of m", v.len(), g.completed_cells()),
    );

    let pseudo = |g: &OrbitAction, fixed: bool| check_identity(g, Identity::Cyclic, Some(&edges_only), fixed);
    let all = pseudo(&g, false)?;
    let fixed = pseudo(&g, true)?;
    report.check(
        "(f) g is pseudo-cyclic modulo the hypergraph",
        all.holds() && fixed.holds(),
        format!(
            "{} comparisons hold; restricted to construction-fixed cells {} hold, {} skipped",
            all.checked, fixed.checked, fixed.skipped
        ),
    );

    let w_all = g.check_canonical_wrt(&edges_only, false)?;
    let w_fixed = g.check_canonical_wrt(&edges_only, true)?;
    let detail = match (&w_all, &w_fixed) {
        (Some(w), Some(wf)) => format!(
            "witness {} vs {}; among construction-fixed cells {} vs {}",
            describe(&g, w.n, &w.left),
            describe(&g, w.n, &w.right),
            describe(&g, wf.n, &wf.left),
            describe(&g, wf.n, &wf.right)
        ),
        _ => "no witness".to_string(),
    };
    report.check("(g) g is not canonical for the hypergraph alone", w_all.is_some() && w_fixed.is_some(), detail);

    let plain = check_identity(&g, Identity::Cyclic, None, false)?;
    let plain_detail = match &plain.outcome {
        IdentityOutcome::Holds => "plain cyclic identity holds".to_string(),
        IdentityOutcome::Counterexample { n, left, right, .. } => {
            format!("plain cyclic identity fails: {} vs {}", describe(&g, *n, left), describe(&g, *n, right))
        }
    };

    let mm = build_m_action(&space, MKind::Minority)?;
    let (ok, detail) = vote_check(&mm, false);
    let gm = build_g_action(&mm, &build_h_action(&f)?)?;
    let pm = pseudo(&gm, false)?;
    let pm_fixed = pseudo(&gm, true)?;
    let minority_note = match &pm.outcome {
        IdentityOutcome::Holds => {
            format!("pseudo-cyclic holds ({} comparisons, {} on fixed cells)", pm.checked, pm_fixed.checked)
        }
        IdentityOutcome::Counterexample { n, left, right, .. } => {
            let dep = gm.cell(*n, left).completed || gm.cell(*n, right).completed;
            format!(
                "pseudo-cyclic fails at {} vs {} (depends on completed cells: {dep})",
                describe(&gm, *n, left),
                describe(&gm, *n, right)
            )
        }
    };
    report.check("(h) minority variant", ok, format!("{detail}; {minority_note}; majority g: {plain_detail}"));
    let _ = less;
    Ok(report)
}

/// Random relations over the two-part partition that are closed under the
/// semilattice action, plus equality and disequality.
fn semilattice_reduct(
    space: &std::sync::Arc<OrbitSpace>,
    action: &OrbitAction,
    rng: &mut ChaCha8Rng,
) -> Result<Reduct> {
    let mut relations =
        vec![compile_reduct_relation(space, "eq", 2, "1=2")?, compile_reduct_relation(space, "neq", 2, "~(1=2)")?];
    let wanted = rng.gen_range(2..=3);
    let mut attempts = 0;
    while relations.len() < 2 + wanted {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::InvalidParameters("no closed relation found".into()));
        }
        let arity = rng.gen_range(2..=3);
        let formula = random_formula(arity, rng);
        let name = format!("R{}", relations.len() - 1);
        let Ok(rel) = compile_reduct_relation(space, &name, arity, &formula) else { continue };
        if rel.mask().iter().all(|&m| m) || action.preserves(arity, rel.mask())?.is_some() {
            continue;
        }
        if relations.iter().any(|r| r.arity() == arity && r.mask() == rel.mask()) {
            continue;
        }
        relations.push(rel);
    }
    Reduct::new(space.clone(), relations)
}

fn random_formula(arity: usize, rng: &mut ChaCha8Rng) -> String {
    let clauses = rng.gen_range(1..=3);
    let mut out = Vec::new();
    for _ in 0..clauses {
        let lits = rng.gen_range(1..=2);
        let mut c = Vec::new();
        for _ in 0..lits {
            let atom = match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(1..arity + 1);
                    let j = (i % arity) + 1;
                    format!("{}={}", i.min(j), i.max(j))
                }
                1 => format!("A1({})", rng.gen_range(1..=arity)),
                _ => format!("A2({})", rng.gen_range(1..=arity)),
            };
            c.push(if rng.gen_bool(0.4) { format!("~({atom})") } else { atom });
        }
        out.push(format!("({})", c.join(" & ")));
    }
    out.join(" | ")
}

fn unary_locality() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("unary-locality");
    let space = OrbitSpace::new(catalog::unary(2)?);
    let semi = semilattice_action(&space, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a12);
    let (mut m23_bad, mut m46_bad, mut route_bad, mut unsat_count) = (0, 0, 0, 0);
    for i in 0..100 {
        let reduct = semilattice_reduct(&space, &semi, &mut rng)?;
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(n..=2 * n);
        let mut inst = Instance::indexed(n, &[]);
        for _ in 0..m {
            let rel = &reduct.relations()[rng.gen_range(0..reduct.relations().len())];
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(&mut rng);
            let scope: Vec<&str> = vs[..rel.arity()].iter().map(|&v| inst.variables[v].as_str()).collect::<Vec<_>>();
            let scope: Vec<String> = scope.iter().map(|s| s.to_string()).collect();
            let refs: Vec<&str> = scope.iter().map(String::as_str).collect();
            inst.push(rel.name(), &refs);
        }
        let sat = type_space_exists(&reduct, &inst, 8)?;
        let r23 = ab_minimality(&reduct, &inst, 2, 3)?.is_refuted();
        let r46 = reduced_minimality(&reduct, &inst)?.is_refuted();
        let encoded = reduce_then_minimality(&reduct, &inst, 2)?.refuted;
        unsat_count += !sat as usize;
        let bad23 = r23 == sat;
        let bad46 = r46 == sat;
        let bad_route = r46 != encoded;
        m23_bad += bad23 as usize;
        m46_bad += bad46 as usize;
        route_bad += bad_route as usize;
        if bad23 || bad46 || bad_route {
            report.counterexamples.push(json!({
                "instance": i,
                "sat": sat,
                "refuted23": r23,
                "refuted46": r46,
                "encodedRefuted": encoded,
                "reduct": reduct_to_json(&reduct),
                "data": instance_to_json(&inst),
            }));
        }
        report.records.push(MinimalityRecord { instance: i, refuted23: r23, refuted46: r46, unsat: !sat });
    }
    report.check(
        "(2,3)-minimality decides",
        m23_bad == 0,
        format!("100 instances, {unsat_count} UNSAT, {m23_bad} mismatches"),
    );
    report.check("(4,6)-minimality decides", m46_bad == 0, format!("{m46_bad} mismatches"));
    report.check("direct (4,6) agrees with the encoded (2,3) route", route_bad == 0, format!("{route_bad} mismatches"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_helpers() {
        assert_eq!((0..5).map(fubini).collect::<Vec<_>>(), vec![1, 1, 3, 13, 75]);
        assert_eq!((0..5).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15]);
    }

    #[test]
    fn small_suites_pass() {
        for s in ["orbit-counts", "worked-instance"] {
            let r = run_suite(s).unwrap();
            assert!(r.passed(), "{:?}", r.checks);
        }
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn generated_relations_are_closed() {
        let space = OrbitSpace::new(catalog::unary(2).unwrap());
        let semi = semilattice_action(&space, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let r = semilattice_reduct(&space, &semi, &mut rng).unwrap();
            for rel in r.relations() {
                assert_eq!(semi.preserves(rel.arity(), rel.mask()).unwrap(), None);
            }
        }
    }
}
