//! Reduction of an instance over a reduct to a finite-domain instance whose
//! variables are windows (sorted `w`-subsets of the original variables) and
//! whose values are `w`-orbits.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::enumerate::{OrbitSpace, OrbitTable};
use crate::error::{Error, Result};
use crate::finite::{solve_csp, FiniteConstraint, FiniteCsp, Solution, SolveOutcome, SolverConfig};
use crate::orbit::Orbit;
use crate::reduct::{Instance, Reduct};

/// Windows sharing variables must induce the same orbit on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub left: usize,
    pub right: usize,
    /// Shared variables, ascending.
    pub shared: Vec<usize>,
    pub left_positions: Vec<usize>,
    pub right_positions: Vec<usize>,
}

/// The values of `window` allowed by original constraint `constraint`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub window: usize,
    pub constraint: usize,
    pub allowed: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FiniteInstance {
    space: Arc<OrbitSpace>,
    variables: Vec<String>,
    window_size: usize,
    windows: Vec<Vec<usize>>,
    window_index: HashMap<Vec<usize>, usize>,
    table: Arc<OrbitTable>,
    domain_size: usize,
    overlaps: Vec<Overlap>,
    memberships: Vec<Membership>,
}

/// Smallest window size for which the reduction is exact: large enough for
/// every bound, every constraint scope, equality transitivity (3) and
/// congruence of facts (maximal arity plus one), capped at the number of
/// variables.
pub fn window_size(reduct: &Reduct, instance: &Instance) -> usize {
    let base = reduct.base();
    let arity = instance
        .constraints
        .iter()
        .filter_map(|c| reduct.relation(&c.relation).map(|(_, r)| r.arity()))
        .max()
        .unwrap_or(0);
    let w = (base.max_arity() + 1).max(3).max(base.max_bound_size()).max(arity);
    w.min(instance.variables.len()).max(1)
}

pub fn reduce_instance(reduct: &Reduct, instance: &Instance) -> Result<FiniteInstance> {
    reduce_instance_with(reduct, instance, window_size(reduct, instance))
}

/// Reduction with an explicit window size. Smaller windows than
/// [`window_size`] give a relaxation rather than an equivalent instance.
pub fn reduce_instance_with(reduct: &Reduct, instance: &Instance, w: usize) -> Result<FiniteInstance> {
    let resolved = reduct.resolve(instance)?;
    let n = resolved.n;
    let w = w.min(n).max(1);
    for (i, c) in resolved.constraints.iter().enumerate() {
        if c.vars.len() > w {
            return Err(Error::ScopeTooWide { constraint: i, size: c.vars.len(), window: w });
        }
    }
    let space = reduct.space().clone();
    let table = space.table(w)?;
    let windows = combinations(n, w);
    let window_index: HashMap<Vec<usize>, usize> = windows.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

    let mut memberships = Vec::new();
    for (ci, c) in resolved.constraints.iter().enumerate() {
        let rel = &reduct.relations()[c.relation];
        for (wi, win) in windows.iter().enumerate() {
            if !c.vars.iter().all(|v| win.contains(v)) {
                continue;
            }
            let positions: Vec<usize> = c.scope.iter().map(|v| win.iter().position(|u| u == v).unwrap()).collect();
            let proj = space.projection(w, &positions)?;
            let allowed = (0..table.len() as u32).filter(|&o| rel.contains(proj[o as usize])).collect();
            memberships.push(Membership { window: wi, constraint: ci, allowed });
        }
    }

    let mut overlaps = Vec::new();
    for i in 0..windows.len() {
        for j in i + 1..windows.len() {
            let shared: Vec<usize> = windows[i].iter().copied().filter(|v| windows[j].contains(v)).collect();
            if shared.is_empty() {
                continue;
            }
            let pos = |win: &[usize]| shared.iter().map(|v| win.iter().position(|u| u == v).unwrap()).collect();
            overlaps.push(Overlap {
                left: i,
                right: j,
                left_positions: pos(&windows[i]),
                right_positions: pos(&windows[j]),
                shared,
            });
        }
    }

    Ok(FiniteInstance {
        space,
        variables: instance.variables.clone(),
        window_size: w,
        windows,
        window_index,
        domain_size: table.len(),
        table,
        overlaps,
        memberships,
    })
}

/// All sorted `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Why an assignment could not be glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueError {
    /// Two windows disagree on their shared variables.
    Conflict { left: usize, right: usize, shared: Vec<String> },
    /// Wrong number of values or a value outside the window domain.
    Malformed(String),
}

impl FiniteInstance {
    pub fn space(&self) -> &Arc<OrbitSpace> {
        &self.space
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn window_size(&self) -> usize {
        self.window_size
    }

    pub fn windows(&self) -> &[Vec<usize>] {
        &self.windows
    }

    pub fn overlaps(&self) -> &[Overlap] {
        &self.overlaps
    }

    pub fn memberships(&self) -> &[Membership] {
        &self.memberships
    }

    /// Number of `w`-orbits, the size of every initial domain.
    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Per window, the values allowed by all memberships.
    pub fn domains(&self) -> Vec<Vec<u32>> {
        let mut allowed = vec![vec![true; self.domain_size]; self.windows.len()];
        for m in &self.memberships {
            let mut keep = vec![false; self.domain_size];
            for &o in &m.allowed {
                keep[o as usize] = true;
            }
            for (a, k) in allowed[m.window].iter_mut().zip(keep) {
                *a &= k;
            }
        }
        allowed
            .into_iter()
            .map(|mask| mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i as u32).collect())
            .collect()
    }

    /// Lowering to a finite CSP: memberships become domain restrictions and
    /// overlaps become key-equality constraints (overlaps whose shared part
    /// has a single orbit are dropped, they constrain nothing).
    pub fn to_csp(&self) -> Result<FiniteCsp> {
        let w = self.window_size;
        let mut constraints = Vec::new();
        for o in &self.overlaps {
            if self.space.table(o.shared.len())?.len() == 1 {
                continue;
            }
            constraints.push(FiniteConstraint::KeyEq {
                left: o.left,
                right: o.right,
                left_key: self.space.projection(w, &o.left_positions)?,
                right_key: self.space.projection(w, &o.right_positions)?,
            });
        }
        Ok(FiniteCsp::new(self.domains(), constraints))
    }

    /// Index of the window holding exactly the sorted variable set `vars`.
    pub fn window_of(&self, vars: &[usize]) -> Option<usize> {
        self.window_index.get(vars).copied()
    }

    /// Some window containing `vars` (the one completed by the smallest
    /// other variables).
    fn window_containing(&self, vars: &[usize]) -> usize {
        let mut set: Vec<usize> = vars.to_vec();
        set.sort_unstable();
        set.dedup();
        let mut v = 0;
        while set.len() < self.window_size {
            if !set.contains(&v) {
                set.push(v);
            }
            v += 1;
        }
        set.sort_unstable();
        self.window_index[&set]
    }

    /// Checks an assignment against every overlap, in order.
    pub fn check_assignment(&self, assignment: &[u32]) -> std::result::Result<(), GlueError> {
        if assignment.len() != self.windows.len() {
            return Err(GlueError::Malformed(format!(
                "expected {} window values, got {}",
                self.windows.len(),
                assignment.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&o| o as usize >= self.domain_size) {
            return Err(GlueError::Malformed(format!("no {}-orbit with index {bad}", self.window_size)));
        }
        for o in &self.overlaps {
            let a = self.table.get(assignment[o.left]).induced(&o.left_positions);
            let b = self.table.get(assignment[o.right]).induced(&o.right_positions);
            if a != b {
                return Err(GlueError::Conflict {
                    left: o.left,
                    right: o.right,
                    shared: o.shared.iter().map(|&v| self.variables[v].clone()).collect(),
                });
            }
        }
        Ok(())
    }

    /// The unique type on all variables restricting to every window value.
    pub fn glue_solution(&self, assignment: &[u32]) -> std::result::Result<Orbit, GlueError> {
        self.check_assignment(assignment)?;
        let n = self.variables.len();
        let w = self.window_size;
        let sig = self.space.signature();
        // equality classes via union-find over window equalities
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (wi, win) in self.windows.iter().enumerate() {
            let o = self.table.get(assignment[wi]);
            for a in 0..w {
                for b in a + 1..w {
                    if o.same(a, b) {
                        let (ra, rb) = (find(&mut parent, win[a]), find(&mut parent, win[b]));
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let classes: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        let orbit = Orbit::build(sig, &classes, |rel, args| {
            let wi = self.window_containing(args);
            let win = &self.windows[wi];
            let pos: Vec<usize> = args.iter().map(|v| win.iter().position(|u| u == v).unwrap()).collect();
            self.table.get(assignment[wi]).holds(rel, &pos)
        });
        Ok(orbit)
    }

    /// Serializable view with variable names and orbit labels.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct OverlapJson {
            left: usize,
            right: usize,
            shared: Vec<String>,
        }
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct MembershipJson {
            window: usize,
            constraint: usize,
            allowed: Vec<String>,
        }
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Json {
            window_size: usize,
            windows: Vec<Vec<String>>,
            domains: Vec<Vec<String>>,
            overlaps: Vec<OverlapJson>,
            memberships: Vec<MembershipJson>,
        }
        let w = self.window_size;
        let label = |o: u32| format!("{w}:O{o}");
        let names = |vs: &[usize]| vs.iter().map(|&v| self.variables[v].clone()).collect::<Vec<_>>();
        let json = Json {
            window_size: w,
            windows: self.windows.iter().map(|win| names(win)).collect(),
            domains: self.domains().into_iter().map(|d| d.into_iter().map(label).collect()).collect(),
            overlaps: self
                .overlaps
                .iter()
                .map(|o| OverlapJson { left: o.left, right: o.right, shared: names(&o.shared) })
                .collect(),
            memberships: self
                .memberships
                .iter()
                .map(|m| MembershipJson {
                    window: m.window,
                    constraint: m.constraint,
                    allowed: m.allowed.iter().map(|&o| label(o)).collect(),
                })
                .collect(),
        };
        serde_json::to_value(json).expect("finite instance json")
    }
}

/// Decision of a reduced instance with a glued witness on SAT.
#[derive(Clone, Debug)]
pub struct ReducedOutcome {
    pub outcome: SolveOutcome,
    /// Window values of the witness.
    pub assignment: Option<Vec<u32>>,
    /// The glued type on all variables.
    pub witness: Option<Orbit>,
}

impl ReducedOutcome {
    pub fn status(&self) -> &'static str {
        self.outcome.status()
    }

    pub fn is_sat(&self) -> bool {
        self.outcome.is_sat()
    }
}

pub fn solve_finite(instance: &FiniteInstance, config: &SolverConfig) -> Result<ReducedOutcome> {
    let csp = instance.to_csp()?;
    let outcome = solve_csp(&csp, config);
    let (assignment, witness) = match &outcome.solution {
        Solution::Sat(a) => {
            let glued = instance
                .glue_solution(a)
                .map_err(|e| Error::InvalidOrbit(format!("solver witness does not glue: {e:?}")))?;
            (Some(a.clone()), Some(glued))
        }
        _ => (None, None),
    };
    Ok(ReducedOutcome { outcome, assignment, witness })
}

/// Reduce, then solve exactly.
pub fn decide(reduct: &Reduct, instance: &Instance, config: &SolverConfig) -> Result<ReducedOutcome> {
    solve_finite(&reduce_instance(reduct, instance)?, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::finite::{verify_assignment, ValueOrder};

    fn q() -> Reduct {
        catalog::load_reduct("q-order").unwrap()
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 3).len(), 10);
    }

    #[test]
    fn two_lower_bounds_have_three_glued_solutions() {
        let r = q();
        let inst = Instance::indexed(3, &[("<", &[0, 1]), ("<", &[0, 2])]);
        let fi = reduce_instance(&r, &inst).unwrap();
        assert_eq!(fi.window_size(), 3);
        assert_eq!(fi.windows().len(), 1);
        let csp = fi.to_csp().unwrap();
        let solutions: Vec<Orbit> = csp.domains[0].iter().map(|&o| fi.glue_solution(&[o]).unwrap()).collect();
        assert_eq!(solutions.len(), 3);
    }

    #[test]
    fn no_constraints_still_has_overlaps() {
        let fi = reduce_instance(&q(), &Instance::indexed(5, &[])).unwrap();
        assert_eq!(fi.windows().len(), 10);
        assert!(!fi.overlaps().is_empty());
        assert!(!fi.to_csp().unwrap().constraints.is_empty());
    }

    #[test]
    fn betweenness_membership_excludes_equalities() {
        let r = catalog::load_reduct("betweenness").unwrap();
        let inst = Instance::indexed(3, &[("B", &[0, 1, 2])]);
        let fi = reduce_instance(&r, &inst).unwrap();
        assert_eq!(fi.memberships().len(), 1);
        let t3 = r.space().table(3).unwrap();
        for &o in &fi.memberships()[0].allowed {
            assert!(t3.get(o).is_injective());
        }
        assert_eq!(fi.memberships()[0].allowed.len(), 2);
    }

    #[test]
    fn conflicting_windows_are_reported() {
        let r = q();
        let fi = reduce_instance(&r, &Instance::indexed(4, &[])).unwrap();
        let t3 = r.space().table(3).unwrap();
        // window {x1,x2,x3}: x1<x2<x3 ; window {x1,x2,x4}: x2<x1<x4
        let up = |a: usize, b: usize, c: usize| {
            let rank = [a, b, c];
            Orbit::build(r.space().signature(), &[0, 1, 2], |_, args| rank[args[0]] < rank[args[1]])
        };
        let mut assignment = vec![0u32; fi.windows().len()];
        assignment[0] = t3.index_of(&up(0, 1, 2)).unwrap();
        assignment[1] = t3.index_of(&up(1, 0, 2)).unwrap();
        match fi.glue_solution(&assignment) {
            Err(GlueError::Conflict { left: 0, right: 1, shared }) => assert_eq!(shared, vec!["x1", "x2"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_window_glues_to_itself() {
        let r = q();
        let fi = reduce_instance(&r, &Instance::indexed(3, &[])).unwrap();
        let t3 = r.space().table(3).unwrap();
        for o in 0..t3.len() as u32 {
            assert_eq!(&fi.glue_solution(&[o]).unwrap(), t3.get(o));
        }
    }

    #[test]
    fn cycle_is_unsat_both_orders() {
        let r = q();
        let inst = Instance::indexed(4, &[("<", &[0, 1]), ("<", &[1, 2]), ("<", &[2, 3]), ("<", &[3, 0])]);
        let fi = reduce_instance(&r, &inst).unwrap();
        let a = solve_finite(&fi, &SolverConfig::default()).unwrap();
        assert_eq!(a.status(), "UNSAT");
        let b = solve_finite(&fi, &SolverConfig { value_order: ValueOrder::Reversed, ..Default::default() }).unwrap();
        assert_eq!(b.status(), "UNSAT");
    }

    #[test]
    fn sat_witness_glues_and_verifies() {
        let r = q();
        let inst = Instance::indexed(5, &[("<", &[0, 1]), ("<", &[1, 2]), ("<", &[3, 2]), ("<", &[4, 3])]);
        let fi = reduce_instance(&r, &inst).unwrap();
        let out = solve_finite(&fi, &SolverConfig::default()).unwrap();
        let a = out.assignment.unwrap();
        assert!(verify_assignment(&fi.to_csp().unwrap(), &a));
        let full = out.witness.unwrap();
        for b in r.base().bounds() {
            assert!(!full.realizes(b));
        }
        for c in &inst.constraints {
            let vs: Vec<usize> = c.scope.iter().map(|v| v[1..].parse::<usize>().unwrap() - 1).collect();
            assert!(full.holds(0, &vs));
        }
    }

    #[test]
    fn scope_too_wide() {
        let r = catalog::load_reduct("Z").unwrap();
        let inst = Instance::indexed(4, &[("Z", &[0, 1, 2, 3])]);
        assert!(matches!(reduce_instance_with(&r, &inst, 3), Err(Error::ScopeTooWide { constraint: 0, .. })));
        assert_eq!(reduce_instance(&r, &inst).unwrap().window_size(), 4);
    }

    #[test]
    fn json_field_names() {
        let r = catalog::load_reduct("betweenness").unwrap();
        let fi = reduce_instance(&r, &Instance::indexed(3, &[("B", &[0, 1, 2])])).unwrap();
        let j = fi.to_json();
        for key in ["windowSize", "windows", "domains", "overlaps", "memberships"] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["domains"][0].as_array().unwrap().len(), 2);
    }
}
