//! Exact finite-domain solving by backtracking with propagation.
//!
//! This is the finite-domain blackbox: reduced instances and explicit finite
//! templates are both lowered to a [`FiniteCsp`] and decided by exhaustive
//! search (smallest domain first, values in ascending order, generalized arc
//! consistency on every constraint after each decision).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reduct::Instance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteRelation {
    pub name: String,
    pub arity: usize,
    /// Tuples of domain indices.
    pub tuples: Vec<Vec<usize>>,
}

/// A template with an explicit finite domain and extensional relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitFiniteTemplate {
    domain: Vec<String>,
    relations: Vec<FiniteRelation>,
}

impl ExplicitFiniteTemplate {
    pub fn new(domain: Vec<String>, relations: Vec<FiniteRelation>) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::InvalidReduct("finite template with an empty domain".into()));
        }
        for (i, r) in relations.iter().enumerate() {
            crate::structure::check_symbol_name(&r.name)?;
            if relations[..i].iter().any(|o| o.name == r.name) {
                return Err(Error::InvalidReduct(format!("duplicate relation `{}`", r.name)));
            }
            for t in &r.tuples {
                if t.len() != r.arity {
                    return Err(Error::ArityMismatch(format!("tuple of `{}` has length {}", r.name, t.len())));
                }
                if t.iter().any(|&v| v >= domain.len()) {
                    return Err(Error::InvalidReduct(format!("tuple of `{}` leaves the domain", r.name)));
                }
            }
        }
        Ok(ExplicitFiniteTemplate { domain, relations })
    }

    /// Builds from values written as strings.
    pub fn from_values(domain: &[&str], relations: &[(&str, Vec<Vec<&str>>)]) -> Result<Self> {
        let dom: Vec<String> = domain.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|(name, tuples)| {
                let arity = tuples.first().map_or(0, |t| t.len());
                let tuples = tuples
                    .iter()
                    .map(|t| {
                        t.iter()
                            .map(|v| dom.iter().position(|d| d == v).ok_or_else(|| Error::UnknownSymbol(v.to_string())))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FiniteRelation { name: name.to_string(), arity, tuples })
            })
            .collect::<Result<Vec<_>>>()?;
        ExplicitFiniteTemplate::new(dom, rels)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn relations(&self) -> &[FiniteRelation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&FiniteRelation> {
        self.relations.iter().find(|r| r.name == name)
    }

    /// Lowers an instance over this template to a finite CSP.
    pub fn to_csp(&self, instance: &Instance) -> Result<FiniteCsp> {
        let mut violations = Vec::new();
        if instance.variables.is_empty() {
            violations.push("instance declares no variables".to_string());
        }
        for (i, c) in instance.constraints.iter().enumerate() {
            match self.relation(&c.relation) {
                None => violations.push(format!("constraint {i}: unknown relation `{}`", c.relation)),
                Some(r) if r.arity != c.scope.len() => {
                    violations.push(format!("constraint {i}: relation `{}` has arity {}", c.relation, r.arity))
                }
                _ => {}
            }
            for v in &c.scope {
                if !instance.variables.contains(v) {
                    violations.push(format!("constraint {i}: undeclared variable `{v}`"));
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidInstance(violations));
        }
        let domain: Vec<u32> = (0..self.domain.len() as u32).collect();
        let domains = vec![domain; instance.variables.len()];
        let constraints = instance
            .constraints
            .iter()
            .map(|c| {
                let rel = self.relation(&c.relation).unwrap();
                let scope: Vec<usize> =
                    c.scope.iter().map(|v| instance.variables.iter().position(|u| u == v).unwrap()).collect();
                let tuples = rel.tuples.iter().map(|t| t.iter().map(|&v| v as u32).collect()).collect();
                FiniteConstraint::table(scope, tuples)
            })
            .collect();
        Ok(FiniteCsp::new(domains, constraints))
    }
}

#[derive(Clone, Debug)]
pub enum FiniteConstraint {
    /// Extensional constraint; tuples are already consistent with repeated
    /// scope variables.
    Table { scope: Vec<usize>, tuples: Vec<Vec<u32>> },
    /// `left_key[value(left)] == right_key[value(right)]`.
    KeyEq { left: usize, right: usize, left_key: Arc<[u32]>, right_key: Arc<[u32]> },
}

impl FiniteConstraint {
    pub fn table(scope: Vec<usize>, tuples: Vec<Vec<u32>>) -> Self {
        let tuples = tuples
            .into_iter()
            .filter(|t| (0..scope.len()).all(|i| (0..i).all(|j| scope[i] != scope[j] || t[i] == t[j])))
            .collect();
        FiniteConstraint::Table { scope, tuples }
    }

    pub fn scope(&self) -> Vec<usize> {
        match self {
            FiniteConstraint::Table { scope, .. } => scope.clone(),
            FiniteConstraint::KeyEq { left, right, .. } => vec![*left, *right],
        }
    }

    pub fn satisfied_by(&self, assignment: &[u32]) -> bool {
        match self {
            FiniteConstraint::Table { scope, tuples } => {
                tuples.iter().any(|t| scope.iter().zip(t).all(|(&v, &x)| assignment[v] == x))
            }
            FiniteConstraint::KeyEq { left, right, left_key, right_key } => {
                left_key[assignment[*left] as usize] == right_key[assignment[*right] as usize]
            }
        }
    }

    /// Extensional form over the given domains.
    pub fn to_table(&self, domains: &[Vec<u32>]) -> FiniteConstraint {
        match self {
            FiniteConstraint::Table { .. } => self.clone(),
            FiniteConstraint::KeyEq { left, right, left_key, right_key } => {
                let mut tuples = Vec::new();
                for &a in &domains[*left] {
                    for &b in &domains[*right] {
                        if left_key[a as usize] == right_key[b as usize] {
                            tuples.push(vec![a, b]);
                        }
                    }
                }
                FiniteConstraint::table(vec![*left, *right], tuples)
            }
        }
    }
}

/// A finite-domain instance: per-variable sorted value lists plus
/// constraints.
#[derive(Clone, Debug)]
pub struct FiniteCsp {
    pub domains: Vec<Vec<u32>>,
    pub constraints: Vec<FiniteConstraint>,
}

impl FiniteCsp {
    pub fn new(mut domains: Vec<Vec<u32>>, constraints: Vec<FiniteConstraint>) -> Self {
        for d in &mut domains {
            d.sort_unstable();
            d.dedup();
        }
        FiniteCsp { domains, constraints }
    }

    pub fn variable_count(&self) -> usize {
        self.domains.len()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ValueOrder {
    #[default]
    Canonical,
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub node_limit: u64,
    pub value_order: ValueOrder,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_limit: 5_000_000, value_order: ValueOrder::Canonical }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Sat(Vec<u32>),
    Unsat,
    /// Node budget exhausted before a decision.
    LimitReached,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solution: Solution,
    pub nodes: u64,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.solution, Solution::Sat(_))
    }

    pub fn status(&self) -> &'static str {
        match self.solution {
            Solution::Sat(_) => "SAT",
            Solution::Unsat => "UNSAT",
            Solution::LimitReached => "LIMIT",
        }
    }
}

/// Independent re-check of a total assignment.
pub fn verify_assignment(csp: &FiniteCsp, assignment: &[u32]) -> bool {
    assignment.len() == csp.domains.len()
        && assignment.iter().zip(&csp.domains).all(|(v, d)| d.binary_search(v).is_ok())
        && csp.constraints.iter().all(|c| c.satisfied_by(assignment))
}

pub fn solve_csp(csp: &FiniteCsp, config: &SolverConfig) -> SolveOutcome {
    let mut watch = vec![Vec::new(); csp.domains.len()];
    for (i, c) in csp.constraints.iter().enumerate() {
        let mut s = c.scope();
        s.sort_unstable();
        s.dedup();
        for v in s {
            watch[v].push(i);
        }
    }
    let mut search = Search { csp, config, watch, nodes: 0, aborted: false };
    let mut domains = csp.domains.clone();
    let all: Vec<usize> = (0..csp.constraints.len()).collect();
    let solution = if domains.iter().any(|d| d.is_empty()) || !search.propagate(&mut domains, all) {
        Solution::Unsat
    } else {
        match search.search(domains) {
            Some(a) => Solution::Sat(a),
            None if search.aborted => Solution::LimitReached,
            None => Solution::Unsat,
        }
    };
    SolveOutcome { solution, nodes: search.nodes }
}

struct Search<'a> {
    csp: &'a FiniteCsp,
    config: &'a SolverConfig,
    watch: Vec<Vec<usize>>,
    nodes: u64,
    aborted: bool,
}

impl Search<'_> {
    fn search(&mut self, domains: Vec<Vec<u32>>) -> Option<Vec<u32>> {
        self.nodes += 1;
        if self.nodes > self.config.node_limit {
            self.aborted = true;
            return None;
        }
        let var = (0..domains.len()).filter(|&v| domains[v].len() > 1).min_by_key(|&v| (domains[v].len(), v));
        let Some(var) = var else {
            return Some(domains.iter().map(|d| d[0]).collect());
        };
        let mut values = domains[var].clone();
        if self.config.value_order == ValueOrder::Reversed {
            values.reverse();
        }
        for value in values {
            let mut next = domains.clone();
            next[var] = vec![value];
            let queue = self.watch[var].clone();
            if self.propagate(&mut next, queue) {
                if let Some(a) = self.search(next) {
                    return Some(a);
                }
            }
            if self.aborted {
                return None;
            }
        }
        None
    }

    /// Generalized arc consistency to fixpoint; false on a wipe-out.
    fn propagate(&self, domains: &mut [Vec<u32>], initial: Vec<usize>) -> bool {
        let mut queued = vec![false; self.csp.constraints.len()];
        let mut queue = std::collections::VecDeque::new();
        for c in initial {
            if !queued[c] {
                queued[c] = true;
                queue.push_back(c);
            }
        }
        while let Some(ci) = queue.pop_front() {
            queued[ci] = false;
            let changed = match &self.csp.constraints[ci] {
                FiniteConstraint::KeyEq { left, right, left_key, right_key } => {
                    revise_key_eq(domains, *left, *right, left_key, right_key)
                }
                FiniteConstraint::Table { scope, tuples } => revise_table(domains, scope, tuples),
            };
            let Some(changed) = changed else {
                return false;
            };
            for v in changed {
                for &c in &self.watch[v] {
                    if c != ci && !queued[c] {
                        queued[c] = true;
                        queue.push_back(c);
                    }
                }
            }
        }
        true
    }
}

/// Returns the variables whose domains shrank, or `None` on a wipe-out.
fn revise_key_eq(domains: &mut [Vec<u32>], left: usize, right: usize, lk: &[u32], rk: &[u32]) -> Option<Vec<usize>> {
    let keys = |d: &[u32], k: &[u32]| {
        let mut v: Vec<u32> = d.iter().map(|&x| k[x as usize]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut changed = Vec::new();
    let right_keys = keys(&domains[right], rk);
    let before = domains[left].len();
    domains[left].retain(|&x| right_keys.binary_search(&lk[x as usize]).is_ok());
    if domains[left].is_empty() {
        return None;
    }
    if domains[left].len() != before {
        changed.push(left);
    }
    let left_keys = keys(&domains[left], lk);
    let before = domains[right].len();
    domains[right].retain(|&x| left_keys.binary_search(&rk[x as usize]).is_ok());
    if domains[right].is_empty() {
        return None;
    }
    if domains[right].len() != before {
        changed.push(right);
    }
    Some(changed)
}

fn revise_table(domains: &mut [Vec<u32>], scope: &[usize], tuples: &[Vec<u32>]) -> Option<Vec<usize>> {
    let mut supported: Vec<Vec<u32>> = vec![Vec::new(); scope.len()];
    for t in tuples {
        if scope.iter().zip(t).all(|(&v, x)| domains[v].binary_search(x).is_ok()) {
            for (k, &x) in t.iter().enumerate() {
                supported[k].push(x);
            }
        }
    }
    let mut changed = Vec::new();
    for (k, &v) in scope.iter().enumerate() {
        let s = &mut supported[k];
        s.sort_unstable();
        s.dedup();
        let before = domains[v].len();
        domains[v].retain(|x| s.binary_search(x).is_ok());
        if domains[v].is_empty() {
            return None;
        }
        if domains[v].len() != before && !changed.contains(&v) {
            changed.push(v);
        }
    }
    Some(changed)
}

/// Solves an instance over an explicit finite template; on success the
/// witness is returned as domain values per variable.
pub fn solve_explicit(
    template: &ExplicitFiniteTemplate,
    instance: &Instance,
    config: &SolverConfig,
) -> Result<(SolveOutcome, Option<Vec<String>>)> {
    let csp = template.to_csp(instance)?;
    let outcome = solve_csp(&csp, config);
    let values = match &outcome.solution {
        Solution::Sat(a) => Some(a.iter().map(|&v| template.domain()[v as usize].clone()).collect()),
        _ => None,
    };
    Ok((outcome, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn brute_force(csp: &FiniteCsp) -> bool {
        let n = csp.domains.len();
        let mut idx = vec![0usize; n];
        loop {
            let a: Vec<u32> = (0..n).map(|v| csp.domains[v][idx[v]]).collect();
            if verify_assignment(csp, &a) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < csp.domains[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn one_in_three_witness() {
        let t = catalog::one_in_three();
        let mut inst = Instance::indexed(4, &[]);
        inst.variables = vec!["x".into(), "y".into(), "z".into(), "w".into()];
        inst.push("R", &["x", "y", "z"]);
        inst.push("R", &["x", "y", "w"]);
        let csp = t.to_csp(&inst).unwrap();
        let (out, values) = solve_explicit(&t, &inst, &SolverConfig::default()).unwrap();
        let Solution::Sat(a) = &out.solution else { panic!("expected SAT") };
        assert!(verify_assignment(&csp, a));
        assert_eq!(values.unwrap().len(), 4);
    }

    #[test]
    fn k4_is_not_three_colorable() {
        let t = catalog::three_coloring();
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push(("neq", vec![i, j]));
            }
        }
        let pairs: Vec<(&str, &[usize])> = edges.iter().map(|(r, s)| (*r, s.as_slice())).collect();
        let inst = Instance::indexed(4, &pairs);
        let csp = t.to_csp(&inst).unwrap();
        assert!(!brute_force(&csp));
        let (out, _) = solve_explicit(&t, &inst, &SolverConfig::default()).unwrap();
        assert_eq!(out.solution, Solution::Unsat);
        let rev = solve_csp(&csp, &SolverConfig { value_order: ValueOrder::Reversed, ..Default::default() });
        assert_eq!(rev.solution, Solution::Unsat);
        // K3 is colorable
        let k3 = Instance::indexed(3, &[("neq", &[0, 1]), ("neq", &[0, 2]), ("neq", &[1, 2])]);
        assert!(solve_explicit(&t, &k3, &SolverConfig::default()).unwrap().0.is_sat());
    }

    #[test]
    fn repeated_scope_variables() {
        let t = catalog::one_in_three();
        // R(x,x,y) forces x = 0, y = 1
        let inst = Instance::indexed(2, &[("R", &[0, 0, 1])]);
        let (out, values) = solve_explicit(&t, &inst, &SolverConfig::default()).unwrap();
        assert!(out.is_sat());
        assert_eq!(values.unwrap(), vec!["0".to_string(), "1".to_string()]);
        let unsat = Instance::indexed(1, &[("R", &[0, 0, 0])]);
        assert!(!solve_explicit(&t, &unsat, &SolverConfig::default()).unwrap().0.is_sat());
    }

    #[test]
    fn node_limit_is_distinct_from_unsat() {
        let t = catalog::three_coloring();
        let mut cons = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                cons.push(vec![i, j]);
            }
        }
        let pairs: Vec<(&str, &[usize])> = cons.iter().map(|s| ("neq", s.as_slice())).collect();
        let inst = Instance::indexed(5, &pairs);
        let csp = t.to_csp(&inst).unwrap();
        let out = solve_csp(&csp, &SolverConfig { node_limit: 1, ..Default::default() });
        assert_eq!(out.solution, Solution::LimitReached);
    }

    #[test]
    fn gf2_sum() {
        let t = catalog::gf2_linear();
        // x + y = z, z = 1, x = 1  →  y = 0
        let mut inst = Instance::indexed(3, &[("sum", &[0, 1, 2])]);
        inst.push("one", &["x3"]);
        inst.push("one", &["x1"]);
        let (out, values) = solve_explicit(&t, &inst, &SolverConfig::default()).unwrap();
        assert!(out.is_sat());
        assert_eq!(values.unwrap(), vec!["1", "0", "1"]);
    }

    #[test]
    fn invalid_instances_are_reported() {
        let t = catalog::one_in_three();
        let inst = Instance::indexed(2, &[("R", &[0, 1]), ("S", &[0])]);
        match t.to_csp(&inst) {
            Err(Error::InvalidInstance(v)) => assert_eq!(v.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unconstrained_empty_domain_is_unsat() {
        let csp = FiniteCsp::new(vec![vec![0, 1], vec![]], vec![FiniteConstraint::table(vec![0], vec![vec![1]])]);
        assert_eq!(solve_csp(&csp, &SolverConfig::default()).solution, Solution::Unsat);
    }
}
