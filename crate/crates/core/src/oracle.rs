//! Exponential ground-truth deciders.
//!
//! [`type_space_decide`] builds complete types on all variables position by
//! position, deciding one atom at a time and rejecting a partial type as soon
//! as some bound is realized on decided atoms. It does not use the orbit
//! enumerator for the full type. [`weak_order_decide`] is a second,
//! unrelated oracle for reducts of the rational order.

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::orbit::{Orbit, OrbitLabel};
use crate::reduct::{Instance, Reduct, ResolvedConstraint};
use crate::structure::{Atom, Template};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    /// All solution types in canonical order.
    pub solutions: Vec<Orbit>,
    /// Labels of the solutions, when `n` is within the enumeration capacity.
    pub labels: Option<Vec<OrbitLabel>>,
}

impl OracleVerdict {
    pub fn is_sat(&self) -> bool {
        !self.solutions.is_empty()
    }

    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn status(&self) -> &'static str {
        if self.is_sat() {
            "SAT"
        } else {
            "UNSAT"
        }
    }
}

fn finish(reduct: &Reduct, mut solutions: Vec<Orbit>) -> Result<OracleVerdict> {
    solutions.sort();
    let space = reduct.space();
    let labels = match solutions.first() {
        Some(o) if o.n() <= space.limits().max_n => {
            Some(solutions.iter().map(|s| space.label_of(s)).collect::<Result<Vec<_>>>()?)
        }
        Some(_) => None,
        None => Some(Vec::new()),
    };
    Ok(OracleVerdict { solutions, labels })
}

/// Every bound-avoiding complete type on the instance's variables that
/// satisfies all constraints.
pub fn type_space_decide(reduct: &Reduct, instance: &Instance) -> Result<OracleVerdict> {
    let n = instance.variables.len();
    reduct.space().limits().check(n)?;
    let mut search = TypeSearch::new(reduct, instance, false)?;
    search.extend(0);
    finish(reduct, search.found)
}

/// Satisfiability only, stopping at the first solution. `max_n` is the
/// capacity for this call.
pub fn type_space_exists(reduct: &Reduct, instance: &Instance, max_n: usize) -> Result<bool> {
    let n = instance.variables.len();
    if n > max_n {
        return Err(Error::Capacity { n, limit: max_n });
    }
    let mut search = TypeSearch::new(reduct, instance, true)?;
    search.extend(0);
    Ok(!search.found.is_empty())
}

const UNKNOWN: u8 = 0;
const FALSE: u8 = 1;
const TRUE: u8 = 2;

struct TypeSearch<'a> {
    reduct: &'a Reduct,
    template: &'a Template,
    n: usize,
    constraints: Vec<ResolvedConstraint>,
    /// Class of each position decided so far.
    classes: Vec<usize>,
    class_count: usize,
    /// Per relation, atom values indexed by class tuples in base `n`.
    facts: Vec<Vec<u8>>,
    stop_at_first: bool,
    found: Vec<Orbit>,
}

impl<'a> TypeSearch<'a> {
    fn new(reduct: &'a Reduct, instance: &Instance, stop_at_first: bool) -> Result<Self> {
        let resolved = reduct.resolve(instance)?;
        let n = resolved.n;
        let template = reduct.base();
        let facts = template.signature().relations().iter().map(|r| vec![UNKNOWN; n.pow(r.arity as u32)]).collect();
        Ok(TypeSearch {
            reduct,
            template,
            n,
            constraints: resolved.constraints,
            classes: Vec::with_capacity(n),
            class_count: 0,
            facts,
            stop_at_first,
            found: Vec::new(),
        })
    }

    fn done(&self) -> bool {
        self.stop_at_first && !self.found.is_empty()
    }

    fn extend(&mut self, p: usize) {
        if self.done() {
            return;
        }
        if p == self.n {
            let (facts, classes, n) = (&self.facts, &self.classes, self.n);
            let orbit = Orbit::build(self.template.signature(), classes, |rel, args| {
                facts[rel][args.iter().fold(0, |acc, &a| acc * n + classes[a])] == TRUE
            });
            self.found.push(orbit);
            return;
        }
        for c in 0..=self.class_count {
            self.classes.push(c);
            if c < self.class_count {
                if self.constraints_hold(p) {
                    self.extend(p + 1);
                }
            } else {
                self.class_count += 1;
                let atoms = self.new_atoms(c);
                self.decide(p, c, &atoms, 0);
                for &(rel, idx) in &atoms {
                    self.facts[rel][idx] = UNKNOWN;
                }
                self.class_count -= 1;
            }
            self.classes.pop();
            if self.done() {
                return;
            }
        }
    }

    /// Atoms over classes `0..=c` that mention `c`, as (relation, index).
    fn new_atoms(&self, c: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (rel, r) in self.template.signature().relations().iter().enumerate() {
            let mut t = vec![0usize; r.arity];
            for idx in 0..(c + 1).pow(r.arity as u32) {
                crate::orbit::index_tuple(c + 1, r.arity, idx, &mut t);
                if t.contains(&c) {
                    out.push((rel, t.iter().fold(0, |acc, &a| acc * self.n + a)));
                }
            }
        }
        out
    }

    fn decide(&mut self, p: usize, c: usize, atoms: &[(usize, usize)], i: usize) {
        if i == atoms.len() {
            if self.constraints_hold(p) {
                self.extend(p + 1);
            }
            return;
        }
        let (rel, idx) = atoms[i];
        for value in [TRUE, FALSE] {
            self.facts[rel][idx] = value;
            if !self.some_bound_realized(c) {
                self.decide(p, c, atoms, i + 1);
            }
            if self.done() {
                break;
            }
        }
        self.facts[rel][idx] = UNKNOWN;
    }

    fn literal(&self, positive: bool, atom: &Atom, map: &[usize]) -> u8 {
        let v = match atom {
            Atom::Eq(i, j) => {
                if map[*i] == map[*j] {
                    TRUE
                } else {
                    FALSE
                }
            }
            Atom::Rel { rel, args } => self.facts[*rel][args.iter().fold(0, |acc, &a| acc * self.n + map[a])],
        };
        match (v, positive) {
            (UNKNOWN, _) => UNKNOWN,
            (TRUE, true) | (FALSE, false) => TRUE,
            _ => FALSE,
        }
    }

    /// Whether some bound is realized by decided atoms under a map onto
    /// classes that uses class `c`.
    fn some_bound_realized(&self, c: usize) -> bool {
        let k = c + 1;
        for bound in self.template.bounds() {
            let v = bound.var_count();
            let mut map = vec![0usize; v];
            for idx in 0..k.pow(v as u32) {
                crate::orbit::index_tuple(k, v, idx, &mut map);
                if !map.contains(&c) {
                    continue;
                }
                if bound.literals().iter().all(|l| self.literal(l.positive, &l.atom, &map) == TRUE) {
                    return true;
                }
            }
        }
        false
    }

    /// Constraints whose last variable is `p`.
    fn constraints_hold(&self, p: usize) -> bool {
        self.constraints.iter().filter(|c| c.vars.iter().max() == Some(&p)).all(|c| {
            let rel = &self.reduct.relations()[c.relation];
            let classes: Vec<usize> = c.scope.iter().map(|&v| self.classes[v]).collect();
            let n = self.n;
            let facts = &self.facts;
            let orbit = Orbit::build(self.template.signature(), &classes, |r, args| {
                facts[r][args.iter().fold(0, |acc, &a| acc * n + classes[a])] == TRUE
            });
            match self.reduct.space().index_of(&orbit) {
                Ok(i) => rel.contains(i),
                Err(_) => false,
            }
        })
    }
}

/// Second oracle for reducts of the rational order: tries every weak order
/// (ordered set partition) of the variables and evaluates each constraint's
/// defining formula on ranks.
pub fn weak_order_decide(reduct: &Reduct, instance: &Instance) -> Result<OracleVerdict> {
    let sig = reduct.base().signature();
    if sig.len() != 1 || sig.arity(0) != 2 {
        return Err(Error::Unsupported("weak-order oracle needs a base with a single binary order".into()));
    }
    let n = instance.variables.len();
    reduct.space().limits().check(n)?;
    let resolved = reduct.resolve(instance)?;
    let formulas: Vec<Formula> = reduct
        .relations()
        .iter()
        .map(|r| {
            let src =
                r.formula().ok_or_else(|| Error::Unsupported(format!("relation `{}` has no formula", r.name())))?;
            Formula::parse(src, sig)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut solutions = Vec::new();
    let mut rank = vec![0usize; n];
    loop {
        let blocks = rank.iter().max().map_or(0, |m| m + 1);
        let surjective = (0..blocks).all(|b| rank.contains(&b));
        if surjective {
            let ok = resolved.constraints.iter().all(|c| {
                let r: Vec<usize> = c.scope.iter().map(|&v| rank[v]).collect();
                formulas[c.relation].eval_with(&|i, j| r[i] == r[j], &|_, args| r[args[0]] < r[args[1]])
            });
            if ok {
                solutions.push(Orbit::build(sig, &rank, |_, args| rank[args[0]] < rank[args[1]]));
            }
        }
        // next rank vector in 0..n
        let mut k = 0;
        loop {
            if k == n {
                return finish(reduct, solutions);
            }
            rank[k] += 1;
            if rank[k] < n {
                break;
            }
            rank[k] = 0;
            k += 1;
        }
    }
}

/// Whether the digraph on `0..n` has a directed cycle (self-loops count).
pub fn has_directed_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    // 0 unvisited, 1 on stack, 2 finished
    let mut state = vec![0u8; n];
    fn visit(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &adj[v] {
            if state[w] == 1 || (state[w] == 0 && visit(w, adj, state)) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    (0..n).any(|v| state[v] == 0 && visit(v, &adj, &mut state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::enumerate::enumerate_orbits;

    #[test]
    fn two_lower_bounds_three_solutions() {
        let r = catalog::load_reduct("q-order").unwrap();
        let inst = Instance::indexed(3, &[("<", &[0, 1]), ("<", &[0, 2])]);
        let v = type_space_decide(&r, &inst).unwrap();
        assert_eq!(v.count(), 3);
        let names = inst.variables.clone();
        let mut described: Vec<String> =
            v.solutions.iter().map(|o| o.describe_weak_order(0, &names).unwrap()).collect();
        described.sort();
        assert_eq!(described, vec!["s(x1)<s(x2)<s(x3)", "s(x1)<s(x2)=s(x3)", "s(x1)<s(x3)<s(x2)"]);
        assert_eq!(weak_order_decide(&r, &inst).unwrap(), v);
    }

    #[test]
    fn cycle_is_unsat() {
        let r = catalog::load_reduct("q-order").unwrap();
        let inst = Instance::indexed(3, &[("<", &[0, 1]), ("<", &[1, 2]), ("<", &[2, 0])]);
        assert!(!type_space_decide(&r, &inst).unwrap().is_sat());
        assert!(!weak_order_decide(&r, &inst).unwrap().is_sat());
        assert!(!type_space_exists(&r, &inst, 8).unwrap());
    }

    #[test]
    fn empty_instance_counts_all_orbits() {
        for id in ["q-order", "equality", "unary-2", "random-graph", "hypergraph-ordered"] {
            let r = catalog::load_reduct(id).unwrap();
            for n in 1..=4 {
                let v = type_space_decide(&r, &Instance::indexed(n, &[])).unwrap();
                let all = enumerate_orbits(r.base(), n).unwrap();
                assert_eq!(v.solutions, all, "{id} n={n}");
                assert_eq!(v.labels.unwrap().len(), all.len());
            }
        }
    }

    #[test]
    fn betweenness_alone() {
        let r = catalog::load_reduct("betweenness").unwrap();
        let inst = Instance::indexed(3, &[("B", &[0, 1, 2])]);
        let v = weak_order_decide(&r, &inst).unwrap();
        assert_eq!(v.count(), 2);
        assert!(v.solutions.iter().all(|o| o.is_injective()));
        assert_eq!(type_space_decide(&r, &inst).unwrap(), v);
    }

    #[test]
    fn equality_forcing() {
        let space = crate::enumerate::OrbitSpace::new(catalog::q_order());
        let r = Reduct::from_formulas(space, &[("E", 2, "1=2")]).unwrap();
        let inst = Instance::indexed(3, &[("E", &[0, 1])]);
        let v = weak_order_decide(&r, &inst).unwrap();
        assert!(v.is_sat());
        assert!(v.solutions.iter().all(|o| o.same(0, 1)));
        assert_eq!(v.count(), 3);
    }

    #[test]
    fn capacity_is_an_error() {
        let r = catalog::load_reduct("q-order").unwrap();
        let err = type_space_decide(&r, &Instance::indexed(8, &[])).unwrap_err();
        assert!(err.is_capacity());
        assert!(type_space_exists(&r, &Instance::indexed(8, &[]), 8).unwrap());
    }

    #[test]
    fn cycle_detection() {
        assert!(has_directed_cycle(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(!has_directed_cycle(3, &[(0, 1), (1, 2), (0, 2)]));
        assert!(has_directed_cycle(1, &[(0, 0)]));
        assert!(!has_directed_cycle(4, &[]));
    }
}
