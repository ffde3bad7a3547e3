//! Exhaustive orbit enumeration and the cached orbit tables built on it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::orbit::{tuple_index, Orbit, OrbitLabel};
use crate::structure::{Atom, Template};

/// Enumeration capacity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest tuple length that may be enumerated.
    pub max_n: usize,
    /// Largest number of orbits of a single length.
    pub max_orbits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 7, max_orbits: 2_000_000 }
    }
}

impl Limits {
    pub fn with_max_n(max_n: usize) -> Self {
        Limits { max_n, ..Limits::default() }
    }

    /// Default limits, with `ORBITSOLVE_MAX_N` overriding the tuple-length cap.
    pub fn from_env() -> Self {
        match std::env::var("ORBITSOLVE_MAX_N").ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => Limits::with_max_n(n),
            None => Limits::default(),
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            Err(Error::Capacity { n, limit: self.max_n })
        } else {
            Ok(())
        }
    }
}

/// All valid orbits of `n`-tuples in canonical order, under default limits.
pub fn enumerate_orbits(template: &Template, n: usize) -> Result<Vec<Orbit>> {
    enumerate_orbits_with(template, n, &Limits::from_env())
}

pub fn enumerate_orbits_with(template: &Template, n: usize, limits: &Limits) -> Result<Vec<Orbit>> {
    if n == 0 {
        return Err(Error::InvalidOrbit("tuple length must be at least 1".into()));
    }
    limits.check(n)?;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    let mut err = None;
    for_each_rgs(&mut rgs, 1, 0, &mut |rgs| {
        if err.is_some() {
            return;
        }
        let mut block = ClassSearch::new(template, rgs).run();
        block.sort();
        out.extend(block);
        if out.len() > limits.max_orbits {
            err = Some(Error::OrbitLimit { n, limit: limits.max_orbits });
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Visits all restricted-growth strings of length `rgs.len()` in
/// lexicographic order.
fn for_each_rgs(rgs: &mut [usize], pos: usize, max: usize, visit: &mut impl FnMut(&[usize])) {
    if pos >= rgs.len() {
        visit(rgs);
        return;
    }
    for c in 0..=max + 1 {
        rgs[pos] = c;
        for_each_rgs(rgs, pos + 1, max.max(c), visit);
    }
}

/// Backtracking search over the relation atoms of the classes of one
/// equality pattern. Atoms are decided layer by layer (by largest class
/// involved); after each decision only bound matches that use the new atom
/// are examined.
struct ClassSearch<'a> {
    template: &'a Template,
    rgs: &'a [usize],
    classes: usize,
    values: Vec<Vec<i8>>,
    atoms: Vec<(usize, Vec<usize>)>,
    /// Per relation: (bound, literal) pairs whose literal mentions it.
    watch: Vec<Vec<(usize, usize)>>,
    found: Vec<Orbit>,
}

impl<'a> ClassSearch<'a> {
    fn new(template: &'a Template, rgs: &'a [usize]) -> Self {
        let classes = rgs.iter().max().map_or(0, |m| m + 1);
        let sig = template.signature();
        let values = sig.relations().iter().map(|r| vec![-1i8; classes.pow(r.arity as u32)]).collect();
        let mut atoms = Vec::new();
        for layer in 0..classes {
            for (rel, sym) in sig.relations().iter().enumerate() {
                let mut t = vec![0; sym.arity];
                for idx in 0..classes.pow(sym.arity as u32) {
                    crate::orbit::index_tuple(classes, sym.arity, idx, &mut t);
                    if t.iter().copied().max() == Some(layer) {
                        atoms.push((rel, t.clone()));
                    }
                }
            }
        }
        let mut watch = vec![Vec::new(); sig.len()];
        for (b, bound) in template.bounds().iter().enumerate() {
            for (l, lit) in bound.literals().iter().enumerate() {
                if let Atom::Rel { rel, .. } = lit.atom {
                    watch[rel].push((b, l));
                }
            }
        }
        ClassSearch { template, rgs, classes, values, atoms, watch, found: Vec::new() }
    }

    fn run(mut self) -> Vec<Orbit> {
        // bounds made of equality literals only are decided by the pattern alone
        for bound in self.template.bounds() {
            let mut map = vec![None; bound.var_count()];
            if self.extends_to_match(bound.literals(), &mut map, 0) {
                return Vec::new();
            }
        }
        self.dfs(0);
        self.found
    }

    fn dfs(&mut self, next: usize) {
        if next == self.atoms.len() {
            let orbit = self.materialize();
            self.found.push(orbit);
            return;
        }
        let (rel, tuple) = self.atoms[next].clone();
        let idx = tuple_index(self.classes, &tuple);
        for value in [true, false] {
            self.values[rel][idx] = value as i8;
            if !self.completes_bound(rel, &tuple, value) {
                self.dfs(next + 1);
            }
        }
        self.values[rel][idx] = -1;
    }

    /// Whether the assignment `rel(tuple) = value` completes a realization of
    /// some bound.
    fn completes_bound(&self, rel: usize, tuple: &[usize], value: bool) -> bool {
        for &(b, l) in &self.watch[rel] {
            let bound = &self.template.bounds()[b];
            let lit = &bound.literals()[l];
            if lit.positive != value {
                continue;
            }
            let Atom::Rel { args, .. } = &lit.atom else { unreachable!() };
            let mut map = vec![None; bound.var_count()];
            let mut ok = true;
            for (k, &var) in args.iter().enumerate() {
                match map[var] {
                    Some(c) if c != tuple[k] => {
                        ok = false;
                        break;
                    }
                    _ => map[var] = Some(tuple[k]),
                }
            }
            if ok && self.extends_to_match(bound.literals(), &mut map, 0) {
                return true;
            }
        }
        false
    }

    fn extends_to_match(&self, literals: &[crate::structure::Literal], map: &mut [Option<usize>], var: usize) -> bool {
        if var == map.len() {
            let full: Vec<usize> = map.iter().map(|m| m.unwrap()).collect();
            return literals.iter().all(|l| self.definitely(l.positive, &l.atom, &full));
        }
        if map[var].is_some() {
            return self.extends_to_match(literals, map, var + 1);
        }
        for c in 0..self.classes {
            map[var] = Some(c);
            if self.extends_to_match(literals, map, var + 1) {
                map[var] = None;
                return true;
            }
        }
        map[var] = None;
        false
    }

    fn definitely(&self, positive: bool, atom: &Atom, map: &[usize]) -> bool {
        match atom {
            Atom::Eq(i, j) => (map[*i] == map[*j]) == positive,
            Atom::Rel { rel, args } => {
                let idx = args.iter().fold(0, |acc, &a| acc * self.classes + map[a]);
                match self.values[*rel][idx] {
                    -1 => false,
                    v => (v == 1) == positive,
                }
            }
        }
    }

    fn materialize(&self) -> Orbit {
        let rgs = self.rgs;
        Orbit::build(self.template.signature(), rgs, |rel, pos| {
            let idx = pos.iter().fold(0, |acc, &p| acc * self.classes + rgs[p]);
            self.values[rel][idx] == 1
        })
    }
}

/// Valid orbits of one length with a reverse index.
#[derive(Debug)]
pub struct OrbitTable {
    n: usize,
    orbits: Vec<Orbit>,
    index: HashMap<Orbit, u32>,
}

impl OrbitTable {
    fn new(n: usize, orbits: Vec<Orbit>) -> Self {
        let index = orbits.iter().enumerate().map(|(i, o)| (o.clone(), i as u32)).collect();
        OrbitTable { n, orbits, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn get(&self, index: u32) -> &Orbit {
        &self.orbits[index as usize]
    }

    pub fn index_of(&self, orbit: &Orbit) -> Option<u32> {
        self.index.get(orbit).copied()
    }

    pub fn label(&self, index: u32) -> OrbitLabel {
        OrbitLabel { n: self.n, index }
    }
}

type ProjectionCache = HashMap<(usize, Vec<usize>), Arc<[u32]>>;

/// A template together with lazily built orbit tables and restriction maps.
/// Shared (behind `Arc`) by reducts, reductions, actions and oracles.
#[derive(Debug)]
pub struct OrbitSpace {
    template: Template,
    limits: Limits,
    tables: Mutex<HashMap<usize, Arc<OrbitTable>>>,
    projections: Mutex<ProjectionCache>,
}

impl OrbitSpace {
    /// A space with [`Limits::from_env`].
    pub fn new(template: Template) -> Arc<Self> {
        OrbitSpace::with_limits(template, Limits::from_env())
    }

    pub fn with_limits(template: Template, limits: Limits) -> Arc<Self> {
        Arc::new(OrbitSpace {
            template,
            limits,
            tables: Mutex::new(HashMap::new()),
            projections: Mutex::new(HashMap::new()),
        })
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn signature(&self) -> &crate::structure::Signature {
        self.template.signature()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn table(&self, n: usize) -> Result<Arc<OrbitTable>> {
        self.limits.check(n)?;
        let mut tables = self.tables.lock().unwrap();
        if let Some(t) = tables.get(&n) {
            return Ok(t.clone());
        }
        let t = Arc::new(OrbitTable::new(n, enumerate_orbits_with(&self.template, n, &self.limits)?));
        tables.insert(n, t.clone());
        Ok(t)
    }

    /// Index of a valid orbit in its table.
    pub fn index_of(&self, orbit: &Orbit) -> Result<u32> {
        self.table(orbit.n())?
            .index_of(orbit)
            .ok_or_else(|| Error::InvalidOrbit(format!("not a valid orbit: {}", orbit.describe(self.signature()))))
    }

    pub fn label_of(&self, orbit: &Orbit) -> Result<OrbitLabel> {
        Ok(OrbitLabel { n: orbit.n(), index: self.index_of(orbit)? })
    }

    pub fn orbit(&self, label: OrbitLabel) -> Result<Orbit> {
        let t = self.table(label.n)?;
        if label.index as usize >= t.len() {
            return Err(Error::InvalidOrbit(format!("no orbit {label}")));
        }
        Ok(t.get(label.index).clone())
    }

    /// For every `n`-orbit, the index of the orbit induced on `positions`
    /// (repeats allowed).
    pub fn projection(&self, n: usize, positions: &[usize]) -> Result<Arc<[u32]>> {
        let key = (n, positions.to_vec());
        if let Some(p) = self.projections.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let source = self.table(n)?;
        let target = self.table(positions.len())?;
        let map: Arc<[u32]> = source
            .orbits()
            .iter()
            .map(|o| target.index_of(&o.induced(positions)).expect("induced types of valid orbits are valid"))
            .collect();
        self.projections.lock().unwrap().insert(key, map.clone());
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::structure::Signature;

    /// Independent brute force: every equality pattern times every subset of
    /// position-level facts, filtered by congruence and bound avoidance.
    fn brute_force(template: &Template, n: usize) -> Vec<Orbit> {
        let sig = template.signature();
        let tuples: Vec<(usize, Vec<usize>)> = sig
            .relations()
            .iter()
            .enumerate()
            .flat_map(|(rel, r)| {
                let mut v = Vec::new();
                let mut t = vec![0; r.arity];
                for idx in 0..n.pow(r.arity as u32) {
                    crate::orbit::index_tuple(n, r.arity, idx, &mut t);
                    v.push((rel, t.clone()));
                }
                v
            })
            .collect();
        let mut out = Vec::new();
        let mut rgs = vec![0; n];
        for_each_rgs(&mut rgs, 1, 0, &mut |rgs| {
            for mask in 0u64..(1 << tuples.len()) {
                let mut facts = vec![Vec::new(); sig.len()];
                for (i, (rel, t)) in tuples.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        facts[*rel].push(t.clone());
                    }
                }
                let o = Orbit::from_facts(sig, rgs, &facts).unwrap();
                if o.is_congruent() && !template.bounds().iter().any(|b| o.realizes(b)) {
                    out.push(o);
                }
            }
        });
        out.sort();
        out
    }

    #[test]
    fn q_order_counts() {
        let t = catalog::q_order();
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_orbits(&t, n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 13, 75]);
    }

    #[test]
    fn q_order_pairs_are_eq_less_greater() {
        let t = catalog::q_order();
        let pairs = enumerate_orbits(&t, 2).unwrap();
        assert!(!pairs[0].is_injective());
        assert!(pairs[1].holds(0, &[0, 1]));
        assert!(pairs[2].holds(0, &[1, 0]));
    }

    #[test]
    fn equality_and_random_graph_counts() {
        assert_eq!(enumerate_orbits(&catalog::equality(), 1).unwrap().len(), 1);
        assert_eq!(enumerate_orbits(&catalog::equality(), 4).unwrap().len(), 15);
        assert_eq!(enumerate_orbits(&catalog::random_graph(), 2).unwrap().len(), 3);
    }

    #[test]
    fn matches_brute_force_on_small_templates() {
        for t in [catalog::q_order(), catalog::random_graph(), catalog::unary(2).unwrap(), catalog::equality()] {
            for n in 1..=3usize {
                if t.signature().relations().iter().map(|r| n.pow(r.arity as u32)).sum::<usize>() > 16 {
                    continue;
                }
                assert_eq!(enumerate_orbits(&t, n).unwrap(), brute_force(&t, n), "n={n}");
            }
        }
        let h = catalog::hypergraph_ordered();
        assert_eq!(enumerate_orbits(&h, 2).unwrap(), brute_force(&h, 2));
    }

    #[test]
    fn capacity_error() {
        let t = catalog::equality();
        assert!(matches!(enumerate_orbits(&t, 8), Err(Error::Capacity { n: 8, limit: 7 })));
        assert!(enumerate_orbits_with(&t, 8, &Limits::with_max_n(8)).is_ok());
        let tight = Limits { max_n: 7, max_orbits: 10 };
        assert!(matches!(enumerate_orbits_with(&t, 4, &tight), Err(Error::OrbitLimit { .. })));
    }

    #[test]
    fn projection_table_matches_direct_restriction() {
        let space = OrbitSpace::new(catalog::q_order());
        let proj = space.projection(3, &[2, 0]).unwrap();
        let t3 = space.table(3).unwrap();
        let t2 = space.table(2).unwrap();
        for (i, o) in t3.orbits().iter().enumerate() {
            assert_eq!(t2.get(proj[i]), &o.restrict(&[2, 0]).unwrap());
        }
    }

    #[test]
    fn unconstrained_signature_is_all_fact_sets() {
        let sig = Signature::of(&[("P", 1)]).unwrap();
        let t = Template::new(sig, vec![]).unwrap();
        // partitions with c classes, each class P or not: 2 + 1*4 = 6 for n = 2
        assert_eq!(enumerate_orbits(&t, 2).unwrap().len(), 6);
    }
}
