//! (a,b)-minimality run directly on instances over a reduct, and the
//! literal route through a finite-domain encoding whose variables are
//! `w'`-subsets.
//!
//! Domains live on every subset of at most `a` variables and hold orbits of
//! that subset (variables in ascending order). Every `b`-subset `T` computes
//! the valid `b`-orbits compatible with all domains inside it and all
//! constraints it covers, and prunes each small subset of `T` to the
//! restrictions of the survivors. Pruning is monotone, so the fixpoint does
//! not depend on the processing order.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reduct::{restrict_mask, Instance, Reduct, ResolvedConstraint};
use crate::reduction::combinations;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    fn empty(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(64)] }
    }

    fn full(len: usize) -> Self {
        let mut b = Bits::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Intersects in place; returns whether anything was removed.
    fn and_assign(&mut self, other: &Bits) -> bool {
        let mut changed = false;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            let n = *a & b;
            changed |= n != *a;
            *a = n;
        }
        changed
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

/// Order in which `b`-subsets are processed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    /// One subset at a time, lexicographic order, repeated over dirty
    /// subsets.
    #[default]
    Canonical,
    /// As `Canonical`, reverse lexicographic order.
    Reversed,
    /// All dirty subsets of a round in parallel against the domains at the
    /// start of the round; proposals are intersected.
    Rounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimalityStatus {
    Refuted,
    Fixpoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetDomain {
    pub vars: Vec<usize>,
    /// Allowed orbits of `vars.len()`-tuples, ascending.
    pub orbits: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub a: usize,
    pub b: usize,
    pub status: MinimalityStatus,
    /// Final domains (only on a fixpoint), subsets by size then
    /// lexicographically.
    pub domains: Option<Vec<SubsetDomain>>,
    /// Per subset size `1..=a`, total orbits removed from the full domains.
    pub pruned_counts: Vec<usize>,
    pub rounds: usize,
    /// Some constraint was wider than `b` and only enforced through its
    /// projections.
    pub incomplete_enforcement: bool,
}

impl MinimalityReport {
    pub fn is_refuted(&self) -> bool {
        self.status == MinimalityStatus::Refuted
    }

    pub fn domain(&self, vars: &[usize]) -> Option<&[u32]> {
        self.domains.as_ref()?.iter().find(|d| d.vars == vars).map(|d| d.orbits.as_slice())
    }

    pub fn to_json(&self, variables: &[String]) -> serde_json::Value {
        let domains = self.domains.as_ref().map(|ds| {
            ds.iter()
                .map(|d| {
                    let key = d.vars.iter().map(|&v| variables[v].as_str()).collect::<Vec<_>>().join(",");
                    let labels: Vec<String> = d.orbits.iter().map(|o| format!("{}:O{o}", d.vars.len())).collect();
                    (key, serde_json::json!(labels))
                })
                .collect::<serde_json::Map<_, _>>()
        });
        let mut v = serde_json::json!({
            "status": self.status,
            "a": self.a,
            "b": self.b,
            "prunedCounts": self.pruned_counts,
            "rounds": self.rounds,
            "incompleteEnforcement": self.incomplete_enforcement,
        });
        if let Some(d) = domains {
            v["domains"] = serde_json::Value::Object(d);
        }
        v
    }
}

pub fn ab_minimality(reduct: &Reduct, instance: &Instance, a: usize, b: usize) -> Result<MinimalityReport> {
    ab_minimality_with(reduct, instance, a, b, Schedule::Canonical)
}

pub fn ab_minimality_with(
    reduct: &Reduct,
    instance: &Instance,
    a: usize,
    b: usize,
    schedule: Schedule,
) -> Result<MinimalityReport> {
    if a == 0 || a > b {
        return Err(Error::InvalidParameters(format!("need 1 <= a <= b, got a={a}, b={b}")));
    }
    if b < reduct.base().max_arity() {
        return Err(Error::InvalidParameters(format!(
            "b={b} is below the maximal arity {} of the base",
            reduct.base().max_arity()
        )));
    }
    let resolved = reduct.resolve(instance)?;
    let mut engine = Engine::new(reduct, &resolved.constraints, resolved.n, a, b)?;
    let refuted = engine.run(schedule);
    Ok(engine.report(a, b, refuted))
}

/// (2w', 3w')-minimality: the parameters at which minimality on the
/// original instance matches (2,3)-minimality on the encoding over
/// `w'`-subsets.
pub fn reduced_minimality(reduct: &Reduct, instance: &Instance) -> Result<MinimalityReport> {
    reduced_minimality_with(reduct, instance, 2)
}

pub fn reduced_minimality_with(reduct: &Reduct, instance: &Instance, w_prime: usize) -> Result<MinimalityReport> {
    ab_minimality(reduct, instance, 2 * w_prime, 3 * w_prime)
}

struct Engine {
    /// Subsets of size `1..=a`, by size then lexicographically.
    subsets: Vec<Vec<usize>>,
    domains: Vec<Bits>,
    /// `b`-subsets.
    blocks: Vec<Vec<usize>>,
    /// Position subsets of `0..b` of size `1..=a`, with their projection maps.
    position_sets: Vec<(Vec<usize>, Arc<[u32]>)>,
    /// `sub_index[t][p]`: subset index of `blocks[t]` at `position_sets[p]`.
    sub_index: Vec<Vec<usize>>,
    supersets: Vec<Vec<usize>>,
    /// Per block, the `b`-orbits allowed by the constraints it covers.
    candidates: Vec<Vec<u32>>,
    incomplete: bool,
    rounds: usize,
}

impl Engine {
    fn new(reduct: &Reduct, constraints: &[ResolvedConstraint], n: usize, a: usize, b: usize) -> Result<Self> {
        let space = reduct.space().clone();
        let b = b.min(n);
        let a = a.min(b);
        let block_table = space.table(b)?;

        let mut subsets = Vec::new();
        for s in 1..=a {
            subsets.extend(combinations(n, s));
        }
        let subset_index: HashMap<Vec<usize>, usize> =
            subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

        let mut domains = Vec::with_capacity(subsets.len());
        for s in &subsets {
            let table = space.table(s.len())?;
            let mut d = Bits::full(table.len());
            for c in constraints.iter().filter(|c| c.vars.iter().all(|v| s.contains(v))) {
                let mask = constraint_mask(reduct, c, s)?;
                for (o, _) in mask.iter().enumerate().filter(|(_, &m)| !m) {
                    d.remove(o);
                }
            }
            domains.push(d);
        }

        let blocks = combinations(n, b);
        let mut position_sets = Vec::new();
        for s in 1..=a {
            for p in combinations(b, s) {
                let proj = space.projection(b, &p)?;
                position_sets.push((p, proj));
            }
        }
        let mut sub_index = Vec::with_capacity(blocks.len());
        let mut supersets = vec![Vec::new(); subsets.len()];
        for (t, block) in blocks.iter().enumerate() {
            let row: Vec<usize> = position_sets
                .iter()
                .map(|(p, _)| subset_index[&p.iter().map(|&i| block[i]).collect::<Vec<_>>()])
                .collect();
            for &s in &row {
                supersets[s].push(t);
            }
            sub_index.push(row);
        }

        let mut incomplete = false;
        let mut wide_masks: HashMap<(usize, Vec<usize>), Vec<bool>> = HashMap::new();
        let mut candidates = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut ok = vec![true; block_table.len()];
            for (ci, c) in constraints.iter().enumerate() {
                if c.vars.iter().all(|v| block.contains(v)) {
                    let mask = constraint_mask(reduct, c, block)?;
                    for (o, m) in ok.iter_mut().zip(mask) {
                        *o &= m;
                    }
                } else if c.vars.len() > b {
                    incomplete = true;
                    // enforce the projection onto the variables inside the block
                    let inside: Vec<usize> = block.iter().copied().filter(|v| c.vars.contains(v)).collect();
                    if inside.is_empty() {
                        continue;
                    }
                    let key = (ci, inside.clone());
                    if !wide_masks.contains_key(&key) {
                        let rel = &reduct.relations()[c.relation];
                        let q: Vec<usize> =
                            inside.iter().map(|v| c.scope.iter().position(|u| u == v).unwrap()).collect();
                        wide_masks.insert(key.clone(), restrict_mask(&space, rel.arity(), rel.mask(), &q)?);
                    }
                    let sub = &wide_masks[&key];
                    let pos: Vec<usize> = inside.iter().map(|v| block.iter().position(|u| u == v).unwrap()).collect();
                    let proj = space.projection(b, &pos)?;
                    for (o, m) in ok.iter_mut().enumerate() {
                        *m &= sub[proj[o] as usize];
                    }
                }
            }
            candidates.push(ok.iter().enumerate().filter(|(_, &m)| m).map(|(o, _)| o as u32).collect());
        }

        Ok(Engine { subsets, domains, blocks, position_sets, sub_index, supersets, candidates, incomplete, rounds: 0 })
    }

    /// New domains proposed by block `t` for each of its small subsets.
    fn process(&self, t: usize, domains: &[Bits]) -> Vec<(usize, Bits)> {
        let row = &self.sub_index[t];
        let mut proposals: Vec<Bits> = row.iter().map(|&s| Bits::empty(domains[s].len)).collect();
        'orbits: for &o in &self.candidates[t] {
            for (p, (_, proj)) in self.position_sets.iter().enumerate() {
                if !domains[row[p]].contains(proj[o as usize] as usize) {
                    continue 'orbits;
                }
            }
            for (p, (_, proj)) in self.position_sets.iter().enumerate() {
                proposals[p].insert(proj[o as usize] as usize);
            }
        }
        row.iter().copied().zip(proposals).collect()
    }

    /// Runs to a fixpoint; returns whether some domain became empty.
    fn run(&mut self, schedule: Schedule) -> bool {
        if self.domains.iter().any(Bits::is_empty) {
            return true;
        }
        let mut dirty = vec![true; self.blocks.len()];
        match schedule {
            Schedule::Canonical | Schedule::Reversed => loop {
                let order: Vec<usize> = if schedule == Schedule::Canonical {
                    (0..self.blocks.len()).collect()
                } else {
                    (0..self.blocks.len()).rev().collect()
                };
                let mut any = false;
                for t in order {
                    if !dirty[t] {
                        continue;
                    }
                    dirty[t] = false;
                    any = true;
                    for (s, proposal) in self.process(t, &self.domains) {
                        if self.domains[s].and_assign(&proposal) {
                            if self.domains[s].is_empty() {
                                self.rounds += 1;
                                return true;
                            }
                            for &u in &self.supersets[s] {
                                if u != t {
                                    dirty[u] = true;
                                }
                            }
                        }
                    }
                }
                if !any {
                    return false;
                }
                self.rounds += 1;
            },
            Schedule::Rounds => loop {
                let work: Vec<usize> = (0..self.blocks.len()).filter(|&t| dirty[t]).collect();
                if work.is_empty() {
                    return false;
                }
                self.rounds += 1;
                dirty.iter_mut().for_each(|d| *d = false);
                let proposals: Vec<Vec<(usize, Bits)>> =
                    work.par_iter().map(|&t| self.process(t, &self.domains)).collect();
                let mut changed = vec![false; self.subsets.len()];
                for list in proposals {
                    for (s, p) in list {
                        changed[s] |= self.domains[s].and_assign(&p);
                    }
                }
                for (s, &c) in changed.iter().enumerate() {
                    if c {
                        if self.domains[s].is_empty() {
                            return true;
                        }
                        for &u in &self.supersets[s] {
                            dirty[u] = true;
                        }
                    }
                }
            },
        }
    }

    fn report(&self, a: usize, b: usize, refuted: bool) -> MinimalityReport {
        let mut pruned = vec![0usize; a];
        for (s, d) in self.subsets.iter().zip(&self.domains) {
            pruned[s.len() - 1] += d.len - d.count();
        }
        let domains = (!refuted).then(|| {
            self.subsets
                .iter()
                .zip(&self.domains)
                .map(|(s, d)| SubsetDomain { vars: s.clone(), orbits: d.iter().map(|o| o as u32).collect() })
                .collect()
        });
        MinimalityReport {
            a,
            b,
            status: if refuted { MinimalityStatus::Refuted } else { MinimalityStatus::Fixpoint },
            domains,
            pruned_counts: pruned,
            rounds: self.rounds,
            incomplete_enforcement: self.incomplete,
        }
    }
}

/// Mask over the orbits of `set` (ascending variables) of those satisfying
/// `c`, whose variables all lie in `set`.
fn constraint_mask(reduct: &Reduct, c: &ResolvedConstraint, set: &[usize]) -> Result<Vec<bool>> {
    let rel = &reduct.relations()[c.relation];
    let positions: Vec<usize> = c.scope.iter().map(|v| set.iter().position(|u| u == v).unwrap()).collect();
    let proj = reduct.space().projection(set.len(), &positions)?;
    Ok(proj.iter().map(|&r| rel.contains(r)).collect())
}

/// Outcome of the literal route: encode over `w'`-subsets, then run
/// (a,b)-minimality on the finite-domain encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedMinimality {
    pub refuted: bool,
    /// Number of variables of the encoding.
    pub variables: usize,
    pub passes: usize,
}

/// A finite-domain constraint with a sorted scope of distinct variables.
#[derive(Clone, Debug)]
struct Relation {
    scope: Vec<usize>,
    tuples: Vec<Vec<u32>>,
}

impl Relation {
    fn sorted(scope: &[usize], tuples: Vec<Vec<u32>>) -> Relation {
        let mut order: Vec<usize> = (0..scope.len()).collect();
        order.sort_by_key(|&i| scope[i]);
        let scope = order.iter().map(|&i| scope[i]).collect();
        let mut tuples: Vec<Vec<u32>> = tuples.into_iter().map(|t| order.iter().map(|&i| t[i]).collect()).collect();
        tuples.sort();
        tuples.dedup();
        Relation { scope, tuples }
    }
}

/// A scope with its allowed tuples.
pub type TableConstraint = (Vec<usize>, Vec<Vec<u32>>);

/// The finite encoding whose variables are the `w'`-subsets of the
/// instance's variables and whose values are `w'`-orbits. Each original
/// constraint becomes a table over the subsets inside its scope (or over
/// each subset containing a smaller scope); each subset of `s` variables,
/// with `s` large enough for bounds, transitivity and congruence, gets the
/// table of projections of the valid `s`-orbits.
pub fn encode_over_subsets(
    reduct: &Reduct,
    instance: &Instance,
    w_prime: usize,
) -> Result<(Vec<Vec<usize>>, usize, Vec<TableConstraint>)> {
    let resolved = reduct.resolve(instance)?;
    let n = resolved.n;
    let w = w_prime.min(n).max(1);
    let space = reduct.space();
    let vars = combinations(n, w);
    let var_index: HashMap<Vec<usize>, usize> = vars.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let d = space.table(w)?.len();
    let mut out = Vec::new();

    let mut table_for = |set: &[usize], allowed: &dyn Fn(usize) -> bool| -> Result<()> {
        let table = space.table(set.len())?;
        let inner = combinations(set.len(), w);
        let scope: Vec<usize> =
            inner.iter().map(|p| var_index[&p.iter().map(|&i| set[i]).collect::<Vec<_>>()]).collect();
        let projs: Vec<Arc<[u32]>> = inner.iter().map(|p| space.projection(set.len(), p)).collect::<Result<_>>()?;
        let tuples = (0..table.len()).filter(|&o| allowed(o)).map(|o| projs.iter().map(|p| p[o]).collect()).collect();
        out.push((scope, tuples));
        Ok(())
    };

    for c in &resolved.constraints {
        let mut u = c.vars.clone();
        u.sort_unstable();
        if u.len() >= w {
            let mask = constraint_mask(reduct, c, &u)?;
            table_for(&u, &|o| mask[o])?;
        } else {
            for set in vars.iter().filter(|s| u.iter().all(|v| s.contains(v))) {
                let mask = constraint_mask(reduct, c, set)?;
                table_for(set, &|o| mask[o])?;
            }
        }
    }
    let base = reduct.base();
    let s = (w + 1).max(base.max_bound_size()).max(base.max_arity() + 1).max(3).min(n);
    if s > w {
        for set in combinations(n, s) {
            table_for(&set, &|_| true)?;
        }
    }
    Ok((vars, d, out))
}

/// (a,b)-minimality on a finite-domain instance given by table constraints
/// over variables `0..m` with domain `0..d`. Every subset of at most `b`
/// variables carries a relation; relations and the original constraints are
/// pruned until their projections to every subset of at most `a` variables
/// agree.
pub fn finite_ab_minimality(m: usize, d: usize, constraints: &[TableConstraint], a: usize, b: usize) -> (bool, usize) {
    let b = b.min(m);
    let a = a.min(b);
    let mut rels: Vec<Relation> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 1..=b {
        for set in combinations(m, s) {
            let mut tuples = Vec::new();
            let mut t = vec![0usize; s];
            for idx in 0..d.pow(s as u32) {
                crate::orbit::index_tuple(d, s, idx, &mut t);
                tuples.push(t.iter().map(|&v| v as u32).collect());
            }
            index.insert(set.clone(), rels.len());
            rels.push(Relation { scope: set, tuples });
        }
    }
    for (scope, tuples) in constraints {
        let r = Relation::sorted(scope, tuples.clone());
        match index.get(&r.scope) {
            Some(&i) => {
                let keep: std::collections::HashSet<&Vec<u32>> = r.tuples.iter().collect();
                rels[i].tuples.retain(|t| keep.contains(t));
            }
            None => rels.push(r),
        }
    }
    if rels.iter().any(|r| r.tuples.is_empty()) {
        return (true, 0);
    }
    // every small subset with the relations containing it and its positions
    // (size, [(relation, positions of the subset in its scope)])
    type Incidence = (usize, Vec<(usize, Vec<usize>)>);
    let mut small: Vec<Incidence> = Vec::new();
    let mut small_index: HashMap<Vec<usize>, usize> = HashMap::new();
    for (ri, r) in rels.iter().enumerate() {
        for s in 1..=a.min(r.scope.len()) {
            for p in combinations(r.scope.len(), s) {
                let set: Vec<usize> = p.iter().map(|&i| r.scope[i]).collect();
                let k = *small_index.entry(set).or_insert_with(|| {
                    small.push((s, Vec::new()));
                    small.len() - 1
                });
                small[k].1.push((ri, p));
            }
        }
    }
    let key = |t: &[u32], p: &[usize]| p.iter().fold(0usize, |acc, &i| acc * d + t[i] as usize);
    let mut passes = 0;
    loop {
        passes += 1;
        let mut changed = false;
        for (size, members) in &small {
            let mut allowed = vec![true; d.pow(*size as u32)];
            for (ri, p) in members {
                let mut seen = vec![false; allowed.len()];
                for t in &rels[*ri].tuples {
                    seen[key(t, p)] = true;
                }
                for (x, s) in allowed.iter_mut().zip(seen) {
                    *x &= s;
                }
            }
            for (ri, p) in members {
                let before = rels[*ri].tuples.len();
                rels[*ri].tuples.retain(|t| allowed[key(t, p)]);
                if rels[*ri].tuples.len() != before {
                    changed = true;
                    if rels[*ri].tuples.is_empty() {
                        return (true, passes);
                    }
                }
            }
        }
        if !changed {
            return (false, passes);
        }
    }
}

/// Encode over `w'`-subsets, then (2,3)-minimality on the encoding.
pub fn reduce_then_minimality(reduct: &Reduct, instance: &Instance, w_prime: usize) -> Result<EncodedMinimality> {
    let (vars, d, constraints) = encode_over_subsets(reduct, instance, w_prime)?;
    let (refuted, passes) = finite_ab_minimality(vars.len(), d, &constraints, 2, 3);
    Ok(EncodedMinimality { refuted, variables: vars.len(), passes })
}
