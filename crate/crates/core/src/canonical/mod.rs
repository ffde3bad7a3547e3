//! Actions of canonical functions on orbits.
//!
//! An [`OrbitAction`] of arity `l` and depth `d` assigns to every `l`-tuple of
//! `n`-orbits (`n <= d`) an output `n`-orbit. Tables are dense, indexed in
//! mixed radix with the first argument most significant, so iterating cells
//! in index order visits argument tuples in canonical order. Every cell
//! carries a flag telling whether its value was chosen to complete a partial
//! specification rather than fixed by the construction itself.

mod fixtures;
mod hypergraph;
mod identity;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::orbit::{Orbit, OrbitLabel};
use crate::structure::Signature;

pub use fixtures::{inj_action, lex_action, projection_action, semilattice_action, siggers_injection};
pub use hypergraph::{build_f_action, build_g_action, build_h_action, build_m_action, hypergraph_space, MKind};
pub use identity::{check_identity, Identity, IdentityCheck, IdentityOutcome};

const MAX_CELLS: usize = 40_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    /// `None` when the rule produced no valid orbit.
    pub out: Option<u32>,
    pub completed: bool,
}

#[derive(Clone, Debug)]
pub struct OrbitAction {
    name: String,
    arity: usize,
    depth: usize,
    space: Arc<OrbitSpace>,
    /// `tables[n - 1]`, length `radix(n)^arity`.
    tables: Vec<Vec<Cell>>,
    radix: Vec<usize>,
}

/// An argument of a composite term: a variable, or an action applied to all
/// variables of the composite.
#[derive(Clone, Copy, Debug)]
pub enum Term<'a> {
    Arg(usize),
    Action(&'a OrbitAction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// No valid output orbit.
    Undefined,
    /// Restricting the output differs from acting on restricted arguments.
    Restriction,
    /// Positions equal in every argument are separated in the output.
    FunctionRespect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub n: usize,
    pub args: Vec<u32>,
    pub detail: String,
}

/// Two argument tuples whose projections agree while their projected
/// outputs differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicityWitness {
    pub n: usize,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub left_out: u32,
    pub right_out: u32,
}

pub(crate) fn decode(mut idx: usize, radix: usize, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % radix) as u32;
        idx /= radix;
    }
}

pub(crate) fn encode(args: &[u32], radix: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * radix + a as usize)
}

impl OrbitAction {
    /// Tabulates `rule` on every argument tuple. The rule returns the output
    /// orbit and whether the value is a completion choice; outputs that are
    /// not valid orbits are stored as undefined.
    pub fn from_rule<F>(space: &Arc<OrbitSpace>, name: &str, arity: usize, depth: usize, rule: F) -> Result<Self>
    where
        F: Fn(&[&Orbit]) -> (Orbit, bool) + Sync,
    {
        let mut tables = Vec::with_capacity(depth);
        for n in 1..=depth {
            let table = space.table(n)?;
            let radix = table.len();
            let size = checked_size(radix, arity)?;
            let cells = (0..size)
                .into_par_iter()
                .map(|idx| {
                    let mut args = vec![0u32; arity];
                    decode(idx, radix, &mut args);
                    let orbits: Vec<&Orbit> = args.iter().map(|&a| table.get(a)).collect();
                    let (out, completed) = rule(&orbits);
                    Cell { out: table.index_of(&out), completed }
                })
                .collect();
            tables.push(cells);
        }
        Self::from_cells(space, name, arity, depth, tables)
    }

    /// An action from explicit tables (`tables[n - 1]` indexed as described
    /// in the module docs).
    pub fn from_cells(
        space: &Arc<OrbitSpace>,
        name: &str,
        arity: usize,
        depth: usize,
        tables: Vec<Vec<Cell>>,
    ) -> Result<Self> {
        if arity == 0 || depth == 0 {
            return Err(Error::InvalidAction("arity and depth must be positive".into()));
        }
        if tables.len() != depth {
            return Err(Error::InvalidAction(format!("expected {depth} tables, got {}", tables.len())));
        }
        let mut radix = Vec::with_capacity(depth);
        for (i, t) in tables.iter().enumerate() {
            let r = space.table(i + 1)?.len();
            if t.len() != checked_size(r, arity)? {
                return Err(Error::InvalidAction(format!("table for length {} has {} cells", i + 1, t.len())));
            }
            if let Some(bad) = t.iter().filter_map(|c| c.out).find(|&o| o as usize >= r) {
                return Err(Error::InvalidAction(format!("no {}-orbit with index {bad}", i + 1)));
            }
            radix.push(r);
        }
        Ok(OrbitAction { name: name.to_string(), arity, depth, space: space.clone(), tables, radix })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn space(&self) -> &Arc<OrbitSpace> {
        &self.space
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Number of `n`-orbits.
    pub fn radix(&self, n: usize) -> usize {
        self.radix[n - 1]
    }

    pub fn cells(&self, n: usize) -> &[Cell] {
        &self.tables[n - 1]
    }

    pub fn cell(&self, n: usize, args: &[u32]) -> Cell {
        self.tables[n - 1][encode(args, self.radix[n - 1])]
    }

    pub fn apply(&self, n: usize, args: &[u32]) -> Option<u32> {
        self.cell(n, args).out
    }

    /// Output orbit for argument orbits of a common length `<= depth`.
    pub fn apply_orbits(&self, args: &[&Orbit]) -> Result<Option<Orbit>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch(format!("`{}` takes {} arguments", self.name, self.arity)));
        }
        let n = args[0].n();
        if n == 0 || n > self.depth || args.iter().any(|a| a.n() != n) {
            return Err(Error::InvalidAction(format!("arguments must share a length between 1 and {}", self.depth)));
        }
        let table = self.space.table(n)?;
        let idx: Vec<u32> = args
            .iter()
            .map(|a| table.index_of(a).ok_or_else(|| Error::InvalidOrbit(a.describe(self.space.signature()))))
            .collect::<Result<_>>()?;
        Ok(self.apply(n, &idx).map(|o| table.get(o).clone()))
    }

    pub fn completed_cells(&self) -> usize {
        self.tables.iter().flatten().filter(|c| c.completed).count()
    }

    /// The composite `outer(t_1, …, t_k)` as an action of arity `arity`.
    /// A composite cell is flagged completed if any consulted cell is.
    pub fn compose(name: &str, outer: &OrbitAction, inners: &[Term<'_>], arity: usize) -> Result<Self> {
        if inners.len() != outer.arity {
            return Err(Error::ArityMismatch(format!(
                "`{}` takes {} arguments, got {}",
                outer.name,
                outer.arity,
                inners.len()
            )));
        }
        for t in inners {
            match t {
                Term::Arg(i) if *i >= arity => {
                    return Err(Error::ArityMismatch(format!("argument {} of a {arity}-ary composite", i + 1)))
                }
                Term::Action(a) if a.arity != arity => {
                    return Err(Error::ArityMismatch(format!(
                        "`{}` has arity {}, composite has {arity}",
                        a.name, a.arity
                    )))
                }
                Term::Action(a) if !Arc::ptr_eq(&a.space, &outer.space) || a.depth != outer.depth => {
                    return Err(Error::InvalidAction(format!(
                        "`{}` and `{}` act on different orbit spaces",
                        a.name, outer.name
                    )))
                }
                _ => {}
            }
        }
        let mut tables = Vec::with_capacity(outer.depth);
        for n in 1..=outer.depth {
            let radix = outer.radix(n);
            let size = checked_size(radix, arity)?;
            let cells = (0..size)
                .into_par_iter()
                .map(|idx| {
                    let mut args = vec![0u32; arity];
                    decode(idx, radix, &mut args);
                    let mut completed = false;
                    let mut inner_out = Vec::with_capacity(inners.len());
                    for t in inners {
                        match t {
                            Term::Arg(i) => inner_out.push(args[*i]),
                            Term::Action(a) => {
                                let c = a.tables[n - 1][idx];
                                completed |= c.completed;
                                match c.out {
                                    Some(o) => inner_out.push(o),
                                    None => return Cell { out: None, completed },
                                }
                            }
                        }
                    }
                    let c = outer.cell(n, &inner_out);
                    Cell { out: c.out, completed: completed || c.completed }
                })
                .collect();
            tables.push(cells);
        }
        Self::from_cells(&outer.space, name, arity, outer.depth, tables)
    }

    /// Checks totality, validity, restriction compatibility (under every
    /// injective position map, permutations included) and function respect.
    pub fn check_welldefined(&self) -> Result<Vec<Violation>> {
        let mut violations = Vec::new();
        for n in 1..=self.depth {
            let table = self.space.table(n)?;
            let mut maps = Vec::new();
            for k in 1..n.min(self.depth) + 1 {
                for positions in injective_lists(n, k) {
                    if k == n && positions.iter().enumerate().all(|(i, &p)| i == p) {
                        continue;
                    }
                    maps.push((k, self.space.projection(n, &positions)?, positions));
                }
            }
            let found: Vec<Violation> = (0..self.tables[n - 1].len())
                .into_par_iter()
                .flat_map_iter(|idx| {
                    let mut out = Vec::new();
                    let mut args = vec![0u32; self.arity];
                    decode(idx, self.radix(n), &mut args);
                    let Some(o) = self.tables[n - 1][idx].out else {
                        out.push(Violation {
                            kind: ViolationKind::Undefined,
                            n,
                            args,
                            detail: "no valid output orbit".into(),
                        });
                        return out;
                    };
                    let result = table.get(o);
                    for i in 0..n {
                        for j in i + 1..n {
                            if !result.same(i, j) && args.iter().all(|&a| table.get(a).same(i, j)) {
                                out.push(Violation {
                                    kind: ViolationKind::FunctionRespect,
                                    n,
                                    args: args.clone(),
                                    detail: format!("positions {} and {} are equal in every argument", i + 1, j + 1),
                                });
                            }
                        }
                    }
                    for (k, proj, positions) in &maps {
                        let sub: Vec<u32> = args.iter().map(|&a| proj[a as usize]).collect();
                        let expected = self.apply(*k, &sub);
                        if expected.is_some() && expected != Some(proj[o as usize]) {
                            let shown: Vec<String> = positions.iter().map(|p| (p + 1).to_string()).collect();
                            out.push(Violation {
                                kind: ViolationKind::Restriction,
                                n,
                                args: args.clone(),
                                detail: format!("restriction to positions ({})", shown.join(",")),
                            });
                        }
                    }
                    out
                })
                .collect();
            violations.extend(found);
        }
        Ok(violations)
    }

    /// Whether the action is canonical with respect to the reduct of the base
    /// to `sub`: argument tuples with equal projections must have outputs
    /// with equal projections. With `fixed_only`, completed cells are
    /// ignored.
    pub fn check_canonical_wrt(&self, sub: &Signature, fixed_only: bool) -> Result<Option<CanonicityWitness>> {
        if !sub.is_subsignature_of(self.space.signature()) {
            return Err(Error::InvalidSignature("not a subsignature of the base".into()));
        }
        for n in 1..=self.depth {
            let ids = self.projection_ids(n, sub)?;
            let mut seen: HashMap<Vec<u32>, (Vec<u32>, u32, u32)> = HashMap::new();
            let mut args = vec![0u32; self.arity];
            for (idx, c) in self.tables[n - 1].iter().enumerate() {
                let Some(o) = c.out else { continue };
                if fixed_only && c.completed {
                    continue;
                }
                decode(idx, self.radix(n), &mut args);
                let key: Vec<u32> = args.iter().map(|&a| ids[a as usize]).collect();
                match seen.get(&key) {
                    Some((first, first_out, pid)) if *pid != ids[o as usize] => {
                        return Ok(Some(CanonicityWitness {
                            n,
                            left: first.clone(),
                            right: args.clone(),
                            left_out: *first_out,
                            right_out: o,
                        }));
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(key, (args.clone(), o, ids[o as usize]));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Per `n`-orbit, an id of its projection onto `sub` (equal ids iff
    /// equal projections).
    pub(crate) fn projection_ids(&self, n: usize, sub: &Signature) -> Result<Vec<u32>> {
        let table = self.space.table(n)?;
        let sig = self.space.signature();
        let mut ids: HashMap<Orbit, u32> = HashMap::new();
        table
            .orbits()
            .iter()
            .map(|o| {
                let p = o.project(sig, sub)?;
                let next = ids.len() as u32;
                Ok(*ids.entry(p).or_insert(next))
            })
            .collect()
    }

    /// First argument tuple of orbits in `allowed` (a mask over `k`-orbits)
    /// whose output is not in `allowed`.
    pub fn preserves(&self, k: usize, allowed: &[bool]) -> Result<Option<Vec<u32>>> {
        if k == 0 || k > self.depth || allowed.len() != self.radix(k) {
            return Err(Error::InvalidAction(format!("relation on {k}-orbits does not fit `{}`", self.name)));
        }
        let members: Vec<u32> = (0..allowed.len() as u32).filter(|&o| allowed[o as usize]).collect();
        if members.is_empty() {
            return Ok(None);
        }
        let mut pick = vec![0usize; self.arity];
        let mut args = vec![0u32; self.arity];
        loop {
            for (a, &p) in args.iter_mut().zip(&pick) {
                *a = members[p];
            }
            match self.apply(k, &args) {
                Some(o) if allowed[o as usize] => {}
                _ => return Ok(Some(args)),
            }
            let mut i = self.arity;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < members.len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    pub fn label(&self, n: usize, o: u32) -> String {
        OrbitLabel { n, index: o }.to_string()
    }

    /// Cells keyed by orbit labels; completed cells carry a provenance field.
    pub fn to_json(&self) -> serde_json::Value {
        let mut cells = Vec::new();
        for n in 1..=self.depth {
            let mut args = vec![0u32; self.arity];
            for (idx, c) in self.tables[n - 1].iter().enumerate() {
                decode(idx, self.radix(n), &mut args);
                let mut cell = json!({
                    "args": args.iter().map(|&a| self.label(n, a)).collect::<Vec<_>>(),
                    "out": c.out.map(|o| self.label(n, o)),
                });
                if c.completed {
                    cell["provenance"] = json!("completed");
                }
                cells.push(cell);
            }
        }
        json!({ "name": self.name, "arity": self.arity, "depth": self.depth, "cells": cells })
    }

    /// Inverse of [`OrbitAction::to_json`]; every cell must be listed.
    pub fn from_json(space: &Arc<OrbitSpace>, value: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidAction(m.to_string());
        let name = value["name"].as_str().unwrap_or("action");
        let arity = value["arity"].as_u64().ok_or_else(|| bad("missing arity"))? as usize;
        let depth = value["depth"].as_u64().ok_or_else(|| bad("missing depth"))? as usize;
        let mut tables: Vec<Vec<Option<Cell>>> = Vec::with_capacity(depth);
        let mut radix = Vec::with_capacity(depth);
        for n in 1..=depth {
            let r = space.table(n)?.len();
            tables.push(vec![None; checked_size(r, arity)?]);
            radix.push(r);
        }
        let label = |v: &serde_json::Value| -> Result<OrbitLabel> {
            v.as_str().ok_or_else(|| bad("labels must be strings"))?.parse()
        };
        for cell in value["cells"].as_array().ok_or_else(|| bad("missing cells"))? {
            let args = cell["args"].as_array().ok_or_else(|| bad("cell without args"))?;
            if args.len() != arity {
                return Err(bad("cell with the wrong number of arguments"));
            }
            let labels: Vec<OrbitLabel> = args.iter().map(label).collect::<Result<_>>()?;
            let n = labels[0].n;
            if n == 0 || n > depth || labels.iter().any(|l| l.n != n || l.index as usize >= radix[n - 1]) {
                return Err(bad("argument label out of range"));
            }
            let out = match &cell["out"] {
                serde_json::Value::Null => None,
                v => {
                    let l = label(v)?;
                    if l.n != n || l.index as usize >= radix[n - 1] {
                        return Err(bad("output label out of range"));
                    }
                    Some(l.index)
                }
            };
            let completed = cell["provenance"].as_str() == Some("completed");
            let idx: Vec<u32> = labels.iter().map(|l| l.index).collect();
            tables[n - 1][encode(&idx, radix[n - 1])] = Some(Cell { out, completed });
        }
        let tables = tables
            .into_iter()
            .map(|t| t.into_iter().collect::<Option<Vec<Cell>>>().ok_or_else(|| bad("missing cells")))
            .collect::<Result<_>>()?;
        Self::from_cells(space, name, arity, depth, tables)
    }
}

fn checked_size(radix: usize, arity: usize) -> Result<usize> {
    match radix.checked_pow(arity as u32) {
        Some(s) if s <= MAX_CELLS => Ok(s),
        _ => Err(Error::Unsupported(format!(
            "an action table with {radix}^{arity} cells exceeds the limit of {MAX_CELLS}"
        ))),
    }
}

/// All lists of `k` distinct positions from `0..n`, lexicographically.
pub(crate) fn injective_lists(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in 0..n {
            if !cur.contains(&p) {
                cur.push(p);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// Output classes of a function applied coordinatewise: positions are equal
/// iff equal in every argument.
pub(crate) fn meet_classes(args: &[&Orbit]) -> Vec<usize> {
    let n = args[0].n();
    (0..n).map(|i| (0..=i).find(|&j| args.iter().all(|a| a.same(i, j))).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn q_space() -> Arc<OrbitSpace> {
        OrbitSpace::new(catalog::q_order())
    }

    #[test]
    fn injective_lists_count() {
        assert_eq!(injective_lists(3, 2).len(), 6);
        assert_eq!(injective_lists(3, 3).len(), 6);
        assert_eq!(injective_lists(3, 1), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn projection_is_welldefined_everywhere() {
        for t in [catalog::q_order(), catalog::equality(), catalog::hypergraph_ordered(), catalog::random_graph()] {
            let space = OrbitSpace::new(t);
            let p = projection_action(&space, 2, 0, 3).unwrap();
            assert!(p.check_welldefined().unwrap().is_empty());
        }
    }

    #[test]
    fn contradicting_restriction_is_reported() {
        let space = q_space();
        let t3 = space.table(3).unwrap();
        let constant = t3.orbits().iter().position(|o| o.is_constant()).unwrap() as u32;
        let pi = projection_action(&space, 2, 0, 3).unwrap();
        let mut tables: Vec<Vec<Cell>> = (1..=3).map(|n| pi.cells(n).to_vec()).collect();
        for c in tables[2].iter_mut() {
            c.out = Some(constant);
        }
        let bad = OrbitAction::from_cells(&space, "bad", 2, 3, tables).unwrap();
        let v = bad.check_welldefined().unwrap();
        assert!(v.iter().any(|v| v.kind == ViolationKind::Restriction && v.n == 3));
        assert!(v.iter().all(|v| v.kind != ViolationKind::FunctionRespect));
    }

    #[test]
    fn separating_equal_positions_is_reported() {
        let space = q_space();
        let t2 = space.table(2).unwrap();
        let less = (0..t2.len() as u32).find(|&o| !t2.get(o).same(0, 1) && t2.get(o).holds(0, &[0, 1])).unwrap();
        let pi = projection_action(&space, 1, 0, 2).unwrap();
        let mut tables: Vec<Vec<Cell>> = (1..=2).map(|n| pi.cells(n).to_vec()).collect();
        for c in tables[1].iter_mut() {
            c.out = Some(less);
        }
        let bad = OrbitAction::from_cells(&space, "bad", 1, 2, tables).unwrap();
        assert!(bad.check_welldefined().unwrap().iter().any(|v| v.kind == ViolationKind::FunctionRespect));
    }

    #[test]
    fn lex_is_a_polymorphism_of_the_order() {
        let space = q_space();
        let lex = lex_action(&space, 3).unwrap();
        assert!(lex.check_welldefined().unwrap().is_empty());
        let t2 = space.table(2).unwrap();
        let less: Vec<bool> = t2.orbits().iter().map(|o| o.holds(0, &[0, 1])).collect();
        assert_eq!(lex.preserves(2, &less).unwrap(), None);
    }

    #[test]
    fn composing_projections() {
        let space = q_space();
        let lex = lex_action(&space, 3).unwrap();
        let pi = projection_action(&space, 2, 0, 3).unwrap();
        let c = OrbitAction::compose("c", &pi, &[Term::Action(&lex), Term::Arg(1)], 2).unwrap();
        assert_eq!(c.tables, lex.tables);
        assert!(OrbitAction::compose("c", &pi, &[Term::Arg(0)], 2).is_err());
        assert!(OrbitAction::compose("c", &pi, &[Term::Arg(0), Term::Arg(2)], 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let space = hypergraph_space();
        let m = build_m_action(&space, MKind::Majority).unwrap();
        let back = OrbitAction::from_json(&space, &m.to_json()).unwrap();
        assert_eq!(back.tables, m.tables);
        assert!(m.to_json()["cells"].as_array().unwrap().iter().any(|c| c["provenance"] == "completed"));
    }

    #[test]
    fn oversized_tables_are_refused() {
        let space = q_space();
        assert!(projection_action(&space, 9, 0, 3).is_err());
    }

    fn random_action(space: &Arc<OrbitSpace>, seed: &[u32]) -> OrbitAction {
        let mut k = 0;
        let tables = (1..=2)
            .map(|n| {
                let r = space.table(n).unwrap().len() as u32;
                (0..(r * r))
                    .map(|_| {
                        k += 1;
                        Cell { out: Some(seed[k % seed.len()] % r), completed: false }
                    })
                    .collect()
            })
            .collect();
        OrbitAction::from_cells(space, "r", 2, 2, tables).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn composition_is_associative(
            a in prop::collection::vec(0u32..100, 1..12),
            b in prop::collection::vec(0u32..100, 1..12),
            c in prop::collection::vec(0u32..100, 1..12),
        ) {
            let space = q_space();
            let (a, b, c) = (random_action(&space, &a), random_action(&space, &b), random_action(&space, &c));
            // a(b(c(x,y), y), x) two ways
            let bc = OrbitAction::compose("bc", &b, &[Term::Action(&c), Term::Arg(1)], 2).unwrap();
            let left = OrbitAction::compose("l", &a, &[Term::Action(&bc), Term::Arg(0)], 2).unwrap();
            let b3 = OrbitAction::compose("b3", &b, &[Term::Arg(0), Term::Arg(1)], 3).unwrap();
            let ab = OrbitAction::compose("ab", &a, &[Term::Action(&b3), Term::Arg(2)], 3).unwrap();
            let right = OrbitAction::compose("r", &ab, &[Term::Action(&c), Term::Arg(1), Term::Arg(0)], 2).unwrap();
            prop_assert_eq!(left.tables, right.tables);
        }
    }
}
