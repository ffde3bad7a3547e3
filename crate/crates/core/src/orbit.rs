//! Orbits of tuples, represented as complete quantifier-free types.
//!
//! An [`Orbit`] on `n` positions stores the equality pattern of the tuple as a
//! restricted-growth string and, for every relation of the signature, the set
//! of position tuples on which the relation holds (as a bitset indexed in
//! base `n`). Negative atoms are implicit. Orbits do not carry their
//! signature; operations that need symbol names take it as an argument.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{Atom, Bound, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct FactSet {
    arity: u8,
    bits: Vec<u64>,
}

impl FactSet {
    fn empty(n: usize, arity: usize) -> Self {
        let len = n.pow(arity as u32);
        FactSet { arity: arity as u8, bits: vec![0; len.div_ceil(64)] }
    }

    fn get(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    fn set(&mut self, idx: usize) {
        self.bits[idx / 64] |= 1 << (idx % 64);
    }
}

pub(crate) fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &p| acc * n + p)
}

pub(crate) fn index_tuple(n: usize, arity: usize, mut idx: usize, out: &mut [usize]) {
    for slot in out[..arity].iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// Renumbers arbitrary class labels into restricted-growth form.
pub(crate) fn normalize_classes(classes: &[usize]) -> Vec<u8> {
    let mut seen: Vec<usize> = Vec::new();
    classes
        .iter()
        .map(|c| match seen.iter().position(|s| s == c) {
            Some(i) => i as u8,
            None => {
                seen.push(*c);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

/// A complete quantifier-free type of an `n`-tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    eq: Vec<u8>,
    facts: Vec<FactSet>,
}

impl Orbit {
    /// Builds an orbit from class labels (any labelling; normalized here) and
    /// a predicate deciding each relation atom on position tuples.
    pub fn build(signature: &Signature, classes: &[usize], mut holds: impl FnMut(usize, &[usize]) -> bool) -> Orbit {
        let n = classes.len();
        let eq = normalize_classes(classes);
        let mut buf = vec![0usize; signature.max_arity()];
        let facts = signature
            .relations()
            .iter()
            .enumerate()
            .map(|(rel, sym)| {
                let mut fs = FactSet::empty(n, sym.arity);
                for idx in 0..n.pow(sym.arity as u32) {
                    index_tuple(n, sym.arity, idx, &mut buf);
                    if holds(rel, &buf[..sym.arity]) {
                        fs.set(idx);
                    }
                }
                fs
            })
            .collect();
        Orbit { eq, facts }
    }

    /// Builds an orbit from explicit fact lists (zero-based positions), one
    /// list per relation of `signature`. Congruence is not checked.
    pub fn from_facts(signature: &Signature, classes: &[usize], facts: &[Vec<Vec<usize>>]) -> Result<Orbit> {
        let n = classes.len();
        if facts.len() != signature.len() {
            return Err(Error::InvalidOrbit(format!(
                "expected fact lists for {} relations, got {}",
                signature.len(),
                facts.len()
            )));
        }
        let mut sets = Vec::with_capacity(facts.len());
        for (rel, tuples) in facts.iter().enumerate() {
            let arity = signature.arity(rel);
            let mut fs = FactSet::empty(n, arity);
            for t in tuples {
                if t.len() != arity {
                    return Err(Error::InvalidOrbit(format!(
                        "fact of `{}` has {} positions, arity is {arity}",
                        signature.name(rel),
                        t.len()
                    )));
                }
                if let Some(&p) = t.iter().find(|&&p| p >= n) {
                    return Err(Error::PositionOutOfRange { position: p + 1, n });
                }
                fs.set(tuple_index(n, t));
            }
            sets.push(fs);
        }
        Ok(Orbit { eq: normalize_classes(classes), facts: sets })
    }

    pub fn n(&self) -> usize {
        self.eq.len()
    }

    /// The equality pattern in restricted-growth form.
    pub fn eq_pattern(&self) -> &[u8] {
        &self.eq
    }

    pub fn class_count(&self) -> usize {
        self.eq.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.eq[i] == self.eq[j]
    }

    pub fn holds(&self, rel: usize, args: &[usize]) -> bool {
        self.facts[rel].get(tuple_index(self.n(), args))
    }

    pub fn relation_count(&self) -> usize {
        self.facts.len()
    }

    pub fn is_injective(&self) -> bool {
        self.class_count() == self.n()
    }

    pub fn is_constant(&self) -> bool {
        self.class_count() <= 1
    }

    /// All position tuples (zero-based, lexicographic) on which `rel` holds.
    pub fn facts_of(&self, rel: usize) -> Vec<Vec<usize>> {
        let n = self.n();
        let arity = self.facts[rel].arity as usize;
        let mut buf = vec![0; arity];
        (0..n.pow(arity as u32))
            .filter(|&idx| self.facts[rel].get(idx))
            .map(|idx| {
                index_tuple(n, arity, idx, &mut buf);
                buf.clone()
            })
            .collect()
    }

    /// Whether replacing positions by equal positions preserves every fact.
    pub fn is_congruent(&self) -> bool {
        let n = self.n();
        let first: Vec<usize> = (0..n).map(|i| self.eq.iter().position(|&c| c == self.eq[i]).unwrap()).collect();
        let mut buf = vec![0; 8];
        let mut rep = vec![0; 8];
        for fs in &self.facts {
            let arity = fs.arity as usize;
            if buf.len() < arity {
                buf.resize(arity, 0);
                rep.resize(arity, 0);
            }
            for idx in 0..n.pow(arity as u32) {
                index_tuple(n, arity, idx, &mut buf);
                for k in 0..arity {
                    rep[k] = first[buf[k]];
                }
                if fs.get(idx) != fs.get(tuple_index(n, &rep[..arity])) {
                    return false;
                }
            }
        }
        true
    }

    fn literal_holds(&self, positive: bool, atom: &Atom, map: &[usize]) -> bool {
        let value = match atom {
            Atom::Eq(i, j) => self.same(map[*i], map[*j]),
            Atom::Rel { rel, args } => {
                let n = self.n();
                let idx = args.iter().fold(0, |acc, &a| acc * n + map[a]);
                self.facts[*rel].get(idx)
            }
        };
        value == positive
    }

    /// Whether some map from the bound's variables to positions makes every
    /// literal of the bound true.
    pub fn realizes(&self, bound: &Bound) -> bool {
        let n = self.n();
        let v = bound.var_count();
        if n == 0 {
            return false;
        }
        let mut map = vec![0usize; v];
        loop {
            if bound.literals().iter().all(|l| self.literal_holds(l.positive, &l.atom, &map)) {
                return true;
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k == v {
                    return false;
                }
                map[k] += 1;
                if map[k] < n {
                    break;
                }
                map[k] = 0;
                k += 1;
            }
        }
    }

    /// The induced type of the tuple `(t[p1], …, t[pm])`; repeated positions
    /// are allowed and become equal positions of the result.
    pub fn induced(&self, positions: &[usize]) -> Orbit {
        let n = self.n();
        let m = positions.len();
        let classes: Vec<usize> = positions.iter().map(|&p| self.eq[p] as usize).collect();
        let mut buf = vec![0usize; 8];
        let mut src = vec![0usize; 8];
        let facts = self
            .facts
            .iter()
            .map(|fs| {
                let arity = fs.arity as usize;
                if buf.len() < arity {
                    buf.resize(arity, 0);
                    src.resize(arity, 0);
                }
                let mut out = FactSet::empty(m, arity);
                for idx in 0..m.pow(arity as u32) {
                    index_tuple(m, arity, idx, &mut buf);
                    for k in 0..arity {
                        src[k] = positions[buf[k]];
                    }
                    if fs.get(tuple_index(n, &src[..arity])) {
                        out.set(idx);
                    }
                }
                out
            })
            .collect();
        Orbit { eq: normalize_classes(&classes), facts }
    }

    /// Restriction to an injective list of (zero-based) positions, in the
    /// given order.
    pub fn restrict(&self, positions: &[usize]) -> Result<Orbit> {
        for (i, &p) in positions.iter().enumerate() {
            if p >= self.n() {
                return Err(Error::PositionOutOfRange { position: p + 1, n: self.n() });
            }
            if positions[..i].contains(&p) {
                return Err(Error::InvalidOrbit(format!("position {} selected twice", p + 1)));
            }
        }
        Ok(self.induced(positions))
    }

    /// Forgets every relation not in `sub`. `signature` is the orbit's own
    /// signature.
    pub fn project(&self, signature: &Signature, sub: &Signature) -> Result<Orbit> {
        let mut facts = Vec::with_capacity(sub.len());
        for sym in sub.relations() {
            let idx = signature.index_of(&sym.name).ok_or_else(|| Error::UnknownSymbol(sym.name.clone()))?;
            if signature.arity(idx) != sym.arity {
                return Err(Error::ArityMismatch(format!("relation `{}` has a different arity", sym.name)));
            }
            facts.push(self.facts[idx].clone());
        }
        Ok(Orbit { eq: self.eq.clone(), facts })
    }

    pub fn to_json(&self, signature: &Signature) -> serde_json::Value {
        let facts: BTreeMap<String, Vec<Vec<usize>>> = signature
            .relations()
            .iter()
            .enumerate()
            .map(|(rel, sym)| {
                let tuples = self.facts_of(rel).into_iter().map(|t| t.into_iter().map(|p| p + 1).collect()).collect();
                (sym.name.clone(), tuples)
            })
            .collect();
        serde_json::to_value(OrbitJson { n: self.n(), eq: self.eq.iter().map(|&c| c as usize).collect(), facts })
            .expect("orbit json")
    }

    pub fn from_json(signature: &Signature, value: &serde_json::Value) -> Result<Orbit> {
        let raw: OrbitJson = serde_json::from_value(value.clone())?;
        if raw.eq.len() != raw.n {
            return Err(Error::InvalidOrbit(format!("eq has {} entries, n is {}", raw.eq.len(), raw.n)));
        }
        let mut facts = vec![Vec::new(); signature.len()];
        for (name, tuples) in raw.facts {
            let rel = signature.index_of(&name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            for t in tuples {
                if t.contains(&0) {
                    return Err(Error::InvalidOrbit("positions are 1-based".into()));
                }
                facts[rel].push(t.into_iter().map(|p| p - 1).collect());
            }
        }
        Orbit::from_facts(signature, &raw.eq, &facts)
    }

    /// Compact human-readable rendering, e.g. `1=2 | <(1,3) <(2,3)`.
    pub fn describe(&self, signature: &Signature) -> String {
        let mut parts = Vec::new();
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); self.class_count()];
        for (p, &c) in self.eq.iter().enumerate() {
            classes[c as usize].push(p + 1);
        }
        let eqs: Vec<String> = classes
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("="))
            .collect();
        parts.push(if eqs.is_empty() { "injective".to_string() } else { eqs.join(" ") });
        for (rel, sym) in signature.relations().iter().enumerate() {
            let tuples = self.facts_of(rel);
            if tuples.is_empty() {
                continue;
            }
            let rendered: Vec<String> = tuples
                .iter()
                .map(|t| {
                    format!("{}({})", sym.name, t.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(","))
                })
                .collect();
            parts.push(rendered.join(" "));
        }
        parts.join(" | ")
    }

    /// Renders an orbit over a single strict linear order as a chain such as
    /// `s(x1)<s(x2)=s(x3)`. Returns `None` if `rel` does not order the
    /// classes linearly.
    pub fn describe_weak_order(&self, rel: usize, names: &[String]) -> Option<String> {
        let k = self.class_count();
        let rep: Vec<usize> = (0..k).map(|c| self.eq.iter().position(|&e| e as usize == c).unwrap()).collect();
        let mut rank = vec![0usize; k];
        for a in 0..k {
            for b in 0..k {
                if a != b && self.holds(rel, &[rep[b], rep[a]]) {
                    rank[a] += 1;
                }
                if a != b && self.holds(rel, &[rep[a], rep[b]]) == self.holds(rel, &[rep[b], rep[a]]) {
                    return None;
                }
            }
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&c| rank[c]);
        if order.iter().enumerate().any(|(i, &c)| rank[c] != i) {
            return None;
        }
        let chain: Vec<String> = order
            .iter()
            .map(|&c| {
                (0..self.n())
                    .filter(|&p| self.eq[p] as usize == c)
                    .map(|p| format!("s({})", names[p]))
                    .collect::<Vec<_>>()
                    .join("=")
            })
            .collect();
        Some(chain.join("<"))
    }
}

/// Canonical order: equality pattern first, then for each relation the
/// presence mask over position tuples in lexicographic order, a present
/// tuple sorting before an absent one.
impl Ord for Orbit {
    fn cmp(&self, other: &Self) -> Ordering {
        self.eq.cmp(&other.eq).then_with(|| {
            for (a, b) in self.facts.iter().zip(&other.facts) {
                match a.arity.cmp(&b.arity) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for (x, y) in a.bits.iter().zip(&b.bits) {
                    let diff = x ^ y;
                    if diff != 0 {
                        let bit = diff.trailing_zeros();
                        return if x >> bit & 1 == 1 { Ordering::Less } else { Ordering::Greater };
                    }
                }
            }
            self.facts.len().cmp(&other.facts.len())
        })
    }
}

impl PartialOrd for Orbit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct OrbitJson {
    n: usize,
    eq: Vec<usize>,
    facts: BTreeMap<String, Vec<Vec<usize>>>,
}

/// Orbit label: tuple length plus zero-based index in canonical order,
/// rendered `n:Oi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub n: usize,
    pub index: u32,
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:O{}", self.n, self.index)
    }
}

impl std::str::FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidOrbit(format!("malformed orbit label `{s}`"));
        let (n, rest) = s.split_once(':').ok_or_else(bad)?;
        let idx = rest.strip_prefix('O').ok_or_else(bad)?;
        Ok(OrbitLabel { n: n.parse().map_err(|_| bad())?, index: idx.parse().map_err(|_| bad())? })
    }
}
