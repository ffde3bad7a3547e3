//! Canonical actions on the ordered random 3-hypergraph: a binary injection
//! `f`, a ternary `m` voting on the hyperedge relation, and the composites
//! `h(x,y,z) = f(x, f(y,z))` and `g(x,y,z) = m(h(x,y,z), h(y,z,x), h(z,x,y))`.
//!
//! Both `f` and `m` order their output lexicographically: a pair of output
//! positions is ordered as in the first argument that separates it. The
//! actions differ only in deciding whether an injective output triple lies
//! in the hyperedge relation.

use std::sync::Arc;

use super::{meet_classes, OrbitAction, Term};
use crate::catalog;
use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::orbit::Orbit;
use crate::structure::Signature;

pub fn hypergraph_space() -> Arc<OrbitSpace> {
    OrbitSpace::new(catalog::hypergraph_ordered())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MKind {
    Majority,
    Minority,
}

#[derive(Clone, Copy)]
struct Symbols {
    edge: usize,
    less: usize,
}

fn symbols(sig: &Signature) -> Result<Symbols> {
    let find = |name: &str, arity: usize| {
        sig.index_of(name)
            .filter(|&i| sig.arity(i) == arity)
            .ok_or_else(|| Error::InvalidAction(format!("base needs a relation `{name}` of arity {arity}")))
    };
    Ok(Symbols { edge: find("E", 3)?, less: find("<", 2)? })
}

/// Lexicographic output with hyperedges on injective output triples decided
/// by `edge` on the arguments induced on those three positions.
fn lex_with_edges(sig: &Signature, s: Symbols, args: &[&Orbit], edge: impl Fn(&[Orbit]) -> bool) -> Orbit {
    let classes = meet_classes(args);
    Orbit::build(sig, &classes, |rel, pos| {
        if rel == s.less {
            let (a, b) = (pos[0], pos[1]);
            match args.iter().find(|o| !o.same(a, b)) {
                Some(o) => o.holds(s.less, &[a, b]),
                None => false,
            }
        } else if rel == s.edge {
            if classes[pos[0]] == classes[pos[1]]
                || classes[pos[0]] == classes[pos[2]]
                || classes[pos[1]] == classes[pos[2]]
            {
                return false;
            }
            let mut sorted = [pos[0], pos[1], pos[2]];
            sorted.sort_unstable();
            let sub: Vec<Orbit> = args.iter().map(|o| o.induced(&sorted)).collect();
            edge(&sub)
        } else {
            false
        }
    })
}

/// For a triple orbit with exactly one equality: whether the repeated
/// element is below the remaining one.
fn repeated_below(t: &Orbit, less: usize) -> bool {
    let (i, k) = if t.same(0, 1) {
        (0, 2)
    } else if t.same(0, 2) {
        (0, 1)
    } else {
        (1, 0)
    };
    t.holds(less, &[i, k])
}

pub fn build_f_action(space: &Arc<OrbitSpace>) -> Result<OrbitAction> {
    let sig = space.signature().clone();
    let s = symbols(&sig)?;
    OrbitAction::from_rule(space, "f", 2, 3, move |args| {
        let out = lex_with_edges(&sig, s, args, |t| {
            let (a, b) = (&t[0], &t[1]);
            match (a.is_injective(), b.is_injective()) {
                (true, _) => a.holds(s.edge, &[0, 1, 2]),
                (false, true) => b.holds(s.edge, &[0, 1, 2]),
                // the output is injective, so the equalities sit at different positions
                (false, false) => repeated_below(a, s.less) == repeated_below(b, s.less),
            }
        });
        (out, false)
    })
}

/// `m` votes on hyperedges; a non-injective argument triple counts as a
/// non-edge. Cells are fixed by the construction only when every argument
/// is injective (or every argument is constant, forcing a constant output);
/// the rest are completions.
pub fn build_m_action(space: &Arc<OrbitSpace>, kind: MKind) -> Result<OrbitAction> {
    let sig = space.signature().clone();
    let s = symbols(&sig)?;
    let name = match kind {
        MKind::Majority => "m",
        MKind::Minority => "m-minority",
    };
    OrbitAction::from_rule(space, name, 3, 3, move |args| {
        let out = lex_with_edges(&sig, s, args, |t| {
            let votes = t.iter().filter(|o| o.is_injective() && o.holds(s.edge, &[0, 1, 2])).count();
            match kind {
                MKind::Majority => votes >= 2,
                MKind::Minority => votes % 2 == 1,
            }
        });
        let fixed = args[0].n() == 1 || args.iter().all(|o| o.is_injective()) || args.iter().all(|o| o.is_constant());
        (out, !fixed)
    })
}

/// `h(x,y,z) = f(x, f(y,z))`.
pub fn build_h_action(f: &OrbitAction) -> Result<OrbitAction> {
    let fyz = OrbitAction::compose("f(y,z)", f, &[Term::Arg(1), Term::Arg(2)], 3)?;
    OrbitAction::compose("h", f, &[Term::Arg(0), Term::Action(&fyz)], 3)
}

/// `g(x,y,z) = m(h(x,y,z), h(y,z,x), h(z,x,y))`.
pub fn build_g_action(m: &OrbitAction, h: &OrbitAction) -> Result<OrbitAction> {
    let h1 = OrbitAction::compose("h(y,z,x)", h, &[Term::Arg(1), Term::Arg(2), Term::Arg(0)], 3)?;
    let h2 = OrbitAction::compose("h(z,x,y)", h, &[Term::Arg(2), Term::Arg(0), Term::Arg(1)], 3)?;
    let name = if m.name() == "m" { "g".to_string() } else { format!("g[{}]", m.name()) };
    OrbitAction::compose(&name, m, &[Term::Action(h), Term::Action(&h1), Term::Action(&h2)], 3)
}
