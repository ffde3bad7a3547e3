//! Small generic actions used as fixtures and by the test suites.

use std::sync::Arc;

use super::{meet_classes, OrbitAction};
use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::orbit::Orbit;

/// The projection onto argument `index`.
pub fn projection_action(space: &Arc<OrbitSpace>, arity: usize, index: usize, depth: usize) -> Result<OrbitAction> {
    if index >= arity {
        return Err(Error::InvalidAction(format!("projection {} of a {arity}-ary action", index + 1)));
    }
    OrbitAction::from_rule(space, &format!("pi{}", index + 1), arity, depth, |args| (args[index].clone(), false))
}

/// An injection on a relation-free base: output positions are equal iff they
/// are equal in every argument.
pub fn inj_action(space: &Arc<OrbitSpace>, arity: usize, depth: usize) -> Result<OrbitAction> {
    if !space.signature().is_empty() {
        return Err(Error::InvalidAction("the injection fixture needs a relation-free base".into()));
    }
    let sig = space.signature().clone();
    OrbitAction::from_rule(space, "inj", arity, depth, move |args| {
        (Orbit::build(&sig, &meet_classes(args), |_, _| false), false)
    })
}

/// The 6-ary injection on a relation-free base, a Siggers operation.
pub fn siggers_injection(space: &Arc<OrbitSpace>, depth: usize) -> Result<OrbitAction> {
    Ok(inj_action(space, 6, depth)?.renamed("siggers-inj"))
}

/// Binary lexicographic combination: equality is the meet, and an atom
/// holds iff it holds in the first argument whose entries at the atom's
/// positions are not all equal.
pub fn lex_action(space: &Arc<OrbitSpace>, depth: usize) -> Result<OrbitAction> {
    let sig = space.signature().clone();
    OrbitAction::from_rule(space, "lex", 2, depth, move |args| {
        let classes = meet_classes(args);
        let orbit = Orbit::build(&sig, &classes, |rel, pos| {
            let spread = |a: &Orbit| pos.iter().any(|&p| !a.same(p, pos[0]));
            match args.iter().find(|a| spread(a)) {
                Some(a) => a.holds(rel, pos),
                None => args[0].holds(rel, pos),
            }
        });
        (orbit, false)
    })
}

/// Binary semilattice on a base whose relations are unary parts ordered by
/// their index: equality is the meet and every position gets the smaller of
/// its parts in the two arguments.
pub fn semilattice_action(space: &Arc<OrbitSpace>, depth: usize) -> Result<OrbitAction> {
    let sig = space.signature().clone();
    if sig.relations().iter().any(|r| r.arity != 1) {
        return Err(Error::InvalidAction("the semilattice fixture needs unary relations only".into()));
    }
    OrbitAction::from_rule(space, "semilattice", 2, depth, move |args| {
        let part = |a: &Orbit, p: usize| (0..sig.len()).find(|&r| a.holds(r, &[p]));
        let orbit = Orbit::build(&sig, &meet_classes(args), |rel, pos| {
            let best = args.iter().filter_map(|a| part(a, pos[0])).min();
            best == Some(rel)
        });
        (orbit, false)
    })
}
