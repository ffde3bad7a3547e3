//! Identities checked on orbit actions, either exactly or modulo projection
//! onto a subsignature of the base (the pseudo-variants).

use std::fmt;
use std::str::FromStr;

use super::OrbitAction;
use crate::error::{Error, Result};
use crate::structure::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `s(x1, …, xl) = s(x2, …, xl, x1)`.
    Cyclic,
    /// `s(x,y,x,z,y,z) = s(y,x,z,x,z,y)`.
    Siggers,
    /// `w(y,x,…,x) = w(x,y,x,…,x) = … = w(x,…,x,y)`.
    Wnu,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Cyclic => "cyclic",
            Identity::Siggers => "siggers",
            Identity::Wnu => "wnu",
        })
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Identity::Cyclic),
            "siggers" => Ok(Identity::Siggers),
            "wnu" => Ok(Identity::Wnu),
            other => Err(Error::InvalidParameters(format!("unknown identity `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Holds,
    Counterexample { n: usize, left: Vec<u32>, right: Vec<u32>, left_out: Option<u32>, right_out: Option<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub outcome: IdentityOutcome,
    /// Compared pairs of argument tuples.
    pub checked: usize,
    /// Pairs skipped because a completed cell was involved.
    pub skipped: usize,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.outcome == IdentityOutcome::Holds
    }
}

/// Checks `identity` for `action` over all orbit assignments to its
/// variables, for every tuple length up to the depth, in canonical order.
/// With `modulo`, outputs are compared after projection onto that
/// subsignature. With `fixed_only`, comparisons touching a completed
/// cell are skipped.
pub fn check_identity(
    action: &OrbitAction,
    identity: Identity,
    modulo: Option<&Signature>,
    fixed_only: bool,
) -> Result<IdentityCheck> {
    let l = action.arity();
    match identity {
        Identity::Siggers if l != 6 => {
            return Err(Error::ArityMismatch(format!(
                "the Siggers identity needs arity 6, `{}` has {l}",
                action.name()
            )))
        }
        Identity::Cyclic | Identity::Wnu if l < 2 => {
            return Err(Error::ArityMismatch(format!("{identity} needs arity at least 2")))
        }
        _ => {}
    }
    if let Some(sub) = modulo {
        if !sub.is_subsignature_of(action.space().signature()) {
            return Err(Error::InvalidSignature("not a subsignature of the base".into()));
        }
    }
    let vars = match identity {
        Identity::Cyclic => l,
        Identity::Siggers => 3,
        Identity::Wnu => 2,
    };
    let mut checked = 0;
    let mut skipped = 0;
    for n in 1..=action.depth() {
        let ids: Option<Vec<u32>> = modulo.map(|s| action.projection_ids(n, s)).transpose()?;
        let same = |a: Option<u32>, b: Option<u32>| match (a, b, &ids) {
            (Some(a), Some(b), Some(ids)) => ids[a as usize] == ids[b as usize],
            (Some(a), Some(b), None) => a == b,
            _ => false,
        };
        let radix = action.radix(n);
        let total = radix.pow(vars as u32);
        let mut v = vec![0u32; vars];
        for idx in 0..total {
            super::decode(idx, radix, &mut v);
            for (left, right) in sides(identity, l, &v) {
                let (a, b) = (action.cell(n, &left), action.cell(n, &right));
                if fixed_only && (a.completed || b.completed) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                if !same(a.out, b.out) {
                    return Ok(IdentityCheck {
                        outcome: IdentityOutcome::Counterexample { n, left, right, left_out: a.out, right_out: b.out },
                        checked,
                        skipped,
                    });
                }
            }
        }
    }
    Ok(IdentityCheck { outcome: IdentityOutcome::Holds, checked, skipped })
}

/// The pairs of argument tuples the identity equates for the values `v` of
/// its variables.
fn sides(identity: Identity, l: usize, v: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    match identity {
        Identity::Cyclic => {
            let mut rotated = v[1..].to_vec();
            rotated.push(v[0]);
            vec![(v.to_vec(), rotated)]
        }
        Identity::Siggers => {
            let (x, y, z) = (v[0], v[1], v[2]);
            vec![(vec![x, y, x, z, y, z], vec![y, x, z, x, z, y])]
        }
        Identity::Wnu => {
            let at = |i: usize| (0..l).map(|j| if j == i { v[1] } else { v[0] }).collect::<Vec<u32>>();
            (1..l).map(|i| (at(0), at(i))).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{lex_action, projection_action, semilattice_action};
    use crate::catalog;
    use crate::enumerate::OrbitSpace;

    #[test]
    fn projection_is_not_cyclic() {
        let space = OrbitSpace::new(catalog::q_order());
        let p = projection_action(&space, 2, 0, 3).unwrap();
        match check_identity(&p, Identity::Cyclic, None, false).unwrap().outcome {
            IdentityOutcome::Counterexample { n, left, right, .. } => {
                assert_eq!(n, 2);
                assert_ne!(left[0], right[0]);
            }
            IdentityOutcome::Holds => panic!("projection passed"),
        }
    }

    #[test]
    fn modulo_full_signature_is_plain() {
        let space = OrbitSpace::new(catalog::q_order());
        let full = space.signature().clone();
        for a in [lex_action(&space, 3).unwrap(), projection_action(&space, 2, 1, 3).unwrap()] {
            for id in [Identity::Cyclic, Identity::Wnu] {
                assert_eq!(
                    check_identity(&a, id, None, false).unwrap(),
                    check_identity(&a, id, Some(&full), false).unwrap()
                );
            }
        }
    }

    #[test]
    fn semilattice_is_wnu() {
        let space = OrbitSpace::new(catalog::unary(2).unwrap());
        let s = semilattice_action(&space, 3).unwrap();
        assert!(check_identity(&s, Identity::Wnu, None, false).unwrap().holds());
    }

    #[test]
    fn arity_is_checked() {
        let space = OrbitSpace::new(catalog::q_order());
        let p = projection_action(&space, 2, 0, 2).unwrap();
        assert!(check_identity(&p, Identity::Siggers, None, false).is_err());
        assert_eq!("wnu".parse::<Identity>().unwrap(), Identity::Wnu);
        assert!("majority".parse::<Identity>().is_err());
    }
}
