//! Constraint solving over first-order reducts of finitely bounded
//! homogeneous structures.
//!
//! Templates are given by a relational signature and a finite set of
//! forbidden conditions. Solutions of instances are orbits of tuples, which
//! for homogeneous templates are complete quantifier-free types; the crate
//! enumerates them, reduces instances to finite-domain problems over orbit
//! values, runs local consistency, and decides instances exactly.

pub mod canonical;
pub mod catalog;
pub mod cli;
pub mod consistency;
pub mod enumerate;
pub mod error;
pub mod finite;
pub mod formula;
pub mod io;
pub mod oracle;
pub mod orbit;
pub mod reduct;
pub mod reduction;
pub mod structure;
pub mod suites;

pub use enumerate::{enumerate_orbits, Limits, OrbitSpace, OrbitTable};
pub use error::{Error, Result};
pub use orbit::{Orbit, OrbitLabel};
pub use reduct::{Constraint, Instance, Reduct};
pub use structure::{Bound, Signature, Template};
