//! Identity checks on small generic actions.

use orbitsolve::canonical::{
    check_identity, lex_action, projection_action, semilattice_action, siggers_injection, Identity,
};
use orbitsolve::{catalog, OrbitSpace};

fn main() -> orbitsolve::Result<()> {
    let eq = OrbitSpace::new(catalog::equality());
    let s = siggers_injection(&eq, 3)?;
    println!("6-ary injection, Siggers: {}", check_identity(&s, Identity::Siggers, None, false)?.holds());

    let q = OrbitSpace::new(catalog::q_order());
    for a in [projection_action(&q, 2, 0, 3)?, lex_action(&q, 3)?] {
        let c = check_identity(&a, Identity::Cyclic, None, false)?;
        println!("{} cyclic: {} after {} comparisons", a.name(), c.holds(), c.checked);
    }

    let u = OrbitSpace::new(catalog::unary(2)?);
    let semi = semilattice_action(&u, 3)?;
    for id in [Identity::Cyclic, Identity::Wnu] {
        println!("semilattice {id}: {}", check_identity(&semi, id, None, false)?.holds());
    }
    Ok(())
}
