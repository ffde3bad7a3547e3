//! Canonical actions on the ordered random 3-hypergraph: build f, m, h and
//! g, then check well-definedness, canonicity and cyclic identities.

use orbitsolve::canonical::{
    build_f_action, build_g_action, build_h_action, build_m_action, check_identity, hypergraph_space, Identity, MKind,
};
use orbitsolve::Signature;

fn main() -> orbitsolve::Result<()> {
    let space = hypergraph_space();
    let edges = Signature::of(&[("E", 3)])?;
    let f = build_f_action(&space)?;
    let h = build_h_action(&f)?;
    for kind in [MKind::Majority, MKind::Minority] {
        let m = build_m_action(&space, kind)?;
        let g = build_g_action(&m, &h)?;
        println!("{}: {} completed cells, {} ill-defined", g.name(), g.completed_cells(), g.check_welldefined()?.len());
        let pseudo = check_identity(&g, Identity::Cyclic, Some(&edges), false)?;
        let plain = check_identity(&g, Identity::Cyclic, None, false)?;
        println!("  cyclic modulo E: {}; plain cyclic: {}", pseudo.holds(), plain.holds());
        match g.check_canonical_wrt(&edges, false)? {
            Some(w) => println!(
                "  not canonical for E alone: {:?} vs {:?}",
                w.left.iter().map(|&a| g.label(w.n, a)).collect::<Vec<_>>(),
                w.right.iter().map(|&a| g.label(w.n, a)).collect::<Vec<_>>()
            ),
            None => println!("  canonical for E alone"),
        }
    }
    println!("f canonical for (E,<): {}", f.check_canonical_wrt(space.signature(), false)?.is_none());
    Ok(())
}
