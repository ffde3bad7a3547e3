//! Enumerate orbits of tuples for a hand-built template and for catalog ones.
//! The random graph is built from its two bounds and compared with the
//! catalog entry.

use orbitsolve::structure::BoundBuilder;
use orbitsolve::{catalog, OrbitSpace, Signature, Template};

fn main() -> orbitsolve::Result<()> {
    let sig = Signature::of(&[("E", 2)])?;
    let bounds = vec![
        BoundBuilder::new(&sig).holds("E", &[0, 0]).build()?,
        BoundBuilder::new(&sig).holds("E", &[0, 1]).fails("E", &[1, 0]).build()?,
    ];
    let graph = OrbitSpace::new(Template::new(sig, bounds)?);
    assert_eq!(graph.template(), &catalog::random_graph());

    for n in 1..=3 {
        let table = graph.table(n)?;
        println!("random graph, n={n}: {} orbits", table.len());
        for i in 0..table.len() as u32 {
            println!("  {:<6} {}", table.label(i).to_string(), table.get(i).describe(graph.signature()));
        }
    }

    for id in ["q-order", "equality", "unary-2", "hypergraph-ordered"] {
        let space = OrbitSpace::new(catalog::load_template(id)?);
        let counts: Vec<usize> = (1..=4).map(|n| space.table(n).map(|t| t.len())).collect::<Result<_, _>>()?;
        println!("{id:<20} orbit counts for n=1..4: {counts:?}");
    }
    Ok(())
}
