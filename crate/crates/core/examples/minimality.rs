//! (a,b)-minimality: refuting cyclic order constraints and inspecting the
//! surviving orbit sets of a satisfiable instance.

use orbitsolve::catalog;
use orbitsolve::consistency::{ab_minimality, reduce_then_minimality, reduced_minimality};
use orbitsolve::oracle::has_directed_cycle;
use orbitsolve::Instance;

fn main() -> orbitsolve::Result<()> {
    let q = catalog::load_reduct("q-order")?;
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)];
    let pairs: Vec<[usize; 2]> = edges.iter().map(|&(a, b)| [a, b]).collect();
    let cons: Vec<(&str, &[usize])> = pairs.iter().map(|p| ("<", &p[..])).collect();
    let inst = Instance::indexed(5, &cons);
    let r = ab_minimality(&q, &inst, 2, 3)?;
    println!("cycle through x2..x5: {:?} (DFS says cyclic: {})", r.status, has_directed_cycle(5, &edges));

    let inst = Instance::indexed(3, &[("<", &[0, 1]), ("<", &[0, 2])]);
    let r = ab_minimality(&q, &inst, 2, 3)?;
    println!("x1<x2, x1<x3: {:?} after {} rounds", r.status, r.rounds);
    println!("{}", serde_json::to_string_pretty(&r.to_json(&inst.variables))?);

    // stronger and encoded variants on a unary reduct: x1 in A1, x2 in A2, x1 = x2
    let u = catalog::load_reduct("unary-2-semilattice")?;
    let inst = Instance::indexed(2, &[("A1", &[0]), ("A2", &[1]), ("eq", &[0, 1])]);
    println!(
        "A1(x1), A2(x2), x1=x2: direct (2w,3w) {:?}; encoded then (2,3) refuted = {}",
        reduced_minimality(&u, &inst)?.status,
        reduce_then_minimality(&u, &inst, 2)?.refuted
    );
    Ok(())
}
