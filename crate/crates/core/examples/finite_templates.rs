//! Explicit finite templates: 3-coloring, 1-in-3-SAT and GF(2) equations.

use orbitsolve::finite::{solve_explicit, SolverConfig};
use orbitsolve::{catalog, Instance};

fn main() -> orbitsolve::Result<()> {
    let wheel: Vec<[usize; 2]> = (1..6).flat_map(|i| [[0, i], [i, i % 5 + 1]]).collect();
    let cons: Vec<(&str, &[usize])> = wheel.iter().map(|e| ("neq", &e[..])).collect();
    let (out, values) =
        solve_explicit(&catalog::three_coloring(), &Instance::indexed(6, &cons), &SolverConfig::default())?;
    println!("odd wheel W5 3-colorable: {} ({} nodes) {:?}", out.status(), out.nodes, values);

    // every variable sits in three of the four clauses, so 3 * (number true) = 4
    let mut inst = Instance::indexed(4, &[("R", &[0, 1, 2]), ("R", &[1, 2, 3]), ("R", &[0, 2, 3])]);
    let (out, values) = solve_explicit(&catalog::one_in_three(), &inst, &SolverConfig::default())?;
    println!("1-in-3, three clauses: {} {:?}", out.status(), values);
    inst.push("R", &["x1", "x2", "x4"]);
    let (out, _) = solve_explicit(&catalog::one_in_three(), &inst, &SolverConfig::default())?;
    println!("1-in-3, four clauses: {}", out.status());

    let gf2 = catalog::gf2_linear();
    let mut inst = Instance::indexed(3, &[("sum", &[0, 1, 2]), ("sum", &[1, 2, 0])]);
    inst.push("one", &["x1"]);
    let (out, values) = solve_explicit(&gf2, &inst, &SolverConfig::default())?;
    println!("x1+x2=x3, x2+x3=x1, x1=1: {} {:?}", out.status(), values);
    inst.push("one", &["x2"]);
    inst.push("one", &["x3"]);
    let (out, _) = solve_explicit(&gf2, &inst, &SolverConfig::default())?;
    println!("adding x2=1, x3=1: {}", out.status());
    Ok(())
}
