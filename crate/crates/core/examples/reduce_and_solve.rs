//! Reduce an infinite-template instance to a finite-domain one, solve it and
//! glue the answer back into a complete type.

use orbitsolve::finite::SolverConfig;
use orbitsolve::reduction::{reduce_instance, solve_finite};
use orbitsolve::{catalog, Instance};

fn main() -> orbitsolve::Result<()> {
    let reduct = catalog::load_reduct("betweenness")?;
    let mut inst = Instance::indexed(0, &[]);
    inst.variables = ["a", "b", "c", "d", "e"].map(String::from).to_vec();
    inst.push("B", &["a", "b", "c"]);
    inst.push("B", &["b", "c", "d"]);
    inst.push("B", &["c", "e", "d"]);

    let fi = reduce_instance(&reduct, &inst)?;
    println!(
        "window size {}, {} windows, domain size {}, {} overlaps",
        fi.window_size(),
        fi.windows().len(),
        fi.domain_size(),
        fi.overlaps().len()
    );
    let out = solve_finite(&fi, &SolverConfig::default())?;
    println!("{} after {} nodes", out.status(), out.outcome.nodes);
    if let Some(w) = &out.witness {
        let lt = reduct.space().signature().index_of("<").unwrap();
        println!("witness: {}", w.describe_weak_order(lt, &inst.variables).unwrap());
    }

    inst.push("B", &["a", "d", "b"]);
    let out = solve_finite(&reduce_instance(&reduct, &inst)?, &SolverConfig::default())?;
    println!("with B(a,d,b) added: {}", out.status());
    Ok(())
}
