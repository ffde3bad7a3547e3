//! Define reduct relations by quantifier-free formulas or orbit labels.

use orbitsolve::reduct::{compile_reduct_relation, relation_from_labels};
use orbitsolve::{catalog, OrbitSpace, Reduct};

fn main() -> orbitsolve::Result<()> {
    let space = OrbitSpace::new(catalog::q_order());
    let between = compile_reduct_relation(&space, "B", 3, "(1<2 & 2<3) | (3<2 & 2<1)")?;
    let names: Vec<String> = between.labels().iter().map(|l| l.to_string()).collect();
    println!("B is the union of {} triple orbits: {}", names.len(), names.join(", "));
    for &o in between.orbits() {
        println!("  {}", space.table(3)?.get(o).describe(space.signature()));
    }

    // the same relation from its labels
    let labels = between.labels();
    let again = relation_from_labels(&space, "B2", 3, &labels, false)?;
    assert_eq!(again.mask(), between.mask());

    let cyclic = compile_reduct_relation(&space, "C", 3, "(1<2 & 2<3) | (2<3 & 3<1) | (3<1 & 1<2)")?;
    let reduct = Reduct::new(space.clone(), vec![between, cyclic])?;
    for r in reduct.relations() {
        println!("{} / {}: {} orbits, formula {:?}", r.name(), r.arity(), r.orbits().len(), r.formula());
    }

    // an unsatisfiable formula is rejected
    println!("{}", compile_reduct_relation(&space, "X", 2, "1<2 & 2<1").unwrap_err());
    Ok(())
}
