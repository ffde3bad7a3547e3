//! The two brute-force oracles: complete types and weak orders.

use orbitsolve::catalog;
use orbitsolve::oracle::{type_space_decide, weak_order_decide};
use orbitsolve::Instance;

fn main() -> orbitsolve::Result<()> {
    let q = catalog::load_reduct("q-order")?;
    let lt = q.space().signature().index_of("<").unwrap();
    let inst = Instance::indexed(3, &[("<", &[0, 1]), ("<", &[0, 2])]);
    let v = type_space_decide(&q, &inst)?;
    println!("{} with {} solution types", v.status(), v.count());
    for s in &v.solutions {
        println!("  {}", s.describe_weak_order(lt, &inst.variables).unwrap());
    }
    assert_eq!(v.solutions, weak_order_decide(&q, &inst)?.solutions);

    let b = catalog::load_reduct("betweenness")?;
    let inst = Instance::indexed(3, &[("B", &[0, 1, 2])]);
    println!("B(x1,x2,x3) alone: {} types", type_space_decide(&b, &inst)?.count());
    Ok(())
}
