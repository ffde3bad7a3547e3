use std::sync::Arc;

use orbitsolve::catalog;
use orbitsolve::consistency::{ab_minimality, ab_minimality_with, Schedule};
use orbitsolve::finite::{solve_csp, verify_assignment, Solution, SolverConfig, ValueOrder};
use orbitsolve::oracle::{type_space_decide, weak_order_decide};
use orbitsolve::reduct::compile_reduct_relation_with;
use orbitsolve::reduction::{decide, reduce_instance};
use orbitsolve::{Instance, Orbit, OrbitSpace, Reduct};
use proptest::prelude::*;

const TEMPLATES: &[&str] = &["q-order", "equality", "unary-2", "random-graph", "hypergraph-ordered"];
const REDUCTS: &[&str] =
    &["q-order", "betweenness", "q-order-Z", "neq", "Z", "eq-or-eq", "neq-Z", "unary-2-semilattice", "random-graph"];

fn space(id: &str) -> Arc<OrbitSpace> {
    OrbitSpace::new(catalog::load_template(id).unwrap())
}

/// Random instance over the relations of `r`; scopes may repeat variables.
fn instance_strategy(r: &Reduct, max_n: usize) -> impl Strategy<Value = Instance> {
    let rels: Vec<(String, usize)> = r.relations().iter().map(|x| (x.name().to_string(), x.arity())).collect();
    (2..=max_n).prop_flat_map(move |n| {
        let rels = rels.clone();
        let constraint = (0..rels.len(), prop::collection::vec(0..n, 4)).prop_map(move |(ri, vs)| {
            let (name, arity) = rels[ri].clone();
            (name, vs[..arity].to_vec())
        });
        prop::collection::vec(constraint, 0..=2 * n).prop_map(move |cs| {
            let refs: Vec<(&str, &[usize])> = cs.iter().map(|(r, s)| (r.as_str(), s.as_slice())).collect();
            Instance::indexed(n, &refs)
        })
    })
}

fn reduct_and_instance(max_n: usize) -> impl Strategy<Value = (Reduct, Instance)> {
    (0..REDUCTS.len()).prop_flat_map(move |i| {
        let r = catalog::load_reduct(REDUCTS[i]).unwrap();
        instance_strategy(&r, max_n).prop_map(move |inst| (r.clone(), inst))
    })
}

fn atom(arity: usize) -> impl Strategy<Value = String> {
    prop_oneof![
        (1..=arity, 1..=arity).prop_map(|(i, j)| format!("{i}={j}")),
        (1..=arity, 1..=arity).prop_map(|(i, j)| format!("{i}<{j}")),
    ]
}

fn literal(arity: usize) -> impl Strategy<Value = String> {
    (atom(arity), any::<bool>()).prop_map(|(a, neg)| if neg { format!("~({a})") } else { a })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_json_round_trip(t in 0..TEMPLATES.len(), n in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let s = space(TEMPLATES[t]);
        let table = s.table(n).unwrap();
        let o = table.get(pick.index(table.len()) as u32);
        let back = Orbit::from_json(s.signature(), &o.to_json(s.signature())).unwrap();
        prop_assert_eq!(&back, o);
    }

    #[test]
    fn restrictions_of_valid_orbits_are_valid(
        t in 0..TEMPLATES.len(),
        pick in any::<prop::sample::Index>(),
        distinct in prop::sample::subsequence(vec![0usize, 1, 2, 3], 1..=4).prop_shuffle(),
        repeated in prop::collection::vec(0usize..4, 1..=4),
    ) {
        let s = space(TEMPLATES[t]);
        let table = s.table(4).unwrap();
        let o = table.get(pick.index(table.len()) as u32);
        let r = o.restrict(&distinct).unwrap();
        prop_assert!(s.table(distinct.len()).unwrap().index_of(&r).is_some());
        let i = o.induced(&repeated);
        prop_assert!(s.table(repeated.len()).unwrap().index_of(&i).is_some());
    }

    #[test]
    fn compilation_respects_connectives(a in literal(3), b in literal(3)) {
        let s = space("q-order");
        let mask = |f: &str| compile_reduct_relation_with(&s, "R", 3, f, true).unwrap().mask().to_vec();
        let (ma, mb) = (mask(&a), mask(&b));
        let or = mask(&format!("({a}) | ({b})"));
        let and = mask(&format!("({a}) & ({b})"));
        for i in 0..ma.len() {
            prop_assert_eq!(or[i], ma[i] || mb[i]);
            prop_assert_eq!(and[i], ma[i] && mb[i]);
        }
    }

    #[test]
    fn reduction_is_exact((r, inst) in reduct_and_instance(5)) {
        let oracle = type_space_decide(&r, &inst).unwrap();
        let out = decide(&r, &inst, &SolverConfig::default()).unwrap();
        prop_assert_eq!(out.is_sat(), oracle.is_sat());
        if let Some(w) = &out.witness {
            prop_assert!(oracle.solutions.binary_search(w).is_ok(), "glued witness is not a solution");
        }
    }

    #[test]
    fn witnesses_verify_and_unsat_is_stable((r, inst) in reduct_and_instance(5)) {
        let csp = reduce_instance(&r, &inst).unwrap().to_csp().unwrap();
        let fwd = solve_csp(&csp, &SolverConfig::default());
        let rev = solve_csp(&csp, &SolverConfig { value_order: ValueOrder::Reversed, ..Default::default() });
        if let Solution::Sat(a) = &fwd.solution {
            prop_assert!(verify_assignment(&csp, a));
        }
        if let Solution::Sat(a) = &rev.solution {
            prop_assert!(verify_assignment(&csp, a));
        }
        prop_assert_eq!(fwd.is_sat(), rev.is_sat());
    }

    #[test]
    fn minimality_is_monotone_and_sound((r, inst) in reduct_and_instance(5)) {
        let b0 = r.max_arity().max(3);
        let weak = ab_minimality(&r, &inst, 2, b0).unwrap().is_refuted();
        let mid = ab_minimality(&r, &inst, 3, b0 + 1).unwrap().is_refuted();
        let strong = ab_minimality(&r, &inst, 4, b0 + 3).unwrap().is_refuted();
        let unsat = !type_space_decide(&r, &inst).unwrap().is_sat();
        prop_assert!(!weak || mid);
        prop_assert!(!mid || strong);
        prop_assert!(!strong || unsat);
    }

    #[test]
    fn schedules_reach_the_same_fixpoint((r, inst) in reduct_and_instance(5)) {
        let b = r.max_arity().max(3);
        let a = ab_minimality_with(&r, &inst, 2, b, Schedule::Canonical).unwrap();
        let c = ab_minimality_with(&r, &inst, 2, b, Schedule::Rounds).unwrap();
        let d = ab_minimality_with(&r, &inst, 2, b, Schedule::Reversed).unwrap();
        prop_assert_eq!(&a.domains, &c.domains);
        prop_assert_eq!(&a.domains, &d.domains);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_oracles_agree(inst in instance_strategy(&catalog::load_reduct("betweenness").unwrap(), 5)) {
        let r = catalog::load_reduct("betweenness").unwrap();
        prop_assert_eq!(type_space_decide(&r, &inst).unwrap().solutions, weak_order_decide(&r, &inst).unwrap().solutions);
    }
}

#[test]
fn unconstrained_solutions_are_all_orbits() {
    for id in TEMPLATES {
        let r = catalog::load_reduct(id).unwrap();
        for n in 1..=3 {
            let v = type_space_decide(&r, &Instance::indexed(n, &[])).unwrap();
            assert_eq!(v.count(), r.space().table(n).unwrap().len(), "{id}, n={n}");
        }
    }
}

#[test]
fn every_orbit_formula_compiles_to_a_singleton() {
    for id in TEMPLATES {
        let s = space(id);
        let table = s.table(2).unwrap();
        for i in 0..table.len() as u32 {
            let o = table.get(i);
            let mut lits = vec![if o.same(0, 1) { "1=2".to_string() } else { "~(1=2)".to_string() }];
            for (rel, sym) in s.signature().relations().iter().enumerate() {
                let mut tuple = vec![0usize; sym.arity];
                loop {
                    let args: Vec<String> = tuple.iter().map(|p| (p + 1).to_string()).collect();
                    let a = format!("{}({})", sym.name, args.join(","));
                    lits.push(if o.holds(rel, &tuple) { a } else { format!("~({a})") });
                    let mut k = 0;
                    while k < tuple.len() && tuple[k] == 1 {
                        tuple[k] = 0;
                        k += 1;
                    }
                    if k == tuple.len() {
                        break;
                    }
                    tuple[k] += 1;
                }
            }
            let rel = compile_reduct_relation_with(&s, "R", 2, &lits.join(" & "), false).unwrap();
            assert_eq!(rel.orbits(), &[i], "{id}: {}", lits.join(" & "));
        }
    }
}
