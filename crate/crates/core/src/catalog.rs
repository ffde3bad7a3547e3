//! Built-in templates, reducts and explicit finite templates.

use std::sync::Arc;

use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::finite::ExplicitFiniteTemplate;
use crate::reduct::{compile_reduct_relation, Reduct};
use crate::structure::{Bound, BoundBuilder, Signature, Template};

/// The rationals with their strict order: comparability, irreflexivity and
/// transitivity bounds, in that order.
pub fn q_order() -> Template {
    let sig = Signature::of(&[("<", 2)]).unwrap();
    let bounds = vec![
        BoundBuilder::new(&sig).distinct(0, 1).fails("<", &[0, 1]).fails("<", &[1, 0]).build().unwrap(),
        BoundBuilder::new(&sig).holds("<", &[0, 0]).build().unwrap(),
        BoundBuilder::new(&sig).holds("<", &[0, 1]).holds("<", &[1, 2]).fails("<", &[0, 2]).build().unwrap(),
    ];
    Template::new(sig, bounds).unwrap()
}

/// A countable set with equality only.
pub fn equality() -> Template {
    Template::new(Signature::empty(), Vec::new()).unwrap()
}

/// A partition into `m` infinite parts named `A1..Am`.
pub fn unary(m: usize) -> Result<Template> {
    if m == 0 {
        return Err(Error::InvalidSignature("a unary template needs at least one part".into()));
    }
    let names: Vec<String> = (1..=m).map(|i| format!("A{i}")).collect();
    let sig = Signature::of(&names.iter().map(|n| (n.as_str(), 1)).collect::<Vec<_>>())?;
    let mut bounds = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            bounds.push(BoundBuilder::new(&sig).holds(&names[i], &[0]).holds(&names[j], &[0]).build()?);
        }
    }
    let mut none = BoundBuilder::new(&sig);
    for n in &names {
        none = none.fails(n, &[0]);
    }
    bounds.push(none.build()?);
    Template::new(sig, bounds)
}

/// The random graph: irreflexive symmetric edge relation.
pub fn random_graph() -> Template {
    let sig = Signature::of(&[("E", 2)]).unwrap();
    let bounds = vec![
        BoundBuilder::new(&sig).holds("E", &[0, 0]).build().unwrap(),
        BoundBuilder::new(&sig).holds("E", &[0, 1]).fails("E", &[1, 0]).build().unwrap(),
    ];
    Template::new(sig, bounds).unwrap()
}

/// The random 3-hypergraph with a generic linear order: `E` is totally
/// symmetric and holds only on injective triples, `<` is a strict linear
/// order, and nothing else is forbidden.
pub fn hypergraph_ordered() -> Template {
    let sig = Signature::of(&[("E", 3), ("<", 2)]).unwrap();
    let b = || BoundBuilder::new(&sig);
    let mut bounds: Vec<Bound> = Vec::new();
    for args in [[0, 0, 1], [0, 1, 0], [1, 0, 0]] {
        bounds.push(b().holds("E", &args).build().unwrap());
    }
    for swapped in [[1, 0, 2], [0, 2, 1], [2, 1, 0]] {
        bounds.push(b().holds("E", &[0, 1, 2]).fails("E", &swapped).build().unwrap());
    }
    bounds.push(b().distinct(0, 1).fails("<", &[0, 1]).fails("<", &[1, 0]).build().unwrap());
    bounds.push(b().holds("<", &[0, 0]).build().unwrap());
    bounds.push(b().holds("<", &[0, 1]).holds("<", &[1, 2]).fails("<", &[0, 2]).build().unwrap());
    Template::new(sig, bounds).unwrap()
}

pub fn one_in_three() -> ExplicitFiniteTemplate {
    ExplicitFiniteTemplate::from_values(
        &["0", "1"],
        &[("R", vec![vec!["1", "0", "0"], vec!["0", "1", "0"], vec!["0", "0", "1"]])],
    )
    .unwrap()
}

/// Every binary relation on `{0,1}`. Relation `rABCD` contains the tuples
/// `00, 01, 10, 11` whose bit is set.
pub fn two_sat() -> ExplicitFiniteTemplate {
    let pairs = [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]];
    let names: Vec<String> = (0..16u32).map(|m| format!("r{:04b}", m)).collect();
    let rels: Vec<(&str, Vec<Vec<&str>>)> = names
        .iter()
        .enumerate()
        .map(|(m, name)| {
            let tuples = (0..4).filter(|b| m >> (3 - b) & 1 == 1).map(|b| pairs[b].to_vec()).collect();
            (name.as_str(), tuples)
        })
        .collect();
    let dom = vec!["0".to_string(), "1".to_string()];
    let relations = rels
        .into_iter()
        .map(|(name, tuples)| crate::finite::FiniteRelation {
            name: name.to_string(),
            arity: 2,
            tuples: tuples
                .iter()
                .map(|t| t.iter().map(|v| dom.iter().position(|d| d == v).unwrap()).collect())
                .collect(),
        })
        .collect();
    ExplicitFiniteTemplate::new(dom, relations).unwrap()
}

pub fn three_coloring() -> ExplicitFiniteTemplate {
    let colors = ["red", "green", "blue"];
    let mut tuples = Vec::new();
    for a in colors {
        for b in colors {
            if a != b {
                tuples.push(vec![a, b]);
            }
        }
    }
    ExplicitFiniteTemplate::from_values(&colors, &[("neq", tuples)]).unwrap()
}

/// Linear equations over the two-element field: constants and `x + y = z`.
pub fn gf2_linear() -> ExplicitFiniteTemplate {
    let mut sum = Vec::new();
    for x in 0..2u8 {
        for y in 0..2u8 {
            let z = x ^ y;
            sum.push(vec![x, y, z]);
        }
    }
    let names = ["0", "1"];
    let sum = sum.iter().map(|t| t.iter().map(|&v| names[v as usize]).collect()).collect();
    ExplicitFiniteTemplate::from_values(&names, &[("zero", vec![vec!["0"]]), ("one", vec![vec!["1"]]), ("sum", sum)])
        .unwrap()
}

#[derive(Clone, Debug)]
pub enum Payload {
    Template(Template),
    /// Base template id plus `(name, arity, formula)` definitions.
    Reduct {
        base: String,
        relations: Vec<(String, usize, String)>,
    },
    Finite(ExplicitFiniteTemplate),
    /// Documentation only.
    Note,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub note: String,
    pub payload: Payload,
}

const IDS: &[&str] = &[
    "q-order",
    "betweenness",
    "q-order-Z",
    "equality",
    "neq",
    "Z",
    "eq-or-eq",
    "neq-Z",
    "unary-2",
    "unary-3",
    "unary-2-semilattice",
    "random-graph",
    "hypergraph-ordered",
    "one-in-three",
    "two-sat",
    "three-coloring",
    "gf2-linear",
    "diophantine-note",
];

/// Ids of all entries. Any `unary-<m>` with `m >= 1` is also accepted by
/// [`get`].
pub fn list() -> Vec<&'static str> {
    IDS.to_vec()
}

fn reduct(id: &str, base: &str, note: &str, rels: &[(&str, usize, &str)]) -> CatalogEntry {
    CatalogEntry {
        id: id.into(),
        note: note.into(),
        payload: Payload::Reduct {
            base: base.into(),
            relations: rels.iter().map(|&(n, a, f)| (n.to_string(), a, f.to_string())).collect(),
        },
    }
}

pub fn get(id: &str) -> Result<CatalogEntry> {
    let template =
        |t: Template, note: &str| CatalogEntry { id: id.into(), note: note.into(), payload: Payload::Template(t) };
    let finite = |t: ExplicitFiniteTemplate, note: &str| CatalogEntry {
        id: id.into(),
        note: note.into(),
        payload: Payload::Finite(t),
    };
    Ok(match id {
        "q-order" => template(q_order(), "(Q;<): comparability, irreflexivity and transitivity bounds"),
        "betweenness" => {
            reduct(id, "q-order", "betweenness: B(a,b,c) iff a<b<c or c<b<a", &[("B", 3, "(1<2 & 2<3) | (3<2 & 2<1)")])
        }
        "q-order-Z" => reduct(id, "q-order", "(Q;<,Z)", &[("<", 2, "1<2"), ("Z", 4, "~(1=2) | 3=4")]),
        "equality" => template(equality(), "pure equality on a countable set"),
        "neq" => reduct(id, "equality", "disequality", &[("neq", 2, "~(1=2)")]),
        "Z" => reduct(id, "equality", "Z(x1,x2,x3,x4) iff x1!=x2 or x3=x4", &[("Z", 4, "~(1=2) | 3=4")]),
        "eq-or-eq" => {
            reduct(id, "equality", "R(x1,x2,x3,x4) iff x1=x2 or x3=x4 (NP-complete)", &[("R", 4, "1=2 | 3=4")])
        }
        "neq-Z" => reduct(id, "equality", "(N;!=,Z)", &[("neq", 2, "~(1=2)"), ("Z", 4, "~(1=2) | 3=4")]),
        "unary-2-semilattice" => reduct(
            id,
            "unary-2",
            "expansion of the two-part partition closed under a canonical semilattice action",
            &[
                ("A1", 1, "A1(1)"),
                ("A2", 1, "A2(1)"),
                ("eq", 2, "1=2"),
                ("neq", 2, "~(1=2)"),
                ("S", 2, "A1(1) | 1=2"),
                ("Q", 2, "~(1=2) | A2(1)"),
                ("P", 3, "A1(1) | A1(2) | A1(3)"),
            ],
        ),
        "random-graph" => template(random_graph(), "the random graph"),
        "hypergraph-ordered" => template(hypergraph_ordered(), "random 3-hypergraph with a generic linear order"),
        "one-in-three" => finite(one_in_three(), "1-in-3-SAT"),
        "two-sat" => finite(two_sat(), "2-SAT: all binary Boolean relations"),
        "three-coloring" => finite(three_coloring(), "graph 3-coloring"),
        "gf2-linear" => finite(gf2_linear(), "linear equations over GF(2); not solvable by local consistency"),
        "diophantine-note" => CatalogEntry {
            id: id.into(),
            note: "the integers with addition and multiplication: the CSP is undecidable, so there is nothing to load"
                .into(),
            payload: Payload::Note,
        },
        _ => match id.strip_prefix("unary-").and_then(|m| m.parse::<usize>().ok()) {
            Some(m) => template(unary(m)?, "partition into infinite parts A1..Am"),
            None => return Err(Error::UnknownEntry(id.to_string())),
        },
    })
}

/// The base template of an entry (for reducts, the template they are
/// defined over).
pub fn load_template(id: &str) -> Result<Template> {
    match get(id)?.payload {
        Payload::Template(t) => Ok(t),
        Payload::Reduct { base, .. } => load_template(&base),
        Payload::Finite(_) => Err(Error::Unsupported(format!("`{id}` is an explicit finite template"))),
        Payload::Note => Err(Error::Unsupported(format!("`{id}` is documentation only"))),
    }
}

/// Loads a reduct entry; a template entry yields its identity reduct.
pub fn load_reduct(id: &str) -> Result<Reduct> {
    load_reduct_in(id, OrbitSpace::new(load_template(id)?))
}

/// As [`load_reduct`], over an existing orbit space of the right template.
pub fn load_reduct_in(id: &str, space: Arc<OrbitSpace>) -> Result<Reduct> {
    match get(id)?.payload {
        Payload::Template(_) => Reduct::identity(space),
        Payload::Reduct { relations, .. } => {
            let rels = relations
                .iter()
                .map(|(n, a, f)| compile_reduct_relation(&space, n, *a, f))
                .collect::<Result<Vec<_>>>()?;
            Reduct::new(space, rels)
        }
        Payload::Finite(_) => Err(Error::Unsupported(format!("`{id}` is an explicit finite template"))),
        Payload::Note => Err(Error::Unsupported(format!("`{id}` is documentation only"))),
    }
}

pub fn load_finite(id: &str) -> Result<ExplicitFiniteTemplate> {
    match get(id)?.payload {
        Payload::Finite(t) => Ok(t),
        _ => Err(Error::Unsupported(format!("`{id}` is not an explicit finite template"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_orbits;

    #[test]
    fn every_loadable_entry_validates() {
        for id in list() {
            let entry = get(id).unwrap();
            match entry.payload {
                Payload::Template(_) | Payload::Reduct { .. } => {
                    let r = load_reduct(id).unwrap();
                    for rel in r.relations() {
                        assert!(!rel.orbits().is_empty(), "{id}/{}", rel.name());
                    }
                }
                Payload::Finite(_) => {
                    load_finite(id).unwrap();
                }
                Payload::Note => assert!(load_reduct(id).is_err()),
            }
        }
        assert!(get("nope").is_err());
        assert!(get("unary-0").is_err());
    }

    #[test]
    fn orbit_count_fixtures() {
        let counts = |t: &Template| (1..=4).map(|n| enumerate_orbits(t, n).unwrap().len()).collect::<Vec<_>>();
        assert_eq!(counts(&q_order()), vec![1, 3, 13, 75]);
        assert_eq!(counts(&equality()), vec![1, 2, 5, 15]);
        assert_eq!(counts(&unary(2).unwrap()), vec![2, 6, 22, 94]);
        assert_eq!(counts(&random_graph()), vec![1, 3, 15, 127]);
        let h = hypergraph_ordered();
        let injective = enumerate_orbits(&h, 3).unwrap().into_iter().filter(|o| o.is_injective()).count();
        assert_eq!(injective, 12);
    }

    #[test]
    fn monotone_counts() {
        for id in ["q-order", "equality", "unary-2", "unary-3", "random-graph", "hypergraph-ordered"] {
            let t = load_template(id).unwrap();
            let c: Vec<usize> = (1..=4).map(|n| enumerate_orbits(&t, n).unwrap().len()).collect();
            assert!(c.windows(2).all(|w| w[0] <= w[1]), "{id}: {c:?}");
        }
    }

    #[test]
    fn q_order_has_three_bounds() {
        assert_eq!(q_order().bounds().len(), 3);
        assert_eq!(q_order().max_bound_size(), 3);
    }

    #[test]
    fn two_sat_relations() {
        let t = two_sat();
        assert_eq!(t.relations().len(), 16);
        assert_eq!(t.relation("r1111").unwrap().tuples.len(), 4);
        assert_eq!(t.relation("r0111").unwrap().tuples, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
