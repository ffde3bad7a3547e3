//! JSON file formats for templates, reducts, instances and explicit finite
//! templates, and resolution of references that are either catalog ids or
//! file paths.
//!
//! Positions in bounds are 1-based. A reduct names its base by catalog id,
//! by a path (relative to the reduct file), or inline as a template object.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{self, Payload};
use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::finite::{ExplicitFiniteTemplate, FiniteRelation};
use crate::orbit::OrbitLabel;
use crate::reduct::{compile_reduct_relation, relation_from_labels, Constraint, Instance, Reduct};
use crate::structure::{Atom, Bound, Literal, RelationSymbol, Signature, Template};

#[derive(Serialize, Deserialize)]
struct SymbolJson {
    name: String,
    arity: usize,
}

#[derive(Serialize, Deserialize)]
struct LiteralJson {
    pol: String,
    rel: String,
    args: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TemplateJson {
    relations: Vec<SymbolJson>,
    #[serde(default)]
    bounds: Vec<Vec<LiteralJson>>,
}

#[derive(Serialize, Deserialize)]
struct ReductRelationJson {
    name: String,
    arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orbits: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    vars: Vec<String>,
    constraints: Vec<(String, Vec<String>)>,
}

#[derive(Serialize, Deserialize)]
struct FiniteRelationJson {
    name: String,
    arity: usize,
    tuples: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiniteJson {
    domain: Vec<String>,
    relations: Vec<FiniteRelationJson>,
}

pub fn template_from_json(value: &Value) -> Result<Template> {
    let t: TemplateJson = serde_json::from_value(value.clone())?;
    let sig = Signature::new(t.relations.into_iter().map(|s| RelationSymbol::new(s.name, s.arity)).collect())?;
    let mut bounds = Vec::with_capacity(t.bounds.len());
    for (bi, lits) in t.bounds.into_iter().enumerate() {
        let mut literals = Vec::with_capacity(lits.len());
        for l in lits {
            let positive = match l.pol.as_str() {
                "+" => true,
                "-" => false,
                other => return Err(Error::InvalidBound(format!("bound {}: polarity `{other}`", bi + 1))),
            };
            if l.args.contains(&0) {
                return Err(Error::InvalidBound(format!("bound {}: positions are 1-based", bi + 1)));
            }
            let args: Vec<usize> = l.args.iter().map(|a| a - 1).collect();
            let atom = if l.rel == "=" {
                if args.len() != 2 {
                    return Err(Error::InvalidBound(format!("bound {}: `=` takes two arguments", bi + 1)));
                }
                Atom::Eq(args[0], args[1])
            } else {
                let rel = sig.index_of(&l.rel).ok_or_else(|| Error::UnknownSymbol(l.rel.clone()))?;
                Atom::Rel { rel, args }
            };
            literals.push(Literal { positive, atom });
        }
        bounds.push(Bound::new(&sig, literals)?);
    }
    Template::new(sig, bounds)
}

pub fn template_to_json(t: &Template) -> Value {
    let sig = t.signature();
    let relations = sig.relations().iter().map(|r| SymbolJson { name: r.name.clone(), arity: r.arity }).collect();
    let bounds = t
        .bounds()
        .iter()
        .map(|b| {
            b.literals()
                .iter()
                .map(|l| {
                    let (rel, args) = match &l.atom {
                        Atom::Eq(i, j) => ("=".to_string(), vec![i + 1, j + 1]),
                        Atom::Rel { rel, args } => (sig.name(*rel).to_string(), args.iter().map(|a| a + 1).collect()),
                    };
                    LiteralJson { pol: if l.positive { "+" } else { "-" }.into(), rel, args }
                })
                .collect()
        })
        .collect();
    serde_json::to_value(TemplateJson { relations, bounds }).expect("template json")
}

pub fn instance_from_json(value: &Value) -> Result<Instance> {
    let i: InstanceJson = serde_json::from_value(value.clone())?;
    Ok(Instance::new(
        i.vars,
        i.constraints.into_iter().map(|(relation, scope)| Constraint { relation, scope }).collect(),
    ))
}

pub fn instance_to_json(instance: &Instance) -> Value {
    let i = InstanceJson {
        vars: instance.variables.clone(),
        constraints: instance.constraints.iter().map(|c| (c.relation.clone(), c.scope.clone())).collect(),
    };
    serde_json::to_value(i).expect("instance json")
}

pub fn finite_from_json(value: &Value) -> Result<ExplicitFiniteTemplate> {
    let f: FiniteJson = serde_json::from_value(value.clone())?;
    let mut relations = Vec::with_capacity(f.relations.len());
    for r in f.relations {
        let tuples = r
            .tuples
            .iter()
            .map(|t| {
                t.iter()
                    .map(|v| f.domain.iter().position(|d| d == v).ok_or_else(|| Error::UnknownSymbol(v.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        relations.push(FiniteRelation { name: r.name, arity: r.arity, tuples });
    }
    ExplicitFiniteTemplate::new(f.domain, relations)
}

pub fn finite_to_json(t: &ExplicitFiniteTemplate) -> Value {
    let dom = t.domain();
    let f = FiniteJson {
        domain: dom.to_vec(),
        relations: t
            .relations()
            .iter()
            .map(|r| FiniteRelationJson {
                name: r.name.clone(),
                arity: r.arity,
                tuples: r.tuples.iter().map(|tp| tp.iter().map(|&v| dom[v].clone()).collect()).collect(),
            })
            .collect(),
    };
    serde_json::to_value(f).expect("finite json")
}

/// Reduct from JSON; `dir` resolves relative base paths.
pub fn reduct_from_json(value: &Value, dir: Option<&Path>) -> Result<Reduct> {
    let base = value.get("base").ok_or_else(|| Error::InvalidReduct("missing `base`".into()))?;
    let template = match base {
        Value::String(r) => resolve_template(r, dir)?,
        Value::Object(_) => template_from_json(base)?,
        _ => return Err(Error::InvalidReduct("`base` must be a reference or a template object".into())),
    };
    let space = OrbitSpace::new(template);
    let rels: Vec<ReductRelationJson> = serde_json::from_value(
        value.get("relations").cloned().ok_or_else(|| Error::InvalidReduct("missing `relations`".into()))?,
    )?;
    let relations = rels
        .into_iter()
        .map(|r| match (r.formula, r.orbits) {
            (Some(f), None) => compile_reduct_relation(&space, &r.name, r.arity, &f),
            (None, Some(labels)) => {
                let labels = labels.iter().map(|l| l.parse()).collect::<Result<Vec<OrbitLabel>>>()?;
                relation_from_labels(&space, &r.name, r.arity, &labels, false)
            }
            _ => Err(Error::InvalidReduct(format!("relation `{}` needs exactly one of `formula` or `orbits`", r.name))),
        })
        .collect::<Result<Vec<_>>>()?;
    Reduct::new(space, relations)
}

/// Relations are written by formula when they have one, by orbit labels
/// otherwise; the base is inlined.
pub fn reduct_to_json(reduct: &Reduct) -> Value {
    let relations: Vec<ReductRelationJson> = reduct
        .relations()
        .iter()
        .map(|r| ReductRelationJson {
            name: r.name().to_string(),
            arity: r.arity(),
            formula: r.formula().map(str::to_string),
            orbits: r.formula().is_none().then(|| r.labels().iter().map(|l| l.to_string()).collect()),
        })
        .collect();
    serde_json::json!({ "base": template_to_json(reduct.base()), "relations": relations })
}

/// What a reference resolved to.
#[derive(Clone, Debug)]
pub enum Loaded {
    Reduct(Reduct),
    Finite(ExplicitFiniteTemplate),
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn as_path(reference: &str, dir: Option<&Path>) -> Option<PathBuf> {
    let p = Path::new(reference);
    let p = match dir {
        Some(d) if p.is_relative() => d.join(p),
        _ => p.to_path_buf(),
    };
    p.is_file().then_some(p)
}

/// A template from a catalog id or a template file.
pub fn resolve_template(reference: &str, dir: Option<&Path>) -> Result<Template> {
    match as_path(reference, dir) {
        Some(p) => template_from_json(&read_json(&p)?),
        None => catalog::load_template(reference),
    }
}

/// A catalog id or a file holding a reduct, a template (taken as its
/// identity reduct) or an explicit finite template.
pub fn resolve(reference: &str) -> Result<Loaded> {
    if let Some(p) = as_path(reference, None) {
        let v = read_json(&p)?;
        return if v.get("base").is_some() {
            Ok(Loaded::Reduct(reduct_from_json(&v, p.parent())?))
        } else if v.get("domain").is_some() {
            Ok(Loaded::Finite(finite_from_json(&v)?))
        } else {
            Ok(Loaded::Reduct(Reduct::identity(OrbitSpace::new(template_from_json(&v)?))?))
        };
    }
    match catalog::get(reference)?.payload {
        Payload::Finite(f) => Ok(Loaded::Finite(f)),
        _ => Ok(Loaded::Reduct(catalog::load_reduct(reference)?)),
    }
}

pub fn resolve_reduct(reference: &str) -> Result<Reduct> {
    match resolve(reference)? {
        Loaded::Reduct(r) => Ok(r),
        Loaded::Finite(_) => Err(Error::Unsupported(format!("`{reference}` is an explicit finite template"))),
    }
}

/// As [`resolve_reduct`], sharing an orbit space when the base matches.
pub fn resolve_reduct_in(reference: &str, space: &Arc<OrbitSpace>) -> Result<Reduct> {
    if as_path(reference, None).is_none() && catalog::load_template(reference).ok().as_ref() == Some(space.template()) {
        return catalog::load_reduct_in(reference, space.clone());
    }
    resolve_reduct(reference)
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&read_json(path)?)
}

/// Export of a catalog entry in the matching file format.
pub fn export_entry(id: &str) -> Result<Value> {
    let entry = catalog::get(id)?;
    Ok(match entry.payload {
        Payload::Template(t) => template_to_json(&t),
        Payload::Reduct { base, relations } => serde_json::json!({
            "base": base,
            "relations": relations
                .iter()
                .map(|(n, a, f)| serde_json::json!({ "name": n, "arity": a, "formula": f }))
                .collect::<Vec<_>>(),
        }),
        Payload::Finite(f) => finite_to_json(&f),
        Payload::Note => serde_json::json!({ "id": entry.id, "note": entry.note }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_orbits;

    #[test]
    fn template_round_trip() {
        for id in ["q-order", "equality", "unary-3", "random-graph", "hypergraph-ordered"] {
            let t = catalog::load_template(id).unwrap();
            let back = template_from_json(&template_to_json(&t)).unwrap();
            assert_eq!(back, t, "{id}");
        }
    }

    #[test]
    fn handwritten_order_template() {
        let v = serde_json::json!({
            "relations": [{"name": "<", "arity": 2}],
            "bounds": [
                [{"pol": "+", "rel": "<", "args": [1, 1]}],
                [{"pol": "+", "rel": "<", "args": [1, 2]}, {"pol": "+", "rel": "<", "args": [2, 1]}],
                [{"pol": "-", "rel": "=", "args": [1, 2]}, {"pol": "-", "rel": "<", "args": [1, 2]}, {"pol": "-", "rel": "<", "args": [2, 1]}],
                [{"pol": "+", "rel": "<", "args": [1, 2]}, {"pol": "+", "rel": "<", "args": [2, 3]}, {"pol": "-", "rel": "<", "args": [1, 3]}]
            ]
        });
        let t = template_from_json(&v).unwrap();
        assert_eq!(enumerate_orbits(&t, 3).unwrap().len(), 13);
    }

    #[test]
    fn malformed_templates() {
        let zero = serde_json::json!({"relations": [{"name": "<", "arity": 2}], "bounds": [[{"pol": "+", "rel": "<", "args": [0, 1]}]]});
        assert!(template_from_json(&zero).is_err());
        let unknown = serde_json::json!({"relations": [], "bounds": [[{"pol": "+", "rel": "R", "args": [1]}]]});
        assert!(matches!(template_from_json(&unknown), Err(Error::UnknownSymbol(_))));
        let pol = serde_json::json!({"relations": [], "bounds": [[{"pol": "?", "rel": "=", "args": [1, 2]}]]});
        assert!(template_from_json(&pol).is_err());
    }

    #[test]
    fn reduct_and_instance_files() {
        let dir = tempfile::tempdir().unwrap();
        let base = dir.path().join("order.json");
        std::fs::write(&base, template_to_json(&catalog::q_order()).to_string()).unwrap();
        let reduct = serde_json::json!({
            "base": "order.json",
            "relations": [{"name": "B", "arity": 3, "formula": "(1<2 & 2<3) | (3<2 & 2<1)"}]
        });
        let rpath = dir.path().join("b.json");
        std::fs::write(&rpath, reduct.to_string()).unwrap();
        let r = resolve_reduct(rpath.to_str().unwrap()).unwrap();
        assert_eq!(r.relation("B").unwrap().1.orbits().len(), 2);
        let inst = instance_from_json(
            &serde_json::json!({"vars": ["x1", "x2", "x3"], "constraints": [["B", ["x1", "x2", "x3"]]]}),
        )
        .unwrap();
        assert_eq!(instance_from_json(&instance_to_json(&inst)).unwrap(), inst);
        let again = reduct_from_json(&reduct_to_json(&r), None).unwrap();
        assert_eq!(again.relations(), r.relations());
    }

    #[test]
    fn orbit_label_relations() {
        let v = serde_json::json!({"base": "q-order", "relations": [{"name": "lt", "arity": 2, "orbits": ["2:O1"]}]});
        let r = reduct_from_json(&v, None).unwrap();
        assert_eq!(r.relation("lt").unwrap().1.orbits(), &[1]);
        let both = serde_json::json!({"base": "q-order", "relations": [{"name": "lt", "arity": 2}]});
        assert!(reduct_from_json(&both, None).is_err());
    }

    #[test]
    fn finite_round_trip_and_exports() {
        let t = catalog::one_in_three();
        assert_eq!(finite_from_json(&finite_to_json(&t)).unwrap(), t);
        for id in catalog::list() {
            let v = export_entry(id).unwrap();
            match catalog::get(id).unwrap().payload {
                Payload::Template(t) => assert_eq!(template_from_json(&v).unwrap(), t),
                Payload::Reduct { .. } => assert!(reduct_from_json(&v, None).is_ok(), "{id}"),
                Payload::Finite(f) => assert_eq!(finite_from_json(&v).unwrap(), f),
                Payload::Note => assert!(v["note"].is_string()),
            }
        }
    }

    #[test]
    fn resolve_kinds() {
        assert!(matches!(resolve("two-sat").unwrap(), Loaded::Finite(_)));
        assert!(matches!(resolve("betweenness").unwrap(), Loaded::Reduct(_)));
        assert!(matches!(resolve("no-such-thing"), Err(Error::UnknownEntry(_))));
    }
}
