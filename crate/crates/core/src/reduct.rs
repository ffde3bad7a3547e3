//! First-order reducts (relations given as unions of orbits) and instances
//! over them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumerate::OrbitSpace;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::orbit::OrbitLabel;

/// A relation of a reduct: a set of orbits of `arity`-tuples of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductRelation {
    name: String,
    arity: usize,
    orbits: Vec<u32>,
    mask: Vec<bool>,
    formula: Option<String>,
}

impl ReductRelation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Orbit indices (into the base table for `arity`), ascending.
    pub fn orbits(&self) -> &[u32] {
        &self.orbits
    }

    pub fn labels(&self) -> Vec<OrbitLabel> {
        self.orbits.iter().map(|&index| OrbitLabel { n: self.arity, index }).collect()
    }

    pub fn contains(&self, index: u32) -> bool {
        self.mask.get(index as usize).copied().unwrap_or(false)
    }

    /// Membership mask over all `arity`-orbits.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Source text of the defining formula, when it was given by one.
    pub fn formula(&self) -> Option<&str> {
        self.formula.as_deref()
    }
}

/// Compiles a quantifier-free formula into the set of `arity`-orbits that
/// satisfy it. Empty results are rejected.
pub fn compile_reduct_relation(space: &OrbitSpace, name: &str, arity: usize, formula: &str) -> Result<ReductRelation> {
    compile_reduct_relation_with(space, name, arity, formula, false)
}

pub fn compile_reduct_relation_with(
    space: &OrbitSpace,
    name: &str,
    arity: usize,
    formula: &str,
    allow_empty: bool,
) -> Result<ReductRelation> {
    crate::structure::check_symbol_name(name)?;
    if arity == 0 {
        return Err(Error::InvalidReduct(format!("relation `{name}` has arity 0")));
    }
    let f = Formula::parse(formula, space.signature())?;
    if let Some(p) = f.max_position() {
        if p >= arity {
            return Err(Error::PositionOutOfRange { position: p + 1, n: arity });
        }
    }
    let table = space.table(arity)?;
    let mask: Vec<bool> = table.orbits().iter().map(|o| f.eval(o)).collect();
    finish(name, arity, mask, Some(formula.to_string()), allow_empty)
}

/// A relation given directly as a set of orbit labels.
pub fn relation_from_labels(
    space: &OrbitSpace,
    name: &str,
    arity: usize,
    labels: &[OrbitLabel],
    allow_empty: bool,
) -> Result<ReductRelation> {
    crate::structure::check_symbol_name(name)?;
    let table = space.table(arity)?;
    let mut mask = vec![false; table.len()];
    for l in labels {
        if l.n != arity || l.index as usize >= table.len() {
            return Err(Error::InvalidReduct(format!("relation `{name}`: no orbit {l} among the {arity}-orbits")));
        }
        mask[l.index as usize] = true;
    }
    finish(name, arity, mask, None, allow_empty)
}

/// A relation given by a membership mask over the `arity`-orbits.
pub fn relation_from_mask(
    name: &str,
    arity: usize,
    mask: Vec<bool>,
    formula: Option<String>,
) -> Result<ReductRelation> {
    finish(name, arity, mask, formula, true)
}

fn finish(
    name: &str,
    arity: usize,
    mask: Vec<bool>,
    formula: Option<String>,
    allow_empty: bool,
) -> Result<ReductRelation> {
    let orbits: Vec<u32> = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i as u32).collect();
    if orbits.is_empty() && !allow_empty {
        return Err(Error::InvalidReduct(format!(
            "relation `{name}` is empty; mark it explicitly as empty if that is intended"
        )));
    }
    Ok(ReductRelation { name: name.to_string(), arity, orbits, mask, formula })
}

/// A first-order reduct of the template behind `space`.
#[derive(Clone, Debug)]
pub struct Reduct {
    space: Arc<OrbitSpace>,
    relations: Vec<ReductRelation>,
}

impl Reduct {
    /// Relation names must be unique. A name shared with a base relation is
    /// accepted only when it denotes that same base relation.
    pub fn new(space: Arc<OrbitSpace>, relations: Vec<ReductRelation>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if relations[..i].iter().any(|o| o.name == r.name) {
                return Err(Error::InvalidReduct(format!("duplicate relation `{}`", r.name)));
            }
            if let Some(base) = space.signature().index_of(&r.name) {
                let arity = space.signature().arity(base);
                let args: Vec<String> = (1..=arity).map(|p| p.to_string()).collect();
                let copy = compile_reduct_relation_with(
                    &space,
                    &r.name,
                    arity,
                    &format!("{}({})", r.name, args.join(",")),
                    true,
                )?;
                if copy.arity != r.arity || copy.orbits != r.orbits {
                    return Err(Error::InvalidReduct(format!(
                        "relation `{}` clashes with the base relation of the same name",
                        r.name
                    )));
                }
            }
        }
        Ok(Reduct { space, relations })
    }

    /// The reduct whose relations are exactly the base relations.
    pub fn identity(space: Arc<OrbitSpace>) -> Result<Self> {
        let rels = space
            .signature()
            .relations()
            .iter()
            .map(|r| {
                let args: Vec<String> = (1..=r.arity).map(|p| p.to_string()).collect();
                compile_reduct_relation_with(&space, &r.name, r.arity, &format!("{}({})", r.name, args.join(",")), true)
            })
            .collect::<Result<Vec<_>>>()?;
        Reduct::new(space, rels)
    }

    /// Compiles `(name, arity, formula)` triples.
    pub fn from_formulas(space: Arc<OrbitSpace>, defs: &[(&str, usize, &str)]) -> Result<Self> {
        let rels = defs
            .iter()
            .map(|&(name, arity, f)| compile_reduct_relation(&space, name, arity, f))
            .collect::<Result<Vec<_>>>()?;
        Reduct::new(space, rels)
    }

    pub fn space(&self) -> &Arc<OrbitSpace> {
        &self.space
    }

    pub fn base(&self) -> &crate::structure::Template {
        self.space.template()
    }

    pub fn relations(&self) -> &[ReductRelation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<(usize, &ReductRelation)> {
        self.relations.iter().enumerate().find(|(_, r)| r.name == name)
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }

    /// Checks names and arities; returns the index form of the instance.
    pub fn resolve(&self, instance: &Instance) -> Result<ResolvedInstance> {
        let report = validate_instance(self, instance);
        if !report.is_ok() {
            return Err(Error::InvalidInstance(report.violations));
        }
        let var = |name: &str| instance.variables.iter().position(|v| v == name).unwrap();
        let constraints = instance
            .constraints
            .iter()
            .map(|c| {
                let (relation, _) = self.relation(&c.relation).unwrap();
                let scope: Vec<usize> = c.scope.iter().map(|v| var(v)).collect();
                let mut vars: Vec<usize> = Vec::new();
                let pattern = scope
                    .iter()
                    .map(|&v| match vars.iter().position(|&u| u == v) {
                        Some(i) => i,
                        None => {
                            vars.push(v);
                            vars.len() - 1
                        }
                    })
                    .collect();
                ResolvedConstraint { relation, scope, vars, pattern }
            })
            .collect();
        Ok(ResolvedInstance { n: instance.variables.len(), constraints })
    }

    /// Membership mask, over the orbits of the constraint's distinct
    /// variables, of the tuples that satisfy it (repeated variables collapsed).
    pub fn scope_mask(&self, c: &ResolvedConstraint) -> Result<Vec<bool>> {
        let rel = &self.relations[c.relation];
        let proj = self.space.projection(c.vars.len(), &c.pattern)?;
        Ok(proj.iter().map(|&r| rel.contains(r)).collect())
    }
}

/// Image of an orbit set of `n`-orbits under restriction to `positions`.
pub fn restrict_mask(space: &OrbitSpace, n: usize, allowed: &[bool], positions: &[usize]) -> Result<Vec<bool>> {
    let proj = space.projection(n, positions)?;
    let mut out = vec![false; space.table(positions.len())?.len()];
    for (i, &a) in allowed.iter().enumerate() {
        if a {
            out[proj[i] as usize] = true;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub relation: String,
    pub scope: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(variables: Vec<String>, constraints: Vec<Constraint>) -> Self {
        Instance { variables, constraints }
    }

    /// Variables `x1..xn` and constraints given by variable indices.
    pub fn indexed(n: usize, constraints: &[(&str, &[usize])]) -> Self {
        let variables = (1..=n).map(|i| format!("x{i}")).collect();
        let constraints = constraints
            .iter()
            .map(|(rel, scope)| Constraint {
                relation: rel.to_string(),
                scope: scope.iter().map(|&i| format!("x{}", i + 1)).collect(),
            })
            .collect();
        Instance { variables, constraints }
    }

    pub fn push(&mut self, relation: &str, scope: &[&str]) {
        self.constraints
            .push(Constraint { relation: relation.to_string(), scope: scope.iter().map(|s| s.to_string()).collect() });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedConstraint {
    pub relation: usize,
    /// Variable indices in argument order, repeats allowed.
    pub scope: Vec<usize>,
    /// Distinct variables of the scope in order of first occurrence.
    pub vars: Vec<usize>,
    /// For each argument position, the index of its variable in `vars`.
    pub pattern: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedInstance {
    pub n: usize,
    pub constraints: Vec<ResolvedConstraint>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reports every name and arity problem of `instance` against `reduct`.
pub fn validate_instance(reduct: &Reduct, instance: &Instance) -> ValidationReport {
    let mut violations = Vec::new();
    if instance.variables.is_empty() {
        violations.push("instance declares no variables".to_string());
    }
    for (i, v) in instance.variables.iter().enumerate() {
        if instance.variables[..i].contains(v) {
            violations.push(format!("variable `{v}` declared twice"));
        }
    }
    for (i, c) in instance.constraints.iter().enumerate() {
        match reduct.relation(&c.relation) {
            None => violations.push(format!("constraint {i}: unknown relation `{}`", c.relation)),
            Some((_, r)) if r.arity() != c.scope.len() => violations.push(format!(
                "constraint {i}: relation `{}` has arity {}, scope has {} variables",
                c.relation,
                r.arity(),
                c.scope.len()
            )),
            _ => {}
        }
        for v in &c.scope {
            if !instance.variables.contains(v) {
                violations.push(format!("constraint {i}: undeclared variable `{v}`"));
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::enumerate::enumerate_orbits;

    #[test]
    fn betweenness_is_two_orbits() {
        let space = OrbitSpace::new(catalog::q_order());
        let b = compile_reduct_relation(&space, "B", 3, "(1<2 & 2<3) | (3<2 & 2<1)").unwrap();
        assert_eq!(b.orbits().len(), 2);
    }

    #[test]
    fn tautology_selects_everything() {
        let space = OrbitSpace::new(catalog::q_order());
        let r = compile_reduct_relation(&space, "T", 2, "1=1").unwrap();
        assert_eq!(r.orbits(), &[0, 1, 2]);
    }

    #[test]
    fn eq_or_eq_matches_partition_filter() {
        let space = OrbitSpace::new(catalog::equality());
        let r = compile_reduct_relation(&space, "R", 4, "1=2 | 3=4").unwrap();
        // brute force over the 15 partitions of four positions
        let parts = enumerate_orbits(&catalog::equality(), 4).unwrap();
        let expected: Vec<u32> = parts
            .iter()
            .enumerate()
            .filter(|(_, o)| o.eq_pattern()[0] == o.eq_pattern()[1] || o.eq_pattern()[2] == o.eq_pattern()[3])
            .map(|(i, _)| i as u32)
            .collect();
        assert_eq!(expected.len(), 8);
        assert_eq!(r.orbits(), expected.as_slice());
    }

    #[test]
    fn z_relation_over_q_order() {
        let space = OrbitSpace::new(catalog::q_order());
        let z = compile_reduct_relation(&space, "Z", 4, "~(1=2) | 3=4").unwrap();
        let t4 = space.table(4).unwrap();
        for (i, o) in t4.orbits().iter().enumerate() {
            assert_eq!(z.contains(i as u32), !o.same(0, 1) || o.same(2, 3));
        }
    }

    #[test]
    fn empty_relation_needs_flag() {
        let space = OrbitSpace::new(catalog::q_order());
        assert!(compile_reduct_relation(&space, "F", 2, "1<2 & 2<1").is_err());
        assert!(compile_reduct_relation_with(&space, "F", 2, "1<2 & 2<1", true).is_ok());
        assert!(relation_from_labels(&space, "F", 2, &[], false).is_err());
    }

    #[test]
    fn labels_must_exist() {
        let space = OrbitSpace::new(catalog::q_order());
        assert!(relation_from_labels(&space, "L", 2, &[OrbitLabel { n: 2, index: 3 }], false).is_err());
        let r = relation_from_labels(&space, "L", 2, &[OrbitLabel { n: 2, index: 1 }], false).unwrap();
        assert_eq!(r.labels()[0].to_string(), "2:O1");
    }

    #[test]
    fn base_name_clash() {
        let space = OrbitSpace::new(catalog::q_order());
        let bad = compile_reduct_relation(&space, "<", 2, "2<1").unwrap();
        assert!(Reduct::new(space.clone(), vec![bad]).is_err());
        assert!(Reduct::identity(space).is_ok());
    }

    #[test]
    fn validation_reports() {
        let r = catalog::load_reduct("betweenness").unwrap();
        let ok = Instance::indexed(3, &[("B", &[0, 1, 2])]);
        assert!(validate_instance(&r, &ok).is_ok());
        let arity = Instance::indexed(3, &[("B", &[0, 1, 2]), ("B", &[0, 1])]);
        let rep = validate_instance(&r, &arity);
        assert_eq!(rep.violations.len(), 1);
        assert!(rep.violations[0].starts_with("constraint 1"));
        let mut undeclared = Instance::indexed(2, &[]);
        undeclared.push("B", &["x1", "x2", "x9"]);
        assert!(validate_instance(&r, &undeclared).violations[0].contains("x9"));
    }

    #[test]
    fn resolve_collapses_repeats() {
        let r = catalog::load_reduct("betweenness").unwrap();
        let inst = Instance::indexed(2, &[("B", &[1, 0, 1])]);
        let res = r.resolve(&inst).unwrap();
        assert_eq!(res.constraints[0].vars, vec![1, 0]);
        assert_eq!(res.constraints[0].pattern, vec![0, 1, 0]);
        // B never holds with a repeated variable
        assert!(r.scope_mask(&res.constraints[0]).unwrap().iter().all(|&m| !m));
    }
}
