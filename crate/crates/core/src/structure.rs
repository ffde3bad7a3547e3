//! Signatures, forbidden conditions and templates.
//!
//! A template is a relational signature together with a finite list of
//! forbidden conditions ("bounds"). The orbits of the homogeneous structure it
//! describes are exactly the complete quantifier-free types that realize none
//! of the bounds. Whether the bounds actually describe an amalgamation class
//! is not checked here.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

impl RelationSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        RelationSymbol { name: name.into(), arity }
    }
}

/// Relation symbols with their arities. Equality is implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    relations: Vec<RelationSymbol>,
}

const RESERVED: &[char] = &['(', ')', ',', '&', '|', '~', '='];

pub(crate) fn check_symbol_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::InvalidSignature("empty relation name".into()));
    }
    if name.starts_with(|c: char| c.is_ascii_digit()) {
        return Err(Error::InvalidSignature(format!("relation name `{name}` starts with a digit")));
    }
    if name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
        return Err(Error::InvalidSignature(format!(
            "relation name `{name}` contains whitespace or a reserved character"
        )));
    }
    Ok(())
}

impl Signature {
    pub fn new(relations: Vec<RelationSymbol>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            check_symbol_name(&r.name)?;
            if r.arity == 0 {
                return Err(Error::InvalidSignature(format!("relation `{}` has arity 0", r.name)));
            }
            if relations[..i].iter().any(|o| o.name == r.name) {
                return Err(Error::InvalidSignature(format!("duplicate relation `{}`", r.name)));
            }
        }
        Ok(Signature { relations })
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    /// Convenience constructor from `(name, arity)` pairs.
    pub fn of(pairs: &[(&str, usize)]) -> Result<Self> {
        Signature::new(pairs.iter().map(|&(n, a)| RelationSymbol::new(n, a)).collect())
    }

    pub fn relations(&self) -> &[RelationSymbol] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.relations[rel].arity
    }

    pub fn name(&self, rel: usize) -> &str {
        &self.relations[rel].name
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }

    /// The sub-signature keeping only the named relations, in this
    /// signature's order.
    pub fn restrict(&self, names: &[&str]) -> Result<Signature> {
        for n in names {
            if self.index_of(n).is_none() {
                return Err(Error::UnknownSymbol((*n).to_string()));
            }
        }
        Ok(Signature {
            relations: self.relations.iter().filter(|r| names.contains(&r.name.as_str())).cloned().collect(),
        })
    }

    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.relations.iter().all(|r| other.relations.contains(r))
    }
}

/// An atomic formula over bound variables or tuple positions (zero-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Eq(usize, usize),
    Rel { rel: usize, args: Vec<usize> },
}

impl Atom {
    fn max_var(&self) -> usize {
        match self {
            Atom::Eq(i, j) => *i.max(j),
            Atom::Rel { args, .. } => args.iter().copied().max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { positive: true, atom }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { positive: false, atom }
    }
}

/// A forbidden condition: a conjunction of literals over `var_count`
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    var_count: usize,
    literals: Vec<Literal>,
}

impl Bound {
    pub fn new(signature: &Signature, literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::InvalidBound("a bound needs at least one literal".into()));
        }
        for lit in &literals {
            if let Atom::Rel { rel, args } = &lit.atom {
                if *rel >= signature.len() {
                    return Err(Error::InvalidBound(format!("relation index {rel} not in signature")));
                }
                if args.len() != signature.arity(*rel) {
                    return Err(Error::InvalidBound(format!(
                        "relation `{}` used with {} arguments, arity is {}",
                        signature.name(*rel),
                        args.len(),
                        signature.arity(*rel)
                    )));
                }
            }
        }
        let var_count = literals.iter().map(|l| l.atom.max_var()).max().unwrap_or(0) + 1;
        Ok(Bound { var_count, literals })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Template {
    signature: Signature,
    bounds: Vec<Bound>,
    max_bound_size: usize,
    max_arity: usize,
}

impl Template {
    pub fn new(signature: Signature, bounds: Vec<Bound>) -> Result<Self> {
        for b in &bounds {
            // re-validate against this signature: bounds may have been built elsewhere
            Bound::new(&signature, b.literals.clone())?;
        }
        let max_bound_size = bounds.iter().map(|b| b.var_count).max().unwrap_or(0);
        let max_arity = signature.max_arity();
        Ok(Template { signature, bounds, max_bound_size, max_arity })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn max_bound_size(&self) -> usize {
        self.max_bound_size
    }

    /// Largest relation arity, `k`.
    pub fn max_arity(&self) -> usize {
        self.max_arity
    }
}

/// Small builder used by the catalog and tests to write bounds by relation
/// name.
pub struct BoundBuilder<'a> {
    signature: &'a Signature,
    literals: Vec<Literal>,
    error: Option<Error>,
}

impl<'a> BoundBuilder<'a> {
    pub fn new(signature: &'a Signature) -> Self {
        BoundBuilder { signature, literals: Vec::new(), error: None }
    }

    fn rel_atom(&mut self, name: &str, args: &[usize]) -> Option<Atom> {
        match self.signature.index_of(name) {
            Some(rel) => Some(Atom::Rel { rel, args: args.to_vec() }),
            None => {
                self.error.get_or_insert(Error::UnknownSymbol(name.to_string()));
                None
            }
        }
    }

    pub fn holds(mut self, name: &str, args: &[usize]) -> Self {
        if let Some(a) = self.rel_atom(name, args) {
            self.literals.push(Literal::pos(a));
        }
        self
    }

    pub fn fails(mut self, name: &str, args: &[usize]) -> Self {
        if let Some(a) = self.rel_atom(name, args) {
            self.literals.push(Literal::neg(a));
        }
        self
    }

    pub fn equal(mut self, i: usize, j: usize) -> Self {
        self.literals.push(Literal::pos(Atom::Eq(i, j)));
        self
    }

    pub fn distinct(mut self, i: usize, j: usize) -> Self {
        self.literals.push(Literal::neg(Atom::Eq(i, j)));
        self
    }

    pub fn build(self) -> Result<Bound> {
        if let Some(e) = self.error {
            return Err(e);
        }
        Bound::new(self.signature, self.literals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_rejects_duplicates_and_zero_arity() {
        assert!(Signature::of(&[("R", 2), ("R", 3)]).is_err());
        assert!(Signature::of(&[("R", 0)]).is_err());
        assert!(Signature::of(&[("=", 2)]).is_err());
        assert!(Signature::of(&[("1R", 2)]).is_err());
        assert!(Signature::of(&[("<", 2), ("E", 3)]).is_ok());
    }

    #[test]
    fn bound_checks_arity_and_symbols() {
        let sig = Signature::of(&[("<", 2)]).unwrap();
        assert!(BoundBuilder::new(&sig).holds("<", &[0]).build().is_err());
        assert!(BoundBuilder::new(&sig).holds("E", &[0, 1]).build().is_err());
        assert!(Bound::new(&sig, vec![]).is_err());
        let b = BoundBuilder::new(&sig).holds("<", &[0, 1]).holds("<", &[1, 2]).fails("<", &[0, 2]).build().unwrap();
        assert_eq!(b.var_count(), 3);
    }

    #[test]
    fn template_derived_fields() {
        let sig = Signature::of(&[("<", 2), ("E", 3)]).unwrap();
        let b = BoundBuilder::new(&sig).holds("<", &[0, 0]).build().unwrap();
        let t = Template::new(sig, vec![b]).unwrap();
        assert_eq!(t.max_arity(), 3);
        assert_eq!(t.max_bound_size(), 1);
    }

    #[test]
    fn restrict_keeps_order() {
        let sig = Signature::of(&[("<", 2), ("E", 3)]).unwrap();
        let sub = sig.restrict(&["E"]).unwrap();
        assert_eq!(sub.len(), 1);
        assert!(sub.is_subsignature_of(&sig));
        assert!(sig.restrict(&["F"]).is_err());
    }
}
