//! Quantifier-free formulas over a template signature and equality.
//!
//! Grammar (positions are 1-based in the source text):
//!
//! ```text
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := '~' unary | '(' or ')' | atom
//! atom  := NUM '=' NUM | NUM REL NUM | REL '(' NUM (',' NUM)* ')' | 'true' | 'false'
//! ```

use crate::error::{Error, Result};
use crate::orbit::Orbit;
use crate::structure::Signature;

/// A resolved formula. Positions are zero-based; relations are signature
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Eq(usize, usize),
    Rel(usize, Vec<usize>),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn parse(src: &str, signature: &Signature) -> Result<Formula> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0, signature, src_len: src.len() };
        let f = p.or()?;
        if p.pos < p.tokens.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(f)
    }

    /// Largest position mentioned (zero-based), if any.
    pub fn max_position(&self) -> Option<usize> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Eq(i, j) => Some(*i.max(j)),
            Formula::Rel(_, args) => args.iter().copied().max(),
            Formula::Not(f) => f.max_position(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().filter_map(|f| f.max_position()).max(),
        }
    }

    /// Evaluates against a type: equality from its pattern, relation atoms
    /// from its facts.
    pub fn eval(&self, orbit: &Orbit) -> bool {
        self.eval_with(&|i, j| orbit.same(i, j), &|rel, args| orbit.holds(rel, args))
    }

    /// Evaluates with caller-supplied interpretations of equality and of the
    /// relation atoms.
    pub fn eval_with(&self, eq: &dyn Fn(usize, usize) -> bool, rel: &dyn Fn(usize, &[usize]) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Eq(i, j) => eq(*i, *j),
            Formula::Rel(r, args) => rel(*r, args),
            Formula::Not(f) => !f.eval_with(eq, rel),
            Formula::And(fs) => fs.iter().all(|f| f.eval_with(eq, rel)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval_with(eq, rel)),
        }
    }

    /// Renders back into the source grammar.
    pub fn render(&self, signature: &Signature) -> String {
        match self {
            Formula::True => "true".into(),
            Formula::False => "false".into(),
            Formula::Eq(i, j) => format!("{}={}", i + 1, j + 1),
            Formula::Rel(r, args) => format!(
                "{}({})",
                signature.name(*r),
                args.iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join(",")
            ),
            Formula::Not(f) => format!("~{}", f.render_atomic(signature)),
            Formula::And(fs) => fs.iter().map(|f| f.render_atomic(signature)).collect::<Vec<_>>().join(" & "),
            Formula::Or(fs) => fs.iter().map(|f| f.render_atomic(signature)).collect::<Vec<_>>().join(" | "),
        }
    }

    fn render_atomic(&self, signature: &Signature) -> String {
        match self {
            Formula::And(_) | Formula::Or(_) => format!("({})", self.render(signature)),
            _ => self.render(signature),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(usize),
    Sym(String),
    LParen,
    RParen,
    Comma,
    And,
    Or,
    Not,
    Equals,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '~' => Some(Tok::Not),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = single {
            out.push((off, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let n = text.parse().map_err(|_| Error::Parse { offset: off, message: "number too large".into() })?;
            out.push((off, Tok::Num(n)));
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((off, Tok::Sym(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else {
            // operator-like relation names such as `<`
            let start = i;
            while i < chars.len() {
                let d = chars[i].1;
                if d.is_alphanumeric() || d == '_' || d.is_whitespace() || "()&|~=,".contains(d) {
                    break;
                }
                i += 1;
            }
            out.push((off, Tok::Sym(chars[start..i].iter().map(|&(_, c)| c).collect())));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    signature: &'a Signature,
    src_len: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        let offset = self.tokens.get(self.pos).map_or(self.src_len, |t| t.0);
        Error::Parse { offset, message: message.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut parts = vec![self.and()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn and(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.or()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn position(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(self.error("positions are 1-based"));
        }
        Ok(n - 1)
    }

    fn relation(&self, name: &str, arity: usize) -> Result<usize> {
        let rel = self.signature.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        if self.signature.arity(rel) != arity {
            return Err(Error::ArityMismatch(format!(
                "relation `{name}` used with {arity} arguments, arity is {}",
                self.signature.arity(rel)
            )));
        }
        Ok(rel)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.next() {
            Some(Tok::Num(a)) => {
                let a = self.position(a)?;
                match self.next() {
                    Some(Tok::Equals) => match self.next() {
                        Some(Tok::Num(b)) => Ok(Formula::Eq(a, self.position(b)?)),
                        _ => {
                            self.pos -= 1;
                            Err(self.error("expected a position after `=`"))
                        }
                    },
                    Some(Tok::Sym(name)) => match self.next() {
                        Some(Tok::Num(b)) => {
                            let b = self.position(b)?;
                            Ok(Formula::Rel(self.relation(&name, 2)?, vec![a, b]))
                        }
                        _ => {
                            self.pos -= 1;
                            Err(self.error("expected a position after infix relation"))
                        }
                    },
                    _ => {
                        self.pos -= 1;
                        Err(self.error("expected `=` or an infix relation"))
                    }
                }
            }
            Some(Tok::Sym(name)) if name == "true" && self.peek() != Some(&Tok::LParen) => Ok(Formula::True),
            Some(Tok::Sym(name)) if name == "false" && self.peek() != Some(&Tok::LParen) => Ok(Formula::False),
            Some(Tok::Sym(name)) => {
                self.expect(Tok::LParen, "`(` after relation name")?;
                let mut args = Vec::new();
                loop {
                    match self.next() {
                        Some(Tok::Num(n)) => args.push(self.position(n)?),
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("expected a position"));
                        }
                    }
                    match self.next() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RParen) => break,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("expected `,` or `)`"));
                        }
                    }
                }
                Ok(Formula::Rel(self.relation(&name, args.len())?, args))
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected an atom"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::of(&[("<", 2), ("E", 3), ("A1", 1)]).unwrap()
    }

    #[test]
    fn precedence() {
        let f = Formula::parse("~1=2 | 3=4 & 1<2", &sig()).unwrap();
        assert_eq!(
            f,
            Formula::Or(vec![
                Formula::Not(Box::new(Formula::Eq(0, 1))),
                Formula::And(vec![Formula::Eq(2, 3), Formula::Rel(0, vec![0, 1])]),
            ])
        );
    }

    #[test]
    fn prefix_atoms_and_parentheses() {
        let f = Formula::parse("(1<2 & 2<3) | (3<2 & 2<1)", &sig()).unwrap();
        assert_eq!(f.max_position(), Some(2));
        let g = Formula::parse("E(1,2,3) & A1(2)", &sig()).unwrap();
        assert_eq!(g, Formula::And(vec![Formula::Rel(1, vec![0, 1, 2]), Formula::Rel(2, vec![1])]));
        assert_eq!(Formula::parse("<(1,2)", &sig()).unwrap(), Formula::Rel(0, vec![0, 1]));
    }

    #[test]
    fn errors() {
        assert!(matches!(Formula::parse("1 R 2", &sig()), Err(Error::UnknownSymbol(_))));
        assert!(matches!(Formula::parse("E(1,2)", &sig()), Err(Error::ArityMismatch(_))));
        assert!(matches!(Formula::parse("0=1", &sig()), Err(Error::Parse { .. })));
        assert!(matches!(Formula::parse("(1=2", &sig()), Err(Error::Parse { .. })));
        assert!(matches!(Formula::parse("1=2 3=4", &sig()), Err(Error::Parse { .. })));
        assert!(matches!(Formula::parse("", &sig()), Err(Error::Parse { .. })));
    }

    #[test]
    fn render_round_trip() {
        let s = sig();
        for src in ["(1<2 & 2<3) | (3<2 & 2<1)", "~(1=2) | 3=4", "E(1,2,3) & ~A1(1)", "true"] {
            let f = Formula::parse(src, &s).unwrap();
            assert_eq!(Formula::parse(&f.render(&s), &s).unwrap(), f);
        }
    }
}
