//! Ground propositional formulas: the ontology fragment and the members of
//! objective theories.

use std::fmt;

use crate::atoms::{Atom, AtomSet, Symbols};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// The literal `a` or `¬a`.
    pub fn literal(lit: Literal) -> Self {
        if lit.positive {
            Formula::Atom(lit.atom)
        } else {
            Formula::not(Formula::Atom(lit.atom))
        }
    }

    pub fn collect_atoms(&self, out: &mut AtomSet) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(*a);
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// Classical evaluation; atoms in `model` are true, all others false.
    pub fn eval(&self, model: &AtomSet) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => model.contains(*a),
            Formula::Not(f) => !f.eval(model),
            Formula::And(l, r) => l.eval(model) && r.eval(model),
            Formula::Or(l, r) => l.eval(model) || r.eval(model),
            Formula::Implies(l, r) => !l.eval(model) || r.eval(model),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::True | Formula::False | Formula::Atom(_) => 5,
        }
    }

    pub fn display<'a>(&'a self, symbols: &'a Symbols) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, symbols }
    }
}

/// A propositional literal over an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal { atom: self.atom, positive: !self.positive }
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    symbols: &'a Symbols,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, formula: &Formula, min_prec: u8) -> fmt::Result {
        let parens = formula.precedence() < min_prec;
        if parens {
            f.write_str("(")?;
        }
        match formula {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Atom(a) => f.write_str(self.symbols.name(*a))?,
            Formula::Not(inner) => {
                f.write_str("-")?;
                self.write(f, inner, 4)?;
            }
            // `&` and `|` associate to the left, `->` to the right.
            Formula::And(l, r) => {
                self.write(f, l, 3)?;
                f.write_str(" & ")?;
                self.write(f, r, 4)?;
            }
            Formula::Or(l, r) => {
                self.write(f, l, 2)?;
                f.write_str(" | ")?;
                self.write(f, r, 3)?;
            }
            Formula::Implies(l, r) => {
                self.write(f, l, 2)?;
                f.write_str(" -> ")?;
                self.write(f, r, 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_minimal_parentheses() {
        let mut s = Symbols::new();
        let (a, b, c) = (s.intern("a"), s.intern("b"), s.intern("c"));
        let (fa, fb, fc) = (Formula::atom(a), Formula::atom(b), Formula::atom(c));
        let f = Formula::implies(Formula::and(fa.clone(), Formula::not(fb.clone())), fc.clone());
        assert_eq!(f.display(&s).to_string(), "a & -b -> c");
        let g = Formula::implies(Formula::implies(fa.clone(), fb.clone()), fc.clone());
        assert_eq!(g.display(&s).to_string(), "(a -> b) -> c");
        let h = Formula::not(Formula::or(fa, Formula::and(fb, fc)));
        assert_eq!(h.display(&s).to_string(), "-(a | b & c)");
    }

    #[test]
    fn eval_implication() {
        let mut s = Symbols::new();
        let (a, b) = (s.intern("a"), s.intern("b"));
        let f = Formula::implies(Formula::atom(a), Formula::atom(b));
        let only_a: AtomSet = [a].into_iter().collect();
        assert!(!f.eval(&only_a));
        assert!(f.eval(&AtomSet::new()));
    }
}
