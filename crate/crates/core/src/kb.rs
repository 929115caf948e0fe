//! Knowledge bases, partial partitions and objective knowledge.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::atoms::{Atom, AtomSet, Symbols};
use crate::error::{Error, Result};
use crate::formula::{Formula, Literal};

/// A ground rule `K h ← K p1, …, not n1, …` with at most one head atom.
/// A rule without head is a constraint.
///
/// Body literals keep their source order (duplicates dropped); positive
/// literals stand for `K a`, negative ones for `not a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    head: Option<Atom>,
    body: Vec<Literal>,
    pos: AtomSet,
    neg: AtomSet,
}

impl Rule {
    pub fn new(head: Option<Atom>, body: impl IntoIterator<Item = Literal>) -> Self {
        let mut lits = Vec::new();
        let (mut pos, mut neg) = (AtomSet::new(), AtomSet::new());
        for lit in body {
            let fresh = if lit.positive { pos.insert(lit.atom) } else { neg.insert(lit.atom) };
            if fresh {
                lits.push(lit);
            }
        }
        Rule { head, body: lits, pos, neg }
    }

    pub fn head(&self) -> Option<Atom> {
        self.head
    }

    pub fn body(&self) -> &[Literal] {
        &self.body
    }

    /// Atoms under `K` in the body.
    pub fn body_pos(&self) -> &AtomSet {
        &self.pos
    }

    /// Atoms under `not` in the body, i.e. `K(body⁻)`.
    pub fn body_neg(&self) -> &AtomSet {
        &self.neg
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn atoms(&self) -> AtomSet {
        let mut out = self.pos.union(&self.neg);
        out.extend(self.head);
        out
    }

    pub fn display<'a>(&'a self, symbols: &'a Symbols) -> RuleDisplay<'a> {
        RuleDisplay { rule: self, symbols }
    }
}

pub struct RuleDisplay<'a> {
    rule: &'a Rule,
    symbols: &'a Symbols,
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = self.rule.head {
            f.write_str(self.symbols.name(h))?;
        }
        if !self.rule.body.is_empty() {
            f.write_str(if self.rule.head.is_some() { " :- " } else { ":- " })?;
            for (i, lit) in self.rule.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                if !lit.positive {
                    f.write_str("not ")?;
                }
                f.write_str(self.symbols.name(lit.atom))?;
            }
        }
        f.write_str(".")
    }
}

/// A ground hybrid knowledge base: a propositional ontology and an ordered
/// rule base. `katoms` caches KA(K), the atoms occurring anywhere in the
/// rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnowledgeBase {
    symbols: Arc<Symbols>,
    ontology: Vec<Formula>,
    rules: Vec<Rule>,
    katoms: AtomSet,
}

impl KnowledgeBase {
    pub fn new(symbols: Arc<Symbols>, ontology: Vec<Formula>, rules: Vec<Rule>) -> Self {
        let mut katoms = AtomSet::new();
        for rule in &rules {
            katoms.union_with(&rule.atoms());
        }
        KnowledgeBase { symbols, ontology, rules, katoms }
    }

    pub fn symbols(&self) -> &Arc<Symbols> {
        &self.symbols
    }

    pub fn ontology(&self) -> &[Formula] {
        &self.ontology
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// KA(K).
    pub fn katoms(&self) -> &AtomSet {
        &self.katoms
    }

    /// All atoms of the knowledge base, ontology included.
    pub fn signature(&self) -> AtomSet {
        let mut out = self.katoms.clone();
        for f in &self.ontology {
            f.collect_atoms(&mut out);
        }
        out
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.symbols.lookup(name)
    }

    pub fn name(&self, atom: Atom) -> &str {
        self.symbols.name(atom)
    }

    /// Resolves names to a set of K-atoms.
    pub fn katom_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<AtomSet> {
        names
            .into_iter()
            .map(|name| match self.symbols.lookup(name) {
                Some(a) if self.katoms.contains(a) => Ok(a),
                _ => Err(Error::NotAKAtom(name.to_owned())),
            })
            .collect()
    }

    pub fn names(&self, set: &AtomSet) -> Vec<String> {
        set.names(&self.symbols).map(str::to_owned).collect()
    }

    /// Fails unless `set ⊆ KA(K)`.
    pub fn check_katoms(&self, set: &AtomSet) -> Result<()> {
        match set.difference(&self.katoms).first() {
            Some(a) => Err(Error::NotAKAtom(self.name(a).to_owned())),
            None => Ok(()),
        }
    }

    pub fn check_partition(&self, part: &Partition) -> Result<()> {
        self.check_katoms(&part.t)?;
        self.check_katoms(&part.f)
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "#ontology")?;
        for formula in &self.ontology {
            writeln!(f, "{}.", formula.display(&self.symbols))?;
        }
        writeln!(f, "#rules")?;
        for rule in &self.rules {
            writeln!(f, "{}", rule.display(&self.symbols))?;
        }
        Ok(())
    }
}

/// The K-atoms of a knowledge base, KA(K).
pub fn katoms(kb: &KnowledgeBase) -> &AtomSet {
    kb.katoms()
}

/// A pair `(T, F)` of K-atom sets. Overlap is allowed and signals conflict.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    pub t: AtomSet,
    pub f: AtomSet,
}

impl Partition {
    pub fn new(t: AtomSet, f: AtomSet) -> Self {
        Partition { t, f }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// `self ⊑ other`.
    pub fn leq(&self, other: &Partition) -> bool {
        self.t.is_subset(&other.t) && self.f.is_subset(&other.f)
    }

    /// `self ⊔ other`.
    pub fn join(&self, other: &Partition) -> Partition {
        Partition { t: self.t.union(&other.t), f: self.f.union(&other.f) }
    }

    pub fn is_consistent(&self) -> bool {
        self.t.is_disjoint(&self.f)
    }

    pub fn assigned(&self) -> AtomSet {
        self.t.union(&self.f)
    }

    pub fn is_total(&self, katoms: &AtomSet) -> bool {
        katoms.is_subset(&self.assigned())
    }

    pub fn undefined(&self, katoms: &AtomSet) -> AtomSet {
        katoms.difference(&self.assigned())
    }
}

/// A set of ground formulas, read conjunctively.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Theory {
    formulas: BTreeSet<Formula>,
}

impl Theory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, formula: Formula) -> bool {
        self.formulas.insert(formula)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.formulas.iter()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn is_subset(&self, other: &Theory) -> bool {
        self.formulas.is_subset(&other.formulas)
    }

    pub fn contains(&self, formula: &Formula) -> bool {
        self.formulas.contains(formula)
    }

    pub fn atoms(&self) -> AtomSet {
        let mut out = AtomSet::new();
        for f in &self.formulas {
            f.collect_atoms(&mut out);
        }
        out
    }

    pub fn display<'a>(&'a self, symbols: &'a Symbols) -> Vec<String> {
        self.formulas.iter().map(|f| f.display(symbols).to_string()).collect()
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Theory { formulas: iter.into_iter().collect() }
    }
}

impl Extend<Formula> for Theory {
    fn extend<I: IntoIterator<Item = Formula>>(&mut self, iter: I) {
        self.formulas.extend(iter)
    }
}

/// OB_{O,S}: the ontology formulas plus one atom per K-atom in `s`.
pub fn objective_knowledge(kb: &KnowledgeBase, s: &AtomSet) -> Result<Theory> {
    kb.check_katoms(s)?;
    Ok(objective_unchecked(kb, s))
}

pub(crate) fn objective_unchecked(kb: &KnowledgeBase, s: &AtomSet) -> Theory {
    kb.ontology.iter().cloned().chain(s.iter().map(Formula::atom)).collect()
}
