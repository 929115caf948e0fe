//! DPLL-style model search with a well-founded operator as propagator, and
//! the guess-and-verify check for total partitions.
//!
//! At every node the chosen operator is run from the current partition and
//! its result joined in. An overlapping result closes the branch, a total
//! one is a model provided `OB_{O,T}` is consistent, and otherwise the unassigned K-atom with the lowest id is
//! branched on, true before false.

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::kb::{objective_unchecked, Partition, Theory};
use crate::operators::Propagator;
use crate::reasoner::Reasoner;

/// A total, consistent partition together with `OB_{O,T}`, which fixes the
/// MKNF model it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelWitness {
    pub partition: Partition,
    pub objective: Theory,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveResult {
    pub sat: bool,
    pub models: Vec<ModelWitness>,
    /// Branching nodes visited.
    pub decisions: usize,
    /// Propagator fixpoints computed.
    pub propagations: usize,
    /// Branches closed by an overlapping partition.
    pub conflicts: usize,
}

struct Search<'a> {
    reasoner: &'a Reasoner,
    propagator: Propagator,
    limit: Option<usize>,
    out: SolveResult,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.out.models.len() >= l)
    }

    fn run(&mut self, part: Partition) {
        if self.done() {
            return;
        }
        let kb = self.reasoner.kb();
        self.out.propagations += 1;
        let wfm = self.reasoner.fixpoint_unchecked(self.propagator, &part);
        let part = part.join(&wfm.result);
        if !part.is_consistent() {
            self.out.conflicts += 1;
            return;
        }
        let Some(atom) = part.undefined(kb.katoms()).first() else {
            // An inconsistent ontology makes every atom entailed, so the
            // operators return a total disjoint partition whose objective
            // knowledge has no model at all.
            if !self.reasoner.oracle().consistent(&part.t, &[]) {
                self.out.conflicts += 1;
                return;
            }
            let objective = objective_unchecked(kb, &part.t);
            self.out.models.push(ModelWitness { partition: part, objective });
            return;
        };
        self.out.decisions += 1;
        self.run(assign(&part, atom, true));
        self.run(assign(&part, atom, false));
    }
}

fn assign(part: &Partition, atom: Atom, value: bool) -> Partition {
    let mut next = part.clone();
    if value {
        next.t.insert(atom);
    } else {
        next.f.insert(atom);
    }
    next
}

impl Reasoner {
    /// First model found from `(∅, ∅)`, if any.
    pub fn solve(&self, propagator: Propagator) -> SolveResult {
        self.search(propagator, Some(1))
    }

    /// Every model (up to `limit`) in branch order.
    pub fn enumerate_models(&self, propagator: Propagator, limit: Option<usize>) -> SolveResult {
        self.search(propagator, limit)
    }

    fn search(&self, propagator: Propagator, limit: Option<usize>) -> SolveResult {
        let mut search = Search { reasoner: self, propagator, limit, out: SolveResult::default() };
        if limit != Some(0) {
            search.run(Partition::empty());
        }
        let mut out = search.out;
        out.sat = !out.models.is_empty();
        debug_assert!(out.models.iter().all(|m| self.verify_total(&m.partition).unwrap_or(false)));
        out
    }

    /// Whether a total partition induces an MKNF model: `OB_{O,T}` is
    /// consistent and `Γ(T) = T`.
    pub fn verify_total(&self, part: &Partition) -> Result<bool> {
        let kb = self.kb();
        kb.check_partition(part)?;
        if !part.is_consistent() {
            let overlap = part.t.intersection(&part.f);
            return Err(Error::InconsistentPartition(kb.names(&overlap).join(", ")));
        }
        if !part.is_total(kb.katoms()) {
            return Err(Error::NotTotal(kb.names(&part.undefined(kb.katoms())).join(", ")));
        }
        let accepted = self.oracle().consistent(&part.t, &[]) && self.gamma_unchecked(&part.t, false) == part.t;
        debug_assert!(
            !accepted || self.unfounded_unchecked(part).greatest == part.f,
            "accepted partition whose false atoms are not the greatest unfounded set"
        );
        Ok(accepted)
    }

    /// Every total partition accepted by [`Reasoner::verify_total`], in
    /// ascending order of the true set's bit pattern.
    pub fn guess_and_verify(&self) -> Vec<Partition> {
        let ka = self.kb().katoms();
        ka.subsets()
            .map(|t| {
                let f = ka.difference(&t);
                Partition::new(t, f)
            })
            .filter(|p| self.verify_total(p).expect("total partitions over KA"))
            .collect()
    }
}

/// Sorted true sets of a model list, for order-insensitive comparison.
pub fn true_sets<'a>(parts: impl IntoIterator<Item = &'a Partition>) -> Vec<AtomSet> {
    let mut out: Vec<AtomSet> = parts.into_iter().map(|p| p.t.clone()).collect();
    out.sort_by(|a, b| a.iter().cmp(b.iter()));
    out
}
