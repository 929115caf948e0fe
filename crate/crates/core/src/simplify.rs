//! Reducing a knowledge base by a partial partition, and the simplification
//! pipeline that reduces by the well-founded partition.
//!
//! Reducing by the well-founded partition `W_K(∅, ∅)` preserves the MKNF
//! models. Reducing by the expanding partition does not in general; the K4
//! fixture is a counterexample.

use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::formula::{Formula, Literal};
use crate::kb::{KnowledgeBase, Partition, Rule, Theory};
use crate::oracle::Oracle;
use crate::reasoner::Reasoner;
use crate::solver::ModelWitness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedKb {
    pub kb: KnowledgeBase,
    /// True atoms moved into the ontology as facts.
    pub added_facts: AtomSet,
    /// `T ∪ F`; none of these occurs in the reduced rules.
    pub removed_atoms: AtomSet,
}

/// `K^{(T,F)}`. The ontology gains one fact per atom of `T`, and each rule
/// is treated in turn:
///
/// 1. dropped if `body⁺ ∩ F`, `body⁻ ∩ T` or `head ∩ T` is nonempty;
/// 2. a head in `F` is removed, leaving a constraint;
/// 3. positive body atoms in `T` are removed;
/// 4. negative body atoms in `F` are removed.
pub fn reduce(kb: &KnowledgeBase, part: &Partition) -> Result<ReducedKb> {
    kb.check_partition(part)?;
    if !part.is_consistent() {
        return Err(Error::InconsistentPartition(kb.names(&part.t.intersection(&part.f)).join(", ")));
    }
    let (t, f) = (&part.t, &part.f);
    let mut ontology = kb.ontology().to_vec();
    for a in t.iter() {
        let fact = Formula::atom(a);
        if !ontology.contains(&fact) {
            ontology.push(fact);
        }
    }
    let rules = kb
        .rules()
        .iter()
        .filter(|r| {
            r.body_pos().is_disjoint(f) && r.body_neg().is_disjoint(t) && r.head().is_none_or(|h| !t.contains(h))
        })
        .map(|r| {
            let head = r.head().filter(|h| !f.contains(*h));
            let body =
                r.body().iter().copied().filter(
                    |l: &Literal| {
                        if l.positive {
                            !t.contains(l.atom)
                        } else {
                            !f.contains(l.atom)
                        }
                    },
                );
            Rule::new(head, body)
        })
        .collect();
    Ok(ReducedKb {
        kb: KnowledgeBase::new(kb.symbols().clone(), ontology, rules),
        added_facts: t.clone(),
        removed_atoms: part.assigned(),
    })
}

/// Outcome of [`Reasoner::simplify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    /// `W_K(∅, ∅)`.
    pub partition: Partition,
    /// `None` when the well-founded partition is inconsistent, in which case
    /// the knowledge base has no MKNF model.
    pub reduced: Option<ReducedKb>,
}

impl Simplified {
    pub fn is_unsat(&self) -> bool {
        self.reduced.is_none()
    }
}

impl Reasoner {
    /// Reduces the rule base by the well-founded partition.
    pub fn simplify(&self) -> Simplified {
        let partition = self.fixpoint_unchecked(crate::operators::Propagator::W, &Partition::empty()).result;
        let reduced = partition
            .is_consistent()
            .then(|| reduce(self.kb(), &partition).expect("well-founded partition is over KA"));
        Simplified { partition, reduced }
    }
}

/// Both theories have the same models.
pub fn equivalent(oracle: &Oracle, a: &Theory, b: &Theory) -> Result<bool> {
    for (from, to) in [(a, b), (b, a)] {
        for f in to.iter() {
            if !oracle.entails(from, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether two model lists describe the same MKNF models: each objective
/// theory on one side is equivalent to some theory on the other.
pub fn same_models(oracle: &Oracle, a: &[ModelWitness], b: &[ModelWitness]) -> Result<bool> {
    for (xs, ys) in [(a, b), (b, a)] {
        for x in xs {
            let mut found = false;
            for y in ys {
                if equivalent(oracle, &x.objective, &y.objective)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
