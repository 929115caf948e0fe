//! Propagation operators instantiated at a partial partition `(T, F)`.
//!
//! * `W^{(T,F)}(X, Y) = (T_K^{(T,F)}(X, Y), U_K(T ∪ X, F ∪ Y))`
//! * `E^{(T,F)}(X, Y) = UP^{(T,F)}(X, Y) ⊔ (∅, U_K(T ∪ X, F ∪ Y))`
//!
//! Both are monotone and iterated from `(∅, ∅)` to their least fixpoint.
//! The alternating fixpoint `(P_i, N_i)` is provided for comparison; started
//! from an arbitrary partition it may oscillate, which [`Reasoner::afp_from`]
//! detects exactly.

use std::fmt;
use std::str::FromStr;

use crate::atoms::{Atom, AtomSet};
use crate::error::Result;
use crate::formula::Literal;
use crate::kb::{Partition, Rule};
use crate::reasoner::Reasoner;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixpointResult {
    pub result: Partition,
    /// Operator applications, including the one confirming the fixpoint.
    pub iterations: usize,
    pub consistent: bool,
}

impl FixpointResult {
    fn new(result: Partition, iterations: usize) -> Self {
        let consistent = result.is_consistent();
        FixpointResult { result, iterations, consistent }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfpResult {
    /// Union of every `P_i`.
    pub p_omega: AtomSet,
    /// Intersection of every `N_i`.
    pub n_omega: AtomSet,
    /// The sequence settled on a single pair.
    pub converged: bool,
    /// Cycle length when oscillating, 0 when converged.
    pub period: usize,
    /// `(P_i, N_i)` up to, not including, the first repeated pair.
    pub steps: Vec<(AtomSet, AtomSet)>,
}

impl AfpResult {
    /// `(P_ω, KA \ N_ω)`.
    pub fn partition(&self, katoms: &AtomSet) -> Partition {
        Partition::new(self.p_omega.clone(), katoms.difference(&self.n_omega))
    }
}

/// Which operator drives propagation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Propagator {
    W,
    E,
}

impl fmt::Display for Propagator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Propagator::W => "w",
            Propagator::E => "e",
        })
    }
}

impl FromStr for Propagator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "w" | "W" => Ok(Propagator::W),
            "e" | "E" => Ok(Propagator::E),
            other => Err(format!("unknown propagator `{other}` (expected w or e)")),
        }
    }
}

/// What is left of a rule's clause `head ∨ ¬body⁺ ∨ body⁻-atoms` once the
/// falsified literals are removed.
enum Residue {
    Empty,
    Unit(Literal),
    Wide,
}

fn residue(rule: &Rule, t: &AtomSet, f: &AtomSet) -> Residue {
    let mut first: Option<Literal> = None;
    let positive = rule.head().into_iter().chain(rule.body_neg().iter()).filter(|a| !f.contains(*a)).map(Literal::pos);
    let negative = rule.body_pos().iter().filter(|a| !t.contains(*a)).map(Literal::neg);
    for lit in positive.chain(negative) {
        match first {
            None => first = Some(lit),
            Some(l) if l == lit => {}
            Some(_) => return Residue::Wide,
        }
    }
    first.map_or(Residue::Empty, Residue::Unit)
}

impl Reasoner {
    fn check_pair(&self, base: &Partition, iter: &Partition) -> Result<()> {
        self.kb().check_partition(base)?;
        self.kb().check_partition(iter)
    }

    /// `T_K^{(T,F)}(X, Y)`.
    pub fn t_step(&self, base: &Partition, iter: &Partition) -> Result<AtomSet> {
        self.check_pair(base, iter)?;
        Ok(self.t_step_unchecked(base, iter))
    }

    fn t_step_unchecked(&self, base: &Partition, iter: &Partition) -> AtomSet {
        let t = base.t.union(&iter.t);
        let f = base.f.union(&iter.f);
        let mut out = self.oracle().entailed_katoms(&t);
        for r in self.kb().rules() {
            if r.body_pos().is_subset(&t) && r.body_neg().is_subset(&f) {
                out.extend(r.head());
            }
        }
        out
    }

    /// One application of `W^{(T,F)}` to `(X, Y)`.
    pub fn w_step(&self, base: &Partition, iter: &Partition) -> Result<Partition> {
        self.check_pair(base, iter)?;
        Ok(self.w_step_unchecked(base, iter))
    }

    fn w_step_unchecked(&self, base: &Partition, iter: &Partition) -> Partition {
        let joined = base.join(iter);
        Partition::new(self.t_step_unchecked(base, iter), self.unfounded_unchecked(&joined).greatest)
    }

    /// `W_K(T, F)`, the least fixpoint of `W^{(T,F)}`. The base itself is not
    /// joined in.
    pub fn w_fixpoint(&self, base: &Partition) -> Result<FixpointResult> {
        self.kb().check_partition(base)?;
        Ok(self.lfp(|iter| self.w_step_unchecked(base, iter)))
    }

    /// `UP^{(T,F)}(X, Y)`: unit propagation over the rules read as clauses.
    ///
    /// A clause fires only on a still unassigned atom, and a clause whose
    /// residue is empty yields the conflict value `(KA, KA)`.
    pub fn unit_propagate(&self, base: &Partition, iter: &Partition) -> Result<Partition> {
        self.check_pair(base, iter)?;
        Ok(self.unit_propagate_unchecked(base, iter))
    }

    fn unit_propagate_unchecked(&self, base: &Partition, iter: &Partition) -> Partition {
        let mut x = iter.t.clone();
        x.union_with(&self.oracle().entailed_katoms(&base.t.union(&iter.t)));
        let mut y = iter.f.clone();
        let mut t = base.t.union(&x);
        let mut f = base.f.union(&y);
        let rules = self.kb().rules();
        loop {
            let mut changed = false;
            for r in rules {
                if let Residue::Unit(lit) = residue(r, &t, &f) {
                    let fired = if lit.positive {
                        x.insert(lit.atom);
                        t.insert(lit.atom)
                    } else {
                        y.insert(lit.atom);
                        f.insert(lit.atom)
                    };
                    changed |= fired;
                }
            }
            if !changed {
                break;
            }
        }
        if rules.iter().any(|r| matches!(residue(r, &t, &f), Residue::Empty)) {
            let ka = self.kb().katoms().clone();
            return Partition::new(ka.clone(), ka);
        }
        Partition::new(x, y)
    }

    /// One application of `E^{(T,F)}` to `(X, Y)`.
    pub fn e_step(&self, base: &Partition, iter: &Partition) -> Result<Partition> {
        self.check_pair(base, iter)?;
        Ok(self.e_step_unchecked(base, iter))
    }

    fn e_step_unchecked(&self, base: &Partition, iter: &Partition) -> Partition {
        let mut out = self.unit_propagate_unchecked(base, iter);
        out.f.union_with(&self.unfounded_unchecked(&base.join(iter)).greatest);
        out
    }

    /// `E_K(T, F)`, the least fixpoint of `E^{(T,F)}`.
    pub fn e_fixpoint(&self, base: &Partition) -> Result<FixpointResult> {
        self.kb().check_partition(base)?;
        Ok(self.lfp(|iter| self.e_step_unchecked(base, iter)))
    }

    pub fn fixpoint(&self, propagator: Propagator, base: &Partition) -> Result<FixpointResult> {
        match propagator {
            Propagator::W => self.w_fixpoint(base),
            Propagator::E => self.e_fixpoint(base),
        }
    }

    pub(crate) fn fixpoint_unchecked(&self, propagator: Propagator, base: &Partition) -> FixpointResult {
        match propagator {
            Propagator::W => self.lfp(|iter| self.w_step_unchecked(base, iter)),
            Propagator::E => self.lfp(|iter| self.e_step_unchecked(base, iter)),
        }
    }

    fn lfp(&self, step: impl Fn(&Partition) -> Partition) -> FixpointResult {
        let mut cur = Partition::empty();
        let mut iterations = 0;
        loop {
            let next = step(&cur);
            iterations += 1;
            if next == cur {
                return FixpointResult::new(cur, iterations);
            }
            cur = next;
        }
    }

    /// `Γ_K(S)`, the least fixpoint of `T*_{K,S}`.
    pub fn gamma(&self, s: &AtomSet) -> Result<AtomSet> {
        self.kb().check_katoms(s)?;
        Ok(self.gamma_unchecked(s, false))
    }

    /// `Γ'_K(S)`, the least fixpoint of `T*'_{K,S}`.
    pub fn gamma_prime(&self, s: &AtomSet) -> Result<AtomSet> {
        self.kb().check_katoms(s)?;
        Ok(self.gamma_unchecked(s, true))
    }

    pub(crate) fn gamma_unchecked(&self, s: &AtomSet, primed: bool) -> AtomSet {
        let admissible = |a: Atom| !primed || self.oracle().consistent(s, &[Literal::pos(a)]);
        let rules: Vec<(&Rule, Atom)> = self
            .kb()
            .rules()
            .iter()
            .filter_map(|r| r.head().map(|h| (r, h)))
            .filter(|(r, h)| r.body_neg().is_disjoint(s) && admissible(*h))
            .collect();
        let mut x = AtomSet::new();
        loop {
            let mut next = self.oracle().entailed_katoms(&x);
            for (r, h) in &rules {
                if r.body_pos().is_subset(&x) {
                    next.insert(*h);
                }
            }
            if next == x {
                return x;
            }
            x = next;
        }
    }

    /// The alternating sequence `P_0 = T`, `N_0 = KA \ F`,
    /// `P_{i+1} = Γ(N_i)`, `N_{i+1} = Γ'(P_i)`, run until a pair repeats.
    pub fn afp_from(&self, base: &Partition) -> Result<AfpResult> {
        self.kb().check_partition(base)?;
        let ka = self.kb().katoms();
        let mut steps = vec![(base.t.clone(), ka.difference(&base.f))];
        let cycle_start = loop {
            let (p, n) = steps.last().unwrap();
            let next = (self.gamma_unchecked(n, false), self.gamma_unchecked(p, true));
            if let Some(i) = steps.iter().position(|s| *s == next) {
                break i;
            }
            steps.push(next);
        };
        let period = steps.len() - cycle_start;
        let mut p_omega = AtomSet::new();
        let mut n_omega = ka.clone();
        for (p, n) in &steps {
            p_omega.union_with(p);
            n_omega = n_omega.intersection(n);
        }
        let converged = period == 1;
        Ok(AfpResult { p_omega, n_omega, converged, period: if converged { 0 } else { period }, steps })
    }
}
