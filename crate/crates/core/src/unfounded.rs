//! Unfounded sets with respect to a partial partition.
//!
//! The greatest unfounded set is the complement in KA(K) of `atmost`, the
//! least fixpoint of the V operator. [`Reasoner::is_unfounded_bruteforce`]
//! checks the defining condition directly by enumerating rule subsets and
//! serves as the reference the fixpoint route is tested against.

use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::formula::Literal;
use crate::kb::{Partition, Rule};
use crate::reasoner::Reasoner;

/// Rule-subset enumeration is `2^|P|`; refuse anything larger.
pub const BRUTEFORCE_RULE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoundedResult {
    /// `U_K(T, F)`.
    pub greatest: AtomSet,
    /// `atmost_K(T, F)`.
    pub atmost: AtomSet,
    /// Applications of V until the fixpoint was confirmed.
    pub iterations: usize,
}

impl Reasoner {
    /// Whether `a` may be supported by a rule head under `(T, F)`:
    /// `OB_{O,T} ∪ {a}` is consistent and so is `OB_{O,T} ∪ {a, ¬b}` for
    /// every `K b ∈ F`.
    pub(crate) fn head_admissible(&self, part: &Partition, a: crate::atoms::Atom) -> bool {
        let oracle = self.oracle();
        oracle.consistent(&part.t, &[Literal::pos(a)])
            && part.f.iter().all(|b| oracle.consistent(&part.t, &[Literal::pos(a), Literal::neg(b)]))
    }

    /// Rules that V may fire under `(T, F)`, in input order.
    fn v_rules(&self, part: &Partition) -> Vec<&Rule> {
        self.kb()
            .rules()
            .iter()
            .filter(|r| {
                let Some(a) = r.head() else { return false };
                r.body_pos().is_disjoint(&part.f) && r.body_neg().is_disjoint(&part.t) && self.head_admissible(part, a)
            })
            .collect()
    }

    fn v_apply(&self, rules: &[&Rule], x: &AtomSet) -> AtomSet {
        let mut out = self.oracle().entailed_katoms(x);
        for r in rules {
            if r.body_pos().is_subset(x) {
                out.extend(r.head());
            }
        }
        out
    }

    /// One application of `V_K^{(T,F)}` to `x`.
    pub fn v_step(&self, part: &Partition, x: &AtomSet) -> Result<AtomSet> {
        self.kb().check_partition(part)?;
        self.kb().check_katoms(x)?;
        Ok(self.v_apply(&self.v_rules(part), x))
    }

    /// `U_K(T, F)` via the least fixpoint of V.
    pub fn greatest_unfounded(&self, part: &Partition) -> Result<UnfoundedResult> {
        self.kb().check_partition(part)?;
        Ok(self.unfounded_unchecked(part))
    }

    /// Also used on overlapping pairs inside the operator iterations.
    pub(crate) fn unfounded_unchecked(&self, part: &Partition) -> UnfoundedResult {
        let rules = self.v_rules(part);
        let mut x = AtomSet::new();
        let mut iterations = 0;
        loop {
            let next = self.v_apply(&rules, &x);
            iterations += 1;
            if next == x {
                break;
            }
            x = next;
        }
        UnfoundedResult { greatest: self.kb().katoms().difference(&x), atmost: x, iterations }
    }

    /// Checks the unfounded-set condition directly: for every `K a ∈ x` and
    /// every `R ⊆ P` whose heads entail `a` together with the ontology, some
    /// rule of `R` is blocked by `(T, F)` or depends positively on `x`. Only
    /// subsets whose every head passes the consistency test against
    /// `OB_{O,T}` and `F` count as support.
    pub fn is_unfounded_bruteforce(&self, part: &Partition, x: &AtomSet) -> Result<bool> {
        self.kb().check_partition(part)?;
        self.kb().check_katoms(x)?;
        let table = SupportTable::build(self, part)?;
        Ok(table.is_unfounded(x))
    }

    /// Union of all unfounded sets, by enumerating every subset of KA(K).
    pub fn greatest_unfounded_bruteforce(&self, part: &Partition) -> Result<AtomSet> {
        self.kb().check_partition(part)?;
        let table = SupportTable::build(self, part)?;
        let mut union = AtomSet::new();
        for x in self.kb().katoms().subsets() {
            if table.is_unfounded(&x) {
                union.union_with(&x);
            }
        }
        Ok(union)
    }
}

/// Everything about each rule subset `R` that does not depend on `x`.
struct SupportTable<'a> {
    rules: &'a [Rule],
    /// Per subset (bitmask over rules): the K-atoms it supports, or `None`
    /// when the consistency conditions exclude it.
    derives: Vec<Option<AtomSet>>,
    /// Per rule: blocked by `(T, F)` regardless of `x`.
    blocked: Vec<bool>,
}

impl<'a> SupportTable<'a> {
    fn build(reasoner: &'a Reasoner, part: &Partition) -> Result<Self> {
        let rules = reasoner.kb().rules();
        if rules.len() > BRUTEFORCE_RULE_LIMIT {
            return Err(Error::TooManyRules { rules: rules.len(), limit: BRUTEFORCE_RULE_LIMIT });
        }
        let admissible: Vec<bool> =
            rules.iter().map(|r| r.head().is_none_or(|a| reasoner.head_admissible(part, a))).collect();
        let oracle = reasoner.oracle();
        let derives = (0u32..1 << rules.len())
            .map(|mask| {
                let chosen = || (0..rules.len()).filter(move |i| mask & (1 << i) != 0);
                if !chosen().all(|i| admissible[i]) {
                    return None;
                }
                let heads: AtomSet = chosen().filter_map(|i| rules[i].head()).collect();
                Some(oracle.entailed_katoms(&heads))
            })
            .collect();
        let blocked =
            rules.iter().map(|r| !r.body_pos().is_disjoint(&part.f) || !r.body_neg().is_disjoint(&part.t)).collect();
        Ok(SupportTable { rules, derives, blocked })
    }

    fn is_unfounded(&self, x: &AtomSet) -> bool {
        let defeated: Vec<bool> =
            self.rules.iter().zip(&self.blocked).map(|(r, &blocked)| blocked || !r.body_pos().is_disjoint(x)).collect();
        self.derives.iter().enumerate().all(|(mask, derives)| {
            let Some(derives) = derives else { return true };
            if derives.is_disjoint(x) {
                return true;
            }
            (0..self.rules.len()).any(|i| mask & (1 << i) != 0 && defeated[i])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{K1_TEXT, K2_TEXT};
    use crate::parse::parse_kb;

    fn reasoner(text: &str) -> Reasoner {
        Reasoner::new(parse_kb(text).unwrap()).unwrap()
    }

    fn set(r: &Reasoner, names: &[&str]) -> AtomSet {
        r.kb().katom_set(names.iter().copied()).unwrap()
    }

    fn part(r: &Reasoner, t: &[&str], f: &[&str]) -> Partition {
        Partition::new(set(r, t), set(r, f))
    }

    #[test]
    fn v_step_examples() {
        let k1 = reasoner(K1_TEXT);
        assert_eq!(k1.v_step(&Partition::empty(), &AtomSet::new()).unwrap(), set(&k1, &["a", "b"]));
        let k2 = reasoner(K2_TEXT);
        assert_eq!(k2.v_step(&part(&k2, &[], &["b"]), &AtomSet::new()).unwrap(), set(&k2, &["c"]));
        let all = k1.kb().katoms().clone();
        let low = k1.v_step(&Partition::empty(), &AtomSet::new()).unwrap();
        assert!(low.is_subset(&k1.v_step(&Partition::empty(), &all).unwrap()));
    }

    #[test]
    fn greatest_unfounded_examples() {
        let k1 = reasoner(K1_TEXT);
        let u = k1.greatest_unfounded(&Partition::empty()).unwrap();
        assert_eq!(u.greatest, set(&k1, &["c"]));
        let k2 = reasoner(K2_TEXT);
        let u = k2.greatest_unfounded(&part(&k2, &[], &["b"])).unwrap();
        assert_eq!(u.greatest, set(&k2, &["a", "b"]));
        assert_eq!(u.atmost, set(&k2, &["c"]));
        let empty = reasoner("#ontology\ntrue.\n");
        let u = empty.greatest_unfounded(&Partition::empty()).unwrap();
        assert!(u.greatest.is_empty());
        assert_eq!(u.iterations, 1);
    }

    #[test]
    fn bruteforce_examples() {
        let k1 = reasoner(K1_TEXT);
        let p = Partition::empty();
        assert!(k1.is_unfounded_bruteforce(&p, &set(&k1, &["c"])).unwrap());
        assert!(!k1.is_unfounded_bruteforce(&p, &set(&k1, &["a"])).unwrap());
        assert!(k1.is_unfounded_bruteforce(&p, &AtomSet::new()).unwrap());
        assert_eq!(k1.greatest_unfounded_bruteforce(&p).unwrap(), set(&k1, &["c"]));
    }

    #[test]
    fn rejects_foreign_atoms() {
        let kb = parse_kb("#ontology\nz.\n#rules\na :- not b.\n").unwrap();
        let z = kb.atom("z").unwrap();
        let r = Reasoner::new(kb).unwrap();
        let bad = Partition::new([z].into_iter().collect(), AtomSet::new());
        assert!(matches!(r.greatest_unfounded(&bad), Err(Error::NotAKAtom(n)) if n == "z"));
    }

    #[test]
    fn bruteforce_refuses_large_rule_bases() {
        let text: String = (0..17).map(|i| format!("p{i} :- not q{i}.\n")).collect();
        let r = reasoner(&text);
        assert!(matches!(
            r.is_unfounded_bruteforce(&Partition::empty(), &AtomSet::new()),
            Err(Error::TooManyRules { rules: 17, .. })
        ));
    }
}
