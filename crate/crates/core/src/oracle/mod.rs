//! Entailment and consistency for ground propositional theories.
//!
//! [`Oracle`] answers arbitrary queries over [`Theory`] values. [`KbOracle`]
//! is bound to one knowledge base: it compiles the ontology once and
//! answers the `OB_{O,S} ⊨ a` and "`OB_{O,S} ∪ L` is consistent" queries the
//! operators issue in their inner loops. Both are complete and memoize
//! their answers; memoization never changes a result.

mod sat;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::formula::{Formula, Literal};
use crate::kb::{KnowledgeBase, Theory};

use sat::{satisfiable, Encoder, Lit};

/// Default cap on distinct atoms per query.
pub const DEFAULT_SIGNATURE_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    pub queries: u64,
    pub cache_hits: u64,
}

#[derive(Debug, Default)]
struct Counters {
    queries: AtomicU64,
    cache_hits: AtomicU64,
}

impl Counters {
    fn query(&self) {
        self.queries.fetch_add(1, Ordering::Relaxed);
    }

    fn hit(&self) {
        self.cache_hits.fetch_add(1, Ordering::Relaxed);
    }

    fn snapshot(&self) -> OracleStats {
        OracleStats {
            queries: self.queries.load(Ordering::Relaxed),
            cache_hits: self.cache_hits.load(Ordering::Relaxed),
        }
    }
}

/// General-purpose propositional oracle.
#[derive(Debug)]
pub struct Oracle {
    limit: usize,
    cache: Mutex<HashMap<Theory, bool>>,
    counters: Counters,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::with_limit(DEFAULT_SIGNATURE_LIMIT)
    }

    pub fn with_limit(limit: usize) -> Self {
        Oracle { limit, cache: Mutex::new(HashMap::new()), counters: Counters::default() }
    }

    pub fn stats(&self) -> OracleStats {
        self.counters.snapshot()
    }

    /// `theory ⊨ goal`.
    pub fn entails(&self, theory: &Theory, goal: &Formula) -> Result<bool> {
        let mut query = theory.clone();
        query.insert(Formula::not(goal.clone()));
        Ok(!self.satisfiable(query)?)
    }

    /// Whether `theory ∪ extra` has a model.
    pub fn consistent(&self, theory: &Theory, extra: &[Literal]) -> Result<bool> {
        let mut query = theory.clone();
        query.extend(extra.iter().map(|&l| Formula::literal(l)));
        self.satisfiable(query)
    }

    fn satisfiable(&self, query: Theory) -> Result<bool> {
        self.counters.query();
        let atoms = query.atoms();
        if atoms.len() > self.limit {
            return Err(Error::SignatureCap { atoms: atoms.len(), limit: self.limit });
        }
        if let Some(&answer) = self.cache.lock().unwrap().get(&query) {
            self.counters.hit();
            return Ok(answer);
        }
        let first_aux = atoms.iter().last().map_or(0, |a| a.index() + 1);
        let mut enc = Encoder::new(first_aux);
        for f in query.iter() {
            enc.assert(f);
        }
        let answer = satisfiable(&enc.cnf, &[]);
        self.cache.lock().unwrap().insert(query, answer);
        Ok(answer)
    }
}

/// Oracle bound to one knowledge base's ontology.
#[derive(Debug)]
pub struct KbOracle {
    cnf: sat::Cnf,
    katoms: AtomSet,
    closures: Mutex<HashMap<AtomSet, AtomSet>>,
    consistency: Mutex<HashMap<(AtomSet, Vec<Literal>), bool>>,
    counters: Counters,
}

impl KbOracle {
    pub fn new(kb: &KnowledgeBase) -> Result<Self> {
        KbOracle::with_limit(kb, DEFAULT_SIGNATURE_LIMIT)
    }

    /// Every query ranges over the knowledge base's signature, so the cap
    /// is checked once, here.
    pub fn with_limit(kb: &KnowledgeBase, limit: usize) -> Result<Self> {
        let atoms = kb.signature().len();
        if atoms > limit {
            return Err(Error::SignatureCap { atoms, limit });
        }
        let mut enc = Encoder::new(kb.symbols().len());
        for f in kb.ontology() {
            enc.assert(f);
        }
        Ok(KbOracle {
            cnf: enc.cnf,
            katoms: kb.katoms().clone(),
            closures: Mutex::default(),
            consistency: Mutex::default(),
            counters: Counters::default(),
        })
    }

    pub fn stats(&self) -> OracleStats {
        self.counters.snapshot()
    }

    fn sat(&self, s: &AtomSet, extra: &[Literal]) -> bool {
        let assumptions: Vec<Lit> = s
            .iter()
            .map(|a| Lit { var: a.index() as u32, positive: true })
            .chain(extra.iter().map(|l| Lit { var: l.atom.index() as u32, positive: l.positive }))
            .collect();
        satisfiable(&self.cnf, &assumptions)
    }

    /// `{K a ∈ KA | OB_{O,S} ⊨ a}`.
    pub fn entailed_katoms(&self, s: &AtomSet) -> AtomSet {
        self.counters.query();
        if let Some(hit) = self.closures.lock().unwrap().get(s) {
            self.counters.hit();
            return hit.clone();
        }
        let out = if !self.sat(s, &[]) {
            self.katoms.clone()
        } else {
            let mut out = s.intersection(&self.katoms);
            for a in self.katoms.difference(s).iter() {
                if !self.sat(s, &[Literal::neg(a)]) {
                    out.insert(a);
                }
            }
            out
        };
        self.closures.lock().unwrap().insert(s.clone(), out.clone());
        out
    }

    /// `OB_{O,S} ⊨ a`.
    pub fn entails(&self, s: &AtomSet, a: Atom) -> bool {
        if self.katoms.contains(a) {
            return self.entailed_katoms(s).contains(a);
        }
        !self.consistent(s, &[Literal::neg(a)])
    }

    /// Whether `OB_{O,S} ∪ extra` is consistent.
    pub fn consistent(&self, s: &AtomSet, extra: &[Literal]) -> bool {
        self.counters.query();
        let mut key_lits = extra.to_vec();
        key_lits.sort();
        key_lits.dedup();
        let key = (s.clone(), key_lits);
        if let Some(&hit) = self.consistency.lock().unwrap().get(&key) {
            self.counters.hit();
            return hit;
        }
        let answer = self.sat(s, &key.1);
        self.consistency.lock().unwrap().insert(key, answer);
        answer
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::Symbols;
    use crate::parse::parse_kb;
    use proptest::prelude::*;

    fn atoms3() -> (Symbols, Atom, Atom, Atom) {
        let mut s = Symbols::new();
        let (a, b, c) = (s.intern("a"), s.intern("b"), s.intern("c"));
        (s, a, b, c)
    }

    #[test]
    fn entailment_examples() {
        let (_, a, b, c) = atoms3();
        let o = Oracle::new();
        let (fa, fb, fc) = (Formula::atom(a), Formula::atom(b), Formula::atom(c));
        let t: Theory =
            [Formula::not(fc.clone()), fa.clone(), Formula::implies(fa.clone(), fb.clone())].into_iter().collect();
        assert!(o.entails(&t, &fb).unwrap());
        assert!(!o.entails(&Theory::new(), &fa).unwrap());
        let bad: Theory = [Formula::not(fc.clone()), fc].into_iter().collect();
        assert!(o.entails(&bad, &fa).unwrap());
    }

    #[test]
    fn consistency_examples() {
        let (_, a, b, c) = atoms3();
        let o = Oracle::new();
        let not_c: Theory = [Formula::not(Formula::atom(c))].into_iter().collect();
        assert!(o.consistent(&not_c, &[Literal::pos(a), Literal::neg(b)]).unwrap());
        let a_to_b: Theory = [Formula::implies(Formula::atom(a), Formula::atom(b))].into_iter().collect();
        assert!(!o.consistent(&a_to_b, &[Literal::pos(a), Literal::neg(b)]).unwrap());
        assert!(!o.consistent(&not_c, &[Literal::pos(c)]).unwrap());
    }

    #[test]
    fn constants() {
        let o = Oracle::new();
        let t: Theory = [Formula::True].into_iter().collect();
        assert!(o.consistent(&t, &[]).unwrap());
        let f: Theory = [Formula::False].into_iter().collect();
        assert!(!o.consistent(&f, &[]).unwrap());
        assert!(o.entails(&Theory::new(), &Formula::implies(Formula::False, Formula::False)).unwrap());
    }

    #[test]
    fn signature_cap() {
        let mut s = Symbols::new();
        let t: Theory = (0..5).map(|i| Formula::atom(s.intern(&format!("p{i}")))).collect();
        let o = Oracle::with_limit(4);
        assert_eq!(o.consistent(&t, &[]), Err(Error::SignatureCap { atoms: 5, limit: 4 }));
        let kb = parse_kb("#ontology\na | b | c.\n").unwrap();
        assert!(KbOracle::with_limit(&kb, 2).is_err());
        assert!(KbOracle::with_limit(&kb, 3).is_ok());
    }

    #[test]
    fn cache_counts_hits() {
        let (_, a, _, _) = atoms3();
        let o = Oracle::new();
        let t = Theory::new();
        o.entails(&t, &Formula::atom(a)).unwrap();
        o.entails(&t, &Formula::atom(a)).unwrap();
        assert_eq!(o.stats(), OracleStats { queries: 2, cache_hits: 1 });
    }

    #[test]
    fn kb_oracle_closure() {
        let kb = parse_kb("#ontology\na -> b.\n-c.\n#rules\nb :- a, not c.\n").unwrap();
        let o = KbOracle::new(&kb).unwrap();
        let a = kb.atom("a").unwrap();
        let b = kb.atom("b").unwrap();
        let c = kb.atom("c").unwrap();
        let only_a: AtomSet = [a].into_iter().collect();
        assert_eq!(o.entailed_katoms(&only_a), [a, b].into_iter().collect());
        let with_c: AtomSet = [c].into_iter().collect();
        assert_eq!(&o.entailed_katoms(&with_c), kb.katoms());
        assert!(!o.consistent(&AtomSet::new(), &[Literal::pos(c)]));
        assert!(o.consistent(&only_a, &[Literal::neg(c)]));
    }

    /// Formulas over `n` atoms for property tests.
    pub(crate) fn arb_formula(n: usize) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            1 => Just(Formula::True),
            1 => Just(Formula::False),
            8 => (0..n).prop_map(|i| Formula::atom(Atom::from_index(i))),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                (inner.clone(), inner).prop_map(|(l, r)| Formula::implies(l, r)),
            ]
        })
    }

    /// Truth-table reference: enumerate every assignment to the atoms.
    fn truth_table_sat(formulas: &[Formula]) -> bool {
        let mut atoms = AtomSet::new();
        for f in formulas {
            f.collect_atoms(&mut atoms);
        }
        atoms.subsets().any(|model| formulas.iter().all(|f| f.eval(&model)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn agrees_with_truth_tables(
            theory in proptest::collection::vec(arb_formula(12), 0..5),
            goal in arb_formula(12),
        ) {
            let o = Oracle::new();
            let t: Theory = theory.iter().cloned().collect();
            let mut with_neg = theory.clone();
            with_neg.push(Formula::not(goal.clone()));
            prop_assert_eq!(o.consistent(&t, &[]).unwrap(), truth_table_sat(&theory));
            prop_assert_eq!(o.entails(&t, &goal).unwrap(), !truth_table_sat(&with_neg));
        }

        #[test]
        fn entailment_is_refutation(
            theory in proptest::collection::vec(arb_formula(6), 0..4),
            goal in 0usize..6,
        ) {
            let o = Oracle::new();
            let t: Theory = theory.into_iter().collect();
            let g = Atom::from_index(goal);
            prop_assert_eq!(
                o.entails(&t, &Formula::atom(g)).unwrap(),
                !o.consistent(&t, &[Literal::neg(g)]).unwrap()
            );
        }

        #[test]
        fn entailment_is_monotone(
            small in proptest::collection::vec(arb_formula(6), 0..3),
            more in proptest::collection::vec(arb_formula(6), 0..3),
            goal in arb_formula(6),
        ) {
            let o = Oracle::new();
            let t1: Theory = small.iter().cloned().collect();
            let t2: Theory = small.into_iter().chain(more).collect();
            if o.entails(&t1, &goal).unwrap() {
                prop_assert!(o.entails(&t2, &goal).unwrap());
            }
        }
    }
}
