use hmknf::gen::{generate, GenParams};
use hmknf::operators::Propagator;
use hmknf::oracle::Oracle;
use hmknf::simplify::{reduce, same_models};
use hmknf::solver::true_sets;
use hmknf::{objective_knowledge, parse_kb, Atom, AtomSet, KnowledgeBase, Partition, Reasoner};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn arb_params() -> impl Strategy<Value = GenParams> {
    (1usize..=6).prop_flat_map(|n| {
        (
            0usize..=7,
            0..=n.min(3),
            prop::sample::select(vec![0.0, 0.25, 0.5, 0.75, 1.0]),
            0usize..=3,
            1..=n.min(3),
            any::<u64>(),
        )
            .prop_map(move |(n_rules, max_body, neg_prob, n_clauses, clause_width, seed)| GenParams {
                n_atoms: n,
                n_rules,
                max_body,
                neg_prob,
                n_clauses,
                clause_width,
                seed,
            })
    })
}

fn kb_of(params: &GenParams) -> KnowledgeBase {
    parse_kb(&generate(params).unwrap()).unwrap()
}

/// A random partial partition of the K-atoms, one base-3 digit per atom.
fn partition_of(kb: &KnowledgeBase, code: u64) -> Partition {
    let mut part = Partition::empty();
    let mut code = code;
    for a in kb.katoms().iter() {
        match code % 3 {
            0 => part.t.insert(a),
            1 => part.f.insert(a),
            _ => false,
        };
        code /= 3;
    }
    part
}

fn atoms(ids: &[usize]) -> AtomSet {
    ids.iter().map(|&i| Atom::from_index(i)).collect()
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    let ids = || subsequence((0usize..8).collect::<Vec<_>>(), 0..=8);
    (ids(), ids()).prop_map(|(t, f)| Partition::new(atoms(&t), atoms(&f)))
}

/// Same knowledge base with its rules in another order.
fn shuffled(kb: &KnowledgeBase, seed: u64) -> KnowledgeBase {
    let mut rules = kb.rules().to_vec();
    let mut state = seed | 1;
    for i in (1..rules.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        rules.swap(i, (state % (i as u64 + 1)) as usize);
    }
    KnowledgeBase::new(kb.symbols().clone(), kb.ontology().to_vec(), rules)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn partition_lattice_laws(p in arb_partition(), q in arb_partition(), r in arb_partition()) {
        prop_assert_eq!(p.join(&q).join(&r), p.join(&q.join(&r)));
        prop_assert_eq!(p.join(&q), q.join(&p));
        prop_assert_eq!(p.join(&p), p.clone());
        prop_assert!(p.leq(&p.join(&q)));
        prop_assert!(p.leq(&p));
        if p.leq(&q) && q.leq(&p) {
            prop_assert_eq!(&p, &q);
        }
        if p.leq(&q) && q.leq(&r) {
            prop_assert!(p.leq(&r));
        }
    }

    #[test]
    fn print_parse_round_trip(params in arb_params()) {
        let kb = kb_of(&params);
        let again = parse_kb(&kb.to_string()).unwrap();
        prop_assert_eq!(kb.names(kb.katoms()), again.names(again.katoms()));
        prop_assert_eq!(kb.to_string(), again.to_string());
    }

    #[test]
    fn objective_knowledge_is_monotone(params in arb_params(), a in any::<u64>(), b in any::<u64>()) {
        let kb = kb_of(&params);
        let s1 = partition_of(&kb, a).t;
        let s2 = s1.union(&partition_of(&kb, b).t);
        let o1 = objective_knowledge(&kb, &s1).unwrap();
        let o2 = objective_knowledge(&kb, &s2).unwrap();
        prop_assert!(o1.is_subset(&o2));
    }

    #[test]
    fn v_step_is_monotone(params in arb_params(), code in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        let part = partition_of(r.kb(), code);
        let x1 = partition_of(r.kb(), a).t;
        let x2 = x1.union(&partition_of(r.kb(), b).f);
        prop_assert!(r.v_step(&part, &x1).unwrap().is_subset(&r.v_step(&part, &x2).unwrap()));
    }

    #[test]
    fn greatest_unfounded_set(params in arb_params(), code in any::<u64>()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        let part = partition_of(r.kb(), code);
        let u = r.greatest_unfounded(&part).unwrap();
        prop_assert_eq!(&u.greatest, &r.kb().katoms().difference(&u.atmost));
        prop_assert!(u.iterations <= r.kb().katoms().len() + 1);
        let union = r.greatest_unfounded_bruteforce(&part).unwrap();
        prop_assert!(r.is_unfounded_bruteforce(&part, &union).unwrap());
        prop_assert_eq!(&union, &u.greatest);
    }

    #[test]
    fn results_ignore_rule_order(params in arb_params(), code in any::<u64>(), seed in any::<u64>()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        let s = Reasoner::new(shuffled(r.kb(), seed)).unwrap();
        let part = partition_of(r.kb(), code);
        prop_assert_eq!(r.greatest_unfounded(&part).unwrap().greatest, s.greatest_unfounded(&part).unwrap().greatest);
        prop_assert_eq!(r.w_fixpoint(&part).unwrap().result, s.w_fixpoint(&part).unwrap().result);
        prop_assert_eq!(r.e_fixpoint(&part).unwrap().result, s.e_fixpoint(&part).unwrap().result);
    }

    #[test]
    fn operators_are_monotone(params in arb_params(), code in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        let base = partition_of(r.kb(), code);
        let small = partition_of(r.kb(), a);
        let large = small.join(&partition_of(r.kb(), b));
        prop_assert!(r.w_step(&base, &small).unwrap().leq(&r.w_step(&base, &large).unwrap()));
        prop_assert!(r.e_step(&base, &small).unwrap().leq(&r.e_step(&base, &large).unwrap()));
    }

    #[test]
    fn models_respect_propagation(params in arb_params(), code in any::<u64>()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        let part = partition_of(r.kb(), code);
        let w = r.w_fixpoint(&part).unwrap().result;
        let e = r.e_fixpoint(&part).unwrap().result;
        let u = r.greatest_unfounded(&part).unwrap().greatest;
        for m in r.enumerate_models(Propagator::E, None).models {
            let m = m.partition;
            if !part.leq(&m) {
                continue;
            }
            prop_assert!(w.leq(&m), "model does not extend W");
            prop_assert!(e.leq(&m), "model does not extend E");
            prop_assert!(u.is_subset(&m.f), "model makes an unfounded atom true");
        }
    }

    #[test]
    fn total_root_is_the_only_model(params in arb_params()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        // With an inconsistent ontology every atom is entailed and no model
        // exists, whatever the operators return.
        prop_assume!(r.oracle().consistent(&AtomSet::new(), &[]));
        let models = r.enumerate_models(Propagator::W, None).models;
        let ka = r.kb().katoms();
        for prop in [Propagator::W, Propagator::E] {
            let root = r.fixpoint(prop, &Partition::empty()).unwrap().result;
            if !root.is_consistent() {
                prop_assert!(models.is_empty());
            } else if root.is_total(ka) {
                prop_assert_eq!(models.len(), 1);
                prop_assert_eq!(&models[0].partition, &root);
            }
        }
    }

    #[test]
    fn search_matches_guess_and_verify(params in arb_params()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        let expected = true_sets(&r.guess_and_verify());
        for prop in [Propagator::W, Propagator::E] {
            let res = r.enumerate_models(prop, None);
            prop_assert_eq!(true_sets(res.models.iter().map(|m| &m.partition)), expected.clone());
            prop_assert_eq!(res.sat, !expected.is_empty());
            let first = r.solve(prop);
            prop_assert_eq!(first.sat, !expected.is_empty());
        }
    }

    #[test]
    fn well_founded_reduction_preserves_models(params in arb_params()) {
        let r = Reasoner::new(kb_of(&params)).unwrap();
        let s = r.simplify();
        let before = r.enumerate_models(Propagator::E, None).models;
        let after = match s.reduced {
            Some(red) => {
                let kb = &red.kb;
                for rule in kb.rules() {
                    prop_assert!(rule.atoms().is_disjoint(&red.removed_atoms));
                }
                for a in red.added_facts.iter() {
                    prop_assert!(kb.ontology().contains(&hmknf::Formula::atom(a)));
                }
                Reasoner::new(red.kb).unwrap().enumerate_models(Propagator::E, None).models
            }
            None => Vec::new(),
        };
        prop_assert!(same_models(&Oracle::new(), &before, &after).unwrap());
    }

    #[test]
    fn reduce_by_empty_partition_is_identity(params in arb_params()) {
        let kb = kb_of(&params);
        prop_assert_eq!(reduce(&kb, &Partition::empty()).unwrap().kb, kb);
    }

    #[test]
    fn generator_is_deterministic(params in arb_params()) {
        prop_assert_eq!(generate(&params).unwrap(), generate(&params).unwrap());
    }
}
