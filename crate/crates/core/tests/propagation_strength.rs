use hmknf::bench::{compare, fixture_instances, generated_instances, BenchConfig};
use hmknf::gen::{corpus_params, generate, CorpusShape};
use hmknf::operators::Propagator;
use hmknf::{parse_kb, Reasoner};

#[test]
fn e_never_needs_more_decisions_than_w() {
    let mut instances = fixture_instances();
    instances.extend(generated_instances(200, 1, None, CorpusShape::SMALL).unwrap());
    let report = compare(&instances, &BenchConfig { seed: 1, ..BenchConfig::default() }).unwrap();
    for inst in &report.instances {
        let (w, e) = (inst.w().solve.unwrap(), inst.e().solve.unwrap());
        assert!(
            e.decisions <= w.decisions,
            "instance {} ({}): E {} > W {}",
            inst.index,
            inst.name,
            e.decisions,
            w.decisions
        );
        assert_eq!(w.sat, e.sat);
    }
    assert_eq!(report.summary().e_more_decisions, 0);
}

#[test]
fn full_enumeration_decisions() {
    for p in corpus_params(2, 200, CorpusShape::SOLVER) {
        let text = generate(&p).unwrap();
        let r = Reasoner::new(parse_kb(&text).unwrap()).unwrap();
        let w = r.enumerate_models(Propagator::W, None);
        let e = r.enumerate_models(Propagator::E, None);
        assert!(e.decisions <= w.decisions, "E {} > W {} on\n{text}", e.decisions, w.decisions);
    }
}
