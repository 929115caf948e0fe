//! Side-by-side comparison of the alternating fixpoint, `W` and `E` on a
//! corpus of knowledge bases.
//!
//! For every instance the three root partitions are computed and the chain
//! `(P_i, KA \ N_i) ⊑ W(T, F) ⊑ E(T, F)` is checked for `i ≥ 1` at the root
//! and at a few random partial partitions. The solver then runs once with
//! each propagator. Reports are deterministic for a fixed seed unless wall
//! times are requested.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atoms::AtomSet;
use crate::error::Result;
use crate::fixtures;
use crate::gen::{corpus_params, generate, CorpusShape, GenParams};
use crate::kb::Partition;
use crate::operators::Propagator;
use crate::parse::parse_kb;
use crate::reasoner::Reasoner;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub text: String,
}

/// The worked examples shipped in [`fixtures`].
pub fn fixture_instances() -> Vec<Instance> {
    fixtures::ALL.iter().map(|(name, text)| Instance { name: name.to_string(), text: text.to_string() }).collect()
}

/// `count` generated instances. With `params`, every instance uses them
/// with its own seed; without, sizes vary within `shape`.
pub fn generated_instances(
    count: usize,
    seed: u64,
    params: Option<&GenParams>,
    shape: CorpusShape,
) -> Result<Vec<Instance>> {
    let all = match params {
        Some(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| GenParams { seed: rng.gen(), ..p.clone() }).collect()
        }
        None => corpus_params(seed, count, shape),
    };
    all.iter().enumerate().map(|(i, p)| Ok(Instance { name: format!("gen{i}"), text: generate(p)? })).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    /// Random partial partitions checked per instance besides the root.
    pub partitions: usize,
    pub seed: u64,
    /// Record wall times; makes the report nondeterministic.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { partitions: 5, seed: 0, timing: false }
    }
}

/// One operator's outcome on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagatorRecord {
    /// `afp`, `w` or `e`.
    pub propagator: &'static str,
    pub root: Partition,
    /// Operator applications to reach the root partition.
    pub iterations: usize,
    /// Solver statistics; absent for the alternating fixpoint.
    pub solve: Option<SolveStats>,
    pub micros: Option<u128>,
}

impl PropagatorRecord {
    pub fn decided(&self) -> usize {
        self.root.assigned().len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveStats {
    pub sat: bool,
    pub decisions: usize,
    pub propagations: usize,
    pub conflicts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceRecord {
    pub index: usize,
    pub name: String,
    pub katoms: usize,
    /// AFP, W and E, in that order.
    pub records: [PropagatorRecord; 3],
    /// Partial partitions at which the inclusion chain was checked.
    pub partitions_checked: usize,
    pub violations: Vec<String>,
}

impl InstanceRecord {
    fn record(&self, propagator: &str) -> &PropagatorRecord {
        self.records.iter().find(|r| r.propagator == propagator).unwrap()
    }

    pub fn afp(&self) -> &PropagatorRecord {
        self.record("afp")
    }

    pub fn w(&self) -> &PropagatorRecord {
        self.record("w")
    }

    pub fn e(&self) -> &PropagatorRecord {
        self.record("e")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BenchReport {
    pub instances: Vec<InstanceRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub instances: usize,
    pub partitions_checked: usize,
    pub violations: usize,
    /// Instances where the W root is strictly below the E root.
    pub strict_w_below_e: usize,
    /// Instances where the alternating fixpoint root is strictly below W.
    pub strict_afp_below_w: usize,
    pub decided_w: usize,
    pub decided_e: usize,
    pub decisions_w: usize,
    pub decisions_e: usize,
    /// Instances where E needed more decisions than W.
    pub e_more_decisions: usize,
    pub sat: usize,
}

impl BenchReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary { instances: self.instances.len(), ..Summary::default() };
        for inst in &self.instances {
            let (afp, w, e) = (inst.afp(), inst.w(), inst.e());
            let (ws, es) = (w.solve.unwrap(), e.solve.unwrap());
            s.partitions_checked += inst.partitions_checked;
            s.violations += inst.violations.len();
            s.strict_w_below_e += usize::from(w.root != e.root && w.root.leq(&e.root));
            s.strict_afp_below_w += usize::from(afp.root != w.root && afp.root.leq(&w.root));
            s.decided_w += w.decided();
            s.decided_e += e.decided();
            s.decisions_w += ws.decisions;
            s.decisions_e += es.decisions;
            s.e_more_decisions += usize::from(es.decisions > ws.decisions);
            s.sat += usize::from(ws.sat);
        }
        s
    }

    pub fn violations(&self) -> impl Iterator<Item = &str> {
        self.instances.iter().flat_map(|i| i.violations.iter().map(String::as_str))
    }

    /// One row per instance and operator.
    pub fn to_csv(&self) -> String {
        let timing = self.instances.iter().any(|i| i.records.iter().any(|r| r.micros.is_some()));
        let mut out = String::from(
            "instance,name,katoms,propagator,root_true,root_false,decided,consistent,iterations,sat,decisions,propagations,conflicts",
        );
        if timing {
            out.push_str(",micros");
        }
        out.push('\n');
        for inst in &self.instances {
            for r in &inst.records {
                let solve = r.solve.map_or(",,,".to_owned(), |s| {
                    format!("{},{},{},{}", s.sat, s.decisions, s.propagations, s.conflicts)
                });
                write!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    inst.index,
                    inst.name,
                    inst.katoms,
                    r.propagator,
                    r.root.t.len(),
                    r.root.f.len(),
                    r.decided(),
                    r.root.is_consistent(),
                    r.iterations,
                    solve
                )
                .unwrap();
                if timing {
                    write!(out, ",{}", r.micros.unwrap_or(0)).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}

fn random_partition(rng: &mut ChaCha8Rng, katoms: &AtomSet) -> Partition {
    let mut part = Partition::empty();
    for a in katoms.iter() {
        match rng.gen_range(0..3) {
            0 => part.t.insert(a),
            1 => part.f.insert(a),
            _ => false,
        };
    }
    part
}

/// Problems with the chain `(P_i, KA \ N_i) ⊑ W(T, F) ⊑ E(T, F)`, `i ≥ 1`,
/// at `base`.
pub fn chain_violations(reasoner: &Reasoner, base: &Partition) -> Result<Vec<String>> {
    let kb = reasoner.kb();
    let show = |p: &Partition| format!("({{{}}}, {{{}}})", kb.names(&p.t).join(" "), kb.names(&p.f).join(" "));
    let w = reasoner.w_fixpoint(base)?.result;
    let e = reasoner.e_fixpoint(base)?.result;
    let afp = reasoner.afp_from(base)?;
    let mut out = Vec::new();
    if !w.leq(&e) {
        out.push(format!("at {}: W {} not below E {}", show(base), show(&w), show(&e)));
    }
    // The recorded steps stop before the first repeated pair. Appending that
    // pair keeps every value of `i ≥ 1` covered even when step 0 is itself
    // part of the cycle.
    let ka = kb.katoms();
    let (p, n) = afp.steps.last().unwrap();
    let closing = (reasoner.gamma(n)?, reasoner.gamma_prime(p)?);
    for (i, (p, n)) in afp.steps.iter().chain(std::iter::once(&closing)).enumerate().skip(1) {
        let step = Partition::new(p.clone(), ka.difference(n));
        if !step.leq(&w) {
            out.push(format!("at {}: step {i} {} not below W {}", show(base), show(&step), show(&w)));
        }
    }
    Ok(out)
}

fn timed<T>(timing: bool, f: impl FnOnce() -> T) -> (T, Option<u128>) {
    let start = Instant::now();
    let value = f();
    (value, timing.then(|| start.elapsed().as_micros()))
}

fn run_instance(index: usize, inst: &Instance, config: &BenchConfig) -> Result<InstanceRecord> {
    let reasoner = Reasoner::new(parse_kb(&inst.text)?)?;
    let ka = reasoner.kb().katoms().clone();
    let root = Partition::empty();

    let (afp, afp_us) = timed(config.timing, || reasoner.afp_from(&root));
    let afp = afp?;
    let afp_rec = PropagatorRecord {
        propagator: "afp",
        root: afp.partition(&ka),
        iterations: afp.steps.len(),
        solve: None,
        micros: afp_us,
    };
    let mut records = vec![afp_rec];
    for prop in [Propagator::W, Propagator::E] {
        let (out, us) = timed(config.timing, || {
            let fp = reasoner.fixpoint(prop, &root);
            (fp, reasoner.solve(prop))
        });
        let (fp, res) = out;
        let fp = fp?;
        records.push(PropagatorRecord {
            propagator: if prop == Propagator::W { "w" } else { "e" },
            root: fp.result,
            iterations: fp.iterations,
            solve: Some(SolveStats {
                sat: res.sat,
                decisions: res.decisions,
                propagations: res.propagations,
                conflicts: res.conflicts,
            }),
            micros: us,
        });
    }

    let mut violations = chain_violations(&reasoner, &root)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for _ in 0..config.partitions {
        violations.extend(chain_violations(&reasoner, &random_partition(&mut rng, &ka))?);
    }
    if !records[0].root.leq(&records[1].root) {
        violations.push("root: alternating fixpoint not below W".to_owned());
    }
    let records: [PropagatorRecord; 3] = records.try_into().unwrap();
    Ok(InstanceRecord {
        index,
        name: inst.name.clone(),
        katoms: ka.len(),
        records,
        partitions_checked: config.partitions + 1,
        violations,
    })
}

/// Runs every instance in order.
pub fn compare(instances: &[Instance], config: &BenchConfig) -> Result<BenchReport> {
    let instances =
        instances.iter().enumerate().map(|(i, inst)| run_instance(i, inst, config)).collect::<Result<_>>()?;
    Ok(BenchReport { instances })
}
