use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hmknf::bench::{compare, fixture_instances, generated_instances, BenchConfig, Summary};
use hmknf::gen::{generate, CorpusShape, GenParams};
use hmknf::operators::Propagator;
use hmknf::{parse_kb, AtomSet, KnowledgeBase, Partition, Reasoner};
use serde_json::{json, Value};

/// Well-founded propagation and model search for ground normal hybrid MKNF
/// knowledge bases.
#[derive(Parser, Debug)]
#[command(name = "hmknf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a knowledge base and report its shape.
    Check { file: PathBuf },
    /// Well-founded partition by W, E or the alternating fixpoint.
    Wfp {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: WfpOp,
        #[command(flatten)]
        part: PartitionArgs,
    },
    /// Search for one MKNF model.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "e")]
        op: SolverOp,
    },
    /// List MKNF models.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "e")]
        op: SolverOp,
    },
    /// Check whether a total partition induces an MKNF model.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        part: PartitionArgs,
    },
    /// Reduce by the well-founded partition.
    Simplify {
        file: PathBuf,
        /// Also write the reduced knowledge base here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a random knowledge base.
    Gen {
        #[command(flatten)]
        params: GenArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the propagators on a generated corpus.
    Compare {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random partial partitions checked per instance.
        #[arg(long, default_value_t = 5)]
        partitions: usize,
        /// Prepend the built-in worked examples.
        #[arg(long)]
        fixtures: bool,
        /// Record wall times (output is then not reproducible).
        #[arg(long)]
        timing: bool,
        /// Write the per-instance table here as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        params: GenArgs,
    },
}

#[derive(Args, Debug)]
struct PartitionArgs {
    /// Comma-separated true K-atoms.
    #[arg(long = "true", value_delimiter = ',')]
    t: Vec<String>,
    /// Comma-separated false K-atoms.
    #[arg(long = "false", value_delimiter = ',')]
    f: Vec<String>,
}

/// Generator flags. Unset flags take the generator defaults; `compare`
/// without any of them draws mixed sizes instead.
#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    atoms: Option<usize>,
    #[arg(long)]
    rules: Option<usize>,
    #[arg(long)]
    max_body: Option<usize>,
    #[arg(long)]
    neg_prob: Option<f64>,
    #[arg(long)]
    clauses: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
}

impl GenArgs {
    fn any(&self) -> bool {
        self.atoms.is_some()
            || self.rules.is_some()
            || self.max_body.is_some()
            || self.neg_prob.is_some()
            || self.clauses.is_some()
            || self.width.is_some()
    }

    fn params(&self, seed: u64) -> GenParams {
        let d = GenParams::default();
        GenParams {
            n_atoms: self.atoms.unwrap_or(d.n_atoms),
            n_rules: self.rules.unwrap_or(d.n_rules),
            max_body: self.max_body.unwrap_or(d.max_body),
            neg_prob: self.neg_prob.unwrap_or(d.neg_prob),
            n_clauses: self.clauses.unwrap_or(d.n_clauses),
            clause_width: self.width.unwrap_or(d.clause_width),
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WfpOp {
    W,
    E,
    Afp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolverOp {
    W,
    E,
}

impl From<SolverOp> for Propagator {
    fn from(op: SolverOp) -> Self {
        match op {
            SolverOp::W => Propagator::W,
            SolverOp::E => Propagator::E,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            // A closed pipe downstream is not our failure.
            let _ = writeln!(io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> Result<Reasoner> {
    let text = read_input(path)?;
    let kb = parse_kb(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Reasoner::new(kb)?)
}

/// Names in alphabetical order.
fn names(kb: &KnowledgeBase, set: &AtomSet) -> Vec<String> {
    let mut out = kb.names(set);
    out.sort();
    out
}

fn partition_json(kb: &KnowledgeBase, part: &Partition) -> Value {
    let status = if part.is_consistent() { "consistent" } else { "inconsistent" };
    json!({
        "status": status,
        "true": names(kb, &part.t),
        "false": names(kb, &part.f),
        "undefined": names(kb, &part.undefined(kb.katoms())),
    })
}

fn partition_arg(kb: &KnowledgeBase, args: &PartitionArgs) -> Result<Partition> {
    let t = kb.katom_set(args.t.iter().map(String::as_str))?;
    let f = kb.katom_set(args.f.iter().map(String::as_str))?;
    Ok(Partition::new(t, f))
}

fn render(v: Value) -> String {
    v.to_string()
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Check { file } => {
            let r = load(&file)?;
            let kb = r.kb();
            let constraints = kb.rules().iter().filter(|r| r.is_constraint()).count();
            Ok(render(json!({
                "status": "ok",
                "ontology": kb.ontology().len(),
                "rules": kb.rules().len(),
                "constraints": constraints,
                "signature": names(kb, &kb.signature()),
                "katoms": names(kb, kb.katoms()),
            })))
        }
        Command::Wfp { file, op, part } => {
            let r = load(&file)?;
            let kb = r.kb();
            let base = partition_arg(kb, &part)?;
            let out = match op {
                WfpOp::W | WfpOp::E => {
                    let prop = if matches!(op, WfpOp::W) { Propagator::W } else { Propagator::E };
                    let fp = r.fixpoint(prop, &base)?;
                    let mut out = partition_json(kb, &fp.result);
                    out["iterations"] = json!(fp.iterations);
                    out
                }
                WfpOp::Afp => {
                    let afp = r.afp_from(&base)?;
                    let mut out = partition_json(kb, &afp.partition(kb.katoms()));
                    out["converged"] = json!(afp.converged);
                    out["period"] = json!(afp.period);
                    out["steps"] =
                        afp.steps.iter().map(|(p, n)| json!({ "p": names(kb, p), "n": names(kb, n) })).collect();
                    out
                }
            };
            Ok(render(out))
        }
        Command::Solve { file, op } => {
            let r = load(&file)?;
            let res = r.solve(op.into());
            let kb = r.kb();
            let mut out = json!({ "status": if res.sat { "sat" } else { "unsat" } });
            if let Some(m) = res.models.first() {
                out["true"] = json!(names(kb, &m.partition.t));
                out["false"] = json!(names(kb, &m.partition.f));
                out["objective"] = json!(m.objective.display(kb.symbols()));
            }
            out["decisions"] = json!(res.decisions);
            out["propagations"] = json!(res.propagations);
            out["conflicts"] = json!(res.conflicts);
            Ok(render(out))
        }
        Command::Enumerate { file, limit, op } => {
            let r = load(&file)?;
            let res = r.enumerate_models(op.into(), limit);
            let kb = r.kb();
            let models: Vec<Value> = res
                .models
                .iter()
                .map(|m| json!({ "true": names(kb, &m.partition.t), "false": names(kb, &m.partition.f) }))
                .collect();
            Ok(render(json!({
                "status": if res.sat { "sat" } else { "unsat" },
                "count": models.len(),
                "models": models,
                "decisions": res.decisions,
                "propagations": res.propagations,
                "conflicts": res.conflicts,
            })))
        }
        Command::Verify { file, part } => {
            let r = load(&file)?;
            let p = partition_arg(r.kb(), &part)?;
            let model = r.verify_total(&p)?;
            Ok(render(json!({ "model": model })))
        }
        Command::Simplify { file, out } => {
            let r = load(&file)?;
            let kb = r.kb();
            let s = r.simplify();
            let mut json = partition_json(kb, &s.partition);
            match &s.reduced {
                Some(red) => {
                    let text = red.kb.to_string();
                    if let Some(path) = &out {
                        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    }
                    json["status"] = json!("reduced");
                    json["kb"] = json!(text);
                }
                None => json["status"] = json!("unsat"),
            }
            Ok(render(json))
        }
        Command::Gen { params, seed } => {
            let text = generate(&params.params(seed))?;
            Ok(text.trim_end().to_owned())
        }
        Command::Compare { count, seed, partitions, fixtures, timing, csv, params } => {
            let mut instances = if fixtures { fixture_instances() } else { Vec::new() };
            let base = params.any().then(|| params.params(seed));
            if let Some(p) = &base {
                p.validate()?;
            }
            instances.extend(generated_instances(count, seed, base.as_ref(), CorpusShape::SMALL)?);
            let report = compare(&instances, &BenchConfig { partitions, seed, timing })?;
            let table = report.to_csv();
            if let Some(path) = &csv {
                fs::write(path, &table).with_context(|| format!("writing {}", path.display()))?;
            }
            let violations: Vec<&str> = report.violations().collect();
            if !violations.is_empty() {
                for v in &violations {
                    eprintln!("violation: {v}");
                }
                bail!("{} inclusion-chain violations", violations.len());
            }
            Ok(render(json!({ "summary": summary_json(&report.summary()), "csv": table })))
        }
    }
}

fn summary_json(s: &Summary) -> Value {
    json!({
        "instances": s.instances,
        "partitions_checked": s.partitions_checked,
        "violations": s.violations,
        "strict_w_below_e": s.strict_w_below_e,
        "strict_afp_below_w": s.strict_afp_below_w,
        "decided_w": s.decided_w,
        "decided_e": s.decided_e,
        "decisions_w": s.decisions_w,
        "decisions_e": s.decisions_e,
        "e_more_decisions": s.e_more_decisions,
        "sat": s.sat,
    })
}
