//! Seeded random knowledge bases.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub n_atoms: usize,
    pub n_rules: usize,
    pub max_body: usize,
    pub neg_prob: f64,
    pub n_clauses: usize,
    pub clause_width: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n_atoms: 5, n_rules: 6, max_body: 2, neg_prob: 0.5, n_clauses: 2, clause_width: 2, seed: 0 }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.neg_prob) {
            return Err(Error::Generator(format!("neg_prob {} outside [0, 1]", self.neg_prob)));
        }
        if self.n_rules > 0 && self.n_atoms == 0 {
            return Err(Error::Generator("rules need at least one atom".into()));
        }
        if self.n_rules > 0 && self.max_body > self.n_atoms {
            return Err(Error::Generator(format!(
                "bodies of up to {} distinct atoms need more than {} atoms",
                self.max_body, self.n_atoms
            )));
        }
        if self.n_clauses > 0 && (self.clause_width == 0 || self.clause_width > self.n_atoms) {
            return Err(Error::Generator(format!(
                "clauses of width {} need between 1 and {} atoms",
                self.clause_width, self.n_atoms
            )));
        }
        Ok(())
    }
}

fn atom_name(i: usize) -> String {
    format!("p{}", i + 1)
}

/// Knowledge-base text for `params`. Heads are uniform over the atoms,
/// bodies have a uniform size in `0..=max_body` with atoms drawn without
/// replacement, and each body literal is negated with probability
/// `neg_prob`. Ontology clauses are disjunctions of `clause_width` distinct
/// atoms, each negated with probability 1/2.
pub fn generate(params: &GenParams) -> Result<String> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = String::from("#ontology\n");
    for _ in 0..params.n_clauses {
        let lits: Vec<String> = sample(&mut rng, params.n_atoms, params.clause_width)
            .into_iter()
            .map(|i| if rng.gen_bool(0.5) { format!("-{}", atom_name(i)) } else { atom_name(i) })
            .collect();
        writeln!(out, "{}.", lits.join(" | ")).unwrap();
    }
    out.push_str("#rules\n");
    for _ in 0..params.n_rules {
        let head = rng.gen_range(0..params.n_atoms);
        let size = rng.gen_range(0..=params.max_body);
        let body: Vec<String> = sample(&mut rng, params.n_atoms, size)
            .into_iter()
            .map(|i| if rng.gen_bool(params.neg_prob) { format!("not {}", atom_name(i)) } else { atom_name(i) })
            .collect();
        if body.is_empty() {
            writeln!(out, "{}.", atom_name(head)).unwrap();
        } else {
            writeln!(out, "{} :- {}.", atom_name(head), body.join(", ")).unwrap();
        }
    }
    Ok(out)
}

/// Upper bounds for a corpus of mixed-size instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusShape {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_body: usize,
    pub max_clauses: usize,
    pub max_width: usize,
}

impl CorpusShape {
    /// At most six K-atoms, six rules and three ontology clauses.
    pub const SMALL: CorpusShape =
        CorpusShape { max_atoms: 6, max_rules: 6, max_body: 3, max_clauses: 3, max_width: 3 };

    /// At most seven K-atoms and eight rules.
    pub const SOLVER: CorpusShape =
        CorpusShape { max_atoms: 7, max_rules: 8, max_body: 3, max_clauses: 3, max_width: 3 };
}

/// `count` parameter sets drawn from `seed`, each with its own instance seed.
pub fn corpus_params(seed: u64, count: usize, shape: CorpusShape) -> Vec<GenParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n_atoms = rng.gen_range(1..=shape.max_atoms);
            GenParams {
                n_atoms,
                n_rules: rng.gen_range(0..=shape.max_rules),
                max_body: rng.gen_range(0..=shape.max_body.min(n_atoms)),
                neg_prob: [0.0, 0.25, 0.5, 0.75, 1.0][rng.gen_range(0..5)],
                n_clauses: rng.gen_range(0..=shape.max_clauses),
                clause_width: rng.gen_range(1..=shape.max_width.min(n_atoms)),
                seed: rng.gen(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_kb;

    #[test]
    fn empty_sections() {
        let p = GenParams { n_atoms: 3, n_rules: 0, n_clauses: 0, seed: 7, ..GenParams::default() };
        assert_eq!(generate(&p).unwrap(), "#ontology\n#rules\n");
    }

    #[test]
    fn deterministic() {
        let p = GenParams {
            n_atoms: 5,
            n_rules: 6,
            neg_prob: 0.5,
            n_clauses: 2,
            clause_width: 2,
            seed: 42,
            ..GenParams::default()
        };
        let text = generate(&p).unwrap();
        assert_eq!(text, generate(&p).unwrap());
        let kb = parse_kb(&text).unwrap();
        assert_eq!(kb.rules().len(), 6);
        assert_eq!(kb.ontology().len(), 2);
        assert!(kb.signature().len() <= 5);
    }

    #[test]
    fn rejects_impossible_params() {
        let too_wide = GenParams { n_atoms: 2, clause_width: 3, n_clauses: 1, ..GenParams::default() };
        assert!(matches!(generate(&too_wide), Err(Error::Generator(_))));
        let too_long = GenParams { n_atoms: 2, max_body: 3, ..GenParams::default() };
        assert!(generate(&too_long).is_err());
        let bad_prob = GenParams { neg_prob: 1.5, ..GenParams::default() };
        assert!(generate(&bad_prob).is_err());
    }

    #[test]
    fn corpus_respects_shape() {
        for p in corpus_params(3, 200, CorpusShape::SMALL) {
            let kb = parse_kb(&generate(&p).unwrap()).unwrap();
            assert!(kb.katoms().len() <= 6);
            assert!(kb.rules().len() <= 6);
            assert!(kb.ontology().len() <= 3);
        }
    }
}
