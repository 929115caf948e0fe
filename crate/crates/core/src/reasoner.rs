use crate::error::Result;
use crate::kb::KnowledgeBase;
use crate::oracle::{KbOracle, DEFAULT_SIGNATURE_LIMIT};

/// A knowledge base together with its compiled ontology oracle. All
/// operators, the solver and the simplifier work through one of these.
#[derive(Debug)]
pub struct Reasoner {
    kb: KnowledgeBase,
    oracle: KbOracle,
}

impl Reasoner {
    pub fn new(kb: KnowledgeBase) -> Result<Self> {
        Reasoner::with_limit(kb, DEFAULT_SIGNATURE_LIMIT)
    }

    pub fn with_limit(kb: KnowledgeBase, signature_limit: usize) -> Result<Self> {
        let oracle = KbOracle::with_limit(&kb, signature_limit)?;
        Ok(Reasoner { kb, oracle })
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn oracle(&self) -> &KbOracle {
        &self.oracle
    }
}
