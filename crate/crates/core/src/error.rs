use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("atom `{0}` is not a K-atom of the knowledge base")]
    NotAKAtom(String),

    #[error("partition is inconsistent; both true and false: {0}")]
    InconsistentPartition(String),

    #[error("partition is not total; unassigned: {0}")]
    NotTotal(String),

    #[error("brute-force enumeration refuses {rules} rules (limit {limit})")]
    TooManyRules { rules: usize, limit: usize },

    #[error("query signature has {atoms} atoms, the oracle limit is {limit}")]
    SignatureCap { atoms: usize, limit: usize },

    #[error("invalid generator parameters: {0}")]
    Generator(String),
}
