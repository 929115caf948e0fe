//! Small knowledge bases with known behavior, shared by tests, the CLI
//! and the benchmark corpus.

/// Two-way choice between `a` and `b`; `c` follows from `a` but the
/// ontology rules it out.
pub const K1_TEXT: &str = "#ontology\n-c.\n#rules\na :- not b.\nb :- not a.\nc :- a.\n";

/// A self-supported `b` next to an even loop over `a` and `c`.
pub const K2_TEXT: &str = "#ontology\na -> b.\n#rules\na :- not c.\nc :- not a.\nb :- b.\n";

/// The alternating fixpoint started from `(∅, {b})` oscillates on this one.
pub const K3_TEXT: &str = "#ontology\na -> b.\n#rules\na :- not c.\nc :- not a.\na :- not b.\n";

/// Simplifying by the expanding partition changes the model set here.
pub const K4_TEXT: &str = "#ontology\n-c.\n#rules\na :- d.\nb :- not d.\nd :- not b.\nc :- not a.\n";

/// A single rule `p ← not q` over an empty ontology.
pub const PQ_TEXT: &str = "#rules\np :- not q.\n";

/// The employment example: the expanding operator decides everything.
pub const EMPLOYMENT_TEXT: &str = "\
#ontology
(unemployed -> -employed) & unemployed.
#rules
employed :- salary.
volunteer :- work, not salary.
salary :- work, not volunteer.
work.
";

/// Every fixture with a short label.
pub const ALL: &[(&str, &str)] = &[
    ("k1", K1_TEXT),
    ("k2", K2_TEXT),
    ("k3", K3_TEXT),
    ("k4", K4_TEXT),
    ("pq", PQ_TEXT),
    ("employment", EMPLOYMENT_TEXT),
];
