use std::fmt;

use thiserror::Error;

use crate::rootsys::Family;

/// A single broken invariant of a candidate weighted Vogan diagram.
///
/// Node indices are 1-based, as they are shown to users.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A vector has the wrong number of entries for the diagram.
    WrongLength { field: &'static str, expected: usize, found: usize },
    /// A node index lies outside `1..=n`.
    NodeOutOfRange { field: &'static str, node: usize },
    /// The permutation is not a bijection.
    NotAPermutation,
    /// The permutation squared is not the identity.
    NotAnInvolution,
    /// The permutation does not preserve the Cartan matrix.
    NotAnAutomorphism,
    /// A painted node is moved by the involution.
    PaintedNotFixed { node: usize },
    /// A weight lies outside `{0, 1, 2}`.
    WeightOutOfRange { node: usize, weight: i64 },
    /// The weights of a node and of its image differ.
    WeightNotSymmetric { node: usize, image: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { field, expected, found } => {
                write!(f, "{field} has {found} entries, expected {expected}")
            }
            Violation::NodeOutOfRange { field, node } => {
                write!(f, "{field} refers to node {node}, which does not exist")
            }
            Violation::NotAPermutation => write!(f, "theta is not a permutation of the nodes"),
            Violation::NotAnInvolution => write!(f, "theta composed with itself is not the identity"),
            Violation::NotAnAutomorphism => {
                write!(f, "theta does not preserve the Cartan matrix")
            }
            Violation::PaintedNotFixed { node } => {
                write!(f, "painted node {node} is not fixed by theta")
            }
            Violation::WeightOutOfRange { node, weight } => {
                write!(f, "weight {weight} at node {node} is not in {{0,1,2}}")
            }
            Violation::WeightNotSymmetric { node, image } => {
                write!(f, "weight at node {node} differs from weight at its image {image}")
            }
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}: {bound}")]
    InvalidRank { family: Family, rank: usize, bound: &'static str },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("operation (A) is not applicable at node {node}: {reason}")]
    NotApplicable { node: usize, reason: &'static str },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("node {node} does not exist in a diagram of rank {rank}")]
    NoSuchNode { node: usize, rank: usize },

    #[error("no member of the equivalence class has property (P)")]
    PropertyPAnomaly,

    #[error("rank {rank} exceeds the sweep cap of {cap}")]
    RankCapExceeded { rank: usize, cap: usize },

    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),

    #[error("malformed JSON diagram: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
