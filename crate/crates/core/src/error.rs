use std::fmt;

use thiserror::Error;

use crate::ids::{ArrowId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One violated structural invariant found while validating raw quiver data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(VertexId),
    DuplicateArrow(ArrowId),
    UnknownVertex { arrow: ArrowId, vertex: VertexId },
    NotTwoRegular { vertex: VertexId, outgoing: usize, incoming: usize },
    NotBijective(String),
    NotAdmissible { arrow: ArrowId, image: ArrowId },
    Disconnected { components: usize },
    Empty,
}

impl Violation {
    /// Stable name used by diagnostics and the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Violation::DuplicateVertex(_) => "DuplicateVertex",
            Violation::DuplicateArrow(_) => "DuplicateArrow",
            Violation::UnknownVertex { .. } => "UnknownVertex",
            Violation::NotTwoRegular { .. } => "NotTwoRegular",
            Violation::NotBijective(_) => "NotBijective",
            Violation::NotAdmissible { .. } => "NotAdmissible",
            Violation::Disconnected { .. } => "Disconnected",
            Violation::Empty => "Empty",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "DuplicateVertex: vertex `{v}` declared twice"),
            Violation::DuplicateArrow(a) => write!(f, "DuplicateArrow: arrow `{a}` declared twice"),
            Violation::UnknownVertex { arrow, vertex } => {
                write!(f, "UnknownVertex: arrow `{arrow}` uses undeclared vertex `{vertex}`")
            }
            Violation::NotTwoRegular { vertex, outgoing, incoming } => write!(
                f,
                "NotTwoRegular: vertex `{vertex}` has {outgoing} outgoing and {incoming} incoming arrows"
            ),
            Violation::NotBijective(why) => write!(f, "NotBijective: {why}"),
            Violation::NotAdmissible { arrow, image } => write!(
                f,
                "NotAdmissible: f(`{arrow}`) = `{image}` does not start where `{arrow}` ends"
            ),
            Violation::Disconnected { components } => {
                write!(f, "Disconnected: underlying graph has {components} components")
            }
            Violation::Empty => write!(f, "Empty: quiver has no vertices"),
        }
    }
}

/// Every violation found in one validation pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Violation>);

impl Diagnostics {
    pub fn contains(&self, name: &str) -> bool {
        self.0.iter().any(|v| v.name() == name)
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid biserial quiver: {0}")]
    Invalid(Diagnostics),
    #[error("NotBijective: {0}")]
    NotBijective(String),
    #[error("UnknownArrow: `{0}`")]
    UnknownArrow(ArrowId),
    #[error("UnknownVertex: `{0}`")]
    UnknownVertex(VertexId),
    #[error("NotTriangulation: f^3 is not the identity")]
    NotTriangulation,
    #[error("SizeLimitExceeded: {actual} vertices exceeds the search bound of {limit}")]
    SizeLimitExceeded { limit: usize, actual: usize },
    #[error("GenerationFailed: no connected quiver after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("InvalidWeights: {0}")]
    InvalidWeights(String),
    #[error("InvalidBorder: {0}")]
    InvalidBorder(String),
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("InvalidScalar: {0}")]
    InvalidScalar(String),
    #[error("ExcludedDegenerate: one vertex with two loops of weight product 1 (the algebra K[X]/(X^2))")]
    ExcludedDegenerate,
    #[error("TooShort: B_{0} has length 1, so A_{0} is undefined")]
    TooShort(ArrowId),
    #[error("EmptyBorder: the quiver has no f-fixed loops")]
    EmptyBorder,
    #[error("WeightTooSmall: m*n < 3 for arrows {}", join(.0))]
    WeightTooSmall(Vec<ArrowId>),
    #[error("UnsupportedKind: {0}")]
    UnsupportedKind(String),
    #[error("EmptySelection: an idempotent selection needs at least one vertex")]
    EmptySelection,
    #[error("TooSmall: operation needs at least two quiver vertices")]
    TooSmall,
    #[error("NameCollision: generated identifier `{0}` already exists")]
    NameCollision(String),
    #[error("InvalidBrauerGraph: {0}")]
    InvalidBrauerGraph(String),
}

impl Error {
    /// Stable error name (the part before the colon in the message).
    pub fn name(&self) -> &'static str {
        match self {
            Error::Invalid(_) => "Invalid",
            Error::NotBijective(_) => "NotBijective",
            Error::UnknownArrow(_) => "UnknownArrow",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::NotTriangulation => "NotTriangulation",
            Error::SizeLimitExceeded { .. } => "SizeLimitExceeded",
            Error::GenerationFailed { .. } => "GenerationFailed",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::InvalidBorder(_) => "InvalidBorder",
            Error::InvalidParams(_) => "InvalidParams",
            Error::InvalidScalar(_) => "InvalidScalar",
            Error::ExcludedDegenerate => "ExcludedDegenerate",
            Error::TooShort(_) => "TooShort",
            Error::EmptyBorder => "EmptyBorder",
            Error::WeightTooSmall(_) => "WeightTooSmall",
            Error::UnsupportedKind(_) => "UnsupportedKind",
            Error::EmptySelection => "EmptySelection",
            Error::TooSmall => "TooSmall",
            Error::NameCollision(_) => "NameCollision",
            Error::InvalidBrauerGraph(_) => "InvalidBrauerGraph",
        }
    }
}

fn join(ids: &[ArrowId]) -> String {
    ids.iter().map(|a| a.as_str()).collect::<Vec<_>>().join(", ")
}
