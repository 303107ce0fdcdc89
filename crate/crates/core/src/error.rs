use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised anywhere in the library.
///
/// Each variant belongs to one of four classes (format, precondition,
/// certification, undecided), see [`Error::class`].
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("IO error: {0}")]
    Io(String),
    #[error("edge not present: {0}-{1}")]
    EdgeNotPresent(VertexId, VertexId),
    #[error("vertex not present: {0}")]
    VertexNotPresent(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("identify requires distinct vertices")]
    IdentifySame,
    #[error("faces require connected graph")]
    FacesDisconnected,
    #[error("graph not planar")]
    NotPlanar,
    #[error("rotation system invalid: {0}")]
    BadRotation(String),
    #[error("epsilon invalid, re-pick")]
    EpsilonInvalid,
    #[error("epsilon regime violated")]
    EpsilonRegime,
    #[error("p must be ≥ 3")]
    GadgetParameter,
    #[error("use sampled certification")]
    UseSampled,
    #[error("use branch-reduce")]
    UseBranchReduce,
    #[error("undecided within budget")]
    Undecided,
    #[error("handshake violation")]
    Handshake,
    #[error("already Hamiltonian")]
    AlreadyHamiltonian,
    #[error("evenize first")]
    EvenizeFirst,
    #[error("precondition failed at vertex {vertex}: {msg}")]
    PreconditionAt { vertex: VertexId, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Format,
    Precondition,
    Certification,
    Undecided,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Format { .. } | Error::Io(_) => ErrorClass::Format,
            Error::Certification(_) | Error::EpsilonRegime => ErrorClass::Certification,
            Error::Undecided => ErrorClass::Undecided,
            _ => ErrorClass::Precondition,
        }
    }

    /// Process exit code: 2 format, 3 precondition, 4 certification, 5 undecided.
    pub fn exit_code(&self) -> i32 {
        match self.class() {
            ErrorClass::Format => 2,
            ErrorClass::Precondition => 3,
            ErrorClass::Certification => 4,
            ErrorClass::Undecided => 5,
        }
    }

    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format { line, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
