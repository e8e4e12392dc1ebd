use thiserror::Error;

/// Errors raised by the library. Every variant maps to a named failure of
/// one operation; the CLI surfaces the variant name verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("element or matrix does not belong to the field: {0}")]
    SpecMismatch(String),
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("group is not soluble")]
    NotSoluble,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("matrices do not define a representation: {0}")]
    NotARepresentation(String),
    #[error("generator matrix {0} is singular")]
    SingularGenerator(usize),
    #[error("module is not irreducible")]
    NotIrreducible,
    #[error("subspace is not invariant under the group action")]
    NotInvariant,
    #[error("modules are over different groups or fields")]
    Mismatch,
    #[error("formation is empty")]
    EmptyFormation,
    #[error("group does not belong to the saturated formation {0}")]
    GroupNotInFormation(String),
    #[error("decomposition postcondition failed: {0}")]
    ClimbInconsistent(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("meataxe gave up after {0} attempts")]
    MeataxeFailed(usize),
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
}

impl Error {
    /// Short variant name, used in CLI diagnostics and reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InversionOfZero => "InversionOfZero",
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::InvalidField(_) => "InvalidField",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::AmbientMismatch(..) => "AmbientMismatch",
            Error::NotSoluble => "NotSoluble",
            Error::NotNormal => "NotNormal",
            Error::NotARepresentation(_) => "NotARepresentation",
            Error::SingularGenerator(_) => "SingularGenerator",
            Error::NotIrreducible => "NotIrreducible",
            Error::NotInvariant => "NotInvariant",
            Error::Mismatch => "Mismatch",
            Error::EmptyFormation => "EmptyFormation",
            Error::GroupNotInFormation(_) => "GroupNotInFormation",
            Error::ClimbInconsistent(_) => "ClimbInconsistent",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::MeataxeFailed(_) => "MeataxeFailed",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub(crate) fn cap(what: impl Into<String>, cap: usize) -> Self {
        Error::CapExceeded { what: what.into(), cap }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
