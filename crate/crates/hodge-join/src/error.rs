use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("exact division failed: nonzero remainder")]
    NotDivisible,
    #[error("the cycle polynomial lies in the Jacobian ideal")]
    ZeroClass,
    #[error("hypersurface is not smooth: {0}")]
    NotSmooth(String),
    #[error("{0} is not a root of the binary form")]
    RootMismatch(String),
    #[error("{0} is a root of the binary form")]
    RootCollision(String),
    #[error("binary form does not have distinct rational roots")]
    NonRationalRoots,
    #[error("singular linear system")]
    SingularSystem,
    #[error("polynomial is not in the Jacobian ideal")]
    NotInIdeal,
    #[error("polynomial is not in the colon ideal")]
    NotInColonIdeal,
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("{0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::NotSmooth(_) => 3,
            _ => 4,
        }
    }

    pub(crate) fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
