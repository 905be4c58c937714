use thiserror::Error;

/// Errors raised across the library. Each variant maps onto one of the CLI
/// exit classes through [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex pair ({0}, {1}) is out of range for a graph on {2} vertices")]
    OutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("infeasible family spec: {0}")]
    InfeasibleSpec(String),
    #[error("pairing model exceeded {0} rejection attempts")]
    GenerationTimeout(usize),
    #[error("cycle length {0} is unsupported (expected 3..=8)")]
    UnsupportedLength(usize),
    #[error("pattern too large: {0}")]
    PatternTooLarge(String),
    #[error("enumeration gate exceeded: {what} = {size} > {limit}")]
    EnumerationGateExceeded { what: String, size: f64, limit: f64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("solution does not match the graph: {0}")]
    SolutionMismatch(String),
    #[error("pattern has no spanning subgraph made of disjoint cycles and edges")]
    NoSpanningCycleEdgeFactor,
    #[error("dense eigensolver gate exceeded: n = {0} > {1}")]
    SizeGateExceeded(usize, usize),
    #[error("Jacobi iteration did not converge after {0} sweeps (off-diagonal norm {1:e})")]
    ConvergenceFailure(usize, f64),
    #[error("bad color vector: {0}")]
    BadColorVector(String),
    #[error("operation needs a different law: {0}")]
    WrongLawKind(String),
    #[error("argument {t} outside the MGF domain |t| < {bound}")]
    DomainExceeded { t: f64, bound: f64 },
    #[error("ambiguous regime: {0}")]
    AmbiguousRegime(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// 2 usage, 3 gate exceeded, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EnumerationGateExceeded { .. }
            | Error::SizeGateExceeded(..)
            | Error::PatternTooLarge(_)
            | Error::GenerationTimeout(_) => 3,
            Error::ConvergenceFailure(..) | Error::DomainExceeded { .. } => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
