use thiserror::Error;

/// Errors raised by the geometric pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not an orientation- and time-orientation-preserving Lorentz isometry (residual {residual:.3e})")]
    InvalidIsometry { residual: f64 },
    #[error("isometry is not parabolic")]
    NotParabolic,
    #[error("frame vectors are parallel")]
    DegenerateFrame,
    #[error("edge pairings differ: {left} vs {right}")]
    PairingMismatch { left: f64, right: f64 },
    #[error("2x2 matrix is not unimodular (det = {det})")]
    NotUnimodular { det: f64 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("point is not future lightlike (q = {q:.3e}, t = {t:.3e})")]
    NotLightlike { q: f64, t: f64 },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("hull did not stabilize up to radius {max_radius}")]
    NotStabilized { max_radius: usize, facet_counts: Vec<usize> },
    #[error("glued sides differ in length: {0}")]
    GluingMismatch(String),
    #[error("ray crossing lies too close to the truncation frontier")]
    InconclusiveNearBoundary,
    #[error("edge {0} lies on the boundary")]
    BoundaryEdge(usize),
    #[error("degenerate triangle {0}")]
    DegenerateTriangle(usize),
    #[error("flip limit {0} exceeded")]
    FlipLimitExceeded(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("invalid cone surface: {0}")]
    InvalidSurface(String),
    #[error("polygon is not cocyclic (spread {spread:.3e})")]
    NotCocyclic { spread: f64 },
    #[error("point is on or outside the circumcircle (coefficient {0:.3e})")]
    OnOrOutsideCircumcircle(f64),
    #[error("relation residual {0:.3e} too large")]
    RelationResidualTooLarge(f64),
    #[error("representation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("round trip mismatch: {0}")]
    Mismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("unsupported format version `{0}`")]
    Version(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
