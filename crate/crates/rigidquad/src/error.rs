use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("face {0} is not a quadrangle")]
    NonQuadFace(usize),
    #[error("boundary is not simple at vertex {0}")]
    NonSimpleBoundary(usize),
    #[error("bad vertex pattern at vertex {0}")]
    BadVertexPattern(usize),
    #[error("bad ray from vertex {0} to vertex {1}")]
    BadRay(usize, usize),
    #[error("root corner is not convex")]
    RootNotConvex,
    #[error("edge {0} does not join labels differing by one")]
    BadEdgeLabels(usize),
    #[error("face {0} is not colorful")]
    BadFace(usize),
    #[error("root edge does not point from 1 to 0")]
    BadRootLabels,
    #[error("face right of the root is not (0,1,2,1)")]
    WrongRootFace,
    #[error("malformed exploration state: {0}")]
    MalformedState(String),
    #[error("trace is incomplete")]
    IncompleteTrace,
    #[error("trace does not fit the frontier at step {0}")]
    FrontierMismatch(usize),
    #[error("gluing violates the label rule at step {0}")]
    LabelClash(usize),
    #[error("object is not in the required class: {0}")]
    NotInClass(String),
    #[error("ascent path did not terminate")]
    NonTermination,
    #[error("dictionary row {0} fails")]
    DictionaryViolation(String),
    #[error("side is not tangential")]
    NotTangential,
    #[error("class is empty")]
    EmptyClass,
    #[error("table bounds too small")]
    BoundsTooSmall,
    #[error("argument outside the domain")]
    OutOfDomain,
    #[error("width {0} is not positive")]
    NonPositiveWidth(usize),
    #[error("inconsistent placement at vertex {0}")]
    InconsistentPlacement(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
