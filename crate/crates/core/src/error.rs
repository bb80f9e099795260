use thiserror::Error;

use crate::verify::Witness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word {word} has the wrong parity for {graph}")]
    Parity { word: String, graph: String },

    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },

    #[error("rows of the matrix do not share a common sum")]
    NotStochastic,

    #[error("shape error: {0}")]
    Shape(String),

    #[error("face anchor {anchor:#x} overlaps free mask {free_mask:#x}")]
    MalformedFace { free_mask: u64, anchor: u64 },

    #[error("matrix is not the image of any [[c-1, n-c],[c, n-c-1]]")]
    NoPreimage,

    #[error("cell {0} is empty")]
    DegenerateCell(usize),

    #[error("code is empty")]
    EmptyCode,

    #[error("objects live on different graphs: {0} vs {1}")]
    GraphMismatch(String, String),

    #[error("partition is not equitable: {0}")]
    NotEquitable(Witness),

    #[error("claimed quotient matrix {claimed} but verified {verified}")]
    ClaimMismatch { claimed: String, verified: String },

    #[error("covering radius {found}, expected {expected}")]
    Radius { expected: usize, found: usize },

    #[error("codes {0} and {1} have intersecting distance-1 spheres")]
    TranslateCollision(usize, usize),

    #[error("parity-check form error: {0}")]
    Form(String),

    #[error("coset count {t} outside 1..{bound}")]
    Bound { t: usize, bound: usize },

    #[error("representative {0} lies in an already chosen coset")]
    DuplicateCoset(String),

    #[error("first cells overlap")]
    CellOverlap,

    #[error("eigenvalue mismatch: expected {expected}, found {found}")]
    EigenvalueMismatch { expected: i64, found: i64 },

    #[error("faces do not partition the cell: {0}")]
    FaceCover(String),

    #[error("merge condition s^2 = 2d + n - 2b fails: s^2 = {s_squared}, 2d + n - 2b = {rhs}")]
    MergeCondition { s_squared: i64, rhs: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parity { .. } => "parity",
            Error::Index { .. } => "index",
            Error::NotStochastic => "not-stochastic",
            Error::Shape(_) => "shape",
            Error::MalformedFace { .. } => "malformed-face",
            Error::NoPreimage => "no-preimage",
            Error::DegenerateCell(_) => "degenerate-cell",
            Error::EmptyCode => "empty-code",
            Error::GraphMismatch(..) => "graph-mismatch",
            Error::NotEquitable(_) => "not-equitable",
            Error::ClaimMismatch { .. } => "claim-mismatch",
            Error::Radius { .. } => "radius",
            Error::TranslateCollision(..) => "translate-collision",
            Error::Form(_) => "form",
            Error::Bound { .. } => "bound",
            Error::DuplicateCoset(_) => "duplicate-coset",
            Error::CellOverlap => "cell-overlap",
            Error::EigenvalueMismatch { .. } => "eigenvalue-mismatch",
            Error::FaceCover(_) => "face-cover",
            Error::MergeCondition { .. } => "merge-condition",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}
