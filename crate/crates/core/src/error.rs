use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {order} exceeds the 64-vertex limit")]
    OrderOverflow { order: u64 },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("order {order} too large for exact computation (limit {limit})")]
    TooLargeForExact { order: usize, limit: usize },
    #[error("deleted graph has {deleted} vertices but host only {host}")]
    DeletionTooLarge { host: u64, deleted: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("parameter at {position} must be at least 1")]
    ZeroParameter { position: usize },
    #[error("deleted graph has {deleted} vertices but host only {host}")]
    MinusSize { host: u64, deleted: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed graph6 header")]
    Header,
    #[error("invalid graph6 character {0:?}")]
    Character(char),
    #[error("graph6 body has {found} bytes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits in graph6 body")]
    TrailingBits,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex {vertex} out of range for host of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("({0}, {1}) is not an edge of the host")]
    NotAnEdge(usize, usize),
    #[error("invalid coloring JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget of {budget} nodes exhausted")]
    Indeterminate { budget: u64 },
    #[error("no Ramsey number found up to {max_r}")]
    NotFoundWithinBound { max_r: usize },
    #[error("copy enumeration exceeded the cap of {cap} copies")]
    CopyCapExceeded { cap: usize },
    #[error("search found {search} but the catalog states {catalog} ({source_tag})")]
    CatalogMismatch {
        search: u64,
        catalog: u64,
        source_tag: String,
    },
    #[error("host order {0} exceeds the 64-vertex limit")]
    HostTooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("host has {edges} edges; exhaustive enumeration is limited to {limit}")]
    SizeLimit { edges: usize, limit: usize },
    #[error("construction is not free: {0}")]
    NotFree(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
