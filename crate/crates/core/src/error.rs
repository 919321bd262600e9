use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid params: {0}")]
    InvalidParams(String),
    #[error("labelling is incomplete: edge {0} has no label")]
    Incomplete(usize),
    #[error("label out of range: edge {edge} has label {label} but k = {k}")]
    LabelOutOfRange { edge: usize, label: u32, k: u32 },
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("infeasible prefix: fixed labels violate constraints between edges {0} and {1}")]
    InfeasiblePrefix(usize, usize),
    #[error("search budget exhausted")]
    Unknown,
    #[error("degenerate star: n = {0} (need n >= 2)")]
    DegenerateStar(usize),
    #[error("regime not constructible: {0}")]
    Unsupported(String),
    #[error("trivial instance family: p = q = 0")]
    Trivial,
    #[error("unknown port {0:?}")]
    UnknownPort(String),
    #[error("port reuse: {0:?} already consumed")]
    PortReuse(String),
    #[error("attach would create a loop or parallel edge")]
    BadAttach,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed source: {0}")]
    MalformedSource(String),
    #[error("not a certificate: {0}")]
    NotACertificate(String),
    #[error("not a labelling: {0}")]
    NotALabelling(String),
    #[error("decoding failure: {0}")]
    DecodingFailure(String),
    #[error("no completion of the forward labelling: {0}")]
    NoCompletion(String),
    #[error("too large for oracle: {0} variables (limit 20)")]
    TooLarge(usize),
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
}

pub type Result<T> = std::result::Result<T, Error>;
