use thiserror::Error;

/// Errors raised by instance generation and the geometry oracle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid triple ({0}, {1}, {2}) for n={3}")]
    InvalidTriple(u32, u32, u32, u32),

    #[error("degenerate triple ({0}, {1}, {2}): labels must be pairwise distinct")]
    DegenerateTriple(u32, u32, u32),

    #[error("degenerate tuple {0:?}: labels must be pairwise distinct")]
    DegenerateTuple(Vec<u32>),

    #[error("sign vector {0} is not one of the 14 realizable cyclic patterns")]
    UnrealizablePattern(String),

    #[error("invalid hull template: {0}")]
    Template(String),

    #[error("invalid sub-cube: {0}")]
    SubCube(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("collinear points: {0}")]
    Collinear(String),

    #[error("point set violates an invariant: {0}")]
    PointSet(String),

    #[error("model is incomplete: {0}")]
    IncompleteModel(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("emitted counts disagree with the analytic precount for block {block}: expected {expected}, emitted {emitted}")]
    CountMismatch {
        block: &'static str,
        expected: u64,
        emitted: u64,
    },

    #[error("emission failed (output file is partial)")]
    Emission(#[source] std::io::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
