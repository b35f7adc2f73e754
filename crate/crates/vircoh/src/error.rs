use thiserror::Error;

/// Errors surfaced by model construction and ring operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("basis element `{name}` has odd degree {deg}")]
    OddDegree { name: String, deg: usize },
    #[error("multiplication table is not associative: (e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("Poincaré pairing matrix is singular")]
    DegeneratePairing,
    #[error("ring has no unit in degree 0 at basis index 0")]
    NoUnit,
    #[error("{0}")]
    BadModel(String),
    #[error("operands belong to different ring models")]
    ModelMismatch,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("factor index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("missing pushforward data for component `{0}`")]
    MissingPushforward(String),
    #[error("missing pair data for ({g}, {h}) components (`{cg}`, `{ch}`)")]
    MissingPairData {
        g: String,
        h: String,
        cg: String,
        ch: String,
    },
    #[error("subspace is not stable under the group action")]
    NotGStable,
    #[error("assigned generators do not pairwise commute")]
    NonCommutative,
    #[error("generator `{name}` assigned an element of degree {got}, declared {want}")]
    DegreeMismatch {
        name: String,
        want: usize,
        got: usize,
    },
    #[error("product of basis elements escapes the closed subspace (closure bug)")]
    ProductEscapesSubspace,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
