use thiserror::Error;

use crate::matrix::Matrix;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures reported by the library.
///
/// Everything except [`Error::Internal`] describes an input that violates a
/// documented precondition. `Internal` means an invariant the library itself
/// guarantees was observed broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("not an affine matrix: {0}")]
    NotAffine(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("Lie algebra is not nilpotent (lower central series stabilizes at dimension {0})")]
    NotNilpotentAlgebra(usize),
    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
    #[error("invalid linear representation: bracket fails on basis pair ({0}, {1})")]
    InvalidLinearRep(usize, usize),
    #[error("representation is not a homomorphism: bracket fails on basis pair ({0}, {1})")]
    BracketMismatch(usize, usize),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("matrix is not a Lie algebra automorphism")]
    NotAutomorphism,
    #[error("nilpotency class {class} exceeds the supported bound {max}")]
    ClassTooLarge { class: usize, max: usize },
    #[error("map is not a derivation for the given representation")]
    NotDerivation,
    #[error("parameter grid exhausted after {tried} points")]
    GridExhausted { tried: usize },
    #[error("representation images are not simultaneously nilpotent")]
    NotUnipotentRep,
    #[error("base Lie algebra is not abelian")]
    NotAbelian,
    #[error("invalid commutative associative product: {0}")]
    InvalidProduct(String),
    #[error("representation is not normalized (translation matrix is not the identity)")]
    NotNormalized,
    #[error("representation is not crystallographic")]
    NotCrystallographic,
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("automorphism {index}: declared order {declared}, {detail}")]
    OrderMismatch {
        index: usize,
        declared: u32,
        detail: String,
    },
    #[error("lift {0} does not realize its automorphism on the base group")]
    LiftMismatch(usize),
    #[error("relation {index} {word:?} does not hold")]
    RelationFailed {
        index: usize,
        word: Vec<i64>,
        residual: Matrix,
    },
    #[error("invalid generator index {0} in relation word")]
    BadGeneratorIndex(i64),
    #[error("empty input: {0}")]
    Empty(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
