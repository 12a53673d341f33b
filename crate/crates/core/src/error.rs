use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
///
/// Checks that are part of a verification surface (extension certificates,
/// pseudo-Anosov certificates) are reported in the certificate types instead
/// of through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("{rows}x{cols} matrix needs {} entries, got {found}", rows * cols)]
    BadEntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },

    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension mismatch in {op}: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    Dimension {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("genus must be between 1 and {max}, got {genus}", max = crate::surface::MAX_GENUS)]
    GenusOutOfRange { genus: usize },

    #[error("homology vector has length {found}, expected {expected} (= 2 x genus)")]
    HomologyLength { expected: usize, found: usize },

    #[error("separating curve class must have zero homology vector")]
    SeparatingNonzero,

    #[error("nonseparating curve class must be a primitive vector (gcd of entries = 1)")]
    NotPrimitive,

    #[error("curve lives on a genus-{found} surface, expected genus {expected}")]
    SurfaceMismatch { expected: usize, found: usize },

    #[error("twist power must be nonzero")]
    ZeroTwistPower,

    #[error("unknown generator name `{name}` on a genus-{genus} surface")]
    UnknownGenerator { name: String, genus: usize },

    #[error("matrix is not symplectic (M^T J M != J)")]
    NotSymplectic,

    #[error("word and matrix disagree: product of transvections differs from the given matrix")]
    WordMatrixDisagree,

    #[error("monodromy needs a twist word, a matrix, or both")]
    MissingWordAndMatrix,

    #[error("source genus {g_s} must exceed target genus {g_t}")]
    GenusNotLarger { g_s: usize, g_t: usize },

    #[error("handle count for the general block must be at least 2, got {delta}")]
    DeltaTooSmall { delta: usize },

    #[error("expected {expected} twist multiplicities, got {found}")]
    MultiplicityCount { expected: usize, found: usize },

    #[error("twist multiplicity {index} is zero; zero multiplicities make a twist letter trivial")]
    ZeroMultiplicity { index: usize },

    #[error("parameter `{name}` does not apply here: {reason}")]
    BadParameter { name: &'static str, reason: String },

    #[error("invalid value in JSON input: {0}")]
    JsonValue(String),
}

pub type Result<T> = std::result::Result<T, Error>;
