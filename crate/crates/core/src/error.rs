use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two monomials (or a monomial and a cap vector) have different numbers of variables.
    LengthMismatch { left: usize, right: usize },
    /// Reverse-lex comparison was requested across two different degrees.
    DegreeMismatch { left: u32, right: u32 },
    /// Compression needs caps `a₁ ≥ a₂ ≥ … ≥ a_k` with unbounded entries greatest.
    CapsNotSorted,
    /// `F_degree` asks for more monomials than the degree slice holds.
    SliceOverflow {
        degree: usize,
        requested: u64,
        available: u64,
    },
    /// The compressed set is not divisor-closed; `degree` is the first offending degree.
    NotRealizable { degree: usize },
    /// An F-vector must be non-empty.
    EmptyFVector,
    /// An F-vector longer than `d + 1` cannot be an h-vector of a `(d−1)`-dimensional complex.
    FVectorTooLong { len: usize, d: usize },
    /// `d` must satisfy `1 ≤ d ≤ n − m`.
    DimensionOutOfRange { d: usize, max: usize },
    /// The layout violates one of its structural invariants.
    InvalidLayout(String),
    /// Faces are stored as 64-bit sets.
    TooManyVertices { n: usize },
    /// The vertex set contains a whole part `P_i`, so it is not a face of `Λ`.
    NotAFace { part: usize },
    /// A facet list mixes face sizes.
    NonPure { expected: usize, found: usize },
    /// More facets of a given restriction size than monomials of that degree.
    TooManyFacetsOfWeight { weight: usize },
    /// The multicomplex is not its own compression.
    NotCompressed,
    /// A member of the multicomplex has degree larger than `d`.
    DegreeTooLarge { degree: u32, d: usize },
    /// A member of the multicomplex violates the caps.
    OutsideCaps,
    /// The member set is empty or not closed under divisibility.
    NotMulticomplex,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
            Error::DegreeMismatch { left, right } => write!(
                f,
                "reverse-lex order is only defined within a degree (got degrees {left} and {right})"
            ),
            Error::CapsNotSorted => write!(
                f,
                "caps must be non-increasing with unbounded entries first"
            ),
            Error::SliceOverflow {
                degree,
                requested,
                available,
            } => write!(
                f,
                "degree {degree}: requested {requested} monomials but only {available} exist"
            ),
            Error::NotRealizable { degree } => write!(
                f,
                "not the F-vector of a multicomplex: divisor closure fails in degree {degree}"
            ),
            Error::EmptyFVector => write!(f, "F-vector is empty"),
            Error::FVectorTooLong { len, d } => {
                write!(f, "F-vector has {len} entries but d + 1 = {}", d + 1)
            }
            Error::DimensionOutOfRange { d, max } => {
                write!(f, "d = {d} is out of range 1..={max}")
            }
            Error::InvalidLayout(msg) => write!(f, "invalid layout: {msg}"),
            Error::TooManyVertices { n } => write!(f, "{n} vertices exceed the limit of 64"),
            Error::NotAFace { part } => {
                write!(f, "vertex set contains all of part {}", part + 1)
            }
            Error::NonPure { expected, found } => {
                write!(
                    f,
                    "facet of size {found} in a list of size-{expected} facets"
                )
            }
            Error::TooManyFacetsOfWeight { weight } => write!(
                f,
                "more facets with |R| = {weight} than monomials of degree {weight}"
            ),
            Error::NotCompressed => write!(
                f,
                "multicomplex is not compressed; compress its F-vector first"
            ),
            Error::DegreeTooLarge { degree, d } => {
                write!(f, "monomial of degree {degree} exceeds d = {d}")
            }
            Error::OutsideCaps => write!(f, "monomial exceeds the degree caps"),
            Error::NotMulticomplex => write!(f, "not a multicomplex"),
        }
    }
}

impl core::error::Error for Error {}
