use thiserror::Error;

/// Every failure mode of the toolkit. Variants carry just enough context
/// to print a useful message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {0} is zero modulo the level")]
    ZeroIndex(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit modulo {1}")]
    NonUnitIndex(i64, u64),
    #[error("element is not integral at the chosen prime")]
    NonIntegral,
    #[error("series has a zero leading term")]
    ZeroLeadingTerm,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("matrix is not in GL2(Z)")]
    NotUnimodular,
    #[error("matrix is not in Gamma0({0})")]
    NotInGamma0(u64),
    #[error("matrix is not in Gamma1({0})")]
    NotInGamma1(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("coset matching failed")]
    NotACosetSystem,
    #[error("determinant is not 1 modulo {0}")]
    BadDeterminant(u64),
    #[error("zero Laurent polynomial")]
    ZeroPolynomial,
    #[error("ray lies on the singular locus")]
    RayOnSingularLocus,
    #[error("vectors do not have wedge +-1")]
    BadWedge,
    #[error("empty arc")]
    EmptyArc,
    #[error("insufficient series precision")]
    InsufficientPrecision,
    #[error("denominator is not supported on two lines")]
    DenominatorNotSplit,
    #[error("degenerate direction")]
    DegenerateDirection,
    #[error("transpose-inverse has q <= 0")]
    BadOrientation,
    #[error("unsupported level shape")]
    UnsupportedLevelShape,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("torsion index is zero")]
    TorsionIndexZero,
    #[error("bad auxiliary integer")]
    BadAuxiliary,
    #[error("precision too low")]
    PrecisionTooLow,
    #[error("residue field search space too large")]
    ResidueFieldTooLarge,
}

pub type Result<T> = core::result::Result<T, Error>;
