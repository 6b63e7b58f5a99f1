use thiserror::Error;

/// Errors raised by the arithmetic, expansion and experiment layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("extension modulus is reducible or has the wrong degree")]
    ReducibleModulus,
    #[error("an extension modulus is required exactly when e > 1")]
    ModulusMismatch,
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial must be nonconstant")]
    ConstantInput,
    #[error("polynomial must be nonzero")]
    ZeroInput,
    #[error("series has no nonzero coefficient within its precision")]
    ZeroDivisor,
    #[error("series has odd valuation, no square root in F_q((1/Y))")]
    OddValuation,
    #[error("leading coefficient is not a square in F_q")]
    NonSquareLeadingCoeff,
    #[error("insufficient precision to determine the polynomial part")]
    InsufficientPrecision,
    #[error("discriminant is a square, the element is rational")]
    SquareDiscriminant,
    #[error("square root of the discriminant is not in F_q((1/Y))")]
    NotInLaurentField,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("element is not in the maximal ideal M")]
    NotInM,
    #[error("no period found within {0} states")]
    IterationBudgetExceeded(usize),
    #[error("pair is not reduced: need xi_- outside O and xi_+ in M")]
    NotReduced,
    #[error("polynomial P must be irreducible")]
    ReducibleP,
    #[error("reference measure has empty support")]
    EmptyMeasure,
    #[error("cylinder digits must be nonconstant")]
    ConstantDigit,
    #[error("elements belong to different kernels or fields")]
    Mismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
