use thiserror::Error;

/// Errors raised by the algebra, counting, and code layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid tower parameters: {0}")]
    InvalidParameters(String),
    #[error("modulus is not a monic irreducible polynomial of degree {0} over F_p")]
    BadModulus(u32),
    #[error("sigma exponent {sigma_exp} is not coprime to n = {n}")]
    SigmaNotGenerator { sigma_exp: u32, n: u32 },
    #[error("field of order {order} exceeds the supported envelope 2^20")]
    FieldTooLarge { order: u64 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("gcrd of two zero polynomials")]
    BothZero,
    #[error("norm preimage requested for zero")]
    ZeroNorm,
    #[error("element is not in the norm group N(K^x)")]
    NotInNormGroup,
    #[error("constant coefficient is zero; the bound is not central")]
    NonCentralBound,
    #[error("polynomial must be monic of degree >= {min_degree}")]
    NotMonic { min_degree: usize },
    #[error("central polynomial is reducible or not monic")]
    ReducibleCentral,
    #[error("coefficient does not lie in the fixed field F")]
    NotInFixedField,
    #[error("polynomials have unequal degrees {0} and {1}")]
    UnequalDegrees(usize, usize),
    #[error("polynomial is reducible")]
    Reducible,
    #[error("invalid similarity witness")]
    InvalidWitness,
    #[error("invalid automorphism exponent r = {r} (must be < {bound})")]
    InvalidAutomorphism { r: u32, bound: u32 },
    #[error("Sandler hypothesis violated: {0}")]
    SandlerHypothesis(String),
    #[error("invalid equivalence path: {0}")]
    InvalidPath(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("envelope exceeded: {0}")]
    EnvelopeExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
