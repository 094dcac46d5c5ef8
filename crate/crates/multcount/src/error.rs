use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("base x must be at least 2, got {0}")]
    BaseTooSmall(u64),

    #[error("modulus rho must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("history has {got} terms but the order-{expected} recurrence needs exactly {expected}")]
    HistoryLength { expected: usize, got: usize },

    #[error("enumeration bound exceeded: x^(n+1) for x={x}, n={n} is larger than {bound}")]
    EnumerationBound { x: u64, n: u64, bound: u64 },

    #[error("Fermat condition x^(rho-1) = 1 (mod rho) does not hold for x={x}, rho={rho}")]
    ConditionUnsatisfied { x: u64, rho: u64 },

    #[error("index n={n} is below the base index {base} of the matrix channel")]
    IndexBelowBase { n: u64, base: u64 },

    #[error("dimension mismatch: matrix is {matrix}x{matrix} but state vector has {vector} entries")]
    DimensionMismatch { matrix: usize, vector: usize },

    #[error("x={x} and rho={rho} share the factor gcd={gcd}; a coprime pair is required")]
    NotCoprime { x: u64, rho: u64, gcd: u64 },

    #[error("primality query for n={0} is below 2")]
    PrimalityDomain(u64),

    #[error("invalid scan range [{lo}, {hi}]: need 2 <= lo <= hi")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("eigenvector matrix is ill-conditioned: estimate {estimate:.3e} exceeds ceiling {ceiling:.3e}")]
    IllConditioned { estimate: f64, ceiling: f64 },

    #[error("{path}:{line}: malformed b-file line: {reason}")]
    MalformedBFile {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
