use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("polynomial is reducible over GF({p})")]
    Reducible { p: u32 },
    #[error("polynomial is not primitive: root has order {order}, not {expected}")]
    NotPrimitive { order: u64, expected: u64 },
    #[error("GF({p}^{n}) exceeds the field size cap of {cap} elements")]
    FieldTooLarge { p: u32, n: u32, cap: u64 },
    #[error("no default primitive polynomial for GF({p}^{n}); supply one")]
    NoDefaultPolynomial { p: u32, n: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different field contexts")]
    MixedContext,
    #[error("element index {index} out of range for a field of {order} elements")]
    ElementRange { index: u64, order: u64 },
    #[error("subfield degree {r} does not divide {n}")]
    NotDivisor { r: u32, n: u32 },
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("discrete log of zero")]
    LogOfZero,
    #[error("log tables are absent for a field of {0} elements")]
    TablesAbsent(u64),
    #[error("tower decomposition needs p = 3, n = 3r and gcd(r, 3) = 1 (got p = {p}, n = {n})")]
    TowerParams { p: u32, n: u32 },
    #[error("no root of t^3 + 2t + 1 found in the GF(27) subfield")]
    TowerRootMissing,
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("coordinate magnitude too large for floating-point embedding")]
    EmbedOverflow,
    #[error("leading coefficient a2 must be nonzero")]
    DegenerateQuadratic,
    #[error("decimation {d} outside [1, {limit})")]
    DecimationRange { d: u64, limit: u64 },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("memory cap exceeded: {needed} bytes needed, cap is {cap}")]
    MemoryCap { needed: u64, cap: u64 },
    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error reflects a failed mathematical consistency check rather
    /// than bad input or a resource limit.
    pub fn is_assertion(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
