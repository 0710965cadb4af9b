use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("modulus {0} is smaller than 3")]
    ModulusTooSmall(u64),
    #[error("modulus {0} exceeds the supported table size (max {max})", max = crate::field::MAX_MODULUS)]
    ModulusTooLarge(u64),
    #[error("operands live in different fields (p = {left} vs p = {right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("operand set is empty")]
    EmptyOperand,
    #[error("set has {got} elements, at least {needed} required")]
    TooSmall { needed: usize, got: usize },
    #[error("dilation by zero is not injective")]
    ZeroDilation,
    #[error("element {elem} is not a residue modulo {p}")]
    ElementOutOfRange { elem: u64, p: u32 },
    #[error("ratio set equals the whole field")]
    RatioSetFull,
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("epsilon must lie strictly between 0 and 1")]
    BadEpsilon,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("bucket decomposition has no nonempty bucket")]
    EmptyDecomposition,
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("cache: {0}")]
    Cache(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Cache(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Cache(e.to_string())
    }
}
