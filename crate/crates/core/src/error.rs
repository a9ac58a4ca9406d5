use thiserror::Error;

pub type Result<T> = std::result::Result<T, SecnetError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SecnetError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid network configuration: {0}")]
    InvalidConfig(String),

    #[error("operation requires {expected} mode")]
    Mode { expected: &'static str },

    #[error("quadrature did not converge: estimated error {achieved:.3e} exceeds tolerance {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("partition table for k = {k} exceeds the configured cap {cap}")]
    PartitionCap { k: usize, cap: usize },

    #[error("root bracket not found: {0}")]
    Bracket(String),

    #[error("singular eavesdropper covariance (rank deficient, regularization disabled)")]
    SingularCovariance,

    #[error("infeasible target: {0}")]
    Infeasible(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl SecnetError {
    /// Stable machine-readable code, printed by the CLI next to the message.
    pub fn code(&self) -> &'static str {
        match self {
            SecnetError::Domain(_) => "domain",
            SecnetError::InvalidConfig(_) => "invalid_config",
            SecnetError::Mode { .. } => "mode",
            SecnetError::Quadrature { .. } => "quadrature",
            SecnetError::PartitionCap { .. } => "partition_cap",
            SecnetError::Bracket(_) => "bracket",
            SecnetError::SingularCovariance => "singular_covariance",
            SecnetError::Infeasible(_) => "infeasible",
            SecnetError::Config(_) => "config",
            SecnetError::Io(_) => "io",
        }
    }

    /// Process exit status used by the `secnet` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            SecnetError::Config(_) | SecnetError::InvalidConfig(_) | SecnetError::Mode { .. } => 2,
            SecnetError::Infeasible(_) => 3,
            SecnetError::Io(_) => 1,
            _ => 4,
        }
    }
}

impl From<std::io::Error> for SecnetError {
    fn from(e: std::io::Error) -> Self {
        SecnetError::Io(e.to_string())
    }
}
