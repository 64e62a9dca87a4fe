use thiserror::Error;

/// Everything that can go wrong between kinematics and the sweep driver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("t-channel divergence at theta = 0")]
    Pole,

    #[error("infrared divergence at p = 0")]
    Infrared,

    #[error("degenerate state: {0}")]
    DegenerateState(&'static str),

    #[error("degenerate SLD: derivative parallel to the state (|beta| = {0:e})")]
    DegenerateSld(f64),

    #[error("outcome with vanishing probability has non-vanishing derivative ({0:e})")]
    Boundary(f64),

    #[error("singular Fisher information (det = {0:e})")]
    SingularFisher(f64),

    #[error("config error at `{token}`: {reason}")]
    Config { token: String, reason: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short tag written to the `error_flag` CSV column.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole => "pole",
            Error::Infrared => "infrared",
            Error::DegenerateState(_) => "degenerate_state",
            Error::DegenerateSld(_) => "degenerate_sld",
            Error::Boundary(_) => "boundary",
            Error::SingularFisher(_) => "singular_fisher",
            Error::Config { .. } => "config",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn config(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
