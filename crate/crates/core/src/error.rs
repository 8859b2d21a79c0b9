use thiserror::Error;

/// Errors raised by the simulator, circuit builders and diagnostics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A size or sampling knob is outside the supported range.
    #[error("configuration error: {0}")]
    Config(String),

    /// A gate, observable or template does not fit the register it is used on.
    #[error("structural error: {0}")]
    Structure(String),

    /// A slot could not be resolved to a concrete angle.
    #[error("binding error: {0}")]
    Binding(String),

    /// The grid is too coarse for the band limit of the function.
    #[error("grid of {got} points is below the Nyquist minimum of {required}")]
    Nyquist { required: usize, got: usize },

    /// The parameter-shift rule does not apply to this slot.
    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
