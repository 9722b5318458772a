use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("label error: {0}")]
    Label(String),
    #[error("degenerate crossing {crossing}: {message}")]
    Degenerate { crossing: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("diagram is not planar: {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },
    #[error("diagram is split")]
    Split,
    #[error("crossing {0} is a self-crossing of one component")]
    SelfCrossing(usize),
    #[error("link is not proper")]
    NotProper,
    #[error("diagram has {0} components, expected a knot")]
    MultiComponent(usize),
    #[error("region set does not trivialize the diagram")]
    NotUnknotting,
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable kind name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::Label(_) => "LabelError",
            Error::Degenerate { .. } => "DegenerateError",
            Error::Io(_) => "IoError",
            Error::NonPlanar { .. } => "NonPlanarError",
            Error::Split => "SplitError",
            Error::SelfCrossing(_) => "SelfCrossingError",
            Error::NotProper => "NotProperError",
            Error::MultiComponent(_) => "MultiComponentError",
            Error::NotUnknotting => "NotUnknottingError",
            Error::TooLarge(_) => "TooLargeError",
            Error::InvalidArgument(_) => "InvalidArgumentError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
