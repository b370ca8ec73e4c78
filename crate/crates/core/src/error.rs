//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not in SL(2,Z): det = {det}")]
    NotSl2z { det: i64 },

    #[error("matrix is not hyperbolic: |trace| = {trace}")]
    NotHyperbolic { trace: i64 },

    #[error("point is outside the atlas: {0}")]
    OutOfAtlas(String),

    #[error("inversion is singular at the origin")]
    SingularInput,

    #[error("surgery ineffective: e^tau * lambda_s = {product} <= 1")]
    SurgeryIneffective { product: f64 },

    #[error("surgery failed: found {found} fixed points on the center line, expected 3")]
    SurgeryFailed { found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("collar too thin: local chart blend failed the injectivity scan ({0})")]
    CollarTooThin(String),

    #[error("invalid plug pairing: a gluing must join one stable and one unstable plug")]
    InvalidPairing,

    #[error("gap too small: trapping check failed ({0})")]
    GapTooSmall(String),

    #[error("inconsistent region: box covering became empty at depth {depth}")]
    InconsistentRegion { depth: u32 },

    #[error("polyline resolution exhausted: {0} vertices exceed the subdivision cap")]
    ResolutionExhausted(usize),

    #[error("rectangle surgery misaligned: {0}")]
    SurgeryMisaligned(String),

    #[error("unknown example '{0}'")]
    UnknownExample(String),

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
