use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure while decoding a PGM stream.
#[derive(Debug, Error)]
pub enum PgmError {
    #[error("unrecognized magic {0:?}, expected P5 or P2")]
    BadMagic(String),
    #[error("malformed header: {0}")]
    MalformedHeader(&'static str),
    #[error("unsupported maxval {0}, only 255 is accepted")]
    UnsupportedMaxval(u32),
    #[error("truncated payload: expected {expected} samples, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("sample value {0} exceeds maxval 255")]
    SampleOutOfRange(u32),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Pgm(#[from] PgmError),
    #[error("pixel buffer holds {len} values, expected {width}x{height}")]
    PixelCount {
        width: usize,
        height: usize,
        len: usize,
    },
    #[error("no blocks: image {width}x{height} is smaller than 3x3")]
    NoBlocks { width: usize, height: usize },
    #[error("bit-plane {0} outside [1, 8]")]
    InvalidPlane(u8),
    #[error("plane 8 carries the classifier and cannot be used for embedding")]
    MsbPlane,
    #[error("message has {got} bits but the image has {blocks} blocks")]
    MessageLength { got: usize, blocks: usize },
    #[error("invalid message character {0:?}, expected '0' or '1'")]
    MessageChar(char),
    #[error("dimension mismatch: {a_width}x{a_height} vs {b_width}x{b_height}")]
    DimensionMismatch {
        a_width: usize,
        a_height: usize,
        b_width: usize,
        b_height: usize,
    },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("disordered count {n_d} exceeds block count {blocks}")]
    DisorderedCount { n_d: usize, blocks: usize },
    #[error("JPEG quality {0} outside [1, 100]")]
    Quality(u32),
    #[error("salt-and-pepper density {0} outside [0, 1]")]
    Density(f64),
    #[error("median window {0} must be odd and at least 3")]
    Window(usize),
    #[error("cannot parse attack spec {0:?}")]
    AttackSpec(String),
    #[error("unknown embedding mode {0:?}, expected plane<1-7>, basic or enhanced")]
    EmbedMode(String),
    #[error("distortion index {0} outside [0, 6]")]
    DistortionIndex(u32),
    #[error("hardware model requires a square image, got {width}x{height}")]
    NotSquare { width: usize, height: usize },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
