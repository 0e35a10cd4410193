//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Triangle area magnitude below the scale-aware degeneracy threshold.
    DegenerateTriangle { area2: f64 },
    /// A vertex carries an eye-space depth w <= 0.
    NonPositiveW { index: usize, w: f64 },
    /// Barycentric or rational denominator too small to divide by.
    ZeroDenominator,
    /// Block normalization was asked to normalize an all-zero group.
    AllZero,
    /// An integer accumulator or product left its declared capacity.
    Overflow { what: &'static str },
    /// A texture image with zero width or height.
    EmptyImage,
    /// Scene text could not be parsed. `line` is 1-based; 0 means whole file.
    SceneSyntax { line: usize, message: String },
    /// Scene parsed but carries invalid values (w <= 0, bad dimensions, ...).
    SceneSemantic { line: usize, message: String },
    /// PPM header is not something we can read.
    MalformedHeader { message: String },
    /// PPM payload is shorter than the header promises.
    TruncatedData,
    /// Image comparison got images of different sizes.
    DimensionMismatch {
        a: (usize, usize),
        b: (usize, usize),
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateTriangle { area2 } => {
                write!(f, "degenerate triangle (doubled signed area {area2})")
            }
            Error::NonPositiveW { index, w } => {
                write!(f, "vertex {index} has non-positive eye-space w = {w}")
            }
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::AllZero => write!(f, "cannot block-normalize an all-zero group"),
            Error::Overflow { what } => write!(f, "integer overflow in {what}"),
            Error::EmptyImage => write!(f, "image has zero width or height"),
            Error::SceneSyntax { line: 0, message } => write!(f, "scene: {message}"),
            Error::SceneSyntax { line, message } => write!(f, "scene line {line}: {message}"),
            Error::SceneSemantic { line, message } => write!(f, "scene line {line}: {message}"),
            Error::MalformedHeader { message } => write!(f, "malformed PPM header: {message}"),
            Error::TruncatedData => write!(f, "PPM payload shorter than declared size"),
            Error::DimensionMismatch { a, b } => {
                write!(f, "dimension mismatch: {}x{} vs {}x{}", a.0, a.1, b.0, b.1)
            }
        }
    }
}

impl std::error::Error for Error {}
