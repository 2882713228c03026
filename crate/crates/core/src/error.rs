use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice parameter delta1 must be positive, got {0}")]
    NonPositiveDelta1(f64),
    #[error("angle map with (r, s) = (0, 0) is constant")]
    ConstantAngle,
    #[error("grid resolution {0} is too coarse (need at least 4)")]
    GridTooCoarse(usize),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("scale must be positive, got {0}")]
    BadScale(f64),
    #[error("operation needs a rectangular lattice (delta0 = 0), got delta0 = {0}")]
    NotRectangular(f64),
    #[error("differential degenerates at every grid point")]
    DegenerateDifferential,
    #[error("right normal is not of the form e^(-beta i) j (max 1/i-part {0:e})")]
    NotLagrangian(f64),
    #[error("section vanishes at some grid point")]
    ZeroSection,
    #[error("spectral parameter eta must be nonzero")]
    ZeroEta,
    #[error("section is in the {found} frame, expected {expected}")]
    FrameMismatch { expected: &'static str, found: &'static str },
    #[error("gauge is anti-periodic on the base lattice; sample the section on the doubled grid")]
    NeedsDoubledGrid,
    #[error("spectral scan needs at least 16 samples, got {0}")]
    TooFewSamples(usize),
    #[error("solution (m, n) = ({m}, {n}) is one of (+-r, +-s) and is excluded")]
    TrivialEta { m: i64, n: i64 },
    #[error("constants F00 and F30 are both zero")]
    ZeroConstants,
    #[error("surface is not contained in a sphere about the origin (residual {0:e})")]
    NotSpherical(f64),
    #[error("bound must be at least 1")]
    BadBound,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
