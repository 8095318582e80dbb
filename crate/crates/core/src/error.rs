use thiserror::Error;

/// Errors raised by the numerical kernels and the sweep drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside supported domain: {0}")]
    DomainExceeded(String),

    #[error("function is singular at z = 0")]
    Singularity,

    #[error("refractive index must be a finite value > 1, got {0}")]
    InvalidRefractiveIndex(f64),

    #[error("invalid mode index (m = {m}, ell = {ell})")]
    InvalidMode { m: u32, ell: u32 },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("invalid search region: {0}")]
    InvalidRegion(String),

    #[error("determinant too close to zero on the contour near {re} {im:+}i")]
    BoundaryTooClose { re: f64, im: f64 },

    #[error("root finder did not converge after {iterations} iterations (last kR = {re} {im:+}i)")]
    NoConvergence { iterations: usize, re: f64, im: f64 },

    #[error("root at {re} {im:+}i has radial rank {found}, expected ell = {expected}")]
    WrongRadialOrder { expected: u32, found: u32, re: f64, im: f64 },

    #[error("converged root is not a decaying resonance ({re} {im:+}i)")]
    NotDecaying { re: f64, im: f64 },

    #[error("zero decay width")]
    ZeroWidth,

    #[error("m = 0 has no centrifugal barrier")]
    NoBarrier,

    #[error("invalid radius {0}")]
    InvalidRadius(f64),

    #[error("effective potential is singular at r = 0 for m >= 1")]
    SingularRadius,

    #[error("boundary function undersampled: {got} samples, need at least {need}")]
    UndersampledBoundary { got: usize, need: usize },

    #[error("invalid sweep request: {0}")]
    InvalidSweep(String),

    #[error("continuation lost branch ell = {expected} at n = {n} (rank check found {found})")]
    BranchLoss { expected: u32, found: u32, n: f64 },

    #[error("no threshold: dL/dn keeps a constant sign over [{lo}, {hi}]")]
    NoThreshold { lo: f64, hi: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
