use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// One of the metric factors |K-L|, |M-L|, |K+M| vanishes, so the
    /// left-invariant metric (and everything that divides by those factors)
    /// degenerates.
    #[error("degenerate metric: {0} vanishes")]
    DegenerateMetric(&'static str),

    /// The scalar curvature S = A + B + C vanishes; the WK-number and the
    /// modified connection are undefined there.
    #[error("scalar curvature S = 0")]
    ScalarFlat,

    /// The radicand S / (S^2 - 2|Ric|^2) is not positive, so
    /// lambda^2 = S^3 / (8 (S^2 - 2|Ric|^2)) has no real solution.
    #[error("no real WK-number: S/(S^2 - 2|Ric|^2) <= 0")]
    NoRealWk,

    /// The orientation sign rule distinguishes -K < M from M < -K and is
    /// undefined on the wall M = -K.
    #[error("WK-number sign undefined at M = -K")]
    SignUndefined,

    /// The requested branch of the moduli curve has no real root at this M.
    #[error("no real root on the requested branch at M = {0}")]
    NoRealRoot(f64),

    /// A zero WK-number cannot be used to normalize the test spinor.
    #[error("lambda = 0")]
    ZeroLambda,

    /// z = 0 is a pole of the L(z), M(z) parametrization.
    #[error("z = 0 is a pole of the elliptic parametrization")]
    PoleAtZero,

    /// Psi = L^2/(KM) has a pole where K*M = 0.
    #[error("pole of psi: K*M = 0")]
    PoleOfPsi,

    /// Argument outside the documented domain of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
